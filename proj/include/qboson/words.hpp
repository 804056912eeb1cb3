#pragma once

#include <map>
#include <vector>

#include "qboson/cartan.hpp"

namespace qb {

enum class Side { F, E };

inline const char* side_name(Side s) { return s == Side::F ? "f" : "e"; }

// Tensor word in the generators of one side. Canonical order is by length,
// then lexicographically by (i, k).
struct Word {
  Side side = Side::F;
  std::vector<GeneratorIndex> letters;

  size_t length() const { return letters.size(); }
  std::vector<int> multidegree(size_t rank) const;
  Word without(size_t pos) const;
  Word subword(const std::vector<size_t>& positions) const;

  bool operator==(const Word& o) const { return side == o.side && letters == o.letters; }
  bool operator<(const Word& o) const;
};

std::string word_str(const Word& w, const CartanDatum& d);
nlohmann::json word_to_json(const Word& w);
Word word_from_json(Side side, const nlohmann::json& j, const CartanDatum& d);

// Finite linear combination of same-side words. Zero coefficients never
// appear in the term map.
class FreeElement {
public:
  FreeElement() = default;
  explicit FreeElement(Side side) : side_(side) {}
  static FreeElement from_word(const Word& w, const FieldElement& c);
  static FreeElement unit(Side side, const FieldSpec& s);  // the empty word

  Side side() const { return side_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, FieldElement>& terms() const { return terms_; }
  FieldElement coeff(const Word& w) const;

  void add_term(const Word& w, const FieldElement& c);
  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement scaled(const FieldElement& c) const;
  bool operator==(const FreeElement& o) const;

private:
  Side side_ = Side::F;
  std::map<Word, FieldElement> terms_;
};

FreeElement concat(const FreeElement& a, const FreeElement& b);

struct CoproductTerm {
  Word left;
  Word right;
  FieldElement coeff;
};

// Braided shuffle coproduct. The braiding scalar for moving letter a past
// letter b is q_{i_a i_b} on the F side and q_{i_a i_b}^{-1} on the E side
// (the two sides carry opposite Yetter-Drinfeld twists).
std::vector<CoproductTerm> braided_coproduct(const BraidingMatrix& B, const Word& w);

// Left skew derivation by e_{ik} acting on F-side elements:
// e_{ik} acts on f'_{j1 l1}...f'_{jt lt} by deleting each matching letter at
// position p with weight q_{i j1}...q_{i j_{p-1}}.
FreeElement e_derivation(const BraidingMatrix& B, const GeneratorIndex& g, const FreeElement& r);

// Action of an E-word: letters compose left-to-right, so the rightmost letter
// of s acts first.
FreeElement s_action(const BraidingMatrix& B, const Word& s, const FreeElement& r);

// All words of the given side and multidegree, in canonical order.
std::vector<Word> words_of_multidegree(const CartanDatum& d, Side side, const std::vector<int>& alpha);

std::vector<int> add_unit(const std::vector<int>& alpha, int i, int delta);
int total_degree(const std::vector<int>& alpha);
bool support_within(const std::vector<int>& alpha, const std::vector<int>& F);

}  // namespace qb
