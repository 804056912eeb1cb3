#pragma once

#include <map>
#include <vector>

#include "qboson/pairing.hpp"

namespace qb {

// Coordinates of a basis element: multidegree plus index into that degree's
// basis word list.
struct BasisKey {
  std::vector<int> alpha;
  size_t index = 0;
  auto operator<=>(const BasisKey&) const = default;
};

// Element of R (F side) or S (E side) in basis coordinates.
class NicholsElement {
public:
  NicholsElement() = default;
  explicit NicholsElement(Side side) : side_(side) {}

  Side side() const { return side_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<BasisKey, FieldElement>& terms() const { return terms_; }
  FieldElement coeff(const BasisKey& k) const;

  void add_term(const BasisKey& k, const FieldElement& c);
  NicholsElement operator+(const NicholsElement& o) const;
  NicholsElement operator-(const NicholsElement& o) const;
  NicholsElement scaled(const FieldElement& c) const;
  bool operator==(const NicholsElement& o) const;

private:
  Side side_ = Side::F;
  std::map<BasisKey, FieldElement> terms_;
};

struct NicholsCoproductTerm {
  NicholsElement left;
  NicholsElement right;
  FieldElement coeff;
};

// Per-degree data of the Gram quotient, built on the spanning set
// {letter . lower basis word} rather than on all words: by construction every
// basis word then splits off its first letter into a lower basis word, which
// closes the pairing recursions used everywhere else.
struct SpanData {
  std::vector<int> alpha;
  std::vector<Word> span_f, span_e;    // spanning words, canonical order
  std::vector<size_t> piv_f, piv_e;    // indices of the chosen basis words
  std::vector<Word> basis_f, basis_e;  // pivot words (sorted subsequences)
  Matrix gram;                         // tau on the spanning sets
  Matrix gpiv;                         // tau(basis_f[p], basis_e[c])
  Matrix gpiv_inv;
  std::vector<FreeElement> kernel_f;  // spanning-relation radical vectors
  std::vector<FreeElement> kernel_e;
  // first-letter decompositions: basis word = letter . lower basis word
  std::vector<std::pair<GeneratorIndex, size_t>> decomp_f, decomp_e;

  size_t rank() const { return piv_f.size(); }
  size_t basis_index(Side side, const Word& w) const;  // throws if not a basis word
};

std::vector<std::vector<int>> multidegrees_of_total(size_t rank, int total);

// The two Nichols algebras R and S of one datum, as graded quotients of the
// word algebras by the pairing radical.
class NicholsAlgebra {
public:
  NicholsAlgebra(const CartanDatum& d, int cap);

  const CartanDatum& datum() const { return *datum_; }
  const BraidingMatrix& braiding() const { return braiding_; }
  const FieldSpec& spec() const { return datum_->field(); }
  int cap() const { return cap_; }

  const SpanData& span(const std::vector<int>& alpha);  // throws DegreeCapExceeded past cap
  size_t dim(const std::vector<int>& alpha);
  const std::vector<Word>& basis_words(const std::vector<int>& alpha, Side side);
  const Word& basis_word(const BasisKey& k, Side side);

  NicholsElement unit(Side side);
  NicholsElement from_word(const Word& w);           // normal form of one word, memoized
  NicholsElement normal_form(const FreeElement& x);  // linear extension
  FreeElement lift(const NicholsElement& x);

  NicholsElement multiply(const NicholsElement& x, const NicholsElement& y);
  std::vector<NicholsCoproductTerm> coproduct(const NicholsElement& x);
  NicholsElement antipode(const NicholsElement& x);
  FieldElement counit(const NicholsElement& x) const;

  // dim R(alpha) for every |alpha| <= upto.
  std::map<std::vector<int>, size_t> hilbert_data(int upto);

  // Dual bases from the pivot inverse; delta_pq re-verified via tau_derivation.
  DualBasisPair dual_pair(const std::vector<int>& alpha);

  // Pairing coordinates of arbitrary words against the opposite basis.
  const std::vector<FieldElement>& coslab_row(const Word& u);  // tau(u, basis_e[c])
  const std::vector<FieldElement>& slab_col(const Word& s);    // tau(basis_f[p], s)

private:
  const SpanData& span_unchecked(const std::vector<int>& alpha);
  NicholsElement antipode_word(const Word& w);

  const CartanDatum* datum_;
  BraidingMatrix braiding_;
  int cap_;
  std::map<std::vector<int>, SpanData> spans_;
  std::map<Word, std::vector<FieldElement>> coslab_memo_, slab_memo_;
  std::map<Word, NicholsElement> nf_memo_;
  std::map<Word, NicholsElement> antipode_memo_;
};

}  // namespace qb
