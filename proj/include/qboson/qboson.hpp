#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "qboson/nichols.hpp"

namespace qb {

// Normal-form monomial r # s of the smash product: F letters left of E
// letters, both parts basis words of their Nichols algebras.
struct BosonKey {
  Word f;
  Word e;
  bool operator==(const BosonKey& o) const { return f == o.f && e == o.e; }
  bool operator<(const BosonKey& o) const { return f < o.f || (f == o.f && e < o.e); }
};

class BosonElement {
public:
  bool is_zero() const { return terms_.empty(); }
  const std::map<BosonKey, FieldElement>& terms() const { return terms_; }
  FieldElement coeff(const BosonKey& k) const;

  void add_term(const BosonKey& k, const FieldElement& c);
  BosonElement operator+(const BosonElement& o) const;
  BosonElement operator-(const BosonElement& o) const;
  BosonElement scaled(const FieldElement& c) const;
  bool operator==(const BosonElement& o) const { return terms_ == o.terms_; }

private:
  std::map<BosonKey, FieldElement> terms_;
};

struct TruncationIndex {
  int n = 0;
  std::vector<int> support;  // sorted node indices

  // directed order: (n, F) <= (l, G) iff n <= l and F is a subset of G
  bool operator<=(const TruncationIndex& o) const;
};

// Which end of the mixed word the rewriting peels first. The two must agree;
// the straightening rule is confluent.
enum class StraightenStrategy { PeelE, PeelF };

struct CertificateProperty {
  std::string name;
  bool holds = false;
  int modulus_level = 0;              // congruence taken mod I_(modulus_level, F)
  std::string counterexample;         // first surviving monomial when it fails
};

struct ProjectorCertificates {
  std::vector<CertificateProperty> properties;
  bool all_hold = false;
};

struct ExtremalProjector {
  TruncationIndex truncation;
  BosonElement element;
  ProjectorCertificates certificates;
};

// B = R # S with the straightening rule e_ik f'_jl = q_ij f'_jl e_ik + d_ij d_kl.
class BosonAlgebra {
public:
  explicit BosonAlgebra(NicholsAlgebra& nich) : nich_(&nich) {}

  NicholsAlgebra& nichols() { return *nich_; }
  const CartanDatum& datum() const { return nich_->datum(); }
  const FieldSpec& spec() const { return nich_->spec(); }

  BosonElement unit();
  BosonElement from_parts(const NicholsElement& r, const NicholsElement& s);
  BosonElement generator(Side side, const GeneratorIndex& g);

  // raw rewriting of (1 # s)(u # 1) into free-word monomials (f, e, coeff);
  // memoized per strategy, normal form is the caller's job
  const std::vector<std::tuple<Word, Word, FieldElement>>& straighten_words(
      const Word& s, const Word& u, StraightenStrategy strat);

  BosonElement multiply(const BosonElement& a, const BosonElement& b,
                        StraightenStrategy strat = StraightenStrategy::PeelE);

  // Verma action rho(r # s)(x) = r (s |> x); checks the degree grading on
  // every call.
  NicholsElement rho_apply(const BosonElement& b, const NicholsElement& x);

  // congruence mod I_(level, F): drop monomials with E-degree >= level or
  // E-support outside F
  BosonElement truncate(const BosonElement& x, int level, const std::vector<int>& F) const;
  // drop monomials using any node outside F on either side
  BosonElement support_restrict(const BosonElement& x, const std::vector<int>& F) const;

  std::string monomial_str(const BosonKey& k) const;

private:
  NicholsAlgebra* nich_;
  std::map<std::pair<Word, Word>, std::vector<std::tuple<Word, Word, FieldElement>>> memo_e_,
      memo_f_;
};

// gamma_(n,F) = sum over balanced degrees within the truncation of
// S(r_p) # s_p over dual bases.
ExtremalProjector build_projector(BosonAlgebra& B, const TruncationIndex& t);

// The four projector properties, each at the modulus it can hold at:
// idempotence and left annihilation mod I_(n+1,F), right annihilation and the
// partition of unity mod I_(max(n,1),F).
ProjectorCertificates certify_projector(BosonAlgebra& B, const ExtremalProjector& p);

}  // namespace qb
