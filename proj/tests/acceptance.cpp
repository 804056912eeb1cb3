// Acceptance gate: nine end-to-end criteria, each printed as its own
// pass/fail line. All comparisons are exact; the process exit code is the
// number of failed criteria.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qboson/qboson.hpp"
#include "qboson/repmod.hpp"
#include "test_util.hpp"

using namespace qb;
using qbtest::datum;
using Clock = std::chrono::steady_clock;

static int failures = 0;

static void report(const char* id, bool ok, const std::string& detail, Clock::time_point t0) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << " - " << detail << " (" << ms << " ms)"
            << std::endl;
  if (!ok) ++failures;
}

template <typename Fn>
static void criterion(const char* id, Fn fn) {
  auto t0 = Clock::now();
  try {
    auto [ok, detail] = fn();
    report(id, ok, detail, t0);
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what(), t0);
  }
}

static std::vector<Word> words_up_to(const CartanDatum& d, Side side, int total) {
  std::vector<Word> out;
  for (int t = 0; t <= total; ++t)
    for (const auto& alpha : multidegrees_of_total(d.rank(), t))
      for (const Word& w : words_of_multidegree(d, side, alpha)) out.push_back(w);
  return out;
}

// A1: the derivation route and the coproduct route compute one pairing.
static std::pair<bool, std::string> a1_route_agreement() {
  size_t pairs = 0;
  for (const char* dj : {qbtest::kSl2, qbtest::kA2, qbtest::kBorcherds}) {
    CartanDatum d = datum(dj);
    BraidingMatrix B(d);
    auto fw = words_up_to(d, Side::F, 5);
    auto ew = words_up_to(d, Side::E, 5);
    for (const Word& r : fw)
      for (const Word& s : ew) {
        if (tau_derivation(B, r, s) != tau_recursive(B, r, s))
          return {false, "routes disagree on " + word_str(r, d) + " x " + word_str(s, d)};
        ++pairs;
      }
  }
  return {true, "both pairing routes agree on " + std::to_string(pairs) +
                    " exhaustive word pairs of total degree <= 5"};
}

// A2: Nichols dimensions against an independent Kostant partition oracle.
static std::pair<bool, std::string> a2_dimension_oracle() {
  CartanDatum a2 = datum(qbtest::kA2);
  NicholsAlgebra R(a2, 8);
  auto h = R.hilbert_data(8);
  size_t checked = 0;
  for (const auto& [alpha, dim] : h) {
    // count partitions of alpha into the positive roots (1,0), (0,1), (1,1)
    size_t want = 0;
    for (int z = 0; z <= std::min(alpha[0], alpha[1]); ++z)
      ++want;  // z copies of (1,1); the remainder is forced
    if (dim != want)
      return {false, "A2 dim(" + std::to_string(alpha[0]) + "," + std::to_string(alpha[1]) +
                         ") = " + std::to_string(dim) + ", oracle says " + std::to_string(want)};
    ++checked;
  }
  CartanDatum sl2 = datum(qbtest::kSl2);
  NicholsAlgebra R1(sl2, 12);
  auto h1 = R1.hilbert_data(12);
  for (int n = 0; n <= 12; ++n)
    if (h1.at({n}) != 1) return {false, "sl2 dim(" + std::to_string(n) + ") != 1"};
  return {true, "A2 matches the Kostant oracle on " + std::to_string(checked) +
                    " degrees, sl2 is a line in every degree <= 12"};
}

// A3: the A2 radical at (2,1) is the Serre direction, an ideal and coideal.
static std::pair<bool, std::string> a3_serre_certificate() {
  CartanDatum a2 = datum(qbtest::kA2);
  GramEngine g(a2, 3);
  const GramBlock& b = g.block({2, 1});
  if (b.kernel_basis.size() != 1)
    return {false, "kernel at (2,1) has dimension " + std::to_string(b.kernel_basis.size())};
  const FreeElement& kappa_rel = b.kernel_basis[0];

  NicholsAlgebra R(a2, 4);
  FieldSpec s = a2.field();
  // ideal: multiplying by any generator on either side lands in the radical
  for (const GeneratorIndex& gi : a2.generators()) {
    FreeElement letter = FreeElement::from_word(Word{Side::F, {gi}}, FieldElement::one(s));
    if (!R.normal_form(concat(letter, kappa_rel)).is_zero())
      return {false, "left multiple of the Serre direction survives"};
    if (!R.normal_form(concat(kappa_rel, letter)).is_zero())
      return {false, "right multiple of the Serre direction survives"};
  }
  // coideal: both legs of the coproduct reduce to zero in R (x) R
  BraidingMatrix B(a2);
  std::map<std::pair<BasisKey, BasisKey>, FieldElement> legs;
  for (const auto& [w, c] : kappa_rel.terms())
    for (const auto& t : braided_coproduct(B, w)) {
      NicholsElement l = R.from_word(t.left), r = R.from_word(t.right);
      for (const auto& [kl, cl] : l.terms())
        for (const auto& [kr, cr] : r.terms()) {
          auto key = std::make_pair(kl, kr);
          auto [it, fresh] = legs.emplace(key, FieldElement::zero(s));
          (void)fresh;
          it->second += c * t.coeff * cl * cr;
        }
    }
  for (const auto& [key, c] : legs)
    if (!c.is_zero()) return {false, "coproduct of the Serre direction survives in R (x) R"};
  return {true, "the (2,1) radical is one-dimensional and closes as an ideal and coideal"};
}

// A4: the pairing vanishes on degree-mismatched pairs.
static std::pair<bool, std::string> a4_degree_orthogonality() {
  std::mt19937 rng(12345);
  const char* data[] = {qbtest::kSl2, qbtest::kA2, qbtest::kBorcherds};
  std::uniform_int_distribution<size_t> len(0, 5);
  int sampled = 0;
  while (sampled < 200) {
    CartanDatum d = datum(data[sampled % 3]);
    BraidingMatrix B(d);
    Word r = qbtest::random_word(rng, d, Side::F, len(rng));
    Word s = qbtest::random_word(rng, d, Side::E, len(rng));
    if (r.multidegree(d.rank()) == s.multidegree(d.rank())) continue;
    if (!tau_derivation(B, r, s).is_zero() || !tau_recursive(B, r, s).is_zero())
      return {false, "nonzero pairing across degrees on " + word_str(r, d) + " x " +
                         word_str(s, d)};
    ++sampled;
  }
  return {true, "tau = 0 on 200 random degree-mismatched pairs over three data"};
}

// A5: extremal projector certificates and the rank-one closed form.
static std::pair<bool, std::string> a5_projector_certificates() {
  CartanDatum sl2 = datum(qbtest::kSl2);
  NicholsAlgebra R(sl2, 12);
  BosonAlgebra B(R);
  ExtremalProjector g6 = build_projector(B, TruncationIndex{6, {0}});
  ProjectorCertificates c6 = certify_projector(B, g6);
  if (!c6.all_hold) return {false, "a certificate fails for sl2 at (6,{1})"};

  ExtremalProjector g2 = build_projector(B, TruncationIndex{2, {0}});
  FieldSpec s = sl2.field();
  Word f1{Side::F, {{0, 1}}}, e1{Side::E, {{0, 1}}};
  Word f2{Side::F, {{0, 1}, {0, 1}}}, e2{Side::E, {{0, 1}, {0, 1}}};
  BosonElement want = B.unit();
  want = want +
         B.from_parts(R.from_word(f1), R.from_word(e1)).scaled(FieldElement::from_int(s, -1));
  // q^-2/(1+q^-2) = 1/(q^2+1)
  want = want + B.from_parts(R.from_word(f2), R.from_word(e2))
                    .scaled(FieldElement::parse(s, "1/(q^2+1)"));
  if (!(g2.element == want)) return {false, "gamma_2 differs from the closed form"};

  CartanDatum a2 = datum(qbtest::kA2);
  NicholsAlgebra RA(a2, 8);
  BosonAlgebra BA(RA);
  ExtremalProjector g4 = build_projector(BA, TruncationIndex{4, {0, 1}});
  ProjectorCertificates c4 = certify_projector(BA, g4);
  if (!c4.all_hold) return {false, "a certificate fails for A2 at (4,{1,2})"};
  return {true, "idempotence, annihilation and partition certificates hold for sl2 (6,{1}) "
                "and A2 (4,{1,2}); gamma_2 matches the closed form"};
}

// A6: the cyclotomic q-boson algebra is a full matrix algebra.
static std::pair<bool, std::string> a6_matrix_algebra() {
  struct Case {
    const char* dj;
    unsigned N;
  } cases[] = {{qbtest::kFlk5, 5}, {qbtest::kFlk3, 3}};
  for (const auto& c : cases) {
    CartanDatum d = datum(c.dj);
    NicholsAlgebra R(d, 2 * c.N);
    BosonAlgebra B(R);
    FlkCertificate cert = flk_certificate(B);
    if (cert.boundary != int(c.N) || cert.dim_r != c.N)
      return {false, "dim R' != N at N = " + std::to_string(c.N)};
    if (cert.dim_b != c.N * c.N || !cert.bijective)
      return {false, "rho is not bijective at N = " + std::to_string(c.N)};
    // independent scalar cross-check: [t] at zeta^-2 first vanishes at t = N
    FieldElement v = FieldElement::q_power(d.field(), -2);
    for (unsigned t = 1; t < c.N; ++t)
      if (FieldElement::gauss_integer(t, v).is_zero())
        return {false, "[t] vanishes early at t = " + std::to_string(t)};
    if (!FieldElement::gauss_integer(c.N, v).is_zero())
      return {false, "[N] does not vanish at N = " + std::to_string(c.N)};
  }
  return {true, "B = R # S is a full matrix algebra of dimension N^2 for N = 5 and N = 3, "
                "matching the first vanishing of [N] at zeta^-2"};
}

// A7: constructive decomposition of three integrable modules.
static std::pair<bool, std::string> a7_decomposition() {
  CartanDatum sl2 = datum(qbtest::kSl2);
  NicholsAlgebra R(sl2, 7);
  BosonAlgebra B(R);
  ModulePresentation V = make_truncated_verma(R, 4);
  DecompositionResult two = decompose(B, direct_sum(V, V), {5, {0}});
  if (two.m0.dim() != 2 || !two.reconstruction_ok || !two.isomorphism)
    return {false, "R_{<=4} + R_{<=4} over sl2 does not reconstruct with dim M0 = 2"};

  CartanDatum a2 = datum(qbtest::kA2);
  NicholsAlgebra RA(a2, 6);
  BosonAlgebra BA(RA);
  ModulePresentation T = tensor_trivial(make_truncated_verma(RA, 3), 3);
  DecompositionResult three = decompose(BA, T, {4, {0, 1}});
  if (three.m0.dim() != 3 || !three.reconstruction_ok || !three.isomorphism)
    return {false, "R_{<=3} (x) k^3 over A2 does not reconstruct with dim M0 = 3"};

  CartanDatum d5 = datum(qbtest::kFlk5);
  NicholsAlgebra R5(d5, 8);
  BosonAlgebra B5(R5);
  ModulePresentation REG = make_regular_module(B5);
  DecompositionResult reg = decompose(B5, REG, {5, {0}});
  if (reg.m0.dim() != 5 || !reg.isomorphism || !reg.map.injective || !reg.map.surjective)
    return {false, "the N = 5 regular module is not R' (x) k^5"};
  return {true, "sl2 double Verma (dim M0 = 2), A2 Verma (x) k^3 (dim M0 = 3) and the N = 5 "
                "regular module (dim M0 = 5) all reconstruct exactly"};
}

// A8: highest-weight space of R and per-degree non-degeneracy at cap 6.
static std::pair<bool, std::string> a8_simplicity() {
  for (const char* dj : {qbtest::kSl2, qbtest::kA2, qbtest::kBorcherds}) {
    CartanDatum d = datum(dj);
    NicholsAlgebra R(d, 6);
    ModulePresentation V = make_truncated_verma(R, 6);
    HighestWeightSpace H = highest_space(V);
    if (H.dim() != 1) return {false, "R_0 over '" + d.labels()[0] + "...' is not a line"};
    if (H.basis[0][0].is_zero()) return {false, "R_0 is not spanned by the unit"};
    for (size_t i = 1; i < V.dimension(); ++i)
      if (!H.basis[0][i].is_zero()) return {false, "R_0 leaks into positive degrees"};

    for (int total = 1; total <= 6; ++total)
      for (const auto& alpha : multidegrees_of_total(d.rank(), total)) {
        const SpanData& sp = R.span(alpha);
        if (sp.rank() != R.dim(alpha)) return {false, "basis rank mismatch"};
        for (size_t p = 0; p < sp.rank(); ++p) {
          bool hit = false;
          for (size_t c = 0; c < sp.rank() && !hit; ++c)
            hit = !sp.gpiv.at(p, c).is_zero();
          if (!hit)
            return {false, "basis vector " + word_str(sp.basis_f[p], d) +
                               " pairs to zero with every S-word"};
        }
      }
  }
  return {true, "for three data at cap 6: the highest-weight space of R is exactly k.1 and "
                "every basis vector pairs nontrivially with some S-word"};
}

// A9: projectors are compatible with support restriction (directed system).
static std::pair<bool, std::string> a9_directed_system() {
  CartanDatum d3 = datum(qbtest::kBorcherds3);
  NicholsAlgebra R3(d3, 4);
  BosonAlgebra B3(R3);
  ExtremalProjector full = build_projector(B3, TruncationIndex{3, {0, 1, 2}});
  ExtremalProjector sub = build_projector(B3, TruncationIndex{3, {0, 1}});
  if (!(B3.support_restrict(full.element, {0, 1}) == sub.element))
    return {false, "support restriction of the full projector differs from the sub-projector"};

  // the same element computed over the restricted datum itself
  CartanDatum d2 = datum(qbtest::kBorcherds);
  NicholsAlgebra R2(d2, 4);
  BosonAlgebra B2(R2);
  ExtremalProjector indep = build_projector(B2, TruncationIndex{3, {0, 1}});
  if (!(indep.element == sub.element))
    return {false, "the restricted-datum projector differs from the restricted projector"};
  return {true, "the (3,{1,2}) projector equals the support restriction of the (3,{1,2,3}) "
                "projector, and agrees with the rank-2 datum's own projector"};
}

int main() {
  criterion("A1", a1_route_agreement);
  criterion("A2", a2_dimension_oracle);
  criterion("A3", a3_serre_certificate);
  criterion("A4", a4_degree_orthogonality);
  criterion("A5", a5_projector_certificates);
  criterion("A6", a6_matrix_algebra);
  criterion("A7", a7_decomposition);
  criterion("A8", a8_simplicity);
  criterion("A9", a9_directed_system);
  std::cout << (failures == 0 ? "acceptance: all criteria hold"
                              : "acceptance: " + std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures;
}
