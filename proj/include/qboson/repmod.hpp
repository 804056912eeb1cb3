#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qboson/linalg.hpp"
#include "qboson/qboson.hpp"

namespace qb {

// Finite-dimensional left B-module given by one matrix per generator. Loading
// validates the straightening relation and the radical relations of both
// Nichols algebras, so a constructed object is always an honest module (up to
// the documented top-grade exemption for truncation quotients).
class ModulePresentation {
public:
  // JSON shape: {dimension, labels, actions: {"f:<label>:<k>": [[...]], ...},
  // grades?: [int]}. When grades are present, the straightening identity is
  // not enforced on basis vectors of the top grade; that is exactly the
  // defect a degree-truncated module picks up.
  static ModulePresentation load(NicholsAlgebra& nich, const nlohmann::json& j);
  static ModulePresentation load_file(NicholsAlgebra& nich, const std::string& path);

  const CartanDatum& datum() const { return *datum_; }
  const FieldSpec& spec() const { return spec_; }
  size_t dimension() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& grades() const { return grades_; }  // empty when absent

  const Matrix& action(Side side, const GeneratorIndex& g) const;
  // letters compose left to right: the action of g1 g2 is A(g1) * A(g2)
  Matrix word_action(const Word& w) const;

  // smallest n <= 6 such that every product of n e-matrices vanishes, else 6;
  // this bounds the degrees at which radical relations are checked
  int nilpotency_bound() const { return nil_bound_; }

  nlohmann::json to_json() const;

private:
  friend ModulePresentation make_truncated_verma(NicholsAlgebra& nich, int depth);
  friend ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b);
  friend ModulePresentation tensor_trivial(const ModulePresentation& m, size_t extra);
  friend ModulePresentation make_regular_module(BosonAlgebra& B);

  ModulePresentation() = default;
  void finish(NicholsAlgebra& nich);  // computes nil_bound_ and checks relations

  const CartanDatum* datum_ = nullptr;
  FieldSpec spec_;
  size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<int> grades_;
  std::vector<Matrix> actions_;  // [side roster order: all f, then all e]
  int nil_bound_ = 0;
};

struct HighestWeightSpace {
  std::vector<std::vector<FieldElement>> basis;  // column vectors of M_0
  size_t dim() const { return basis.size(); }
  Matrix matrix(size_t module_dim, const FieldSpec& s) const;  // columns side by side
};

// Joint kernel of every e-matrix, by stacked elimination.
HighestWeightSpace highest_space(const ModulePresentation& M);

struct IntegrabilityReport {
  bool integrable = false;
  Word witness{Side::E, {}};  // nonvanishing product when not integrable
};

// True iff every e-matrix with node outside t.support vanishes and every
// length-t.n product of in-support e-matrices vanishes.
IntegrabilityReport check_integrable(const ModulePresentation& M, const TruncationIndex& t);

struct KappaData {
  int cap = 0;
  std::vector<int> support;                       // node filter used
  std::vector<std::pair<BasisKey, size_t>> columns;  // (R basis element, M_0 index)
  Matrix matrix;                                  // dimension x columns
  size_t rank = 0;
  bool injective = false;   // rank == number of columns
  bool surjective = false;  // rank == module dimension
};

// Matrix of kappa(r (x) m) = r m on R restricted to degrees <= cap (and to the
// support when given), with exact rank.
KappaData kappa(const ModulePresentation& M, NicholsAlgebra& nich, int cap,
                std::optional<std::vector<int>> support = std::nullopt);

struct DecompositionResult {
  TruncationIndex truncation;  // the level that succeeded (may be the retry)
  HighestWeightSpace m0;
  Matrix gamma_m;          // module matrix of the extremal projector
  bool gamma_idempotent = false;
  bool gamma_image_is_m0 = false;
  KappaData map;           // kappa at degrees < truncation.n within the support
  Matrix section;          // map.matrix * section == identity on M
  bool reconstruction_ok = false;
  bool isomorphism = false;  // kappa bijective and section two-sided
};

// Constructive decomposition M ~ R_(<n) (x) M_0 via the extremal projector.
// Throws NotIntegrable when the precondition fails; on an inexact
// reconstruction retries once at n+2 and then throws ReconstructionFailure.
DecompositionResult decompose(BosonAlgebra& B, const ModulePresentation& M,
                              const TruncationIndex& t);

struct FlkCertificate {
  int boundary = 0;   // first total degree where every dim R(alpha) vanishes
  size_t dim_r = 0;   // D
  size_t dim_b = 0;   // D^2
  size_t rank = 0;    // exact rank of the rho matrix on R
  bool bijective = false;
  std::string digest;  // fnv1a over the canonical structure constants of B
};

// Matrix-algebra certificate: in cyclotomic mode with finite-dimensional R,
// rho : B -> End(R) is bijective. Throws NotFiniteDimensional otherwise.
FlkCertificate flk_certificate(BosonAlgebra& B);

// Module builders. All of them produce presentations that pass load()
// validation; tests round-trip them through to_json.
ModulePresentation make_truncated_verma(NicholsAlgebra& nich, int depth);
ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b);
ModulePresentation tensor_trivial(const ModulePresentation& m, size_t extra);
ModulePresentation make_regular_module(BosonAlgebra& B);  // B acting on itself

// Matrix of a Nichols element (resp. smash product element) on the module.
Matrix nichols_matrix(const ModulePresentation& M, NicholsAlgebra& nich, const NicholsElement& x);
Matrix module_matrix(const ModulePresentation& M, const BosonElement& x);

}  // namespace qb
