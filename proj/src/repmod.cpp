#include "qboson/repmod.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "qboson/errors.hpp"

namespace qb {

namespace {

size_t roster_position(const CartanDatum& d, const GeneratorIndex& g) {
  size_t pos = 0;
  for (int i = 0; i < g.i; ++i) pos += static_cast<size_t>(d.mult(i));
  return pos + static_cast<size_t>(g.k - 1);
}

std::string action_key(const CartanDatum& d, Side side, const GeneratorIndex& g) {
  std::ostringstream out;
  out << side_name(side) << ":" << d.labels()[g.i] << ":" << g.k;
  return out.str();
}

Matrix free_matrix(const ModulePresentation& M, const FreeElement& x) {
  Matrix out(M.dimension(), M.dimension());
  for (const auto& [w, c] : x.terms()) out = out + M.word_action(w).scaled(c);
  return out;
}

// sparse column view of one action matrix: cols[c] = {(row, entry)}
using SparseCols = std::vector<std::vector<std::pair<size_t, FieldElement>>>;

SparseCols sparse_columns(const Matrix& m) {
  SparseCols cols(m.cols());
  for (size_t c = 0; c < m.cols(); ++c)
    for (size_t r = 0; r < m.rows(); ++r)
      if (!m.at(r, c).is_zero()) cols[c].emplace_back(r, m.at(r, c));
  return cols;
}

// whether x annihilates the module, checked one basis vector at a time
// through sparse action chains; a chain aborts as soon as it hits zero
bool acts_as_zero(const ModulePresentation& M, const FreeElement& x,
                  const std::map<std::pair<Side, GeneratorIndex>, SparseCols>& letters) {
  const FieldSpec& s = M.spec();
  for (size_t c = 0; c < M.dimension(); ++c) {
    std::map<size_t, FieldElement> total;
    for (const auto& [w, cw] : x.terms()) {
      std::map<size_t, FieldElement> vec{{c, FieldElement::one(s)}};
      for (auto it = w.letters.rbegin(); it != w.letters.rend() && !vec.empty(); ++it) {
        const SparseCols& cols = letters.at({w.side, *it});
        std::map<size_t, FieldElement> next;
        for (const auto& [idx, coeff] : vec)
          for (const auto& [row, a] : cols[idx]) {
            auto [slot, fresh] = next.emplace(row, FieldElement::zero(s));
            (void)fresh;
            slot->second += coeff * a;
          }
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        vec = std::move(next);
      }
      for (const auto& [idx, coeff] : vec) {
        auto [slot, fresh] = total.emplace(idx, FieldElement::zero(s));
        (void)fresh;
        slot->second += cw * coeff;
      }
    }
    for (const auto& [idx, coeff] : total)
      if (!coeff.is_zero()) return false;
  }
  return true;
}

// left inverse of a full-column-rank matrix
Matrix left_inverse(const Matrix& h, const FieldSpec& s) {
  Elimination e = eliminate(h, s);
  if (e.rank != h.cols()) throw internal_error("dependent columns in a basis matrix");
  Matrix l(h.cols(), h.rows());
  for (size_t t = 0; t < e.rank; ++t)
    for (size_t j = 0; j < h.rows(); ++j)
      l.at(e.pivot_cols[t], j) = e.transform.at(e.pivot_rows[t], j);
  return l;
}

// first total degree at which every dim R(alpha) vanishes, or -1 within cap
int finite_boundary(NicholsAlgebra& nich) {
  const size_t rank = nich.datum().rank();
  for (int n = 1; n <= nich.cap(); ++n) {
    bool all_zero = true;
    for (const auto& alpha : multidegrees_of_total(rank, n))
      if (nich.dim(alpha) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) return n;
  }
  return -1;
}

}  // namespace

const Matrix& ModulePresentation::action(Side side, const GeneratorIndex& g) const {
  size_t half = actions_.size() / 2;
  size_t pos = roster_position(*datum_, g);
  if (pos >= half) throw internal_error("generator outside the datum roster");
  return actions_[(side == Side::F ? 0 : half) + pos];
}

Matrix ModulePresentation::word_action(const Word& w) const {
  Matrix out = Matrix::identity(dim_, spec_);
  for (const auto& g : w.letters) out = out * action(w.side, g);
  return out;
}

nlohmann::json ModulePresentation::to_json() const {
  nlohmann::json j;
  j["dimension"] = dim_;
  j["labels"] = labels_;
  nlohmann::json acts = nlohmann::json::object();
  const auto roster = datum_->generators();
  for (Side side : {Side::F, Side::E})
    for (const auto& g : roster) {
      const Matrix& m = action(side, g);
      nlohmann::json rows = nlohmann::json::array();
      for (size_t r = 0; r < dim_; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t c = 0; c < dim_; ++c) row.push_back(m.at(r, c).str());
        rows.push_back(std::move(row));
      }
      acts[action_key(*datum_, side, g)] = std::move(rows);
    }
  j["actions"] = std::move(acts);
  if (!grades_.empty()) j["grades"] = grades_;
  return j;
}

ModulePresentation ModulePresentation::load(NicholsAlgebra& nich, const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("module document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "dimension" && key != "labels" && key != "actions" && key != "grades")
      throw validation_error("unknown module field '" + key + "'");
  }
  if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
      j["dimension"].get<long>() < 0)
    throw validation_error("module 'dimension' must be a nonnegative integer");
  ModulePresentation m;
  m.datum_ = &nich.datum();
  m.spec_ = nich.spec();
  m.dim_ = j["dimension"].get<size_t>();

  if (!j.contains("labels") || !j["labels"].is_array() || j["labels"].size() != m.dim_)
    throw validation_error("module 'labels' must list one string per basis vector");
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) throw validation_error("module labels must be strings");
    m.labels_.push_back(l.get<std::string>());
  }

  if (j.contains("grades")) {
    if (!j["grades"].is_array() || j["grades"].size() != m.dim_)
      throw validation_error("module 'grades' must list one integer per basis vector");
    for (const auto& g : j["grades"]) {
      if (!g.is_number_integer() || g.get<long>() < 0)
        throw validation_error("module grades must be nonnegative integers");
      m.grades_.push_back(g.get<int>());
    }
  }

  if (!j.contains("actions") || !j["actions"].is_object())
    throw validation_error("module 'actions' must be an object of matrices");
  const auto roster = m.datum_->generators();
  size_t expected = 2 * roster.size();
  if (j["actions"].size() != expected)
    throw validation_error("module 'actions' must contain exactly one matrix per generator");
  for (Side side : {Side::F, Side::E})
    for (const auto& g : roster) {
      std::string key = action_key(*m.datum_, side, g);
      if (!j["actions"].contains(key))
        throw validation_error("module action '" + key + "' is missing");
      const auto& rows = j["actions"][key];
      if (!rows.is_array() || rows.size() != m.dim_)
        throw validation_error("module action '" + key + "' must be a " +
                               std::to_string(m.dim_) + "x" + std::to_string(m.dim_) +
                               " matrix");
      Matrix mat(m.dim_, m.dim_);
      for (size_t r = 0; r < m.dim_; ++r) {
        if (!rows[r].is_array() || rows[r].size() != m.dim_)
          throw validation_error("module action '" + key + "' has a malformed row");
        for (size_t c = 0; c < m.dim_; ++c) {
          if (!rows[r][c].is_string())
            throw validation_error("module action entries must be scalar strings");
          mat.at(r, c) = FieldElement::parse(m.spec_, rows[r][c].get<std::string>());
        }
      }
      m.actions_.push_back(std::move(mat));
    }
  m.finish(nich);
  return m;
}

ModulePresentation ModulePresentation::load_file(NicholsAlgebra& nich, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open module file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("module file " + path + ": " + e.what());
  }
  return load(nich, j);
}

void ModulePresentation::finish(NicholsAlgebra& nich) {
  const auto roster = datum_->generators();
  const BraidingMatrix& B = nich.braiding();

  // nilpotency bound of the e-action, capped at 6: every length-t product of
  // e-matrices vanishes iff the iterated image subspace
  // V_t = span{E_g v : v in V_(t-1)} dies at step t
  if (dim_ == 0 || roster.empty()) {
    nil_bound_ = roster.empty() ? 1 : 0;
  } else {
    Matrix image = Matrix::identity(dim_, spec_);  // columns span V_0
    nil_bound_ = 6;
    for (int t = 1; t <= 6; ++t) {
      Matrix cand(roster.size() * image.cols(), dim_);
      for (size_t g = 0; g < roster.size(); ++g) {
        Matrix next = action(Side::E, roster[g]) * image;
        for (size_t c = 0; c < image.cols(); ++c)
          for (size_t r = 0; r < dim_; ++r)
            cand.at(g * image.cols() + c, r) = next.at(r, c);
      }
      Elimination el = eliminate(cand, spec_);
      if (el.rank == 0) {
        nil_bound_ = t;
        break;
      }
      Matrix reduced(dim_, el.rank);
      for (size_t p = 0; p < el.rank; ++p)
        for (size_t r = 0; r < dim_; ++r) reduced.at(r, p) = el.rref.at(el.pivot_rows[p], r);
      image = std::move(reduced);
    }
  }

  // straightening relation, exempting top-grade vectors when grades are given
  int max_grade = 0;
  for (int g : grades_) max_grade = std::max(max_grade, g);
  Matrix id = Matrix::identity(dim_, spec_);
  for (const auto& ge : roster)
    for (const auto& gf : roster) {
      const Matrix& e = action(Side::E, ge);
      const Matrix& f = action(Side::F, gf);
      Matrix defect = e * f - (f * e).scaled(B.q(ge.i, gf.i));
      if (ge == gf) defect = defect - id;
      for (size_t c = 0; c < dim_; ++c) {
        if (!grades_.empty() && grades_[c] == max_grade) continue;
        for (size_t r = 0; r < dim_; ++r)
          if (!defect.at(r, c).is_zero())
            throw validation_error("straightening relation fails for e[" +
                                   datum_->labels()[ge.i] + "," + std::to_string(ge.k) +
                                   "] and f[" + datum_->labels()[gf.i] + "," +
                                   std::to_string(gf.k) + "] on basis vector '" + labels_[c] +
                                   "'");
      }
    }


  // radical relations of R and S up to the nilpotency bound
  std::map<std::pair<Side, GeneratorIndex>, SparseCols> letters;
  for (Side side : {Side::F, Side::E})
    for (const auto& g : roster) letters.emplace(std::make_pair(side, g), sparse_columns(action(side, g)));
  int bound = std::min(nil_bound_, nich.cap());
  for (int total = 1; total <= bound; ++total)
    for (const auto& alpha : multidegrees_of_total(datum_->rank(), total)) {
      const SpanData& sd = nich.span(alpha);
      for (const auto& rel : sd.kernel_f)
        if (!acts_as_zero(*this, rel, letters))
          throw validation_error("radical relation of R fails at degree " +
                                 std::to_string(total));
      for (const auto& rel : sd.kernel_e)
        if (!acts_as_zero(*this, rel, letters))
          throw validation_error("radical relation of S fails at degree " +
                                 std::to_string(total));
    }
}

Matrix HighestWeightSpace::matrix(size_t module_dim, const FieldSpec& s) const {
  Matrix h(module_dim, basis.size());
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < module_dim; ++i) h.at(i, j) = basis[j][i];
  (void)s;
  return h;
}

HighestWeightSpace highest_space(const ModulePresentation& M) {
  const auto roster = M.datum().generators();
  const size_t n = M.dimension();
  Matrix stacked(roster.size() * n, n);
  for (size_t g = 0; g < roster.size(); ++g) {
    const Matrix& e = M.action(Side::E, roster[g]);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) stacked.at(g * n + i, j) = e.at(i, j);
  }
  HighestWeightSpace h;
  h.basis = right_nullspace(stacked, M.spec());
  return h;
}

IntegrabilityReport check_integrable(const ModulePresentation& M, const TruncationIndex& t) {
  const auto roster = M.datum().generators();
  for (const auto& g : roster) {
    if (std::binary_search(t.support.begin(), t.support.end(), g.i)) continue;
    if (!M.action(Side::E, g).is_zero())
      return {false, Word{Side::E, {g}}};
  }
  std::vector<GeneratorIndex> in_support;
  for (const auto& g : roster)
    if (std::binary_search(t.support.begin(), t.support.end(), g.i)) in_support.push_back(g);

  IntegrabilityReport report{true, Word{Side::E, {}}};
  std::vector<GeneratorIndex> word;
  auto dfs = [&](auto&& self, const Matrix& p, int depth) -> bool {
    if (p.is_zero()) return true;
    if (depth == t.n) {
      report = {false, Word{Side::E, word}};
      return false;
    }
    for (const auto& g : in_support) {
      word.push_back(g);
      bool ok = self(self, p * M.action(Side::E, g), depth + 1);
      word.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  dfs(dfs, Matrix::identity(M.dimension(), M.spec()), 0);
  return report;
}

KappaData kappa(const ModulePresentation& M, NicholsAlgebra& nich, int cap,
                std::optional<std::vector<int>> support) {
  KappaData k;
  k.cap = cap;
  if (support) {
    k.support = *support;
  } else {
    for (size_t i = 0; i < M.datum().rank(); ++i) k.support.push_back(static_cast<int>(i));
  }
  HighestWeightSpace h = highest_space(M);
  std::vector<std::vector<FieldElement>> cols;
  for (int total = 0; total <= cap; ++total)
    for (const auto& alpha : multidegrees_of_total(M.datum().rank(), total)) {
      if (!support_within(alpha, k.support)) continue;
      const auto& words = nich.basis_words(alpha, Side::F);
      for (size_t p = 0; p < words.size(); ++p) {
        Matrix aw = M.word_action(words[p]);
        for (size_t j = 0; j < h.dim(); ++j) {
          k.columns.emplace_back(BasisKey{alpha, p}, j);
          cols.push_back(aw.apply(h.basis[j]));
        }
      }
    }
  k.matrix = Matrix(M.dimension(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t r = 0; r < M.dimension(); ++r) k.matrix.at(r, c) = cols[c][r];
  k.rank = matrix_rank(k.matrix, M.spec());
  k.injective = k.rank == cols.size();
  k.surjective = k.rank == M.dimension();
  return k;
}

namespace {

DecompositionResult decompose_attempt(BosonAlgebra& B, const ModulePresentation& M,
                                      const TruncationIndex& t) {
  NicholsAlgebra& nich = B.nichols();
  const FieldSpec& sp = M.spec();
  const size_t n = M.dimension();

  DecompositionResult r;
  r.truncation = t;
  ExtremalProjector proj = build_projector(B, t);
  r.gamma_m = module_matrix(M, proj.element);
  r.gamma_idempotent = (r.gamma_m * r.gamma_m) == r.gamma_m;
  r.m0 = highest_space(M);

  bool image_in_m0 = true;
  for (const auto& g : M.datum().generators())
    if (!(M.action(Side::E, g) * r.gamma_m).is_zero()) image_in_m0 = false;
  r.gamma_image_is_m0 = image_in_m0 && matrix_rank(r.gamma_m, sp) == r.m0.dim();

  r.map = kappa(M, nich, t.n - 1, t.support);

  // section rows follow the kappa column layout; block starts per basis key
  std::map<BasisKey, size_t> row_start;
  for (size_t c = 0; c < r.map.columns.size(); ++c)
    if (r.map.columns[c].second == 0) row_start[r.map.columns[c].first] = c;

  r.section = Matrix(r.map.columns.size(), n);
  if (r.m0.dim() > 0) {
    Matrix h = r.m0.matrix(n, sp);
    Matrix hl = left_inverse(h, sp);
    for (int total = 0; total < t.n; ++total)
      for (const auto& alpha : multidegrees_of_total(M.datum().rank(), total)) {
        if (!support_within(alpha, t.support)) continue;
        DualBasisPair dual = nich.dual_pair(alpha);
        for (size_t p = 0; p < dual.s_basis.size(); ++p) {
          Matrix coords = hl * (r.gamma_m * free_matrix(M, dual.s_basis[p]));
          for (const auto& [w, c] : dual.r_basis[p].terms()) {
            const SpanData& sd = nich.span(alpha);
            size_t idx = sd.basis_index(Side::F, w);
            size_t base = row_start.at(BasisKey{alpha, idx});
            for (size_t j = 0; j < r.m0.dim(); ++j)
              for (size_t v = 0; v < n; ++v)
                r.section.at(base + j, v) += c * coords.at(j, v);
          }
        }
      }
  }

  Matrix rec = r.map.matrix * r.section;
  r.reconstruction_ok = rec == Matrix::identity(n, sp);
  r.isomorphism = r.reconstruction_ok && r.map.injective && r.map.surjective;
  if (r.isomorphism && r.map.matrix.rows() == r.map.matrix.cols())
    r.isomorphism = (r.section * r.map.matrix) ==
                    Matrix::identity(r.map.columns.size(), sp);
  return r;
}

size_t first_bad_column(const Matrix& rec, const FieldSpec& sp) {
  Matrix id = Matrix::identity(rec.rows(), sp);
  for (size_t c = 0; c < rec.cols(); ++c)
    for (size_t r = 0; r < rec.rows(); ++r)
      if (!(rec.at(r, c) == id.at(r, c))) return c;
  return 0;
}

}  // namespace

DecompositionResult decompose(BosonAlgebra& B, const ModulePresentation& M,
                              const TruncationIndex& t) {
  IntegrabilityReport rep = check_integrable(M, t);
  if (!rep.integrable)
    throw Error{ErrorKind::NotIntegrable,
                "module is not integrable at the requested truncation; witness product " +
                    word_str(rep.witness, M.datum())};
  DecompositionResult r = decompose_attempt(B, M, t);
  if (r.reconstruction_ok) return r;
  DecompositionResult retry = decompose_attempt(B, M, {t.n + 2, t.support});
  if (retry.reconstruction_ok) return retry;
  Matrix rec = retry.map.matrix * retry.section;
  size_t bad = first_bad_column(rec, M.spec());
  throw Error{ErrorKind::ReconstructionFailure,
              "reconstruction failed on basis vector '" + M.labels()[bad] +
                  "' even after retrying at level " + std::to_string(t.n + 2)};
}

FlkCertificate flk_certificate(BosonAlgebra& B) {
  NicholsAlgebra& nich = B.nichols();
  if (nich.spec().mode != FieldMode::Cyclotomic)
    throw Error{ErrorKind::NotFiniteDimensional,
                "the Nichols algebra is infinite-dimensional in transcendental mode"};
  int boundary = finite_boundary(nich);
  if (boundary < 0)
    throw Error{ErrorKind::NotFiniteDimensional,
                "no all-zero degree layer found within the degree cap " +
                    std::to_string(nich.cap())};

  FlkCertificate cert;
  cert.boundary = boundary;
  std::vector<BasisKey> rb;
  for (int total = 0; total < boundary; ++total)
    for (const auto& alpha : multidegrees_of_total(nich.datum().rank(), total))
      for (size_t i = 0; i < nich.dim(alpha); ++i) rb.push_back(BasisKey{alpha, i});
  const size_t d = rb.size();
  cert.dim_r = d;
  cert.dim_b = d * d;

  std::map<BasisKey, size_t> index;
  for (size_t i = 0; i < d; ++i) index[rb[i]] = i;

  Matrix rho(d * d, d * d);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      BosonElement mono;
      mono.add_term(BosonKey{nich.basis_word(rb[a], Side::F), nich.basis_word(rb[b], Side::E)},
                    FieldElement::one(nich.spec()));
      for (size_t c = 0; c < d; ++c) {
        NicholsElement x(Side::F);
        x.add_term(rb[c], FieldElement::one(nich.spec()));
        NicholsElement y = B.rho_apply(mono, x);
        for (const auto& [k, coeff] : y.terms())
          rho.at(index.at(k) * d + c, a * d + b) = coeff;
      }
    }
  cert.rank = matrix_rank(rho, nich.spec());
  cert.bijective = cert.rank == d * d;

  // digest of the multiplication table in the monomial basis
  std::ostringstream table;
  for (size_t a = 0; a < d * d; ++a)
    for (size_t b = 0; b < d * d; ++b) {
      BosonElement x, y;
      x.add_term(BosonKey{nich.basis_word(rb[a / d], Side::F), nich.basis_word(rb[a % d], Side::E)},
                 FieldElement::one(nich.spec()));
      y.add_term(BosonKey{nich.basis_word(rb[b / d], Side::F), nich.basis_word(rb[b % d], Side::E)},
                 FieldElement::one(nich.spec()));
      BosonElement p = B.multiply(x, y);
      table << a << "*" << b << "{";
      for (const auto& [k, c] : p.terms())
        table << "(" << c.str() << ")" << B.monomial_str(k) << ";";
      table << "}";
    }
  cert.digest = fnv1a_hex(table.str());
  return cert;
}

ModulePresentation make_truncated_verma(NicholsAlgebra& nich, int depth) {
  if (depth < 0) throw validation_error("truncation depth must be nonnegative");
  if (depth > nich.cap())
    throw degree_cap_error("truncated Verma depth exceeds the engine degree cap");
  const CartanDatum& d = nich.datum();
  const FieldSpec& sp = nich.spec();

  std::vector<BasisKey> keys;
  std::map<BasisKey, size_t> index;
  std::vector<std::string> labels;
  std::vector<int> grades;
  for (int total = 0; total <= depth; ++total)
    for (const auto& alpha : multidegrees_of_total(d.rank(), total))
      for (size_t i = 0; i < nich.dim(alpha); ++i) {
        BasisKey k{alpha, i};
        index[k] = keys.size();
        keys.push_back(k);
        labels.push_back(word_str(nich.basis_word(k, Side::F), d));
        grades.push_back(total);
      }

  ModulePresentation m;
  m.datum_ = &d;
  m.spec_ = sp;
  m.dim_ = keys.size();
  m.labels_ = std::move(labels);
  m.grades_ = std::move(grades);

  const auto roster = d.generators();
  const BraidingMatrix& br = nich.braiding();
  for (Side side : {Side::F, Side::E})
    for (const auto& g : roster) {
      Matrix mat(m.dim_, m.dim_);
      for (size_t c = 0; c < keys.size(); ++c) {
        const BasisKey& k = keys[c];
        const Word& w = nich.basis_word(k, Side::F);
        NicholsElement out(Side::F);
        if (side == Side::F) {
          if (total_degree(k.alpha) == depth) continue;  // truncated away
          out = nich.multiply(nich.from_word(Word{Side::F, {g}}),
                              nich.from_word(w));
        } else {
          out = nich.normal_form(
              e_derivation(br, g, FreeElement::from_word(w, FieldElement::one(sp))));
        }
        for (const auto& [key, coeff] : out.terms()) mat.at(index.at(key), c) = coeff;
      }
      m.actions_.push_back(std::move(mat));
    }
  m.finish(nich);
  return m;
}

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b) {
  if (a.datum_ != b.datum_)
    throw validation_error("direct summands must live over the same datum");
  if (a.grades_.empty() != b.grades_.empty())
    throw validation_error("direct summands disagree on grading");
  ModulePresentation m;
  m.datum_ = a.datum_;
  m.spec_ = a.spec_;
  m.dim_ = a.dim_ + b.dim_;
  m.labels_ = a.labels_;
  for (const auto& l : b.labels_) m.labels_.push_back(l + "'");
  m.grades_ = a.grades_;
  m.grades_.insert(m.grades_.end(), b.grades_.begin(), b.grades_.end());
  for (size_t idx = 0; idx < a.actions_.size(); ++idx) {
    Matrix mat(m.dim_, m.dim_);
    for (size_t r = 0; r < a.dim_; ++r)
      for (size_t c = 0; c < a.dim_; ++c) mat.at(r, c) = a.actions_[idx].at(r, c);
    for (size_t r = 0; r < b.dim_; ++r)
      for (size_t c = 0; c < b.dim_; ++c)
        mat.at(a.dim_ + r, a.dim_ + c) = b.actions_[idx].at(r, c);
    m.actions_.push_back(std::move(mat));
  }
  m.nil_bound_ = std::max(a.nil_bound_, b.nil_bound_);
  return m;
}

ModulePresentation tensor_trivial(const ModulePresentation& a, size_t extra) {
  ModulePresentation m;
  m.datum_ = a.datum_;
  m.spec_ = a.spec_;
  m.dim_ = a.dim_ * extra;
  for (size_t v = 0; v < a.dim_; ++v)
    for (size_t j = 0; j < extra; ++j) {
      m.labels_.push_back(a.labels_[v] + "(x)" + std::to_string(j + 1));
      if (!a.grades_.empty()) m.grades_.push_back(a.grades_[v]);
    }
  for (const auto& act : a.actions_) {
    Matrix mat(m.dim_, m.dim_);
    for (size_t r = 0; r < a.dim_; ++r)
      for (size_t c = 0; c < a.dim_; ++c) {
        if (act.at(r, c).is_zero()) continue;
        for (size_t j = 0; j < extra; ++j) mat.at(r * extra + j, c * extra + j) = act.at(r, c);
      }
    m.actions_.push_back(std::move(mat));
  }
  m.nil_bound_ = a.nil_bound_;
  return m;
}

ModulePresentation make_regular_module(BosonAlgebra& B) {
  NicholsAlgebra& nich = B.nichols();
  if (nich.spec().mode != FieldMode::Cyclotomic)
    throw Error{ErrorKind::NotFiniteDimensional,
                "the regular module is finite-dimensional only in cyclotomic mode"};
  int boundary = finite_boundary(nich);
  if (boundary < 0)
    throw Error{ErrorKind::NotFiniteDimensional,
                "no all-zero degree layer found within the degree cap " +
                    std::to_string(nich.cap())};
  std::vector<BasisKey> rb;
  for (int total = 0; total < boundary; ++total)
    for (const auto& alpha : multidegrees_of_total(nich.datum().rank(), total))
      for (size_t i = 0; i < nich.dim(alpha); ++i) rb.push_back(BasisKey{alpha, i});
  const size_t d = rb.size();

  std::vector<BosonKey> basis;
  std::map<BosonKey, size_t> index;
  ModulePresentation m;
  m.datum_ = &nich.datum();
  m.spec_ = nich.spec();
  m.dim_ = d * d;
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      BosonKey k{nich.basis_word(rb[a], Side::F), nich.basis_word(rb[b], Side::E)};
      index[k] = basis.size();
      basis.push_back(k);
      m.labels_.push_back(B.monomial_str(k));
    }

  const auto roster = m.datum_->generators();
  for (Side side : {Side::F, Side::E})
    for (const auto& g : roster) {
      Matrix mat(m.dim_, m.dim_);
      for (size_t c = 0; c < basis.size(); ++c) {
        BosonElement mono;
        mono.add_term(basis[c], FieldElement::one(m.spec_));
        BosonElement out = B.multiply(B.generator(side, g), mono);
        for (const auto& [k, coeff] : out.terms()) mat.at(index.at(k), c) = coeff;
      }
      m.actions_.push_back(std::move(mat));
    }
  m.finish(nich);
  return m;
}

Matrix nichols_matrix(const ModulePresentation& M, NicholsAlgebra& nich,
                      const NicholsElement& x) {
  Matrix out(M.dimension(), M.dimension());
  for (const auto& [k, c] : x.terms())
    out = out + M.word_action(nich.basis_word(k, x.side())).scaled(c);
  return out;
}

Matrix module_matrix(const ModulePresentation& M, const BosonElement& x) {
  Matrix out(M.dimension(), M.dimension());
  for (const auto& [k, c] : x.terms())
    out = out + (M.word_action(k.f) * M.word_action(k.e)).scaled(c);
  return out;
}

}  // namespace qb
