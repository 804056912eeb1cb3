#include "qboson/pairing.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qboson/errors.hpp"
#include "qboson/version.hpp"

namespace qb {

FieldElement tau_derivation(const BraidingMatrix& B, const Word& r, const Word& s) {
  if (r.side != Side::F) throw side_mismatch("tau expects an F-side word on the left");
  if (s.side != Side::E) throw side_mismatch("tau expects an E-side word on the right");
  const FieldSpec& spec = B.spec();
  FreeElement acted = s_action(B, s, FreeElement::from_word(r, FieldElement::one(spec)));
  Word empty{Side::F, {}};
  return acted.coeff(empty);
}

namespace {

FieldElement tau_rec(const BraidingMatrix& B, const Word& r, const Word& s,
                     std::map<std::pair<Word, Word>, FieldElement>& memo) {
  const FieldSpec& spec = B.spec();
  if (s.length() == 0) {
    return r.length() == 0 ? FieldElement::one(spec) : FieldElement::zero(spec);
  }
  if (r.length() != s.length()) return FieldElement::zero(spec);
  if (s.length() == 1) {
    return r.letters[0] == s.letters[0] ? FieldElement::one(spec) : FieldElement::zero(spec);
  }
  auto key = std::make_pair(r, s);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  GeneratorIndex w = s.letters[0];
  Word rest{Side::E, std::vector<GeneratorIndex>(s.letters.begin() + 1, s.letters.end())};
  FieldElement total = FieldElement::zero(spec);
  for (const CoproductTerm& t : braided_coproduct(B, r)) {
    if (t.right.length() != 1 || !(t.right.letters[0] == w)) continue;
    FieldElement sub = tau_rec(B, t.left, rest, memo);
    if (!sub.is_zero()) total += t.coeff * sub;
  }
  memo[key] = total;
  return total;
}

}  // namespace

FieldElement tau_recursive(const BraidingMatrix& B, const Word& r, const Word& s) {
  if (r.side != Side::F) throw side_mismatch("tau expects an F-side word on the left");
  if (s.side != Side::E) throw side_mismatch("tau expects an E-side word on the right");
  std::map<std::pair<Word, Word>, FieldElement> memo;
  return tau_rec(B, r, s, memo);
}

FieldElement tau_free(const BraidingMatrix& B, const FreeElement& r, const FreeElement& s) {
  FieldElement total = FieldElement::zero(B.spec());
  for (const auto& [ru, rc] : r.terms())
    for (const auto& [sv, sc] : s.terms()) {
      FieldElement t = tau_derivation(B, ru, sv);
      if (!t.is_zero()) total += rc * sc * t;
    }
  return total;
}

size_t GramBlock::row_index(const Word& w) const {
  auto it = std::lower_bound(row_words.begin(), row_words.end(), w);
  if (it == row_words.end() || !(*it == w)) throw internal_error("word not in Gram block rows");
  return static_cast<size_t>(it - row_words.begin());
}

size_t GramBlock::col_index(const Word& w) const {
  auto it = std::lower_bound(col_words.begin(), col_words.end(), w);
  if (it == col_words.end() || !(*it == w)) throw internal_error("word not in Gram block columns");
  return static_cast<size_t>(it - col_words.begin());
}

GramEngine::GramEngine(const CartanDatum& d, int cap)
    : datum_(&d), braiding_(d), cap_(cap) {
  if (const char* env = std::getenv("QBOSON_CACHE_DIR")) cache_dir_ = env;
}

const GramBlock& GramEngine::block(const std::vector<int>& alpha) {
  if (alpha.size() != datum_->rank()) throw internal_error("multidegree rank mismatch");
  for (int a : alpha)
    if (a < 0) throw internal_error("negative multidegree");
  if (total_degree(alpha) > cap_)
    throw degree_cap_error("Gram block degree " + std::to_string(total_degree(alpha)) +
                           " exceeds cap " + std::to_string(cap_));
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = blocks_.find(alpha);
  if (it != blocks_.end()) return *it->second;
  std::unique_ptr<GramBlock> b;
  if (!cache_dir_.empty()) b = try_cache_load(alpha);
  if (!b) {
    b = compute_block(alpha);
    if (!cache_dir_.empty()) cache_store(*b);
  }
  auto [pos, inserted] = blocks_.emplace(alpha, std::move(b));
  (void)inserted;
  return *pos->second;
}

std::unique_ptr<GramBlock> GramEngine::compute_block(const std::vector<int>& alpha) {
  auto b = std::make_unique<GramBlock>();
  b->alpha = alpha;
  b->row_words = words_of_multidegree(*datum_, Side::F, alpha);
  b->col_words = words_of_multidegree(*datum_, Side::E, alpha);
  size_t n = b->row_words.size();
  if (b->col_words.size() != n) throw internal_error("Gram block is not square");
  const FieldSpec& spec = datum_->field();
  b->entries = Matrix(n, n);
  if (total_degree(alpha) == 0) {
    b->entries.at(0, 0) = FieldElement::one(spec);
  } else {
    for (size_t v = 0; v < n; ++v) {
      const Word& s = b->col_words[v];
      GeneratorIndex g = s.letters.back();
      Word stub = s.without(s.length() - 1);
      const GramBlock& sub = block(add_unit(alpha, g.i, -1));
      size_t sub_col = sub.col_index(stub);
      for (size_t u = 0; u < n; ++u) {
        const Word& r = b->row_words[u];
        FieldElement acc = FieldElement::zero(spec);
        FieldElement weight = FieldElement::one(spec);
        for (size_t p = 0; p < r.length(); ++p) {
          if (r.letters[p] == g) {
            const FieldElement& low = sub.entries.at(sub.row_index(r.without(p)), sub_col);
            if (!low.is_zero()) acc += weight * low;
          }
          weight *= braiding_.q(g.i, r.letters[p].i);
        }
        b->entries.at(u, v) = acc;
      }
    }
  }
  Elimination e = eliminate(b->entries, spec);
  b->rank = e.rank;
  b->pivot_rows = e.pivot_rows;
  b->pivot_cols = e.pivot_cols;
  for (size_t fr : e.free_rows) {
    FreeElement v(Side::F);
    for (size_t j = 0; j < n; ++j) v.add_term(b->row_words[j], e.transform.at(fr, j));
    b->kernel_basis.push_back(std::move(v));
  }
  return b;
}

DualBasisPair GramEngine::dual_bases(const std::vector<int>& alpha) {
  const GramBlock& b = block(alpha);
  DualBasisPair pair;
  pair.alpha = alpha;
  const FieldSpec& spec = datum_->field();
  size_t rk = b.rank;
  if (rk == 0) {
    pair.certified = true;
    return pair;
  }
  Matrix gpiv(rk, rk);
  for (size_t p = 0; p < rk; ++p)
    for (size_t q = 0; q < rk; ++q) gpiv.at(p, q) = b.entries.at(b.pivot_rows[p], b.pivot_cols[q]);
  Matrix inv = inverse(gpiv, spec);
  for (size_t p = 0; p < rk; ++p)
    pair.r_basis.push_back(
        FreeElement::from_word(b.row_words[b.pivot_rows[p]], FieldElement::one(spec)));
  for (size_t q = 0; q < rk; ++q) {
    FreeElement s(Side::E);
    for (size_t c = 0; c < rk; ++c) s.add_term(b.col_words[b.pivot_cols[c]], inv.at(c, q));
    pair.s_basis.push_back(std::move(s));
  }
  // Never trust the inversion: recheck delta_pq against fresh evaluations.
  for (size_t p = 0; p < rk; ++p)
    for (size_t q = 0; q < rk; ++q) {
      FieldElement t = tau_free(braiding_, pair.r_basis[p], pair.s_basis[q]);
      FieldElement want = p == q ? FieldElement::one(spec) : FieldElement::zero(spec);
      if (!(t == want)) throw internal_error("dual basis certification failed");
    }
  pair.certified = true;
  return pair;
}

nlohmann::json gram_block_to_json(const GramBlock& b, const CartanDatum& d) {
  nlohmann::json j;
  j["alpha"] = b.alpha;
  nlohmann::json rows = nlohmann::json::array(), cols = nlohmann::json::array();
  for (const Word& w : b.row_words) rows.push_back(word_to_json(w));
  for (const Word& w : b.col_words) cols.push_back(word_to_json(w));
  j["row_words"] = std::move(rows);
  j["col_words"] = std::move(cols);
  nlohmann::json entries = nlohmann::json::array();
  for (size_t u = 0; u < b.entries.rows(); ++u) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t v = 0; v < b.entries.cols(); ++v) row.push_back(b.entries.at(u, v).str());
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  j["rank"] = b.rank;
  j["pivot_rows"] = b.pivot_rows;
  j["pivot_cols"] = b.pivot_cols;
  nlohmann::json kernel = nlohmann::json::array();
  for (const FreeElement& v : b.kernel_basis) {
    nlohmann::json vec = nlohmann::json::array();
    for (const auto& [w, c] : v.terms())
      vec.push_back({{"word", word_to_json(w)}, {"coeff", c.str()}});
    kernel.push_back(std::move(vec));
  }
  j["kernel"] = std::move(kernel);
  (void)d;
  return j;
}

GramBlock gram_block_from_json(const nlohmann::json& j, const CartanDatum& d) {
  GramBlock b;
  const FieldSpec& spec = d.field();
  b.alpha = j.at("alpha").get<std::vector<int>>();
  for (const auto& jw : j.at("row_words")) b.row_words.push_back(word_from_json(Side::F, jw, d));
  for (const auto& jw : j.at("col_words")) b.col_words.push_back(word_from_json(Side::E, jw, d));
  size_t n = b.row_words.size();
  b.entries = Matrix(n, b.col_words.size());
  const auto& entries = j.at("entries");
  if (entries.size() != n) throw parse_error("Gram cache entry row count mismatch");
  for (size_t u = 0; u < n; ++u) {
    const auto& row = entries.at(u);
    if (row.size() != b.col_words.size()) throw parse_error("Gram cache entry column count mismatch");
    for (size_t v = 0; v < b.col_words.size(); ++v)
      b.entries.at(u, v) = FieldElement::parse(spec, row.at(v).get<std::string>());
  }
  b.rank = j.at("rank").get<size_t>();
  b.pivot_rows = j.at("pivot_rows").get<std::vector<size_t>>();
  b.pivot_cols = j.at("pivot_cols").get<std::vector<size_t>>();
  for (const auto& jv : j.at("kernel")) {
    FreeElement v(Side::F);
    for (const auto& jt : jv)
      v.add_term(word_from_json(Side::F, jt.at("word"), d),
                 FieldElement::parse(spec, jt.at("coeff").get<std::string>()));
    b.kernel_basis.push_back(std::move(v));
  }
  return b;
}

std::string GramEngine::cache_path(const std::vector<int>& alpha) const {
  std::string name = "gram-" + datum_->digest();
  for (int a : alpha) name += "-" + std::to_string(a);
  return (std::filesystem::path(cache_dir_) / (name + ".json")).string();
}

std::unique_ptr<GramBlock> GramEngine::try_cache_load(const std::vector<int>& alpha) const {
  std::ifstream in(cache_path(alpha));
  if (!in) return nullptr;
  try {
    nlohmann::json j;
    in >> j;
    if (j.at("format_version").get<int>() != kCacheFormatVersion) return nullptr;
    if (j.at("datum_digest").get<std::string>() != datum_->digest()) return nullptr;
    auto b = std::make_unique<GramBlock>(gram_block_from_json(j.at("block"), *datum_));
    if (b->alpha != alpha) return nullptr;
    return b;
  } catch (const std::exception&) {
    return nullptr;  // stale or corrupt cache entries are recomputed
  }
}

void GramEngine::cache_store(const GramBlock& b) const {
  try {
    std::filesystem::create_directories(cache_dir_);
    nlohmann::json j;
    j["format_version"] = kCacheFormatVersion;
    j["engine_version"] = kEngineVersion;
    j["datum_digest"] = datum_->digest();
    j["block"] = gram_block_to_json(b, *datum_);
    std::string path = cache_path(b.alpha);
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path);
  } catch (const std::exception&) {
    // best-effort cache; computation already succeeded
  }
}

}  // namespace qb
