#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qboson/linalg.hpp"
#include "qboson/words.hpp"

namespace qb {

// tau(r, s) = epsilon(s |> r): iterated skew derivations, then the
// coefficient of the empty word. Vanishes whenever multidegrees differ.
FieldElement tau_derivation(const BraidingMatrix& B, const Word& r, const Word& s);

// The same pairing through the comultiplicative route: peel the first letter
// w of s, contract it against the right coproduct leg of r, and recurse on
// the left leg. Generator pairings tau(f'_{jl}, e_{ik}) = delta_ij delta_kl
// are the base case. Implemented independently of tau_derivation so the two
// can certify each other.
FieldElement tau_recursive(const BraidingMatrix& B, const Word& r, const Word& s);

// Bilinear extension to linear combinations (F side x E side).
FieldElement tau_free(const BraidingMatrix& B, const FreeElement& r, const FreeElement& s);

// Full pairing matrix of one multidegree: rows are all F-side words of
// multidegree alpha, columns all E-side words, both in canonical order.
struct GramBlock {
  std::vector<int> alpha;
  std::vector<Word> row_words;
  std::vector<Word> col_words;
  Matrix entries;  // entries(u, v) = tau(row_words[u], col_words[v])
  size_t rank = 0;
  std::vector<size_t> pivot_rows;
  std::vector<size_t> pivot_cols;
  std::vector<FreeElement> kernel_basis;  // left radical vectors, reduced form

  size_t row_index(const Word& w) const;
  size_t col_index(const Word& w) const;
};

struct DualBasisPair {
  std::vector<int> alpha;
  std::vector<FreeElement> r_basis;  // F side: the pivot row words
  std::vector<FreeElement> s_basis;  // E side: combinations with tau(r_p, s_q) = delta_pq
  bool certified = false;
};

nlohmann::json gram_block_to_json(const GramBlock& b, const CartanDatum& d);
GramBlock gram_block_from_json(const nlohmann::json& j, const CartanDatum& d);

// Per-degree Gram blocks with an in-memory memo and an optional disk cache
// (QBOSON_CACHE_DIR). Blocks are built by the last-letter recursion
//   tau(r, s~.g) = sum_{p: r_p = g} (prod_{a<p} q_{i_g i_{r_a}}) tau(r\p, s~)
// over the block one unit lower, which is tau_derivation unrolled one step.
class GramEngine {
public:
  GramEngine(const CartanDatum& d, int cap);

  const CartanDatum& datum() const { return *datum_; }
  const BraidingMatrix& braiding() const { return braiding_; }
  int cap() const { return cap_; }

  const GramBlock& block(const std::vector<int>& alpha);  // throws DegreeCapExceeded past cap
  DualBasisPair dual_bases(const std::vector<int>& alpha);

private:
  std::unique_ptr<GramBlock> compute_block(const std::vector<int>& alpha);
  std::string cache_path(const std::vector<int>& alpha) const;
  std::unique_ptr<GramBlock> try_cache_load(const std::vector<int>& alpha) const;
  void cache_store(const GramBlock& b) const;

  const CartanDatum* datum_;
  BraidingMatrix braiding_;
  int cap_;
  std::string cache_dir_;
  std::map<std::vector<int>, std::unique_ptr<GramBlock>> blocks_;
  std::recursive_mutex mu_;
};

}  // namespace qb
