#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qboson/field.hpp"

namespace qb {

// Generator coordinate: i indexes the datum row (0-based), k the copy within
// the multiplicity space (1-based, 1 <= k <= m_i).
struct GeneratorIndex {
  int i = 0;
  int k = 1;
  auto operator<=>(const GeneratorIndex&) const = default;
};

class CartanDatum {
public:
  static CartanDatum load(const nlohmann::json& j);
  static CartanDatum load_file(const std::string& path);

  size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  long a(int i, int j) const { return cartan_[i][j]; }
  long sym(int i) const { return sym_[i]; }
  long mult(int i) const { return mult_[i]; }
  const FieldSpec& field() const { return field_; }

  int index_of_label(const std::string& label) const;  // throws ValidationError if absent
  std::vector<GeneratorIndex> generators() const;      // ordered roster, i then k

  // Sub-datum on the sorted index subset F (labels preserved).
  CartanDatum restrict(const std::vector<int>& F) const;

  nlohmann::json to_json() const;  // canonical form
  std::string digest() const;     // stable hash of the canonical form

private:
  void validate() const;

  std::vector<std::string> labels_;
  std::vector<std::vector<long>> cartan_;
  std::vector<long> sym_;
  std::vector<long> mult_;
  FieldSpec field_;
};

// Braiding scalars q_{ij} = q^{-s_i a_{ij}}; independent of the multiplicity
// coordinates by construction.
class BraidingMatrix {
public:
  explicit BraidingMatrix(const CartanDatum& d);

  const CartanDatum& datum() const { return *datum_; }
  const FieldSpec& spec() const { return datum_->field(); }
  const FieldElement& q(int i, int j) const { return q_[i * n_ + j]; }
  const FieldElement& q_inv(int i, int j) const { return qinv_[i * n_ + j]; }

private:
  const CartanDatum* datum_;
  size_t n_;
  std::vector<FieldElement> q_;
  std::vector<FieldElement> qinv_;
};

uint64_t fnv1a(std::string_view data, uint64_t seed = 0xcbf29ce484222325ull);
std::string fnv1a_hex(std::string_view data);

}  // namespace qb
