#include "qboson/cartan.hpp"

#include <fstream>
#include <sstream>

#include "qboson/errors.hpp"

namespace qb {

uint64_t fnv1a(std::string_view data, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a_hex(std::string_view data) {
  uint64_t h = fnv1a(data);
  std::ostringstream out;
  out << std::hex;
  for (int i = 15; i >= 0; --i) out << ((h >> (i * 4)) & 0xf);
  return out.str();
}

CartanDatum CartanDatum::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open datum file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("datum JSON parse error in " + path + ": " + e.what());
  }
  return load(j);
}

CartanDatum CartanDatum::load(const nlohmann::json& j) {
  CartanDatum d;
  try {
    if (!j.is_object()) throw validation_error("datum must be a JSON object");
    for (const auto& key : {"labels", "cartan", "symmetrizers", "multiplicities", "field"})
      if (!j.contains(key)) throw validation_error(std::string("datum missing field: ") + key);
    d.labels_ = j.at("labels").get<std::vector<std::string>>();
    d.cartan_ = j.at("cartan").get<std::vector<std::vector<long>>>();
    d.sym_ = j.at("symmetrizers").get<std::vector<long>>();
    d.mult_ = j.at("multiplicities").get<std::vector<long>>();
    const auto& f = j.at("field");
    std::string mode = f.at("mode").get<std::string>();
    if (mode == "transcendental") {
      d.field_ = FieldSpec{FieldMode::Transcendental, 0};
    } else if (mode == "cyclotomic") {
      long order = f.at("order").get<long>();
      if (order < 2) throw validation_error("cyclotomic order must be >= 2");
      d.field_ = FieldSpec{FieldMode::Cyclotomic, static_cast<unsigned>(order)};
    } else {
      throw validation_error("unknown field mode: " + mode);
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("datum JSON shape error: ") + e.what());
  }
  d.validate();
  return d;
}

void CartanDatum::validate() const {
  size_t n = labels_.size();
  for (size_t i = 0; i < n; ++i) {
    if (labels_[i].empty()) throw validation_error("empty generator label");
    for (size_t j = i + 1; j < n; ++j)
      if (labels_[i] == labels_[j]) throw validation_error("duplicate label: " + labels_[i]);
  }
  if (cartan_.size() != n) throw validation_error("cartan matrix row count mismatch");
  for (const auto& row : cartan_)
    if (row.size() != n) throw validation_error("cartan matrix column count mismatch");
  if (sym_.size() != n) throw validation_error("symmetrizers length mismatch");
  if (mult_.size() != n) throw validation_error("multiplicities length mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (sym_[i] < 1) throw validation_error("symmetrizers must be positive integers");
    if (mult_[i] < 1) throw validation_error("multiplicities must be positive integers");
    if (cartan_[i][i] > 2 || cartan_[i][i] == 1)
      throw validation_error("diagonal Cartan entries must be 2 or <= 0");
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cartan_[i][j] > 0) throw validation_error("off-diagonal Cartan entries must be <= 0");
      if (sym_[i] * cartan_[i][j] != sym_[j] * cartan_[j][i])
        throw validation_error("Cartan matrix is not symmetrizable by the given symmetrizers");
    }
  }
  if (field_.mode == FieldMode::Cyclotomic) {
    unsigned N = field_.order;
    if (N % 2 == 0) throw validation_error("cyclotomic order must be odd");
    // A G2 component means a finite-type 2x2 principal submatrix with
    // a_{ij} a_{ji} = 3; rows of Borcherds type (a_ii <= 0) are exempt.
    for (size_t i = 0; i < n; ++i) {
      if (cartan_[i][i] != 2) continue;
      for (size_t j = 0; j < n; ++j) {
        if (i == j || cartan_[j][j] != 2) continue;
        if (cartan_[i][j] * cartan_[j][i] == 3 && N % 3 == 0)
          throw validation_error("cyclotomic order divisible by 3 with a G2 component");
      }
    }
  }
}

int CartanDatum::index_of_label(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  throw validation_error("unknown generator label: " + label);
}

std::vector<GeneratorIndex> CartanDatum::generators() const {
  std::vector<GeneratorIndex> out;
  for (size_t i = 0; i < rank(); ++i)
    for (long k = 1; k <= mult_[i]; ++k) out.push_back({static_cast<int>(i), static_cast<int>(k)});
  return out;
}

CartanDatum CartanDatum::restrict(const std::vector<int>& F) const {
  CartanDatum d;
  d.field_ = field_;
  for (size_t a = 0; a < F.size(); ++a) {
    int i = F[a];
    if (i < 0 || i >= static_cast<int>(rank())) throw validation_error("restrict: index out of range");
    if (a > 0 && F[a - 1] >= i) throw validation_error("restrict: indices must be strictly increasing");
    d.labels_.push_back(labels_[i]);
    d.sym_.push_back(sym_[i]);
    d.mult_.push_back(mult_[i]);
    std::vector<long> row;
    for (int j : F) row.push_back(cartan_[i][j]);
    d.cartan_.push_back(std::move(row));
  }
  d.validate();
  return d;
}

nlohmann::json CartanDatum::to_json() const {
  nlohmann::json j;
  j["labels"] = labels_;
  j["cartan"] = cartan_;
  j["symmetrizers"] = sym_;
  j["multiplicities"] = mult_;
  if (field_.mode == FieldMode::Transcendental) {
    j["field"] = {{"mode", "transcendental"}};
  } else {
    j["field"] = {{"mode", "cyclotomic"}, {"order", field_.order}};
  }
  return j;
}

std::string CartanDatum::digest() const { return fnv1a_hex(to_json().dump()); }

BraidingMatrix::BraidingMatrix(const CartanDatum& d) : datum_(&d), n_(d.rank()) {
  q_.reserve(n_ * n_);
  qinv_.reserve(n_ * n_);
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) {
      long e = -d.sym(static_cast<int>(i)) * d.a(static_cast<int>(i), static_cast<int>(j));
      q_.push_back(FieldElement::q_power(d.field(), e));
      qinv_.push_back(FieldElement::q_power(d.field(), -e));
    }
}

}  // namespace qb
