#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qboson/repmod.hpp"

namespace qb {

// One CLI invocation's result document. Everything except timings_ms is
// deterministic for a fixed engine version, command, and input.
struct RunReport {
  std::string engine_version;
  std::string command;
  std::string datum_digest;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json timings_ms = nlohmann::json::object();

  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);

  // serialization with the timings stripped, for determinism comparisons
  std::string deterministic_dump() const;
};

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json boson_element_to_json(const BosonElement& x);
BosonElement boson_element_from_json(const nlohmann::json& j, const CartanDatum& d);
nlohmann::json truncation_to_json(const TruncationIndex& t, const CartanDatum& d);
nlohmann::json certificates_to_json(const ProjectorCertificates& c);
nlohmann::json projector_to_json(const ExtremalProjector& p, const CartanDatum& d);
nlohmann::json decomposition_to_json(const DecompositionResult& r, const CartanDatum& d);
nlohmann::json flk_to_json(const FlkCertificate& c);

}  // namespace qb
