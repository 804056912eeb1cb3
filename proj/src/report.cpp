#include "qboson/report.hpp"

#include "qboson/errors.hpp"
#include "qboson/version.hpp"

namespace qb {

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["engine_version"] = engine_version;
  j["command"] = command;
  j["datum_digest"] = datum_digest;
  j["parameters"] = parameters;
  j["results"] = results;
  j["timings_ms"] = timings_ms;
  return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
  RunReport r;
  try {
    r.engine_version = j.at("engine_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.datum_digest = j.at("datum_digest").get<std::string>();
    r.parameters = j.at("parameters");
    r.results = j.at("results");
    if (j.contains("timings_ms")) r.timings_ms = j.at("timings_ms");
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed run report: ") + e.what());
  }
  return r;
}

std::string RunReport::deterministic_dump() const {
  nlohmann::json j = to_json();
  j.erase("timings_ms");
  return j.dump(2);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json boson_element_to_json(const BosonElement& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : x.terms()) {
    nlohmann::json t;
    t["f"] = word_to_json(k.f);
    t["e"] = word_to_json(k.e);
    t["coeff"] = c.str();
    terms.push_back(std::move(t));
  }
  return terms;
}

BosonElement boson_element_from_json(const nlohmann::json& j, const CartanDatum& d) {
  if (!j.is_array()) throw parse_error("smash product element must be a JSON array");
  BosonElement x;
  for (const auto& t : j) {
    Word f = word_from_json(Side::F, t.at("f"), d);
    Word e = word_from_json(Side::E, t.at("e"), d);
    x.add_term(BosonKey{f, e}, FieldElement::parse(d.field(), t.at("coeff").get<std::string>()));
  }
  return x;
}

nlohmann::json truncation_to_json(const TruncationIndex& t, const CartanDatum& d) {
  nlohmann::json j;
  j["level"] = t.n;
  nlohmann::json sup = nlohmann::json::array();
  for (int i : t.support) sup.push_back(d.labels()[i]);
  j["support"] = std::move(sup);
  return j;
}

nlohmann::json certificates_to_json(const ProjectorCertificates& c) {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : c.properties) {
    nlohmann::json pj;
    pj["name"] = p.name;
    pj["holds"] = p.holds;
    pj["modulus_level"] = p.modulus_level;
    pj["counterexample"] = p.counterexample;
    props.push_back(std::move(pj));
  }
  nlohmann::json j;
  j["properties"] = std::move(props);
  j["all_hold"] = c.all_hold;
  return j;
}

nlohmann::json projector_to_json(const ExtremalProjector& p, const CartanDatum& d) {
  nlohmann::json j;
  j["truncation"] = truncation_to_json(p.truncation, d);
  j["element"] = boson_element_to_json(p.element);
  j["certificates"] = certificates_to_json(p.certificates);
  return j;
}

nlohmann::json decomposition_to_json(const DecompositionResult& r, const CartanDatum& d) {
  nlohmann::json j;
  j["truncation"] = truncation_to_json(r.truncation, d);
  nlohmann::json m0 = nlohmann::json::array();
  for (const auto& v : r.m0.basis) {
    nlohmann::json col = nlohmann::json::array();
    for (const auto& c : v) col.push_back(c.str());
    m0.push_back(std::move(col));
  }
  j["m0_basis"] = std::move(m0);
  j["gamma_matrix"] = matrix_to_json(r.gamma_m);
  j["gamma_idempotent"] = r.gamma_idempotent;
  j["gamma_image_is_m0"] = r.gamma_image_is_m0;
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& [key, m0i] : r.map.columns) {
    nlohmann::json cj;
    cj["alpha"] = key.alpha;
    cj["index"] = key.index;
    cj["m0_index"] = m0i;
    cols.push_back(std::move(cj));
  }
  j["kappa"] = {{"cap", r.map.cap},
                {"columns", std::move(cols)},
                {"matrix", matrix_to_json(r.map.matrix)},
                {"rank", r.map.rank},
                {"injective", r.map.injective},
                {"surjective", r.map.surjective}};
  j["section"] = matrix_to_json(r.section);
  j["reconstruction_ok"] = r.reconstruction_ok;
  j["isomorphism"] = r.isomorphism;
  return j;
}

nlohmann::json flk_to_json(const FlkCertificate& c) {
  nlohmann::json j;
  j["boundary"] = c.boundary;
  j["dim_r"] = c.dim_r;
  j["dim_b"] = c.dim_b;
  j["rank"] = c.rank;
  j["bijective"] = c.bijective;
  j["structure_digest"] = c.digest;
  return j;
}

}  // namespace qb
