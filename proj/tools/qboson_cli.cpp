#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qboson/errors.hpp"
#include "qboson/report.hpp"
#include "qboson/version.hpp"

namespace {

using qb::Side;

std::vector<int> parse_support(const qb::CartanDatum& d, const std::string& csv) {
  std::vector<int> nodes;
  if (csv.empty()) {
    for (size_t i = 0; i < d.rank(); ++i) nodes.push_back(static_cast<int>(i));
    return nodes;
  }
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) nodes.push_back(d.index_of_label(item));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::vector<int> parse_alpha(const qb::CartanDatum& d, const std::string& csv) {
  std::vector<int> alpha;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      alpha.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw qb::parse_error("--alpha expects a comma-separated integer vector");
    }
  }
  if (alpha.size() != d.rank())
    throw qb::validation_error("--alpha must list one entry per datum node");
  for (int a : alpha)
    if (a < 0) throw qb::validation_error("--alpha entries must be nonnegative");
  return alpha;
}

nlohmann::json labels_of(const qb::CartanDatum& d, const std::vector<int>& nodes) {
  nlohmann::json out = nlohmann::json::array();
  for (int i : nodes) out.push_back(d.labels()[i]);
  return out;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qb::parse_error("cannot open file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return qb::fnv1a_hex(buf.str());
}

qb::RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qb::parse_error("cannot open report file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw qb::parse_error(std::string("report file ") + path + ": " + e.what());
  }
  return qb::RunReport::from_json(j);
}

// replay the certificates of a stored projector report from its serialized
// element and compare every verdict
void replay_projector_certificates(qb::BosonAlgebra& B, const qb::RunReport& old) {
  if (old.command != "projector" || old.datum_digest != B.datum().digest())
    throw qb::Error(qb::ErrorKind::CertificateFailure,
                    "stored report was produced by a different command or datum");
  const auto& stored = old.results.at("projector");
  qb::BosonElement elem = qb::boson_element_from_json(stored.at("element"), B.datum());
  qb::TruncationIndex t;
  t.n = stored.at("truncation").at("level").get<int>();
  for (const auto& l : stored.at("truncation").at("support"))
    t.support.push_back(B.datum().index_of_label(l.get<std::string>()));
  std::sort(t.support.begin(), t.support.end());
  qb::ExtremalProjector p{t, elem, {}};
  qb::ProjectorCertificates fresh = qb::certify_projector(B, p);
  if (qb::certificates_to_json(fresh) != stored.at("certificates"))
    throw qb::Error(qb::ErrorKind::CertificateFailure,
                    "replayed certificates disagree with the stored report");
}

int run(int argc, char** argv) {
  CLI::App app{"exact computation engine for generalized q-boson algebras"};
  app.require_subcommand(1);

  std::string datum_path, output, verify_path, module_path, support_csv, alpha_csv;
  int max_degree = 6;
  int degree = 0;
  int truncation = 0;
  int hard_cap = 24;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("datum", datum_path, "Borcherds-Cartan datum JSON file")->required();
    sub->add_option("--output", output, "also write the report to this file");
    sub->add_option("--verify", verify_path, "replay this stored report and compare");
    sub->add_option("--cap", hard_cap, "hard degree cap (default 24)");
  };

  CLI::App* cmd_dims = app.add_subcommand("dims", "dimension table of R per multidegree");
  add_common(cmd_dims);
  cmd_dims->add_option("--max-degree", max_degree, "largest total degree (default 6)");

  CLI::App* cmd_gram = app.add_subcommand("gram", "Gram block of the pairing at one multidegree");
  add_common(cmd_gram);
  cmd_gram->add_option("--alpha", alpha_csv, "multidegree, e.g. 2,1")->required();

  CLI::App* cmd_proj = app.add_subcommand("projector", "truncated extremal projector with certificates");
  add_common(cmd_proj);
  cmd_proj->add_option("--degree", degree, "truncation level n")->required();
  cmd_proj->add_option("--support", support_csv, "comma-separated node labels (default: all)");

  CLI::App* cmd_dec = app.add_subcommand("decompose", "decompose an integrable module");
  add_common(cmd_dec);
  cmd_dec->add_option("--module", module_path, "module JSON file")->required();
  cmd_dec->add_option("--truncation", truncation, "truncation level n")->required();
  cmd_dec->add_option("--support", support_csv, "comma-separated node labels (default: all)");

  CLI::App* cmd_flk = app.add_subcommand("flk", "matrix-algebra certificate (cyclotomic mode)");
  add_common(cmd_flk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  auto t_start = std::chrono::steady_clock::now();
  qb::CartanDatum datum = qb::CartanDatum::load_file(datum_path);

  qb::RunReport rep;
  rep.engine_version = qb::kEngineVersion;
  rep.datum_digest = datum.digest();
  bool certified_ok = true;

  if (app.got_subcommand(cmd_dims)) {
    rep.command = "dims";
    if (max_degree < 0) throw qb::validation_error("--max-degree must be nonnegative");
    if (max_degree > hard_cap)
      throw qb::degree_cap_error("--max-degree exceeds the hard cap " + std::to_string(hard_cap));
    rep.parameters["max_degree"] = max_degree;
    qb::NicholsAlgebra nich(datum, max_degree);
    auto table = nich.hilbert_data(max_degree);
    nlohmann::json rows = nlohmann::json::array();
    for (int total = 0; total <= max_degree; ++total)
      for (const auto& alpha : qb::multidegrees_of_total(datum.rank(), total)) {
        nlohmann::json row;
        row["alpha"] = alpha;
        row["dim"] = table.at(alpha);
        rows.push_back(std::move(row));
      }
    rep.results["dims"] = std::move(rows);
  } else if (app.got_subcommand(cmd_gram)) {
    rep.command = "gram";
    std::vector<int> alpha = parse_alpha(datum, alpha_csv);
    int total = qb::total_degree(alpha);
    if (total > hard_cap)
      throw qb::degree_cap_error("--alpha exceeds the hard cap " + std::to_string(hard_cap));
    rep.parameters["alpha"] = alpha;
    qb::GramEngine engine(datum, total);
    rep.results["gram"] = qb::gram_block_to_json(engine.block(alpha), datum);
  } else if (app.got_subcommand(cmd_proj)) {
    rep.command = "projector";
    if (degree < 0) throw qb::validation_error("--degree must be nonnegative");
    std::vector<int> support = parse_support(datum, support_csv);
    int needed = std::max(2 * degree, 1);
    if (needed > hard_cap)
      throw qb::degree_cap_error("certifying degree " + std::to_string(degree) +
                                 " needs cap " + std::to_string(needed) + " > hard cap " +
                                 std::to_string(hard_cap));
    rep.parameters["degree"] = degree;
    rep.parameters["support"] = labels_of(datum, support);
    qb::NicholsAlgebra nich(datum, needed);
    qb::BosonAlgebra B(nich);
    qb::ExtremalProjector p = qb::build_projector(B, {degree, support});
    p.certificates = qb::certify_projector(B, p);
    certified_ok = p.certificates.all_hold;
    rep.results["projector"] = qb::projector_to_json(p, datum);
    if (!verify_path.empty()) replay_projector_certificates(B, load_report(verify_path));
  } else if (app.got_subcommand(cmd_dec)) {
    rep.command = "decompose";
    if (truncation < 0) throw qb::validation_error("--truncation must be nonnegative");
    std::vector<int> support = parse_support(datum, support_csv);
    int needed = std::max(truncation + 2, 6);
    if (needed > hard_cap)
      throw qb::degree_cap_error("decomposition at level " + std::to_string(truncation) +
                                 " needs cap " + std::to_string(needed) + " > hard cap " +
                                 std::to_string(hard_cap));
    rep.parameters["truncation"] = truncation;
    rep.parameters["support"] = labels_of(datum, support);
    rep.parameters["module_digest"] = file_digest(module_path);
    qb::NicholsAlgebra nich(datum, needed);
    qb::BosonAlgebra B(nich);
    qb::ModulePresentation mod = qb::ModulePresentation::load_file(nich, module_path);
    qb::DecompositionResult res = qb::decompose(B, mod, {truncation, support});
    certified_ok = res.reconstruction_ok && res.gamma_idempotent && res.gamma_image_is_m0;
    rep.results["decomposition"] = qb::decomposition_to_json(res, datum);
  } else if (app.got_subcommand(cmd_flk)) {
    rep.command = "flk";
    qb::NicholsAlgebra nich(datum, hard_cap);
    qb::BosonAlgebra B(nich);
    qb::FlkCertificate cert = qb::flk_certificate(B);
    certified_ok = cert.bijective;
    rep.results["flk"] = qb::flk_to_json(cert);
  }

  auto t_end = std::chrono::steady_clock::now();
  rep.timings_ms["total"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_start).count();

  if (!verify_path.empty()) {
    qb::RunReport old = load_report(verify_path);
    if (old.command != rep.command || old.datum_digest != rep.datum_digest)
      throw qb::Error(qb::ErrorKind::CertificateFailure,
                      "stored report was produced by a different command or datum");
    if (old.parameters != rep.parameters)
      throw qb::Error(qb::ErrorKind::CertificateFailure,
                      "stored report was produced with different parameters");
    if (old.results != rep.results)
      throw qb::Error(qb::ErrorKind::CertificateFailure,
                      "recomputed results differ from the stored report");
    std::cerr << "verify: report " << verify_path << " reproduced" << std::endl;
  }

  std::string text = rep.to_json().dump(2) + "\n";
  std::cout << text;
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw qb::parse_error("cannot write report file " + output);
    out << text;
  }
  return certified_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qb::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    switch (e.kind()) {
      case qb::ErrorKind::Parse:
      case qb::ErrorKind::Validation:
      case qb::ErrorKind::NotFiniteDimensional:
        return 1;
      case qb::ErrorKind::DegreeCapExceeded:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
}
