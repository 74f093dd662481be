#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srgeo/analyze.hpp"
#include "srgeo/manifest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
// exit code 1 = validation failure, reported by analyze(); 3 = internal invariant breach.

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw srgeo::ManifestParseError("cannot open manifest file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Request {
  std::string manifest_file;
  std::string catalog_name;
  bool all_catalog = false;
  bool json = false;
  srgeo::AnalyzeOptions options;
  std::string mode = "weak";
  int degree = -1;  // -1: use the manifest default
};

int run_analyze(const Request& req) {
  srgeo::AnalyzeOptions options = req.options;
  if (req.degree >= 0) options.degree = req.degree;
  if (req.mode == "strong")
    options.mode = srgeo::KillingMode::strong;
  else if (req.mode == "regular")
    options.mode = srgeo::KillingMode::regular;
  else
    options.mode = srgeo::KillingMode::weak;

  std::vector<srgeo::GeometryManifest> manifests;
  if (req.all_catalog) {
    for (const auto& name : srgeo::catalog_names()) manifests.push_back(srgeo::catalog(name));
  } else if (!req.catalog_name.empty()) {
    manifests.push_back(srgeo::catalog(req.catalog_name));
  } else {
    manifests.push_back(srgeo::parse_manifest(read_file(req.manifest_file)));
  }

  // Analyses may run in parallel; assembly and printing stay in catalog order.
  std::vector<srgeo::AnalysisReport> reports(manifests.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < manifests.size(); ++i)
    reports[i] = srgeo::analyze(manifests[i], options);

  int exit_code = kExitOk;
  if (req.json) {
    nlohmann::ordered_json out;
    if (reports.size() == 1) {
      out = reports.front().doc;
    } else {
      out = nlohmann::ordered_json::array();
      for (const auto& r : reports) out.push_back(r.doc);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << reports[i].text;
    }
  }
  for (const auto& r : reports) exit_code = std::max(exit_code, r.exit_code);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srgeo: exact invariants, isometry bounds and Killing fields of "
               "complemented sub-Riemannian geometries"};
  app.set_version_flag("--version", srgeo::kToolVersion);
  app.require_subcommand(1);

  Request req;
  CLI::App* analyze = app.add_subcommand("analyze", "run the full analysis pipeline");
  analyze->add_option("manifest", req.manifest_file, "manifest JSON file");
  analyze->add_option("--catalog", req.catalog_name,
                      "built-in geometry, e.g. heisenberg(2), engel, so(4), sl(3), "
                      "rototranslation, carnot(3)");
  analyze->add_flag("--all-catalog", req.all_catalog, "analyze every catalog geometry");
  analyze->add_flag("--solve-killing", req.options.solve_killing,
                    "solve the degree-bounded Killing equations on the chart");
  analyze->add_option("--degree", req.degree, "polynomial ansatz degree (default: manifest)");
  analyze->add_option("--mode", req.mode, "killing mode: weak | strong | regular")
      ->check(CLI::IsMember({"weak", "strong", "regular"}));
  analyze->add_flag("--json", req.json, "machine-readable report");
  analyze->add_flag("--check-identities", req.options.check_identities,
                    "verify the symbolic identity suite");
  analyze->add_option("--seed", req.options.seed,
                      "seed for sample points and Gram randomization");

  std::string emit_name;
  CLI::App* emit = app.add_subcommand("emit", "print a catalog manifest as JSON");
  emit->add_option("--catalog", emit_name, "catalog geometry name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (emit->parsed()) {
      std::cout << srgeo::emit_manifest(srgeo::catalog(emit_name));
      return kExitOk;
    }
    int sources = (req.manifest_file.empty() ? 0 : 1) + (req.catalog_name.empty() ? 0 : 1) +
                  (req.all_catalog ? 1 : 0);
    if (sources != 1) {
      std::cerr << "analyze needs exactly one of: a manifest file, --catalog, --all-catalog\n";
      return kExitParse;
    }
    return run_analyze(req);
  } catch (const srgeo::ManifestParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const srgeo::ManifestSemanticError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
