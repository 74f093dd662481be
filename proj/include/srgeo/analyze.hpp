#pragma once

#include <optional>
#include <string>

#include "nlohmann/json.hpp"
#include "srgeo/coordfield.hpp"
#include "srgeo/manifest.hpp"

namespace srgeo {

inline constexpr const char* kToolVersion = "srgeo 1.0.0";

struct AnalyzeOptions {
  bool solve_killing = false;
  std::optional<int> degree;  // default: the manifest's solver_degree, else 1
  KillingMode mode = KillingMode::weak;
  bool check_identities = false;
  unsigned seed = 1;  // base seed for sample points and Gram randomization
};

/// Full pipeline output in two synchronized renderings. `doc` mirrors every
/// section machine-readably (all rationals as "p/q" strings); `text` is the
/// human-readable report. Both are deterministic functions of (manifest,
/// options). exit_code: 0 ok, 1 validation failure, 3 internal invariant
/// breach (the independent axiom checker rejected a built object).
struct AnalysisReport {
  nlohmann::ordered_json doc;
  std::string text;
  int exit_code = 0;
};

/// Runs validate -> filtration -> connection (+ axiom verification) ->
/// torsion/curvature -> flags/sub-Ricci -> decomposition/bounds -> optional
/// Killing solve with candidate verification -> optional identity checks.
/// Every stage contributes a report section or an explicit skip reason.
AnalysisReport analyze(const GeometryManifest& manifest, const AnalyzeOptions& options);

/// FNV-1a 64-bit hash rendered as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace srgeo
