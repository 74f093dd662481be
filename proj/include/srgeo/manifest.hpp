#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srgeo/coordfield.hpp"
#include "srgeo/liealg.hpp"
#include "srgeo/matrix.hpp"

namespace srgeo {

/// Malformed JSON (reported with position information from the parser).
struct ManifestParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed JSON that does not describe a geometry: wrong kinds, dimension
/// mismatches, non-rational literals, bad indices.
struct ManifestSemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative description of a geometry. kind "lie" carries sparse structure
/// constants over a named frame; kind "coordinate" carries symbolic frame
/// expressions over a chart (angles contribute cos/sin circle pairs). Gram
/// blocks, candidate Killing fields and a solver degree are optional.
struct GeometryManifest {
  std::string kind;  // "lie" | "coordinate"
  std::string name;
  std::vector<int> grading;  // [dim V^0, dim V^1, ...]
  std::vector<std::string> frame_names;

  struct StructureEntry {
    int a = 0, b = 0, k = 0;  // 1-based, a < b: [E_a, E_b] has `value` on E_k
    Rational value;
  };
  std::vector<StructureEntry> structure_constants;  // lie only

  std::vector<std::string> coordinates;         // coordinate only
  std::vector<std::string> angles;              // subset of coordinates
  std::vector<std::vector<std::string>> frame;  // frame[a][i]: E_a = sum_i frame[a][i] d/dx^i

  std::vector<std::vector<std::vector<std::string>>> gram_blocks;  // per grade, optional

  struct KillingCandidate {
    std::string name;
    std::vector<std::string> components;  // coordinate components
  };
  std::vector<KillingCandidate> killing_candidates;
  std::optional<int> solver_degree;
};

/// Parses a manifest document. Throws ManifestParseError for malformed JSON
/// and ManifestSemanticError for structural problems.
GeometryManifest parse_manifest(const std::string& text);

/// Canonical JSON rendering; parse(emit(m)) reproduces m exactly.
std::string emit_manifest(const GeometryManifest& m);

/// Builds the graded Lie geometry of a "lie" manifest (antisymmetric completion
/// of the sparse entries, block-diagonal Gram). Throws ManifestSemanticError
/// when called on a coordinate manifest.
GradedLieGeometry to_lie_geometry(const GeometryManifest& m);

/// Builds the chart of a "coordinate" manifest; the constant structure
/// functions are cross-linked as `.lie`. Throws ManifestSemanticError when
/// called on a lie manifest, std::invalid_argument when the frame is bad.
CoordinateGeometry to_coordinate_geometry(const GeometryManifest& m);

/// Built-in geometries: "heisenberg(n)" (n >= 1), "engel", "rototranslation",
/// "so(n)" (n >= 3), "sl(n)" (n >= 2), "carnot(k)" (k >= 2). Heisenberg, Engel
/// and rototranslation are coordinate manifests (their charts feed the Killing
/// solver); the rest are lie manifests. Throws std::invalid_argument for
/// unknown names or out-of-range parameters.
GeometryManifest catalog(const std::string& request);

/// The fixed list analyzed by --all-catalog.
std::vector<std::string> catalog_names();

}  // namespace srgeo
