#include "srgeo/manifest.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "nlohmann/json.hpp"

namespace srgeo {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ManifestSemanticError(message); }

Rational rational_literal(const json& j, const std::string& where) {
  if (!j.is_string())
    fail(where + ": rational literals must be strings like \"1/2\" or \"-3\", got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(where + ": " + e.what());
  }
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) fail(where + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of integers");
  std::vector<int> out;
  for (const auto& item : j) {
    if (!item.is_number_integer()) fail(where + " must contain only integers");
    out.push_back(item.get<int>());
  }
  return out;
}

void check_common(const GeometryManifest& m) {
  if (m.name.empty()) fail("name must be non-empty");
  if (m.grading.empty()) fail("grading must be non-empty");
  int n = 0;
  for (int g : m.grading) {
    if (g <= 0) fail("grading entries must be positive");
    n += g;
  }
  if (static_cast<int>(m.frame_names.size()) != n)
    fail("frame_names has " + std::to_string(m.frame_names.size()) + " entries but the grading sums to " +
         std::to_string(n));
  if (!m.gram_blocks.empty()) {
    if (m.gram_blocks.size() != m.grading.size())
      fail("gram_blocks must supply one block per grade");
    for (std::size_t g = 0; g < m.gram_blocks.size(); ++g) {
      const auto& block = m.gram_blocks[g];
      if (static_cast<int>(block.size()) != m.grading[g])
        fail("gram block " + std::to_string(g) + " does not match its grade dimension");
      for (const auto& row : block)
        if (static_cast<int>(row.size()) != m.grading[g])
          fail("gram block " + std::to_string(g) + " is not square");
    }
  }
  for (const auto& cand : m.killing_candidates)
    if (cand.components.size() != m.coordinates.size())
      fail("killing candidate '" + cand.name + "' needs one component per coordinate");
  if (m.solver_degree && *m.solver_degree < 0) fail("solver_degree must be non-negative");
}

void check_lie(const GeometryManifest& m) {
  if (!m.coordinates.empty() || !m.frame.empty() || !m.angles.empty())
    fail("a lie manifest must not carry chart fields");
  const int n = static_cast<int>(m.frame_names.size());
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : m.structure_constants) {
    if (e.a < 1 || e.a > n || e.b < 1 || e.b > n || e.k < 1 || e.k > n)
      fail("structure constant indices must lie in 1.." + std::to_string(n));
    if (e.a >= e.b) fail("structure constants must be given with a < b (antisymmetric completion is implied)");
    if (!seen.insert({e.a, e.b, e.k}).second)
      fail("duplicate structure constant entry [" + std::to_string(e.a) + "," + std::to_string(e.b) + "," +
           std::to_string(e.k) + "]");
  }
}

void check_coordinate(const GeometryManifest& m) {
  if (!m.structure_constants.empty()) fail("a coordinate manifest must not carry structure constants");
  const std::size_t n = m.frame_names.size();
  if (m.coordinates.size() != n) fail("a coordinate manifest needs one coordinate per frame vector");
  if (m.frame.size() != n) fail("frame must supply one expression row per frame vector");
  for (const auto& row : m.frame)
    if (row.size() != n) fail("each frame row needs one expression per coordinate");
  for (const auto& angle : m.angles)
    if (std::find(m.coordinates.begin(), m.coordinates.end(), angle) == m.coordinates.end())
      fail("angle '" + angle + "' is not a coordinate");
}

ExactMatrix gram_from_blocks(const GeometryManifest& m) {
  int n = std::accumulate(m.grading.begin(), m.grading.end(), 0);
  ExactMatrix gram = ExactMatrix::identity(n);
  if (m.gram_blocks.empty()) return gram;
  int offset = 0;
  for (std::size_t g = 0; g < m.gram_blocks.size(); ++g) {
    const auto& block = m.gram_blocks[g];
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j)
        gram(offset + i, offset + j) = parse_rational(block[i][j]);
    offset += m.grading[g];
  }
  return gram;
}

}  // namespace

GeometryManifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestParseError(e.what());
  }
  if (!doc.is_object()) fail("manifest must be a JSON object");
  static const std::set<std::string> known = {
      "kind",   "name",  "grading",     "frame_names",        "structure_constants",
      "coordinates", "angles", "frame", "gram_blocks",        "killing_candidates",
      "solver_degree"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) fail("unknown manifest key '" + key + "'");

  GeometryManifest m;
  if (!doc.contains("kind") || !doc["kind"].is_string()) fail("kind must be \"lie\" or \"coordinate\"");
  m.kind = doc["kind"].get<std::string>();
  if (m.kind != "lie" && m.kind != "coordinate") fail("kind must be \"lie\" or \"coordinate\"");
  if (!doc.contains("name") || !doc["name"].is_string()) fail("name must be a string");
  m.name = doc["name"].get<std::string>();
  if (!doc.contains("grading")) fail("grading is required");
  m.grading = int_list(doc["grading"], "grading");
  if (!doc.contains("frame_names")) fail("frame_names is required");
  m.frame_names = string_list(doc["frame_names"], "frame_names");

  if (doc.contains("structure_constants")) {
    const json& sc = doc["structure_constants"];
    if (!sc.is_array()) fail("structure_constants must be an array of [a,b,k,\"p/q\"] entries");
    for (const auto& entry : sc) {
      if (!entry.is_array() || entry.size() != 4 || !entry[0].is_number_integer() ||
          !entry[1].is_number_integer() || !entry[2].is_number_integer())
        fail("structure constant entries must be [a,b,k,\"p/q\"]");
      GeometryManifest::StructureEntry e;
      e.a = entry[0].get<int>();
      e.b = entry[1].get<int>();
      e.k = entry[2].get<int>();
      e.value = rational_literal(entry[3], "structure constant value");
      if (e.value == 0) fail("structure constant entries must be nonzero (omit zero entries)");
      m.structure_constants.push_back(e);
    }
  }
  if (doc.contains("coordinates")) m.coordinates = string_list(doc["coordinates"], "coordinates");
  if (doc.contains("angles")) m.angles = string_list(doc["angles"], "angles");
  if (doc.contains("frame")) {
    const json& fr = doc["frame"];
    if (!fr.is_array()) fail("frame must be an array of expression rows");
    for (const auto& row : fr) m.frame.push_back(string_list(row, "frame row"));
  }
  if (doc.contains("gram_blocks")) {
    const json& gb = doc["gram_blocks"];
    if (!gb.is_array()) fail("gram_blocks must be an array of matrices");
    for (const auto& block : gb) {
      if (!block.is_array()) fail("each gram block must be a matrix");
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : block) {
        if (!row.is_array()) fail("each gram block row must be an array");
        std::vector<std::string> r;
        for (const auto& v : row) {
          rational_literal(v, "gram entry");  // validates
          r.push_back(v.get<std::string>());
        }
        rows.push_back(std::move(r));
      }
      m.gram_blocks.push_back(std::move(rows));
    }
  }
  if (doc.contains("killing_candidates")) {
    const json& kc = doc["killing_candidates"];
    if (!kc.is_array()) fail("killing_candidates must be an array");
    for (const auto& cand : kc) {
      if (!cand.is_object() || !cand.contains("name") || !cand.contains("components"))
        fail("each killing candidate needs a name and components");
      GeometryManifest::KillingCandidate c;
      c.name = cand["name"].get<std::string>();
      c.components = string_list(cand["components"], "killing candidate components");
      m.killing_candidates.push_back(std::move(c));
    }
  }
  if (doc.contains("solver_degree")) {
    if (!doc["solver_degree"].is_number_integer()) fail("solver_degree must be an integer");
    m.solver_degree = doc["solver_degree"].get<int>();
  }

  check_common(m);
  if (m.kind == "lie")
    check_lie(m);
  else
    check_coordinate(m);
  return m;
}

std::string emit_manifest(const GeometryManifest& m) {
  json doc;
  doc["kind"] = m.kind;
  doc["name"] = m.name;
  doc["grading"] = m.grading;
  doc["frame_names"] = m.frame_names;
  if (m.kind == "lie") {
    json sc = json::array();
    auto sorted = m.structure_constants;
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
      return std::tie(x.a, x.b, x.k) < std::tie(y.a, y.b, y.k);
    });
    for (const auto& e : sorted) sc.push_back(json::array({e.a, e.b, e.k, to_string(e.value)}));
    doc["structure_constants"] = sc;
  } else {
    doc["coordinates"] = m.coordinates;
    if (!m.angles.empty()) doc["angles"] = m.angles;
    doc["frame"] = m.frame;
  }
  if (!m.gram_blocks.empty()) doc["gram_blocks"] = m.gram_blocks;
  if (!m.killing_candidates.empty()) {
    json kc = json::array();
    for (const auto& c : m.killing_candidates)
      kc.push_back(json{{"name", c.name}, {"components", c.components}});
    doc["killing_candidates"] = kc;
  }
  if (m.solver_degree) doc["solver_degree"] = *m.solver_degree;
  return doc.dump(2) + "\n";
}

GradedLieGeometry to_lie_geometry(const GeometryManifest& m) {
  if (m.kind != "lie") fail("to_lie_geometry requires a lie manifest");
  GradedLieGeometry g = make_geometry(m.name, m.grading, m.frame_names);
  for (const auto& e : m.structure_constants) {
    g.cc(e.a - 1, e.b - 1, e.k - 1) = e.value;
    g.cc(e.b - 1, e.a - 1, e.k - 1) = -e.value;
  }
  g.gram = gram_from_blocks(m);
  return g;
}

CoordinateGeometry to_coordinate_geometry(const GeometryManifest& m) {
  if (m.kind != "coordinate") fail("to_coordinate_geometry requires a coordinate manifest");
  std::vector<bool> is_angle;
  for (const auto& c : m.coordinates)
    is_angle.push_back(std::find(m.angles.begin(), m.angles.end(), c) != m.angles.end());
  return make_coordinate_geometry(m.name, m.coordinates, is_angle, m.grading, m.frame_names,
                                  m.frame, gram_from_blocks(m));
}

}  // namespace srgeo
