#include "srgeo/manifest.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "srgeo/matrix.hpp"

namespace srgeo {

namespace {

using Entry = GeometryManifest::StructureEntry;

/// Append the manifest entry for [E_a, E_b] = v E_k (1-based, a < b), skipping zeros.
void push_entry(std::vector<Entry>& out, int a, int b, int k, Rational v) {
  if (v == 0) return;
  out.push_back({a, b, k, std::move(v)});
}

GeometryManifest heisenberg_manifest(int n) {
  GeometryManifest m;
  m.kind = "coordinate";
  m.name = "heisenberg(" + std::to_string(n) + ")";
  m.grading = {2 * n, 1};
  for (int i = 1; i <= n; ++i) m.coordinates.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) m.coordinates.push_back("y" + std::to_string(i));
  m.coordinates.push_back("t");
  for (int i = 1; i <= n; ++i) m.frame_names.push_back("X" + std::to_string(i));
  for (int i = 1; i <= n; ++i) m.frame_names.push_back("Y" + std::to_string(i));
  m.frame_names.push_back("T");
  const int dim = 2 * n + 1;
  // X_i = d/dx_i - (y_i/2) d/dt, Y_i = d/dy_i + (x_i/2) d/dt, T = d/dt.
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row(dim, "0");
    row[i] = "1";
    row[dim - 1] = "-1/2*y" + std::to_string(i + 1);
    m.frame.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row(dim, "0");
    row[n + i] = "1";
    row[dim - 1] = "1/2*x" + std::to_string(i + 1);
    m.frame.push_back(std::move(row));
  }
  std::vector<std::string> last(dim, "0");
  last[dim - 1] = "1";
  m.frame.push_back(std::move(last));
  m.solver_degree = 2;
  return m;
}

GeometryManifest engel_manifest() {
  GeometryManifest m;
  m.kind = "coordinate";
  m.name = "engel";
  m.grading = {2, 1, 1};
  m.coordinates = {"x", "y", "t1", "t2"};
  m.frame_names = {"X", "Y", "T1", "T2"};
  m.frame = {{"1", "0", "-y", "-t1"},
             {"0", "1", "0", "0"},
             {"0", "0", "1", "0"},
             {"0", "0", "0", "1"}};
  m.killing_candidates = {
      {"S1", {"0", "0", "1", "-x"}},
      {"S2", {"0", "0", "0", "1"}},
      {"K3", {"0", "1", "-x", "1/2*x*x"}},
      {"K4", {"1", "0", "0", "0"}},
  };
  m.solver_degree = 2;
  return m;
}

GeometryManifest rototranslation_manifest() {
  GeometryManifest m;
  m.kind = "coordinate";
  m.name = "rototranslation";
  m.grading = {2, 1};
  m.coordinates = {"x", "y", "theta"};
  m.angles = {"theta"};
  m.frame_names = {"X", "Theta", "T"};
  m.frame = {{"cos(theta)", "sin(theta)", "0"},
             {"0", "0", "1"},
             {"sin(theta)", "-cos(theta)", "0"}};
  m.killing_candidates = {
      {"Xhat", {"1", "0", "0"}},
      {"Yhat", {"0", "1", "0"}},
      {"Thetahat", {"-y", "x", "1"}},
  };
  m.solver_degree = 1;
  return m;
}

/// Structure constants from a list of matrices closed under commutators,
/// given a routine that decomposes an algebra element into basis coordinates.
template <typename Decompose>
std::vector<Entry> commutator_entries(const std::vector<ExactMatrix>& basis, Decompose decompose) {
  const int dim = static_cast<int>(basis.size());
  std::vector<Entry> out;
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      ExactMatrix comm = basis[p] * basis[q] - basis[q] * basis[p];
      std::vector<Rational> coeff = decompose(comm);
      ExactMatrix rebuilt(comm.rows(), comm.cols());
      for (int k = 0; k < dim; ++k)
        if (coeff[k] != 0) rebuilt = rebuilt + basis[k] * coeff[k];
      if (!(rebuilt - comm).is_zero())
        throw std::logic_error("catalog: commutator fell outside the spanned basis");
      for (int k = 0; k < dim; ++k) push_entry(out, p + 1, q + 1, k + 1, coeff[k]);
    }
  }
  return out;
}

GeometryManifest so_manifest(int n) {
  // Basis of so(n): T_ab = E_ab - E_ba for 1 <= a < b <= n.  Horizontal layer:
  // X_i = T_1i (i = 2..n); vertical layer: T_ab with 2 <= a < b <= n.
  GeometryManifest m;
  m.kind = "lie";
  m.name = "so(" + std::to_string(n) + ")";
  m.grading = {n - 1, (n - 1) * (n - 2) / 2};
  std::vector<ExactMatrix> basis;
  std::vector<std::pair<int, int>> pos;  // 0-based (row, col) determining each basis element
  for (int i = 2; i <= n; ++i) {
    m.frame_names.push_back("X" + std::to_string(i));
    pos.emplace_back(0, i - 1);
  }
  for (int a = 2; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      m.frame_names.push_back("T" + std::to_string(a) + std::to_string(b));
      pos.emplace_back(a - 1, b - 1);
    }
  for (const auto& [r, c] : pos) {
    ExactMatrix mat(n, n);
    mat(r, c) = 1;
    mat(c, r) = -1;
    basis.push_back(std::move(mat));
  }
  m.structure_constants = commutator_entries(basis, [&](const ExactMatrix& comm) {
    std::vector<Rational> coeff;
    coeff.reserve(pos.size());
    for (const auto& [r, c] : pos) coeff.push_back(comm(r, c));
    return coeff;
  });
  return m;
}

GeometryManifest sl_manifest(int n) {
  // Basis of sl(n): off-diagonal E_ij (horizontal, pairs (i,j) and (j,i) listed
  // together for i < j), then T_i = E_ii - E_{i+1,i+1} (vertical).
  GeometryManifest m;
  m.kind = "lie";
  m.name = "sl(" + std::to_string(n) + ")";
  m.grading = {n * (n - 1), n - 1};
  std::vector<ExactMatrix> basis;
  std::vector<std::pair<int, int>> offdiag;  // 0-based (row, col)
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      offdiag.emplace_back(i - 1, j - 1);
      offdiag.emplace_back(j - 1, i - 1);
    }
  for (const auto& [r, c] : offdiag) {
    m.frame_names.push_back("X" + std::to_string(r + 1) + std::to_string(c + 1));
    ExactMatrix mat(n, n);
    mat(r, c) = 1;
    basis.push_back(std::move(mat));
  }
  for (int i = 1; i <= n - 1; ++i) {
    m.frame_names.push_back("T" + std::to_string(i));
    ExactMatrix mat(n, n);
    mat(i - 1, i - 1) = 1;
    mat(i, i) = -1;
    basis.push_back(std::move(mat));
  }
  m.structure_constants = commutator_entries(basis, [&](const ExactMatrix& comm) {
    std::vector<Rational> coeff;
    coeff.reserve(basis.size());
    for (const auto& [r, c] : offdiag) coeff.push_back(comm(r, c));
    Rational partial = 0;
    for (int i = 0; i < n - 1; ++i) {
      partial += comm(i, i);
      coeff.push_back(partial);
    }
    return coeff;
  });
  return m;
}

GeometryManifest carnot_manifest(int k) {
  // Free two-step nilpotent algebra on k generators: [E_a, E_b] = T_ab, a < b.
  GeometryManifest m;
  m.kind = "lie";
  m.name = "carnot(" + std::to_string(k) + ")";
  m.grading = {k, k * (k - 1) / 2};
  for (int i = 1; i <= k; ++i) m.frame_names.push_back("E" + std::to_string(i));
  int idx = 0;
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b) {
      m.frame_names.push_back("T" + std::to_string(a) + std::to_string(b));
      push_entry(m.structure_constants, a, b, k + 1 + idx, Rational(1));
      ++idx;
    }
  return m;
}

/// Split "name(arg)" into name and optional integer argument.
std::pair<std::string, std::optional<int>> split_request(const std::string& request) {
  auto open = request.find('(');
  if (open == std::string::npos) return {request, std::nullopt};
  if (request.back() != ')') throw std::invalid_argument("malformed catalog request '" + request + "'");
  std::string head = request.substr(0, open);
  std::string arg = request.substr(open + 1, request.size() - open - 2);
  try {
    std::size_t used = 0;
    int value = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("");
    return {head, value};
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog request '" + request + "' needs an integer parameter");
  }
}

}  // namespace

GeometryManifest catalog(const std::string& request) {
  auto [name, arg] = split_request(request);
  auto required = [&](int min_value, const char* what) {
    if (!arg) throw std::invalid_argument("catalog entry '" + name + "' needs a parameter, e.g. " +
                                          name + "(" + std::to_string(min_value) + ")");
    if (*arg < min_value)
      throw std::invalid_argument("catalog entry '" + name + "' requires " + what + " >= " +
                                  std::to_string(min_value));
    return *arg;
  };
  if (name == "heisenberg") return heisenberg_manifest(required(1, "n"));
  if (name == "engel") {
    if (arg) throw std::invalid_argument("catalog entry 'engel' takes no parameter");
    return engel_manifest();
  }
  if (name == "rototranslation") {
    if (arg) throw std::invalid_argument("catalog entry 'rototranslation' takes no parameter");
    return rototranslation_manifest();
  }
  if (name == "so") return so_manifest(required(3, "n"));
  if (name == "sl") return sl_manifest(required(2, "n"));
  if (name == "carnot") return carnot_manifest(required(2, "k"));
  throw std::invalid_argument("unknown catalog entry '" + request + "'");
}

std::vector<std::string> catalog_names() {
  return {"heisenberg(1)", "heisenberg(2)", "heisenberg(3)", "engel", "so(3)",
          "so(4)",         "so(5)",         "sl(2)",         "sl(3)", "rototranslation"};
}

}  // namespace srgeo
