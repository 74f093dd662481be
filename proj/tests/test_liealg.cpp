#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "srgeo/liealg.hpp"
#include "srgeo/manifest.hpp"

using namespace srgeo;

namespace {

GradedLieGeometry lie_of(const std::string& name) {
  GeometryManifest m = catalog(name);
  return m.kind == "lie" ? to_lie_geometry(m) : to_coordinate_geometry(m).lie;
}

const std::vector<std::string>& all_names() {
  static const std::vector<std::string> names = catalog_names();
  return names;
}

}  // namespace

TEST_CASE("validate accepts every catalog geometry") {
  for (const auto& name : all_names()) {
    INFO(name);
    CHECK(validate(lie_of(name)).empty());
  }
}

TEST_CASE("validate flags broken inputs") {
  // Jacobi violation
  GradedLieGeometry g = make_geometry("bad", {2, 1}, {"A", "B", "C"});
  g.cc(0, 1, 2) = 1;
  g.cc(1, 0, 2) = -1;
  g.cc(0, 2, 0) = 1;
  g.cc(2, 0, 0) = -1;
  g.cc(1, 2, 2) = 1;
  g.cc(2, 1, 2) = -1;
  bool jacobi = false;
  for (const auto& v : validate(g))
    if (v.find("Jacobi") != std::string::npos) jacobi = true;
  CHECK(jacobi);

  // antisymmetry violation
  GradedLieGeometry a = make_geometry("bad2", {2, 1}, {"A", "B", "C"});
  a.cc(0, 1, 2) = 1;  // missing cc(1,0,2) = -1
  bool antisym = false;
  for (const auto& v : validate(a))
    if (v.find("antisymmet") != std::string::npos) antisym = true;
  CHECK(antisym);

  // grading violation: [V0, V0] jumping straight into V2
  GradedLieGeometry h = make_geometry("bad3", {2, 1, 1}, {"X", "Y", "T1", "T2"});
  h.cc(0, 1, 3) = 1;
  h.cc(1, 0, 3) = -1;
  CHECK(!validate(h).empty());

  // non-positive-definite Gram block
  GradedLieGeometry p = make_geometry("bad4", {2, 1}, {"A", "B", "C"});
  p.gram(0, 0) = -1;
  CHECK(!validate(p).empty());
}

TEST_CASE("filtration steps and regularity") {
  Filtration engel = filtration(lie_of("engel"));
  CHECK(engel.bracket_generating);
  CHECK(engel.step == 3);
  CHECK(engel.regular);

  Filtration roto = filtration(lie_of("rototranslation"));
  CHECK(roto.bracket_generating);
  CHECK(roto.step == 2);
  CHECK(roto.regular);

  Filtration heis = filtration(lie_of("heisenberg(2)"));
  CHECK(heis.bracket_generating);
  CHECK(heis.step == 2);
  CHECK(heis.regular);

  GradedLieGeometry abelian = make_geometry("abelian", {1, 1}, {"X", "T"});
  Filtration flat = filtration(abelian);
  CHECK(!flat.bracket_generating);
  CHECK(flat.step == 0);
}

TEST_CASE("canonical connection verifies and is unique on the whole catalog") {
  for (const auto& name : all_names()) {
    INFO(name);
    GradedLieGeometry g = lie_of(name);
    Connection conn = build_connection(g);
    CHECK(verify_connection(g, conn).empty());
    CHECK(connection_solution_space_dim(g) == 0);
  }
}

TEST_CASE("rototranslation connection and torsion match the closed form") {
  GradedLieGeometry g = lie_of("rototranslation");  // frame X, Theta, T
  Connection conn = build_connection(g);
  TorsionData tor = torsion(g, conn);

  // nabla_T X = 1/2 Theta, nabla_T Theta = -1/2 X, nabla T = 0
  CHECK(conn.g(2, 0, 1) == rat(1, 2));
  CHECK(conn.g(2, 1, 0) == rat(-1, 2));
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 3; ++k) CHECK(conn.g(a, 2, k) == 0);
  // no other nonzero coefficients
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k)
        if (!((a == 2 && b == 0 && k == 1) || (a == 2 && b == 1 && k == 0)))
          CHECK(conn.g(a, b, k) == 0);

  // Tor(T, Theta) = X/2, Tor(T, X) = Theta/2, Tor(X, Theta) = -T
  CHECK(tor.t(2, 1, 0) == rat(1, 2));
  CHECK(tor.t(2, 0, 1) == rat(1, 2));
  CHECK(tor.t(0, 1, 2) == -1);
}

TEST_CASE("torsion is antisymmetric and grade-compatible on the catalog") {
  for (const auto& name : all_names()) {
    GradedLieGeometry g = lie_of(name);
    Connection conn = build_connection(g);
    TorsionData tor = torsion(g, conn);
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        for (int k = 0; k < g.n; ++k) {
          CHECK(tor.t(a, b, k) == -tor.t(b, a, k));
          // the connection preserves grades
          if (g.grade_of(b) != g.grade_of(k)) CHECK(conn.g(a, b, k) == 0);
        }
  }
}

TEST_CASE("heisenberg horizontal torsion matrix is the standard symplectic form") {
  for (int n : {1, 2, 3}) {
    GradedLieGeometry g = lie_of("heisenberg(" + std::to_string(n) + ")");
    Connection conn = build_connection(g);
    TorsionData tor = torsion(g, conn);
    const int t = 2 * n;  // vertical index
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) {
        Rational expect = 0;  // matrix [[0, I],[-I, 0]] as -Tor against T
        if (b == a + n) expect = 1;
        if (a == b + n) expect = -1;
        CHECK(-tor.t(a, b, t) == expect);
      }
  }
}

TEST_CASE("curvature symmetries") {
  for (const auto& name : all_names()) {
    GradedLieGeometry g = lie_of(name);
    Connection conn = build_connection(g);
    CurvatureData curv = curvature(g, conn);
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        for (int c = 0; c < g.n; ++c)
          for (int d = 0; d < g.n; ++d) {
            CHECK(curv.r(a, b, c, d) == -curv.r(b, a, c, d));
            // metric connection => lowered tensor skew in the last pair
            CHECK(curv.low(a, b, c, d) == -curv.low(a, b, d, c));
          }
  }
}

TEST_CASE("step torsion grid contracts the base torsion") {
  GradedLieGeometry g = lie_of("engel");
  Connection conn = build_connection(g);
  TorsionData tor = torsion(g, conn);
  const int n = g.n;

  std::vector<Rational> base = step_torsion(g, tor, 1);
  REQUIRE(base.size() == static_cast<std::size_t>(n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) CHECK(base[(a * n + b) * n + k] == tor.t(a, b, k));

  std::vector<Rational> grid = step_torsion(g, tor, 2);
  REQUIRE(grid.size() == static_cast<std::size_t>(n * n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Rational expect = 0;
          for (int k = 0; k < n; ++k) expect += tor.t(b, c, k) * tor.t(a, k, d);
          CHECK(grid[((a * n + b) * n + c) * n + d] == expect);
        }
}

TEST_CASE("horizontal gram inverse") {
  GeometryManifest m = catalog("heisenberg(2)");
  m.gram_blocks = {{{"2", "0", "0", "0"},
                    {"0", "3", "0", "0"},
                    {"0", "0", "1", "0"},
                    {"0", "0", "0", "5"}},
                   {{"7"}}};
  GradedLieGeometry g = to_coordinate_geometry(m).lie;
  ExactMatrix inv = horizontal_gram_inverse(g);
  ExactMatrix prod = g.gram.block(0, 0, 4, 4) * inv;
  CHECK(prod == ExactMatrix::identity(4));
}
