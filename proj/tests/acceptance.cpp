// Acceptance suite: nine end-to-end criteria, each printed as a single
// [PASS]/[FAIL] line. Every comparison is exact rational equality; the binary
// exits nonzero when any criterion fails.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracle_linalg.hpp"
#include "srgeo/analyze.hpp"
#include "srgeo/bounds.hpp"
#include "srgeo/coordfield.hpp"
#include "srgeo/invariants.hpp"
#include "srgeo/liealg.hpp"
#include "srgeo/manifest.hpp"
#include "srgeo/subspace.hpp"

using namespace srgeo;

namespace {

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    notes.push_back(what);
  }
};

int failures = 0;

void report(int index, const char* label, const Criterion& c) {
  std::printf("[%s] criterion %d: %s\n", c.ok ? "PASS" : "FAIL", index, label);
  if (!c.ok) {
    ++failures;
    for (const auto& note : c.notes) std::printf("       - %s\n", note.c_str());
  }
}

GradedLieGeometry lie_of(const std::string& name) {
  GeometryManifest m = catalog(name);
  return m.kind == "lie" ? to_lie_geometry(m) : to_coordinate_geometry(m).lie;
}

FrameVectorField field_of(const CoordinateGeometry& g,
                          const std::vector<std::string>& comps) {
  std::vector<SymExpr> parsed;
  parsed.reserve(comps.size());
  for (const auto& s : comps) parsed.push_back(parse_expression(g.ring.get(), g.poly_vars, s));
  return g.from_coord(parsed);
}

/// Stacks the ansatz coefficient vectors of the given fields as columns.
ExactMatrix stack_ansatz(const CoordinateGeometry& g,
                         const std::vector<FrameVectorField>& fields, int degree) {
  ExactMatrix out(0, 0);
  bool first = true;
  for (const auto& k : fields) {
    ExactMatrix col = ansatz_vector(g, k, degree);
    out = first ? col : out.hstack(col);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
  for (const auto& name : catalog_names()) {
    GradedLieGeometry g = lie_of(name);
    c.require(validate(g).empty(), name + ": structure constants failed validation");
    Connection conn = build_connection(g);
    c.require(verify_connection(g, conn).empty(), name + ": connection axioms violated");
    c.require(connection_solution_space_dim(g) == 0,
              name + ": linearized axiom system has a nonzero solution space");
  }
}

void criterion2(Criterion& c) {
  GradedLieGeometry g = lie_of("rototranslation");  // frame X, Theta, T
  Connection conn = build_connection(g);
  TorsionData tor = torsion(g, conn);

  for (int k = 0; k < 3; ++k) {
    c.require(conn.g(2, 0, k) == (k == 1 ? rat(1, 2) : Rational(0)),
              "nabla_T X != Theta/2");
    c.require(conn.g(2, 1, k) == (k == 0 ? rat(-1, 2) : Rational(0)),
              "nabla_T Theta != -X/2");
    c.require(tor.t(2, 1, k) == (k == 0 ? rat(1, 2) : Rational(0)),
              "Tor(T, Theta) != X/2");
    c.require(tor.t(2, 0, k) == (k == 1 ? rat(1, 2) : Rational(0)),
              "Tor(T, X) != Theta/2");
    c.require(tor.t(0, 1, k) == (k == 2 ? Rational(-1) : Rational(0)),
              "Tor(X, Theta) != -T");
  }
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 3; ++k) c.require(conn.g(a, 2, k) == 0, "nabla T != 0");
}

void criterion3(Criterion& c) {
  for (int n : {1, 2, 3}) {
    const std::string name = "heisenberg(" + std::to_string(n) + ")";
    GradedLieGeometry g = lie_of(name);
    Connection conn = build_connection(g);
    TorsionData tor = torsion(g, conn);

    // -Tor against the vertical direction is [[0, I],[-I, 0]]; nothing horizontal
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) {
        Rational expect = Rational(b == a + n ? 1 : 0) - Rational(a == b + n ? 1 : 0);
        c.require(-tor.t(a, b, 2 * n) == expect, name + ": torsion matrix entry");
        for (int k = 0; k < 2 * n; ++k)
          c.require(tor.t(a, b, k) == 0, name + ": horizontal torsion component");
      }

    auto dec = torsion_decomposition(g, tor);
    c.require(commutant_bound(g, tor, dec) == n * n,
              name + ": commutant bound != n^2");
    BoundReport rep = aggregate_bounds(g, tor, adjoint_isotropy_dim(g));
    c.require(rep.total_upper == (n + 1) * (n + 1),
              name + ": upper bound != (n+1)^2");

    if (n <= 2) {
      CoordinateGeometry chart = to_coordinate_geometry(catalog(name));
      KillingSolveResult strong = killing_solve(chart, 2, KillingMode::strong);
      KillingSolveResult weak = killing_solve(chart, 2, KillingMode::weak);
      c.require(strong.dimension == 2 * n + 1 + n * n,
                name + ": strong dimension != 2n+1+n^2");
      c.require(weak.dimension == strong.dimension, name + ": weak != strong dimension");
      c.require(Subspace::span_cols(weak.coefficient_basis)
                    .equals(Subspace::span_cols(strong.coefficient_basis)),
                name + ": weak and strong spans differ");
      c.require(strong.dimension <= rep.total_upper, name + ": dimension exceeds bound");
    }
  }
}

void criterion4(Criterion& c) {
  GradedLieGeometry g = lie_of("engel");
  Filtration filt = filtration(g);
  c.require(filt.bracket_generating, "engel: not bracket generating");
  c.require(filt.regular, "engel: grading not certified regular");
  c.require(filt.step == 3, "engel: step != 3");

  Connection conn = build_connection(g);
  TorsionData tor = torsion(g, conn);
  auto hs = higher_step_bounds(g, tor);
  c.require(hs.size() == 1, "engel: expected one higher-step bound");
  if (hs.size() == 1) {
    ExactMatrix y(1, 2);
    y(0, 1) = 1;
    c.require(hs[0].dim_l == 1 && hs[0].l.dim() == 1 && hs[0].l.contains(y),
              "engel: higher-step kernel != span{Y}");
    c.require(hs[0].bound == 0, "engel: higher-step isotropy bound != 0");
  }
  BoundReport rep = aggregate_bounds(g, tor, adjoint_isotropy_dim(g));
  c.require(rep.isotropy_upper == 0, "engel: isotropy bound != 0");

  CoordinateGeometry chart = to_coordinate_geometry(catalog("engel"));
  KillingSolveResult sol = killing_solve(chart, 2, KillingMode::weak);
  c.require(sol.dimension == 4, "engel: solved dimension != 4");

  std::vector<FrameVectorField> expected = {
      field_of(chart, {"0", "0", "1", "-x"}),
      field_of(chart, {"0", "0", "0", "1"}),
      field_of(chart, {"0", "1", "-x", "1/2*x^2"}),
      field_of(chart, {"1", "0", "0", "0"}),
  };
  for (const auto& k : expected)
    c.require(killing_check(chart, k).weak, "engel: expected field is not Killing");
  c.require(Subspace::span_cols(sol.coefficient_basis)
                .equals(Subspace::span_cols(stack_ansatz(chart, expected, 2))),
            "engel: solved span differs from the expected span");
}

void criterion5(Criterion& c) {
  for (int n : {2, 3}) {
    const std::string name = "sl(" + std::to_string(n) + ")";
    GradedLieGeometry g = lie_of(name);
    TorsionData tor = torsion(g, build_connection(g));

    auto dec = torsion_decomposition(g, tor);
    c.require(!dec.blocks.empty(), name + ": no torsion blocks");
    for (const auto& b : dec.blocks)
      c.require(b.dim() == 2, name + ": torsion block not two-dimensional");
    auto stab = stabilizer_contribution(dec);
    c.require(stab.has_value() && *stab == 0, name + ": stabilizer contribution != 0");
    c.require(eigen_commutant_bound(g, tor) == 0, name + ": eigen-commutant bound != 0");

    BoundReport rep = aggregate_bounds(g, tor, adjoint_isotropy_dim(g));
    c.require(rep.total_upper == n * n - 1, name + ": upper bound != n^2-1");
    c.require(rep.total_lower == n * n - 1, name + ": lower bound != n^2-1");
    c.require(rep.exact, name + ": dimension not pinned exactly");
  }
}

void criterion6(Criterion& c) {
  for (int n : {3, 4, 5}) {
    const std::string name = "so(" + std::to_string(n) + ")";
    GradedLieGeometry g = lie_of(name);
    TorsionData tor = torsion(g, build_connection(g));

    int certified = adjoint_isotropy_dim(g);
    c.require(certified == (n - 1) * (n - 2) / 2,
              name + ": conjugation isotropy dimension");
    BoundReport rep = aggregate_bounds(g, tor, certified);
    c.require(rep.total_upper == (n - 1) * (n - 1), name + ": upper bound != (n-1)^2");
    c.require(rep.total_lower == (n - 1) * (n - 1), name + ": lower bound != (n-1)^2");
    c.require(rep.exact, name + ": dimension not pinned exactly");
  }
}

void criterion7(Criterion& c) {
  GradedLieGeometry g = lie_of("rototranslation");
  TorsionData tor = torsion(g, build_connection(g));
  c.require(eigen_commutant_bound(g, tor) == 0,
            "rototranslation: eigen-commutant bound != 0");

  CoordinateGeometry chart = to_coordinate_geometry(catalog("rototranslation"));
  KillingSolveResult weak = killing_solve(chart, 1, KillingMode::weak);
  KillingSolveResult strong = killing_solve(chart, 1, KillingMode::strong);
  c.require(weak.dimension == 3, "rototranslation: dimension != 3");
  c.require(strong.dimension == 3, "rototranslation: strong dimension != 3");
  c.require(Subspace::span_cols(weak.coefficient_basis)
                .equals(Subspace::span_cols(strong.coefficient_basis)),
            "rototranslation: weak and strong spans differ");

  std::vector<FrameVectorField> expected = {
      field_of(chart, {"1", "0", "0"}),
      field_of(chart, {"0", "1", "0"}),
      field_of(chart, {"-y", "x", "1"}),
  };
  for (const auto& k : expected)
    c.require(killing_check(chart, k).strong,
              "rototranslation: expected field is not strongly Killing");
  c.require(Subspace::span_cols(weak.coefficient_basis)
                .equals(Subspace::span_cols(stack_ansatz(chart, expected, 1))),
            "rototranslation: solved span differs from the translation-rotation span");
}

void criterion8(Criterion& c) {
  // curvature/torsion Bianchi identity and metric-extension independence
  for (const auto& name : catalog_names()) {
    GradedLieGeometry g = lie_of(name);
    Connection conn = build_connection(g);
    TorsionData tor = torsion(g, conn);
    CurvatureData curv = curvature(g, conn);
    c.require(bianchi_identity_holds(g, conn, tor, curv), name + ": Bianchi identity");

    SubRicci base = sub_ricci(g, conn, tor, curv);
    c.require(base.symmetric, name + ": sub-Ricci not symmetric");
    c.require(base.vertical_vanishing, name + ": sub-Ricci nonzero on V");
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
      GradedLieGeometry g2 = randomize_vertical_gram(g, seed);
      Connection conn2 = build_connection(g2);
      TorsionData tor2 = torsion(g2, conn2);
      CurvatureData curv2 = curvature(g2, conn2);
      SubRicci alt = sub_ricci(g2, conn2, tor2, curv2);
      c.require(alt.rcs == base.rcs, name + ": sub-Ricci depends on the extension");
      c.require(alt.symmetric && alt.vertical_vanishing,
                name + ": extended sub-Ricci lost its properties");
    }
  }

  // the full identity battery on every solved Killing field of every chart
  for (const std::string name : {"heisenberg(1)", "heisenberg(2)", "heisenberg(3)",
                                 "engel", "rototranslation"}) {
    GeometryManifest m = catalog(name);
    CoordinateGeometry chart = to_coordinate_geometry(m);
    Connection conn = build_connection(chart.lie);
    TorsionData tor = torsion(chart.lie, conn);
    CurvatureData curv = curvature(chart.lie, conn);
    FlagReport flags = classify(chart.lie, tor);
    SubRicci ricci = sub_ricci(chart.lie, conn, tor, curv);
    auto tt = torsion_trace_tensor(chart.lie, conn, tor);

    KillingSolveResult sol = killing_solve(chart, *m.solver_degree, KillingMode::weak);
    c.require(sol.dimension > 0, name + ": no Killing fields solved");
    const bool transport_pair = name == "rototranslation" || name.rfind("heisenberg", 0) == 0;

    for (const auto& K : sol.basis) {
      KillingCheckResult kc = killing_check(chart, K);
      c.require(kc.weak, name + ": solved field fails re-verification");
      auto ids = killing_field_identities(chart, conn, tor, curv, flags, ricci, tt, K,
                                          kc.strong);
      auto holds = [&](const std::string& id_name, bool must_apply) {
        for (const auto& id : ids)
          if (id.name == id_name)
            return id.applicable ? id.holds : !must_apply;
        return false;
      };
      for (const auto& id : ids)
        c.require(!id.applicable || id.holds, name + ": identity failed: " + id.name);
      c.require(holds("vertical-transport", true), name + ": vertical transport law");
      c.require(holds("b-skew-horizontal", true), name + ": B not skew on H");
      c.require(holds("self-transport-vertical", true), name + ": self-transport law");
      c.require(holds("vertical-field-torsion", false),
                name + ": vertical field with horizontal torsion");
      if (transport_pair && kc.strong) {
        c.require(holds("curvature-from-b", true), name + ": curvature-from-B law");
        c.require(holds("trace-curvature-from-b", true),
                  name + ": traced curvature law");
        c.require(holds("laplacian-torsion-trace", true),
                  name + ": Laplacian trace law");
      }
      if (transport_pair)
        c.require(kc.strong, name + ": solved field unexpectedly not strong");
    }

    // flat charts: B of a bracket is the commutator of the B operators
    if (name == "heisenberg(1)" || name == "heisenberg(2)") {
      for (std::size_t i = 0; i < sol.basis.size(); ++i)
        for (std::size_t j = i + 1; j < sol.basis.size(); ++j) {
          IdentityCheck id = bracket_commutator_identity(chart, conn, tor, curv,
                                                         sol.basis[i], sol.basis[j]);
          c.require(id.applicable, name + ": bracket identity not applicable");
          c.require(!id.applicable || id.holds, name + ": bracket identity failed");
        }
    }
  }
}

void criterion9(Criterion& c) {
  std::mt19937 rng(7081514);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> size(1, 8);
  auto rational = [&]() { return rat(num(rng), den(rng)); };
  auto random_matrix = [&](int rows, int cols) {
    ExactMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rational();
    return m;
  };

  auto rows_of = [](const ExactMatrix& m) {
    oracle::Mat out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      oracle::Row v(m.cols(), Rational(0));
      for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(r, j);
      out.push_back(std::move(v));
    }
    return out;
  };

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(size(rng));
    const std::size_t cols = static_cast<std::size_t>(size(rng));
    ExactMatrix m = random_matrix(rows, cols);
    oracle::Mat om = oracle::from_exact(m);

    // kernel: every basis vector annihilated, and the span matches the
    // brute-force oracle by mutual containment
    ExactMatrix ns = null_space(m);
    c.require((m * ns).is_zero(), "null space vector not annihilated");
    oracle::Mat ons = oracle::null_basis(om, cols);
    c.require(ns.cols() == ons.size(), "kernel dimension mismatch");
    Subspace lib = Subspace::span_cols(ns);
    Subspace ora = Subspace::span_rows(oracle::to_exact(ons, cols));
    c.require(lib.contains(ora) && ora.contains(lib), "kernel spans differ");

    // solving: forced-solvable systems half the time; consistency and the
    // residual must agree with the oracle
    ExactMatrix rhs = (trial % 2 == 0) ? m * random_matrix(cols, 1)
                                       : random_matrix(rows, 1);
    std::optional<ExactMatrix> sol = solve_linear(m, rhs);
    oracle::Row orhs(rows, Rational(0));
    for (std::size_t r = 0; r < rows; ++r) orhs[r] = rhs(r, 0);
    std::optional<oracle::Row> osol = oracle::solve(om, orhs);
    c.require(sol.has_value() == osol.has_value(), "solvability disagreement");
    if (sol) c.require((m * *sol - rhs).is_zero(), "solution has nonzero residual");

    // intersection: mutual containment plus the dimension formula
    ExactMatrix a = random_matrix(static_cast<std::size_t>(size(rng)), cols);
    ExactMatrix b = random_matrix(static_cast<std::size_t>(size(rng)), cols);
    Subspace u = Subspace::span_rows(a);
    Subspace w = Subspace::span_rows(b);
    Subspace meet = u.intersect(w);
    oracle::Mat expected =
        oracle::intersect(oracle::from_exact(a), oracle::from_exact(b), cols);
    c.require(meet.equals(Subspace::span_rows(oracle::to_exact(expected, cols))),
              "intersection spans differ");
    c.require(oracle::same_span(rows_of(meet.basis_rows()), expected),
              "intersection mutual containment failed");
    c.require(u.dim() + w.dim() == u.sum(w).dim() + meet.dim(), "dimension formula");
  }
}

}  // namespace

int main() {
  Criterion c1;
  criterion1(c1);
  report(1, "canonical connection axioms and uniqueness on the catalog", c1);

  Criterion c2;
  criterion2(c2);
  report(2, "rototranslation connection and torsion closed forms", c2);

  Criterion c3;
  criterion3(c3);
  report(3, "Heisenberg torsion matrix, commutant bound, Killing dimensions", c3);

  Criterion c4;
  criterion4(c4);
  report(4, "Engel regularity, higher-step bound, Killing span", c4);

  Criterion c5;
  criterion5(c5);
  report(5, "special linear torsion blocks and exact dimension", c5);

  Criterion c6;
  criterion6(c6);
  report(6, "orthogonal frame bundle bounds meet the conjugation isotropy", c6);

  Criterion c7;
  criterion7(c7);
  report(7, "rototranslation eigen-commutant bound and Killing span", c7);

  Criterion c8;
  criterion8(c8);
  report(8, "curvature, sub-Ricci, and Killing-field identity battery", c8);

  Criterion c9;
  criterion9(c9);
  report(9, "exact linear algebra agrees with the brute-force oracle", c9);

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
