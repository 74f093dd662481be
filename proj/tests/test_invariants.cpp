#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "srgeo/invariants.hpp"
#include "srgeo/manifest.hpp"
#include "srgeo/subspace.hpp"

using namespace srgeo;

namespace {

struct Pipeline {
  Connection conn;
  TorsionData tor;
  CurvatureData curv;
  FlagReport flags;
  SubRicci ricci;
  std::vector<std::vector<Rational>> tt;
};

Pipeline run(const GradedLieGeometry& lie) {
  Pipeline p;
  p.conn = build_connection(lie);
  p.tor = torsion(lie, p.conn);
  p.curv = curvature(lie, p.conn);
  p.flags = classify(lie, p.tor);
  p.ricci = sub_ricci(lie, p.conn, p.tor, p.curv);
  p.tt = torsion_trace_tensor(lie, p.conn, p.tor);
  return p;
}

CoordinateGeometry chart_of(const std::string& name) {
  return to_coordinate_geometry(catalog(name));
}

GradedLieGeometry lie_of(const std::string& name) {
  GeometryManifest m = catalog(name);
  return m.kind == "lie" ? to_lie_geometry(m) : to_coordinate_geometry(m).lie;
}

/// Solves for Killing fields and runs the full identity battery on each
/// solution and on every pair of solutions.
void check_solved_fields(const CoordinateGeometry& geom, const Pipeline& p, int degree) {
  auto sol = killing_solve(geom, degree, KillingMode::weak);
  REQUIRE(sol.dimension > 0);
  for (const auto& K : sol.basis) {
    auto kc = killing_check(geom, K);
    CHECK(kc.weak);
    auto ids = killing_field_identities(geom, p.conn, p.tor, p.curv, p.flags, p.ricci,
                                        p.tt, K, kc.strong);
    CHECK(!ids.empty());
    for (const auto& id : ids) {
      INFO(id.name);
      if (id.applicable) CHECK(id.holds);
    }
  }
  for (std::size_t i = 0; i < sol.basis.size(); ++i)
    for (std::size_t j = i + 1; j < sol.basis.size(); ++j) {
      auto id = bracket_commutator_identity(geom, p.conn, p.tor, p.curv, sol.basis[i],
                                            sol.basis[j]);
      INFO(id.name);
      if (id.applicable) CHECK(id.holds);
    }
}

}  // namespace

TEST_CASE("rototranslation flags and sub-Ricci") {
  auto roto = chart_of("rototranslation");
  auto p = run(roto.lie);
  CHECK(!p.flags.h_normal);
  CHECK(p.flags.v_normal);
  CHECK(!p.flags.strictly_normal);
  CHECK(p.flags.vm_integrable);
  CHECK(p.flags.totally_rigid);
  CHECK(p.flags.vertically_rigid);
  CHECK(p.flags.horizontally_rigid);

  CHECK(p.ricci.tr_rm(0, 0) == rat(1, 2));
  CHECK(p.ricci.tr_rm(1, 1) == rat(1, 2));
  CHECK(p.ricci.tr_rm(2, 2) == 0);
  CHECK(p.ricci.rcs(0, 0) == 1);
  CHECK(p.ricci.rcs(1, 1) == 0);
  CHECK(p.ricci.rcs(0, 1) == 0);
  CHECK(p.ricci.rcs(2, 2) == 0);
  CHECK(p.ricci.symmetric);
  CHECK(p.ricci.vertical_vanishing);
}

TEST_CASE("heisenberg and engel flags and sub-Ricci") {
  auto hp = run(lie_of("heisenberg(1)"));
  CHECK(hp.flags.strictly_normal);
  CHECK(hp.flags.vm_integrable);
  CHECK(hp.flags.totally_rigid);
  CHECK(hp.ricci.rcs.is_zero());
  CHECK(hp.ricci.symmetric);
  CHECK(hp.ricci.vertical_vanishing);

  auto ep = run(lie_of("engel"));
  CHECK(ep.flags.h_normal);
  CHECK(!ep.flags.v_normal);
  CHECK(ep.flags.vm_integrable);
  CHECK(ep.ricci.rcs.is_zero());
}

TEST_CASE("first Bianchi identity holds across the catalog") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    auto lie = lie_of(name);
    auto p = run(lie);
    CHECK(bianchi_identity_holds(lie, p.conn, p.tor, p.curv));
  }
}

TEST_CASE("sub-Ricci is independent of the vertical metric extension") {
  for (const std::string name :
       {"rototranslation", "heisenberg(1)", "heisenberg(2)", "engel", "so(3)", "sl(2)"}) {
    INFO(name);
    auto lie = lie_of(name);
    auto base = run(lie);
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
      auto lie2 = randomize_vertical_gram(lie, seed);
      auto p2 = run(lie2);
      CHECK(p2.ricci.rcs == base.ricci.rcs);
      CHECK(p2.ricci.symmetric);
      CHECK(p2.ricci.vertical_vanishing);
    }
  }
}

TEST_CASE("B matrix of the Heisenberg rotation field") {
  auto heis = chart_of("heisenberg(1)");
  auto p = run(heis.lie);
  std::vector<SymExpr> comps = {parse_expression(heis.ring.get(), heis.poly_vars, "y1"),
                                parse_expression(heis.ring.get(), heis.poly_vars, "-x1"),
                                parse_expression(heis.ring.get(), heis.poly_vars, "0")};
  auto K = heis.from_coord(comps);
  auto b = killing_b_matrix(heis, p.conn, p.tor, K);
  CHECK(b[0][1] == SymExpr::constant(heis.ring.get(), Rational(1)));
  CHECK(b[1][0] == SymExpr::constant(heis.ring.get(), Rational(-1)));
  CHECK(b[0][0].is_zero());
  CHECK(b[1][1].is_zero());
  for (int d = 0; d < 3; ++d) CHECK(b[d][2].is_zero());
}

TEST_CASE("killing field identity battery on solved fields") {
  {
    auto roto = chart_of("rototranslation");
    check_solved_fields(roto, run(roto.lie), 1);
  }
  {
    auto heis = chart_of("heisenberg(1)");
    check_solved_fields(heis, run(heis.lie), 2);
  }
  {
    auto engel = chart_of("engel");
    check_solved_fields(engel, run(engel.lie), 2);
  }
}

TEST_CASE("bracket identity distinguishes the operator order") {
  // The isotropy of heisenberg(2) is large enough that B_[K,L] differs from
  // [B_K, B_L]: only the reversed composition [B_L, B_K] closes the identity,
  // so run every pair. Smaller charts cannot tell the two orders apart.
  auto heis = chart_of("heisenberg(2)");
  auto p = run(heis.lie);
  auto sol = killing_solve(heis, 2, KillingMode::weak);
  REQUIRE(sol.dimension == 9);
  for (std::size_t i = 0; i < sol.basis.size(); ++i)
    for (std::size_t j = i + 1; j < sol.basis.size(); ++j) {
      auto id = bracket_commutator_identity(heis, p.conn, p.tor, p.curv, sol.basis[i],
                                            sol.basis[j]);
      CHECK(id.applicable);
      CHECK(id.holds);
    }
}
