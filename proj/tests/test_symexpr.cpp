#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "srgeo/symexpr.hpp"

using namespace srgeo;

namespace {

/// Chart with two polynomial coordinates x, y and one angle theta,
/// realised as ring variables x, y, c, s with s^2 -> 1 - c^2.
struct Chart {
  RingSpec spec;
  std::map<std::string, int> vars;

  Chart() {
    spec.var_names = {"x", "y", "cos(theta)", "sin(theta)"};
    spec.circle_pairs = {{2, 3}};
    spec.angle_names = {"theta"};
    vars = {{"x", 0}, {"y", 1}};
  }

  SymExpr parse(const std::string& text) const {
    return parse_expression(&spec, vars, text);
  }
};

}  // namespace

TEST_CASE("parsing and canonical printing") {
  Chart ch;
  CHECK(ch.parse("0").is_zero());
  CHECK(ch.parse("x - x").is_zero());
  CHECK(ch.parse("3/4").constant_value() == rat(3, 4));
  CHECK(ch.parse("-1/2*x*y") == ch.parse("x*y") * rat(-1, 2));
  CHECK(ch.parse("x^3") == ch.parse("x*x*x"));
  CHECK(ch.parse("(x + y)^2") == ch.parse("x*x + 2*x*y + y*y"));
  CHECK(ch.parse("-(x - y)") == ch.parse("y - x"));

  // printing round-trips through the parser
  for (const std::string text :
       {"1/2*x*x - y", "cos(theta)*x + sin(theta)*y", "-x + 2", "x*y*cos(theta)"}) {
    SymExpr e = ch.parse(text);
    CHECK(ch.parse(e.str()) == e);
  }
  CHECK_THROWS(ch.parse("z + 1"));
  CHECK_THROWS(ch.parse("x +"));
  CHECK_THROWS(ch.parse("cos(x)"));
}

TEST_CASE("circle relation is rewritten to canonical form") {
  Chart ch;
  SymExpr c = ch.parse("cos(theta)");
  SymExpr s = ch.parse("sin(theta)");
  CHECK(c * c + s * s == SymExpr::constant(&ch.spec, 1));
  CHECK((s.pow(4)) == ch.parse("(1 - cos(theta)^2)^2"));
  // no canonical monomial carries an s-exponent above one
  SymExpr e = ch.parse("sin(theta)^3*x + sin(theta)^2*y");
  for (const auto& [mono, coeff] : e.terms()) {
    (void)coeff;
    CHECK(mono[3] <= 1);
  }
}

TEST_CASE("arithmetic and degree") {
  Chart ch;
  SymExpr a = ch.parse("x + y");
  SymExpr b = ch.parse("x - y");
  CHECK(a * b == ch.parse("x^2 - y^2"));
  CHECK(a - a == SymExpr());
  CHECK(a.degree() == 1);
  CHECK(ch.parse("x^2*y").degree() == 3);
  CHECK(ch.parse("x*cos(theta)").degree() == 2);
  CHECK(ch.parse("7").degree() == 0);
  CHECK(SymExpr().degree() == 0);
  CHECK(ch.parse("5").is_constant());
  CHECK(!a.is_constant());
}

TEST_CASE("derivatives") {
  Chart ch;
  SymExpr e = ch.parse("x^3*y + 2*x*y");
  CHECK(e.derivative_var(0) == ch.parse("3*x^2*y + 2*y"));
  CHECK(e.derivative_var(1) == ch.parse("x^3 + 2*x"));

  // angle derivative: d/dtheta cos = -sin, d/dtheta sin = cos
  SymExpr c = ch.parse("cos(theta)");
  SymExpr s = ch.parse("sin(theta)");
  CHECK(c.derivative_circle(2, 3) == -s);
  CHECK(s.derivative_circle(2, 3) == c);
  // product rule through the rewrite: d/dtheta (s*c) = c^2 - s^2 = 2c^2 - 1
  CHECK((s * c).derivative_circle(2, 3) == ch.parse("2*cos(theta)^2 - 1"));
  // the circle relation is constant, so its derivative vanishes
  CHECK((c * c + s * s).derivative_circle(2, 3).is_zero());
}

TEST_CASE("evaluation") {
  Chart ch;
  SymExpr e = ch.parse("1/2*x^2 - y*cos(theta) + sin(theta)");
  // x = 2, y = 3, (c, s) = (3/5, 4/5) on the circle
  std::vector<Rational> at = {2, 3, rat(3, 5), rat(4, 5)};
  CHECK(e.evaluate(at) == rat(2, 1) - rat(9, 5) + rat(4, 5));
}

TEST_CASE("monomials up to degree enumerate the canonical basis") {
  Chart ch;
  // degree 1 over {x, y, c, s}: the constant plus the four variables
  CHECK(monomials_up_to_degree(&ch.spec, 1).size() == 5);
  // degree 2: 1 constant + 4 linear + (xx, xy, yy, xc, xs, yc, ys, cc, cs) = 14
  // (ss is rewritten away so it never appears as a canonical monomial)
  CHECK(monomials_up_to_degree(&ch.spec, 2).size() == 14);
  for (const Mono& mono : monomials_up_to_degree(&ch.spec, 3)) CHECK(mono[3] <= 1);

  RingSpec plain;
  plain.var_names = {"x", "y"};
  CHECK(monomials_up_to_degree(&plain, 2).size() == 6);
}
