#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "srgeo/rational.hpp"

namespace srgeo {

/// Ring variable layout for a coordinate chart. Plain variables are polynomial
/// coordinates; each angle coordinate contributes a circle pair (c, s) of ring
/// variables subject to the rewrite s^2 -> 1 - c^2, which makes canonical forms
/// unique and identity testing decidable.
struct RingSpec {
  std::vector<std::string> var_names;            // one per ring variable
  std::vector<std::pair<int, int>> circle_pairs; // (c_index, s_index) per angle
  std::vector<std::string> angle_names;          // parallel to circle_pairs

  int nvars() const { return static_cast<int>(var_names.size()); }
  int find_var(const std::string& name) const;    // -1 when absent
  int find_angle(const std::string& name) const;  // -1 when absent
  /// Index into circle_pairs when v is the s-variable of a pair, else -1.
  int pair_of_s(int v) const;
};

/// Exponent vector over the ring variables of a RingSpec.
using Mono = std::vector<int>;

/// Element of Q[x_1..x_m][c_j, s_j]/(s_j^2 + c_j^2 - 1) in canonical form:
/// no monomial carries an s-exponent above 1, like monomials merged, zero
/// coefficients dropped. Exact arithmetic throughout.
class SymExpr {
 public:
  SymExpr() = default;  // context-free zero; adopts the other operand's ring
  explicit SymExpr(const RingSpec* spec) : spec_(spec) {}

  static SymExpr constant(const RingSpec* spec, const Rational& c);
  static SymExpr variable(const RingSpec* spec, int var);

  const RingSpec* spec() const { return spec_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (the full value when is_constant()).
  Rational constant_value() const;

  SymExpr operator+(const SymExpr& rhs) const;
  SymExpr operator-(const SymExpr& rhs) const;
  SymExpr operator*(const SymExpr& rhs) const;
  SymExpr operator-() const;
  SymExpr operator*(const Rational& s) const;
  SymExpr& operator+=(const SymExpr& rhs);
  SymExpr& operator-=(const SymExpr& rhs);
  bool operator==(const SymExpr& rhs) const;
  bool operator!=(const SymExpr& rhs) const { return !(*this == rhs); }

  SymExpr pow(int e) const;

  /// Formal partial with respect to a plain ring variable.
  SymExpr derivative_var(int var) const;
  /// Angle derivative through a circle pair: c -> -s, s -> c.
  SymExpr derivative_circle(int c_idx, int s_idx) const;

  /// Substitutes rational values for every ring variable.
  Rational evaluate(const std::vector<Rational>& values) const;

  /// Total degree; every ring variable (including c and s) counts one.
  int degree() const;

  const std::map<Mono, Rational>& terms() const { return terms_; }
  /// Adds coeff * mono, applying the circle rewrite and dropping zeros.
  void add_term(Mono mono, const Rational& coeff);

  std::string str() const;

 private:
  const RingSpec* spec_ = nullptr;
  std::map<Mono, Rational> terms_;

  const RingSpec* merged_spec(const SymExpr& rhs) const;
};

inline SymExpr operator*(const Rational& s, const SymExpr& e) { return e * s; }

/// Parses an expression over the chart: rational literals ("p", "p/q"),
/// variable names, cos(angle), sin(angle), parentheses, unary minus, +, -, *,
/// and integer powers with ^. poly_vars maps coordinate names to ring variables.
SymExpr parse_expression(const RingSpec* spec,
                         const std::map<std::string, int>& poly_vars,
                         std::string_view text);

/// All canonical monomials of total degree <= d (s-exponents capped at 1),
/// in the canonical map order.
std::vector<Mono> monomials_up_to_degree(const RingSpec* spec, int d);

}  // namespace srgeo
