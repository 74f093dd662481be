#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <string_view>

namespace srgeo {

/// Exact rational scalar. Backed by GMP; always canonical (gcd(num,den) = 1, den > 0).
/// No floating point is used anywhere in the exact layer.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on anything else
/// (in particular decimal literals are rejected; the input grammar is exact).
Rational parse_rational(std::string_view text);

/// Canonical form: "p" when den == 1, else "p/q".
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace srgeo
