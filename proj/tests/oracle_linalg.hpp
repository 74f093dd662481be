#pragma once

// Brute-force reference linear algebra used to cross-check ExactMatrix. Kept
// deliberately independent of the library implementation: different storage
// (vector of rows), different pivot policy (largest row index first), and
// Gauss elimination followed by back substitution instead of one-pass
// Gauss-Jordan.

#include <optional>
#include <vector>

#include "srgeo/matrix.hpp"

namespace oracle {

using srgeo::Rational;
using Row = std::vector<Rational>;
using Mat = std::vector<Row>;

inline Mat from_exact(const srgeo::ExactMatrix& m) {
  Mat out(m.rows(), Row(m.cols(), Rational(0)));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline srgeo::ExactMatrix to_exact(const Mat& m, std::size_t cols) {
  srgeo::ExactMatrix out(m.size(), cols);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = m[r][c];
  return out;
}

/// Row echelon form with the *last* row holding a nonzero pivot candidate
/// chosen at each step, then normalized and back-substituted. Returns pivot
/// columns.
inline std::vector<std::size_t> echelon(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
    std::size_t hit = rows;
    for (std::size_t r = rows; r-- > pr;)
      if (m[r][pc] != 0) {
        hit = r;
        break;
      }
    if (hit == rows) continue;
    std::swap(m[pr], m[hit]);
    Rational inv = 1 / m[pr][pc];
    for (std::size_t c = pc; c < cols; ++c) m[pr][c] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || m[r][pc] == 0) continue;
      Rational f = m[r][pc];
      for (std::size_t c = pc; c < cols; ++c) m[r][c] -= f * m[pr][c];
    }
    pivots.push_back(pc);
    ++pr;
  }
  return pivots;
}

inline std::size_t rank(Mat m) { return echelon(m).size(); }

/// Basis of {x : m x = 0} as rows.
inline Mat null_basis(Mat m, std::size_t cols) {
  std::vector<std::size_t> pivots = echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Row v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Membership of v in the row span of basis, decided by a rank comparison.
inline bool in_span(const Mat& basis, const Row& v) {
  Mat augmented = basis;
  augmented.push_back(v);
  return rank(augmented) == rank(basis);
}

/// Mutual containment of two row spans.
inline bool same_span(const Mat& a, const Mat& b) {
  for (const Row& v : a)
    if (!in_span(b, v)) return false;
  for (const Row& v : b)
    if (!in_span(a, v)) return false;
  return true;
}

/// One solution of m x = rhs via an augmented echelon form, or nullopt.
inline std::optional<Row> solve(Mat m, const Row& rhs) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t r = 0; r < rows; ++r) m[r].push_back(rhs[r]);
  std::vector<std::size_t> pivots = echelon(m);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] == cols) return std::nullopt;  // pivot in the rhs column
  Row x(cols, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][cols];
  return x;
}

/// Intersection of two row spans: for [Aᵀ | -Bᵀ] kernel vectors (u, w), the
/// vectors uᵀA span the intersection.
inline Mat intersect(const Mat& a, const Mat& b, std::size_t cols) {
  Mat stacked(cols, Row(a.size() + b.size(), Rational(0)));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < a.size(); ++i) stacked[c][i] = a[i][c];
    for (std::size_t j = 0; j < b.size(); ++j) stacked[c][a.size() + j] = -b[j][c];
  }
  Mat kernel = null_basis(std::move(stacked), a.size() + b.size());
  Mat out;
  for (const Row& k : kernel) {
    Row v(cols, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t c = 0; c < cols; ++c) v[c] += k[i] * a[i][c];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace oracle
