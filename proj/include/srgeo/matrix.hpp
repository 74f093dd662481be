#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "srgeo/rational.hpp"

namespace srgeo {

/// Dense matrix over Rational. Row-major storage.
class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const ExactMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }
  bool operator!=(const ExactMatrix& other) const { return !(*this == other); }

  ExactMatrix transpose() const;
  ExactMatrix operator*(const ExactMatrix& rhs) const;
  ExactMatrix operator+(const ExactMatrix& rhs) const;
  ExactMatrix operator-(const ExactMatrix& rhs) const;
  ExactMatrix operator*(const Rational& s) const;

  bool is_zero() const;
  Rational trace() const;

  ExactMatrix row(std::size_t r) const;
  ExactMatrix col(std::size_t c) const;
  /// Rows [r0, r0+nr) x cols [c0, c0+nc).
  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  /// Stacks rows of `bottom` under this matrix (column counts must agree).
  ExactMatrix vstack(const ExactMatrix& bottom) const;
  ExactMatrix hstack(const ExactMatrix& right) const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

/// In-place reduction to reduced row echelon form. Pivot choice: first row with a
/// nonzero entry in the current column (exact arithmetic needs no magnitude pivoting,
/// and this keeps results deterministic). Returns the pivot column indices.
///
/// `parallel` switches the row-update loop to the OpenMP kernel; both paths produce
/// bit-identical results (the serial path is the reference implementation and is kept
/// under test against the parallel one).
std::vector<std::size_t> rref_inplace(ExactMatrix& m, bool parallel);
std::vector<std::size_t> rref_inplace(ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Right null space: columns of the result form a basis of {x : m x = 0}.
/// A full-rank map yields a 0-column matrix.
ExactMatrix null_space(const ExactMatrix& m);

/// One exact solution of m x = rhs (rhs: column vector), or nullopt when inconsistent.
std::optional<ExactMatrix> solve_linear(const ExactMatrix& m, const ExactMatrix& rhs);

/// Determinant via elimination (exact).
Rational determinant(const ExactMatrix& m);

ExactMatrix inverse(const ExactMatrix& m);  // throws std::invalid_argument if singular

}  // namespace srgeo
