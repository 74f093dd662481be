#pragma once

#include <vector>

#include "srgeo/matrix.hpp"

namespace srgeo {

/// Linear subspace of Q^n, stored as an RREF row basis of the ambient space.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  /// Span of the rows of `vectors`.
  static Subspace span_rows(const ExactMatrix& vectors);
  /// Span of the columns of `vectors`.
  static Subspace span_cols(const ExactMatrix& vectors);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  /// Basis vectors as rows (RREF, canonical for the span).
  const ExactMatrix& basis_rows() const { return basis_; }

  bool contains(const ExactMatrix& row_vector) const;
  bool contains(const Subspace& other) const;
  /// Mutual containment (each side contained in the other), decided by rank checks.
  bool equals(const Subspace& other) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Orthogonal complement with respect to the bilinear form `gram`.
  Subspace orthogonal_complement(const ExactMatrix& gram) const;

 private:
  std::size_t ambient_;
  ExactMatrix basis_;  // dim x ambient, RREF
};

}  // namespace srgeo
