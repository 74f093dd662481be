#include "srgeo/subspace.hpp"

#include <stdexcept>

namespace srgeo {

Subspace Subspace::span_rows(const ExactMatrix& vectors) {
  Subspace s(vectors.cols());
  ExactMatrix r = vectors;
  std::vector<std::size_t> pivots = rref_inplace(r);
  s.basis_ = r.block(0, 0, pivots.size(), vectors.cols());
  return s;
}

Subspace Subspace::span_cols(const ExactMatrix& vectors) { return span_rows(vectors.transpose()); }

Subspace Subspace::full(std::size_t ambient_dim) {
  return span_rows(ExactMatrix::identity(ambient_dim));
}

bool Subspace::contains(const ExactMatrix& row_vector) const {
  if (row_vector.rows() != 1 || row_vector.cols() != ambient_)
    throw std::invalid_argument("contains: expected a 1 x ambient row vector");
  return rank(basis_.vstack(row_vector)) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  return rank(basis_.vstack(other.basis_)) == dim();
}

bool Subspace::equals(const Subspace& other) const {
  return contains(other) && other.contains(*this);
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  return span_rows(basis_.vstack(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  // x in A ∩ B  <=>  x = u A = v B; solve [A^T | -B^T] and map the u-part through A.
  ExactMatrix at = basis_.transpose();
  ExactMatrix bt = other.basis_.transpose() * Rational(-1);
  ExactMatrix sys = at.hstack(bt);
  ExactMatrix ns = null_space(sys);
  ExactMatrix vecs(ns.cols(), ambient_);
  for (std::size_t k = 0; k < ns.cols(); ++k)
    for (std::size_t j = 0; j < ambient_; ++j) {
      Rational acc = 0;
      for (std::size_t i = 0; i < dim(); ++i) acc += ns(i, k) * basis_(i, j);
      vecs(k, j) = acc;
    }
  return span_rows(vecs);
}

Subspace Subspace::orthogonal_complement(const ExactMatrix& gram) const {
  if (gram.rows() != ambient_ || gram.cols() != ambient_)
    throw std::invalid_argument("gram shape mismatch");
  // {x : B G x = 0} for basis rows B.
  return span_cols(null_space(basis_ * gram));
}

}  // namespace srgeo
