#include "srgeo/matrix.hpp"

#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srgeo {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = text.find('/');
  auto check_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer in rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("sign without digits in rational literal");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("non-integer rational literal: " + std::string(s));
  };
  if (slash == std::string_view::npos) {
    check_int(text);
    return Rational(std::string(text));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  check_int(num);
  check_int(den);
  Rational q(std::string(num) + "/" + std::string(den));
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  ExactMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (srgeo::is_zero(a)) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix diff shape mismatch");
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

ExactMatrix ExactMatrix::operator*(const Rational& s) const {
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
  return out;
}

bool ExactMatrix::is_zero() const {
  for (const auto& q : data_)
    if (sgn(q) != 0) return false;
  return true;
}

Rational ExactMatrix::trace() const {
  Rational t = 0;
  std::size_t n = rows_ < cols_ ? rows_ : cols_;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

ExactMatrix ExactMatrix::row(std::size_t r) const { return block(r, 0, 1, cols_); }
ExactMatrix ExactMatrix::col(std::size_t c) const { return block(0, c, rows_, 1); }

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::invalid_argument("block out of range");
  ExactMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& bottom) const {
  if (cols_ != bottom.cols_ && rows_ != 0 && bottom.rows_ != 0)
    throw std::invalid_argument("vstack column mismatch");
  std::size_t cols = rows_ == 0 ? bottom.cols_ : cols_;
  ExactMatrix out(rows_ + bottom.rows_, cols);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
  for (std::size_t r = 0; r < bottom.rows_; ++r)
    for (std::size_t c = 0; c < bottom.cols_; ++c) out(rows_ + r, c) = bottom(r, c);
  return out;
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& right) const {
  if (rows_ != right.rows_) throw std::invalid_argument("hstack row mismatch");
  ExactMatrix out(rows_, cols_ + right.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < right.cols_; ++c) out(r, cols_ + c) = right(r, c);
  }
  return out;
}

namespace {

// Eliminates column `pc` from all rows except `pr` using the (already normalized)
// pivot row. Row updates are independent, so the parallel path splits them across
// threads; each mpq object is touched by exactly one thread.
void eliminate_column(ExactMatrix& m, std::size_t pr, std::size_t pc, bool parallel) {
  const std::int64_t nrows = static_cast<std::int64_t>(m.rows());
  const std::size_t ncols = m.cols();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (parallel && nrows > 16)
#endif
  for (std::int64_t r = 0; r < nrows; ++r) {
    auto ur = static_cast<std::size_t>(r);
    if (ur == pr) continue;
    Rational f = m(ur, pc);
    if (sgn(f) == 0) continue;
    for (std::size_t c = pc; c < ncols; ++c) m(ur, c) -= f * m(pr, c);
  }
  (void)parallel;
}

}  // namespace

std::vector<std::size_t> rref_inplace(ExactMatrix& m, bool parallel) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < m.cols() && pr < m.rows(); ++pc) {
    std::size_t sel = m.rows();
    for (std::size_t r = pr; r < m.rows(); ++r)
      if (sgn(m(r, pc)) != 0) {
        sel = r;
        break;
      }
    if (sel == m.rows()) continue;
    if (sel != pr)
      for (std::size_t c = pc; c < m.cols(); ++c) std::swap(m(pr, c), m(sel, c));
    Rational inv = 1 / m(pr, pc);
    for (std::size_t c = pc; c < m.cols(); ++c) m(pr, c) *= inv;
    eliminate_column(m, pr, pc, parallel);
    pivots.push_back(pc);
    ++pr;
  }
  return pivots;
}

std::vector<std::size_t> rref_inplace(ExactMatrix& m) { return rref_inplace(m, true); }

std::size_t rank(const ExactMatrix& m) {
  ExactMatrix copy = m;
  return rref_inplace(copy).size();
}

ExactMatrix null_space(const ExactMatrix& m) {
  ExactMatrix r = m;
  std::vector<std::size_t> pivots = rref_inplace(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t pc : pivots) is_pivot[pc] = true;
  std::size_t nfree = m.cols() - pivots.size();
  ExactMatrix basis(m.cols(), nfree);
  std::size_t bcol = 0;
  for (std::size_t fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    basis(fc, bcol) = 1;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) basis(pivots[pi], bcol) = -r(pi, fc);
    ++bcol;
  }
  return basis;
}

std::optional<ExactMatrix> solve_linear(const ExactMatrix& m, const ExactMatrix& rhs) {
  if (rhs.cols() != 1 || rhs.rows() != m.rows()) throw std::invalid_argument("solve_linear shape mismatch");
  ExactMatrix aug = m.hstack(rhs);
  std::vector<std::size_t> pivots = rref_inplace(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // row (0 ... 0 | 1)
  ExactMatrix x(m.cols(), 1);
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) x(pivots[pi], 0) = aug(pi, m.cols());
  return x;
}

Rational determinant(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  ExactMatrix a = m;
  std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t pc = 0; pc < n; ++pc) {
    std::size_t sel = n;
    for (std::size_t r = pc; r < n; ++r)
      if (sgn(a(r, pc)) != 0) {
        sel = r;
        break;
      }
    if (sel == n) return Rational(0);
    if (sel != pc) {
      for (std::size_t c = pc; c < n; ++c) std::swap(a(pc, c), a(sel, c));
      det = -det;
    }
    det *= a(pc, pc);
    Rational inv = 1 / a(pc, pc);
    for (std::size_t r = pc + 1; r < n; ++r) {
      Rational f = a(r, pc) * inv;
      if (sgn(f) == 0) continue;
      for (std::size_t c = pc; c < n; ++c) a(r, c) -= f * a(pc, c);
    }
  }
  return det;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = m.rows();
  ExactMatrix aug = m.hstack(ExactMatrix::identity(n));
  std::vector<std::size_t> pivots = rref_inplace(aug);
  // A singular left half pushes pivots into the identity columns.
  if (pivots.size() != n || (n > 0 && pivots.back() >= n))
    throw std::invalid_argument("inverse of singular matrix");
  return aug.block(0, n, n, n);
}

}  // namespace srgeo
