#include "srgeo/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace srgeo {

namespace {

int skew_dim(int s) { return s * (s - 1) / 2; }

/// Horizontal block of the Gram matrix.
ExactMatrix horizontal_gram(const GradedLieGeometry& geom) {
  const int h0 = geom.horizontal_dim();
  ExactMatrix g(h0, h0);
  for (int i = 0; i < h0; ++i)
    for (int j = 0; j < h0; ++j) g(i, j) = geom.ip(i, j);
  return g;
}

/// V¹-valued torsion form on a frame index subset: pencil[u](i,j) =
/// V¹-component u of Tor(E_{idx[i]}, E_{idx[j]}).
std::vector<ExactMatrix> v1_pencil(const GradedLieGeometry& geom, const TorsionData& tor,
                                   const std::vector<int>& idx) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  const int s = static_cast<int>(idx.size());
  std::vector<ExactMatrix> pencil(v1, ExactMatrix(s, s));
  for (int u = 0; u < v1; ++u)
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) pencil[u](i, j) = tor.t(idx[i], idx[j], h0 + u);
  return pencil;
}

std::vector<int> all_horizontal_indices(const GradedLieGeometry& geom) {
  std::vector<int> idx(geom.horizontal_dim());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

/// Homogeneous linear system over a flat unknown vector; rows collected then
/// solved exactly.
class ConstraintSystem {
 public:
  explicit ConstraintSystem(int unknowns) : unknowns_(unknowns) {}

  std::vector<Rational>& new_row() {
    rows_.emplace_back(unknowns_, Rational(0));
    return rows_.back();
  }

  ExactMatrix null_basis() const {
    ExactMatrix m(rows_.size(), unknowns_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (int c = 0; c < unknowns_; ++c) m(r, c) = rows_[r][c];
    return null_space(m);
  }

  int nullity() const { return static_cast<int>(null_basis().cols()); }

 private:
  int unknowns_;
  std::vector<std::vector<Rational>> rows_;
};

/// Adds skew-adjointness of the operator unknown A (s x s, flat index r*s + c,
/// offset into the unknown vector): AᵀG + GA = 0.
void add_skew_adjoint_rows(ConstraintSystem& sys, const ExactMatrix& g, int s, int offset = 0) {
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {  // the form is symmetric in (i,j)
      auto& row = sys.new_row();
      for (int c = 0; c < s; ++c) {
        row[offset + c * s + i] += g(c, j);
        row[offset + c * s + j] += g(i, c);
      }
    }
}

/// Adds Tor(A·,·) + Tor(·,A·) = 0 against one form matrix t: tA + AᵀT = 0.
void add_form_anticommute_rows(ConstraintSystem& sys, const ExactMatrix& t, int s,
                               int offset = 0) {
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      auto& row = sys.new_row();
      for (int c = 0; c < s; ++c) {
        row[offset + c * s + j] += t(i, c);
        row[offset + c * s + i] += t(c, j);
      }
    }
}

/// dim of skew-adjoint operators on the span of `idx` anticommuting with the
/// V¹ torsion form there.
int block_commutant_dim(const GradedLieGeometry& geom, const TorsionData& tor,
                        const std::vector<int>& idx) {
  const int s = static_cast<int>(idx.size());
  if (s == 0) return 0;
  ExactMatrix g(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) g(i, j) = geom.ip(idx[i], idx[j]);
  ConstraintSystem sys(s * s);
  add_skew_adjoint_rows(sys, g, s);
  for (const ExactMatrix& t : v1_pencil(geom, tor, idx)) add_form_anticommute_rows(sys, t, s);
  return sys.nullity();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

ExactMatrix unit_row(int ambient, int index) {
  ExactMatrix row(1, ambient);
  row(0, index) = Rational(1);
  return row;
}

Subspace span_of_indices(int ambient, const std::vector<int>& idx) {
  ExactMatrix rows(idx.size(), ambient);
  for (std::size_t r = 0; r < idx.size(); ++r) rows(r, idx[r]) = Rational(1);
  return Subspace::span_rows(rows);
}

/// Span in Q^{v1} of the V¹ torsion values over all pairs from `idx`.
Subspace v_image_of(const GradedLieGeometry& geom, const TorsionData& tor,
                    const std::vector<int>& idx) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  std::vector<std::vector<Rational>> vals;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      std::vector<Rational> v(v1, Rational(0));
      bool nonzero = false;
      for (int u = 0; u < v1; ++u) {
        v[u] = tor.t(idx[i], idx[j], h0 + u);
        if (v[u] != 0) nonzero = true;
      }
      if (nonzero) vals.push_back(std::move(v));
    }
  ExactMatrix rows(vals.size(), v1);
  for (std::size_t r = 0; r < vals.size(); ++r)
    for (int u = 0; u < v1; ++u) rows(r, u) = vals[r][u];
  return Subspace::span_rows(rows);
}

/// Span of V¹ torsion values over basis pairs of an arbitrary subspace.
Subspace v_image_of_subspace(const GradedLieGeometry& geom, const TorsionData& tor,
                             const Subspace& space) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  const ExactMatrix& basis = space.basis_rows();
  std::vector<std::vector<Rational>> vals;
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = i + 1; j < basis.rows(); ++j) {
      std::vector<Rational> v(v1, Rational(0));
      bool nonzero = false;
      for (int u = 0; u < v1; ++u) {
        Rational acc(0);
        for (int a = 0; a < h0; ++a)
          for (int b = 0; b < h0; ++b) acc += basis(i, a) * basis(j, b) * tor.t(a, b, h0 + u);
        v[u] = acc;
        if (acc != 0) nonzero = true;
      }
      if (nonzero) vals.push_back(std::move(v));
    }
  ExactMatrix rows(vals.size(), v1);
  for (std::size_t r = 0; r < vals.size(); ++r)
    for (int u = 0; u < v1; ++u) rows(r, u) = vals[r][u];
  return Subspace::span_rows(rows);
}

bool images_form_direct_sum(const std::vector<Subspace>& images, int v1) {
  std::size_t total = 0;
  std::size_t stacked_rows = 0;
  for (const Subspace& s : images) {
    total += s.dim();
    stacked_rows += s.dim();
  }
  ExactMatrix stacked(stacked_rows, v1);
  std::size_t r = 0;
  for (const Subspace& s : images)
    for (std::size_t i = 0; i < s.dim(); ++i, ++r)
      for (int u = 0; u < v1; ++u) stacked(r, u) = s.basis_rows()(i, u);
  return Subspace::span_rows(stacked).dim() == total;
}

}  // namespace

int crude_bound(const GradedLieGeometry& geom) {
  Filtration filt = filtration(geom);
  if (!filt.bracket_generating)
    throw std::invalid_argument("crude_bound requires a bracket-generating geometry");
  const int k = geom.horizontal_dim();
  return geom.vertical_dim() + k + skew_dim(k);
}

Subspace torsion_kernel(const GradedLieGeometry& geom, const TorsionData& tor) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  ExactMatrix stacked(static_cast<std::size_t>(h0) * v1, h0);
  for (int j = 0; j < h0; ++j)
    for (int u = 0; u < v1; ++u)
      for (int a = 0; a < h0; ++a) stacked(j * v1 + u, a) = tor.t(a, j, h0 + u);
  return Subspace::span_cols(null_space(stacked));
}

TorsionDecomposition torsion_decomposition(const GradedLieGeometry& geom,
                                           const TorsionData& tor) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  TorsionDecomposition dec;
  dec.kernel = torsion_kernel(geom, tor);

  if (dec.kernel.dim() == static_cast<std::size_t>(h0)) {
    // No V¹ torsion at all: the kernel is everything and there are no blocks.
    dec.strong = true;
    dec.frame_aligned = true;
    for (int a = 0; a < h0; ++a) dec.kernel_indices.push_back(a);
    return dec;
  }

  std::vector<int> kernel_idx;
  std::vector<int> rest;
  for (int a = 0; a < h0; ++a) {
    if (dec.kernel.contains(unit_row(h0, a)))
      kernel_idx.push_back(a);
    else
      rest.push_back(a);
  }

  bool aligned = kernel_idx.size() == dec.kernel.dim();
  if (aligned) {
    for (int a : rest)
      for (int b : kernel_idx)
        if (geom.ip(a, b) != 0) aligned = false;
  }

  if (!aligned) {
    // Fall back to a single block carrying the whole Gram-orthogonal
    // complement of the kernel.
    dec.frame_aligned = false;
    ExactMatrix g(h0, h0);
    for (int i = 0; i < h0; ++i)
      for (int j = 0; j < h0; ++j) g(i, j) = geom.ip(i, j);
    Subspace block = dec.kernel.orthogonal_complement(g);
    dec.blocks.push_back(block);
    dec.v_images.push_back(v_image_of_subspace(geom, tor, block));
    dec.strong = true;  // a single block always admits the vertical splitting
    return dec;
  }

  dec.kernel_indices = kernel_idx;
  UnionFind uf(h0);
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      const int a = rest[i];
      const int b = rest[j];
      bool coupled = geom.ip(a, b) != 0;
      for (int u = 0; !coupled && u < v1; ++u) coupled = tor.t(a, b, h0 + u) != 0;
      if (coupled) uf.unite(a, b);
    }

  std::vector<int> roots;
  for (int a : rest)
    if (uf.find(a) == a) roots.push_back(a);
  std::sort(roots.begin(), roots.end());
  for (int root : roots) {
    std::vector<int> members;
    for (int a : rest)
      if (uf.find(a) == root) members.push_back(a);
    dec.block_indices.push_back(members);
    dec.blocks.push_back(span_of_indices(h0, members));
    dec.v_images.push_back(v_image_of(geom, tor, members));
  }
  dec.strong = images_form_direct_sum(dec.v_images, v1);
  return dec;
}

std::vector<std::string> verify_decomposition(const GradedLieGeometry& geom,
                                              const TorsionData& tor,
                                              const TorsionDecomposition& dec) {
  std::vector<std::string> out;
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  ExactMatrix g(h0, h0);
  for (int i = 0; i < h0; ++i)
    for (int j = 0; j < h0; ++j) g(i, j) = geom.ip(i, j);

  std::vector<Subspace> parts;
  parts.push_back(dec.kernel);
  for (const Subspace& b : dec.blocks) parts.push_back(b);

  std::size_t total = 0;
  Subspace sum(h0);
  for (const Subspace& p : parts) {
    total += p.dim();
    sum = sum.sum(p);
  }
  if (total != static_cast<std::size_t>(h0) || sum.dim() != static_cast<std::size_t>(h0))
    out.push_back("kernel and blocks do not form a direct sum of H");

  auto gram_orthogonal = [&](const Subspace& x, const Subspace& y) {
    for (std::size_t i = 0; i < x.dim(); ++i)
      for (std::size_t j = 0; j < y.dim(); ++j) {
        Rational acc(0);
        for (int a = 0; a < h0; ++a)
          for (int b = 0; b < h0; ++b) acc += x.basis_rows()(i, a) * g(a, b) * y.basis_rows()(j, b);
        if (acc != 0) return false;
      }
    return true;
  };
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!gram_orthogonal(parts[i], parts[j]))
        out.push_back("two components are not Gram-orthogonal");

  auto cross_torsion_zero = [&](const Subspace& x, const Subspace& y) {
    for (std::size_t i = 0; i < x.dim(); ++i)
      for (std::size_t j = 0; j < y.dim(); ++j)
        for (int u = 0; u < v1; ++u) {
          Rational acc(0);
          for (int a = 0; a < h0; ++a)
            for (int b = 0; b < h0; ++b)
              acc += x.basis_rows()(i, a) * y.basis_rows()(j, b) * tor.t(a, b, h0 + u);
          if (acc != 0) return false;
        }
    return true;
  };
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!cross_torsion_zero(parts[i], parts[j]))
        out.push_back("cross-component torsion has a nonzero V1 part");

  if (dec.v_images.size() != dec.blocks.size()) {
    out.push_back("v_images and blocks differ in count");
  } else {
    for (std::size_t i = 0; i < dec.blocks.size(); ++i)
      if (!dec.v_images[i].equals(v_image_of_subspace(geom, tor, dec.blocks[i])))
        out.push_back("a recorded v_image does not match the recomputed span");
  }
  if (dec.strong != images_form_direct_sum(dec.v_images, v1))
    out.push_back("strong flag does not match the direct-sum test");
  return out;
}

int commutant_bound(const GradedLieGeometry& geom, const TorsionData& tor,
                    const TorsionDecomposition& dec) {
  if (dec.frame_aligned && dec.strong) {
    int result = skew_dim(static_cast<int>(dec.kernel.dim()));
    for (const std::vector<int>& idx : dec.block_indices)
      result += block_commutant_dim(geom, tor, idx);
    return result;
  }
  return block_commutant_dim(geom, tor, all_horizontal_indices(geom));
}

bool v1_torsion_endomorphisms_vanish(const GradedLieGeometry& geom, const TorsionData& tor) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  for (int u = 0; u < v1; ++u)
    for (int x = 0; x < h0; ++x)
      for (int d = 0; d < h0; ++d)
        if (tor.t(h0 + u, x, d) != 0) return false;
  return true;
}

int eigen_commutant_bound(const GradedLieGeometry& geom, const TorsionData& tor) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  ConstraintSystem sys(h0 * h0);
  add_skew_adjoint_rows(sys, horizontal_gram(geom), h0);
  // Commutation with each vertical torsion endomorphism T_U of H.
  for (int u = 0; u < v1; ++u) {
    ExactMatrix m(h0, h0);
    for (int d = 0; d < h0; ++d)
      for (int x = 0; x < h0; ++x) m(d, x) = tor.t(h0 + u, x, d);
    for (int i = 0; i < h0; ++i)
      for (int j = 0; j < h0; ++j) {
        auto& row = sys.new_row();
        for (int c = 0; c < h0; ++c) {
          row[i * h0 + c] += m(c, j);
          row[c * h0 + j] -= m(i, c);
        }
      }
  }
  for (const ExactMatrix& t : v1_pencil(geom, tor, all_horizontal_indices(geom)))
    add_form_anticommute_rows(sys, t, h0);
  return sys.nullity();
}

int derivation_bound(const GradedLieGeometry& geom, const TorsionData& tor) {
  const int h0 = geom.horizontal_dim();
  const int v1 = geom.grades() > 1 ? geom.grade_dims[1] : 0;
  const int a_count = h0 * h0;
  ConstraintSystem sys(a_count + v1 * v1);
  add_skew_adjoint_rows(sys, horizontal_gram(geom), h0);
  std::vector<ExactMatrix> pencil = v1_pencil(geom, tor, all_horizontal_indices(geom));
  for (int u = 0; u < v1; ++u)
    for (int a = 0; a < h0; ++a)
      for (int b = a + 1; b < h0; ++b) {
        auto& row = sys.new_row();
        for (int w = 0; w < v1; ++w) row[a_count + u * v1 + w] += pencil[w](a, b);
        for (int c = 0; c < h0; ++c) {
          row[c * h0 + a] -= pencil[u](c, b);
          row[c * h0 + b] -= pencil[u](a, c);
        }
      }
  ExactMatrix basis = sys.null_basis();
  // Dimension of the projection onto the A factor: rank of the A rows.
  ExactMatrix a_rows(a_count, basis.cols());
  for (int r = 0; r < a_count; ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) a_rows(r, c) = basis(r, c);
  return static_cast<int>(rank(a_rows));
}

std::optional<int> stabilizer_contribution(const TorsionDecomposition& dec) {
  for (const Subspace& b : dec.blocks)
    if (b.dim() > 2) return std::nullopt;
  return 0;
}

std::vector<HigherStepBound> higher_step_bounds(const GradedLieGeometry& geom,
                                                const TorsionData& tor) {
  Filtration filt = filtration(geom);
  if (!filt.regular)
    throw std::invalid_argument("higher_step_bounds requires a regular grading");
  const int h0 = geom.horizontal_dim();
  std::vector<HigherStepBound> out;
  for (int m = 1; m + 1 < geom.grades(); ++m) {
    if (geom.grade_dims[m] != 1 || geom.grade_dims[m + 1] != 1) continue;
    const int uidx = geom.grade_start(m);
    const int didx = geom.grade_start(m + 1);
    ExactMatrix rows(1, h0);
    for (int x = 0; x < h0; ++x) rows(0, x) = tor.t(uidx, x, didx);
    HigherStepBound hb;
    hb.m = m;
    hb.l = Subspace::span_cols(null_space(rows));
    hb.dim_l = static_cast<int>(hb.l.dim());
    hb.bound = skew_dim(hb.dim_l);
    out.push_back(std::move(hb));
  }
  return out;
}

int adjoint_isotropy_dim(const GradedLieGeometry& geom) {
  const int n = geom.n;
  const int h0 = geom.horizontal_dim();
  ConstraintSystem sys(n);
  // ad_A preserves each grade: the E_d component of [A, E_q] vanishes whenever
  // d and q lie in different grades.
  for (int q = 0; q < n; ++q)
    for (int d = 0; d < n; ++d) {
      if (geom.grade_of(d) == geom.grade_of(q)) continue;
      auto& row = sys.new_row();
      for (int p = 0; p < n; ++p) row[p] = geom.cc(p, q, d);
    }
  // ad_A skew on H: <[A, E_i], E_j> + <E_i, [A, E_j]> = 0.
  for (int i = 0; i < h0; ++i)
    for (int j = i; j < h0; ++j) {
      auto& row = sys.new_row();
      for (int p = 0; p < n; ++p) {
        Rational acc(0);
        for (int d = 0; d < n; ++d) acc += geom.cc(p, i, d) * geom.ip(d, j) + geom.cc(p, j, d) * geom.ip(i, d);
        row[p] = acc;
      }
    }
  ExactMatrix basis = sys.null_basis();
  // Quotient by the central directions inside the solution space: the induced
  // field is A^L - A^R, zero exactly when ad_A = 0.
  ExactMatrix ad_rows(n * n, basis.cols());
  for (std::size_t col = 0; col < basis.cols(); ++col)
    for (int q = 0; q < n; ++q)
      for (int d = 0; d < n; ++d) {
        Rational acc(0);
        for (int p = 0; p < n; ++p) acc += basis(p, col) * geom.cc(p, q, d);
        ad_rows(q * n + d, col) = acc;
      }
  return static_cast<int>(rank(ad_rows));
}

BoundReport aggregate_bounds(const GradedLieGeometry& geom, const TorsionData& tor,
                             int certified_isotropy_dim) {
  BoundReport rep;
  const int k = geom.horizontal_dim();
  rep.crude = crude_bound(geom);
  rep.crude_isotropy = skew_dim(k);

  TorsionDecomposition dec = torsion_decomposition(geom, tor);
  if (dec.kernel.dim() == 0) rep.notes.push_back("strongly non-integrable");
  rep.notes.push_back(dec.strong ? "strong torsion decomposition"
                                 : "weak torsion decomposition");

  rep.commutant = commutant_bound(geom, tor, dec);
  rep.eigen_vacuous = v1_torsion_endomorphisms_vanish(geom, tor);
  rep.eigen_commutant = rep.eigen_vacuous ? *rep.commutant : eigen_commutant_bound(geom, tor);
  if (rep.eigen_vacuous) rep.notes.push_back("eigen-commutant vacuous (no vertical torsion endomorphisms)");
  rep.derivation = derivation_bound(geom, tor);
  rep.stabilizer = stabilizer_contribution(dec);
  rep.notes.push_back(rep.stabilizer.has_value() ? "stabilizer discrete (all blocks of dim <= 2)"
                                                 : "stabilizer unknown (a block has dim >= 3)");

  Filtration filt = filtration(geom);
  if (filt.regular && geom.grades() > 2)
    rep.higher_steps = higher_step_bounds(geom, tor);
  else if (!filt.regular)
    rep.notes.push_back("higher-step bounds skipped (grading not regular)");

  std::vector<std::pair<int, std::string>> candidates;
  candidates.emplace_back(rep.crude_isotropy, "crude skew dimension");
  candidates.emplace_back(rep.derivation, "derivation bound");
  if (rep.stabilizer.has_value()) {
    candidates.emplace_back(*rep.commutant + *rep.stabilizer, "commutant bound");
    candidates.emplace_back(*rep.eigen_commutant + *rep.stabilizer, "eigen-commutant bound");
  }
  for (const HigherStepBound& hb : rep.higher_steps)
    candidates.emplace_back(hb.bound, "higher-step bound (m=" + std::to_string(hb.m) + ", regular fields)");

  rep.isotropy_upper = candidates.front().first;
  for (const auto& [value, tag] : candidates) rep.isotropy_upper = std::min(rep.isotropy_upper, value);
  for (const auto& [value, tag] : candidates)
    if (value == rep.isotropy_upper) rep.notes.push_back("isotropy bound achieved by: " + tag);

  rep.total_upper = geom.n + rep.isotropy_upper;
  rep.total_lower = geom.n + certified_isotropy_dim;
  rep.exact = rep.total_upper == rep.total_lower;
  if (rep.exact) rep.notes.push_back("exact dimension determined");
  return rep;
}

}  // namespace srgeo
