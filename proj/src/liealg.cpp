#include "srgeo/liealg.hpp"

#include <sstream>
#include <stdexcept>

namespace srgeo {

namespace {

std::string idx3(const char* tag, int a, int b, int k) {
  std::ostringstream os;
  os << tag << "[" << a + 1 << "][" << b + 1 << "][" << k + 1 << "]";
  return os.str();
}

}  // namespace

int GradedLieGeometry::grade_of(int index) const {
  int start = 0;
  for (int j = 0; j < grades(); ++j) {
    start += grade_dims[j];
    if (index < start) return j;
  }
  throw std::out_of_range("frame index outside grading");
}

int GradedLieGeometry::grade_start(int j) const {
  int start = 0;
  for (int i = 0; i < j; ++i) start += grade_dims[i];
  return start;
}

Rational GradedLieGeometry::pair(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
  Rational acc = 0;
  for (int a = 0; a < n; ++a) {
    if (is_zero(u[a])) continue;
    for (int b = 0; b < n; ++b) acc += u[a] * gram(a, b) * v[b];
  }
  return acc;
}

GradedLieGeometry make_geometry(std::string name, std::vector<int> grade_dims,
                                std::vector<std::string> frame_names) {
  GradedLieGeometry g;
  g.name = std::move(name);
  g.grade_dims = std::move(grade_dims);
  g.n = 0;
  for (int d : g.grade_dims) g.n += d;
  g.c.assign(static_cast<std::size_t>(g.n) * g.n * g.n, Rational(0));
  g.gram = ExactMatrix::identity(g.n);
  g.frame_names = std::move(frame_names);
  if (g.frame_names.empty()) {
    for (int a = 0; a < g.n; ++a) g.frame_names.push_back("E" + std::to_string(a + 1));
  }
  if (static_cast<int>(g.frame_names.size()) != g.n)
    throw std::invalid_argument("frame name count does not match dimension");
  return g;
}

std::vector<std::string> validate(const GradedLieGeometry& geom) {
  std::vector<std::string> bad;
  const int n = geom.n;
  if (n <= 0) {
    bad.push_back("dimension must be positive");
    return bad;
  }
  int sum = 0;
  for (int d : geom.grade_dims) {
    if (d <= 0) bad.push_back("grading sizes must be positive");
    sum += d;
  }
  if (sum != n) bad.push_back("grading sizes do not sum to the dimension");
  if (geom.gram.rows() != static_cast<std::size_t>(n) || geom.gram.cols() != static_cast<std::size_t>(n))
    bad.push_back("gram matrix has wrong shape");
  if (!bad.empty()) return bad;

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (geom.cc(a, b, k) != -geom.cc(b, a, k)) {
          bad.push_back("antisymmetry fails at " + idx3("c", a, b, k));
        }

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int cdx = b + 1; cdx < n; ++cdx)
        for (int k = 0; k < n; ++k) {
          Rational acc = 0;
          for (int m = 0; m < n; ++m) {
            acc += geom.cc(a, b, m) * geom.cc(m, cdx, k);
            acc += geom.cc(b, cdx, m) * geom.cc(m, a, k);
            acc += geom.cc(cdx, a, m) * geom.cc(m, b, k);
          }
          if (!is_zero(acc))
            bad.push_back("Jacobi identity fails at triple (" + std::to_string(a + 1) + "," +
                          std::to_string(b + 1) + "," + std::to_string(cdx + 1) + ") component " +
                          std::to_string(k + 1));
        }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (geom.gram(a, b) != geom.gram(b, a)) bad.push_back("gram not symmetric");
      if (geom.grade_of(a) != geom.grade_of(b) && !is_zero(geom.gram(a, b)))
        bad.push_back("gram couples grades at entry (" + std::to_string(a + 1) + "," +
                      std::to_string(b + 1) + ")");
    }
  for (int k = 1; k <= n; ++k) {
    ExactMatrix lead = geom.gram.block(0, 0, k, k);
    if (determinant(lead) <= 0) {
      bad.push_back("gram is not positive definite (leading minor " + std::to_string(k) + ")");
      break;
    }
  }

  // Bracket conditions of the grading: [V^0, V^i] lands in V^0 + ... + V^{i+1}.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ga = geom.grade_of(a), gb = geom.grade_of(b);
      if (ga != 0 && gb != 0) continue;
      int i = (ga == 0) ? gb : ga;
      for (int k = 0; k < n; ++k)
        if (geom.grade_of(k) > i + 1 && !is_zero(geom.cc(a, b, k)))
          bad.push_back("grading bracket condition fails at " + idx3("c", a, b, k));
    }
  return bad;
}

Filtration filtration(const GradedLieGeometry& geom) {
  const int n = geom.n;
  const int h0 = geom.horizontal_dim();
  Filtration out;

  ExactMatrix base(h0, n);
  for (int i = 0; i < h0; ++i) base(i, i) = 1;
  Subspace level = Subspace::span_rows(base);
  out.levels.push_back(level);

  while (true) {
    // Next level: current plus brackets of horizontal frame vectors with a basis
    // of the current level.
    const ExactMatrix& rows = level.basis_rows();
    ExactMatrix brackets(h0 * rows.rows(), n);
    for (int a = 0; a < h0; ++a)
      for (std::size_t r = 0; r < rows.rows(); ++r)
        for (int k = 0; k < n; ++k) {
          Rational acc = 0;
          for (int b = 0; b < n; ++b) acc += rows(r, b) * geom.cc(a, b, k);
          brackets(a * rows.rows() + r, k) = acc;
        }
    Subspace next = Subspace::span_rows(rows.vstack(brackets));
    if (next.dim() == level.dim()) break;
    out.levels.push_back(next);
    level = next;
    if (level.dim() == static_cast<std::size_t>(n)) break;
  }

  out.bracket_generating = (out.levels.back().dim() == static_cast<std::size_t>(n));
  out.step = out.bracket_generating ? static_cast<int>(out.levels.size()) : 0;

  out.regular = out.bracket_generating;
  const int r = geom.grades() - 1;
  for (int j = 0; j <= r && out.regular; ++j) {
    int cut = geom.grade_start(j) + geom.grade_dims[j];
    ExactMatrix lead(cut, n);
    for (int i = 0; i < cut; ++i) lead(i, i) = 1;
    Subspace expected = Subspace::span_rows(lead);
    std::size_t li = std::min<std::size_t>(j, out.levels.size() - 1);
    if (!out.levels[li].equals(expected)) out.regular = false;
  }
  return out;
}

namespace {

/// <[E_a, E_b], E_k> under the gram matrix (block-diagonality makes this the
/// grade-of-k projection automatically).
Rational bracket_ip(const GradedLieGeometry& geom, int a, int b, int k) {
  Rational acc = 0;
  for (int m = 0; m < geom.n; ++m) acc += geom.cc(a, b, m) * geom.gram(m, k);
  return acc;
}

}  // namespace

Connection build_connection(const GradedLieGeometry& geom) {
  const int n = geom.n;
  Connection conn;
  conn.n = n;
  conn.gamma.assign(static_cast<std::size_t>(n) * n * n, Rational(0));

  for (int j = 0; j < geom.grades(); ++j) {
    const int s = geom.grade_start(j);
    const int d = geom.grade_dims[j];
    ExactMatrix gj = geom.gram.block(s, s, d, d);
    ExactMatrix gj_inv = inverse(gj);

    for (int a = 0; a < n; ++a) {
      const bool same = (geom.grade_of(a) == j);
      for (int bi = 0; bi < d; ++bi) {
        const int b = s + bi;
        // rhs[k] = 2 <nabla_{E_a} E_b, E_{s+k}> from the Koszul-type formulas.
        std::vector<Rational> rhs(d);
        for (int ki = 0; ki < d; ++ki) {
          const int k = s + ki;
          if (same) {
            rhs[ki] = bracket_ip(geom, a, b, k) - bracket_ip(geom, b, k, a) + bracket_ip(geom, k, a, b);
          } else {
            rhs[ki] = bracket_ip(geom, a, b, k) - bracket_ip(geom, a, k, b);
          }
        }
        // <nabla_{E_a} E_b, E_{s+k}> = sum_m gamma[a][b][s+m] gj[m][k]; invert the block.
        for (int mi = 0; mi < d; ++mi) {
          Rational acc = 0;
          for (int ki = 0; ki < d; ++ki) acc += gj_inv(mi, ki) * rhs[ki];
          conn.g(a, b, s + mi) = acc / 2;
        }
      }
    }
  }
  return conn;
}

std::vector<std::string> verify_connection(const GradedLieGeometry& geom, const Connection& conn) {
  std::vector<std::string> bad;
  const int n = geom.n;

  // Grade parallelism.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (geom.grade_of(b) != geom.grade_of(k) && !is_zero(conn.g(a, b, k)))
          bad.push_back("grade parallelism fails at " + idx3("gamma", a, b, k));

  // Metric compatibility (frame derivatives of the left-invariant gram vanish).
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cdx = 0; cdx < n; ++cdx) {
        Rational acc = 0;
        for (int k = 0; k < n; ++k)
          acc += conn.g(a, b, k) * geom.gram(k, cdx) + conn.g(a, cdx, k) * geom.gram(k, b);
        if (!is_zero(acc))
          bad.push_back("metric compatibility fails at " + idx3("pair", a, b, cdx));
      }

  auto tor_comp = [&](int a, int b, int k) -> Rational {
    return conn.g(a, b, k) - conn.g(b, a, k) - geom.cc(a, b, k);
  };

  // Within-grade torsion: the grade-j component of Tor(V^j, V^j) vanishes.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (geom.grade_of(a) != geom.grade_of(b)) continue;
      for (int k = 0; k < n; ++k)
        if (geom.grade_of(k) == geom.grade_of(a) && !is_zero(tor_comp(a, b, k)))
          bad.push_back("within-grade torsion fails at " + idx3("tor", a, b, k));
    }

  // Mixed symmetry: <Tor(Z,X),Y> = <Tor(Z,Y),X> for X,Y in a common grade, Z outside.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        if (geom.grade_of(b) != geom.grade_of(k)) continue;
        if (geom.grade_of(a) == geom.grade_of(b)) continue;
        Rational lhs = 0, rhs = 0;
        for (int m = 0; m < n; ++m) {
          lhs += tor_comp(a, b, m) * geom.gram(m, k);
          rhs += tor_comp(a, k, m) * geom.gram(m, b);
        }
        if (lhs != rhs) bad.push_back("mixed torsion symmetry fails at " + idx3("tor", a, b, k));
      }
  return bad;
}

int connection_solution_space_dim(const GradedLieGeometry& geom) {
  const int n = geom.n;
  int total = 0;

  // The homogeneous axiom system splits: gamma entries with b,k in grade j and
  // a in grade j couple only among themselves (metric + within-grade torsion),
  // and entries with a outside grade j couple only within the fixed pair (a, j)
  // (metric + mixed symmetry). Solve each block separately.

  for (int j = 0; j < geom.grades(); ++j) {
    const int s = geom.grade_start(j);
    const int d = geom.grade_dims[j];
    // Within-grade block: variables gamma[s+a][s+b][s+k], a,b,k in 0..d-1.
    {
      const int nv = d * d * d;
      auto vidx = [&](int a, int b, int k) { return (a * d + b) * d + k; };
      std::vector<std::vector<Rational>> rows;
      // Metric: sum_k (g[a][b][k] gram[k][c] + g[a][c][k] gram[k][b]) = 0.
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int cdx = 0; cdx < d; ++cdx) {
            std::vector<Rational> row(nv, Rational(0));
            for (int k = 0; k < d; ++k) {
              row[vidx(a, b, k)] += geom.gram(s + k, s + cdx);
              row[vidx(a, cdx, k)] += geom.gram(s + k, s + b);
            }
            rows.push_back(std::move(row));
          }
      // Torsion within grade (homogeneous part): g[a][b][k] - g[b][a][k] = 0.
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int k = 0; k < d; ++k) {
            std::vector<Rational> row(nv, Rational(0));
            row[vidx(a, b, k)] += 1;
            row[vidx(b, a, k)] -= 1;
            rows.push_back(std::move(row));
          }
      ExactMatrix sys(rows.size(), nv);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (int v = 0; v < nv; ++v) sys(r, v) = rows[r][v];
      total += static_cast<int>(null_space(sys).cols());
    }
    // Mixed blocks: for each a outside grade j, variables gamma[a][s+b][s+k].
    for (int a = 0; a < n; ++a) {
      if (geom.grade_of(a) == j) continue;
      const int nv = d * d;
      auto vidx = [&](int b, int k) { return b * d + k; };
      std::vector<std::vector<Rational>> rows;
      for (int b = 0; b < d; ++b)
        for (int cdx = 0; cdx < d; ++cdx) {
          std::vector<Rational> row(nv, Rational(0));
          for (int k = 0; k < d; ++k) {
            row[vidx(b, k)] += geom.gram(s + k, s + cdx);
            row[vidx(cdx, k)] += geom.gram(s + k, s + b);
          }
          rows.push_back(std::move(row));
        }
      // Mixed symmetry (homogeneous part; the gamma[b][a][*] terms vanish by
      // grade parallelism): sum_m g[a][b][m] gram[m][k] - g[a][k][m] gram[m][b] = 0.
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < d; ++k) {
          std::vector<Rational> row(nv, Rational(0));
          for (int m = 0; m < d; ++m) {
            row[vidx(b, m)] += geom.gram(s + m, s + k);
            row[vidx(k, m)] -= geom.gram(s + m, s + b);
          }
          rows.push_back(std::move(row));
        }
      ExactMatrix sys(rows.size(), nv);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (int v = 0; v < nv; ++v) sys(r, v) = rows[r][v];
      total += static_cast<int>(null_space(sys).cols());
    }
  }
  return total;
}

TorsionData torsion(const GradedLieGeometry& geom, const Connection& conn) {
  const int n = geom.n;
  TorsionData out;
  out.n = n;
  out.tor.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        out.t(a, b, k) = conn.g(a, b, k) - conn.g(b, a, k) - geom.cc(a, b, k);
  return out;
}

CurvatureData curvature(const GradedLieGeometry& geom, const Connection& conn) {
  const int n = geom.n;
  CurvatureData out;
  out.n = n;
  out.riem.assign(static_cast<std::size_t>(n) * n * n * n, Rational(0));
  out.rm.assign(out.riem.size(), Rational(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cdx = 0; cdx < n; ++cdx)
        for (int d = 0; d < n; ++d) {
          Rational acc = 0;
          for (int k = 0; k < n; ++k) {
            acc += conn.g(b, cdx, k) * conn.g(a, k, d);
            acc -= conn.g(a, cdx, k) * conn.g(b, k, d);
          }
          for (int m = 0; m < n; ++m) acc -= geom.cc(a, b, m) * conn.g(m, cdx, d);
          out.riem[((static_cast<std::size_t>(a) * n + b) * n + cdx) * n + d] = acc;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cdx = 0; cdx < n; ++cdx)
        for (int d = 0; d < n; ++d) {
          Rational acc = 0;
          for (int e = 0; e < n; ++e) acc += out.r(a, b, cdx, e) * geom.gram(e, d);
          out.rm[((static_cast<std::size_t>(a) * n + b) * n + cdx) * n + d] = acc;
        }
  return out;
}

std::vector<Rational> covariant_torsion_derivative(const GradedLieGeometry& geom,
                                                   const Connection& conn,
                                                   const TorsionData& tor) {
  const int n = geom.n;
  std::vector<Rational> out(static_cast<std::size_t>(n) * n * n * n, Rational(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cdx = 0; cdx < n; ++cdx)
        for (int d = 0; d < n; ++d) {
          Rational acc = 0;
          for (int k = 0; k < n; ++k) {
            acc += tor.t(b, cdx, k) * conn.g(a, k, d);
            acc -= conn.g(a, b, k) * tor.t(k, cdx, d);
            acc -= conn.g(a, cdx, k) * tor.t(b, k, d);
          }
          out[((static_cast<std::size_t>(a) * n + b) * n + cdx) * n + d] = acc;
        }
  return out;
}

std::vector<Rational> step_torsion(const GradedLieGeometry& geom, const TorsionData& tor, int m) {
  if (m < 1) throw std::invalid_argument("step torsion needs m >= 1");
  const int n = geom.n;
  std::vector<Rational> cur = tor.tor;  // m = 1: indices (z1, z2, out)
  for (int step = 2; step <= m; ++step) {
    // cur has step+1 indices (step arguments, one output); wrap in Tor(z1, .).
    const std::size_t nargs = cur.size() / n;
    std::vector<Rational> next(cur.size() * n, Rational(0));
    for (int z1 = 0; z1 < n; ++z1)
      for (std::size_t args = 0; args < nargs; ++args)
        for (int d = 0; d < n; ++d) {
          Rational acc = 0;
          for (int k = 0; k < n; ++k) acc += cur[args * n + k] * tor.t(z1, k, d);
          next[(static_cast<std::size_t>(z1) * nargs + args) * n + d] = acc;
        }
    cur = std::move(next);
  }
  return cur;
}

ExactMatrix horizontal_gram_inverse(const GradedLieGeometry& geom) {
  const int h0 = geom.horizontal_dim();
  return inverse(geom.gram.block(0, 0, h0, h0));
}

}  // namespace srgeo
