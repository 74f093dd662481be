#include "srgeo/coordfield.hpp"

#include <random>
#include <stdexcept>

namespace srgeo {

namespace {

/// Determinant of the submatrix given by the listed rows and columns,
/// by expansion along the first listed row. Frame sizes are small.
SymExpr sym_det(const std::vector<std::vector<SymExpr>>& m, const std::vector<int>& rows,
                const std::vector<int>& cols) {
  if (rows.empty()) {
    const RingSpec* spec = nullptr;
    if (!m.empty() && !m[0].empty()) spec = m[0][0].spec();
    return SymExpr::constant(spec, Rational(1));
  }
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  SymExpr acc;
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const SymExpr& pivot = m[rows[0]][cols[j]];
    if (pivot.is_zero()) continue;
    std::vector<int> sub_cols;
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != j) sub_cols.push_back(cols[t]);
    SymExpr term = pivot * sym_det(m, sub_rows, sub_cols);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

}  // namespace

SymExpr CoordinateGeometry::dcoord(const SymExpr& e, int i) const {
  if (is_angle[i]) {
    const auto& pr = ring->circle_pairs[coord_pair[i]];
    return e.derivative_circle(pr.first, pr.second);
  }
  return e.derivative_var(coord_var[i]);
}

SymExpr CoordinateGeometry::apply_field(const FrameVectorField& A, const SymExpr& f) const {
  SymExpr acc;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (A.coord[i].is_zero()) continue;
    acc += A.coord[i] * dcoord(f, static_cast<int>(i));
  }
  return acc;
}

SymExpr CoordinateGeometry::apply_frame_field(int a, const SymExpr& f) const {
  SymExpr acc;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (frame[a][i].is_zero()) continue;
    acc += frame[a][i] * dcoord(f, static_cast<int>(i));
  }
  return acc;
}

FrameVectorField CoordinateGeometry::from_coord(std::vector<SymExpr> comps) const {
  FrameVectorField f;
  f.coord = std::move(comps);
  f.frame.assign(n(), SymExpr(ring.get()));
  for (int a = 0; a < n(); ++a) {
    SymExpr acc;
    for (std::size_t i = 0; i < coords.size(); ++i) acc += f.coord[i] * frame_inv[i][a];
    f.frame[a] = acc;
  }
  return f;
}

FrameVectorField CoordinateGeometry::from_frame(std::vector<SymExpr> comps) const {
  FrameVectorField f;
  f.frame = std::move(comps);
  f.coord.assign(coords.size(), SymExpr(ring.get()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    SymExpr acc;
    for (int a = 0; a < n(); ++a) acc += f.frame[a] * frame[a][i];
    f.coord[i] = acc;
  }
  return f;
}

FrameVectorField CoordinateGeometry::frame_field(int a) const {
  FrameVectorField f;
  f.coord = frame[a];
  f.frame.assign(n(), SymExpr(ring.get()));
  f.frame[a] = SymExpr::constant(ring.get(), Rational(1));
  return f;
}

SymExpr CoordinateGeometry::pair(const FrameVectorField& A, const FrameVectorField& B) const {
  SymExpr acc;
  for (int a = 0; a < n(); ++a) {
    if (A.frame[a].is_zero()) continue;
    for (int b = 0; b < n(); ++b) {
      if (srgeo::is_zero(lie.gram(a, b))) continue;
      acc += A.frame[a] * B.frame[b] * lie.gram(a, b);
    }
  }
  return acc;
}

CoordinateGeometry make_coordinate_geometry(std::string name,
                                            std::vector<std::string> coords,
                                            std::vector<bool> is_angle,
                                            std::vector<int> grade_dims,
                                            std::vector<std::string> frame_names,
                                            const std::vector<std::vector<std::string>>& frame_exprs,
                                            ExactMatrix gram) {
  CoordinateGeometry g;
  g.ring = std::make_shared<RingSpec>();
  g.name = name;
  g.coords = std::move(coords);
  g.is_angle = std::move(is_angle);
  const int N = static_cast<int>(g.coords.size());
  if (static_cast<int>(g.is_angle.size()) != N)
    throw std::invalid_argument("angle flag count does not match coordinates");

  g.coord_var.assign(N, -1);
  g.coord_pair.assign(N, -1);
  for (int i = 0; i < N; ++i) {
    if (g.is_angle[i]) {
      int ci = g.ring->nvars();
      g.ring->var_names.push_back("c_" + g.coords[i]);
      g.ring->var_names.push_back("s_" + g.coords[i]);
      g.coord_pair[i] = static_cast<int>(g.ring->circle_pairs.size());
      g.ring->circle_pairs.emplace_back(ci, ci + 1);
      g.ring->angle_names.push_back(g.coords[i]);
    } else {
      g.coord_var[i] = g.ring->nvars();
      g.poly_vars[g.coords[i]] = g.coord_var[i];
      g.ring->var_names.push_back(g.coords[i]);
    }
  }

  if (static_cast<int>(frame_exprs.size()) != N)
    throw std::invalid_argument("frame must be square: need one field per coordinate");
  g.frame.assign(N, std::vector<SymExpr>(N));
  for (int a = 0; a < N; ++a) {
    if (static_cast<int>(frame_exprs[a].size()) != N)
      throw std::invalid_argument("frame field " + std::to_string(a + 1) + " has wrong component count");
    for (int i = 0; i < N; ++i)
      g.frame[a][i] = parse_expression(g.ring.get(), g.poly_vars, frame_exprs[a][i]);
  }

  std::vector<int> all(N);
  for (int i = 0; i < N; ++i) all[i] = i;
  SymExpr det = sym_det(g.frame, all, all);
  if (!det.is_constant() || srgeo::is_zero(det.constant_value()))
    throw std::invalid_argument("frame determinant must reduce to a nonzero constant, got " + det.str());
  Rational d0 = det.constant_value();

  g.frame_inv.assign(N, std::vector<SymExpr>(N));
  for (int i = 0; i < N; ++i)
    for (int a = 0; a < N; ++a) {
      std::vector<int> rows, cols;
      for (int r = 0; r < N; ++r)
        if (r != a) rows.push_back(r);
      for (int c = 0; c < N; ++c)
        if (c != i) cols.push_back(c);
      SymExpr minor = sym_det(g.frame, rows, cols);
      Rational sign = ((a + i) % 2 == 0) ? Rational(1) : Rational(-1);
      g.frame_inv[i][a] = minor * (sign / d0);
    }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      SymExpr acc;
      for (int i = 0; i < N; ++i) acc += g.frame[a][i] * g.frame_inv[i][b];
      SymExpr want = (a == b) ? SymExpr::constant(g.ring.get(), Rational(1)) : SymExpr(g.ring.get());
      if (acc != want) throw std::logic_error("frame inversion failed self-check");
    }

  g.lie = make_geometry(std::move(name), std::move(grade_dims), std::move(frame_names));
  if (g.lie.n != N) throw std::invalid_argument("grading does not sum to the chart dimension");
  if (gram.rows() == 0) gram = ExactMatrix::identity(N);
  g.lie.gram = std::move(gram);

  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      FrameVectorField br = bracket(g, g.frame_field(a), g.frame_field(b));
      for (int k = 0; k < N; ++k) {
        if (!br.frame[k].is_constant())
          throw std::invalid_argument("structure function [" + g.lie.frame_names[a] + "," +
                                      g.lie.frame_names[b] + "] is not constant: " +
                                      br.frame[k].str());
        Rational v = br.frame[k].constant_value();
        g.lie.cc(a, b, k) = v;
        g.lie.cc(b, a, k) = -v;
      }
    }

  std::vector<std::string> bad = validate(g.lie);
  if (!bad.empty()) throw std::invalid_argument("invalid geometry: " + bad.front());
  return g;
}

FrameVectorField bracket(const CoordinateGeometry& geom, const FrameVectorField& A,
                         const FrameVectorField& B) {
  std::vector<SymExpr> out(geom.coords.size());
  for (std::size_t i = 0; i < geom.coords.size(); ++i)
    out[i] = geom.apply_field(A, B.coord[i]) - geom.apply_field(B, A.coord[i]);
  return geom.from_coord(std::move(out));
}

namespace {

/// Condition slot values for the Killing equations of K, in a fixed order.
/// weak: HM preservation + horizontal metric; strong adds VM preservation;
/// regular adds per-grade preservation of the vertical layers.
std::vector<SymExpr> killing_condition_values(const CoordinateGeometry& geom,
                                              const FrameVectorField& K, KillingMode mode,
                                              std::vector<std::string>* labels) {
  const int n = geom.n();
  const int h0 = geom.lie.horizontal_dim();
  std::vector<FrameVectorField> bk(n);
  for (int a = 0; a < n; ++a) bk[a] = bracket(geom, K, geom.frame_field(a));

  std::vector<SymExpr> vals;
  auto push = [&](SymExpr e, const std::string& label) {
    vals.push_back(std::move(e));
    if (labels) labels->push_back(label);
  };

  for (int i = 0; i < h0; ++i)
    for (int v = h0; v < n; ++v)
      push(bk[i].frame[v], "[K," + geom.lie.frame_names[i] + "] has a " +
                               geom.lie.frame_names[v] + " component");
  for (int i = 0; i < h0; ++i)
    for (int j = i; j < h0; ++j)
      push(geom.pair(bk[i], geom.frame_field(j)) + geom.pair(geom.frame_field(i), bk[j]),
           "metric condition on (" + geom.lie.frame_names[i] + "," + geom.lie.frame_names[j] + ")");
  if (mode == KillingMode::strong || mode == KillingMode::regular)
    for (int u = h0; u < n; ++u)
      for (int h = 0; h < h0; ++h)
        push(bk[u].frame[h], "[K," + geom.lie.frame_names[u] + "] has a " +
                                 geom.lie.frame_names[h] + " component");
  if (mode == KillingMode::regular)
    for (int b = h0; b < n; ++b)
      for (int k = h0; k < n; ++k) {
        if (geom.lie.grade_of(b) == geom.lie.grade_of(k)) continue;
        push(bk[b].frame[k], "[K," + geom.lie.frame_names[b] + "] crosses grades into " +
                                 geom.lie.frame_names[k]);
      }
  return vals;
}

}  // namespace

KillingCheckResult killing_check(const CoordinateGeometry& geom, const FrameVectorField& K) {
  KillingCheckResult out;
  auto holds = [&](KillingMode mode, std::vector<std::string>* report) {
    std::vector<std::string> labels;
    std::vector<SymExpr> vals = killing_condition_values(geom, K, mode, &labels);
    bool ok = true;
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (!vals[i].is_zero()) {
        ok = false;
        if (report) report->push_back(labels[i] + ": " + vals[i].str());
      }
    return ok;
  };
  out.weak = holds(KillingMode::weak, nullptr);
  out.strong = out.weak && holds(KillingMode::strong, nullptr);
  out.regular = out.strong && holds(KillingMode::regular, nullptr);
  KillingMode strongest = out.strong ? KillingMode::regular
                                     : (out.weak ? KillingMode::strong : KillingMode::weak);
  holds(strongest, &out.violations);
  return out;
}

KillingSolveResult killing_solve(const CoordinateGeometry& geom, int degree, KillingMode mode) {
  if (degree < 0) throw std::invalid_argument("ansatz degree must be nonnegative");
  const int N = static_cast<int>(geom.coords.size());
  KillingSolveResult out;
  out.ansatz_monomials = monomials_up_to_degree(geom.ring.get(), degree);
  const int M = static_cast<int>(out.ansatz_monomials.size());
  const int U = N * M;

  // Condition values per unknown basis field e(i, m) = mono_m * d/dx^i.
  std::vector<std::vector<SymExpr>> per_unknown(U);
  for (int i = 0; i < N; ++i)
    for (int m = 0; m < M; ++m) {
      std::vector<SymExpr> comps(N, SymExpr(geom.ring.get()));
      SymExpr mono(geom.ring.get());
      mono.add_term(out.ansatz_monomials[m], Rational(1));
      comps[i] = mono;
      FrameVectorField basis_field = geom.from_coord(std::move(comps));
      per_unknown[i * M + m] = killing_condition_values(geom, basis_field, mode, nullptr);
    }

  const std::size_t nslots = per_unknown.empty() ? 0 : per_unknown[0].size();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t s = 0; s < nslots; ++s) {
    std::map<Mono, std::size_t> row_of;
    for (int u = 0; u < U; ++u)
      for (const auto& [mono, coeff] : per_unknown[u][s].terms()) {
        auto it = row_of.find(mono);
        std::size_t r;
        if (it == row_of.end()) {
          r = rows.size();
          row_of.emplace(mono, r);
          rows.emplace_back(U, Rational(0));
        } else {
          r = it->second;
        }
        rows[r][u] = coeff;
      }
  }

  ExactMatrix sys(rows.size(), U);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int u = 0; u < U; ++u) sys(r, u) = rows[r][u];
  out.coefficient_basis = null_space(sys);
  out.dimension = static_cast<int>(out.coefficient_basis.cols());

  for (int b = 0; b < out.dimension; ++b) {
    std::vector<SymExpr> comps(N, SymExpr(geom.ring.get()));
    for (int i = 0; i < N; ++i)
      for (int m = 0; m < M; ++m) {
        const Rational& v = out.coefficient_basis(static_cast<std::size_t>(i * M + m), b);
        if (srgeo::is_zero(v)) continue;
        comps[i].add_term(out.ansatz_monomials[m], v);
      }
    out.basis.push_back(geom.from_coord(std::move(comps)));
  }
  return out;
}

ExactMatrix ansatz_vector(const CoordinateGeometry& geom, const FrameVectorField& K, int degree) {
  const int N = static_cast<int>(geom.coords.size());
  std::vector<Mono> monos = monomials_up_to_degree(geom.ring.get(), degree);
  std::map<Mono, int> index;
  for (std::size_t m = 0; m < monos.size(); ++m) index.emplace(monos[m], static_cast<int>(m));
  const int M = static_cast<int>(monos.size());
  ExactMatrix v(static_cast<std::size_t>(N) * M, 1);
  for (int i = 0; i < N; ++i)
    for (const auto& [mono, coeff] : K.coord[i].terms()) {
      auto it = index.find(mono);
      if (it == index.end())
        throw std::invalid_argument("field exceeds ansatz degree " + std::to_string(degree));
      v(static_cast<std::size_t>(i * M + it->second), 0) = coeff;
    }
  return v;
}

FrameVectorField covariant_derivative(const CoordinateGeometry& geom, const Connection& conn,
                                      const FrameVectorField& A, const FrameVectorField& K) {
  const int n = geom.n();
  std::vector<SymExpr> out(n, SymExpr(geom.ring.get()));
  for (int d = 0; d < n; ++d) {
    SymExpr acc = geom.apply_field(A, K.frame[d]);
    for (int a = 0; a < n; ++a) {
      if (A.frame[a].is_zero()) continue;
      for (int b = 0; b < n; ++b) {
        if (srgeo::is_zero(conn.g(a, b, d)) || K.frame[b].is_zero()) continue;
        acc += A.frame[a] * K.frame[b] * conn.g(a, b, d);
      }
    }
    out[d] = acc;
  }
  return geom.from_frame(std::move(out));
}

FrameVectorField horizontal_laplacian(const CoordinateGeometry& geom, const Connection& conn,
                                      const FrameVectorField& K) {
  const int n = geom.n();
  const int h0 = geom.lie.horizontal_dim();
  ExactMatrix w = horizontal_gram_inverse(geom.lie);
  std::vector<FrameVectorField> first(h0);
  for (int k = 0; k < h0; ++k) first[k] = covariant_derivative(geom, conn, geom.frame_field(k), K);
  std::vector<SymExpr> out(n, SymExpr(geom.ring.get()));
  for (int i = 0; i < h0; ++i)
    for (int j = 0; j < h0; ++j) {
      if (srgeo::is_zero(w(i, j))) continue;
      FrameVectorField second = covariant_derivative(geom, conn, geom.frame_field(i), first[j]);
      for (int d = 0; d < n; ++d) {
        SymExpr term = second.frame[d];
        for (int k = 0; k < h0; ++k) {
          if (srgeo::is_zero(conn.g(i, j, k))) continue;
          term -= first[k].frame[d] * conn.g(i, j, k);
        }
        out[d] += term * w(i, j);
      }
    }
  return geom.from_frame(std::move(out));
}

std::vector<std::vector<Rational>> sample_points(const CoordinateGeometry& geom, unsigned seed,
                                                 int count) {
  std::vector<std::vector<Rational>> pts;
  std::vector<Rational> identity(geom.ring->nvars(), Rational(0));
  for (const auto& [ci, si] : geom.ring->circle_pairs) {
    identity[ci] = 1;
    identity[si] = 0;
  }
  pts.push_back(identity);

  std::mt19937_64 rng(seed);
  auto small_rat = [&]() -> Rational {
    long num = static_cast<long>(rng() % 7) - 3;   // -3..3
    long den = static_cast<long>(rng() % 3) + 1;   // 1..3
    return rat(num, den);
  };
  for (int p = 0; p < count; ++p) {
    std::vector<Rational> v(geom.ring->nvars(), Rational(0));
    std::vector<bool> in_pair(geom.ring->nvars(), false);
    for (const auto& [ci, si] : geom.ring->circle_pairs) in_pair[ci] = in_pair[si] = true;
    for (int i = 0; i < geom.ring->nvars(); ++i)
      if (!in_pair[i]) v[i] = small_rat();
    for (const auto& [ci, si] : geom.ring->circle_pairs) {
      Rational t = small_rat();
      Rational t2 = t * t;
      v[ci] = (1 - t2) / (1 + t2);
      v[si] = 2 * t / (1 + t2);
    }
    pts.push_back(std::move(v));
  }
  return pts;
}

std::vector<Rational> eval_frame(const FrameVectorField& K, const std::vector<Rational>& point) {
  std::vector<Rational> out;
  out.reserve(K.frame.size());
  for (const SymExpr& e : K.frame) out.push_back(e.evaluate(point));
  return out;
}

}  // namespace srgeo
