#include "srgeo/invariants.hpp"

#include <random>
#include <stdexcept>

namespace srgeo {

namespace {

bool is_horizontal(const GradedLieGeometry& geom, int a) { return geom.grade_of(a) == 0; }

/// <Tor(E_a, E_b), E_k>.
Rational lowered_torsion(const GradedLieGeometry& geom, const TorsionData& tor, int a, int b,
                         int k) {
  Rational acc = 0;
  for (int m = 0; m < geom.n; ++m) acc += tor.t(a, b, m) * geom.ip(m, k);
  return acc;
}

/// Tor(E_i, Tor(E_a, E_b)) component d.
Rational tor2(const TorsionData& tor, int i, int a, int b, int d) {
  Rational acc = 0;
  for (int k = 0; k < tor.n; ++k) acc += tor.t(a, b, k) * tor.t(i, k, d);
  return acc;
}

}  // namespace

FlagReport classify(const GradedLieGeometry& geom, const TorsionData& tor) {
  const int n = geom.n;
  const int h0 = geom.horizontal_dim();
  FlagReport out;

  out.h_normal = true;
  out.v_normal = true;
  for (int x = 0; x < h0; ++x)
    for (int u = h0; u < n; ++u)
      for (int d = 0; d < n; ++d) {
        if (tor.t(x, u, d) == 0) continue;
        if (is_horizontal(geom, d))
          out.h_normal = false;
        else
          out.v_normal = false;
      }
  out.strictly_normal = out.h_normal && out.v_normal;

  out.vm_integrable = true;
  for (int u = h0; u < n; ++u)
    for (int v = h0; v < n; ++v)
      for (int d = 0; d < h0; ++d)
        if (geom.cc(u, v, d) != 0) out.vm_integrable = false;

  // Rigidity form r(E_a), traced blockwise against the inverse Gram. The Gram
  // is grade-block-diagonal, so the full inverse contracts each grade with its
  // own block, splitting the trace into its horizontal and vertical parts.
  ExactMatrix ginv = inverse(geom.gram);
  std::vector<Rational> r(n, Rational(0));
  for (int a = 0; a < n; ++a) {
    Rational acc = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (ginv(i, j) == 0) continue;
        acc += ginv(i, j) * lowered_torsion(geom, tor, i, a, j);
      }
    r[a] = acc;
  }
  // Metric dual: gram * rigidity_vector = r.
  ExactMatrix rhs(n, 1);
  for (int a = 0; a < n; ++a) rhs(a, 0) = r[a];
  ExactMatrix dual = ginv * rhs;
  out.rigidity_vector.resize(n);
  out.vertically_rigid = true;
  out.horizontally_rigid = true;
  for (int a = 0; a < n; ++a) {
    out.rigidity_vector[a] = dual(a, 0);
    if (dual(a, 0) == 0) continue;
    if (is_horizontal(geom, a))
      out.vertically_rigid = false;
    else
      out.horizontally_rigid = false;
  }
  out.totally_rigid = out.vertically_rigid && out.horizontally_rigid;
  return out;
}

std::vector<std::vector<Rational>> torsion_trace_tensor(const GradedLieGeometry& geom,
                                                        const Connection& conn,
                                                        const TorsionData& tor) {
  const int n = geom.n;
  const int h0 = geom.horizontal_dim();
  ExactMatrix w = horizontal_gram_inverse(geom);
  std::vector<Rational> nt = covariant_torsion_derivative(geom, conn, tor);
  auto nt_at = [&](int a, int b, int c, int d) -> const Rational& {
    return nt[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
  };
  std::vector<std::vector<Rational>> tt(n, std::vector<Rational>(n, Rational(0)));
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      Rational acc = 0;
      for (int i = 0; i < h0; ++i)
        for (int j = 0; j < h0; ++j) {
          if (w(i, j) == 0) continue;
          acc += w(i, j) * (nt_at(i, a, j, d) - tor2(tor, i, j, a, d));
        }
      tt[a][d] = acc;
    }
  return tt;
}

SubRicci sub_ricci(const GradedLieGeometry& geom, const Connection& conn, const TorsionData& tor,
                   const CurvatureData& curv) {
  const int n = geom.n;
  const int h0 = geom.horizontal_dim();
  ExactMatrix w = horizontal_gram_inverse(geom);
  std::vector<Rational> nt = covariant_torsion_derivative(geom, conn, tor);
  auto nt_at = [&](int a, int b, int c, int d) -> const Rational& {
    return nt[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
  };

  SubRicci out;
  out.tr_rm = ExactMatrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Rational acc = 0;
      for (int i = 0; i < h0; ++i)
        for (int j = 0; j < h0; ++j) {
          if (w(i, j) == 0) continue;
          acc += w(i, j) * curv.low(i, a, b, j);
        }
      out.tr_rm(a, b) = acc;
    }

  // trTor2[a][d]: Sum_k Tor(E_k, Tor(E_k, E_a)) traced over H.
  std::vector<std::vector<Rational>> tr_tor2(n, std::vector<Rational>(n, Rational(0)));
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      Rational acc = 0;
      for (int i = 0; i < h0; ++i)
        for (int j = 0; j < h0; ++j) {
          if (w(i, j) == 0) continue;
          acc += w(i, j) * tor2(tor, i, j, a, d);
        }
      tr_tor2[a][d] = acc;
    }
  std::vector<std::vector<Rational>> tt = torsion_trace_tensor(geom, conn, tor);

  out.rcs = ExactMatrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Rational val = out.tr_rm(a, b);
      const bool ah = is_horizontal(geom, a);
      const bool bh = is_horizontal(geom, b);
      if (ah && bh) {
        Rational term2 = 0;
        for (int i = 0; i < h0; ++i)
          for (int j = 0; j < h0; ++j) {
            if (w(i, j) == 0) continue;
            Rational low = 0;
            for (int d = 0; d < n; ++d) low += tor2(tor, i, a, b, d) * geom.ip(d, j);
            term2 += w(i, j) * low;
          }
        val -= term2 / 2;
        Rational term3 = 0;
        for (int d = 0; d < n; ++d) term3 += tr_tor2[a][d] * geom.ip(d, b);
        val -= term3;
      }
      if (!ah && bh) {
        Rational term4 = 0;
        for (int i = 0; i < h0; ++i)
          for (int j = 0; j < h0; ++j) {
            if (w(i, j) == 0) continue;
            Rational low = 0;
            for (int d = 0; d < n; ++d)
              low += (nt_at(i, a, b, d) - tor2(tor, i, a, b, d)) * geom.ip(d, j);
            term4 += w(i, j) * low;
          }
        val -= term4;
        Rational term5 = 0;
        for (int d = 0; d < n; ++d) term5 += tt[a][d] * geom.ip(d, b);
        val += term5;
      }
      out.rcs(a, b) = val;
    }

  out.symmetric = (out.rcs == out.rcs.transpose());
  out.vertical_vanishing = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((!is_horizontal(geom, a) || !is_horizontal(geom, b)) && out.rcs(a, b) != 0)
        out.vertical_vanishing = false;
  return out;
}

bool bianchi_identity_holds(const GradedLieGeometry& geom, const Connection& conn,
                            const TorsionData& tor, const CurvatureData& curv) {
  const int n = geom.n;
  std::vector<Rational> nt = covariant_torsion_derivative(geom, conn, tor);
  auto nt_at = [&](int a, int b, int c, int d) -> const Rational& {
    return nt[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Rational lhs = curv.r(a, b, c, d) + curv.r(b, c, a, d) + curv.r(c, a, b, d);
          Rational rhs = nt_at(a, b, c, d) + nt_at(b, c, a, d) + nt_at(c, a, b, d) -
                         tor2(tor, a, b, c, d) - tor2(tor, b, c, a, d) - tor2(tor, c, a, b, d);
          if (lhs != rhs) return false;
        }
  return true;
}

GradedLieGeometry randomize_vertical_gram(const GradedLieGeometry& geom, unsigned seed) {
  GradedLieGeometry out = geom;
  std::mt19937_64 rng(seed);
  auto small_rat = [&](bool positive) -> Rational {
    long num = static_cast<long>(rng() % 5) - 2;  // [-2, 2]
    if (positive) num = 1 + static_cast<long>(rng() % 3);
    long den = 1 + static_cast<long>(rng() % 2);
    return rat(num, den);
  };
  for (int j = 1; j < geom.grades(); ++j) {
    const int s = geom.grade_start(j);
    const int d = geom.grade_dims[j];
    ExactMatrix L(d, d);
    for (int r = 0; r < d; ++r) {
      L(r, r) = small_rat(true);
      for (int cidx = 0; cidx < r; ++cidx) L(r, cidx) = small_rat(false);
    }
    ExactMatrix block = L * L.transpose();
    for (int r = 0; r < d; ++r)
      for (int cidx = 0; cidx < d; ++cidx) out.gram(s + r, s + cidx) = block(r, cidx);
  }
  if (!validate(out).empty())
    throw std::logic_error("randomized Gram failed validation");
  return out;
}

namespace {

/// Zeroes the frame components outside the requested part and rebuilds the
/// coordinate components through the frame matrix.
FrameVectorField truncate_part(const CoordinateGeometry& geom, const FrameVectorField& K,
                               bool keep_horizontal) {
  const int n = geom.n();
  FrameVectorField out;
  out.frame.assign(n, SymExpr(geom.ring.get()));
  for (int a = 0; a < n; ++a)
    if ((geom.lie.grade_of(a) == 0) == keep_horizontal) out.frame[a] = K.frame[a];
  out.coord.assign(n, SymExpr(geom.ring.get()));
  for (int i = 0; i < n; ++i) {
    SymExpr acc(geom.ring.get());
    for (int a = 0; a < n; ++a) {
      if (out.frame[a].is_zero()) continue;
      acc += out.frame[a] * geom.frame[a][i];
    }
    out.coord[i] = acc;
  }
  return out;
}

/// Tor(A, B) as a field: Sum_{a,b} A^a B^b tor[a][b][.].
std::vector<SymExpr> torsion_apply(const CoordinateGeometry& geom, const TorsionData& tor,
                                   const std::vector<SymExpr>& a_frame,
                                   const std::vector<SymExpr>& b_frame) {
  const int n = geom.n();
  std::vector<SymExpr> out(n, SymExpr(geom.ring.get()));
  for (int a = 0; a < n; ++a) {
    if (a_frame[a].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (b_frame[b].is_zero()) continue;
      SymExpr prod = a_frame[a] * b_frame[b];
      for (int d = 0; d < n; ++d) {
        if (tor.t(a, b, d) == 0) continue;
        out[d] += prod * tor.t(a, b, d);
      }
    }
  }
  return out;
}

/// Frame matrix of nabla_A acting on frame fields: (nabla_A)[d][e] so that
/// nabla_A E_e = Sum_d (nabla_A)[d][e] E_d.
std::vector<std::vector<SymExpr>> nabla_matrix(const CoordinateGeometry& geom,
                                               const Connection& conn,
                                               const FrameVectorField& A) {
  const int n = geom.n();
  std::vector<std::vector<SymExpr>> out(n, std::vector<SymExpr>(n, SymExpr(geom.ring.get())));
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e) {
      SymExpr acc(geom.ring.get());
      for (int a = 0; a < n; ++a) {
        if (A.frame[a].is_zero() || conn.g(a, e, d) == 0) continue;
        acc += A.frame[a] * conn.g(a, e, d);
      }
      out[d][e] = acc;
    }
  return out;
}

/// (nabla_A S)[d][c] = A(S[d][c]) + Sum_e ((nabla_A)[d][e] S[e][c] - S[d][e] (nabla_A)[e][c]).
std::vector<std::vector<SymExpr>> nabla_operator(const CoordinateGeometry& geom,
                                                 const Connection& conn, const FrameVectorField& A,
                                                 const std::vector<std::vector<SymExpr>>& S) {
  const int n = geom.n();
  auto na = nabla_matrix(geom, conn, A);
  std::vector<std::vector<SymExpr>> out(n, std::vector<SymExpr>(n, SymExpr(geom.ring.get())));
  for (int d = 0; d < n; ++d)
    for (int c = 0; c < n; ++c) {
      SymExpr acc = geom.apply_field(A, S[d][c]);
      for (int e = 0; e < n; ++e) {
        if (!na[d][e].is_zero() && !S[e][c].is_zero()) acc += na[d][e] * S[e][c];
        if (!S[d][e].is_zero() && !na[e][c].is_zero()) acc -= S[d][e] * na[e][c];
      }
      out[d][c] = acc;
    }
  return out;
}

}  // namespace

std::vector<std::vector<SymExpr>> killing_b_matrix(const CoordinateGeometry& geom,
                                                   const Connection& conn, const TorsionData& tor,
                                                   const FrameVectorField& K) {
  const int n = geom.n();
  FrameVectorField kh = truncate_part(geom, K, true);
  std::vector<std::vector<SymExpr>> b(n, std::vector<SymExpr>(n, SymExpr(geom.ring.get())));
  for (int a = 0; a < n; ++a) {
    FrameVectorField da = covariant_derivative(geom, conn, geom.frame_field(a), kh);
    for (int d = 0; d < n; ++d) {
      if (geom.lie.grade_of(d) != 0) continue;  // horizontal projection
      SymExpr val = da.frame[d];
      for (int bidx = 0; bidx < n; ++bidx) {
        if (K.frame[bidx].is_zero() || tor.t(bidx, a, d) == 0) continue;
        val += K.frame[bidx] * tor.t(bidx, a, d);
      }
      b[d][a] = val;
    }
  }
  return b;
}

std::vector<IdentityCheck> killing_field_identities(
    const CoordinateGeometry& geom, const Connection& conn, const TorsionData& tor,
    const CurvatureData& curv, const FlagReport& flags, const SubRicci& ricci,
    const std::vector<std::vector<Rational>>& tt, const FrameVectorField& K, bool strong) {
  const int n = geom.n();
  const int h0 = geom.lie.horizontal_dim();
  const ExactMatrix w = horizontal_gram_inverse(geom.lie);
  std::vector<IdentityCheck> out;
  FrameVectorField kh = truncate_part(geom, K, true);
  FrameVectorField kv = truncate_part(geom, K, false);
  auto b = killing_b_matrix(geom, conn, tor, K);

  auto b_low = [&](int a, int c) -> SymExpr {
    SymExpr acc(geom.ring.get());
    for (int d = 0; d < n; ++d) {
      if (b[d][a].is_zero() || geom.lie.ip(d, c) == 0) continue;
      acc += b[d][a] * geom.lie.ip(d, c);
    }
    return acc;
  };

  {  // nabla_X K_V = Tor(X, K)_V for horizontal X
    bool ok = true;
    for (int x = 0; x < h0 && ok; ++x) {
      FrameVectorField dv = covariant_derivative(geom, conn, geom.frame_field(x), kv);
      std::vector<SymExpr> tk(n, SymExpr(geom.ring.get()));
      for (int bidx = 0; bidx < n; ++bidx) {
        if (K.frame[bidx].is_zero()) continue;
        for (int d = h0; d < n; ++d) {
          if (tor.t(x, bidx, d) == 0) continue;
          tk[d] += K.frame[bidx] * tor.t(x, bidx, d);
        }
      }
      for (int d = h0; d < n; ++d)
        if (dv.frame[d] != tk[d]) ok = false;
    }
    out.push_back({"vertical-transport", true, ok});
  }

  {  // B skew on H
    bool ok = true;
    for (int x = 0; x < h0 && ok; ++x)
      for (int y = x; y < h0 && ok; ++y)
        if (!(b_low(x, y) + b_low(y, x)).is_zero()) ok = false;
    out.push_back({"b-skew-horizontal", true, ok});
  }

  {  // nabla_{K_H} K_V = -Tor(K_V, K_H)_V
    FrameVectorField d = covariant_derivative(geom, conn, kh, kv);
    std::vector<SymExpr> t = torsion_apply(geom, tor, kv.frame, kh.frame);
    bool ok = true;
    for (int i = h0; i < n; ++i)
      if (d.frame[i] != -t[i]) ok = false;
    out.push_back({"self-transport-vertical", true, ok});
  }

  {  // purely vertical K: Tor(K, X)_H = 0
    bool vertical = true;
    for (int a = 0; a < h0; ++a)
      if (!K.frame[a].is_zero()) vertical = false;
    bool ok = true;
    if (vertical) {
      for (int x = 0; x < h0; ++x) {
        std::vector<SymExpr> t = torsion_apply(geom, tor, K.frame, geom.frame_field(x).frame);
        for (int d = 0; d < h0; ++d)
          if (!t[d].is_zero()) ok = false;
      }
    }
    out.push_back({"vertical-field-torsion", vertical, vertical ? ok : false});
  }

  if (strong) {
    {  // nabla_T K_H = Tor(T, K)_H for vertical T (equivalently B(T) = 0)
      bool ok = true;
      for (int u = h0; u < n && ok; ++u) {
        FrameVectorField dh = covariant_derivative(geom, conn, geom.frame_field(u), kh);
        std::vector<SymExpr> tk(n, SymExpr(geom.ring.get()));
        for (int bidx = 0; bidx < n; ++bidx) {
          if (K.frame[bidx].is_zero()) continue;
          for (int d = 0; d < h0; ++d) {
            if (tor.t(u, bidx, d) == 0) continue;
            tk[d] += K.frame[bidx] * tor.t(u, bidx, d);
          }
        }
        for (int d = 0; d < h0; ++d)
          if (dh.frame[d] != tk[d]) ok = false;
      }
      out.push_back({"horizontal-transport", true, ok});
    }

    {  // B(V) = 0
      bool ok = true;
      for (int u = h0; u < n; ++u)
        for (int d = 0; d < n; ++d)
          if (!b[d][u].is_zero()) ok = false;
      out.push_back({"b-vertical-kernel", true, ok});
    }

    {  // B skew on the full frame
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        for (int c = a; c < n && ok; ++c)
          if (!(b_low(a, c) + b_low(c, a)).is_zero()) ok = false;
      out.push_back({"b-skew-full", true, ok});
    }

    {  // nabla_{K_V} K_H = -Tor(K_H, K_V)_H
      FrameVectorField d = covariant_derivative(geom, conn, kv, kh);
      std::vector<SymExpr> t = torsion_apply(geom, tor, kh.frame, kv.frame);
      bool ok = true;
      for (int i = 0; i < h0; ++i)
        if (d.frame[i] != -t[i]) ok = false;
      out.push_back({"self-transport-horizontal", true, ok});
    }

    {  // R(X, K)Y = (nabla_X B)(Y) on horizontal X, Y
      bool ok = true;
      for (int x = 0; x < h0 && ok; ++x) {
        auto nb = nabla_operator(geom, conn, geom.frame_field(x), b);
        for (int y = 0; y < h0 && ok; ++y)
          for (int d = 0; d < h0 && ok; ++d) {
            SymExpr rhs(geom.ring.get());
            for (int bidx = 0; bidx < n; ++bidx) {
              if (K.frame[bidx].is_zero() || curv.r(x, bidx, y, d) == 0) continue;
              rhs += K.frame[bidx] * curv.r(x, bidx, y, d);
            }
            if (nb[d][y] != rhs) ok = false;
          }
      }
      out.push_back({"curvature-from-b", true, ok});
    }

    {  // <tr nabla B, Z> = -tr Rm(K, Z) for horizontal Z
      std::vector<SymExpr> trnb(n, SymExpr(geom.ring.get()));
      for (int i = 0; i < h0; ++i) {
        auto nb = nabla_operator(geom, conn, geom.frame_field(i), b);
        for (int j = 0; j < h0; ++j) {
          if (w(i, j) == 0) continue;
          for (int d = 0; d < n; ++d)
            if (!nb[d][j].is_zero()) trnb[d] += nb[d][j] * w(i, j);
        }
      }
      bool ok = true;
      for (int z = 0; z < h0; ++z) {
        SymExpr lhs(geom.ring.get());
        for (int d = 0; d < n; ++d)
          if (!trnb[d].is_zero() && geom.lie.ip(d, z) != 0) lhs += trnb[d] * geom.lie.ip(d, z);
        SymExpr rhs(geom.ring.get());
        for (int a = 0; a < n; ++a) {
          if (K.frame[a].is_zero() || ricci.tr_rm(a, z) == 0) continue;
          rhs += K.frame[a] * ricci.tr_rm(a, z);
        }
        if (lhs != -rhs) ok = false;
      }
      out.push_back({"trace-curvature-from-b", true, ok});
    }

    {  // tr Rm(K, Z) = -<lap_H K_H + tr(nabla Tor - Tor2)(K), Z>
      FrameVectorField lap = horizontal_laplacian(geom, conn, kh);
      bool ok = true;
      for (int z = 0; z < h0; ++z) {
        SymExpr lhs(geom.ring.get());
        for (int a = 0; a < n; ++a) {
          if (K.frame[a].is_zero() || ricci.tr_rm(a, z) == 0) continue;
          lhs += K.frame[a] * ricci.tr_rm(a, z);
        }
        SymExpr rhs(geom.ring.get());
        for (int d = 0; d < n; ++d) {
          SymExpr comp = lap.frame[d];
          for (int a = 0; a < n; ++a) {
            if (K.frame[a].is_zero() || tt[a][d] == 0) continue;
            comp += K.frame[a] * tt[a][d];
          }
          if (!comp.is_zero() && geom.lie.ip(d, z) != 0) rhs += comp * geom.lie.ip(d, z);
        }
        if (lhs != -rhs) ok = false;
      }
      out.push_back({"laplacian-torsion-trace", true, ok});
    }

    {  // <lap_H K_H, Z> = -rcs(K, Z), valid when H-normal with integrable V
      const bool applicable = flags.h_normal && flags.vm_integrable;
      bool ok = false;
      if (applicable) {
        FrameVectorField lap = horizontal_laplacian(geom, conn, kh);
        ok = true;
        for (int z = 0; z < h0; ++z) {
          SymExpr lhs(geom.ring.get());
          for (int d = 0; d < n; ++d)
            if (!lap.frame[d].is_zero() && geom.lie.ip(d, z) != 0)
              lhs += lap.frame[d] * geom.lie.ip(d, z);
          SymExpr rhs(geom.ring.get());
          for (int a = 0; a < n; ++a) {
            if (K.frame[a].is_zero() || ricci.rcs(a, z) == 0) continue;
            rhs += K.frame[a] * ricci.rcs(a, z);
          }
          if (lhs != -rhs) ok = false;
        }
      }
      out.push_back({"laplacian-subricci", applicable, ok});
    }
  }

  return out;
}

IdentityCheck bracket_commutator_identity(const CoordinateGeometry& geom, const Connection& conn,
                                          const TorsionData& tor, const CurvatureData& curv,
                                          const FrameVectorField& K, const FrameVectorField& L) {
  const int n = geom.n();
  const int h0 = geom.lie.horizontal_dim();
  FrameVectorField m = bracket(geom, K, L);
  auto bm = killing_b_matrix(geom, conn, tor, m);
  auto bk = killing_b_matrix(geom, conn, tor, K);
  auto bl = killing_b_matrix(geom, conn, tor, L);
  auto nk_bl = nabla_operator(geom, conn, K, bl);
  auto nl_bk = nabla_operator(geom, conn, L, bk);

  bool ok = true;
  for (int c = 0; c < h0 && ok; ++c)
    for (int d = 0; d < n && ok; ++d) {
      SymExpr rhs(geom.ring.get());
      for (int e = 0; e < n; ++e) {
        if (!bl[d][e].is_zero() && !bk[e][c].is_zero()) rhs += bl[d][e] * bk[e][c];
        if (!bk[d][e].is_zero() && !bl[e][c].is_zero()) rhs -= bk[d][e] * bl[e][c];
      }
      rhs += nk_bl[d][c];
      rhs -= nl_bk[d][c];
      for (int a = 0; a < n; ++a) {
        if (K.frame[a].is_zero()) continue;
        for (int bidx = 0; bidx < n; ++bidx) {
          if (L.frame[bidx].is_zero() || curv.r(a, bidx, c, d) == 0) continue;
          rhs -= K.frame[a] * L.frame[bidx] * curv.r(a, bidx, c, d);
        }
      }
      if (bm[d][c] != rhs) ok = false;
    }
  return {"bracket-b-commutator", true, ok};
}

}  // namespace srgeo
