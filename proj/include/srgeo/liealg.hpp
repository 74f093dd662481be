#pragma once

#include <string>
#include <vector>

#include "srgeo/matrix.hpp"
#include "srgeo/subspace.hpp"

namespace srgeo {

/// A graded Lie geometry: a frame E_1..E_n of a Lie algebra carrying a grading
/// V^0 ⊕ V^1 ⊕ ... ⊕ V^r (V^0 = horizontal distribution H, the rest vertical),
/// structure constants [E_a, E_b] = Σ_k c[a][b][k] E_k, and a block-diagonal Gram
/// matrix making the grading orthogonal (identity by default). Models the
/// left-invariant picture: all tensors are computed at the identity and are
/// translation-invariant.
struct GradedLieGeometry {
  std::string name;
  int n = 0;                        // total dimension
  std::vector<int> grade_dims;      // [dim V^0, dim V^1, ..., dim V^r]
  std::vector<Rational> c;          // n^3, index (a*n + b)*n + k
  ExactMatrix gram;                 // n x n
  std::vector<std::string> frame_names;

  const Rational& cc(int a, int b, int k) const { return c[(a * n + b) * n + k]; }
  Rational& cc(int a, int b, int k) { return c[(a * n + b) * n + k]; }

  int grades() const { return static_cast<int>(grade_dims.size()); }
  int grade_of(int index) const;
  int grade_start(int j) const;
  int horizontal_dim() const { return grade_dims[0]; }
  int vertical_dim() const { return n - grade_dims[0]; }

  /// <E_a, E_b> under gram.
  const Rational& ip(int a, int b) const { return gram(a, b); }
  /// Inner product of frame-component vectors.
  Rational pair(const std::vector<Rational>& u, const std::vector<Rational>& v) const;
};

GradedLieGeometry make_geometry(std::string name, std::vector<int> grade_dims,
                                std::vector<std::string> frame_names);

/// Returns human-readable violations; empty means valid. Checks antisymmetry,
/// the Jacobi identity, Gram symmetry / block-diagonality / positive definiteness,
/// and the grading bracket conditions [V^0,V^j] ⊆ V^0 ⊕ ... ⊕ V^{j+1}.
std::vector<std::string> validate(const GradedLieGeometry& geom);

struct Filtration {
  std::vector<Subspace> levels;   // H^0 ⊆ H^1 ⊆ ... (stabilized)
  bool bracket_generating = false;
  int step = 0;                   // 1 + first j with H^j = full space (0 when not generating)
  bool regular = false;           // H^j = H^{j-1} ⊕ V^j for all j
};

Filtration filtration(const GradedLieGeometry& geom);

/// Frame connection coefficients: ∇_{E_a} E_b = Σ_k gamma[a][b][k] E_k.
struct Connection {
  int n = 0;
  std::vector<Rational> gamma;  // n^3
  const Rational& g(int a, int b, int k) const { return gamma[(a * n + b) * n + k]; }
  Rational& g(int a, int b, int k) { return gamma[(a * n + b) * n + k]; }
};

/// The canonical connection of the geometry, built from the two Koszul-type
/// formulas (within-grade and mixed). It is the unique connection that is metric,
/// grade-parallel, has no within-grade torsion component, and has the mixed
/// torsion symmetry <Tor(Z,X),Y> = <Tor(Z,Y),X> for X,Y in a common grade and
/// Z outside it.
Connection build_connection(const GradedLieGeometry& geom);

/// Independent axiom checker (does not share code with build_connection):
/// verifies metric compatibility, grade parallelism, vanishing within-grade
/// torsion and the mixed symmetry directly. Returns violations, empty = ok.
std::vector<std::string> verify_connection(const GradedLieGeometry& geom, const Connection& conn);

/// Dimension of the solution space of the homogeneous (linearized) axiom system.
/// Zero certifies uniqueness of the canonical connection on this geometry.
int connection_solution_space_dim(const GradedLieGeometry& geom);

/// Torsion coefficients Tor(E_a, E_b) = Σ_k tor[a][b][k] E_k.
struct TorsionData {
  int n = 0;
  std::vector<Rational> tor;  // n^3
  const Rational& t(int a, int b, int k) const { return tor[(a * n + b) * n + k]; }
  Rational& t(int a, int b, int k) { return tor[(a * n + b) * n + k]; }
};

TorsionData torsion(const GradedLieGeometry& geom, const Connection& conn);

/// Curvature R(E_a,E_b)E_c = Σ_d riem[a][b][c][d] E_d and the lowered tensor
/// rm[a][b][c][d] = <R(E_a,E_b)E_c, E_d>.
struct CurvatureData {
  int n = 0;
  std::vector<Rational> riem;  // n^4
  std::vector<Rational> rm;    // n^4
  const Rational& r(int a, int b, int c, int d) const { return riem[((a * n + b) * n + c) * n + d]; }
  const Rational& low(int a, int b, int c, int d) const { return rm[((a * n + b) * n + c) * n + d]; }
};

CurvatureData curvature(const GradedLieGeometry& geom, const Connection& conn);

/// (∇_{E_a} Tor)(E_b, E_c) = Σ_d out[a][b][c][d] E_d  (first slot differentiates).
std::vector<Rational> covariant_torsion_derivative(const GradedLieGeometry& geom,
                                                   const Connection& conn,
                                                   const TorsionData& tor);

/// Step-m torsion grid, m >= 1:
///   Tor^[1] = Tor,
///   Tor^[m](Z_1, ..., Z_{m+1}) = Tor(Z_1, Tor^[m-1](Z_2, ..., Z_{m+1})).
/// Returned flat with m+2 frame indices (last index = output component).
std::vector<Rational> step_torsion(const GradedLieGeometry& geom, const TorsionData& tor, int m);

/// Inverse of the horizontal Gram block, used for metric traces over H.
ExactMatrix horizontal_gram_inverse(const GradedLieGeometry& geom);

}  // namespace srgeo
