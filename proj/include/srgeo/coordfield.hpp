#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "srgeo/liealg.hpp"
#include "srgeo/symexpr.hpp"

namespace srgeo {

/// Symbolic vector field on a chart, kept in two synchronized views:
/// components over the coordinate partials and components over the frame.
struct FrameVectorField {
  std::vector<SymExpr> coord;  // size N (chart dimension)
  std::vector<SymExpr> frame;  // size n (= N; frame spans the tangent space)
};

/// A coordinate chart with a symbolic frame whose structure functions are
/// constant. The constant part is cross-linked as a GradedLieGeometry so both
/// pipelines (algebraic and symbolic) run over the same data.
struct CoordinateGeometry {
  std::string name;
  std::vector<std::string> coords;
  std::vector<bool> is_angle;         // angle coordinates enter only via circle pairs
  /// Heap-held so its address survives copies and moves of the geometry:
  /// every SymExpr built on this chart keeps a raw pointer to the RingSpec.
  std::shared_ptr<RingSpec> ring;
  std::vector<int> coord_var;         // ring variable of a polynomial coordinate, -1 for angles
  std::vector<int> coord_pair;        // circle pair index of an angle coordinate, -1 otherwise
  std::map<std::string, int> poly_vars;

  std::vector<std::vector<SymExpr>> frame;      // F[a][i]: E_a = sum_i F[a][i] d/dx^i
  std::vector<std::vector<SymExpr>> frame_inv;  // Finv[i][a], F * Finv = identity
  GradedLieGeometry lie;

  int n() const { return lie.n; }

  /// Partial derivative along coordinate i (circle-pair derivation for angles).
  SymExpr dcoord(const SymExpr& e, int i) const;
  /// Directional derivative A(f) for a vector field A.
  SymExpr apply_field(const FrameVectorField& A, const SymExpr& f) const;
  SymExpr apply_frame_field(int a, const SymExpr& f) const;

  FrameVectorField from_coord(std::vector<SymExpr> comps) const;
  FrameVectorField from_frame(std::vector<SymExpr> comps) const;
  FrameVectorField frame_field(int a) const;
  /// Gram pairing of two fields through their frame components.
  SymExpr pair(const FrameVectorField& A, const FrameVectorField& B) const;
};

/// Builds the chart, parses the frame expressions, inverts the frame matrix via
/// the adjugate (the determinant must reduce to a nonzero rational constant so
/// the inverse stays in the ring), expands the structure functions, requires
/// them constant, and validates the cross-linked graded geometry. Throws
/// std::invalid_argument with a message on any failure.
CoordinateGeometry make_coordinate_geometry(std::string name,
                                            std::vector<std::string> coords,
                                            std::vector<bool> is_angle,
                                            std::vector<int> grade_dims,
                                            std::vector<std::string> frame_names,
                                            const std::vector<std::vector<std::string>>& frame_exprs,
                                            ExactMatrix gram);

FrameVectorField bracket(const CoordinateGeometry& geom, const FrameVectorField& A,
                         const FrameVectorField& B);

struct KillingCheckResult {
  bool weak = false;
  bool strong = false;
  bool regular = false;
  std::vector<std::string> violations;  // for the strongest failing condition set
};

/// Decides the H-Killing conditions as exact ring identities: weak preserves HM
/// and the horizontal metric, strong additionally preserves VM, regular
/// additionally preserves every grade.
KillingCheckResult killing_check(const CoordinateGeometry& geom, const FrameVectorField& K);

enum class KillingMode { weak, strong, regular };

struct KillingSolveResult {
  int dimension = 0;
  std::vector<FrameVectorField> basis;
  /// Null-space basis over the ansatz unknowns (columns = basis fields); the
  /// unknown layout is (coordinate index, monomial) in ansatz_monomials order.
  ExactMatrix coefficient_basis;
  std::vector<Mono> ansatz_monomials;
};

/// Degree-bounded linear Killing solver: general ansatz K = sum q_i d/dx^i with
/// deg q_i <= d, Killing conditions expanded per canonical monomial into one
/// exact linear system. The returned dimension is a lower bound for the full
/// Killing algebra (complete only within the ansatz class).
KillingSolveResult killing_solve(const CoordinateGeometry& geom, int degree, KillingMode mode);

/// Expresses a field as an ansatz-unknown column vector of killing_solve's
/// layout; throws if any coordinate component has degree above `degree`.
ExactMatrix ansatz_vector(const CoordinateGeometry& geom, const FrameVectorField& K, int degree);

/// Covariant derivative nabla_A K for the cross-linked canonical connection,
/// extended over functions: nabla_{E_a}(f E_b) = (E_a f) E_b + f Gamma_ab^k E_k.
FrameVectorField covariant_derivative(const CoordinateGeometry& geom, const Connection& conn,
                                      const FrameVectorField& A, const FrameVectorField& K);

/// Horizontal Laplacian: trace over the horizontal frame of the second
/// covariant derivative, tr(nabla^2 K) with nabla^2 K(B,A) = (nabla_A nabla_B
/// - nabla_{nabla_A B}) K, contracted with the inverse horizontal Gram block.
FrameVectorField horizontal_laplacian(const CoordinateGeometry& geom, const Connection& conn,
                                      const FrameVectorField& K);

/// Deterministic rational sample points (ring-variable values). The first point
/// is the identity (origin; angles at (c,s) = (1,0)); the rest are seeded random
/// small rationals with circle pairs on rational circle points.
std::vector<std::vector<Rational>> sample_points(const CoordinateGeometry& geom, unsigned seed,
                                                 int count);

/// Frame components of a field evaluated at a sample point.
std::vector<Rational> eval_frame(const FrameVectorField& K, const std::vector<Rational>& point);

}  // namespace srgeo
