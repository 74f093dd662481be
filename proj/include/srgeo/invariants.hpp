#pragma once

#include <string>
#include <vector>

#include "srgeo/coordfield.hpp"
#include "srgeo/liealg.hpp"

namespace srgeo {

/// Normality and rigidity classification derived from the torsion tensor.
struct FlagReport {
  bool h_normal = false;         // Tor(H, V) ⊆ V
  bool v_normal = false;         // Tor(H, V) ⊆ H
  bool strictly_normal = false;  // Tor(H, V) = 0
  bool vm_integrable = false;    // [V, V] ⊆ V

  /// Frame components of the rigidity vector: the metric dual of the rigidity
  /// form r(A) = tr_H <Tor(., A), .> + tr_V <Tor(., A), .>.
  std::vector<Rational> rigidity_vector;
  bool vertically_rigid = false;    // rigidity vector lies in V
  bool horizontally_rigid = false;  // rigidity vector lies in H
  bool totally_rigid = false;       // rigidity vector vanishes
};

FlagReport classify(const GradedLieGeometry& geom, const TorsionData& tor);

/// Horizontal trace curvature and the five-term sub-Ricci tensor.
///
/// rcs(A, B) = tr Rm(A, B)
///           - 1/2 tr_H <Tor(., Tor(A_H, B_H)), .>
///           - <trTor2(A_H), B_H>
///           - tr_H <(nabla Tor - Tor2)(., A_V, B_H), .>
///           + <tr(nabla Tor - Tor2)(A_V), B_H>
/// with trTor2(A) = Sum_k Tor(E_k, Tor(E_k, A)) and
/// tr(nabla Tor)(A) = Sum_k (nabla_{E_k} Tor)(A, E_k), both traced over the
/// horizontal frame against the inverse horizontal Gram block.
struct SubRicci {
  ExactMatrix tr_rm;  // tr Rm(E_a, E_b) = Sum_k Rm(E_k, E_a, E_b, E_k)
  ExactMatrix rcs;    // sub-Ricci frame components
  bool symmetric = false;           // rcs == rcs^T
  bool vertical_vanishing = false;  // rcs vanishes when either slot is vertical
};

SubRicci sub_ricci(const GradedLieGeometry& geom, const Connection& conn, const TorsionData& tor,
                   const CurvatureData& curv);

/// tt[a][d]: frame components of tr(nabla Tor - Tor2)(E_a), the combined
/// torsion trace entering the sub-Ricci tensor and the Bochner identity.
std::vector<std::vector<Rational>> torsion_trace_tensor(const GradedLieGeometry& geom,
                                                        const Connection& conn,
                                                        const TorsionData& tor);

/// Algebraic Bianchi identity for a connection with torsion, checked exactly on
/// every frame triple: cyc R(A,B)C = cyc (nabla_A Tor)(B,C) - cyc Tor(A,Tor(B,C)).
bool bianchi_identity_holds(const GradedLieGeometry& geom, const Connection& conn,
                            const TorsionData& tor, const CurvatureData& curv);

/// Copy of the geometry with every vertical Gram block replaced by a seeded
/// random symmetric positive definite block (L L^T for unit-lower-triangular L
/// with positive rational diagonal). The horizontal block is kept, so tensors
/// restricted to H stay comparable across extensions.
GradedLieGeometry randomize_vertical_gram(const GradedLieGeometry& geom, unsigned seed);

/// Matrix of the first-order operator attached to a Killing field K:
///   B(A) = (nabla_A K_H + Tor(K, A))_H,
/// column a holding the frame components of B(E_a). Vertical rows vanish.
std::vector<std::vector<SymExpr>> killing_b_matrix(const CoordinateGeometry& geom,
                                                   const Connection& conn, const TorsionData& tor,
                                                   const FrameVectorField& K);

struct IdentityCheck {
  std::string name;
  bool applicable = false;
  bool holds = false;
};

/// Symbolic identity suite for one solved Killing field. Weak-level checks are
/// always run; strong-level checks require `strong` (the field preserves V).
/// Gated checks report applicable = false instead of failing when their
/// hypotheses do not hold on this geometry.
std::vector<IdentityCheck> killing_field_identities(
    const CoordinateGeometry& geom, const Connection& conn, const TorsionData& tor,
    const CurvatureData& curv, const FlagReport& flags, const SubRicci& ricci,
    const std::vector<std::vector<Rational>>& tt, const FrameVectorField& K, bool strong);

/// Commutator identity for a pair of weak Killing fields:
///   B_[K,L] = [B_L, B_K] + nabla_K B_L - nabla_L B_K - R(K, L)
/// as operators on H, checked symbolically entry by entry. The commutator
/// order is reversed relative to the bracket because K -> B_K is an
/// anti-homomorphism: B agrees with minus the Lie-minus-covariant derivative
/// operator of the field, so composing fields swaps the operator factors.
IdentityCheck bracket_commutator_identity(const CoordinateGeometry& geom, const Connection& conn,
                                          const TorsionData& tor, const CurvatureData& curv,
                                          const FrameVectorField& K, const FrameVectorField& L);

}  // namespace srgeo
