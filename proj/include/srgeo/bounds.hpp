#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srgeo/liealg.hpp"
#include "srgeo/subspace.hpp"

namespace srgeo {

/// Orthogonal splitting H = kernel ⊕ H̃¹ ⊕ ... ⊕ H̃^m with vanishing cross-block
/// V¹-valued torsion. Blocks are frame-aligned (spans of frame vectors) whenever
/// the torsion kernel itself is frame-aligned and the horizontal Gram respects
/// the split; otherwise the whole kernel complement forms a single block.
struct TorsionDecomposition {
  Subspace kernel;                             // subspace of Q^{h0}
  std::vector<Subspace> blocks;                // subspaces of Q^{h0}
  std::vector<Subspace> v_images;              // subspaces of Q^{v1}: torsion values per block
  bool strong = false;                         // the v_images form a direct sum
  bool frame_aligned = true;                   // kernel and blocks are frame index sets
  std::vector<int> kernel_indices;             // frame indices (frame_aligned only)
  std::vector<std::vector<int>> block_indices; // frame indices per block (frame_aligned only)
};

struct HigherStepBound {
  int m = 0;        // vertical grade of the differentiating direction
  int dim_l = 0;    // dim of the joint kernel L inside H
  int bound = 0;    // dim L (dim L - 1) / 2
  Subspace l;       // L itself, subspace of Q^{h0}
};

struct BoundReport {
  int crude = 0;           // dim V + k(k+1)/2, k = dim H
  int crude_isotropy = 0;  // k(k-1)/2
  std::optional<int> commutant = 0;
  std::optional<int> eigen_commutant = 0;
  bool eigen_vacuous = false;  // no vertical-to-horizontal torsion: eigen route adds nothing
  int derivation = 0;
  std::vector<HigherStepBound> higher_steps;
  std::optional<int> stabilizer;  // nullopt = unknown
  int isotropy_upper = 0;
  int total_upper = 0;
  int total_lower = 0;
  bool exact = false;
  std::vector<std::string> notes;
};

/// dim V + k + k(k-1)/2: ambient dimension plus the dimension of skew-adjoint
/// operators on H. Requires a bracket-generating geometry.
int crude_bound(const GradedLieGeometry& geom);

/// Maximal subspace of H with vanishing V¹-torsion against all of H.
/// The geometry is strongly non-integrable iff this is zero.
Subspace torsion_kernel(const GradedLieGeometry& geom, const TorsionData& tor);

/// Finest frame-aligned decomposition: non-kernel frame vectors are grouped by
/// the transitive closure of "nonzero V¹ cross-torsion or nonzero Gram pairing".
TorsionDecomposition torsion_decomposition(const GradedLieGeometry& geom, const TorsionData& tor);

/// Post-hoc re-verification of the decomposition invariants (direct sum,
/// pairwise Gram-orthogonality, vanishing cross-block V¹ torsion, v_image
/// spans, strong flag). Returns human-readable violations; empty = valid.
std::vector<std::string> verify_decomposition(const GradedLieGeometry& geom,
                                              const TorsionData& tor,
                                              const TorsionDecomposition& dec);

/// Upper bound on the dimension of isotropy fields acting trivially on V¹.
/// With a strong frame-aligned decomposition: dim skew(kernel) plus, per block,
/// the dimension of skew-adjoint A with Tor(A·,·) + Tor(·,A·) = 0 on the block.
/// Otherwise the same anticommutation system is solved over all of H.
int commutant_bound(const GradedLieGeometry& geom, const TorsionData& tor,
                    const TorsionDecomposition& dec);

/// True when Tor(V¹, H) has no horizontal component, i.e. every vertical
/// torsion endomorphism of H induced by V¹ vanishes.
bool v1_torsion_endomorphisms_vanish(const GradedLieGeometry& geom, const TorsionData& tor);

/// Upper bound on the dimension of isotropy fields acting trivially on V¹,
/// through the vertical torsion endomorphisms T_U : X -> π⁰ Tor(U, X): skew-adjoint
/// B commuting with every T_U (U in the V¹ frame) and anticommuting with the
/// V¹-valued horizontal torsion. One exact null-space computation; commuting
/// with a self-adjoint rational matrix is exactly preserving its eigenspaces,
/// so no eigendecomposition is needed.
int eigen_commutant_bound(const GradedLieGeometry& geom, const TorsionData& tor);

/// Dimension of the projection onto the first factor of
///   {(A, B) ∈ skew(H) × gl(V¹) : B(Tor(X,Y)) = Tor(AX,Y) + Tor(X,AY)}.
/// Upper-bounds the full isotropy dimension without needing a decomposition
/// and independently of the vertical metric extension.
int derivation_bound(const GradedLieGeometry& geom, const TorsionData& tor);

/// 0 when every non-kernel block has dim ≤ 2 (the V¹ indicatrix is then a
/// convex sum of segments with discrete symmetry group); nullopt otherwise.
std::optional<int> stabilizer_contribution(const TorsionDecomposition& dec);

/// For each m with dim V^m = dim V^{m+1} = 1 (which certifies vertical
/// discreteness at two successive steps), L = ker(X -> π^{m+1} Tor(U, X)) for
/// the V^m frame direction U, and the isotropy of regular fields is at most
/// dim L (dim L - 1)/2. Throws std::invalid_argument when the grading is not
/// regular.
std::vector<HigherStepBound> higher_step_bounds(const GradedLieGeometry& geom,
                                                const TorsionData& tor);

/// Dimension of the space of isotropy Killing fields certified by inner
/// automorphisms: elements A of the algebra whose adjoint action preserves
/// every grade and is skew on H produce one-parameter isometry groups fixing
/// the identity (conjugation flows), and the induced field vanishes only for
/// central A. Returns dim{A : ad_A grade-preserving, skew on H} minus the
/// dimension of the central part of that space.
int adjoint_isotropy_dim(const GradedLieGeometry& geom);

/// Combines all bounds. isotropy_upper is the minimum of the applicable
/// candidates: the crude skew dimension, the derivation bound, the (eigen-)
/// commutant bounds plus the stabilizer contribution when that is known, and
/// any higher-step bounds (regular gradings only). total_upper = dim G +
/// isotropy_upper; total_lower = dim G + certified_isotropy_dim (transitive
/// left translations plus any catalog-certified isotropy generators).
BoundReport aggregate_bounds(const GradedLieGeometry& geom, const TorsionData& tor,
                             int certified_isotropy_dim = 0);

}  // namespace srgeo
