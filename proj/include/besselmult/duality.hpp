#pragma once

#include <optional>

#include "besselmult/core.hpp"
#include "besselmult/multiplier.hpp"
#include "besselmult/norms.hpp"

namespace besselmult {

/// A Riesz basis of functionals together with its unique biorthogonal
/// system of vectors and both bound certificates.
struct DualSystem {
  FunctionalSequence original;  // g_i, a basis of X* (K = dim)
  VectorSequence dual;          // f_i in X with g_i(f_j) = delta_ij
  BoundsCertificate bounds_original;
  BoundsCertificate bounds_dual;
  double condition_number = 0.0;
};

/// Condition numbers beyond this make the inverse meaningless; refuse.
inline constexpr double kDualConditionLimit = 1e12;

/// Computes the biorthogonal dual of a square invertible system (rows of the
/// inverse-transpose) and verifies both reconstruction identities on random
/// probes. Throws for singular or hopelessly conditioned systems.
DualSystem dual_riesz_basis(const FunctionalSequence& seq, const EstimatorOptions& opts = {});

/// Dual of a vector-family basis: the functionals f_i^~ with f_i^~(phi_j)
/// = delta_ij (same matrix mechanics with the roles flipped).
FunctionalSequence dual_functionals(const VectorSequence& seq);

/// max_ij |g_i(f_j) - delta_ij| <= tol.
CheckReport biorthogonality_check(const FunctionalSequence& g, const VectorSequence& f,
                                  double tol);

/// A unit-q-norm coefficient vector annihilated by the synthesis map, if one
/// exists (up to 1e-10); none exactly when the family is a Riesz sequence.
std::optional<Vec> kernel_witness(const FunctionalSequence& seq, double q);
std::optional<Vec> kernel_witness(const VectorSequence& seq, double q);

/// Inverse of a multiplier with semi-normalized symbol over two Riesz bases:
/// the multiplier with inverted symbol over the two dual systems. Verifies
/// composition to identity on both sides.
Multiplier invert_multiplier(const Multiplier& M, double tol = 1e-12,
                             const EstimatorOptions& opts = {});

}  // namespace besselmult
