#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "besselmult/core.hpp"

namespace besselmult {

enum class EstimateMethod { power_iteration, sampling_oracle, interpolation, exact_spectral };

std::string to_string(EstimateMethod m);

/// Certified bracket for an operator norm (or for an injectivity modulus,
/// see BoundsCertificate). `witness` is a unit vector in the source norm;
/// for a norm estimate it attains `lower`, for a modulus estimate it attains
/// `upper`. Re-evaluating the witness reproduces that endpoint.
struct NormEstimate {
  double lower = 0.0;
  Vec witness;
  double upper = 0.0;
  EstimateMethod method = EstimateMethod::power_iteration;
  int iterations = 0;
  std::uint64_t seed = 0;
  bool stationary = true;  // false when an iterative search hit its cap
};

struct EstimatorOptions {
  int restarts = 8;
  int max_iter = 2000;
  double tol = 1e-10;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// One gradient-ascent run for max ||Ax||_t / ||x||_s from a fixed start.
/// `values` lists the objective after every step; it is nondecreasing up to
/// roundoff, and the run stops as soon as progress falls below tol.
struct AscentTrace {
  std::vector<double> values;
  Vec witness;  // unit s-norm
  bool stationary = false;
  int iterations = 0;
};

AscentTrace power_iteration_run(const Mat& A, double s, double t, const Vec& start, int max_iter,
                                double tol);

/// Multi-start nonlinear power iteration for the s->t operator norm,
/// s, t in (1, inf). Lower bound plus witness; upper bound from
/// opnorm_upper_interpolation (tightened by the exact spectral value when
/// s = t = 2).
NormEstimate opnorm_power(const Mat& A, double s, double t, const EstimatorOptions& opts = {});

/// Rigorous upper bound on the s->t operator norm from row/column data:
/// for s = t, the max-column-sum / max-row-sum interpolation bound; otherwise
/// the best of the elementary row and column Hoelder bounds.
double opnorm_upper_interpolation(const Mat& A, double s, double t);

/// Brute-force lower bound from a dense deterministic grid plus seeded random
/// points on the unit s-sphere. Guarded to small source dimensions (<= 4 real
/// coordinates); the independent oracle for the iterative estimators.
NormEstimate opnorm_sampling_oracle(const Mat& A, double s, double t, int grid_density,
                                    std::uint64_t seed);

/// Dispatching estimator: power iteration when s, t lie in (1, inf), exact
/// row/column formulas or sampling otherwise. Always returns a sound bracket.
NormEstimate opnorm_estimate(const Mat& A, double s, double t, const EstimatorOptions& opts = {});

/// Certified bracket for the injectivity modulus min ||Ax||_t / ||x||_s.
/// upper comes from the best witness of a multi-start descent (canonical and
/// random starts); lower from the exact smallest singular value when
/// s = t = 2, else from a norm-equivalence bound around it.
NormEstimate min_gain_estimate(const Mat& A, double s, double t, const EstimatorOptions& opts = {});

/// Largest / smallest singular value (the s = t = 2 oracle).
double spectral_norm(const Mat& A);
double spectral_min_gain(const Mat& A);

/// Re-evaluates ||A w||_t / ||w||_s at a stored witness.
double witness_value(const Mat& A, double s, double t, const Vec& w);

// ---------------------------------------------------------------------------
// Sequence-level bounds
// ---------------------------------------------------------------------------

enum class CertificateKind { p_bessel, p_frame, q_riesz_sequence, q_riesz_basis };

std::string to_string(CertificateKind k);

/// A and B constants with evidence. A_est brackets the lower constant
/// (witness attains A_est.upper); B_est brackets the upper constant
/// (witness attains B_est.lower).
struct BoundsCertificate {
  NormEstimate A_est;
  NormEstimate B_est;
  CertificateKind kind = CertificateKind::p_bessel;
};

/// B = norm of the analysis operator host -> l^p; also asserts the element
/// norm consequence ||psi_k||_{host*} <= B_upper.
NormEstimate bessel_bound(const FunctionalSequence& seq, const EstimatorOptions& opts = {});
/// Bessel bound of a vector family read as functionals on host*.
NormEstimate bessel_bound(const VectorSequence& seq, const EstimatorOptions& opts = {});

/// Synthesis bounds A, B of the family from l^q into the element space.
/// q defaults to the conjugate of the sequence's analysis exponent.
/// With require_basis, a non-square system is rejected up front.
BoundsCertificate riesz_bounds(const FunctionalSequence& seq, double q,
                               const EstimatorOptions& opts = {}, bool require_basis = false);
BoundsCertificate riesz_bounds(const VectorSequence& seq, double q,
                               const EstimatorOptions& opts = {}, bool require_basis = false);
BoundsCertificate riesz_bounds(const FunctionalSequence& seq, const EstimatorOptions& opts = {},
                               bool require_basis = false);
BoundsCertificate riesz_bounds(const VectorSequence& seq, const EstimatorOptions& opts = {},
                               bool require_basis = false);

/// Frame bounds: B as bessel_bound, A = infimum of ||analysis(f)||_p over the
/// unit sphere of the host.
BoundsCertificate frame_bounds(const FunctionalSequence& seq, const EstimatorOptions& opts = {});

/// Weak l^p norm w_p of a vector family: the supremum of ||(x*(x_i))_i||_p
/// over the unit ball of host*. Returns the certified upper bound.
double weak_p_norm(const VectorSequence& seq, double p, const EstimatorOptions& opts = {});
NormEstimate weak_p_norm_estimate(const VectorSequence& seq, double p,
                                  const EstimatorOptions& opts = {});

/// Deterministic per-restart seed derivation.
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index);

/// Seeded random vector with unit s-norm (real or complex coordinates).
Vec random_unit_vector(int dim, double s, Field field, std::uint64_t seed);

}  // namespace besselmult
