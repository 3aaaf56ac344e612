#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "besselmult/core.hpp"
#include "besselmult/norms.hpp"

namespace besselmult {

/// Outcome of one verified inequality; serializes as
/// {claim, lhs, rhs, slack, pass} plus free-form detail values.
struct CheckReport {
  std::string claim;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::map<std::string, double> details;
};

/// Makes lhs <= rhs with a hair of floating-point headroom into a report.
CheckReport make_inequality_report(std::string claim, double lhs, double rhs);

/// The operator f -> sum_k m_k psi_k(f) phi_k from the analysis host X1 into
/// the synthesis host X2, materialized once as synthesis^T * diag(m) * analysis.
struct Multiplier {
  Symbol symbol;
  FunctionalSequence analysis;  // Psi in X1*
  VectorSequence synthesis;     // Phi in X2
  Mat matrix;                   // n2 x n1, fixed at construction

  int size() const { return symbol.size(); }
  const Space& source_space() const { return analysis.host; }
  const Space& target_space() const { return synthesis.host; }
};

/// Validates lengths and exponent pairing, then materializes the matrix.
Multiplier build_multiplier(const Symbol& m, const VectorSequence& phi,
                            const FunctionalSequence& psi);

/// Matrix path; equal to the summation path to roundoff.
Vec apply(const Multiplier& M, const Vec& f);
/// Summation path sum_k m_k psi_k(f) phi_k, kept for cross-checking.
Vec apply_summation(const Multiplier& M, const Vec& f);

/// Checks est-lower ||M|| <= B1_upper * B2_upper * sup|m|.
CheckReport norm_bound_check(const Multiplier& M, const NormEstimate& B1, const NormEstimate& B2,
                             const EstimatorOptions& opts = {});

/// Checks A1_lower * A2_lower * sup|m| <= est-upper ||M||; both sequences must
/// be certified Riesz bases. Also reports the best biorthogonal-probe value.
CheckReport lower_norm_check(const Multiplier& M, const BoundsCertificate& analysis_cert,
                             const BoundsCertificate& synthesis_cert,
                             const EstimatorOptions& opts = {});

/// Conjugated symbol, roles of the two families swapped (elements conjugated
/// so the matrix is exactly the conjugate transpose).
Multiplier adjoint(const Multiplier& M);

/// Zeroes the symbol entries k >= N; the result has rank at most N.
Multiplier truncate(const Multiplier& M, int N);

/// Checks est-lower ||M - truncate(M, N)|| <= sup_{k>=N} |m_k| * B1 * B2.
CheckReport truncation_error_check(const Multiplier& M, int N, const NormEstimate& B1,
                                   const NormEstimate& B2, const EstimatorOptions& opts = {});

// ---------------------------------------------------------------------------
// Rank-one calculus
// ---------------------------------------------------------------------------

/// The operator z -> omega(z) * left from `domain` into `codomain`.
struct RankOne {
  Vec left;        // y in the codomain
  Vec right;       // omega, a functional on the domain
  Space codomain;  // Y
  Space domain;    // X

  RankOne(Vec left_, Space codomain_, Vec right_, Space domain_);
  Mat matrix() const { return left * right.transpose(); }
  Vec operator()(const Vec& z) const;
  /// ||left||_Y * ||omega||_{X*}; equals the operator norm.
  double norm_product() const;
};

/// (z tensor tau)(y tensor omega) = tau(y) * (z tensor omega).
RankOne compose(const RankOne& outer, const RankOne& inner);
/// T (y tensor omega) = (T y) tensor omega.
RankOne left_compose(const Mat& T, const Space& T_codomain, const RankOne& a);
/// (y tensor omega) S = y tensor (S^T omega)  (bilinear Banach adjoint of S).
RankOne right_compose(const RankOne& a, const Mat& S, const Space& S_domain);
/// Adjoint in the model convention: conjugate transpose, i.e.
/// conj(omega) tensor conj(y) between the dual spaces.
RankOne adjoint(const RankOne& a);

/// Verifies the five rank-one identities (composition, the two mixed
/// compositions, the adjoint, and the norm product) on the given operands.
std::vector<CheckReport> rank_one_identities(const RankOne& a, const RankOne& b, const Mat& S,
                                             const Mat& T, const EstimatorOptions& opts = {});

// ---------------------------------------------------------------------------
// Symbol recovery and nuclear certificates
// ---------------------------------------------------------------------------

/// Recovers the symbol of a multiplier matrix for the given sequences; probes
/// with the biorthogonal family when the analysis system is a basis, else
/// with least-squares probes. Rebuild agrees with the input to `tol`.
Symbol symbol_recovery(const Mat& M, const FunctionalSequence& psi, const VectorSequence& phi,
                       double tol = 1e-9);

/// Canonical-factorization certificate: upper = B1 * ||m||_r * B2.
struct NuclearCertificate {
  double r = 1.0;
  double sigma_norm = 0.0;           // ||m||_r
  double analysis_weak_norm = 0.0;   // certified bound for the analysis factor
  double synthesis_weak_norm = 0.0;  // certified bound for the synthesis factor
  double upper = 0.0;
};

NuclearCertificate nuclear_upper_bound(const Multiplier& M, double r,
                                       const EstimatorOptions& opts = {});
NuclearCertificate nuclear_upper_bound(const Multiplier& M, double r, const NormEstimate& B1,
                                       const NormEstimate& B2);

/// Sum of singular values; the exponent-2 oracle against nuclear certificates.
double trace_norm_hilbert(const Mat& M);

}  // namespace besselmult
