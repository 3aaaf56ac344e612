#pragma once

#include <vector>

#include "besselmult/core.hpp"
#include "besselmult/multiplier.hpp"
#include "besselmult/norms.hpp"

namespace besselmult {

/// Distance (sum_k ||a_k - b_k||^e)^{1/e} between two equal-shape families,
/// element norms taken where the elements live.
struct SequenceDistance {
  double exponent = 2.0;
  double value = 0.0;
  RealVec per_element;
};

SequenceDistance lp_distance(const FunctionalSequence& a, const FunctionalSequence& b,
                             double exponent);
SequenceDistance lp_distance(const VectorSequence& a, const VectorSequence& b, double exponent);

/// Checks the perturbed Bessel bound est-lower B(phi) <= B(psi)_upper + mu
/// and the two operator-difference bounds ||U_phi - U_psi|| <= mu,
/// ||T_phi - T_psi|| <= mu, with mu the l^p sequence distance.
std::vector<CheckReport> perturbed_bessel_bound_check(const FunctionalSequence& psi,
                                                      const FunctionalSequence& phi,
                                                      const NormEstimate& B, double exponent,
                                                      const EstimatorOptions& opts = {});

/// One row of a convergence sweep. rhs is the chained product bound;
/// rhs_sqrt_variant replaces the Bessel product with its square root and is
/// reported for comparison only.
struct ConvergenceRow {
  int l = 0;
  double distance = 0.0;
  double lhs_lower = 0.0;
  double lhs_upper = 0.0;
  double rhs = 0.0;
  double rhs_sqrt_variant = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

struct ConvergenceTable {
  std::string claim;
  std::vector<ConvergenceRow> rows;
  bool all_pass() const;
};

/// Sweep over symbols m^(l) -> m: lhs = est ||M_{m^(l)} - M_m||,
/// rhs = ||m^(l) - m||_{p1} * B1 * B2.
ConvergenceTable continuity_symbol(const Multiplier& M, const std::vector<Symbol>& family,
                                   double p1, const EstimatorOptions& opts = {});

/// Sweep over analysis families: rhs = B2 * ||m||_{p1} * dist_{q1}(Psi^(l), Psi).
ConvergenceTable continuity_analysis(const Multiplier& M,
                                     const std::vector<FunctionalSequence>& family, double q1,
                                     const EstimatorOptions& opts = {});

/// Sweep over synthesis families: rhs = B1 * ||m||_{p1} * dist_{q1}(Phi^(l), Phi).
ConvergenceTable continuity_synthesis(const Multiplier& M,
                                      const std::vector<VectorSequence>& family, double q1,
                                      const EstimatorOptions& opts = {});

/// Joint sweep; rhs is the triangle-inequality sum of the three one-parameter
/// bounds, with per-row Bessel certificates for the perturbed families.
ConvergenceTable continuity_joint(const Multiplier& M, const std::vector<Symbol>& symbols,
                                  const std::vector<FunctionalSequence>& analyses,
                                  const std::vector<VectorSequence>& syntheses, double p1,
                                  double q1, const EstimatorOptions& opts = {});

}  // namespace besselmult
