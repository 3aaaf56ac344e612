#include "besselmult/perturbation.hpp"

#include <algorithm>
#include <cmath>

namespace besselmult {

namespace {

SequenceDistance distance_impl(const Mat& a, const Mat& b, const Space& element_space,
                               double exponent) {
  if (!is_norm_exponent(exponent)) throw InvalidArgument("norm exponent must lie in [1, inf]");
  detail::check_same_length(a.rows(), b.rows(), "sequence distance");
  detail::check_same_length(a.cols(), b.cols(), "sequence distance");
  SequenceDistance d;
  d.exponent = exponent;
  d.per_element.resize(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    d.per_element[k] = lp_norm((a.row(k) - b.row(k)).transpose(), element_space.norm_exponent);
  d.value = lp_norm(d.per_element.cast<Complex>(), exponent);
  return d;
}

// est-lower of the s1 -> s2 operator norm, 0 for the zero matrix.
double difference_norm_lower(const Mat& diff, double s1, double s2, const EstimatorOptions& opts,
                             double* upper = nullptr) {
  if (diff.size() == 0 || diff.cwiseAbs().maxCoeff() == 0.0) {
    if (upper) *upper = 0.0;
    return 0.0;
  }
  const NormEstimate est = opnorm_estimate(diff, s1, s2, opts);
  if (upper) *upper = est.upper;
  return est.lower;
}

ConvergenceRow make_row(int l, double distance, double lhs_lower, double lhs_upper, double rhs,
                        double rhs_sqrt_variant) {
  ConvergenceRow row;
  row.l = l;
  row.distance = distance;
  row.lhs_lower = lhs_lower;
  row.lhs_upper = lhs_upper;
  row.rhs = rhs;
  row.rhs_sqrt_variant = rhs_sqrt_variant;
  row.ratio = rhs > 0.0 ? lhs_lower / rhs : (lhs_lower == 0.0 ? 0.0 : kInf);
  row.pass = lhs_lower <= rhs + 1e-12 * std::max(1.0, rhs);
  return row;
}

}  // namespace

bool ConvergenceTable::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.pass; });
}

SequenceDistance lp_distance(const FunctionalSequence& a, const FunctionalSequence& b,
                             double exponent) {
  if (!(a.host == b.host)) throw DimensionError("sequence distance: hosts disagree");
  return distance_impl(a.elements, b.elements, a.element_space(), exponent);
}

SequenceDistance lp_distance(const VectorSequence& a, const VectorSequence& b, double exponent) {
  if (!(a.host == b.host)) throw DimensionError("sequence distance: hosts disagree");
  return distance_impl(a.elements, b.elements, a.element_space(), exponent);
}

std::vector<CheckReport> perturbed_bessel_bound_check(const FunctionalSequence& psi,
                                                      const FunctionalSequence& phi,
                                                      const NormEstimate& B, double exponent,
                                                      const EstimatorOptions& opts) {
  const double mu = lp_distance(psi, phi, exponent).value;
  std::vector<CheckReport> reports;

  const NormEstimate B_phi = bessel_bound(phi, opts);
  CheckReport bound = make_inequality_report("B(perturbed) <= B + mu", B_phi.lower, B.upper + mu);
  bound.details["mu"] = mu;
  bound.details["B_perturbed_lower"] = B_phi.lower;
  reports.push_back(bound);

  const double s = psi.host.norm_exponent;
  const double p = psi.coeff.p();
  const Mat diff = phi.elements - psi.elements;
  const double analysis_diff = difference_norm_lower(diff, s, p, opts);
  reports.push_back(
      make_inequality_report("opnorm(U_perturbed - U) <= mu", analysis_diff, mu));
  const double synthesis_diff =
      difference_norm_lower(diff.transpose(), psi.coeff.q(), psi.element_space().norm_exponent,
                            opts);
  reports.push_back(
      make_inequality_report("opnorm(T_perturbed - T) <= mu", synthesis_diff, mu));
  return reports;
}

ConvergenceTable continuity_symbol(const Multiplier& M, const std::vector<Symbol>& family,
                                   double p1, const EstimatorOptions& opts) {
  const NormEstimate B1 = bessel_bound(M.analysis, opts);
  const NormEstimate B2 = bessel_bound(M.synthesis, opts);
  const double s1 = M.source_space().norm_exponent;
  const double s2 = M.target_space().norm_exponent;

  ConvergenceTable table;
  table.claim = "opnorm(M_symbol_step - M) <= |m_step - m|_p1 * B1 * B2";
  int l = 0;
  for (const Symbol& m_l : family) {
    ++l;
    detail::check_same_length(m_l.values.size(), M.symbol.values.size(), "symbol family");
    const Symbol delta(Vec(m_l.values - M.symbol.values));
    const Mat diff = build_multiplier(delta, M.synthesis, M.analysis).matrix;
    double upper = 0.0;
    const double lhs = difference_norm_lower(diff, s1, s2, opts, &upper);
    const double dist = delta.r_norm(p1);
    table.rows.push_back(make_row(l, dist, lhs, upper, dist * B1.upper * B2.upper,
                                  dist * std::sqrt(B1.upper * B2.upper)));
  }
  return table;
}

ConvergenceTable continuity_analysis(const Multiplier& M,
                                     const std::vector<FunctionalSequence>& family, double q1,
                                     const EstimatorOptions& opts) {
  const NormEstimate B2 = bessel_bound(M.synthesis, opts);
  const double p1 = conjugate_exponent(q1);
  const double m_p1 = M.symbol.r_norm(p1);
  const double s1 = M.source_space().norm_exponent;
  const double s2 = M.target_space().norm_exponent;

  ConvergenceTable table;
  table.claim = "opnorm(M_analysis_step - M) <= B2 * |m|_p1 * dist_q1";
  int l = 0;
  for (const FunctionalSequence& psi_l : family) {
    ++l;
    const double dist = lp_distance(psi_l, M.analysis, q1).value;
    const Mat diff = build_multiplier(M.symbol, M.synthesis, psi_l).matrix - M.matrix;
    double upper = 0.0;
    const double lhs = difference_norm_lower(diff, s1, s2, opts, &upper);
    table.rows.push_back(make_row(l, dist, lhs, upper, B2.upper * m_p1 * dist,
                                  std::sqrt(B2.upper) * m_p1 * dist));
  }
  return table;
}

ConvergenceTable continuity_synthesis(const Multiplier& M,
                                      const std::vector<VectorSequence>& family, double q1,
                                      const EstimatorOptions& opts) {
  const NormEstimate B1 = bessel_bound(M.analysis, opts);
  const double p1 = conjugate_exponent(q1);
  const double m_p1 = M.symbol.r_norm(p1);
  const double s1 = M.source_space().norm_exponent;
  const double s2 = M.target_space().norm_exponent;

  ConvergenceTable table;
  table.claim = "opnorm(M_synthesis_step - M) <= B1 * |m|_p1 * dist_q1";
  int l = 0;
  for (const VectorSequence& phi_l : family) {
    ++l;
    const double dist = lp_distance(phi_l, M.synthesis, q1).value;
    const Mat diff = build_multiplier(M.symbol, phi_l, M.analysis).matrix - M.matrix;
    double upper = 0.0;
    const double lhs = difference_norm_lower(diff, s1, s2, opts, &upper);
    table.rows.push_back(make_row(l, dist, lhs, upper, B1.upper * m_p1 * dist,
                                  std::sqrt(B1.upper) * m_p1 * dist));
  }
  return table;
}

ConvergenceTable continuity_joint(const Multiplier& M, const std::vector<Symbol>& symbols,
                                  const std::vector<FunctionalSequence>& analyses,
                                  const std::vector<VectorSequence>& syntheses, double p1,
                                  double q1, const EstimatorOptions& opts) {
  if (symbols.size() != analyses.size() || symbols.size() != syntheses.size())
    throw DimensionError("joint sweep: families must share the step count");
  const NormEstimate B1 = bessel_bound(M.analysis, opts);
  const double m_p1 = M.symbol.r_norm(p1);
  const double s1 = M.source_space().norm_exponent;
  const double s2 = M.target_space().norm_exponent;

  ConvergenceTable table;
  table.claim = "opnorm(M_step - M) <= symbol + analysis + synthesis chain bounds";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const int l = static_cast<int>(i) + 1;
    const Symbol& m_l = symbols[i];
    const FunctionalSequence& psi_l = analyses[i];
    const VectorSequence& phi_l = syntheses[i];
    detail::check_same_length(m_l.values.size(), M.symbol.values.size(), "symbol family");

    const Symbol delta_m(Vec(m_l.values - M.symbol.values));
    const double dm = delta_m.r_norm(p1);
    const double dpsi = lp_distance(psi_l, M.analysis, q1).value;
    const double dphi = lp_distance(phi_l, M.synthesis, q1).value;

    // Perturbed-family certificates enter the chained bounds.
    const NormEstimate B1_l = bessel_bound(psi_l, opts);
    const NormEstimate B2_l = bessel_bound(phi_l, opts);

    const double rhs = dm * B1_l.upper * B2_l.upper + B2_l.upper * m_p1 * dpsi +
                       B1.upper * m_p1 * dphi;
    const double rhs_sqrt = dm * std::sqrt(B1_l.upper * B2_l.upper) +
                            std::sqrt(B2_l.upper) * m_p1 * dpsi +
                            std::sqrt(B1.upper) * m_p1 * dphi;

    const Mat diff = build_multiplier(m_l, phi_l, psi_l).matrix - M.matrix;
    double upper = 0.0;
    const double lhs = difference_norm_lower(diff, s1, s2, opts, &upper);
    table.rows.push_back(make_row(l, dm + dpsi + dphi, lhs, upper, rhs, rhs_sqrt));
  }
  return table;
}

}  // namespace besselmult
