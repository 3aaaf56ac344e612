#include "besselmult/duality.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace besselmult {

namespace {

// Inverse of a square system matrix, with singularity and conditioning guards.
Mat guarded_inverse(const Mat& G, int host_dim, const char* what) {
  const Eigen::Index K = G.rows();
  if (K != host_dim)
    throw PreconditionError(std::string(what) + ": not a basis, K=" + std::to_string(K) +
                            " differs from dim=" + std::to_string(host_dim));
  Eigen::JacobiSVD<Mat> svd(G);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(K - 1);
  if (smin <= smax * K * std::numeric_limits<double>::epsilon())
    throw PreconditionError(std::string(what) +
                            ": not a Riesz basis (smallest singular value " +
                            std::to_string(smin) + ")");
  if (smax / smin > kDualConditionLimit)
    throw PreconditionError(std::string(what) + ": condition number " +
                            std::to_string(smax / smin) + " exceeds " +
                            std::to_string(kDualConditionLimit));
  return G.partialPivLu().solve(Mat::Identity(K, K));
}

double system_condition(const Mat& G) {
  Eigen::JacobiSVD<Mat> svd(G);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : svd.singularValues()(0) / smin;
}

std::optional<Vec> kernel_witness_impl(const Mat& elements, const Space& element_space, double q) {
  CoefficientExponent check(q);
  (void)check;
  const Mat T = elements.transpose();
  Eigen::JacobiSVD<Mat> svd(T, Eigen::ComputeFullV);
  const Eigen::Index K = T.cols();
  const Vec candidate = svd.matrixV().col(K - 1);
  const Vec d = candidate / lp_norm(candidate, q);
  const double residual = lp_norm(T * d, element_space.norm_exponent);
  if (residual <= 1e-10) return d;
  return std::nullopt;
}

}  // namespace

FunctionalSequence dual_functionals(const VectorSequence& seq) {
  const Mat inv = guarded_inverse(seq.elements, seq.host.dim, "synthesis system");
  return FunctionalSequence(seq.host, inv.transpose(), seq.coeff.conjugate());
}

DualSystem dual_riesz_basis(const FunctionalSequence& seq, const EstimatorOptions& opts) {
  const Mat inv = guarded_inverse(seq.elements, seq.host.dim, "analysis system");
  const int K = seq.size();

  DualSystem sys;
  sys.original = seq;
  sys.dual = VectorSequence(seq.host, inv.transpose(), seq.coeff.conjugate());
  sys.condition_number = system_condition(seq.elements);

  const CheckReport biorth = biorthogonality_check(sys.original, sys.dual, 1e-10);
  if (!biorth.pass)
    throw PreconditionError("dual fails biorthogonality at max deviation " +
                            std::to_string(biorth.lhs) + "; condition number " +
                            std::to_string(sys.condition_number) + " is too high");

  // Both reconstruction identities on deterministic random probes.
  const double scale = seq.elements.cwiseAbs().maxCoeff();
  for (int trial = 0; trial < 8; ++trial) {
    const Vec f = random_unit_vector(K, 2.0, seq.host.field, mix_seed(opts.seed, 7000 + trial));
    const Vec f_rec = synthesis_apply(sys.dual, analysis_apply(sys.original, f));
    if ((f_rec - f).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, scale))
      throw PreconditionError("dual system fails vector reconstruction; condition number " +
                              std::to_string(sys.condition_number) + " is too high");
    const Vec g = random_unit_vector(K, 2.0, seq.host.field, mix_seed(opts.seed, 8000 + trial));
    const Vec g_rec = synthesis_apply(sys.original, analysis_apply(sys.dual, g));
    if ((g_rec - g).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, scale))
      throw PreconditionError("dual system fails functional reconstruction; condition number " +
                              std::to_string(sys.condition_number) + " is too high");
  }

  sys.bounds_original = riesz_bounds(seq, opts);
  sys.bounds_dual = riesz_bounds(sys.dual, opts);
  return sys;
}

CheckReport biorthogonality_check(const FunctionalSequence& g, const VectorSequence& f,
                                  double tol) {
  detail::check_same_length(g.size(), f.size(), "biorthogonality check");
  detail::check_same_length(g.elements.cols(), f.elements.cols(), "biorthogonality check");
  const Mat gram = g.elements * f.elements.transpose();  // (i, j) = g_i(f_j)
  const Mat dev = gram - Mat::Identity(gram.rows(), gram.cols());
  CheckReport rep;
  rep.claim = "max |g_i(f_j) - delta_ij| <= tol";
  rep.lhs = dev.cwiseAbs().maxCoeff();
  rep.rhs = tol;
  rep.slack = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs;
  return rep;
}

std::optional<Vec> kernel_witness(const FunctionalSequence& seq, double q) {
  return kernel_witness_impl(seq.elements, seq.element_space(), q);
}

std::optional<Vec> kernel_witness(const VectorSequence& seq, double q) {
  return kernel_witness_impl(seq.elements, seq.element_space(), q);
}

Multiplier invert_multiplier(const Multiplier& M, double tol, const EstimatorOptions& opts) {
  const double min_abs = M.symbol.min_abs();
  if (min_abs <= tol)
    throw PreconditionError("symbol not semi-normalized: min |m_k| = " + std::to_string(min_abs) +
                            " <= " + std::to_string(tol));
  if (M.source_space().dim != M.target_space().dim)
    throw PreconditionError("multiplier inverse needs equal source and target dimensions; got " +
                            std::to_string(M.source_space().dim) + " and " +
                            std::to_string(M.target_space().dim));

  // Duals of both bases; the analysis dual synthesizes, the synthesis dual analyzes.
  const Mat psi_inv = guarded_inverse(M.analysis.elements, M.analysis.host.dim, "analysis system");
  const Mat phi_inv = guarded_inverse(M.synthesis.elements, M.synthesis.host.dim, "synthesis system");
  const VectorSequence psi_dual(M.analysis.host, psi_inv.transpose(), M.analysis.coeff.conjugate());
  const FunctionalSequence phi_dual(M.synthesis.host, phi_inv.transpose(),
                                    M.synthesis.coeff.conjugate());

  Symbol inverted(M.symbol.values.cwiseInverse());
  Multiplier inverse = build_multiplier(inverted, psi_dual, phi_dual);

  const Mat left = inverse.matrix * M.matrix;
  const Mat right = M.matrix * inverse.matrix;
  const Mat eye = Mat::Identity(M.source_space().dim, M.source_space().dim);
  const double worst = std::max((left - eye).cwiseAbs().maxCoeff(),
                                (right - eye).cwiseAbs().maxCoeff());
  if (worst > 1e-8)
    throw PreconditionError("multiplier inverse fails to compose to identity (max deviation " +
                            std::to_string(worst) + "); the system is too ill-conditioned");
  (void)opts;
  return inverse;
}

}  // namespace besselmult
