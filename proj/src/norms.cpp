#include "besselmult/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>

namespace besselmult {

namespace {

constexpr double kTieFuzz = 0.0;  // strict > keeps the lowest restart index on ties

Field matrix_field(const Mat& A) {
  return detail::is_effectively_real(A) ? Field::real : Field::complex_scalars;
}

NormEstimate zero_matrix_estimate(Eigen::Index n, EstimateMethod method) {
  NormEstimate e;
  e.lower = 0.0;
  e.upper = 0.0;
  e.witness = Vec::Zero(n);
  e.witness[0] = 1.0;
  e.method = method;
  e.stationary = true;
  return e;
}

void require_power_exponent(double e, const char* name) {
  if (!(e > 1.0) || std::isinf(e))
    throw InvalidArgument(std::string("power iteration requires ") + name +
                          " in (1, inf); use the sampling oracle or the interpolation bound "
                          "for the endpoint exponents");
}

double max_abs_col_sum(const Mat& A) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j) best = std::max(best, A.col(j).cwiseAbs().sum());
  return best;
}

double max_abs_row_sum(const Mat& A) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) best = std::max(best, A.row(i).cwiseAbs().sum());
  return best;
}

// (sum_i ||row_i||_{s'}^t)^{1/t}; exact bound ||A||_{s->t} <= rows_bound.
double rows_holder_bound(const Mat& A, double s, double t) {
  const double sp = conjugate_exponent(s);
  RealVec r(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    r[i] = lp_norm(A.row(i).transpose(), sp);
  return lp_norm(r.cast<Complex>(), t);
}

// (sum_j ||col_j||_t^{s'})^{1/s'}; exact bound ||A||_{s->t} <= cols_bound.
double cols_holder_bound(const Mat& A, double s, double t) {
  const double sp = conjugate_exponent(s);
  RealVec c(A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) c[j] = lp_norm(A.col(j), t);
  return lp_norm(c.cast<Complex>(), sp);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct DescentResult {
  double value = 0.0;
  Vec witness;
  bool stationary = false;
  int iterations = 0;
};

// Subgradient direction of x -> ||Ax||_t at unit x (with y = Ax given).
Vec gain_gradient(const Mat& A, const Vec& y, double v, double t) {
  Vec u;
  if (std::isinf(t)) {
    Eigen::Index imax;
    y.cwiseAbs().maxCoeff(&imax);
    u = Vec::Zero(y.size());
    u[imax] = phase(y[imax]);
  } else if (t == 1.0) {
    u = Vec(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) u[i] = phase(y[i]);
  } else {
    u = norm_gradient_map(y / v, t);
  }
  return A.adjoint() * u;
}

DescentResult projected_descent(const Mat& A, double s, double t, Vec x, int max_iter,
                                double tol) {
  DescentResult res;
  const double nx = lp_norm(x, s);
  if (nx == 0.0) throw InternalError("descent start has zero norm");
  x /= nx;
  double v = lp_norm(A * x, t);
  res.value = v;
  res.witness = x;
  for (int k = 0; k < max_iter; ++k) {
    ++res.iterations;
    const Vec y = A * x;
    if (v == 0.0) {
      res.stationary = true;
      break;
    }
    const Vec g = gain_gradient(A, y, v, t);
    const double gn = g.norm();
    if (gn == 0.0) {
      res.stationary = true;
      break;
    }
    double alpha = 0.5 / gn;
    double vn = v;
    Vec xn = x;
    bool improved = false;
    while (alpha > 1e-18 / gn) {
      Vec cand = x - alpha * g;
      const double cn = lp_norm(cand, s);
      if (cn > 0.0) {
        cand /= cn;
        const double cv = lp_norm(A * cand, t);
        if (cv < v) {
          xn = cand;
          vn = cv;
          improved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!improved) {
      res.stationary = true;
      break;
    }
    const bool settled = (v - vn) <= tol * std::max(vn, 1.0);
    x = xn;
    v = vn;
    if (v < res.value) {
      res.value = v;
      res.witness = x;
    }
    if (settled) {
      res.stationary = true;
      break;
    }
  }
  return res;
}

// Norm-equivalence constants ||x||_2 <-> ||x||_e on dimension d.
double min_gain_equivalence_lower(double sigma_min, Eigen::Index rows, Eigen::Index cols,
                                  double s, double t) {
  const double inv_t = std::isinf(t) ? 0.0 : 1.0 / t;
  const double inv_s = std::isinf(s) ? 0.0 : 1.0 / s;
  const double target_shrink = std::min(1.0, std::pow(double(rows), inv_t - 0.5));
  const double source_grow = std::max(1.0, std::pow(double(cols), inv_s - 0.5));
  return sigma_min * target_shrink / source_grow;
}

}  // namespace

std::string to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::power_iteration: return "power_iteration";
    case EstimateMethod::sampling_oracle: return "sampling_oracle";
    case EstimateMethod::interpolation: return "interpolation";
    case EstimateMethod::exact_spectral: return "exact_spectral";
  }
  return "unknown";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::p_bessel: return "p_bessel";
    case CertificateKind::p_frame: return "p_frame";
    case CertificateKind::q_riesz_sequence: return "q_riesz_sequence";
    case CertificateKind::q_riesz_basis: return "q_riesz_basis";
  }
  return "unknown";
}

std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root ^ splitmix64(index + 1));
}

Vec random_unit_vector(int dim, double s, Field field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec x(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = field == Field::complex_scalars ? gauss(rng) : 0.0;
    x[i] = Complex(re, im);
  }
  const double n = lp_norm(x, s);
  if (n == 0.0) {
    x.setZero();
    x[0] = 1.0;
    return x;
  }
  return x / n;
}

double witness_value(const Mat& A, double s, double t, const Vec& w) {
  const double nw = lp_norm(w, s);
  if (nw == 0.0) throw InvalidArgument("witness has zero norm");
  return lp_norm(A * w, t) / nw;
}

double spectral_norm(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double spectral_min_gain(const Mat& A) {
  if (A.rows() < A.cols()) return 0.0;
  Eigen::JacobiSVD<Mat> svd(A);
  return svd.singularValues()(A.cols() - 1);
}

AscentTrace power_iteration_run(const Mat& A, double s, double t, const Vec& start, int max_iter,
                                double tol) {
  require_power_exponent(s, "the source exponent");
  require_power_exponent(t, "the target exponent");
  const double sp = conjugate_exponent(s);
  AscentTrace trace;
  const double ns = lp_norm(start, s);
  if (ns == 0.0) throw InvalidArgument("power iteration start has zero norm");
  Vec x = start / ns;
  trace.witness = x;
  double best = -1.0;
  double prev = -1.0;
  for (int k = 0; k < max_iter; ++k) {
    ++trace.iterations;
    const Vec y = A * x;
    const double v = lp_norm(y, t);
    trace.values.push_back(v);
    if (v > best) {
      best = v;
      trace.witness = x;
    }
    if (v == 0.0) break;  // started inside the kernel
    if (k > 0 && std::abs(v - prev) <= tol * std::max(v, 1.0)) {
      trace.stationary = true;
      break;
    }
    prev = v;
    const Vec u = norm_gradient_map(y / v, t);
    Vec g = A.adjoint() * u;
    const double gm = g.cwiseAbs().maxCoeff();
    if (gm == 0.0) {
      trace.stationary = true;
      break;
    }
    const Vec xr = norm_gradient_map(g / gm, sp);
    const double nr = lp_norm(xr, s);
    if (nr == 0.0) {
      trace.stationary = true;
      break;
    }
    x = xr / nr;
  }
  return trace;
}

double opnorm_upper_interpolation(const Mat& A, double s, double t) {
  if (!is_norm_exponent(s) || !is_norm_exponent(t))
    throw InvalidArgument("norm exponent must lie in [1, inf]");
  if (s == t) {
    const double c = max_abs_col_sum(A);
    const double r = max_abs_row_sum(A);
    if (c == 0.0 || r == 0.0) return 0.0;
    const double inv_p = std::isinf(s) ? 0.0 : 1.0 / s;
    return std::pow(c, inv_p) * std::pow(r, 1.0 - inv_p);
  }
  return std::min(rows_holder_bound(A, s, t), cols_holder_bound(A, s, t));
}

NormEstimate opnorm_power(const Mat& A, double s, double t, const EstimatorOptions& opts) {
  require_power_exponent(s, "the source exponent");
  require_power_exponent(t, "the target exponent");
  if (A.size() == 0) throw InvalidArgument("empty matrix");
  if (A.cwiseAbs().maxCoeff() == 0.0) return zero_matrix_estimate(A.cols(), EstimateMethod::power_iteration);

  const Field field = matrix_field(A);
  const double sp = conjugate_exponent(s);
  NormEstimate est;
  est.method = EstimateMethod::power_iteration;
  est.seed = opts.seed;
  est.lower = -1.0;
  est.stationary = true;

  // Deterministic starts first: the best canonical column, then the Hoelder
  // extremal of the heaviest row. Remaining restarts are seeded random.
  std::vector<Vec> starts;
  {
    Eigen::Index jbest = 0;
    double cbest = -1.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double c = lp_norm(A.col(j), t);
      if (c > cbest) {
        cbest = c;
        jbest = j;
      }
    }
    Vec e = Vec::Zero(A.cols());
    e[jbest] = 1.0;
    starts.push_back(e);
    Eigen::Index ibest = 0;
    double rbest = -1.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const double r = lp_norm(A.row(i).transpose(), sp);
      if (r > rbest) {
        rbest = r;
        ibest = i;
      }
    }
    starts.push_back(holder_extremal(A.row(ibest).transpose(), s));
  }
  const int total = std::max(opts.restarts, static_cast<int>(starts.size()));
  for (int r = static_cast<int>(starts.size()); r < total; ++r)
    starts.push_back(random_unit_vector(static_cast<int>(A.cols()), s, field, mix_seed(opts.seed, r)));

  bool any_stationary = false;
  for (const Vec& start : starts) {
    const AscentTrace trace = power_iteration_run(A, s, t, start, opts.max_iter, opts.tol);
    est.iterations += trace.iterations;
    const double v = trace.values.empty() ? 0.0 : *std::max_element(trace.values.begin(), trace.values.end());
    if (v > est.lower + kTieFuzz) {
      est.lower = v;
      est.witness = trace.witness;
      est.stationary = trace.stationary;
    }
    any_stationary = any_stationary || trace.stationary;
  }
  // Re-evaluate so the stored witness reproduces the bound exactly.
  est.lower = witness_value(A, s, t, est.witness);

  double upper = opnorm_upper_interpolation(A, s, t);
  if (s == 2.0 && t == 2.0) upper = std::min(upper, spectral_norm(A) * (1.0 + 1e-12));
  if (est.lower > upper) {
    if (est.lower > upper * (1.0 + 1e-9) + 1e-12)
      throw InternalError("operator norm lower bound exceeds its certified upper bound");
    upper = est.lower;
  }
  est.upper = upper;
  return est;
}

NormEstimate opnorm_sampling_oracle(const Mat& A, double s, double t, int grid_density,
                                    std::uint64_t seed) {
  if (!is_norm_exponent(s) || !is_norm_exponent(t))
    throw InvalidArgument("norm exponent must lie in [1, inf]");
  if (grid_density < 2) throw InvalidArgument("grid density must be at least 2");
  if (A.size() == 0) throw InvalidArgument("empty matrix");
  const Field field = matrix_field(A);
  const int n = static_cast<int>(A.cols());
  const int d = field == Field::complex_scalars ? 2 * n : n;
  if (d > 4)
    throw InvalidArgument("sampling oracle is limited to source dimension <= 4 (real coordinates); "
                          "use opnorm_power for larger problems");
  if (A.cwiseAbs().maxCoeff() == 0.0) return zero_matrix_estimate(n, EstimateMethod::sampling_oracle);

  NormEstimate est;
  est.method = EstimateMethod::sampling_oracle;
  est.seed = seed;
  est.lower = -1.0;

  const auto to_scalar_vector = [&](const RealVec& u) {
    Vec x(n);
    if (field == Field::complex_scalars) {
      for (int i = 0; i < n; ++i) x[i] = Complex(u[2 * i], u[2 * i + 1]);
    } else {
      for (int i = 0; i < n; ++i) x[i] = u[i];
    }
    return x;
  };
  const auto consider = [&](const Vec& raw) {
    const double nr = lp_norm(raw, s);
    if (nr == 0.0) return;
    const Vec x = raw / nr;
    const double v = lp_norm(A * x, t);
    ++est.iterations;
    if (v > est.lower) {
      est.lower = v;
      est.witness = x;
    }
  };

  // Deterministic direction grid (angles on the Euclidean sphere; the gain is
  // scale invariant, so each direction is renormalized to the s-sphere).
  constexpr long kMaxGridPoints = 4'000'000;
  const double pi = std::acos(-1.0);
  if (d == 1) {
    RealVec u(1);
    u[0] = 1.0;
    consider(to_scalar_vector(u));
  } else if (d == 2) {
    const int N = grid_density;
    for (int j = 0; j < N; ++j) {
      const double th = 2.0 * pi * j / N;
      RealVec u(2);
      u << std::cos(th), std::sin(th);
      consider(to_scalar_vector(u));
    }
  } else if (d == 3) {
    long N = grid_density;
    while ((N / 2 + 1) * N > kMaxGridPoints) N /= 2;
    for (long i = 0; i <= N / 2; ++i) {
      const double th = pi * i / (N / 2);
      for (long j = 0; j < N; ++j) {
        const double ph = 2.0 * pi * j / N;
        RealVec u(3);
        u << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
        consider(to_scalar_vector(u));
      }
    }
  } else {
    long N = grid_density;
    while ((N / 2 + 1) * (N / 2 + 1) * N > kMaxGridPoints) N /= 2;
    for (long i = 0; i <= N / 2; ++i) {
      const double a1 = pi * i / (N / 2);
      for (long j = 0; j <= N / 2; ++j) {
        const double a2 = pi * j / (N / 2);
        for (long k = 0; k < N; ++k) {
          const double a3 = 2.0 * pi * k / N;
          RealVec u(4);
          u << std::cos(a1), std::sin(a1) * std::cos(a2), std::sin(a1) * std::sin(a2) * std::cos(a3),
              std::sin(a1) * std::sin(a2) * std::sin(a3);
          consider(to_scalar_vector(u));
        }
      }
    }
  }

  // Canonical vectors, per-row Hoelder extremals, and seeded random points.
  for (int j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    consider(e);
  }
  for (Eigen::Index i = 0; i < A.rows(); ++i) consider(holder_extremal(A.row(i).transpose(), s));
  std::mt19937_64 rng(mix_seed(seed, 0xabcdULL));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const long randoms = std::min<long>(kMaxGridPoints, 1000L + 100L * grid_density);
  for (long r = 0; r < randoms; ++r) {
    Vec x(n);
    for (int i = 0; i < n; ++i)
      x[i] = Complex(gauss(rng), field == Field::complex_scalars ? gauss(rng) : 0.0);
    consider(x);
  }

  est.lower = witness_value(A, s, t, est.witness);
  est.upper = std::max(opnorm_upper_interpolation(A, s, t), est.lower);
  est.stationary = true;
  return est;
}

NormEstimate opnorm_estimate(const Mat& A, double s, double t, const EstimatorOptions& opts) {
  if (!is_norm_exponent(s) || !is_norm_exponent(t))
    throw InvalidArgument("norm exponent must lie in [1, inf]");
  if (A.size() == 0) throw InvalidArgument("empty matrix");
  if (A.cwiseAbs().maxCoeff() == 0.0) return zero_matrix_estimate(A.cols(), EstimateMethod::interpolation);

  const bool power_ok = s > 1.0 && !std::isinf(s) && t > 1.0 && !std::isinf(t);
  if (power_ok) return opnorm_power(A, s, t, opts);

  NormEstimate est;
  est.method = EstimateMethod::interpolation;
  est.seed = opts.seed;
  est.stationary = true;
  if (s == 1.0) {
    // ||A||_{1->t} = max_j ||col_j||_t, attained at a canonical vector.
    Eigen::Index jbest = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double c = lp_norm(A.col(j), t);
      if (c > best) {
        best = c;
        jbest = j;
      }
    }
    est.witness = Vec::Zero(A.cols());
    est.witness[jbest] = 1.0;
  } else if (std::isinf(t)) {
    // ||A||_{s->inf} = max_i ||row_i||_{s'}, attained at that row's extremal.
    Eigen::Index ibest = 0;
    double best = -1.0;
    const double sp = conjugate_exponent(s);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const double r = lp_norm(A.row(i).transpose(), sp);
      if (r > best) {
        best = r;
        ibest = i;
      }
    }
    est.witness = holder_extremal(A.row(ibest).transpose(), s);
  } else if (std::isinf(s) && matrix_field(A) == Field::real && A.cols() <= 12) {
    // Real unit inf-ball: the maximum sits at a sign vector; enumerate them.
    const int n = static_cast<int>(A.cols());
    double best = -1.0;
    Vec bw;
    for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
      Vec x(n);
      x[0] = 1.0;
      for (int i = 1; i < n; ++i) x[i] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
      const double v = lp_norm(A * x, t);
      if (v > best) {
        best = v;
        bw = x;
      }
    }
    est.witness = bw;
  } else {
    const int real_dim =
        matrix_field(A) == Field::complex_scalars ? 2 * static_cast<int>(A.cols()) : static_cast<int>(A.cols());
    if (real_dim <= 4) return opnorm_sampling_oracle(A, s, t, 512, opts.seed);
    // Best-effort probe set; the bracket stays sound, just not tight.
    double best = -1.0;
    Vec bw;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      Vec e = Vec::Zero(A.cols());
      e[j] = 1.0;
      const double v = witness_value(A, s, t, e);
      if (v > best) {
        best = v;
        bw = e;
      }
    }
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const Vec z = holder_extremal(A.row(i).transpose(), s);
      const double v = witness_value(A, s, t, z);
      if (v > best) {
        best = v;
        bw = z;
      }
    }
    for (int r = 0; r < opts.restarts; ++r) {
      const Vec z = random_unit_vector(static_cast<int>(A.cols()), s, matrix_field(A), mix_seed(opts.seed, r));
      const double v = witness_value(A, s, t, z);
      if (v > best) {
        best = v;
        bw = z;
      }
    }
    est.witness = bw;
  }
  est.lower = witness_value(A, s, t, est.witness);
  est.upper = std::max(opnorm_upper_interpolation(A, s, t), est.lower);
  return est;
}

NormEstimate min_gain_estimate(const Mat& A, double s, double t, const EstimatorOptions& opts) {
  if (!is_norm_exponent(s) || !is_norm_exponent(t))
    throw InvalidArgument("norm exponent must lie in [1, inf]");
  if (A.size() == 0) throw InvalidArgument("empty matrix");
  const Eigen::Index rows = A.rows(), cols = A.cols();

  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const RealVec sigma = svd.singularValues();
  const double smax = sigma.size() ? sigma(0) : 0.0;
  const double rank_tol = smax * std::max(rows, cols) * std::numeric_limits<double>::epsilon();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > rank_tol) ++rank;

  NormEstimate est;
  est.seed = opts.seed;
  if (rank < cols) {
    // Nontrivial kernel: the modulus is zero, witnessed by a null vector.
    const Vec null_dir = svd.matrixV().col(cols - 1);
    est.witness = null_dir / lp_norm(null_dir, s);
    est.lower = 0.0;
    est.upper = witness_value(A, s, t, est.witness);
    est.method = EstimateMethod::exact_spectral;
    est.stationary = true;
    return est;
  }
  const double sigma_min = sigma(cols - 1);
  if (s == 2.0 && t == 2.0) {
    const Vec v = svd.matrixV().col(cols - 1);
    est.witness = v / lp_norm(v, 2.0);
    est.upper = witness_value(A, s, t, est.witness);
    est.lower = std::min(sigma_min * (1.0 - 1e-12), est.upper);
    est.method = EstimateMethod::exact_spectral;
    est.stationary = true;
    return est;
  }

  est.method = EstimateMethod::power_iteration;
  const Field field = matrix_field(A);
  std::vector<Vec> starts;
  for (Eigen::Index j = 0; j < cols; ++j) {
    Vec e = Vec::Zero(cols);
    e[j] = 1.0;
    starts.push_back(e);
  }
  starts.push_back(svd.matrixV().col(cols - 1));
  for (int r = 0; r < opts.restarts; ++r)
    starts.push_back(random_unit_vector(static_cast<int>(cols), s, field, mix_seed(opts.seed, 1000 + r)));

  double best = std::numeric_limits<double>::infinity();
  Vec bw;
  bool stationary = true;
  for (const Vec& start : starts) {
    const DescentResult run = projected_descent(A, s, t, start, opts.max_iter, opts.tol);
    est.iterations += run.iterations;
    stationary = stationary && run.stationary;
    if (run.value < best) {
      best = run.value;
      bw = run.witness;
    }
  }
  est.witness = bw;
  est.upper = witness_value(A, s, t, est.witness);
  est.lower = std::min(min_gain_equivalence_lower(sigma_min, rows, cols, s, t), est.upper);
  est.stationary = stationary;
  return est;
}

// ---------------------------------------------------------------------------
// Sequence-level bounds
// ---------------------------------------------------------------------------

namespace {

void assert_element_norms_below(const Mat& elements, const Space& element_space, double upper) {
  const double slack = upper * 1e-9 + 1e-12;
  for (Eigen::Index k = 0; k < elements.rows(); ++k) {
    const double en = lp_norm(elements.row(k).transpose(), element_space.norm_exponent);
    if (en > upper + slack)
      throw InternalError("element norm exceeds the certified Bessel bound");
  }
}

NormEstimate analysis_bound(const Mat& elements, double source_exponent, double target_exponent,
                            const Space& element_space, const EstimatorOptions& opts) {
  NormEstimate est = opnorm_estimate(elements, source_exponent, target_exponent, opts);
  assert_element_norms_below(elements, element_space, est.upper);
  return est;
}

BoundsCertificate synthesis_bounds(const Mat& elements, double q, const Space& target,
                                   const EstimatorOptions& opts, bool require_basis,
                                   int host_dim) {
  CoefficientExponent check_q(q);  // validates (1, inf)
  (void)check_q;
  const Eigen::Index K = elements.rows();
  if (require_basis && K != host_dim)
    throw PreconditionError("a basis needs exactly dim elements; got K=" + std::to_string(K) +
                            " for dimension " + std::to_string(host_dim));
  const Mat T = elements.transpose();
  BoundsCertificate cert;
  cert.B_est = opnorm_estimate(T, q, target.norm_exponent, opts);
  cert.A_est = min_gain_estimate(T, q, target.norm_exponent, opts);
  const bool lower_positive = cert.A_est.lower > opts.tol;
  if (K == host_dim && lower_positive)
    cert.kind = CertificateKind::q_riesz_basis;
  else if (lower_positive)
    cert.kind = CertificateKind::q_riesz_sequence;
  else
    cert.kind = CertificateKind::p_bessel;
  if (cert.kind == CertificateKind::q_riesz_basis) {
    // For a basis every element norm sits between the two constants.
    for (Eigen::Index k = 0; k < K; ++k) {
      const double en = lp_norm(elements.row(k).transpose(), target.norm_exponent);
      if (cert.A_est.upper > en * (1.0 + 1e-9) + 1e-12 || en > cert.B_est.upper * (1.0 + 1e-9) + 1e-12)
        throw InternalError("certified Riesz bounds do not bracket the element norms");
    }
  }
  return cert;
}

}  // namespace

NormEstimate bessel_bound(const FunctionalSequence& seq, const EstimatorOptions& opts) {
  return analysis_bound(seq.elements, seq.host.norm_exponent, seq.coeff.p(), seq.element_space(),
                        opts);
}

NormEstimate bessel_bound(const VectorSequence& seq, const EstimatorOptions& opts) {
  return analysis_bound(seq.elements, seq.host.dual().norm_exponent, seq.coeff.p(),
                        seq.element_space(), opts);
}

BoundsCertificate riesz_bounds(const FunctionalSequence& seq, double q,
                               const EstimatorOptions& opts, bool require_basis) {
  return synthesis_bounds(seq.elements, q, seq.element_space(), opts, require_basis, seq.host.dim);
}

BoundsCertificate riesz_bounds(const VectorSequence& seq, double q, const EstimatorOptions& opts,
                               bool require_basis) {
  return synthesis_bounds(seq.elements, q, seq.element_space(), opts, require_basis, seq.host.dim);
}

BoundsCertificate riesz_bounds(const FunctionalSequence& seq, const EstimatorOptions& opts,
                               bool require_basis) {
  return riesz_bounds(seq, seq.coeff.q(), opts, require_basis);
}

BoundsCertificate riesz_bounds(const VectorSequence& seq, const EstimatorOptions& opts,
                               bool require_basis) {
  return riesz_bounds(seq, seq.coeff.q(), opts, require_basis);
}

BoundsCertificate frame_bounds(const FunctionalSequence& seq, const EstimatorOptions& opts) {
  BoundsCertificate cert;
  cert.B_est = bessel_bound(seq, opts);
  cert.A_est = min_gain_estimate(seq.elements, seq.host.norm_exponent, seq.coeff.p(), opts);
  cert.kind = cert.A_est.lower > opts.tol ? CertificateKind::p_frame : CertificateKind::p_bessel;
  return cert;
}

NormEstimate weak_p_norm_estimate(const VectorSequence& seq, double p,
                                  const EstimatorOptions& opts) {
  if (!is_norm_exponent(p)) throw InvalidArgument("norm exponent must lie in [1, inf]");
  return opnorm_estimate(seq.elements, seq.host.dual().norm_exponent, p, opts);
}

double weak_p_norm(const VectorSequence& seq, double p, const EstimatorOptions& opts) {
  return weak_p_norm_estimate(seq, p, opts).upper;
}

}  // namespace besselmult
