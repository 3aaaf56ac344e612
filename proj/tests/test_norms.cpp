#include <doctest.h>

#include "test_support.hpp"

using namespace bmtest;

namespace {

const Mat kShear = real_matrix({{1, 1}, {0, 1}});
const Mat kDiag23 = real_matrix({{2, 0}, {0, 3}});
const Mat kThreeRows = real_matrix({{1, 0}, {0, 1}, {1, 1}});

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("power iteration on a diagonal map") {
  const NormEstimate est = opnorm_power(kDiag23, 2.0, 2.0);
  CHECK(est.lower == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(est.witness[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(est.witness[0]) < 1e-9);
  CHECK(est.lower <= est.upper);
}

TEST_CASE("power iteration at exponent two matches the spectral oracle") {
  const double oracle = spectral_norm(kShear);
  CHECK(oracle == doctest::Approx(kGoldenRatio).epsilon(1e-14));
  const NormEstimate est = opnorm_power(kShear, 2.0, 2.0);
  CHECK(est.lower == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("power iteration away from two matches the sampling oracle") {
  const NormEstimate oracle = opnorm_sampling_oracle(kShear, 3.0, 3.0, 4000, 77);
  const NormEstimate est = opnorm_power(kShear, 3.0, 3.0);
  CHECK(est.lower == doctest::Approx(oracle.lower).epsilon(1e-3));
  CHECK(est.lower <= opnorm_upper_interpolation(kShear, 3.0, 3.0) * (1 + 1e-12));
}

TEST_CASE("interpolation upper bound formulas") {
  CHECK(opnorm_upper_interpolation(kShear, 2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(opnorm_upper_interpolation(Mat(Mat::Identity(5, 5)), 2.5, 2.5) == doctest::Approx(1.0));
  CHECK(opnorm_upper_interpolation(kDiag23, 3.0, 3.0) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("sampling oracle basics") {
  const NormEstimate est = opnorm_sampling_oracle(kDiag23, 2.0, 2.0, 1000, 5);
  CHECK(est.lower >= 3.0 * (1 - 1e-3));
  CHECK(est.lower <= 3.0 * (1 + 1e-12));
  CHECK(opnorm_sampling_oracle(Mat(Mat::Zero(2, 2)), 2.0, 2.0, 100, 5).lower == 0.0);
  CHECK(opnorm_sampling_oracle(kShear, 2.0, 2.0, 2000, 5).lower ==
        doctest::Approx(kGoldenRatio).epsilon(1e-3));
  CHECK_THROWS_AS(opnorm_sampling_oracle(Mat(Mat::Identity(5, 5)), 2.0, 2.0, 100, 5),
                  InvalidArgument);
}

TEST_CASE("power iteration rejects endpoint exponents") {
  CHECK_THROWS_AS(opnorm_power(kShear, 1.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(opnorm_power(kShear, 2.0, kInf), InvalidArgument);
  // The dispatcher still serves them with exact endpoint formulas.
  const NormEstimate one_norm = opnorm_estimate(kShear, 1.0, 1.0);
  CHECK(one_norm.lower == doctest::Approx(2.0).epsilon(1e-14));  // max column sum
  CHECK(one_norm.upper == doctest::Approx(2.0).epsilon(1e-14));
  const NormEstimate inf_norm = opnorm_estimate(kShear, kInf, kInf);
  CHECK(inf_norm.lower == doctest::Approx(2.0).epsilon(1e-14));  // max row sum
  const NormEstimate mixed = opnorm_estimate(kDiag23, 1.0, 2.0);
  CHECK(mixed.lower == doctest::Approx(3.0).epsilon(1e-14));  // best column
}

TEST_CASE("per-restart ascent values are nondecreasing") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const Mat A = random_matrix(4, 3, seed % 2 ? Field::real : Field::complex_scalars, seed);
    for (int r = 0; r < 4; ++r) {
      const Vec start = random_unit_vector(3, 1.5, Field::real, mix_seed(seed, r));
      const AscentTrace trace = power_iteration_run(A, 1.5, 3.0, start, 500, 1e-12);
      for (std::size_t i = 1; i < trace.values.size(); ++i)
        CHECK(trace.values[i] >= trace.values[i - 1] * (1 - 1e-12) - 1e-15);
    }
  }
}

TEST_CASE("witness reproduces the reported bound") {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const Mat A = random_matrix(5, 4, Field::real, seed);
    const NormEstimate est = opnorm_power(A, 1.5, 2.5);
    CHECK(witness_value(A, 1.5, 2.5, est.witness) ==
          doctest::Approx(est.lower).epsilon(1e-10));
    CHECK(lp_norm(est.witness, 1.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.lower <= est.upper * (1 + 1e-12));
  }
}

TEST_CASE("bessel bound examples") {
  const Space host(2, 2.0, Field::real);
  const CoefficientExponent p2(2.0);
  CHECK(bessel_bound(FunctionalSequence(host, Mat(Mat::Identity(2, 2)), p2)).lower ==
        doctest::Approx(1.0).epsilon(1e-10));

  // Oracle: largest eigenvalue of the Gram matrix [[2,1],[1,2]] is 3.
  const FunctionalSequence redundant(host, kThreeRows, p2);
  const NormEstimate B = bessel_bound(redundant);
  CHECK(spectral_norm(kThreeRows) == doctest::Approx(kSqrt3).epsilon(1e-14));
  CHECK(B.lower == doctest::Approx(kSqrt3).epsilon(1e-10));
  CHECK(B.upper == doctest::Approx(kSqrt3).epsilon(1e-10));

  // Homogeneity: scaling the rows scales the bound.
  const FunctionalSequence scaled(host, Mat(2.5 * kThreeRows), p2);
  CHECK(bessel_bound(scaled).lower == doctest::Approx(2.5 * kSqrt3).epsilon(1e-10));
}

TEST_CASE("riesz bounds: the golden-ratio pair") {
  const Space host(2, 2.0, Field::real);
  const CoefficientExponent p2(2.0);
  const BoundsCertificate id_cert =
      riesz_bounds(FunctionalSequence(host, Mat(Mat::Identity(2, 2)), p2), 2.0);
  CHECK(id_cert.A_est.upper == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(id_cert.B_est.lower == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(id_cert.kind == CertificateKind::q_riesz_basis);

  const FunctionalSequence pair(host, real_matrix({{1, 0}, {1, 1}}), p2);
  const BoundsCertificate cert = riesz_bounds(pair, 2.0);
  CHECK(cert.A_est.upper == doctest::Approx(kInvGoldenRatio).epsilon(1e-9));
  CHECK(cert.A_est.lower == doctest::Approx(kInvGoldenRatio).epsilon(1e-9));
  CHECK(cert.B_est.lower == doctest::Approx(kGoldenRatio).epsilon(1e-9));
  CHECK(cert.kind == CertificateKind::q_riesz_basis);
}

TEST_CASE("riesz bounds: redundant family has an explicit kernel") {
  const Space host(2, 2.0, Field::real);
  const BoundsCertificate cert =
      riesz_bounds(FunctionalSequence(host, kThreeRows, CoefficientExponent(2.0)), 2.0);
  CHECK(cert.A_est.lower == 0.0);
  CHECK(cert.A_est.upper < 1e-10);
  CHECK(cert.kind == CertificateKind::p_bessel);
  // The kernel direction is proportional to (1, 1, -1).
  const Vec d = cert.A_est.witness;
  const Vec expected = real_vector({1, 1, -1});
  const double overlap = std::abs(dual_pairing(d.conjugate(), expected)) /
                         (d.norm() * expected.norm());
  CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(riesz_bounds(FunctionalSequence(host, kThreeRows, CoefficientExponent(2.0)),
                               2.0, EstimatorOptions{}, true),
                  PreconditionError);
}

TEST_CASE("frame bounds examples") {
  const Space host(2, 2.0, Field::real);
  const CoefficientExponent p2(2.0);
  const BoundsCertificate cert = frame_bounds(FunctionalSequence(host, kThreeRows, p2));
  CHECK(cert.A_est.upper == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cert.B_est.lower == doctest::Approx(kSqrt3).epsilon(1e-9));
  CHECK(cert.kind == CertificateKind::p_frame);

  const BoundsCertificate degenerate =
      frame_bounds(FunctionalSequence(host, real_matrix({{1, 0}}), p2));
  CHECK(degenerate.A_est.lower == 0.0);
  CHECK(degenerate.A_est.upper < 1e-12);
  CHECK(std::abs(degenerate.A_est.witness[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(degenerate.kind == CertificateKind::p_bessel);

  const BoundsCertificate onb = frame_bounds(FunctionalSequence(host, Mat(Mat::Identity(2, 2)), p2));
  CHECK(onb.A_est.upper == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(onb.B_est.lower == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("weak norm of a vector family") {
  const Space host(2, 2.0, Field::real);
  const CoefficientExponent q2(2.0);
  CHECK(weak_p_norm(VectorSequence(host, Mat(Mat::Identity(2, 2)), q2), 2.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(weak_p_norm(VectorSequence(host, kThreeRows, q2), 2.0) ==
        doctest::Approx(kSqrt3).epsilon(1e-9));
  CHECK(weak_p_norm(VectorSequence(host, real_matrix({{-2.5, 0}}), q2), 2.0) ==
        doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("analysis and synthesis norms agree through duality") {
  for (std::uint64_t seed : {31u, 32u, 33u, 34u}) {
    const Field field = seed % 2 ? Field::real : Field::complex_scalars;
    const Mat phi = random_matrix(5, 3, field, seed);
    const double p = seed % 3 == 0 ? 2.0 : 1.5;
    const double q = conjugate_exponent(p);
    const double t = 2.5;
    // synthesis: l^p -> (X, t); analysis of the same rows: (X*, t') -> l^q.
    const NormEstimate synth = opnorm_estimate(phi.transpose(), p, t);
    const NormEstimate ana = opnorm_estimate(phi, conjugate_exponent(t), q);
    CHECK(synth.lower <= ana.upper * (1 + 1e-9) + 1e-12);
    CHECK(ana.lower <= synth.upper * (1 + 1e-9) + 1e-12);
  }
  // At exponent two the agreement is tight.
  const Mat phi = random_matrix(6, 4, Field::real, 99);
  const NormEstimate synth = opnorm_estimate(phi.transpose(), 2.0, 2.0);
  const NormEstimate ana = opnorm_estimate(phi, 2.0, 2.0);
  CHECK(synth.lower == doctest::Approx(ana.lower).epsilon(1e-8));
}

TEST_CASE("min gain witness value never exceeds the certified upper endpoint") {
  for (std::uint64_t seed : {41u, 42u, 43u}) {
    const Mat A = random_matrix(4, 3, Field::real, seed).transpose();  // 3 x 4, kernel present
    const NormEstimate est = min_gain_estimate(A, 2.5, 2.0);
    CHECK(std::abs(witness_value(A, 2.5, 2.0, est.witness) - est.upper) <=
          1e-12 + 1e-10 * est.upper);
    CHECK(est.lower <= est.upper * (1 + 1e-12));
  }
  for (std::uint64_t seed : {44u, 45u}) {
    const Mat A = random_matrix(5, 3, Field::real, seed);  // full column rank
    const NormEstimate est = min_gain_estimate(A, 1.5, 2.5);
    CHECK(std::abs(witness_value(A, 1.5, 2.5, est.witness) - est.upper) <=
          1e-12 + 1e-10 * est.upper);
    CHECK(est.lower <= est.upper * (1 + 1e-12));
    CHECK(est.lower > 0.0);
  }
}

TEST_CASE("zero systems yield zero bounds") {
  const Space host(2, 2.0, Field::real);
  const NormEstimate B =
      bessel_bound(FunctionalSequence(host, Mat(Mat::Zero(3, 2)), CoefficientExponent(2.0)));
  CHECK(B.lower == 0.0);
  CHECK(B.upper == 0.0);
}

}  // TEST_SUITE
