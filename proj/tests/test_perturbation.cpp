#include <doctest.h>

#include "test_support.hpp"
#include "besselmult/perturbation.hpp"

using namespace bmtest;

namespace {

Multiplier onb_multiplier(int n, const Vec& symbol) {
  const Space host(n, 2.0, Field::real);
  const CoefficientExponent p2(2.0);
  return build_multiplier(Symbol(symbol), VectorSequence(host, Mat(Mat::Identity(n, n)), p2),
                          FunctionalSequence(host, Mat(Mat::Identity(n, n)), p2));
}

}  // namespace

TEST_SUITE("perturbation") {

TEST_CASE("sequence distance basics") {
  const Space host(2, 2.0, Field::real);
  const CoefficientExponent p2(2.0);
  const FunctionalSequence psi(host, real_matrix({{1, 0}, {0, 1}, {1, 1}}), p2);
  CHECK(lp_distance(psi, psi, 2.0).value == 0.0);

  // Shifting every element by (eps, 0) gives eps * K^{1/p}.
  const double eps = 0.3;
  Mat shifted = psi.elements;
  shifted.col(0).array() += eps;
  const FunctionalSequence phi(host, shifted, p2);
  CHECK(lp_distance(psi, phi, 2.0).value ==
        doctest::Approx(eps * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(lp_distance(psi, phi, 1.5).value ==
        doctest::Approx(eps * std::pow(3.0, 1 / 1.5)).epsilon(1e-14));

  Mat one_changed = psi.elements;
  one_changed(2, 0) += 0.3;
  CHECK(lp_distance(psi, FunctionalSequence(host, one_changed, p2), 2.0).value ==
        doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("sequence distance is a metric") {
  const Space host(3, 2.0, Field::complex_scalars);
  const CoefficientExponent p2(2.0);
  for (std::uint64_t seed = 500; seed < 505; ++seed) {
    const FunctionalSequence a(host, random_matrix(4, 3, Field::complex_scalars, mix_seed(seed, 1)), p2);
    const FunctionalSequence b(host, random_matrix(4, 3, Field::complex_scalars, mix_seed(seed, 2)), p2);
    const FunctionalSequence c(host, random_matrix(4, 3, Field::complex_scalars, mix_seed(seed, 3)), p2);
    const double ab = lp_distance(a, b, 2.5).value;
    const double ba = lp_distance(b, a, 2.5).value;
    const double ac = lp_distance(a, c, 2.5).value;
    const double cb = lp_distance(c, b, 2.5).value;
    CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
    CHECK(ab <= ac + cb + 1e-12);
    CHECK(lp_distance(a, a, 2.5).value <= 1e-12);
  }
}

TEST_CASE("perturbed Bessel bound chain") {
  const Space host(2, 2.0, Field::real);
  const CoefficientExponent p2(2.0);
  const FunctionalSequence psi(host, Mat(Mat::Identity(2, 2)), p2);
  const NormEstimate B = bessel_bound(psi);

  SUBCASE("identical sequences") {
    const auto reports = perturbed_bessel_bound_check(psi, psi, B, 2.0);
    for (const auto& rep : reports) CHECK(rep.pass);
    CHECK(reports[1].lhs == 0.0);
  }
  SUBCASE("row-shifted orthonormal basis") {
    Mat shifted = psi.elements;
    shifted.col(0).array() += 0.1;
    const FunctionalSequence phi(host, shifted, p2);
    const auto reports = perturbed_bessel_bound_check(psi, phi, B, 2.0);
    for (const auto& rep : reports) CHECK(rep.pass);
    // Direct oracle: B(phi) must sit below 1 + 0.1 * sqrt(2).
    CHECK(spectral_norm(shifted) <= 1.0 + 0.1 * kSqrt2);
    CHECK(reports[0].rhs == doctest::Approx(1.0 + 0.1 * kSqrt2).epsilon(1e-9));
  }
  SUBCASE("doubled sequence") {
    const FunctionalSequence phi(host, Mat(2 * psi.elements), p2);
    const auto reports = perturbed_bessel_bound_check(psi, phi, B, 2.0);
    for (const auto& rep : reports) {
      CHECK(rep.pass);
      CHECK(rep.slack >= 0.0);
    }
  }
}

TEST_CASE("symbol continuity sweep") {
  const Multiplier M = onb_multiplier(3, real_vector({1, 0.5, -2}));
  std::vector<Symbol> family;
  for (int l = 1; l <= 20; ++l) {
    Vec v = M.symbol.values;
    v[0] += 1.0 / l;
    family.emplace_back(v);
  }
  const ConvergenceTable table = continuity_symbol(M, family, 2.0);
  REQUIRE(table.rows.size() == 20);
  CHECK(table.all_pass());
  for (const auto& row : table.rows) {
    CHECK(std::abs(row.lhs_lower - 1.0 / row.l) < 1e-10);
    CHECK(std::abs(row.rhs - 1.0 / row.l) < 1e-10);
    CHECK(row.ratio <= 1.0 + 1e-9);
  }
  // Monotone family: the measured differences decay monotonically.
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    CHECK(table.rows[i].lhs_lower <= table.rows[i - 1].lhs_lower * (1 + 1e-12));

  const std::vector<Symbol> constant(20, M.symbol);
  const ConvergenceTable zeros = continuity_symbol(M, constant, 2.0);
  for (const auto& row : zeros.rows) {
    CHECK(row.lhs_lower == 0.0);
    CHECK(row.rhs == 0.0);
    CHECK(row.pass);
  }
}

TEST_CASE("halving symbol distances at least halve the bound") {
  const Multiplier M = onb_multiplier(4, real_vector({1, 1, 1, 1}));
  std::vector<Symbol> family;
  double step = 0.8;
  for (int l = 1; l <= 10; ++l, step *= 0.5) {
    Vec v = M.symbol.values;
    v[1] += step;
    v[3] -= step * 0.5;
    family.emplace_back(v);
  }
  const ConvergenceTable table = continuity_symbol(M, family, 2.0);
  CHECK(table.all_pass());
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].rhs <= table.rows[i - 1].rhs * 0.5 * (1 + 1e-12));
    CHECK(table.rows[i].lhs_lower <= table.rows[i - 1].lhs_lower * 0.5 * (1 + 1e-12));
  }
}

TEST_CASE("analysis continuity sweep") {
  const Multiplier M = onb_multiplier(3, real_vector({1, 0, 0}));
  std::vector<FunctionalSequence> family;
  for (int l = 1; l <= 20; ++l) {
    Mat bumped = M.analysis.elements;
    bumped(0, 1) += 1.0 / l;  // unit-norm direction on the first row
    family.emplace_back(M.analysis.host, bumped, M.analysis.coeff);
  }
  const ConvergenceTable table = continuity_analysis(M, family, 2.0);
  CHECK(table.all_pass());
  for (const auto& row : table.rows) CHECK(std::abs(row.lhs_lower - 1.0 / row.l) < 1e-10);

  const std::vector<FunctionalSequence> constant(5, M.analysis);
  for (const auto& row : continuity_analysis(M, constant, 2.0).rows) {
    CHECK(row.lhs_lower == 0.0);
    CHECK(row.pass);
  }

  // Two-row bump with a two-entry symbol: bounded with the ratio recorded.
  const Multiplier M2 = onb_multiplier(3, real_vector({1, 1, 0}));
  std::vector<FunctionalSequence> two_bump;
  for (int l = 1; l <= 10; ++l) {
    Mat bumped = M2.analysis.elements;
    bumped(0, 1) += 1.0 / l;
    bumped(1, 2) -= 0.5 / l;
    two_bump.emplace_back(M2.analysis.host, bumped, M2.analysis.coeff);
  }
  const ConvergenceTable t2 = continuity_analysis(M2, two_bump, 2.0);
  CHECK(t2.all_pass());
  for (const auto& row : t2.rows) CHECK(row.ratio <= 1.0 + 1e-9);
}

TEST_CASE("synthesis continuity sweep") {
  const Multiplier M = onb_multiplier(3, real_vector({1, 0, 0}));
  const std::vector<VectorSequence> constant(5, M.synthesis);
  for (const auto& row : continuity_synthesis(M, constant, 2.0).rows) {
    CHECK(row.lhs_lower == 0.0);
    CHECK(row.pass);
  }

  std::vector<VectorSequence> family;
  for (int l = 1; l <= 20; ++l) {
    Mat bumped = M.synthesis.elements;
    bumped(0, 1) += 1.0 / l;
    family.emplace_back(M.synthesis.host, bumped, M.synthesis.coeff);
  }
  const ConvergenceTable table = continuity_synthesis(M, family, 2.0);
  CHECK(table.all_pass());
  for (const auto& row : table.rows) CHECK(std::abs(row.lhs_lower - 1.0 / row.l) < 1e-10);

  // Random decaying synthesis family.
  for (std::uint64_t seed = 520; seed < 523; ++seed) {
    const RandomInstance inst = random_multiplier_instance(seed, /*allow_complex=*/false);
    const Mat direction = random_matrix(inst.M.synthesis.elements.rows(),
                                        inst.M.synthesis.elements.cols(), Field::real,
                                        mix_seed(seed, 11));
    std::vector<VectorSequence> f;
    for (int l = 1; l <= 10; ++l)
      f.emplace_back(inst.M.synthesis.host, Mat(inst.M.synthesis.elements + direction / (l * l)),
                     inst.M.synthesis.coeff);
    const ConvergenceTable t = continuity_synthesis(inst.M, f, conjugate_exponent(inst.p));
    CHECK(t.all_pass());
  }
}

TEST_CASE("joint continuity sweep") {
  const Multiplier M = onb_multiplier(3, real_vector({1, 1, 1}));
  std::vector<Symbol> symbols;
  std::vector<FunctionalSequence> analyses;
  std::vector<VectorSequence> syntheses;
  SUBCASE("all constant") {
    for (int l = 1; l <= 5; ++l) {
      symbols.push_back(M.symbol);
      analyses.push_back(M.analysis);
      syntheses.push_back(M.synthesis);
    }
    const ConvergenceTable table = continuity_joint(M, symbols, analyses, syntheses, 2.0, 2.0);
    for (const auto& row : table.rows) {
      CHECK(row.lhs_lower == 0.0);
      CHECK(row.pass);
    }
  }
  SUBCASE("all three perturbed at rate 1/l") {
    for (int l = 1; l <= 20; ++l) {
      Vec v = M.symbol.values;
      v[0] += 1.0 / l;
      symbols.emplace_back(v);
      Mat psi_b = M.analysis.elements;
      psi_b(1, 0) += 1.0 / l;
      analyses.emplace_back(M.analysis.host, psi_b, M.analysis.coeff);
      Mat phi_b = M.synthesis.elements;
      phi_b(2, 0) += 1.0 / l;
      syntheses.emplace_back(M.synthesis.host, phi_b, M.synthesis.coeff);
    }
    const ConvergenceTable table = continuity_joint(M, symbols, analyses, syntheses, 2.0, 2.0);
    CHECK(table.all_pass());
    for (const auto& row : table.rows) {
      CHECK(row.lhs_upper >= row.lhs_lower);
      // The triangle bound dominates; lhs stays under 3/l plus slack.
      CHECK(row.lhs_lower <= 3.0 / row.l + 1e-9);
    }
  }
  SUBCASE("rates 1/l, 1/l^2, 1/l^3: the slowest dominates") {
    for (int l = 1; l <= 10; ++l) {
      Vec v = M.symbol.values;
      v[0] += 1.0 / l;
      symbols.emplace_back(v);
      Mat psi_b = M.analysis.elements;
      psi_b(1, 0) += 1.0 / double(l * l);
      analyses.emplace_back(M.analysis.host, psi_b, M.analysis.coeff);
      Mat phi_b = M.synthesis.elements;
      phi_b(2, 0) += 1.0 / double(l * l * l);
      syntheses.emplace_back(M.synthesis.host, phi_b, M.synthesis.coeff);
    }
    const ConvergenceTable table = continuity_joint(M, symbols, analyses, syntheses, 2.0, 2.0);
    CHECK(table.all_pass());
    for (const auto& row : table.rows) {
      CHECK(row.rhs >= 1.0 / row.l);           // the slow rate is present
      CHECK(row.rhs <= 8.0 / row.l + 1e-9);    // and nothing grows faster
    }
  }
}

}  // TEST_SUITE
