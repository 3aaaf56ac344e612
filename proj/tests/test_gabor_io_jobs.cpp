#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "besselmult/csv.hpp"
#include "besselmult/gabor.hpp"
#include "besselmult/jobs.hpp"

using namespace bmtest;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("besselmult_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

Vec impulse_window(int L) {
  Vec w = Vec::Zero(L);
  w[0] = 1.0;
  return w;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_SUITE("gabor") {

TEST_CASE("full-lattice impulse system") {
  const GaborFramePair pair = gabor_generate(4, impulse_window(4), 1, 1);
  CHECK(pair.system.size() == 16);
  CHECK(pair.analysis.elements.rows() == 16);
  const NormEstimate B = bessel_bound(pair.analysis);
  CHECK(B.lower == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(B.upper == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("coarsest lattice holds a single atom") {
  const GaborFramePair pair = gabor_generate(4, impulse_window(4), 4, 4);
  CHECK(pair.system.size() == 1);
  CHECK((pair.synthesis.elements.row(0).transpose() - impulse_window(4)).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("zero window gives the zero system") {
  const GaborFramePair pair = gabor_generate(4, Vec(Vec::Zero(4)), 1, 1);
  CHECK(bessel_bound(pair.analysis).upper == 0.0);
  CHECK(apply_mask(pair, Symbol(Vec(Vec::Ones(16))), impulse_window(4)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("non-divisor steps are rejected") {
  CHECK_THROWS_AS(gabor_generate(4, impulse_window(4), 3, 1), InvalidArgument);
  CHECK_THROWS_AS(gabor_generate(4, impulse_window(4), 1, 3), InvalidArgument);
}

TEST_CASE("all-ones mask reconstructs on the tight lattice") {
  const GaborFramePair pair = gabor_generate(4, impulse_window(4), 1, 1);
  const Vec signal = random_matrix(4, 1, Field::complex_scalars, 61).col(0);
  const Vec out = apply_mask(pair, Symbol(Vec(Vec::Ones(16))), signal);
  CHECK((out - signal).cwiseAbs().maxCoeff() < 1e-10);

  const Vec silent = apply_mask(pair, Symbol(Vec(Vec::Zero(16))), signal);
  CHECK(silent.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("frequency-band mask isolates a tone") {
  const int L = 8;
  // Flat window: the atoms are pure frequencies, repeated per time slot.
  const Vec flat = Vec::Ones(L) / std::sqrt(double(L));
  const GaborFramePair pair = gabor_generate(L, flat, 1, 1);
  const double two_pi = 2.0 * std::acos(-1.0);
  Vec two_tone(L);
  for (int n = 0; n < L; ++n)
    two_tone[n] = Complex(std::cos(two_pi * n / L), std::sin(two_pi * n / L)) +
                  2.0 * Complex(std::cos(two_pi * 3 * n / L), std::sin(two_pi * 3 * n / L));
  // Pass only frequency bin 3 (atom index f at every time slot t -> k = t*L + f).
  Vec mask = Vec::Zero(pair.system.size());
  for (int t = 0; t < L; ++t) mask[t * L + 3] = 1.0;
  const Vec out = apply_mask(pair, Symbol(mask), two_tone);
  Vec tone3(L);
  for (int n = 0; n < L; ++n)
    tone3[n] = 2.0 * Complex(std::cos(two_pi * 3 * n / L), std::sin(two_pi * 3 * n / L));
  CHECK((out - tone3).cwiseAbs().maxCoeff() < 1e-9);
}

}  // TEST_SUITE

TEST_SUITE("io") {

TEST_CASE("matrix round trip is lossless") {
  TempDir dir;
  for (std::uint64_t seed = 600; seed < 604; ++seed) {
    const Field field = seed % 2 ? Field::real : Field::complex_scalars;
    const Mat m = random_matrix(4, 3, field, seed) * 1e3;
    const std::string path = dir.file("roundtrip.csv");
    write_matrix_csv(path, m, field);
    const Mat back = read_matrix_csv(path);
    CHECK((back - m).cwiseAbs().maxCoeff() <= 1e-15 * m.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("scalar formats") {
  CHECK(format_scalar(Complex(1.5, -2.25), Field::complex_scalars) == "1.5-2.25i");
  CHECK(format_scalar(Complex(1.5, 2.25), Field::complex_scalars) == "1.5+2.25i");
  CHECK(format_scalar(Complex(-3.0, 0.0), Field::real) == "-3");
  CHECK(parse_scalar("3+2i", "x", 1) == Complex(3, 2));
  CHECK(parse_scalar("-1.5e-3-0.25i", "x", 1) == Complex(-1.5e-3, -0.25));
  CHECK(parse_scalar("2i", "x", 1) == Complex(0, 2));
  CHECK(parse_scalar("-i", "x", 1) == Complex(0, -1));
  CHECK(parse_scalar("7", "x", 1) == Complex(7, 0));
  CHECK_THROWS_AS(parse_scalar("abc", "x", 3), ParseError);
}

TEST_CASE("ragged rows are rejected with the line number") {
  TempDir dir;
  const std::string path = dir.file("ragged.csv");
  write_text(path, "1,2\n3,4,5\n");
  try {
    read_matrix_csv(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("expected 2 columns") != std::string::npos);
  }
}

TEST_CASE("column files") {
  TempDir dir;
  const std::string path = dir.file("col.csv");
  write_column_csv(path, real_vector({1, -2.5, 3e9}), Field::real);
  const Vec v = read_column_csv(path);
  CHECK((v - real_vector({1, -2.5, 3e9})).cwiseAbs().maxCoeff() == 0.0);
  write_text(dir.file("wide.csv"), "1,2\n");
  CHECK_THROWS_AS(read_column_csv(dir.file("wide.csv")), ParseError);
}

}  // TEST_SUITE

TEST_SUITE("jobs") {

TEST_CASE("bounds job on the standard basis") {
  TempDir dir;
  write_text(dir.file("seq.csv"), "1,0\n0,1\n");
  JobConfig config;
  config.command = Command::bounds;
  config.inputs["sequence"] = dir.file("seq.csv");
  config.output = dir.file("out");
  std::string msg;
  CHECK(run(config, &msg) == kExitPass);
  std::ifstream report(dir.file("out") + "/report.json");
  REQUIRE(report.good());
  Json j;
  report >> j;
  CHECK(j.at("bessel").at("lower").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j.at("frame").at("kind").get<std::string>() == "p_frame");
}

TEST_CASE("invert job rejects a vanishing symbol with exit 1") {
  TempDir dir;
  write_text(dir.file("psi.csv"), "1,0\n0,1\n");
  write_text(dir.file("phi.csv"), "1,0\n0,1\n");
  write_text(dir.file("m.csv"), "1\n0\n");
  JobConfig config;
  config.command = Command::invert;
  config.inputs = {{"psi", dir.file("psi.csv")},
                   {"phi", dir.file("phi.csv")},
                   {"symbol", dir.file("m.csv")}};
  config.output = dir.file("out");
  std::string msg;
  CHECK(run(config, &msg) == kExitMathFailure);
  CHECK(msg.find("semi-normalized") != std::string::npos);
}

TEST_CASE("malformed CSV exits 2 with the line number") {
  TempDir dir;
  write_text(dir.file("seq.csv"), "1,0\n0\n");
  JobConfig config;
  config.command = Command::bounds;
  config.inputs["sequence"] = dir.file("seq.csv");
  config.output = dir.file("out");
  std::string msg;
  CHECK(run(config, &msg) == kExitInputError);
  CHECK(msg.find(":2:") != std::string::npos);
}

TEST_CASE("missing input file exits 2 before any computation") {
  TempDir dir;
  JobConfig config;
  config.command = Command::bounds;
  config.inputs["sequence"] = dir.file("nope.csv");
  config.output = dir.file("out");
  std::string msg;
  CHECK(run(config, &msg) == kExitInputError);
  CHECK(msg.find("not found") != std::string::npos);
}

TEST_CASE("multiplier job writes the matrix and the check") {
  TempDir dir;
  write_text(dir.file("psi.csv"), "1,0\n0,1\n");
  write_text(dir.file("phi.csv"), "1,0\n0,1\n");
  write_text(dir.file("m.csv"), "2\n3\n");
  JobConfig config;
  config.command = Command::multiplier;
  config.inputs = {{"psi", dir.file("psi.csv")},
                   {"phi", dir.file("phi.csv")},
                   {"symbol", dir.file("m.csv")}};
  config.output = dir.file("out");
  std::string msg;
  REQUIRE(run(config, &msg) == kExitPass);
  const Mat M = read_matrix_csv(dir.file("out") + "/multiplier.csv");
  CHECK((M - real_matrix({{2, 0}, {0, 3}})).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("gabor job certifies the tight lattice and masks a signal") {
  TempDir dir;
  write_text(dir.file("signal.csv"), "1\n0\n0\n0\n");
  JobConfig config;
  config.command = Command::gabor;
  config.signal_length = 4;
  config.inputs["signal"] = dir.file("signal.csv");
  config.output = dir.file("out");
  std::string msg;
  REQUIRE(run(config, &msg) == kExitPass);
  const Vec out = read_column_csv(dir.file("out") + "/masked_signal.csv");
  CHECK((out - real_vector({1, 0, 0, 0})).cwiseAbs().maxCoeff() < 1e-10);
  Json j;
  std::ifstream report(dir.file("out") + "/report.json");
  report >> j;
  CHECK(j.at("tight_check").at("pass").get<bool>());
}

TEST_CASE("perturb job emits a table") {
  TempDir dir;
  write_text(dir.file("psi.csv"), "1,0\n0,1\n");
  write_text(dir.file("phi.csv"), "1,0\n0,1\n");
  write_text(dir.file("m.csv"), "1\n1\n");
  JobConfig config;
  config.command = Command::perturb;
  config.sweep = "symbol";
  config.steps = 5;
  config.inputs = {{"psi", dir.file("psi.csv")},
                   {"phi", dir.file("phi.csv")},
                   {"symbol", dir.file("m.csv")}};
  config.output = dir.file("out");
  std::string msg;
  REQUIRE(run(config, &msg) == kExitPass);
  std::ifstream sweep(dir.file("out") + "/sweep.csv");
  REQUIRE(sweep.good());
  std::string header;
  std::getline(sweep, header);
  CHECK(header == "l,distance,lhs_lower,lhs_upper,rhs,ratio,pass");
}

TEST_CASE("config parsing honors the documented fields") {
  const Json j = {{"command", "nuclear"},
                  {"inputs", {{"psi", "a.csv"}}},
                  {"p", 1.5},
                  {"estimator", {{"restarts", 3}, {"seed", 99}}},
                  {"output", "results"},
                  {"r", 2.0}};
  const JobConfig config = parse_job_config(j);
  CHECK(config.command == Command::nuclear);
  CHECK(config.p == 1.5);
  CHECK(config.estimator.restarts == 3);
  CHECK(config.estimator.seed == 99);
  CHECK(config.r == 2.0);
  CHECK(config.output == "results");
  CHECK(config.space_exponent_source() == 1.5);
  CHECK_THROWS_AS(parse_job_config(Json{{"command", "frobnicate"}}), InvalidArgument);
  CHECK_THROWS_AS(parse_job_config(Json{{"p", 1.0}}), InvalidArgument);
}

}  // TEST_SUITE
