#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "besselmult/csv.hpp"
#include "besselmult/duality.hpp"
#include "besselmult/gabor.hpp"
#include "besselmult/multiplier.hpp"
#include "besselmult/norms.hpp"
#include "besselmult/perturbation.hpp"

namespace py = pybind11;
using namespace besselmult;

namespace {

Space make_space(int dim, double exponent, bool complex_field) {
  return Space(dim, exponent, complex_field ? Field::complex_scalars : Field::real);
}

Field field_of(const Mat& m) { return detect_field(m); }

FunctionalSequence make_functional_sequence(const Mat& elements, double host_exponent, double p) {
  const Space host(static_cast<int>(elements.cols()), host_exponent, field_of(elements));
  return FunctionalSequence(host, elements, CoefficientExponent(p));
}

VectorSequence make_vector_sequence(const Mat& elements, double host_exponent, double q) {
  const Space host(static_cast<int>(elements.cols()), host_exponent, field_of(elements));
  return VectorSequence(host, elements, CoefficientExponent(q));
}

py::dict estimate_dict(const NormEstimate& est) {
  py::dict d;
  d["lower"] = est.lower;
  d["upper"] = est.upper;
  d["method"] = to_string(est.method);
  d["iterations"] = est.iterations;
  d["seed"] = est.seed;
  d["witness"] = Vec(est.witness);
  d["stationary"] = est.stationary;
  return d;
}

py::dict certificate_dict(const BoundsCertificate& cert) {
  py::dict d;
  d["A"] = estimate_dict(cert.A_est);
  d["B"] = estimate_dict(cert.B_est);
  d["kind"] = to_string(cert.kind);
  return d;
}

py::dict report_dict(const CheckReport& rep) {
  py::dict d;
  d["claim"] = rep.claim;
  d["lhs"] = rep.lhs;
  d["rhs"] = rep.rhs;
  d["slack"] = rep.slack;
  d["pass"] = rep.pass;
  return d;
}

EstimatorOptions make_options(int restarts, int max_iter, double tol, std::uint64_t seed) {
  EstimatorOptions opts;
  opts.restarts = restarts;
  opts.max_iter = max_iter;
  opts.tol = tol;
  opts.seed = seed;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_besselmult, m) {
  m.doc() = "Bessel multipliers between finite-dimensional p-normed spaces: certified "
            "operator-norm brackets, frame/Riesz bounds, dual systems, multiplier "
            "inversion, nuclear certificates, and Gabor masking";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgumentError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseFileError", PyExc_ValueError);

  py::class_<EstimatorOptions>(m, "EstimatorOptions")
      .def(py::init(&make_options), py::arg("restarts") = 8, py::arg("max_iter") = 2000,
           py::arg("tol") = 1e-10, py::arg("seed") = 0x5eed5eedULL)
      .def_readwrite("restarts", &EstimatorOptions::restarts)
      .def_readwrite("max_iter", &EstimatorOptions::max_iter)
      .def_readwrite("tol", &EstimatorOptions::tol)
      .def_readwrite("seed", &EstimatorOptions::seed);

  py::class_<Multiplier>(m, "Multiplier")
      .def_property_readonly("matrix", [](const Multiplier& M) { return Mat(M.matrix); })
      .def_property_readonly("symbol", [](const Multiplier& M) { return Vec(M.symbol.values); })
      .def("apply", [](const Multiplier& M, const Vec& f) { return apply(M, f); })
      .def("__matmul__", [](const Multiplier& M, const Vec& f) { return apply(M, f); });

  py::class_<GaborFramePair>(m, "GaborSystem")
      .def_property_readonly("size", [](const GaborFramePair& p) { return p.system.size(); })
      .def_property_readonly("atoms", [](const GaborFramePair& p) { return Mat(p.synthesis.elements); })
      .def_property_readonly("tight_constant",
                             [](const GaborFramePair& p) { return p.system.tight_constant(); });

  m.def(
      "opnorm_power",
      [](const Mat& A, double s, double t, const EstimatorOptions& opts) {
        return estimate_dict(opnorm_power(A, s, t, opts));
      },
      py::arg("matrix"), py::arg("s"), py::arg("t"), py::arg("options") = EstimatorOptions{},
      "Certified lower bound and interpolation upper bound for the s->t operator norm");
  m.def("opnorm_upper_interpolation", &opnorm_upper_interpolation, py::arg("matrix"), py::arg("s"),
        py::arg("t"));
  m.def(
      "opnorm_sampling_oracle",
      [](const Mat& A, double s, double t, int density, std::uint64_t seed) {
        return estimate_dict(opnorm_sampling_oracle(A, s, t, density, seed));
      },
      py::arg("matrix"), py::arg("s"), py::arg("t"), py::arg("grid_density") = 512,
      py::arg("seed") = 0);

  m.def(
      "bessel_bound",
      [](const Mat& elements, double host_exponent, double p, const EstimatorOptions& opts) {
        return estimate_dict(bessel_bound(make_functional_sequence(elements, host_exponent, p), opts));
      },
      py::arg("elements"), py::arg("host_exponent") = 2.0, py::arg("p") = 2.0,
      py::arg("options") = EstimatorOptions{});
  m.def(
      "frame_bounds",
      [](const Mat& elements, double host_exponent, double p, const EstimatorOptions& opts) {
        return certificate_dict(frame_bounds(make_functional_sequence(elements, host_exponent, p), opts));
      },
      py::arg("elements"), py::arg("host_exponent") = 2.0, py::arg("p") = 2.0,
      py::arg("options") = EstimatorOptions{});
  m.def(
      "riesz_bounds",
      [](const Mat& elements, double host_exponent, double p, const EstimatorOptions& opts) {
        return certificate_dict(riesz_bounds(make_functional_sequence(elements, host_exponent, p), opts));
      },
      py::arg("elements"), py::arg("host_exponent") = 2.0, py::arg("p") = 2.0,
      py::arg("options") = EstimatorOptions{});

  m.def(
      "build_multiplier",
      [](const Vec& symbol, const Mat& psi, const Mat& phi, double p, double s, double t) {
        return build_multiplier(Symbol(symbol), make_vector_sequence(phi, t, conjugate_exponent(p)),
                                make_functional_sequence(psi, s, p));
      },
      py::arg("symbol"), py::arg("psi"), py::arg("phi"), py::arg("p") = 2.0, py::arg("s") = 2.0,
      py::arg("t") = 2.0,
      "Multiplier with analysis rows psi, synthesis rows phi, and the given symbol");
  m.def("adjoint", [](const Multiplier& M) { return adjoint(M); });
  m.def("truncate", [](const Multiplier& M, int N) { return truncate(M, N); }, py::arg("M"),
        py::arg("N"));
  m.def(
      "invert_multiplier",
      [](const Multiplier& M, double tol) { return invert_multiplier(M, tol); }, py::arg("M"),
      py::arg("tol") = 1e-12);
  m.def(
      "norm_bound_check",
      [](const Multiplier& M, const EstimatorOptions& opts) {
        const NormEstimate B1 = bessel_bound(M.analysis, opts);
        const NormEstimate B2 = bessel_bound(M.synthesis, opts);
        return report_dict(norm_bound_check(M, B1, B2, opts));
      },
      py::arg("M"), py::arg("options") = EstimatorOptions{});
  m.def(
      "symbol_recovery",
      [](const Mat& M, const Mat& psi, const Mat& phi, double p, double s, double t, double tol) {
        return Vec(symbol_recovery(M, make_functional_sequence(psi, s, p),
                                   make_vector_sequence(phi, t, conjugate_exponent(p)), tol)
                       .values);
      },
      py::arg("matrix"), py::arg("psi"), py::arg("phi"), py::arg("p") = 2.0, py::arg("s") = 2.0,
      py::arg("t") = 2.0, py::arg("tol") = 1e-9);

  m.def(
      "nuclear_upper_bound",
      [](const Multiplier& M, double r, const EstimatorOptions& opts) {
        const NuclearCertificate cert = nuclear_upper_bound(M, r, opts);
        py::dict d;
        d["r"] = cert.r;
        d["sigma_norm"] = cert.sigma_norm;
        d["analysis_weak_norm"] = cert.analysis_weak_norm;
        d["synthesis_weak_norm"] = cert.synthesis_weak_norm;
        d["upper"] = cert.upper;
        return d;
      },
      py::arg("M"), py::arg("r") = 1.0, py::arg("options") = EstimatorOptions{});
  m.def("trace_norm", &trace_norm_hilbert, py::arg("matrix"));

  m.def(
      "dual_riesz_basis",
      [](const Mat& elements, double host_exponent, double p) {
        const DualSystem sys =
            dual_riesz_basis(make_functional_sequence(elements, host_exponent, p));
        py::dict d;
        d["dual"] = Mat(sys.dual.elements);
        d["condition_number"] = sys.condition_number;
        d["bounds_original"] = certificate_dict(sys.bounds_original);
        d["bounds_dual"] = certificate_dict(sys.bounds_dual);
        return d;
      },
      py::arg("elements"), py::arg("host_exponent") = 2.0, py::arg("p") = 2.0);

  m.def(
      "lp_distance",
      [](const Mat& a, const Mat& b, double host_exponent, double exponent) {
        const Space host(static_cast<int>(a.cols()), host_exponent,
                         field_of(a) == Field::complex_scalars || field_of(b) == Field::complex_scalars
                             ? Field::complex_scalars
                             : Field::real);
        const CoefficientExponent two(2.0);
        return lp_distance(FunctionalSequence(host, a, two), FunctionalSequence(host, b, two),
                           exponent)
            .value;
      },
      py::arg("a"), py::arg("b"), py::arg("host_exponent") = 2.0, py::arg("exponent") = 2.0);

  m.def(
      "gabor_generate",
      [](int signal_length, const Vec& window, int time_step, int freq_step) {
        return gabor_generate(signal_length, window, time_step, freq_step);
      },
      py::arg("signal_length"), py::arg("window"), py::arg("time_step") = 1,
      py::arg("freq_step") = 1);
  m.def(
      "apply_mask",
      [](const GaborFramePair& pair, const Vec& mask, const Vec& signal) {
        return apply_mask(pair, Symbol(mask), signal);
      },
      py::arg("system"), py::arg("mask"), py::arg("signal"));

  m.def("make_space_dual_exponent", &conjugate_exponent, py::arg("exponent"));
  (void)make_space;
}
