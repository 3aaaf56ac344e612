#include "besselmult/core.hpp"

#include <algorithm>
#include <cmath>

namespace besselmult {

double conjugate_exponent(double e) {
  if (!is_norm_exponent(e)) throw InvalidArgument("norm exponent must lie in [1, inf]");
  if (e == 1.0) return kInf;
  if (std::isinf(e)) return 1.0;
  return e / (e - 1.0);
}

bool is_norm_exponent(double e) { return e >= 1.0; }

double lp_norm(const Vec& v, double e) {
  if (!is_norm_exponent(e)) throw InvalidArgument("norm exponent must lie in [1, inf]");
  if (v.size() == 0) return 0.0;
  const RealVec a = v.cwiseAbs();
  if (std::isinf(e)) return a.maxCoeff();
  if (e == 1.0) return a.sum();
  if (e == 2.0) return a.norm();
  const double m = a.maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::pow(a[i] / m, e);
  return m * std::pow(s, 1.0 / e);
}

Complex phase(Complex z) {
  const double a = std::abs(z);
  return a == 0.0 ? Complex(0.0, 0.0) : z / a;
}

Vec norm_gradient_map(const Vec& v, double e) {
  if (!(e > 1.0 && !std::isinf(e)))
    throw InvalidArgument("norm gradient map requires an exponent in (1, inf)");
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    out[i] = a == 0.0 ? Complex(0.0) : std::pow(a, e - 1.0) * phase(v[i]);
  }
  return out;
}

Vec holder_extremal(const Vec& w, double s) {
  if (!is_norm_exponent(s)) throw InvalidArgument("norm exponent must lie in [1, inf]");
  const Eigen::Index n = w.size();
  Vec z = Vec::Zero(n);
  const RealVec a = w.cwiseAbs();
  if (a.maxCoeff() == 0.0) {
    z[0] = 1.0;
    return z;
  }
  if (s == 1.0) {
    Eigen::Index j;
    a.maxCoeff(&j);
    z[j] = std::conj(phase(w[j]));
    return z;
  }
  if (std::isinf(s)) {
    for (Eigen::Index i = 0; i < n; ++i) z[i] = w[i] == 0.0 ? Complex(1.0) : std::conj(phase(w[i]));
    return z;
  }
  const double sp = conjugate_exponent(s);
  for (Eigen::Index i = 0; i < n; ++i)
    z[i] = std::pow(a[i], sp - 1.0) * std::conj(phase(w[i]));
  const double nz = lp_norm(z, s);
  return z / nz;
}

Space::Space(int dim_, double norm_exponent_, Field field_)
    : dim(dim_), norm_exponent(norm_exponent_), field(field_) {
  if (dim < 1) throw InvalidArgument("space dimension must be >= 1");
  if (!is_norm_exponent(norm_exponent))
    throw InvalidArgument("space norm exponent must lie in [1, inf]");
}

CoefficientExponent::CoefficientExponent(double p) : p_(p) {
  if (!(p > 1.0) || std::isinf(p))
    throw InvalidArgument("coefficient exponent must lie in (1, inf)");
}

namespace detail {

void check_same_length(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": lengths " + std::to_string(a) + " and " +
                         std::to_string(b) + " disagree");
}

bool is_effectively_real(const Mat& m) {
  return m.imag().cwiseAbs().maxCoeff() == 0.0;
}

void validate_sequence(const Space& host, const Mat& elements, const char* what) {
  if (elements.rows() < 1) throw InvalidArgument(std::string(what) + ": needs at least one element");
  if (elements.cols() != host.dim)
    throw DimensionError(std::string(what) + ": element length " +
                         std::to_string(elements.cols()) + " does not match space dimension " +
                         std::to_string(host.dim));
  if (!elements.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
  if (host.field == Field::real && !is_effectively_real(elements))
    throw InvalidArgument(std::string(what) + ": complex entry in a real-field sequence");
}

}  // namespace detail

FunctionalSequence::FunctionalSequence(Space host_, Mat elements_, CoefficientExponent coeff_)
    : host(host_), elements(std::move(elements_)), coeff(coeff_) {
  detail::validate_sequence(host, elements, "functional sequence");
}

VectorSequence::VectorSequence(Space host_, Mat elements_, CoefficientExponent coeff_)
    : host(host_), elements(std::move(elements_)), coeff(coeff_) {
  detail::validate_sequence(host, elements, "vector sequence");
}

Symbol::Symbol(Vec values_) : values(std::move(values_)) {
  if (values.size() < 1) throw InvalidArgument("symbol needs at least one entry");
  if (!values.allFinite()) throw InvalidArgument("symbol: non-finite entry");
}

double Symbol::sup_norm() const { return values.cwiseAbs().maxCoeff(); }

double Symbol::min_abs() const { return values.cwiseAbs().minCoeff(); }

double Symbol::r_norm(double r) const {
  if (!(r > 0.0)) throw InvalidArgument("summability exponent must be positive");
  if (std::isinf(r)) return sup_norm();
  const RealVec a = values.cwiseAbs();
  const double m = a.maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::pow(a[i] / m, r);
  return m * std::pow(s, 1.0 / r);
}

void Symbol::declare_summability(double r) {
  if (!(r > 0.0)) throw InvalidArgument("summability exponent must be positive");
  declared_summability.insert(r);
}

Symbol Symbol::conjugated() const {
  Symbol out(values.conjugate());
  out.declared_summability = declared_summability;
  return out;
}

SymbolClassification symbol_classify(const Symbol& m, double tolerance) {
  if (tolerance < 0.0) throw InvalidArgument("tolerance must be nonnegative");
  SymbolClassification c;
  c.bounded = true;
  c.sup_norm = m.sup_norm();
  c.min_abs = m.min_abs();
  c.semi_normalized = c.min_abs > tolerance;
  for (double r : m.declared_summability) c.r_norms.emplace_back(r, m.r_norm(r));
  return c;
}

Complex dual_pairing(const Vec& g, const Vec& f) {
  detail::check_same_length(g.size(), f.size(), "dual pairing");
  return (g.array() * f.array()).sum();
}

Vec analysis_apply(const FunctionalSequence& seq, const Vec& f) {
  detail::check_same_length(seq.elements.cols(), f.size(), "analysis");
  return seq.elements * f;
}

Vec analysis_apply(const VectorSequence& seq, const Vec& dual_vector) {
  detail::check_same_length(seq.elements.cols(), dual_vector.size(), "analysis");
  return seq.elements * dual_vector;
}

Vec synthesis_apply(const FunctionalSequence& seq, const Vec& d) {
  detail::check_same_length(seq.elements.rows(), d.size(), "synthesis");
  return seq.elements.transpose() * d;
}

Vec synthesis_apply(const VectorSequence& seq, const Vec& d) {
  detail::check_same_length(seq.elements.rows(), d.size(), "synthesis");
  return seq.elements.transpose() * d;
}

Vec diagonal_apply(const Symbol& m, const Vec& c) {
  detail::check_same_length(m.values.size(), c.size(), "diagonal operator");
  return m.values.array() * c.array();
}

}  // namespace besselmult
