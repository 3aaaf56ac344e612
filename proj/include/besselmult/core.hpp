#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace besselmult {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or length disagreement between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its admissible range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold
/// (e.g. a symbol that is not semi-normalized, a system that is not a basis).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the offending path and line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}
  const std::string& path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

/// An internal invariant was violated; always a bug, never user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Exponents and norms
// ---------------------------------------------------------------------------

/// Conjugate exponent: 1/e + 1/e' = 1, with 1 and infinity paired.
double conjugate_exponent(double e);

/// True when e lies in [1, inf] (inf allowed).
bool is_norm_exponent(double e);

/// The l^e norm of a coordinate vector, e in [1, inf].
double lp_norm(const Vec& v, double e);

/// Phase z/|z| (0 when z == 0).
Complex phase(Complex z);

/// Coordinatewise map v_i -> |v_i|^(e-1) * phase(v_i), the gradient direction
/// of the l^e norm. Defined for e in (1, inf).
Vec norm_gradient_map(const Vec& v, double e);

/// A unit-s-norm vector z maximizing |sum_i w_i z_i|; the Hoelder extremal
/// element for the functional w under the bilinear pairing.
Vec holder_extremal(const Vec& w, double s);

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

enum class Field { real, complex_scalars };

/// A finite-dimensional scalar vector space with a fixed coordinate norm.
struct Space {
  int dim = 0;
  double norm_exponent = 2.0;
  Field field = Field::real;

  Space() = default;
  Space(int dim_, double norm_exponent_, Field field_ = Field::real);

  /// Same dimension and field, conjugate norm exponent.
  Space dual() const { return Space(dim, conjugate_exponent(norm_exponent), field); }

  /// Norm of a coordinate vector of this space.
  double norm(const Vec& v) const { return lp_norm(v, norm_exponent); }

  /// Norm a functional on this space gets from the dual pairing.
  double dual_norm(const Vec& g) const { return lp_norm(g, conjugate_exponent(norm_exponent)); }

  bool operator==(const Space& o) const {
    return dim == o.dim && norm_exponent == o.norm_exponent && field == o.field;
  }
};

/// Analysis-side coefficient exponent p in (1, inf); q is always derived.
class CoefficientExponent {
 public:
  CoefficientExponent() = default;
  explicit CoefficientExponent(double p);

  double p() const { return p_; }
  double q() const { return conjugate_exponent(p_); }
  CoefficientExponent conjugate() const { return CoefficientExponent(q()); }

  bool operator==(const CoefficientExponent& o) const { return p_ == o.p_; }

 private:
  double p_ = 2.0;
};

// ---------------------------------------------------------------------------
// Sequences and symbols
// ---------------------------------------------------------------------------

/// A finite ordered family of functionals psi_k on `host`; row k of
/// `elements` holds the coordinates of psi_k. The elements live in host*.
struct FunctionalSequence {
  Space host;                 // the predual X the functionals act on
  Mat elements;               // K x host.dim
  CoefficientExponent coeff;  // p of the analysis claim

  FunctionalSequence() = default;
  FunctionalSequence(Space host_, Mat elements_, CoefficientExponent coeff_);

  int size() const { return static_cast<int>(elements.rows()); }
  /// The space the elements themselves live in (the dual of the host).
  Space element_space() const { return host.dual(); }
  /// Norm of element k as a functional on the host.
  double element_norm(int k) const { return host.dual_norm(elements.row(k).transpose()); }
};

/// A finite ordered family of vectors phi_k inside `host`; row k of
/// `elements` holds phi_k. The Bessel claim of the family is taken against
/// host*, with analysis exponent `coeff`.
struct VectorSequence {
  Space host;                 // the space X the vectors live in
  Mat elements;               // K x host.dim
  CoefficientExponent coeff;  // q of the Bessel claim against host*

  VectorSequence() = default;
  VectorSequence(Space host_, Mat elements_, CoefficientExponent coeff_);

  int size() const { return static_cast<int>(elements.rows()); }
  Space element_space() const { return host; }
  double element_norm(int k) const { return host.norm(elements.row(k).transpose()); }
};

/// The scalar sequence inserted diagonally between analysis and synthesis.
struct Symbol {
  Vec values;
  std::set<double> declared_summability;  // exponents r > 0 declared for certificates

  Symbol() = default;
  explicit Symbol(Vec values_);

  int size() const { return static_cast<int>(values.size()); }
  double sup_norm() const;
  double min_abs() const;
  /// The l^r norm of the values, r > 0 (quasi-norm sum for r < 1).
  double r_norm(double r) const;
  void declare_summability(double r);
  Symbol conjugated() const;
};

struct SymbolClassification {
  bool bounded = true;  // always true for finite sequences
  bool semi_normalized = false;
  double sup_norm = 0.0;
  double min_abs = 0.0;
  std::vector<std::pair<double, double>> r_norms;  // (r, ||m||_r)
};

/// Classifies a symbol: semi-normalized iff min_k |m_k| > tolerance; reports
/// the sup norm and the l^r norms for every declared r.
SymbolClassification symbol_classify(const Symbol& m, double tolerance);

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

/// Bilinear pairing g(f) = sum_i g_i f_i. No conjugation in either field.
Complex dual_pairing(const Vec& g, const Vec& f);

/// Coefficients (psi_k(f))_k of f under the sequence's functionals.
Vec analysis_apply(const FunctionalSequence& seq, const Vec& f);
/// Same map for a vector family read as functionals on host* (kappa image).
Vec analysis_apply(const VectorSequence& seq, const Vec& dual_vector);

/// sum_k d_k * element_k; finite, hence order-independent.
Vec synthesis_apply(const FunctionalSequence& seq, const Vec& d);
Vec synthesis_apply(const VectorSequence& seq, const Vec& d);

/// Coordinatewise multiplication (m_k c_k)_k.
Vec diagonal_apply(const Symbol& m, const Vec& c);

namespace detail {
void check_same_length(Eigen::Index a, Eigen::Index b, const char* what);
bool is_effectively_real(const Mat& m);
}  // namespace detail

}  // namespace besselmult
