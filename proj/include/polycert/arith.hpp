#pragma once

// Arithmetic kernel: exact rationals, Gaussian rationals, MPFR-backed complex
// floats, and the mode-tagged Scalar/Real wrappers the rest of the library
// computes with.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polycert/errors.hpp"

namespace polycert {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Arithmetic { rational, floating };

/// Working precision in bits for float mode. Ignored in rational mode.
struct NumberContext {
  Arithmetic arithmetic = Arithmetic::rational;
  mpfr_prec_t precision = 256;

  static NumberContext exact() { return {Arithmetic::rational, 256}; }
  static NumberContext floating(mpfr_prec_t bits) { return {Arithmetic::floating, bits}; }
};

/// RAII wrapper around mpfr_t. Every operation rounds to nearest-even and
/// produces a value at the larger of the operand precisions.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 256);
  BigFloat(const Rational& q, mpfr_prec_t prec);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Parses a decimal or rational token at the given precision.
  static BigFloat parse(std::string_view token, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  /// Copy rounded to `prec` bits (exact when widening).
  BigFloat with_precision(mpfr_prec_t prec) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Exact value as a rational (every finite binary float is one).
  Rational to_rational() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Decimal with enough significant digits to round-trip at this precision.
  std::string to_decimal() const;
  std::string to_decimal(int significant_digits) const;
  std::string to_hex() const;

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend std::partial_ordering operator<=>(const BigFloat& a, const Rational& q);
  friend bool operator==(const BigFloat& a, const Rational& q) { return mpfr_cmp_q(a.value_, q.get_mpq_t()) == 0; }

  /// Bitwise identity: same precision, same sign, same significand and exponent.
  bool identical(const BigFloat& other) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

/// Element of Q[sqrt(-1)].
struct GaussianRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational modulus_sq() const { return re * re + im * im; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  GaussianRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
};

struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t prec = 256) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i);

  mpfr_prec_t precision() const { return re.precision(); }
  BigComplex with_precision(mpfr_prec_t prec) const { return {re.with_precision(prec), im.with_precision(prec)}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  BigComplex conj() const { return {re, -im}; }
  BigFloat modulus_sq() const { return re * re + im * im; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex operator-() const { return {-re, -im}; }
  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re == b.re && a.im == b.im; }
};

class Real;

/// A complex number in the active arithmetic. Binary operations require both
/// operands in the same mode and throw ModeMismatch otherwise.
class Scalar {
 public:
  Scalar() : value_(GaussianRational{}) {}
  Scalar(GaussianRational z) : value_(std::move(z)) {}
  Scalar(BigComplex z) : value_(std::move(z)) {}

  /// Exact value `re + im*i` represented in the given context.
  static Scalar from_rational(const Rational& re, const Rational& im, const NumberContext& ctx);
  static Scalar zero(const NumberContext& ctx) { return from_rational(0, 0, ctx); }
  static Scalar one(const NumberContext& ctx) { return from_rational(1, 0, ctx); }

  Arithmetic arithmetic() const {
    return std::holds_alternative<GaussianRational>(value_) ? Arithmetic::rational : Arithmetic::floating;
  }
  bool is_exact() const { return arithmetic() == Arithmetic::rational; }
  /// 0 in rational mode.
  mpfr_prec_t precision() const;
  Scalar with_precision(mpfr_prec_t prec) const;

  const GaussianRational& exact() const;
  const BigComplex& floating() const;

  bool is_zero() const;
  bool is_real() const;
  Scalar conj() const;
  Real real_part() const;
  Real imag_part() const;
  Real modulus_sq() const;
  /// Multiply by a rational constant.
  Scalar scaled(const Rational& q) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Throws DomainError on division by zero.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  /// Exact equality in rational mode; bit-value equality in float mode.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Lexicographic (re, im) ordering used for canonical multiset comparison.
  friend bool lex_less(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  std::variant<GaussianRational, BigComplex> value_;
};

bool lex_less(const Scalar& a, const Scalar& b);

/// A real number in the active arithmetic. Comparisons against Rational
/// constants are exact in both modes.
class Real {
 public:
  Real() : value_(Rational(0)) {}
  Real(Rational q) : value_(std::move(q)) {}
  Real(BigFloat x) : value_(std::move(x)) {}

  static Real from_rational(const Rational& q, const NumberContext& ctx);

  Arithmetic arithmetic() const {
    return std::holds_alternative<Rational>(value_) ? Arithmetic::rational : Arithmetic::floating;
  }
  const Rational& exact() const;
  const BigFloat& floating() const;
  mpfr_prec_t precision() const;

  /// The exact rational value (floats are dyadic rationals).
  Rational to_rational() const;
  double to_double() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real scaled(const Rational& q) const;

  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, const Rational& q);
  friend std::partial_ordering operator<=>(const Real& a, const Rational& q);

  std::string to_string() const;

 private:
  std::variant<Rational, BigFloat> value_;
};

/// A nonnegative real or +infinity; used for certificate squares.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  ExtendedReal(Real value) : value_(std::move(value)), infinite_(false) {}
  static ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  const Real& value() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b);
  std::string to_string() const;

 private:
  Real value_;
  bool infinite_ = false;
};

// ---- free operations -----------------------------------------------------

/// Canonicalize a rational token: `p` or `p/q` with q > 0. Throws ParseError.
Rational parse_rational(std::string_view token);
/// Exact value of a decimal token `[-]d.dddE[+-]e` (integers and p/q too).
Rational parse_decimal_exact(std::string_view token);
bool is_rational_token(std::string_view token);

std::string to_string(const Rational& q);

/// re^2 + im^2 of z.
inline Real modulus_sq(const Scalar& z) { return z.modulus_sq(); }

/// Sum of modulus_sq over v; exact zero of the context for an empty vector.
Real norm_sq_vector(std::span<const Scalar> v, const NumberContext& ctx);
Real norm_sq_vector(std::span<const Scalar> v);

/// Returns u with q <= u^2 <= q (1 + 2^-k)^2; u is dyadic so its size is
/// governed by k, not by the size of q.
Rational sqrt_upper_bound(const Rational& q, unsigned slack_bits = 10);

inline constexpr unsigned kDefaultSqrtSlack = 10;

}  // namespace polycert
