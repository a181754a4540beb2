#include "polycert/arith.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace polycert {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return s;
}

// Splits a decimal token into its parts; returns false if it does not match
// [+-]?digits[.digits][(e|E)[+-]?digits] (at least one mantissa digit).
struct DecimalParts {
  bool negative = false;
  std::string digits;  // integer and fraction digits concatenated
  long fraction_len = 0;
  long exponent = 0;
};

bool split_decimal(std::string_view token, DecimalParts& out) {
  if (token.empty()) return false;
  out.negative = token.front() == '-';
  std::string_view s = strip_sign(token);
  std::size_t epos = s.find_first_of("eE");
  std::string_view mant = s.substr(0, epos);
  if (epos != std::string_view::npos) {
    std::string_view ex = s.substr(epos + 1);
    bool neg_exp = !ex.empty() && ex.front() == '-';
    ex = strip_sign(ex);
    if (!all_digits(ex) || ex.size() > 9) return false;
    out.exponent = std::stol(std::string(ex));
    if (neg_exp) out.exponent = -out.exponent;
  }
  std::size_t dot = mant.find('.');
  std::string_view ip = mant.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view{} : mant.substr(dot + 1);
  if (ip.empty() && fp.empty()) return false;
  if (!ip.empty() && !all_digits(ip)) return false;
  if (!fp.empty() && !all_digits(fp)) return false;
  out.digits = std::string(ip) + std::string(fp);
  out.fraction_len = static_cast<long>(fp.size());
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

// ---- Rational tokens ------------------------------------------------------

bool is_rational_token(std::string_view token) {
  std::string_view s = strip_sign(token);
  std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return all_digits(s);
  return all_digits(s.substr(0, slash)) && all_digits(s.substr(slash + 1));
}

Rational parse_rational(std::string_view token) {
  if (!is_rational_token(token)) throw ParseError("invalid rational token '" + std::string(token) + "'");
  std::string_view s = token;
  bool negative = !s.empty() && s.front() == '-';
  s = strip_sign(s);
  std::size_t slash = s.find('/');
  Integer num(std::string(s.substr(0, slash)), 10);
  Integer den(1);
  if (slash != std::string_view::npos) {
    den = Integer(std::string(s.substr(slash + 1)), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(token) + "'");
  }
  Rational q(negative ? Integer(-num) : num, den);
  q.canonicalize();
  return q;
}

Rational parse_decimal_exact(std::string_view token) {
  if (is_rational_token(token)) return parse_rational(token);
  DecimalParts parts;
  if (!split_decimal(token, parts)) throw ParseError("invalid number token '" + std::string(token) + "'");
  Integer mant(parts.digits, 10);
  if (parts.negative) mant = -mant;
  long scale = parts.exponent - parts.fraction_len;
  Rational q;
  if (scale >= 0) {
    q = Rational(mant * pow10(static_cast<unsigned long>(scale)));
  } else {
    q = Rational(mant, pow10(static_cast<unsigned long>(-scale)));
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

// ---- BigFloat -------------------------------------------------------------

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, q.get_mpq_t(), kRound);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRound);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Leave `other` as a valid minimal-precision zero.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::parse(std::string_view token, mpfr_prec_t prec) {
  if (is_rational_token(token)) return BigFloat(parse_rational(token), prec);
  DecimalParts parts;
  if (!split_decimal(token, parts)) throw ParseError("invalid number token '" + std::string(token) + "'");
  BigFloat r(prec);
  std::string s(token);
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 10, kRound);
  if (end != s.c_str() + s.size()) throw ParseError("invalid number token '" + s + "'");
  return r;
}

BigFloat BigFloat::with_precision(mpfr_prec_t prec) const {
  BigFloat r(prec);
  mpfr_set(r.value_, value_, kRound);
  return r;
}

Rational BigFloat::to_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string BigFloat::to_decimal() const {
  return to_decimal(static_cast<int>(mpfr_get_str_ndigits(10, precision())));
}

std::string BigFloat::to_decimal(int significant_digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(significant_digits - 1, 0), value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string BigFloat::to_hex() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.value_, value_, kRound);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_add(r.value_, a.value_, b.value_, kRound);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, kRound);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, kRound);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  BigFloat r(max_prec(a, b));
  mpfr_div(r.value_, a.value_, b.value_, kRound);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigFloat& a, const Rational& q) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_q(a.value_, q.get_mpq_t());
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

bool BigFloat::identical(const BigFloat& other) const {
  if (precision() != other.precision()) return false;
  if (mpfr_signbit(value_) != mpfr_signbit(other.value_)) return false;
  if (mpfr_nan_p(value_) || mpfr_nan_p(other.value_)) return mpfr_nan_p(value_) && mpfr_nan_p(other.value_);
  return mpfr_equal_p(value_, other.value_) != 0;
}

// ---- GaussianRational -----------------------------------------------------

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
  return {a.re + b.re, a.im + b.im};
}

GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
  return {a.re - b.re, a.im - b.im};
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  if (a.im == 0 && b.im == 0) return {a.re * b.re, Rational(0)};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.im == 0) return {a.re / b.re, a.im / b.re};
  Rational d = b.modulus_sq();
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

// ---- BigComplex -----------------------------------------------------------

BigComplex::BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {
  mpfr_prec_t p = std::max(re.precision(), im.precision());
  if (re.precision() != p) re = re.with_precision(p);
  if (im.precision() != p) im = im.with_precision(p);
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }

BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
  BigFloat d = b.modulus_sq();
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

// ---- Scalar ---------------------------------------------------------------

namespace {

template <typename Fn>
auto same_mode(const std::variant<GaussianRational, BigComplex>& a,
               const std::variant<GaussianRational, BigComplex>& b, Fn&& fn) {
  if (a.index() != b.index()) throw ModeMismatch();
  if (a.index() == 0) return fn(std::get<0>(a), std::get<0>(b));
  return fn(std::get<1>(a), std::get<1>(b));
}

}  // namespace

Scalar Scalar::from_rational(const Rational& re, const Rational& im, const NumberContext& ctx) {
  if (ctx.arithmetic == Arithmetic::rational) return GaussianRational{re, im};
  return BigComplex(BigFloat(re, ctx.precision), BigFloat(im, ctx.precision));
}

mpfr_prec_t Scalar::precision() const { return is_exact() ? 0 : std::get<BigComplex>(value_).precision(); }

Scalar Scalar::with_precision(mpfr_prec_t prec) const {
  if (is_exact()) return *this;
  return std::get<BigComplex>(value_).with_precision(prec);
}

const GaussianRational& Scalar::exact() const {
  if (!is_exact()) throw ModeMismatch();
  return std::get<GaussianRational>(value_);
}

const BigComplex& Scalar::floating() const {
  if (is_exact()) throw ModeMismatch();
  return std::get<BigComplex>(value_);
}

bool Scalar::is_zero() const {
  return std::visit([](const auto& z) { return z.is_zero(); }, value_);
}

bool Scalar::is_real() const {
  if (is_exact()) return exact().im == 0;
  return floating().im.is_zero();
}

Scalar Scalar::conj() const {
  return std::visit([](const auto& z) { return Scalar(z.conj()); }, value_);
}

Real Scalar::real_part() const {
  if (is_exact()) return exact().re;
  return floating().re;
}

Real Scalar::imag_part() const {
  if (is_exact()) return exact().im;
  return floating().im;
}

Real Scalar::modulus_sq() const {
  if (is_exact()) return exact().modulus_sq();
  return floating().modulus_sq();
}

Scalar Scalar::scaled(const Rational& q) const {
  if (is_exact()) return GaussianRational{exact().re * q, exact().im * q};
  const BigComplex& z = floating();
  BigFloat c(q, z.precision());
  return BigComplex(z.re * c, z.im * c);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) { return Scalar(x + y); });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) { return Scalar(x - y); });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) { return Scalar(x * y); });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) { return Scalar(x / y); });
}

Scalar Scalar::operator-() const {
  return std::visit([](const auto& z) { return Scalar(-z); }, value_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) { return x == y; });
}

bool lex_less(const Scalar& a, const Scalar& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) {
    if (x.re < y.re) return true;
    if (y.re < x.re) return false;
    return x.im < y.im;
  });
}

std::string Scalar::to_string() const {
  if (is_exact()) return polycert::to_string(exact().re) + " " + polycert::to_string(exact().im);
  return floating().re.to_decimal() + " " + floating().im.to_decimal();
}

// ---- Real -----------------------------------------------------------------

namespace {

template <typename Fn>
auto same_mode(const std::variant<Rational, BigFloat>& a, const std::variant<Rational, BigFloat>& b, Fn&& fn) {
  if (a.index() != b.index()) throw ModeMismatch();
  if (a.index() == 0) return fn(std::get<0>(a), std::get<0>(b));
  return fn(std::get<1>(a), std::get<1>(b));
}

std::partial_ordering order_of(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

}  // namespace

Real Real::from_rational(const Rational& q, const NumberContext& ctx) {
  if (ctx.arithmetic == Arithmetic::rational) return q;
  return BigFloat(q, ctx.precision);
}

const Rational& Real::exact() const {
  if (arithmetic() != Arithmetic::rational) throw ModeMismatch();
  return std::get<Rational>(value_);
}

const BigFloat& Real::floating() const {
  if (arithmetic() != Arithmetic::floating) throw ModeMismatch();
  return std::get<BigFloat>(value_);
}

mpfr_prec_t Real::precision() const {
  return arithmetic() == Arithmetic::rational ? 0 : std::get<BigFloat>(value_).precision();
}

Rational Real::to_rational() const {
  if (arithmetic() == Arithmetic::rational) return std::get<Rational>(value_);
  return std::get<BigFloat>(value_).to_rational();
}

double Real::to_double() const {
  if (arithmetic() == Arithmetic::rational) return std::get<Rational>(value_).get_d();
  return std::get<BigFloat>(value_).to_double();
}

int Real::sign() const {
  if (arithmetic() == Arithmetic::rational) return sgn(std::get<Rational>(value_));
  return std::get<BigFloat>(value_).sign();
}

Real operator+(const Real& a, const Real& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) {
    using T = std::decay_t<decltype(x)>;
    return Real(T(x + y));
  });
}

Real operator-(const Real& a, const Real& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) {
    using T = std::decay_t<decltype(x)>;
    return Real(T(x - y));
  });
}

Real operator*(const Real& a, const Real& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) {
    using T = std::decay_t<decltype(x)>;
    return Real(T(x * y));
  });
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) {
    using T = std::decay_t<decltype(x)>;
    return Real(T(x / y));
  });
}

Real Real::scaled(const Rational& q) const {
  if (arithmetic() == Arithmetic::rational) return Rational(std::get<Rational>(value_) * q);
  const BigFloat& x = std::get<BigFloat>(value_);
  return x * BigFloat(q, x.precision());
}

bool operator==(const Real& a, const Real& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) { return x == y; });
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  return same_mode(a.value_, b.value_, [](const auto& x, const auto& y) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Rational>) {
      return order_of(x, y);
    } else {
      return x <=> y;
    }
  });
}

bool operator==(const Real& a, const Rational& q) { return (a <=> q) == 0; }

std::partial_ordering operator<=>(const Real& a, const Rational& q) {
  if (a.arithmetic() == Arithmetic::rational) return order_of(std::get<Rational>(a.value_), q);
  return std::get<BigFloat>(a.value_) <=> q;
}

std::string Real::to_string() const {
  if (arithmetic() == Arithmetic::rational) return polycert::to_string(std::get<Rational>(value_));
  const BigFloat& x = std::get<BigFloat>(value_);
  return x.to_hex() + " (" + x.to_decimal(20) + ")";
}

// ---- ExtendedReal ---------------------------------------------------------

const Real& ExtendedReal::value() const {
  if (infinite_) throw DomainError("value() of an infinite bound");
  return value_;
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::string ExtendedReal::to_string() const { return infinite_ ? "inf" : value_.to_string(); }

// ---- vector norms and square-root bounds ------------------------------------

Real norm_sq_vector(std::span<const Scalar> v, const NumberContext& ctx) {
  Real acc = Real::from_rational(0, ctx);
  for (const Scalar& z : v) acc = acc + z.modulus_sq();
  return acc;
}

Real norm_sq_vector(std::span<const Scalar> v) {
  if (v.empty()) return Rational(0);
  Real acc = v.front().modulus_sq();
  for (std::size_t i = 1; i < v.size(); ++i) acc = acc + v[i].modulus_sq();
  return acc;
}

Rational sqrt_upper_bound(const Rational& q, unsigned slack_bits) {
  if (sgn(q) < 0) throw DomainError("sqrt_upper_bound of a negative rational");
  if (slack_bits < 1) throw DomainError("sqrt_upper_bound needs at least one slack bit");
  if (sgn(q) == 0) return Rational(0);

  // Pick a power-of-two scale 4^e so that floor(q * 4^e) >= 4^k; then
  // u = (isqrt(floor(q 4^e)) + 1) / 2^e satisfies q < u^2 and
  // u <= sqrt(q) + 2^-e <= sqrt(q) (1 + 2^-k).
  long log2q = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  long e = static_cast<long>(slack_bits) + 1 - log2q / 2;
  Integer target;
  mpz_ui_pow_ui(target.get_mpz_t(), 4, slack_bits);

  auto scaled_floor = [&](long exp) {
    Rational s = q;
    if (exp >= 0) {
      mpq_mul_2exp(s.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(2 * exp));
    } else {
      mpq_div_2exp(s.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-2 * exp));
    }
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return std::pair<Integer, Rational>{f, s};
  };

  auto [n, s] = scaled_floor(e);
  while (n < target) {
    ++e;
    std::tie(n, s) = scaled_floor(e);
  }

  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  // Exact square root when the scaled value is a perfect square.
  Integer root = (Rational(r * r) == s) ? r : Integer(r + 1);
  Rational u(root);
  if (e >= 0) {
    mpq_div_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_mul_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return u;
}

}  // namespace polycert
