#include "polycert/polysys.hpp"

#include <algorithm>
#include <numeric>

#include "polycert/random.hpp"

namespace polycert {

unsigned Monomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0u); }

bool grlex_before(const Exponents& a, const Exponents& b) {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void sort_terms(std::vector<Monomial>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return grlex_before(a.exponents, b.exponents); });
}

void check_lengths(std::size_t variables, const std::vector<Monomial>& terms) {
  for (const Monomial& m : terms) {
    if (m.exponents.size() != variables) throw DimensionError("monomial exponent vector has the wrong length");
  }
}

Integer factorial(unsigned k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

// Table of x_j^e for e = 0..max exponent of variable j.
class PowerTable {
 public:
  PowerTable(std::span<const Scalar> x, const std::vector<unsigned>& max_exp) {
    powers_.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      auto& row = powers_[j];
      row.reserve(max_exp[j] + 1);
      row.push_back(Scalar::one(context_of(x[j])));
      for (unsigned e = 1; e <= max_exp[j]; ++e) row.push_back(row.back() * x[j]);
    }
  }

  Scalar monomial(const Monomial& m) const {
    Scalar v = m.coefficient;
    for (std::size_t j = 0; j < m.exponents.size(); ++j) {
      if (m.exponents[j] != 0) v *= powers_[j][m.exponents[j]];
    }
    return v;
  }

  static NumberContext context_of(const Scalar& s) {
    return s.is_exact() ? NumberContext::exact() : NumberContext::floating(s.precision());
  }

 private:
  std::vector<std::vector<Scalar>> powers_;
};

Scalar eval_poly(const Polynomial& p, const PowerTable& table, const Scalar& zero) {
  Scalar acc = zero;
  for (const Monomial& m : p.terms()) acc += table.monomial(m);
  return acc;
}

}  // namespace

// ---- Polynomial -------------------------------------------------------------

Polynomial::Polynomial(std::size_t variables, std::vector<Monomial> terms) : variables_(variables) {
  check_lengths(variables, terms);
  std::erase_if(terms, [](const Monomial& m) { return m.coefficient.is_zero(); });
  sort_terms(terms);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].exponents == terms[i - 1].exponents) throw ParseError("duplicate exponent vector in polynomial");
  }
  terms_ = std::move(terms);
  for (const Monomial& m : terms_) degree_ = std::max(degree_, m.degree());
}

Polynomial Polynomial::combine(std::size_t variables, std::vector<Monomial> terms) {
  check_lengths(variables, terms);
  sort_terms(terms);
  std::vector<Monomial> merged;
  for (Monomial& m : terms) {
    if (!merged.empty() && merged.back().exponents == m.exponents) {
      merged.back().coefficient += m.coefficient;
    } else {
      merged.push_back(std::move(m));
    }
  }
  return Polynomial(variables, std::move(merged));
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= variables_) throw DimensionError("derivative variable out of range");
  std::vector<Monomial> out;
  for (const Monomial& m : terms_) {
    unsigned e = m.exponents[var];
    if (e == 0) continue;
    Monomial d{m.exponents, m.coefficient.scaled(Rational(e))};
    d.exponents[var] = e - 1;
    out.push_back(std::move(d));
  }
  return Polynomial(variables_, std::move(out));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const Monomial& m : terms_) out.push_back({m.exponents, m.coefficient * c});
  return Polynomial(variables_, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponents != b.terms_[i].exponents) return false;
    if (!(a.terms_[i].coefficient == b.terms_[i].coefficient)) return false;
  }
  return true;
}

// ---- PolynomialSystem -------------------------------------------------------

PolynomialSystem::PolynomialSystem(std::size_t variables, std::vector<Polynomial> polys, NumberContext ctx)
    : variables_(variables), polys_(std::move(polys)), context_(ctx) {
  if (variables_ == 0) throw DimensionError("a polynomial system needs at least one variable");
  if (polys_.empty()) throw DimensionError("a polynomial system needs at least one polynomial");
  for (const Polynomial& p : polys_) {
    if (p.variables() != variables_) throw DimensionError("polynomial variable count differs from the system's");
    for (const Monomial& m : p.terms()) {
      if (m.coefficient.arithmetic() != ctx.arithmetic) throw ModeMismatch();
    }
    max_degree_ = std::max(max_degree_, p.degree());
  }
  partials_.reserve(polys_.size());
  for (const Polynomial& p : polys_) {
    std::vector<Polynomial> row;
    row.reserve(variables_);
    for (std::size_t j = 0; j < variables_; ++j) row.push_back(p.derivative(j));
    partials_.push_back(std::move(row));
  }
  bombieri_norm_sq_ = polycert::bombieri_norm_sq(*this);
}

std::vector<unsigned> PolynomialSystem::degrees() const {
  std::vector<unsigned> d;
  d.reserve(polys_.size());
  for (const Polynomial& p : polys_) d.push_back(p.degree());
  return d;
}

bool PolynomialSystem::has_zero_polynomial() const {
  return std::any_of(polys_.begin(), polys_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::vector<Scalar> PolynomialSystem::eval(std::span<const Scalar> x) const { return evaluate(x).values; }

Matrix PolynomialSystem::jacobian(std::span<const Scalar> x) const { return evaluate(x).jacobian; }

Evaluation PolynomialSystem::evaluate(std::span<const Scalar> x) const {
  if (x.size() != variables_) throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                                                   std::to_string(variables_));
  for (const Scalar& c : x) {
    if (c.arithmetic() != context_.arithmetic) throw ModeMismatch();
  }
  std::vector<unsigned> max_exp(variables_, 0);
  for (const Polynomial& p : polys_) {
    for (const Monomial& m : p.terms()) {
      for (std::size_t j = 0; j < variables_; ++j) max_exp[j] = std::max(max_exp[j], m.exponents[j]);
    }
  }
  PowerTable table(x, max_exp);
  mpfr_prec_t prec = context_.precision;
  for (const Scalar& c : x) prec = std::max(prec, c.precision());
  NumberContext ctx = context_;
  ctx.precision = prec;
  const Scalar zero = Scalar::zero(ctx);

  Evaluation out;
  out.values.reserve(polys_.size());
  out.jacobian = Matrix(polys_.size(), variables_, zero);
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    out.values.push_back(eval_poly(polys_[i], table, zero));
    for (std::size_t j = 0; j < variables_; ++j) out.jacobian(i, j) = eval_poly(partials_[i][j], table, zero);
  }
  return out;
}

PolynomialSystem PolynomialSystem::scaled(const Rational& c) const {
  std::vector<Polynomial> out;
  out.reserve(polys_.size());
  for (const Polynomial& p : polys_) out.push_back(p.scaled(Scalar::from_rational(c, 0, context_)));
  return PolynomialSystem(variables_, std::move(out), context_);
}

PolynomialSystem PolynomialSystem::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != polys_.size()) throw DimensionError("permutation length differs from polynomial count");
  std::vector<Polynomial> out;
  out.reserve(perm.size());
  for (std::size_t i : perm) out.push_back(polys_.at(i));
  return PolynomialSystem(variables_, std::move(out), context_);
}

PolynomialSystem PolynomialSystem::to_floating(mpfr_prec_t precision) const {
  NumberContext ctx = NumberContext::floating(precision);
  std::vector<Polynomial> out;
  out.reserve(polys_.size());
  for (const Polynomial& p : polys_) {
    std::vector<Monomial> terms;
    for (const Monomial& m : p.terms()) {
      Scalar c = m.coefficient.is_exact() ? Scalar::from_rational(m.coefficient.exact().re, m.coefficient.exact().im, ctx)
                                          : m.coefficient.with_precision(precision);
      terms.push_back({m.exponents, std::move(c)});
    }
    out.emplace_back(variables_, std::move(terms));
  }
  return PolynomialSystem(variables_, std::move(out), ctx);
}

bool operator==(const PolynomialSystem& a, const PolynomialSystem& b) {
  return a.variables_ == b.variables_ && a.context_.arithmetic == b.context_.arithmetic && a.polys_ == b.polys_;
}

// ---- norms --------------------------------------------------------------------

Real bombieri_norm_sq(const Polynomial& g, const NumberContext& ctx) {
  Real acc = Real::from_rational(0, ctx);
  const unsigned d = g.degree();
  const Integer d_fact = factorial(d);
  for (const Monomial& m : g.terms()) {
    Integer w = factorial(d - m.degree());
    for (unsigned e : m.exponents) w *= factorial(e);
    Rational weight(w, d_fact);
    weight.canonicalize();
    acc = acc + m.coefficient.modulus_sq().scaled(weight);
  }
  return acc;
}

Real bombieri_norm_sq(const PolynomialSystem& f) {
  Real acc = Real::from_rational(0, f.context());
  for (const Polynomial& p : f.polys()) acc = acc + bombieri_norm_sq(p, f.context());
  return acc;
}

// ---- reality tests --------------------------------------------------------------

bool has_real_coefficients(const PolynomialSystem& f) {
  for (const Polynomial& p : f.polys()) {
    for (const Monomial& m : p.terms()) {
      if (!m.coefficient.is_real()) return false;
    }
  }
  return true;
}

namespace {

bool point_test(const PolynomialSystem& f, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Point y;
  y.reserve(f.variables());
  for (std::size_t j = 0; j < f.variables(); ++j) y.push_back(Scalar::from_rational(rng.rational(), 0, f.context()));
  std::vector<Scalar> values = f.eval(y);
  std::vector<Scalar> conjugates;
  conjugates.reserve(values.size());
  for (const Scalar& v : values) conjugates.push_back(v.conj());
  std::sort(values.begin(), values.end(), lex_less);
  std::sort(conjugates.begin(), conjugates.end(), lex_less);
  return std::equal(values.begin(), values.end(), conjugates.begin());
}

}  // namespace

bool is_real_system(const PolynomialSystem& f, RealTest test, std::uint64_t seed) {
  switch (test) {
    case RealTest::coeff:
      return has_real_coefficients(f);
    case RealTest::point:
      return point_test(f, seed);
    case RealTest::both:
      return has_real_coefficients(f) || point_test(f, seed);
    case RealTest::assume:
      return true;
    case RealTest::skip:
      return false;
  }
  return false;
}

// ---- points -----------------------------------------------------------------------

Point conjugate_point(std::span<const Scalar> x) {
  Point out;
  out.reserve(x.size());
  for (const Scalar& c : x) out.push_back(c.conj());
  return out;
}

Point real_projection(std::span<const Scalar> x) {
  Point out;
  out.reserve(x.size());
  for (const Scalar& c : x) {
    if (c.is_exact()) {
      out.push_back(GaussianRational{c.exact().re, Rational(0)});
    } else {
      out.push_back(BigComplex(c.floating().re, BigFloat(c.precision())));
    }
  }
  return out;
}

Real imag_distance_sq(std::span<const Scalar> x) {
  if (x.empty()) return Rational(0);
  Real acc = x.front().imag_part() * x.front().imag_part();
  for (std::size_t i = 1; i < x.size(); ++i) acc = acc + x[i].imag_part() * x[i].imag_part();
  return acc;
}

Point subtract(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw DimensionError("points have different dimensions");
  Point out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

Point with_precision(std::span<const Scalar> x, mpfr_prec_t precision) {
  Point out;
  out.reserve(x.size());
  for (const Scalar& c : x) out.push_back(c.with_precision(precision));
  return out;
}

Point point_in_context(std::span<const Scalar> x, const NumberContext& ctx) {
  Point out;
  out.reserve(x.size());
  for (const Scalar& c : x) {
    if (ctx.arithmetic == Arithmetic::floating) {
      out.push_back(c.is_exact() ? Scalar::from_rational(c.exact().re, c.exact().im, ctx) : c.with_precision(ctx.precision));
    } else {
      if (!c.is_exact()) throw ModeMismatch();
      out.push_back(c);
    }
  }
  return out;
}

bool points_equal(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

}  // namespace polycert
