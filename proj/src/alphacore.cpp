#include "polycert/alphacore.hpp"

#include <algorithm>

#include "polycert/thresholds.hpp"

namespace polycert {

namespace {

NumberContext context_of(const PolynomialSystem& f, std::span<const Scalar> x) {
  NumberContext ctx = f.context();
  for (const Scalar& c : x) ctx.precision = std::max(ctx.precision, c.precision());
  return ctx;
}

void require_square(const PolynomialSystem& f) {
  if (!f.is_square()) throw DimensionError("alpha-theory estimates need a square system");
}

Real pow(const Real& base, unsigned e, const NumberContext& ctx) {
  Real acc = Real::from_rational(1, ctx);
  for (unsigned i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

}  // namespace

DegreeData DegreeData::at(const PolynomialSystem& f, std::span<const Scalar> x) {
  NumberContext ctx = context_of(f, x);
  DegreeData out;
  out.degrees = f.degrees();
  out.max_degree = f.max_degree();
  out.norm1_sq = Real::from_rational(1, ctx) + norm_sq_vector(x, ctx);
  out.delta_diag_sq.reserve(out.degrees.size());
  for (unsigned d : out.degrees) {
    if (d == 0) {
      out.delta_diag_sq.push_back(Real::from_rational(0, ctx));
    } else {
      out.delta_diag_sq.push_back(pow(out.norm1_sq, d - 1, ctx).scaled(Rational(d)));
    }
  }
  return out;
}

std::optional<Matrix> lu_solve(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("lu_solve needs a square matrix");
  if (b.rows() != n) throw DimensionError("lu_solve right-hand side has the wrong row count");
  if (n == 0) return b;

  Matrix lu = a;
  Matrix x = b;
  const std::size_t m = b.cols();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    Real best = lu(col, col).modulus_sq();
    for (std::size_t r = col + 1; r < n; ++r) {
      Real candidate = lu(r, col).modulus_sq();
      if (candidate > best) {
        best = std::move(candidate);
        pivot = r;
      }
    }
    if (best.is_zero()) return std::nullopt;
    lu.swap_rows(col, pivot);
    x.swap_rows(col, pivot);
    const Scalar pivot_value = lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (lu(r, col).is_zero()) continue;
      Scalar factor = lu(r, col) / pivot_value;
      for (std::size_t c = col + 1; c < n; ++c) lu(r, c) -= factor * lu(col, c);
      for (std::size_t c = 0; c < m; ++c) x(r, c) -= factor * x(col, c);
    }
  }
  // Back substitution.
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t ri = n; ri-- > 0;) {
      Scalar acc = x(ri, c);
      for (std::size_t k = ri + 1; k < n; ++k) acc -= lu(ri, k) * x(k, c);
      x(ri, c) = acc / lu(ri, ri);
    }
  }
  return x;
}

Point newton_step(const PolynomialSystem& f, std::span<const Scalar> x) {
  require_square(f);
  Evaluation ev = f.evaluate(x);
  std::optional<Matrix> step = lu_solve(ev.jacobian, Matrix::column(ev.values));
  if (!step) return Point(x.begin(), x.end());
  return subtract(x, step->column_values(0));
}

ExtendedReal gamma_bound_sq(const PolynomialSystem& f, std::span<const Scalar> x, const std::optional<Matrix>& inverse) {
  if (!inverse) return ExtendedReal::infinity();
  NumberContext ctx = context_of(f, x);
  DegreeData deg = DegreeData::at(f, x);
  const std::size_t n = f.variables();
  if (inverse->rows() != n || inverse->cols() != n) throw DimensionError("inverse Jacobian has the wrong shape");

  Real frob_sq = Real::from_rational(0, ctx);
  for (std::size_t j = 0; j < n; ++j) {
    Real col = Real::from_rational(0, ctx);
    for (std::size_t i = 0; i < n; ++i) col = col + (*inverse)(i, j).modulus_sq();
    frob_sq = frob_sq + deg.delta_diag_sq[j] * col;
  }
  Real mu_sq = f.bombieri_norm_sq() * frob_sq;
  if (mu_sq < Rational(1)) mu_sq = Real::from_rational(1, ctx);

  const unsigned d = deg.max_degree;
  Rational d_cubed(static_cast<unsigned long>(d) * d * d);
  return (mu_sq / deg.norm1_sq.scaled(Rational(4))).scaled(d_cubed);
}

CertInfo compute_abg(const PolynomialSystem& f, std::span<const Scalar> x) {
  require_square(f);
  if (f.has_zero_polynomial()) throw DomainError("system contains a zero polynomial");
  NumberContext ctx = context_of(f, x);
  Evaluation ev = f.evaluate(x);

  CertInfo info;
  info.exact_zero = std::all_of(ev.values.begin(), ev.values.end(), [](const Scalar& v) { return v.is_zero(); });

  const std::size_t n = f.variables();
  std::optional<Matrix> inverse = lu_solve(ev.jacobian, Matrix::identity(n, ctx));
  info.singular = !inverse.has_value();

  if (info.exact_zero) {
    Real zero = Real::from_rational(0, ctx);
    info.beta_sq = zero;
    info.alpha_ub_sq = zero;
    info.gamma_ub_sq = gamma_bound_sq(f, x, inverse);
    return info;
  }
  if (info.singular) {
    info.beta_sq = info.gamma_ub_sq = info.alpha_ub_sq = ExtendedReal::infinity();
    return info;
  }

  std::optional<Matrix> step = lu_solve(ev.jacobian, Matrix::column(ev.values));
  Real beta_sq = norm_sq_vector(step->column_values(0), ctx);
  ExtendedReal gamma_sq = gamma_bound_sq(f, x, inverse);
  info.beta_sq = beta_sq;
  info.gamma_ub_sq = gamma_sq;
  info.alpha_ub_sq = beta_sq * gamma_sq.value();
  return info;
}

PrecisionSchedule PrecisionSchedule::for_user_precision(mpfr_prec_t user_precision, mpfr_prec_t ceiling) {
  return {std::max<mpfr_prec_t>(64, (user_precision + 1) / 2), ceiling};
}

Point scheduled_newton_step(const PolynomialSystem& f, std::span<const Scalar> x, const PrecisionSchedule& schedule) {
  if (f.context().arithmetic == Arithmetic::rational) return newton_step(f, x);
  mpfr_prec_t current = f.context().precision;
  for (const Scalar& c : x) current = std::max(current, c.precision());
  mpfr_prec_t next = current + schedule.step;
  if (next > schedule.ceiling) throw PrecisionCeiling(schedule.ceiling);
  Point widened = with_precision(x, next);
  return newton_step(f, widened);
}

Point refine(const PolynomialSystem& f, std::span<const Scalar> x, unsigned digits, const RefineOptions& options) {
  Rational target(1);
  {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, 2ul * digits);
    target = Rational(Integer(1), p);
  }
  Point current(x.begin(), x.end());
  for (unsigned iter = 0; iter <= options.iteration_cap; ++iter) {
    CertInfo info = compute_abg(f, current);
    if (info.exact_zero) return current;
    if (info.alpha_ub_sq.is_finite() && info.alpha_ub_sq.value() < thresholds::alpha_certify_sq() &&
        info.beta_sq.value().scaled(Rational(4)) <= target) {
      return current;
    }
    if (iter == options.iteration_cap) break;
    current = scheduled_newton_step(f, current, options.schedule);
  }
  throw IterationCap(options.iteration_cap);
}

}  // namespace polycert
