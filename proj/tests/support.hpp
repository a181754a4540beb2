#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "polycert/io.hpp"
#include "polycert/polysys.hpp"
#include "polycert/random.hpp"

namespace testsupport {

using namespace polycert;

inline Rational Q(const char* s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

inline PolynomialSystem sys(const std::string& text, NumberContext ctx = NumberContext::exact()) {
  return parse_system(text, ctx).system;
}

/// Real exact point from rationals.
inline Point rpoint(std::initializer_list<Rational> coords) {
  Point p;
  for (const Rational& c : coords) p.push_back(GaussianRational{c, 0});
  return p;
}

inline Point cpoint(std::initializer_list<std::pair<Rational, Rational>> coords) {
  Point p;
  for (const auto& [re, im] : coords) p.push_back(GaussianRational{re, im});
  return p;
}

/// Univariate polynomial from dense coefficients c[0] + c[1] x + ...
inline Polynomial univariate(const std::vector<Rational>& c, const NumberContext& ctx = NumberContext::exact()) {
  std::vector<Monomial> terms;
  for (unsigned k = 0; k < c.size(); ++k) {
    if (c[k] != 0) terms.push_back({{k}, Scalar::from_rational(c[k], 0, ctx)});
  }
  return Polynomial(1, std::move(terms));
}

/// prod (x - r_i) as dense coefficients.
inline std::vector<Rational> from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> c{1};
  for (const Rational& r : roots) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

/// Small rational p/q with |p| <= pmax, 1 <= q <= qmax.
inline Rational small_rational(SplitMix64& rng, long pmax, long qmax) {
  Rational r(rng.uniform(-pmax, pmax), rng.uniform(1, qmax));
  r.canonicalize();
  return r;
}

/// Random dense polynomial system with n variables and degrees <= max_deg,
/// shifted so that `root` is a common zero.
inline PolynomialSystem random_system_with_root(SplitMix64& rng, std::size_t n, unsigned max_deg, const Point& root,
                                                bool complex_coeffs) {
  const NumberContext ctx = NumberContext::exact();
  std::vector<Polynomial> polys;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial> terms;
    const unsigned deg = static_cast<unsigned>(rng.uniform(1, max_deg));
    // Always include a linear term in x_i so the Jacobian is generically invertible.
    Exponents lin(n, 0);
    lin[i] = 1;
    terms.push_back({lin, Scalar::from_rational(rng.uniform(1, 5), 0, ctx)});
    const int extra = static_cast<int>(rng.uniform(1, 4));
    for (int t = 0; t < extra; ++t) {
      Exponents e(n, 0);
      unsigned budget = static_cast<unsigned>(rng.uniform(0, deg));
      for (unsigned b = 0; b < budget; ++b) e[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1))]++;
      Rational im = complex_coeffs ? small_rational(rng, 3, 2) : Rational(0);
      terms.push_back({e, Scalar::from_rational(small_rational(rng, 4, 3), im, ctx)});
    }
    Polynomial p = Polynomial::combine(n, terms);
    PolynomialSystem single(n, {p}, ctx);
    Scalar v = single.eval(root)[0];
    std::vector<Monomial> shifted = p.terms();
    shifted.push_back({Exponents(n, 0), -v});
    Polynomial q = Polynomial::combine(n, shifted);
    if (q.is_zero()) q = Polynomial(n, {{lin, Scalar::one(ctx)}, {Exponents(n, 0), -root[i]}});
    polys.push_back(std::move(q));
  }
  return PolynomialSystem(n, std::move(polys), ctx);
}

inline Point perturbed(const Point& x, SplitMix64& rng, const Rational& scale, bool imaginary = false) {
  Point y;
  for (const Scalar& c : x) {
    Rational d(rng.uniform(-100, 100), 100), e(rng.uniform(-100, 100), 100);
    d.canonicalize();
    e.canonicalize();
    d *= scale;
    e = imaginary ? e * scale : Rational(0);
    y.push_back(c + Scalar(GaussianRational{d, e}));
  }
  return y;
}

}  // namespace testsupport
