#pragma once

// Sparse polynomial systems f : C^n -> C^N with coefficients in Q[i] (or
// MPFR complex floats), their evaluation and Jacobians, Bombieri-Weyl norms,
// and the tests deciding whether a system is real.

#include <cstdint>
#include <span>
#include <vector>

#include "polycert/arith.hpp"
#include "polycert/matrix.hpp"

namespace polycert {

using Exponents = std::vector<unsigned>;
using Point = std::vector<Scalar>;

struct Monomial {
  Exponents exponents;
  Scalar coefficient;

  unsigned degree() const;
};

/// Descending graded-lexicographic order: higher total degree first, ties
/// broken by the first differing exponent (larger first).
bool grlex_before(const Exponents& a, const Exponents& b);

class Polynomial {
 public:
  Polynomial() = default;
  /// Sorts terms canonically and drops zero coefficients. Throws
  /// DimensionError on an exponent vector of the wrong length and ParseError
  /// on a repeated exponent vector.
  Polynomial(std::size_t variables, std::vector<Monomial> terms);
  /// Like the constructor, but sums terms sharing an exponent vector.
  static Polynomial combine(std::size_t variables, std::vector<Monomial> terms);

  std::size_t variables() const { return variables_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  unsigned degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }

  Polynomial derivative(std::size_t var) const;
  Polynomial scaled(const Scalar& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  std::size_t variables_ = 0;
  unsigned degree_ = 0;
  std::vector<Monomial> terms_;
};

struct Evaluation {
  std::vector<Scalar> values;
  Matrix jacobian;
};

class PolynomialSystem {
 public:
  PolynomialSystem() = default;
  /// All coefficients must live in `ctx`'s arithmetic mode.
  PolynomialSystem(std::size_t variables, std::vector<Polynomial> polys, NumberContext ctx);

  std::size_t variables() const { return variables_; }
  std::size_t equations() const { return polys_.size(); }
  bool is_square() const { return polys_.size() == variables_; }
  bool is_overdetermined() const { return polys_.size() > variables_; }

  const std::vector<Polynomial>& polys() const { return polys_; }
  const NumberContext& context() const { return context_; }
  std::vector<unsigned> degrees() const;
  unsigned max_degree() const { return max_degree_; }
  bool has_zero_polynomial() const;

  /// Cached sum of Bombieri-Weyl squared norms of the polynomials.
  const Real& bombieri_norm_sq() const { return bombieri_norm_sq_; }

  /// f(x). Throws DimensionError if x has the wrong length.
  std::vector<Scalar> eval(std::span<const Scalar> x) const;
  /// N x n Jacobian at x.
  Matrix jacobian(std::span<const Scalar> x) const;
  /// f(x) and Df(x) sharing one power table.
  Evaluation evaluate(std::span<const Scalar> x) const;

  /// c * f.
  PolynomialSystem scaled(const Rational& c) const;
  /// Polynomials reordered so that result[i] = polys[perm[i]].
  PolynomialSystem permuted(std::span<const std::size_t> perm) const;
  /// Float-mode copy with every coefficient rounded to `precision` bits.
  PolynomialSystem to_floating(mpfr_prec_t precision) const;

  friend bool operator==(const PolynomialSystem& a, const PolynomialSystem& b);

 private:
  std::size_t variables_ = 0;
  std::vector<Polynomial> polys_;
  std::vector<std::vector<Polynomial>> partials_;  // partials_[i][j] = d f_i / d x_j
  NumberContext context_;
  unsigned max_degree_ = 0;
  Real bombieri_norm_sq_;
};

/// sum |a_nu|^2 nu! (d - |nu|)! / d! for one polynomial of degree d.
Real bombieri_norm_sq(const Polynomial& g, const NumberContext& ctx);
/// Sum over the polynomials of f, recomputed from scratch.
Real bombieri_norm_sq(const PolynomialSystem& f);

enum class RealTest { coeff, point, both, assume, skip };

/// Whether f should be treated as a real system under the given policy.
/// `point` evaluates f at a seeded pseudo-random rational point y and
/// compares the multisets {f_i(y)} and {conj f_i(y)}. `skip` is always false.
bool is_real_system(const PolynomialSystem& f, RealTest test, std::uint64_t seed);
bool has_real_coefficients(const PolynomialSystem& f);

Point conjugate_point(std::span<const Scalar> x);
Point real_projection(std::span<const Scalar> x);
/// ||x - real_projection(x)||^2, i.e. the sum of squared imaginary parts.
Real imag_distance_sq(std::span<const Scalar> x);

/// Coordinatewise difference; throws DimensionError on length mismatch.
Point subtract(std::span<const Scalar> a, std::span<const Scalar> b);
Point with_precision(std::span<const Scalar> x, mpfr_prec_t precision);
/// Exact point converted to the context's arithmetic.
Point point_in_context(std::span<const Scalar> x, const NumberContext& ctx);
bool points_equal(std::span<const Scalar> a, std::span<const Scalar> b);

}  // namespace polycert
