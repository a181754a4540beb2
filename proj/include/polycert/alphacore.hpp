#pragma once

// Smale alpha-theory point estimates. All certificates are carried as
// squares: beta^2, (gamma upper bound)^2 and (alpha upper bound)^2. The exact
// gamma (a supremum over higher derivatives) is never computed; it is bounded
// through mu(f, x) with the spectral norm relaxed to the Frobenius norm.

#include <optional>
#include <vector>

#include "polycert/arith.hpp"
#include "polycert/matrix.hpp"
#include "polycert/polysys.hpp"

namespace polycert {

struct CertInfo {
  /// ||Df(x)^-1 f(x)||^2; 0 at an exact zero, +inf when singular off V(f).
  ExtendedReal beta_sq;
  ExtendedReal gamma_ub_sq;
  /// beta_sq * gamma_ub_sq, or 0 at an exact zero.
  ExtendedReal alpha_ub_sq;
  bool exact_zero = false;
  bool singular = false;
};

/// Diagonal of Delta_(d)(x)^2 together with the data it is built from.
struct DegreeData {
  std::vector<unsigned> degrees;
  unsigned max_degree = 0;
  /// ||x||_1^2 = 1 + ||x||^2.
  Real norm1_sq;
  /// d_i * ||x||_1^(2(d_i - 1)); zero for constant polynomials.
  std::vector<Real> delta_diag_sq;

  static DegreeData at(const PolynomialSystem& f, std::span<const Scalar> x);
};

/// Solves A X = B by LU with partial pivoting on the largest modulus.
/// Returns nullopt when some column has no nonzero pivot.
std::optional<Matrix> lu_solve(const Matrix& a, const Matrix& b);

/// x - Df(x)^-1 f(x), or x itself when Df(x) is singular.
Point newton_step(const PolynomialSystem& f, std::span<const Scalar> x);

/// Square of mu_F(f,x) D^(3/2) / (2 ||x||_1) where `inverse` is Df(x)^-1.
/// mu_F^2 = max{1, ||f||^2 ||Df^-1 Delta||_F^2}.
ExtendedReal gamma_bound_sq(const PolynomialSystem& f, std::span<const Scalar> x,
                            const std::optional<Matrix>& inverse);

/// The COMPUTE procedure. Throws DimensionError for non-square systems or
/// badly sized points and DomainError for systems with a zero polynomial.
CertInfo compute_abg(const PolynomialSystem& f, std::span<const Scalar> x);

/// Float-mode precision schedule for Newton updates inside iterative
/// procedures. Rational mode ignores it.
struct PrecisionSchedule {
  mpfr_prec_t step = 128;
  mpfr_prec_t ceiling = 8192;

  /// step = max(64, ceil(p / 2)).
  static PrecisionSchedule for_user_precision(mpfr_prec_t user_precision, mpfr_prec_t ceiling = 8192);
};

/// One Newton update under the schedule: in float mode the point is first
/// widened by `step` bits. Throws PrecisionCeiling past the ceiling.
Point scheduled_newton_step(const PolynomialSystem& f, std::span<const Scalar> x, const PrecisionSchedule& schedule);

struct RefineOptions {
  unsigned iteration_cap = 100;
  PrecisionSchedule schedule;
};

/// Newton-iterates an already certified x until 2 beta <= 10^-digits while
/// the point still passes the alpha test, so the associated solution lies
/// within 10^-digits of the result. Throws IterationCap or PrecisionCeiling.
Point refine(const PolynomialSystem& f, std::span<const Scalar> x, unsigned digits, const RefineOptions& options = {});

}  // namespace polycert
