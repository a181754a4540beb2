#pragma once

#include "polycert/arith.hpp"

namespace polycert::thresholds {

/// Rational stand-in for (13 - 3 sqrt 17) / 4 ~ 0.157671, strictly below it.
inline Rational alpha_certify() { return Rational(157, 1000); }
inline Rational alpha_certify_sq() { return Rational(24649, 1000000); }

/// Robust alpha bound under which the 1 / (20 gamma) ball shares the root.
inline Rational alpha_robust() { return Rational(3, 100); }
inline Rational alpha_robust_sq() { return Rational(9, 10000); }

/// (1/20)^2; points closer than 1/(20 gamma) share the associated solution.
inline Rational robust_radius_factor_sq() { return Rational(1, 400); }

/// True iff 0 < t and t < (13 - 3 sqrt 17) / 4, decided in exact arithmetic:
/// 13 - 4t > 0 and (13 - 4t)^2 > 153.
bool alpha_threshold_is_sound(const Rational& t);

/// Throws std::logic_error unless t is sound and t_sq == t^2.
void assert_alpha_threshold(const Rational& t, const Rational& t_sq);

/// Checks the shipped threshold; throws std::logic_error if it is unsound.
void assert_thresholds_sound();

}  // namespace polycert::thresholds
