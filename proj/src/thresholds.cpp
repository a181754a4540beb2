#include "polycert/thresholds.hpp"

#include <stdexcept>

namespace polycert::thresholds {

bool alpha_threshold_is_sound(const Rational& t) {
  if (sgn(t) <= 0) return false;
  Rational gap = Rational(13) - Rational(4) * t;
  if (sgn(gap) <= 0) return false;
  return gap * gap > Rational(153);
}

void assert_alpha_threshold(const Rational& t, const Rational& t_sq) {
  if (!alpha_threshold_is_sound(t) || t * t != t_sq) {
    throw std::logic_error("alpha certification threshold " + t.get_str() + " is not below (13 - 3 sqrt 17) / 4");
  }
}

void assert_thresholds_sound() { assert_alpha_threshold(alpha_certify(), alpha_certify_sq()); }

}  // namespace polycert::thresholds
