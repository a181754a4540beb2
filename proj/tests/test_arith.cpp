#include <doctest.h>

#include "polycert/arith.hpp"
#include "polycert/random.hpp"
#include "support.hpp"

using namespace polycert;
using testsupport::Q;

namespace {

bool canonical(const Rational& q) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return sgn(q.get_den()) > 0 && g == 1;
}

// sqrt(q) bracketed by rational bisection, independent of sqrt_upper_bound.
std::pair<Rational, Rational> bisect_sqrt(const Rational& q, int steps) {
  Rational lo = 0, hi = q > 1 ? q : Rational(1);
  for (int i = 0; i < steps; ++i) {
    Rational mid = (lo + hi) / 2;
    if (mid * mid <= q) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("modulus_sq examples") {
  CHECK(modulus_sq(Scalar(GaussianRational{0, 0})) == Rational(0));
  CHECK(modulus_sq(Scalar(GaussianRational{Q("3/5"), Q("4/5")})) == Rational(1));
  CHECK(modulus_sq(Scalar(GaussianRational{1, 2})) == Rational(5));
}

TEST_CASE("norm_sq_vector examples") {
  std::vector<Scalar> empty;
  CHECK(norm_sq_vector(empty) == Rational(0));
  std::vector<Scalar> v{GaussianRational{1, 0}, GaussianRational{0, 1}};
  CHECK(norm_sq_vector(v) == Rational(2));
  std::vector<Scalar> w{GaussianRational{Q("3/5"), Q("4/5")}, GaussianRational{2, 0}};
  CHECK(norm_sq_vector(w) == Rational(5));
}

TEST_CASE("sqrt_upper_bound examples") {
  CHECK(sqrt_upper_bound(0, 10) == 0);
  Rational u = sqrt_upper_bound(4, 10);
  CHECK(u >= 2);
  CHECK(u <= Rational(2) * (1 + Rational(1, 1024)));

  Rational v = sqrt_upper_bound(2, 4);
  CHECK(v * v >= 2);
  auto [lo, hi] = bisect_sqrt(2, 200);
  (void)lo;
  CHECK(v <= hi * Rational(17, 16));
  CHECK(v * v <= Rational(2) * Rational(17, 16) * Rational(17, 16));

  CHECK_THROWS_AS(sqrt_upper_bound(-1, 10), DomainError);
  CHECK_THROWS_AS(sqrt_upper_bound(1, 0), DomainError);
}

TEST_CASE("sqrt_upper_bound is exact on perfect squares") {
  CHECK(sqrt_upper_bound(Q("9/16"), 10) * sqrt_upper_bound(Q("9/16"), 10) >= Q("9/16"));
  CHECK(sqrt_upper_bound(Q("9/16"), 10) <= Q("3/4") * (1 + Rational(1, 1024)));
}

TEST_CASE("sqrt_upper_bound soundness over random rationals") {
  SplitMix64 rng(20240901);
  for (int trial = 0; trial < 10000; ++trial) {
    Rational q(rng.uniform(0, std::int64_t{1} << 40), rng.uniform(1, std::int64_t{1} << 40));
    q.canonicalize();
    if (trial % 7 == 0) q /= Rational(Integer(1) << 80);
    if (trial % 11 == 0) q *= Rational(Integer(1) << 90);
    const unsigned k = static_cast<unsigned>(rng.uniform(1, 32));
    Rational u = sqrt_upper_bound(q, k);
    Rational slack = 1 + Rational(1, Integer(1) << k);
    REQUIRE(u * u >= q);
    REQUIRE(u * u <= q * slack * slack);
  }
}

TEST_CASE("rational arithmetic stays canonical") {
  SplitMix64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Rational a = rng.rational(), b = rng.rational();
    REQUIRE(canonical(a + b));
    REQUIRE(canonical(a - b));
    REQUIRE(canonical(a * b));
    if (b != 0) REQUIRE(canonical(a / b));
    GaussianRational z{a, b}, w{b, a};
    GaussianRational p = z * w;
    REQUIRE(canonical(p.re));
    REQUIRE(canonical(p.im));
    if (!w.is_zero()) {
      GaussianRational d = z / w;
      REQUIRE(canonical(d.re));
      REQUIRE(canonical(d.im));
      REQUIRE(d * w == z);
    }
  }
}

TEST_CASE("gaussian rational invariants") {
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    GaussianRational z{rng.rational(), rng.rational()};
    CHECK(z.conj().conj() == z);
    CHECK(z.modulus_sq() >= 0);
  }
  CHECK(GaussianRational{}.modulus_sq() == 0);
}

TEST_CASE("token parsing") {
  CHECK(parse_rational("6/4") == Q("3/2"));
  CHECK(parse_rational("-7") == -7);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK(parse_decimal_exact("1.25e-2") == Q("1/80"));
  CHECK(parse_decimal_exact("-3E2") == -300);
  CHECK(parse_decimal_exact("2/6") == Q("1/3"));
  CHECK(is_rational_token("-12/5"));
  CHECK_FALSE(is_rational_token("0.5"));
}

TEST_CASE("cross-mode operations are rejected") {
  Scalar a = Scalar::from_rational(1, 2, NumberContext::exact());
  Scalar b = Scalar::from_rational(1, 2, NumberContext::floating(128));
  CHECK_THROWS_AS(a + b, ModeMismatch);
  CHECK_THROWS_AS(a * b, ModeMismatch);
  CHECK_THROWS_AS((void)(a == b), ModeMismatch);
  CHECK_THROWS_AS(Real(Rational(1)) + Real(BigFloat(Rational(1), 64)), ModeMismatch);
}

TEST_CASE("float arithmetic takes the larger precision") {
  BigFloat a(Rational(1, 3), 64), b(Rational(1, 7), 200);
  CHECK((a + b).precision() == 200);
  BigComplex z(BigFloat(Rational(1), 64), BigFloat(Rational(2), 128));
  CHECK(z.re.precision() == z.im.precision());
}

TEST_CASE("float evaluation is deterministic") {
  const NumberContext ctx = NumberContext::floating(256);
  auto expr = [&] {
    Scalar x = Scalar::from_rational(Q("2/3"), Q("-1/7"), ctx);
    Scalar acc = Scalar::one(ctx);
    for (int i = 0; i < 50; ++i) acc = acc * x + Scalar::from_rational(i, 1, ctx);
    return acc / (x + Scalar::one(ctx));
  };
  Scalar first = expr();
  for (int i = 0; i < 5; ++i) {
    Scalar again = expr();
    CHECK(again.floating().re.identical(first.floating().re));
    CHECK(again.floating().im.identical(first.floating().im));
  }
}

TEST_CASE("float decimal rendering round-trips") {
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    BigFloat x(rng.rational(), 256);
    BigFloat y = BigFloat::parse(x.to_decimal(), 256);
    CHECK(y.identical(x));
  }
}

TEST_CASE("real comparisons against rationals are exact in float mode") {
  BigFloat third(Rational(1, 3), 64);
  Real r(third);
  CHECK(r != Rational(1, 3));
  CHECK(r == third.to_rational());
  CHECK((r <=> Rational(1, 2)) == std::partial_ordering::less);
}
