#include <doctest.h>

#include "polycert/certify.hpp"
#include "support.hpp"

using namespace polycert;
using namespace testsupport;

namespace {

const char* kSquareMinusOne = "1 1\n2\n2 1 0\n0 -1 0\n";
const char* kSquarePlusOne = "1 1\n2\n2 1 0\n0 1 0\n";
const char* kCubeMinusOne = "1 1\n2\n3 1 0\n0 -1 0\n";

std::vector<std::size_t> indices(const std::vector<CertifiedPoint>& c) {
  std::vector<std::size_t> out;
  for (const auto& p : c) out.push_back(p.index);
  return out;
}

// Three exact Newton steps from each start.
std::vector<Point> warmed(const PolynomialSystem& f, std::vector<Point> starts, int steps = 3) {
  for (Point& x : starts)
    for (int i = 0; i < steps; ++i) x = newton_step(f, x);
  return starts;
}

std::vector<Point> cube_root_points() {
  auto f = sys(kCubeMinusOne);
  return warmed(f, {rpoint({Q("11/10")}), cpoint({{Q("-1/2"), Q("87/100")}}), cpoint({{Q("-1/2"), Q("-87/100")}})});
}

}  // namespace

TEST_CASE("certify_solutions examples") {
  auto f = sys(kSquareMinusOne);
  CHECK(indices(certify_solutions(f, {rpoint({1}), rpoint({Q("51/50")}), rpoint({0})})) ==
        std::vector<std::size_t>{0, 1});
  CHECK(certify_solutions(sys("1 1\n1\n2 1 0\n"), {rpoint({1})}).empty());
  CHECK(certify_solutions(f, {}).empty());
}

TEST_CASE("certify_solutions skips badly sized points") {
  auto f = sys(kSquareMinusOne);
  auto out = certify_solutions(f, {rpoint({1, 2}), rpoint({1})});
  CHECK(indices(out) == std::vector<std::size_t>{1});
  auto assessed = assess_points(f, {rpoint({1, 2})});
  CHECK_FALSE(assessed[0].error.empty());
}

TEST_CASE("assess_points is ordered and worker-count independent") {
  auto f = sys(kCubeMinusOne);
  std::vector<Point> pts;
  SplitMix64 rng(31);
  for (int i = 0; i < 40; ++i) pts.push_back(cpoint({{small_rational(rng, 3, 2), small_rational(rng, 3, 2)}}));
  auto one = assess_points(f, pts, 1);
  auto four = assess_points(f, pts, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].index == i);
    CHECK(four[i].index == i);
    CHECK(one[i].certified == four[i].certified);
    CHECK(one[i].info->alpha_ub_sq == four[i].info->alpha_ub_sq);
  }
}

TEST_CASE("certify_distinct examples") {
  auto f = sys(kSquareMinusOne);
  CHECK(certify_distinct(f, rpoint({Q("51/50")}), rpoint({Q("-51/50")})).yes());
  Outcome same = certify_distinct(f, rpoint({Q("51/50")}), rpoint({Q("51/50") + Q("1/1000000")}));
  CHECK(same.no());
  CHECK(same.rounds == 0);
  CHECK(certify_distinct(f, rpoint({1}), rpoint({1})).no());
  CHECK(certify_distinct(f, rpoint({1}), rpoint({-1})).yes());
}

TEST_CASE("certify_distinct is symmetric") {
  auto f = sys(kCubeMinusOne);
  auto pts = cube_root_points();
  pts.push_back(rpoint({Q("101/100")}));
  pts.push_back(cpoint({{Q("-49/100"), Q("86/100")}}));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      Outcome a = certify_distinct(f, pts[i], pts[j]);
      Outcome b = certify_distinct(f, pts[j], pts[i]);
      CHECK(a.verdict == b.verdict);
    }
}

TEST_CASE("certify_distinct gives up at the cap") {
  // Far apart in neither sense after zero rounds.
  auto f = sys(kSquareMinusOne);
  IterationOptions opts;
  opts.newton_cap = 0;
  Outcome o = certify_distinct(f, rpoint({Q("3/2")}), rpoint({Q("6/5")}), opts);
  CHECK(o.undecided());
  CHECK(o.reason == "iteration cap");
  IterationOptions more;
  CHECK(certify_distinct(f, rpoint({Q("3/2")}), rpoint({Q("6/5")}), more).no());
}

TEST_CASE("certify_real_local examples") {
  auto f = sys(kSquareMinusOne);
  CHECK(certify_real_local(f, rpoint({Q("51/50")})).yes());
  CHECK(certify_real_local(sys(kSquarePlusOne), cpoint({{0, 1}})).no());
  CHECK(certify_real_local(f, cpoint({{Q("51/50"), Q("1/1000000")}})).yes());
  CHECK(certify_real_local(f, rpoint({1})).yes());
}

TEST_CASE("certify_real_local is conjugation equivariant") {
  auto f = sys(kCubeMinusOne);
  SplitMix64 rng(32);
  auto pts = cube_root_points();
  for (int i = 0; i < 10; ++i) pts.push_back(perturbed(pts[static_cast<std::size_t>(i % 3)], rng, Q("1/200"), true));
  for (const Point& x : pts) {
    CHECK(certify_real_local(f, x).verdict == certify_real_local(f, conjugate_point(x)).verdict);
    CHECK(compute_abg(f, x).beta_sq == compute_abg(f, conjugate_point(x)).beta_sq);
  }
}

TEST_CASE("certify_real_global examples and agreement with the local test") {
  auto f = sys(kSquareMinusOne);
  auto g = certify_real_global(f, {rpoint({1}), rpoint({-1})}, 2);
  CHECK(g[0].yes());
  CHECK(g[1].yes());

  auto h = sys(kSquarePlusOne);
  std::vector<Point> ipts{cpoint({{0, 1}}), cpoint({{0, -1}})};
  auto gi = certify_real_global(h, ipts, 2);
  CHECK(gi[0].no());
  CHECK(gi[1].no());

  auto c = sys(kCubeMinusOne);
  auto cube = cube_root_points();
  auto gc = certify_real_global(c, cube, 3);
  CHECK(gc[0].yes());
  CHECK(gc[1].no());
  CHECK(gc[2].no());
  for (std::size_t i = 0; i < cube.size(); ++i) CHECK(certify_real_local(c, cube[i]).verdict == gc[i].verdict);
  for (std::size_t i = 0; i < ipts.size(); ++i) CHECK(certify_real_local(h, ipts[i]).verdict == gi[i].verdict);

  CHECK_THROWS_AS(certify_real_global(f, {rpoint({1})}, 2), UsageError);
}

TEST_CASE("certify_count examples") {
  auto f = sys("2 2\n2\n2 0 1 0\n0 0 -1 0\n2\n0 2 1 0\n0 0 -2 0\n");
  auto pts = warmed(f, {rpoint({Q("11/10"), Q("7/5")}), rpoint({Q("-9/10"), Q("3/2")}),
                        rpoint({Q("6/5"), Q("-13/10")}), rpoint({Q("-11/10"), Q("-7/5")})});
  CountResult r = certify_count(f, pts);
  CHECK(r.approximate.size() == 4);
  CHECK(r.distinct.size() == 4);
  CHECK(r.real.size() == 4);

  CountResult i = certify_count(sys(kSquarePlusOne), {cpoint({{0, 1}}), cpoint({{0, -1}})});
  CHECK(i.approximate.size() == 2);
  CHECK(i.distinct.size() == 2);
  CHECK(i.real.empty());

  CountResult e = certify_count(f, {});
  CHECK(e.approximate.empty());
  CHECK(e.distinct.empty());
  CHECK(e.real.empty());
}

TEST_CASE("certify_count merges points sharing a solution") {
  auto f = sys(kSquareMinusOne);
  CountResult r = certify_count(f, {rpoint({1}), rpoint({Q("51/50")}), rpoint({Q("-51/50")})});
  CHECK(r.approximate.size() == 3);
  CHECK(r.distinct == std::vector<std::size_t>{0, 2});
  CHECK(r.real == std::vector<std::size_t>{0, 2});
  CHECK(r.records[1].same_as == std::optional<std::size_t>{0});
  CHECK(r.undecided_count() == 0);
}

TEST_CASE("certify_count keeps singular exact zeros out of D") {
  auto f = sys("1 1\n1\n2 1 0\n");
  CountResult r = certify_count(f, {rpoint({0})});
  CHECK(r.approximate.size() == 1);
  CHECK(r.records[0].singular_exact_zero);
  CHECK(r.distinct.empty());
  CHECK(r.real.empty());
}

TEST_CASE("certify_count honours the real test policy") {
  auto f = sys("1 1\n2\n2 1 0\n0 0 -1\n");  // x^2 - i: not real
  Point x = warmed(f, {cpoint({{Q("7/10"), Q("7/10")}})})[0];
  CountOptions opts;
  CountResult r = certify_count(f, {x}, opts);
  CHECK_FALSE(r.real_system);
  CHECK(r.real.empty());
  opts.real_test = RealTest::skip;
  CHECK(certify_count(sys(kSquareMinusOne), {rpoint({1})}, opts).real.empty());
  opts.real_test = RealTest::assume;
  CountResult a = certify_count(sys(kSquareMinusOne), {rpoint({1})}, opts);
  CHECK(a.real_assumed);
  CHECK(a.real.size() == 1);
}

TEST_CASE("certify_solutions is idempotent") {
  auto f = sys(kCubeMinusOne);
  SplitMix64 rng(33);
  std::vector<Point> pts;
  for (int i = 0; i < 30; ++i) pts.push_back(cpoint({{small_rational(rng, 6, 5), small_rational(rng, 6, 5)}}));
  auto first = certify_solutions(f, pts);
  std::vector<Point> kept;
  for (const auto& c : first) kept.push_back(pts[c.index]);
  auto second = certify_solutions(f, kept);
  CHECK(second.size() == kept.size());
  for (std::size_t i = 0; i < second.size(); ++i) CHECK(second[i].info.alpha_ub_sq == first[i].info.alpha_ub_sq);
}

TEST_CASE("larger sqrt slack never loses a distinct verdict") {
  auto f = sys(kCubeMinusOne);
  auto base = cube_root_points();
  SplitMix64 rng(34);
  std::vector<Point> pts = base;
  for (int i = 0; i < 9; ++i) pts.push_back(perturbed(base[static_cast<std::size_t>(i % 3)], rng, Q("1/100"), true));
  IterationOptions k10, k20;
  k20.sqrt_slack = 20;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (certify_distinct(f, pts[i], pts[j], k10).yes()) CHECK(certify_distinct(f, pts[i], pts[j], k20).yes());
    }
}

TEST_CASE("verdicts are invariant under scaling the system") {
  auto f = sys(kCubeMinusOne);
  auto pts = cube_root_points();
  pts.push_back(rpoint({Q("21/20")}));
  CountResult a = certify_count(f, pts);
  CountResult b = certify_count(f.scaled(Q("-5/3")), pts);
  CHECK(a.approximate == b.approximate);
  CHECK(a.distinct == b.distinct);
  CHECK(a.real == b.real);
}

TEST_CASE("float mode certifies the same count example") {
  const NumberContext ctx = NumberContext::floating(256);
  PolynomialSystem f = sys(kSquareMinusOne).to_floating(256);
  std::vector<Point> pts{point_in_context(rpoint({1}), ctx), point_in_context(rpoint({Q("51/50")}), ctx),
                         point_in_context(rpoint({Q("-51/50")}), ctx)};
  CountOptions opts;
  opts.iteration = IterationOptions::for_context(ctx);
  CountResult r = certify_count(f, pts, opts);
  CHECK(r.approximate.size() == 3);
  CHECK(r.distinct.size() == 2);
  CHECK(r.real.size() == 2);
}

TEST_CASE("float precision ceiling surfaces as undecided") {
  const NumberContext ctx = NumberContext::floating(64);
  PolynomialSystem f = sys(kSquareMinusOne).to_floating(64);
  IterationOptions opts = IterationOptions::for_context(ctx, 50, 64);
  Outcome o = certify_distinct(f, point_in_context(rpoint({Q("3/2")}), ctx), point_in_context(rpoint({Q("6/5")}), ctx), opts);
  CHECK(o.undecided());
  CHECK(o.precision_exhausted);
}
