#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "polycert/io.hpp"
#include "polycert/run.hpp"
#include "support.hpp"

using namespace polycert;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = POLYCERT_FIXTURE_DIR;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("polycert_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("parse_system examples") {
  auto f = parse_system("1 1\n2\n2 1 0\n0 -1 0\n", NumberContext::exact()).system;
  CHECK(f.variables() == 1);
  CHECK(f.equations() == 1);
  CHECK(f.eval(rpoint({1}))[0].is_zero());
  CHECK(f.eval(rpoint({3}))[0] == Scalar(GaussianRational{8, 0}));

  auto g = parse_system("2 2\n1\n2 0 1 0\n1\n0 2 1 0\n", NumberContext::exact()).system;
  CHECK(g.eval(rpoint({2, 3}))[0] == Scalar(GaussianRational{4, 0}));
  CHECK(g.eval(rpoint({2, 3}))[1] == Scalar(GaussianRational{9, 0}));

  try {
    parse_system("1 1\n1\n2 1/0 0\n", NumberContext::exact());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("parse_system errors and warnings") {
  const NumberContext ex = NumberContext::exact();
  CHECK_THROWS_AS(parse_system("1 1\n2\n2 1 0\n2 3 0\n", ex), ParseError);
  CHECK_THROWS_AS(parse_system("1 1\n1\n2 0.5 0\n", ex), ParseError);
  CHECK_NOTHROW(parse_system("1 1\n1\n2 0.5 0\n", NumberContext::floating(64)));
  CHECK_THROWS_AS(parse_system("1 1\n1\n2 1\n", ex), ParseError);
  CHECK_THROWS_AS(parse_system("1 2\n1\n2 1 0\n", ex), ParseError);
  CHECK_THROWS_AS(parse_system("1 1\n1\n2 1 0\n7\n", ex), ParseError);
  CHECK_THROWS_AS(parse_system("1 1\n1\n-2 1 0\n", ex), ParseError);
  auto parsed = parse_system("# comment\n\n1 1\n2\n2 1 0  # x^2\n1 0 0\n", ex);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("line 6") != std::string::npos);
  CHECK(parsed.system.polys()[0].terms().size() == 1);
}

TEST_CASE("parse_points examples") {
  const NumberContext ex = NumberContext::exact();
  auto one = parse_points("1\n51/50 0\n", 1, ex);
  REQUIRE(one.size() == 1);
  CHECK(one[0][0] == Scalar(GaussianRational{Q("51/50"), 0}));

  auto two = parse_points("2\n0 1\n0 -1\n", 1, ex);
  REQUIRE(two.size() == 2);
  CHECK(two[1][0] == Scalar(GaussianRational{0, -1}));

  CHECK_THROWS_AS(parse_points("3\n1 0\n2 0\n", 1, ex), ParseError);
  CHECK_THROWS_AS(parse_points("1\n1 0\n2 0\n", 1, ex), ParseError);
  CHECK_THROWS_AS(parse_points("1\n1.5 0\n", 1, ex), ParseError);

  auto fl = parse_points("1\n1.5 -2e-3\n", 1, NumberContext::floating(80));
  CHECK(fl[0][0].precision() == 80);
  CHECK(fl[0][0].real_part() == Q("3/2"));
}

TEST_CASE("serialization round-trips") {
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".sys") continue;
    CAPTURE(entry.path().string());
    auto f = parse_system_file(entry.path(), NumberContext::exact()).system;
    std::string text = serialize_system(f);
    auto g = parse_system(text, NumberContext::exact()).system;
    CHECK(g == f);
    CHECK(serialize_system(g) == text);

    fs::path pts = entry.path();
    pts.replace_extension(".pts");
    if (!fs::exists(pts)) continue;
    auto x = parse_points_file(pts, f.variables(), NumberContext::exact());
    auto y = parse_points(serialize_points(x), f.variables(), NumberContext::exact());
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(points_equal(x[i], y[i]));
  }

  const NumberContext fl = NumberContext::floating(200);
  SplitMix64 rng(51);
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({Scalar::from_rational(rng.rational(), rng.rational(), fl)});
  auto back = parse_points(serialize_points(pts), 1, fl);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(back[i][0].floating().re.identical(pts[i][0].floating().re));
    CHECK(back[i][0].floating().im.identical(pts[i][0].floating().im));
  }
}

TEST_CASE("summary table format") {
  Summary s;
  s.total = 3;
  s.certified = 3;
  s.distinct = 2;
  s.real = 2;
  CHECK(format_summary(s) ==
        "     total  certified   distinct       real  undecided\n"
        "         3          3          2          2          0\n");
  Summary t;
  t.total = 1;
  t.certified = 1;
  CHECK(format_summary(t).find("         -") != std::string::npos);
}

TEST_CASE("count run on the fixture") {
  RunSettings s;
  RunArtifacts a = run(s, kFixtures / "square_minus_one.sys", kFixtures / "count.pts");
  CHECK(a.status == RunStatus::ok);
  CHECK(a.summary.total == 3);
  CHECK(a.summary.certified == std::optional<std::size_t>{3});
  CHECK(a.summary.distinct == std::optional<std::size_t>{2});
  CHECK(a.summary.real == std::optional<std::size_t>{2});
  CHECK(a.summary.undecided == 0);
  CHECK(a.report.find("beta_sq: 10201/26010000") != std::string::npos);
  CHECK(a.files.count("points.refined") == 0);

  // Aggregate counts equal the cardinalities of the emitted files.
  auto count_of = [&](const char* name) {
    return parse_points(a.files.at(name), 1, NumberContext::exact()).size();
  };
  CHECK(count_of("points.certified") == 3);
  CHECK(count_of("points.distinct") == 2);
  CHECK(count_of("points.real") == 2);
}

TEST_CASE("refinement run") {
  RunSettings s;
  s.refine_digits = 10;
  RunArtifacts a = run(s, kFixtures / "square_minus_one.sys", kFixtures / "count.pts");
  REQUIRE(a.files.count("points.refined"));
  auto refined = parse_points(a.files.at("points.refined"), 1, NumberContext::exact());
  REQUIRE(refined.size() == 3);
  const Rational tol(1, Integer("100000000000000000000"));
  for (const Point& x : refined) {
    Rational re = x[0].exact().re;
    Rational root = re > 0 ? Rational(1) : Rational(-1);
    CHECK((re - root) * (re - root) <= tol);
  }
}

TEST_CASE("task and shape validation") {
  RunSettings s;
  s.task = Task::overdet;
  CHECK_THROWS_AS(run(s, kFixtures / "square_minus_one.sys", kFixtures / "count.pts"), UsageError);
  s.task = Task::count;
  try {
    run(s, kFixtures / "overdet_none.sys", kFixtures / "overdet_none.pts");
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("overdet") != std::string::npos);
  }
  s.task = Task::real;
  CHECK_THROWS_AS(run(s, kFixtures / "overdet_none.sys", kFixtures / "overdet_none.pts"), UsageError);
  CHECK_THROWS_AS(run(s, kFixtures / "square_minus_one.sys", kFixtures / "missing.pts"), ParseError);
}

TEST_CASE("overdet run carries the heuristic banner") {
  RunSettings s;
  s.task = Task::overdet;
  RunArtifacts a = run(s, kFixtures / "overdet_common.sys", kFixtures / "overdet_common.pts");
  REQUIRE_FALSE(a.banners.empty());
  CHECK(a.banners[0].rfind("HEURISTIC:", 0) == 0);
  CHECK(a.report.find("HEURISTIC:") != std::string::npos);
  CHECK(a.summary_table.size() > 0);
}

TEST_CASE("assumed real banner") {
  RunSettings s;
  s.real_test = RealTest::assume;
  RunArtifacts a = run(s, kFixtures / "complex_coeff.sys", kFixtures / "complex_coeff.pts");
  bool found = false;
  for (const auto& b : a.banners) found = found || b.rfind("ASSUMED-REAL:", 0) == 0;
  CHECK(found);
  CHECK(a.report.find("ASSUMED-REAL:") != std::string::npos);
}

TEST_CASE("undecided points get their own section") {
  RunSettings s;
  s.newton_cap = 0;
  // 51/50 and 1 merge at round 0; a distant pair near the same root does not.
  fs::path dir = scratch("undecided");
  std::ofstream(dir / "p.pts") << "2\n21/20 0\n26/25 0\n";
  RunArtifacts a = run(s, kFixtures / "square_minus_one.sys", dir / "p.pts");
  CHECK(a.report.find("\nundecided\n") != std::string::npos);
}

TEST_CASE("reports are deterministic and outputs re-consumable") {
  for (Arithmetic mode : {Arithmetic::rational, Arithmetic::floating}) {
    RunSettings s;
    s.arithmetic = mode;
    s.workers = 3;
    fs::path pts = kFixtures / (mode == Arithmetic::rational ? "count.pts" : "count_float.pts");
    RunArtifacts a = run(s, kFixtures / "square_minus_one.sys", pts);
    RunArtifacts b = run(s, kFixtures / "square_minus_one.sys", pts);
    CHECK(a.report == b.report);
    CHECK(a.files == b.files);

    fs::path dir = scratch(mode == Arithmetic::rational ? "reuse_q" : "reuse_f");
    write_artifacts(a, dir);
    RunArtifacts c = run(s, kFixtures / "square_minus_one.sys", dir / "points.certified");
    CHECK(c.files.at("points.certified") == a.files.at("points.certified"));
  }
}

TEST_CASE("write_artifacts replaces stale outputs") {
  fs::path dir = scratch("stale");
  std::ofstream(dir / "points.refined") << "stale";
  std::ofstream(dir / "keep.txt") << "mine";
  RunSettings s;
  RunArtifacts a = run(s, kFixtures / "square_minus_one.sys", kFixtures / "count.pts");
  write_artifacts(a, dir);
  CHECK_FALSE(fs::exists(dir / "points.refined"));
  CHECK(fs::exists(dir / "keep.txt"));
  CHECK(read_text_file(dir / "report.txt") == a.report);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".partial");
}

TEST_CASE("float mode report carries hex and decimal renderings") {
  RunSettings s;
  s.arithmetic = Arithmetic::floating;
  s.precision = 128;
  RunArtifacts a = run(s, kFixtures / "square_minus_one.sys", kFixtures / "count_float.pts");
  CHECK(a.report.find("0x") != std::string::npos);
  CHECK(a.report.find("SOFT-CERTIFICATE") != std::string::npos);
  CHECK(a.summary.distinct == std::optional<std::size_t>{2});
}

TEST_CASE("setting names") {
  CHECK(parse_task("overdet") == Task::overdet);
  CHECK(parse_real_test("assume") == RealTest::assume);
  CHECK(parse_arithmetic("float") == Arithmetic::floating);
  CHECK_THROWS_AS(parse_task("nope"), UsageError);
  CHECK(to_string(Task::count) == "count");
  CHECK(to_string(RealTest::both) == "both");
}
