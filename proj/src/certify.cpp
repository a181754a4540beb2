#include "polycert/certify.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "polycert/thresholds.hpp"

namespace polycert {

namespace {

Rational exact_value(const Real& r) { return r.to_rational(); }

// ||x1 - x2|| > 2 (beta1 + beta2), with beta_i replaced by rational upper
// bounds u_i so the test stays inside Q.
bool separated(const Rational& gap_sq, const Rational& beta1_sq, const Rational& beta2_sq, unsigned slack) {
  Rational u = sqrt_upper_bound(beta1_sq, slack) + sqrt_upper_bound(beta2_sq, slack);
  return gap_sq > Rational(4) * u * u;
}

// alpha < 0.03 and ||x - y|| < 1 / (20 gamma), with gamma the certified upper
// bound (squared forms throughout).
bool robustly_close(const CertInfo& info, const Rational& dist_sq) {
  if (!info.alpha_ub_sq.is_finite() || !info.gamma_ub_sq.is_finite()) return false;
  if (!(info.alpha_ub_sq.value() < thresholds::alpha_robust_sq())) return false;
  return Rational(400) * exact_value(info.gamma_ub_sq.value()) * dist_sq < Rational(1);
}

Outcome decided(Verdict v, unsigned rounds) { return Outcome{v, rounds, {}, false}; }

Outcome undecided(std::string reason, unsigned rounds, bool precision = false) {
  return Outcome{Verdict::undecided, rounds, std::move(reason), precision};
}

}  // namespace

IterationOptions IterationOptions::for_context(const NumberContext& ctx, unsigned cap, mpfr_prec_t ceiling) {
  IterationOptions opts;
  opts.newton_cap = cap;
  opts.schedule = PrecisionSchedule::for_user_precision(ctx.precision, ceiling);
  return opts;
}

bool passes_alpha_test(const CertInfo& info) {
  if (info.exact_zero) return true;
  if (info.singular || !info.alpha_ub_sq.is_finite()) return false;
  return info.alpha_ub_sq.value() < thresholds::alpha_certify_sq();
}

std::vector<PointAssessment> assess_points(const PolynomialSystem& f, const std::vector<Point>& points,
                                           unsigned workers) {
  std::vector<PointAssessment> out(points.size());
  auto assess = [&](std::size_t i) {
    PointAssessment& a = out[i];
    a.index = i;
    try {
      a.info = compute_abg(f, points[i]);
      a.certified = passes_alpha_test(*a.info);
    } catch (const DimensionError& e) {
      a.error = e.what();
    } catch (const ModeMismatch& e) {
      a.error = e.what();
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (!mpfr_buildopt_tls_p()) workers = 1;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, points.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) assess(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) assess(i);
      });
    }
  }
  return out;
}

std::vector<CertifiedPoint> certify_solutions(const PolynomialSystem& f, const std::vector<Point>& points,
                                              unsigned workers) {
  if (f.has_zero_polynomial()) throw DomainError("system contains a zero polynomial");
  std::vector<CertifiedPoint> out;
  for (PointAssessment& a : assess_points(f, points, workers)) {
    if (a.certified) out.push_back({a.index, std::move(*a.info)});
  }
  return out;
}

DistinctnessOutcome certify_distinct(const PolynomialSystem& f, const Point& x1, const Point& x2,
                                     const IterationOptions& options) {
  Point a = x1;
  Point b = x2;
  for (unsigned round = 0;; ++round) {
    CertInfo ia = compute_abg(f, a);
    CertInfo ib = compute_abg(f, b);
    if (ia.exact_zero && ib.exact_zero) {
      return decided(points_equal(a, b) ? Verdict::no : Verdict::yes, round);
    }
    if (!ia.beta_sq.is_finite() || !ib.beta_sq.is_finite()) {
      return undecided("singular Jacobian at a non-solution", round);
    }
    Rational gap_sq = exact_value(norm_sq_vector(subtract(a, b)));
    if (separated(gap_sq, exact_value(ia.beta_sq.value()), exact_value(ib.beta_sq.value()), options.sqrt_slack)) {
      return decided(Verdict::yes, round);
    }
    if (robustly_close(ia, gap_sq) || robustly_close(ib, gap_sq)) return decided(Verdict::no, round);

    if (round >= options.newton_cap) return undecided("iteration cap", round);
    try {
      a = scheduled_newton_step(f, a, options.schedule);
      b = scheduled_newton_step(f, b, options.schedule);
    } catch (const PrecisionCeiling&) {
      return undecided("precision ceiling", round, true);
    }
  }
}

RealityOutcome certify_real_local(const PolynomialSystem& f, const Point& x, const IterationOptions& options) {
  Point current = x;
  for (unsigned round = 0;; ++round) {
    CertInfo info = compute_abg(f, current);
    Rational dist_sq = exact_value(imag_distance_sq(current));
    if (info.exact_zero) return decided(dist_sq == 0 ? Verdict::yes : Verdict::no, round);
    if (!info.beta_sq.is_finite()) return undecided("singular Jacobian at a non-solution", round);

    Rational beta_sq = exact_value(info.beta_sq.value());
    if (dist_sq > Rational(4) * beta_sq) return decided(Verdict::no, round);
    if (info.alpha_ub_sq.is_finite() && info.alpha_ub_sq.value() < thresholds::alpha_robust_sq()) {
      // ||x - pi_R(x)|| <= 5/3 beta implies the 1/(20 gamma) condition.
      if (Rational(9) * dist_sq <= Rational(25) * beta_sq) return decided(Verdict::yes, round);
      if (robustly_close(info, dist_sq)) return decided(Verdict::yes, round);
    }

    if (round >= options.newton_cap) return undecided("iteration cap", round);
    try {
      current = scheduled_newton_step(f, current, options.schedule);
    } catch (const PrecisionCeiling&) {
      return undecided("precision ceiling", round, true);
    }
  }
}

std::vector<RealityOutcome> certify_real_global(const PolynomialSystem& f, const std::vector<Point>& points,
                                                std::size_t total, const IterationOptions& options) {
  if (points.size() != total) {
    throw UsageError("global real test needs exactly " + std::to_string(total) + " points, got " +
                     std::to_string(points.size()));
  }
  std::vector<RealityOutcome> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Point conj = conjugate_point(points[i]);
    RealityOutcome result = decided(Verdict::yes, 0);
    for (std::size_t j = 0; j < points.size() && !result.no(); ++j) {
      if (j == i) continue;
      DistinctnessOutcome d = certify_distinct(f, conj, points[j], options);
      result.rounds = std::max(result.rounds, d.rounds);
      if (d.no()) {
        result.verdict = Verdict::no;
      } else if (d.undecided() && !result.undecided()) {
        result = undecided(d.reason, d.rounds, d.precision_exhausted);
      }
    }
    out.push_back(std::move(result));
  }
  return out;
}

std::size_t CountResult::undecided_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CountRecord& r) { return r.undecided(); }));
}

CountResult certify_count(const PolynomialSystem& f, const std::vector<Point>& points, const CountOptions& options) {
  if (f.has_zero_polynomial()) throw DomainError("system contains a zero polynomial");
  CountResult result;
  result.records.resize(points.size());
  std::vector<PointAssessment> assessed = assess_points(f, points, options.workers);
  for (std::size_t i = 0; i < points.size(); ++i) {
    CountRecord& rec = result.records[i];
    rec.index = i;
    rec.assessment = std::move(assessed[i]);
    rec.in_a = rec.assessment.certified;
    if (rec.in_a) {
      result.approximate.push_back(i);
      rec.singular_exact_zero = rec.assessment.info->exact_zero && rec.assessment.info->singular;
    }
  }

  // Greedy distinctness filter in input order.
  std::vector<std::size_t> candidates;
  for (std::size_t i : result.approximate) {
    if (!result.records[i].singular_exact_zero) candidates.push_back(i);
  }
  std::vector<bool> alive(candidates.size(), true);
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (!alive[j]) continue;
    for (std::size_t k = j + 1; k < candidates.size(); ++k) {
      if (!alive[k]) continue;
      const std::size_t pj = candidates[j];
      const std::size_t pk = candidates[k];
      DistinctnessOutcome d = certify_distinct(f, points[pj], points[pk], options.iteration);
      if (d.no()) {
        alive[k] = false;
        result.records[pk].same_as = pj;
      } else if (d.undecided()) {
        result.records[pj].undecided_with.push_back(pk);
        result.records[pk].undecided_with.push_back(pj);
        result.precision_exhausted = result.precision_exhausted || d.precision_exhausted;
      }
    }
  }
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (!alive[j]) continue;
    result.distinct.push_back(candidates[j]);
    result.records[candidates[j]].in_d = true;
  }

  result.real_assumed = options.real_test == RealTest::assume;
  result.real_system = is_real_system(f, options.real_test, options.seed);
  if (result.real_system) {
    for (std::size_t i : result.distinct) {
      RealityOutcome r = certify_real_local(f, points[i], options.iteration);
      result.precision_exhausted = result.precision_exhausted || r.precision_exhausted;
      if (r.yes()) {
        result.real.push_back(i);
        result.records[i].in_r = true;
      }
      result.records[i].reality = std::move(r);
    }
  }
  return result;
}

}  // namespace polycert
