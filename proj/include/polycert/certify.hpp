#pragma once

// Certification procedures for square systems: approximate solutions,
// distinctness of associated solutions, reality (local and global) and the
// orchestrating count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polycert/alphacore.hpp"
#include "polycert/polysys.hpp"

namespace polycert {

enum class Verdict { yes, no, undecided };

/// Outcome of an iterative test. `reason` is set only when undecided.
struct Outcome {
  Verdict verdict = Verdict::undecided;
  unsigned rounds = 0;
  std::string reason;
  /// True when undecided because the float precision ceiling was hit.
  bool precision_exhausted = false;

  bool yes() const { return verdict == Verdict::yes; }
  bool no() const { return verdict == Verdict::no; }
  bool undecided() const { return verdict == Verdict::undecided; }
};

/// yes = distinct associated solutions, no = same associated solution.
using DistinctnessOutcome = Outcome;
/// yes = real associated solution.
using RealityOutcome = Outcome;

struct IterationOptions {
  unsigned newton_cap = 50;
  unsigned sqrt_slack = kDefaultSqrtSlack;
  PrecisionSchedule schedule;

  /// Options for a float-mode run at `user_precision` bits.
  static IterationOptions for_context(const NumberContext& ctx, unsigned cap = 50, mpfr_prec_t ceiling = 8192);
};

struct PointAssessment {
  std::size_t index = 0;
  std::optional<CertInfo> info;
  bool certified = false;
  /// Non-empty when the point could not be assessed (e.g. wrong dimension).
  std::string error;
};

/// Runs COMPUTE on every point, in parallel over `workers` threads (0 picks
/// the hardware concurrency). Results are ordered by input index.
std::vector<PointAssessment> assess_points(const PolynomialSystem& f, const std::vector<Point>& points,
                                           unsigned workers = 1);

/// True iff the info certifies an approximate solution: an exact zero, or a
/// finite alpha bound with alpha_ub^2 < (157/1000)^2.
bool passes_alpha_test(const CertInfo& info);

struct CertifiedPoint {
  std::size_t index = 0;
  CertInfo info;
};

/// Indices (with their certificates) of the points that are certified
/// approximate solutions. Points with errors are skipped.
std::vector<CertifiedPoint> certify_solutions(const PolynomialSystem& f, const std::vector<Point>& points,
                                              unsigned workers = 1);

DistinctnessOutcome certify_distinct(const PolynomialSystem& f, const Point& x1, const Point& x2,
                                     const IterationOptions& options = {});

RealityOutcome certify_real_local(const PolynomialSystem& f, const Point& x, const IterationOptions& options = {});

/// A point is real iff conj(x_i) and x_j are distinct for every j != i.
/// Throws UsageError when `points.size() != total`.
std::vector<RealityOutcome> certify_real_global(const PolynomialSystem& f, const std::vector<Point>& points,
                                                std::size_t total, const IterationOptions& options = {});

struct CountOptions {
  IterationOptions iteration;
  RealTest real_test = RealTest::both;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct CountRecord {
  std::size_t index = 0;
  PointAssessment assessment;
  bool in_a = false;
  bool in_d = false;
  bool in_r = false;
  /// Exact zero with singular Jacobian: kept in A, excluded from D and R.
  bool singular_exact_zero = false;
  /// Index (into the input) of the surviving point this one merged with.
  std::optional<std::size_t> same_as;
  /// Input indices of points whose distinctness from this one is undecided.
  std::vector<std::size_t> undecided_with;
  std::optional<RealityOutcome> reality;

  bool undecided() const { return !undecided_with.empty() || (reality && reality->undecided()); }
};

struct CountResult {
  std::vector<CountRecord> records;
  std::vector<std::size_t> approximate;  // A
  std::vector<std::size_t> distinct;     // D
  std::vector<std::size_t> real;         // R
  bool real_system = false;
  bool real_assumed = false;
  bool precision_exhausted = false;

  std::size_t undecided_count() const;
};

/// The CERTIFYCOUNT composition. D is the greedy filter over A in input
/// order; undecided pairs keep both points in D with a marker.
CountResult certify_count(const PolynomialSystem& f, const std::vector<Point>& points, const CountOptions& options = {});

}  // namespace polycert
