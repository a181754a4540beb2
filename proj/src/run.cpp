#include "polycert/run.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "polycert/certify.hpp"
#include "polycert/io.hpp"
#include "polycert/overdet.hpp"
#include "polycert/thresholds.hpp"

namespace polycert {

namespace {

constexpr const char* kHeuristicBanner =
    "HEURISTIC: overdetermined system; verdicts compare random square subsystems and do not certify solutions of the "
    "original system.";
constexpr const char* kAssumedRealBanner =
    "ASSUMED-REAL: the system was declared real without testing; real verdicts hold only if that declaration is "
    "correct.";
constexpr const char* kSoftNote =
    "SOFT-CERTIFICATE: floating-point arithmetic; rounding is not controlled, certificates are soft.";

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string describe(const Outcome& o, std::string_view yes, std::string_view no) {
  switch (o.verdict) {
    case Verdict::yes:
      return std::string(yes);
    case Verdict::no:
      return std::string(no);
    case Verdict::undecided:
      return "undecided (" + o.reason + ")";
  }
  return "?";
}

void write_info(std::ostringstream& out, const CertInfo& info) {
  out << "  exact_zero: " << yes_no(info.exact_zero) << '\n';
  out << "  singular: " << yes_no(info.singular) << '\n';
  out << "  beta_sq: " << info.beta_sq.to_string() << '\n';
  out << "  gamma_ub_sq: " << info.gamma_ub_sq.to_string() << '\n';
  out << "  alpha_ub_sq: " << info.alpha_ub_sq.to_string() << '\n';
}

std::vector<Point> select(const std::vector<Point>& points, const std::vector<std::size_t>& idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(points[i]);
  return out;
}

std::string index_list(const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i : idx) s += (s.empty() ? "" : ", ") + std::to_string(i);
  return s;
}

struct Refinement {
  std::vector<Point> refined;
  std::vector<std::size_t> failed;  // iteration cap
  std::vector<std::size_t> ceiling;  // precision ceiling
};

Refinement refine_all(const PolynomialSystem& f, const std::vector<Point>& points, const std::vector<std::size_t>& idx,
                      const RunSettings& s) {
  Refinement r;
  RefineOptions opts;
  opts.schedule = PrecisionSchedule::for_user_precision(s.precision, s.max_precision);
  for (std::size_t i : idx) {
    try {
      r.refined.push_back(refine(f, points[i], s.refine_digits, opts));
    } catch (const IterationCap&) {
      r.failed.push_back(i);
    } catch (const PrecisionCeiling&) {
      r.ceiling.push_back(i);
    }
  }
  return r;
}

class ReportWriter {
 public:
  ReportWriter(const RunSettings& s, const PolynomialSystem& f, std::size_t points) {
    out_ << "polycert report\n";
    out_ << "arithmetic: " << (s.arithmetic == Arithmetic::rational ? "rational" : "float") << '\n';
    if (s.arithmetic == Arithmetic::floating) out_ << "precision: " << s.precision << " bits\n";
    out_ << "task: " << to_string(s.task) << '\n';
    out_ << "variables: " << f.variables() << "\npolynomials: " << f.equations() << "\ndegrees:";
    for (unsigned d : f.degrees()) out_ << ' ' << d;
    out_ << "\npoints: " << points << '\n';
  }

  std::ostringstream& stream() { return out_; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

void finish(RunArtifacts& art, std::ostringstream& report, const std::vector<std::string>& undecided_lines) {
  report << "\nundecided\n";
  if (undecided_lines.empty()) report << "  none\n";
  for (const std::string& line : undecided_lines) report << "  " << line << '\n';
  art.summary_table = format_summary(art.summary);
  report << "\nsummary\n" << art.summary_table;
  art.report = report.str();
  art.files["report.txt"] = art.report;
}

RunArtifacts execute_square(const RunSettings& s, const PolynomialSystem& f, const std::vector<Point>& points,
                            const std::vector<std::string>& warnings) {
  RunArtifacts art;
  ReportWriter writer(s, f, points.size());
  std::ostringstream& rep = writer.stream();

  const bool wants_distinct = s.task == Task::distinct || s.task == Task::count;
  const bool wants_real = s.task == Task::real || s.task == Task::count;
  if (wants_real && s.real_test == RealTest::assume) art.banners.push_back(kAssumedRealBanner);
  if (s.arithmetic == Arithmetic::floating) art.banners.push_back(kSoftNote);
  for (const std::string& b : art.banners) rep << b << '\n';
  for (const std::string& w : warnings) rep << "warning: " << w << '\n';

  CountOptions opts;
  opts.iteration = IterationOptions::for_context(s.context(), s.newton_cap, s.max_precision);
  opts.real_test = wants_real ? s.real_test : RealTest::skip;
  opts.seed = s.seed;
  opts.workers = s.workers;

  CountResult result;
  if (s.task == Task::count || s.task == Task::distinct) {
    result = certify_count(f, points, opts);
  } else {
    // solutions / real: no distinctness filter.
    result.records.resize(points.size());
    std::vector<PointAssessment> assessed = assess_points(f, points, s.workers);
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
    if (s.task == Task::real) {
      result.real_assumed = s.real_test == RealTest::assume;
      result.real_system = is_real_system(f, s.real_test, s.seed);
      if (result.real_system) {
        for (std::size_t i : result.approximate) {
          if (result.records[i].singular_exact_zero) continue;
          RealityOutcome r = certify_real_local(f, points[i], opts.iteration);
          result.precision_exhausted = result.precision_exhausted || r.precision_exhausted;
          if (r.yes()) {
            result.real.push_back(i);
            result.records[i].in_r = true;
          }
          result.records[i].reality = std::move(r);
        }
      }
    }
  }
  if (wants_real && !result.real_system) {
    rep << "note: system not identified as real under real-test '" << to_string(s.real_test)
        << "'; real certification bypassed\n";
  }

  std::optional<Refinement> refinement;
  if (s.refine_digits > 0) refinement = refine_all(f, points, result.approximate, s);

  std::vector<std::string> undecided_lines;
  std::set<std::size_t> undecided_points;
  for (const CountRecord& rec : result.records) {
    rep << "\npoint " << rec.index << '\n';
    if (!rec.assessment.error.empty()) {
      rep << "  error: " << rec.assessment.error << '\n';
      continue;
    }
    rep << "  certified: " << yes_no(rec.in_a) << '\n';
    write_info(rep, *rec.assessment.info);
    if (rec.singular_exact_zero) rep << "  warning: singular exact zero (kept in certified, excluded from distinct/real)\n";
    if (wants_distinct && rec.in_a && !rec.singular_exact_zero) {
      if (rec.same_as) {
        rep << "  distinct: no (same solution as point " << *rec.same_as << ")\n";
      } else {
        rep << "  distinct: yes\n";
      }
      if (!rec.undecided_with.empty()) {
        rep << "  distinctness undecided against points " << index_list(rec.undecided_with) << '\n';
        undecided_lines.push_back("point " + std::to_string(rec.index) + ": distinctness undecided against points " +
                                  index_list(rec.undecided_with));
        undecided_points.insert(rec.index);
      }
    }
    if (rec.reality) {
      rep << "  real: " << describe(*rec.reality, "yes", "no") << '\n';
      if (rec.reality->undecided()) {
        undecided_lines.push_back("point " + std::to_string(rec.index) + ": reality undecided (" +
                                  rec.reality->reason + ")");
        undecided_points.insert(rec.index);
      }
      if (result.real_assumed) rep << "  warning: real verdict relies on an assumed-real system\n";
    }
  }

  art.summary.total = points.size();
  art.summary.certified = result.approximate.size();
  art.files["points.certified"] = serialize_points(select(points, result.approximate));
  if (wants_distinct) {
    art.summary.distinct = result.distinct.size();
    art.files["points.distinct"] = serialize_points(select(points, result.distinct));
  }
  if (wants_real) {
    art.summary.real = result.real.size();
    art.files["points.real"] = serialize_points(select(points, result.real));
  }
  bool ceiling_hit = result.precision_exhausted;
  if (refinement) {
    art.files["points.refined"] = serialize_points(refinement->refined);
    rep << "\nrefinement to 1e-" << s.refine_digits << ": " << refinement->refined.size() << " of "
        << result.approximate.size() << " certified points\n";
    for (std::size_t i : refinement->failed) {
      undecided_lines.push_back("point " + std::to_string(i) + ": refinement hit the iteration cap");
      undecided_points.insert(i);
    }
    for (std::size_t i : refinement->ceiling) {
      undecided_lines.push_back("point " + std::to_string(i) + ": refinement hit the precision ceiling");
      undecided_points.insert(i);
    }
    ceiling_hit = ceiling_hit || !refinement->ceiling.empty();
  }
  art.summary.undecided = undecided_points.size();
  finish(art, rep, undecided_lines);
  if (ceiling_hit) {
    art.status = RunStatus::precision;
    art.error = "working precision ceiling of " + std::to_string(s.max_precision) + " bits reached";
  }
  return art;
}

RunArtifacts execute_overdet(const RunSettings& s, const PolynomialSystem& f, const std::vector<Point>& points,
                             const std::vector<std::string>& warnings) {
  RunArtifacts art;
  ReportWriter writer(s, f, points.size());
  std::ostringstream& rep = writer.stream();
  art.banners.push_back(kHeuristicBanner);
  if (s.arithmetic == Arithmetic::floating) art.banners.push_back(kSoftNote);
  for (const std::string& b : art.banners) rep << b << '\n';
  for (const std::string& w : warnings) rep << "warning: " << w << '\n';

  OverdetOptions opts;
  opts.delta = s.delta;
  opts.count = s.subsystems;
  opts.seed = s.seed;
  opts.iteration = IterationOptions::for_context(s.context(), s.newton_cap, s.max_precision);
  OverdetResult result = overdet_certify(f, points, opts);

  rep << "delta: " << to_string(s.delta) << '\n';
  rep << "subsystems: " << result.subsystems.systems.size() << " (seed " << s.seed << ", "
      << (result.subsystems.randomization.real_mode ? "real" : "complex") << " randomization)\n";

  std::vector<std::size_t> certified;
  std::vector<std::size_t> within;
  std::vector<std::string> undecided_lines;
  bool ceiling_hit = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const OverdetVerdict& v = result.verdicts[i];
    rep << "\npoint " << i << '\n';
    rep << "  verdict: " << to_string(v.kind);
    switch (v.kind) {
      case OverdetVerdict::Kind::within_delta:
        rep << " (associated subsystem solutions within " << to_string(s.delta) << ", round " << v.rounds << ")";
        break;
      case OverdetVerdict::Kind::distinct_roots:
        rep << " (subsystems " << v.pair.first << " and " << v.pair.second << ", round " << v.rounds << ")";
        break;
      case OverdetVerdict::Kind::not_certified:
        rep << " (subsystem " << v.subsystem << ")";
        break;
      case OverdetVerdict::Kind::undecided:
        rep << " (" << v.reason << ")";
        break;
    }
    rep << '\n';
    for (std::size_t k = 0; k < v.infos.size(); ++k) {
      rep << "  subsystem " << k << ":\n";
      write_info(rep, v.infos[k]);
    }
    if (v.kind != OverdetVerdict::Kind::not_certified) certified.push_back(i);
    if (v.kind == OverdetVerdict::Kind::within_delta) within.push_back(i);
    if (v.kind == OverdetVerdict::Kind::undecided) {
      undecided_lines.push_back("point " + std::to_string(i) + ": " + v.reason);
      ceiling_hit = ceiling_hit || v.precision_exhausted;
    }
  }
  art.summary.total = points.size();
  art.summary.certified = certified.size();
  art.summary.undecided = undecided_lines.size();
  art.files["points.certified"] = serialize_points(select(points, certified));
  art.files["points.within_delta"] = serialize_points(select(points, within));
  rep << "\nwithin delta: " << within.size() << '\n';
  finish(art, rep, undecided_lines);
  if (ceiling_hit) {
    art.status = RunStatus::precision;
    art.error = "working precision ceiling of " + std::to_string(s.max_precision) + " bits reached";
  }
  return art;
}

}  // namespace

Task parse_task(std::string_view name) {
  if (name == "solutions") return Task::solutions;
  if (name == "distinct") return Task::distinct;
  if (name == "real") return Task::real;
  if (name == "count") return Task::count;
  if (name == "overdet") return Task::overdet;
  throw UsageError("unknown task '" + std::string(name) + "'");
}

RealTest parse_real_test(std::string_view name) {
  if (name == "coeff") return RealTest::coeff;
  if (name == "point") return RealTest::point;
  if (name == "both") return RealTest::both;
  if (name == "assume") return RealTest::assume;
  if (name == "skip") return RealTest::skip;
  throw UsageError("unknown real test '" + std::string(name) + "'");
}

Arithmetic parse_arithmetic(std::string_view name) {
  if (name == "rational") return Arithmetic::rational;
  if (name == "float") return Arithmetic::floating;
  throw UsageError("unknown arithmetic '" + std::string(name) + "'");
}

std::string to_string(Task task) {
  switch (task) {
    case Task::solutions:
      return "solutions";
    case Task::distinct:
      return "distinct";
    case Task::real:
      return "real";
    case Task::count:
      return "count";
    case Task::overdet:
      return "overdet";
  }
  return "?";
}

std::string to_string(RealTest test) {
  switch (test) {
    case RealTest::coeff:
      return "coeff";
    case RealTest::point:
      return "point";
    case RealTest::both:
      return "both";
    case RealTest::assume:
      return "assume";
    case RealTest::skip:
      return "skip";
  }
  return "?";
}

std::string format_summary(const Summary& summary) {
  auto cell = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::ostringstream out;
  out << std::setw(10) << "total" << ' ' << std::setw(10) << "certified" << ' ' << std::setw(10) << "distinct" << ' '
      << std::setw(10) << "real" << ' ' << std::setw(10) << "undecided" << '\n';
  out << std::setw(10) << summary.total << ' ' << std::setw(10) << cell(summary.certified) << ' ' << std::setw(10)
      << cell(summary.distinct) << ' ' << std::setw(10) << cell(summary.real) << ' ' << std::setw(10)
      << summary.undecided << '\n';
  return out.str();
}

RunArtifacts execute(const RunSettings& settings, const PolynomialSystem& f, const std::vector<Point>& points,
                     const std::vector<std::string>& parse_warnings) {
  thresholds::assert_thresholds_sound();
  if (settings.refine_digits > 0 && settings.task == Task::overdet) {
    throw UsageError("refinement is not available for the overdet task");
  }
  if (settings.task == Task::overdet) {
    if (!f.is_overdetermined()) {
      throw UsageError("task overdet needs an overdetermined system (N > n); use solutions, distinct, real or count");
    }
    if (settings.subsystems < 2) throw UsageError("overdet needs at least two subsystems");
    return execute_overdet(settings, f, points, parse_warnings);
  }
  if (f.is_overdetermined()) {
    throw UsageError("system is overdetermined (N > n); use --task overdet for heuristic validation");
  }
  if (!f.is_square()) throw UsageError("system is underdetermined (N < n); only square systems can be certified");
  if (f.has_zero_polynomial()) throw UsageError("system contains a zero polynomial; certification needs nonzero polynomials");
  return execute_square(settings, f, points, parse_warnings);
}

RunArtifacts run(const RunSettings& settings, const std::filesystem::path& system_path,
                 const std::filesystem::path& points_path) {
  NumberContext ctx = settings.context();
  ParsedSystem parsed = parse_system_file(system_path, ctx);
  std::vector<Point> points = parse_points_file(points_path, parsed.system.variables(), ctx);
  return execute(settings, parsed.system, points, parsed.warnings);
}

void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<fs::path> staged;
  try {
    for (const auto& [name, content] : artifacts.files) {
      fs::path tmp = dir / (name + ".partial");
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      staged.push_back(tmp);
      out << content;
      out.close();
      if (!out) throw Error("failed to write " + tmp.string());
    }
  } catch (...) {
    for (const fs::path& p : staged) fs::remove(p);
    throw;
  }
  for (const char* name : kOutputFiles) {
    if (!artifacts.files.contains(name)) fs::remove(dir / name);
  }
  for (const auto& [name, content] : artifacts.files) fs::rename(dir / (name + ".partial"), dir / name);
}

}  // namespace polycert
