#include "polycert/polycert.h"

#include <filesystem>
#include <string>

#include "polycert/io.hpp"
#include "polycert/run.hpp"

struct polycert_system {
  polycert::ParsedSystem parsed;
  std::string text;
};

struct polycert_points {
  std::vector<polycert::Point> points;
};

struct polycert_result {
  polycert::RunArtifacts artifacts;
  std::string banners;
};

namespace {

thread_local std::string last_error;

polycert_status fail(polycert_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps exceptions from the C++ core onto status codes.
template <typename Fn>
polycert_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const polycert::ParseError& e) {
    return fail(POLYCERT_ERR_PARSE, e.what());
  } catch (const polycert::ModeMismatch& e) {
    return fail(POLYCERT_ERR_PARSE, e.what());
  } catch (const polycert::UsageError& e) {
    return fail(POLYCERT_ERR_USAGE, e.what());
  } catch (const polycert::DimensionError& e) {
    return fail(POLYCERT_ERR_USAGE, e.what());
  } catch (const polycert::PrecisionCeiling& e) {
    return fail(POLYCERT_ERR_PRECISION, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(POLYCERT_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(POLYCERT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(POLYCERT_ERR_INTERNAL, "unknown error");
  }
}

polycert::NumberContext make_context(polycert_arithmetic arithmetic, unsigned long precision) {
  if (arithmetic == POLYCERT_FLOAT) {
    if (precision < 2 || precision > static_cast<unsigned long>(MPFR_PREC_MAX)) {
      throw polycert::UsageError("precision must be between 2 and " + std::to_string(MPFR_PREC_MAX) + " bits");
    }
    return polycert::NumberContext::floating(static_cast<mpfr_prec_t>(precision));
  }
  if (arithmetic != POLYCERT_RATIONAL) throw polycert::UsageError("unknown arithmetic mode");
  return polycert::NumberContext::exact();
}

polycert::RunSettings to_settings(const polycert_settings& s) {
  polycert::RunSettings out;
  polycert::NumberContext ctx = make_context(s.arithmetic, s.precision);
  out.arithmetic = ctx.arithmetic;
  out.precision = ctx.precision;
  switch (s.task) {
    case POLYCERT_TASK_SOLUTIONS: out.task = polycert::Task::solutions; break;
    case POLYCERT_TASK_DISTINCT: out.task = polycert::Task::distinct; break;
    case POLYCERT_TASK_REAL: out.task = polycert::Task::real; break;
    case POLYCERT_TASK_COUNT: out.task = polycert::Task::count; break;
    case POLYCERT_TASK_OVERDET: out.task = polycert::Task::overdet; break;
    default: throw polycert::UsageError("unknown task");
  }
  switch (s.real_test) {
    case POLYCERT_REAL_COEFF: out.real_test = polycert::RealTest::coeff; break;
    case POLYCERT_REAL_POINT: out.real_test = polycert::RealTest::point; break;
    case POLYCERT_REAL_BOTH: out.real_test = polycert::RealTest::both; break;
    case POLYCERT_REAL_ASSUME: out.real_test = polycert::RealTest::assume; break;
    case POLYCERT_REAL_SKIP: out.real_test = polycert::RealTest::skip; break;
    default: throw polycert::UsageError("unknown real test");
  }
  if (s.delta) {
    try {
      out.delta = polycert::parse_decimal_exact(s.delta);
    } catch (const polycert::ParseError& e) {
      throw polycert::UsageError(std::string("delta: ") + e.what());
    }
    if (sgn(out.delta) <= 0) throw polycert::UsageError("delta must be positive");
  }
  if (s.newton_cap == 0) throw polycert::UsageError("newton cap must be positive");
  if (s.arithmetic == POLYCERT_FLOAT && s.max_precision < s.precision) {
    throw polycert::UsageError("max precision is below the working precision");
  }
  out.refine_digits = s.refine_digits;
  out.seed = s.seed;
  out.newton_cap = s.newton_cap;
  out.max_precision = static_cast<mpfr_prec_t>(s.max_precision);
  out.subsystems = s.subsystems;
  out.workers = s.workers;
  return out;
}

void fill_summary(const polycert::Summary& s, polycert_summary* out) {
  auto col = [](const std::optional<std::size_t>& v) { return v ? static_cast<long long>(*v) : -1LL; };
  out->total = static_cast<long long>(s.total);
  out->certified = col(s.certified);
  out->distinct = col(s.distinct);
  out->real = col(s.real);
  out->undecided = static_cast<long long>(s.undecided);
}

polycert_status certify_into(const polycert_settings* settings, const polycert_system* system,
                             const polycert_points* points, polycert_result** out) {
  polycert::RunSettings s = to_settings(*settings);
  if (s.context().arithmetic != system->parsed.system.context().arithmetic) {
    throw polycert::UsageError("settings and system use different arithmetic modes");
  }
  auto result = std::make_unique<polycert_result>();
  result->artifacts = polycert::execute(s, system->parsed.system, points->points, system->parsed.warnings);
  for (const std::string& b : result->artifacts.banners) result->banners += b + "\n";
  const bool ceiling = result->artifacts.status == polycert::RunStatus::precision;
  std::string error = result->artifacts.error;
  *out = result.release();
  if (ceiling) return fail(POLYCERT_ERR_PRECISION, error);
  return POLYCERT_OK;
}

}  // namespace

extern "C" {

const char* polycert_version(void) { return "1.0.0"; }

const char* polycert_last_error(void) { return last_error.c_str(); }

void polycert_settings_init(polycert_settings* settings) {
  if (!settings) return;
  settings->arithmetic = POLYCERT_RATIONAL;
  settings->precision = 256;
  settings->task = POLYCERT_TASK_COUNT;
  settings->delta = nullptr;
  settings->refine_digits = 0;
  settings->real_test = POLYCERT_REAL_BOTH;
  settings->seed = 0;
  settings->newton_cap = 50;
  settings->max_precision = 8192;
  settings->subsystems = 2;
  settings->workers = 1;
}

polycert_status polycert_system_parse(const char* text, polycert_arithmetic arithmetic, unsigned long precision,
                                      polycert_system** out) {
  if (!text || !out) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto sys = std::make_unique<polycert_system>();
    sys->parsed = polycert::parse_system(text, make_context(arithmetic, precision));
    sys->text = polycert::serialize_system(sys->parsed.system);
    *out = sys.release();
    return POLYCERT_OK;
  });
}

polycert_status polycert_system_load(const char* path, polycert_arithmetic arithmetic, unsigned long precision,
                                     polycert_system** out) {
  if (!path || !out) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto sys = std::make_unique<polycert_system>();
    sys->parsed = polycert::parse_system_file(path, make_context(arithmetic, precision));
    sys->text = polycert::serialize_system(sys->parsed.system);
    *out = sys.release();
    return POLYCERT_OK;
  });
}

void polycert_system_free(polycert_system* system) { delete system; }

polycert_status polycert_system_shape(const polycert_system* system, size_t* variables, size_t* polynomials) {
  if (!system) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null system");
  if (variables) *variables = system->parsed.system.variables();
  if (polynomials) *polynomials = system->parsed.system.equations();
  return POLYCERT_OK;
}

const char* polycert_system_text(const polycert_system* system) { return system ? system->text.c_str() : nullptr; }

polycert_status polycert_points_parse(const char* text, const polycert_system* system, polycert_points** out) {
  if (!text || !system || !out) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto pts = std::make_unique<polycert_points>();
    const auto& f = system->parsed.system;
    pts->points = polycert::parse_points(text, f.variables(), f.context());
    *out = pts.release();
    return POLYCERT_OK;
  });
}

polycert_status polycert_points_load(const char* path, const polycert_system* system, polycert_points** out) {
  if (!path || !system || !out) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto pts = std::make_unique<polycert_points>();
    const auto& f = system->parsed.system;
    pts->points = polycert::parse_points_file(path, f.variables(), f.context());
    *out = pts.release();
    return POLYCERT_OK;
  });
}

void polycert_points_free(polycert_points* points) { delete points; }

size_t polycert_points_count(const polycert_points* points) { return points ? points->points.size() : 0; }

polycert_status polycert_certify(const polycert_settings* settings, const polycert_system* system,
                                 const polycert_points* points, polycert_result** out) {
  if (!settings || !system || !points || !out) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { return certify_into(settings, system, points, out); });
}

void polycert_result_free(polycert_result* result) { delete result; }

polycert_status polycert_result_summary(const polycert_result* result, polycert_summary* out) {
  if (!result || !out) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  fill_summary(result->artifacts.summary, out);
  return POLYCERT_OK;
}

const char* polycert_result_summary_table(const polycert_result* result) {
  return result ? result->artifacts.summary_table.c_str() : nullptr;
}

const char* polycert_result_report(const polycert_result* result) {
  return result ? result->artifacts.report.c_str() : nullptr;
}

const char* polycert_result_banners(const polycert_result* result) {
  return result ? result->banners.c_str() : nullptr;
}

const char* polycert_result_file(const polycert_result* result, const char* name) {
  if (!result || !name) return nullptr;
  auto it = result->artifacts.files.find(name);
  return it == result->artifacts.files.end() ? nullptr : it->second.c_str();
}

polycert_status polycert_result_write(const polycert_result* result, const char* directory) {
  if (!result || !directory) return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    polycert::write_artifacts(result->artifacts, directory);
    return POLYCERT_OK;
  });
}

polycert_status polycert_run(const polycert_settings* settings, const char* system_path, const char* points_path,
                             const char* output_dir, polycert_summary* summary, polycert_result** out) {
  if (!settings || !system_path || !points_path || !output_dir) {
    return fail(POLYCERT_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (out) *out = nullptr;
  polycert_system* system = nullptr;
  polycert_status st = polycert_system_load(system_path, settings->arithmetic, settings->precision, &system);
  if (st != POLYCERT_OK) return st;
  std::unique_ptr<polycert_system, decltype(&polycert_system_free)> sys_guard(system, polycert_system_free);

  polycert_points* points = nullptr;
  st = polycert_points_load(points_path, system, &points);
  if (st != POLYCERT_OK) return st;
  std::unique_ptr<polycert_points, decltype(&polycert_points_free)> pts_guard(points, polycert_points_free);

  polycert_result* result = nullptr;
  st = polycert_certify(settings, system, points, &result);
  if (!result) return st;
  std::unique_ptr<polycert_result, decltype(&polycert_result_free)> res_guard(result, polycert_result_free);
  if (summary) fill_summary(result->artifacts.summary, summary);
  if (st == POLYCERT_OK) st = polycert_result_write(result, output_dir);
  if (out) *out = res_guard.release();
  return st;
}

}  // extern "C"
