#pragma once

// Batch driver: runs one task over a system and a point set and renders the
// summary table, report.txt and the machine-readable point files.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polycert/arith.hpp"
#include "polycert/polysys.hpp"

namespace polycert {

enum class Task { solutions, distinct, real, count, overdet };

struct RunSettings {
  Arithmetic arithmetic = Arithmetic::rational;
  mpfr_prec_t precision = 256;
  Task task = Task::count;
  Rational delta{"1/10000000000"};
  unsigned refine_digits = 0;
  RealTest real_test = RealTest::both;
  std::uint64_t seed = 0;
  unsigned newton_cap = 50;
  mpfr_prec_t max_precision = 8192;
  unsigned subsystems = 2;
  unsigned workers = 1;

  NumberContext context() const { return {arithmetic, precision}; }
};

/// Column counts of the summary table. A column that the task does not
/// compute is absent (nullopt) and printed as '-'.
struct Summary {
  std::size_t total = 0;
  std::optional<std::size_t> certified;
  std::optional<std::size_t> distinct;
  std::optional<std::size_t> real;
  std::size_t undecided = 0;
};

enum class RunStatus { ok = 0, usage = 1, precision = 2 };

struct RunArtifacts {
  RunStatus status = RunStatus::ok;
  Summary summary;
  std::string summary_table;
  /// Banner lines (`HEURISTIC:`, `ASSUMED-REAL:`), also present in the report.
  std::vector<std::string> banners;
  std::string report;
  /// File name -> contents, written atomically by write_artifacts.
  std::map<std::string, std::string> files;
  std::string error;
};

Task parse_task(std::string_view name);
RealTest parse_real_test(std::string_view name);
Arithmetic parse_arithmetic(std::string_view name);
std::string to_string(Task task);
std::string to_string(RealTest test);

/// Fixed-width table: total, certified, distinct, real, undecided.
std::string format_summary(const Summary& summary);

/// Runs the task on parsed inputs. Throws UsageError for invalid
/// task/system combinations.
RunArtifacts execute(const RunSettings& settings, const PolynomialSystem& f, const std::vector<Point>& points,
                     const std::vector<std::string>& parse_warnings = {});

/// Parses both files, then executes. Parse failures surface as ParseError.
RunArtifacts run(const RunSettings& settings, const std::filesystem::path& system_path,
                 const std::filesystem::path& points_path);

/// Writes report.txt and the point files into `dir`, replacing stale outputs
/// of earlier runs. Files are staged and renamed so a failed write leaves no
/// partial output.
void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& dir);

inline constexpr const char* kOutputFiles[] = {"report.txt",  "points.certified", "points.distinct",
                                               "points.real", "points.refined",   "points.within_delta"};

}  // namespace polycert
