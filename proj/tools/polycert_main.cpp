// polycert: certify approximate solutions of polynomial systems.
//
// Exit status: 0 on success, 1 on usage or parse errors, 2 when the float
// working precision hits --max-precision.

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <string>

#include "polycert/polycert.h"

namespace {

int exit_code(polycert_status st) {
  switch (st) {
    case POLYCERT_OK: return 0;
    case POLYCERT_ERR_PRECISION: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify approximate solutions of polynomial systems with alpha theory"};
  app.set_version_flag("--version", polycert_version());

  polycert_settings settings;
  polycert_settings_init(&settings);

  std::string system_path, points_path, out_dir = ".";
  std::string delta = "1e-10";
  const std::map<std::string, polycert_arithmetic> arithmetic_names{{"rational", POLYCERT_RATIONAL},
                                                                    {"float", POLYCERT_FLOAT}};
  const std::map<std::string, polycert_task> task_names{{"solutions", POLYCERT_TASK_SOLUTIONS},
                                                        {"distinct", POLYCERT_TASK_DISTINCT},
                                                        {"real", POLYCERT_TASK_REAL},
                                                        {"count", POLYCERT_TASK_COUNT},
                                                        {"overdet", POLYCERT_TASK_OVERDET}};
  const std::map<std::string, polycert_real_test> real_names{{"coeff", POLYCERT_REAL_COEFF},
                                                             {"point", POLYCERT_REAL_POINT},
                                                             {"both", POLYCERT_REAL_BOTH},
                                                             {"assume", POLYCERT_REAL_ASSUME},
                                                             {"skip", POLYCERT_REAL_SKIP}};

  app.add_option("--system", system_path, "Polynomial system file")->required()->check(CLI::ExistingFile);
  app.add_option("--points", points_path, "Approximate solutions file")->required()->check(CLI::ExistingFile);
  app.add_option("--arithmetic", settings.arithmetic, "rational or float")
      ->transform(CLI::CheckedTransformer(arithmetic_names, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--precision", settings.precision, "Float working precision in bits")
      ->check(CLI::Range(2UL, 1UL << 24))
      ->capture_default_str();
  app.add_option("--task", settings.task, "solutions, distinct, real, count or overdet")
      ->transform(CLI::CheckedTransformer(task_names, CLI::ignore_case));
  app.add_option("--delta", delta, "Overdetermined closeness threshold (exact decimal or p/q)")
      ->capture_default_str();
  app.add_option("--refine-digits", settings.refine_digits, "Refine certified points to this many digits (0: off)")
      ->capture_default_str();
  app.add_option("--real-test", settings.real_test, "coeff, point, both, assume or skip")
      ->transform(CLI::CheckedTransformer(real_names, CLI::ignore_case));
  app.add_option("--seed", settings.seed, "Seed for random test points and matrices")->capture_default_str();
  app.add_option("--newton-cap", settings.newton_cap, "Newton rounds before a pair is undecided")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-precision", settings.max_precision, "Float precision ceiling in bits")
      ->capture_default_str();
  app.add_option("--subsystems", settings.subsystems, "Random square subsystems for overdet (>= 2)")
      ->capture_default_str();
  app.add_option("--workers", settings.workers, "Threads for per-point certification")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every flag error is a usage error.
    return app.exit(e) == 0 ? 0 : 1;
  }
  settings.delta = delta.c_str();

  polycert_summary summary;
  polycert_result* result = nullptr;
  polycert_status st =
      polycert_run(&settings, system_path.c_str(), points_path.c_str(), out_dir.c_str(), &summary, &result);
  if (result) {
    std::fputs(polycert_result_banners(result), stdout);
    std::fputs(polycert_result_summary_table(result), stdout);
    polycert_result_free(result);
  }
  if (st != POLYCERT_OK) std::fprintf(stderr, "polycert: %s\n", polycert_last_error());
  return exit_code(st);
}
