/*
 * polycert C API.
 *
 * Opaque handles own parsed systems, point sets and certification results.
 * Every call returns a polycert_status; on failure polycert_last_error()
 * holds a message for the calling thread until its next API call.
 * Strings returned by the library stay valid until the owning handle is
 * freed.
 */
#ifndef POLYCERT_POLYCERT_H
#define POLYCERT_POLYCERT_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef POLYCERT_BUILDING_LIBRARY
#    define POLYCERT_API __declspec(dllexport)
#  else
#    define POLYCERT_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define POLYCERT_API __attribute__((visibility("default")))
#else
#  define POLYCERT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum polycert_status {
  POLYCERT_OK = 0,
  POLYCERT_ERR_USAGE = 1,     /* invalid settings or task/system combination */
  POLYCERT_ERR_PARSE = 2,     /* malformed system or points input */
  POLYCERT_ERR_PRECISION = 3, /* float working precision ceiling reached */
  POLYCERT_ERR_IO = 4,
  POLYCERT_ERR_INVALID_ARGUMENT = 5,
  POLYCERT_ERR_INTERNAL = 6
} polycert_status;

typedef enum polycert_arithmetic { POLYCERT_RATIONAL = 0, POLYCERT_FLOAT = 1 } polycert_arithmetic;

typedef enum polycert_task {
  POLYCERT_TASK_SOLUTIONS = 0,
  POLYCERT_TASK_DISTINCT = 1,
  POLYCERT_TASK_REAL = 2,
  POLYCERT_TASK_COUNT = 3,
  POLYCERT_TASK_OVERDET = 4
} polycert_task;

typedef enum polycert_real_test {
  POLYCERT_REAL_COEFF = 0,
  POLYCERT_REAL_POINT = 1,
  POLYCERT_REAL_BOTH = 2,
  POLYCERT_REAL_ASSUME = 3,
  POLYCERT_REAL_SKIP = 4
} polycert_real_test;

typedef struct polycert_settings {
  polycert_arithmetic arithmetic;
  unsigned long precision; /* bits, float mode only */
  polycert_task task;
  const char* delta; /* number token, exact; NULL means 1e-10 */
  unsigned refine_digits;
  polycert_real_test real_test;
  uint64_t seed;
  unsigned newton_cap;
  unsigned long max_precision;
  unsigned subsystems;
  unsigned workers;
} polycert_settings;

/* Column value reported as -1 when the task does not compute it. */
typedef struct polycert_summary {
  long long total;
  long long certified;
  long long distinct;
  long long real;
  long long undecided;
} polycert_summary;

typedef struct polycert_system polycert_system;
typedef struct polycert_points polycert_points;
typedef struct polycert_result polycert_result;

POLYCERT_API const char* polycert_version(void);
POLYCERT_API const char* polycert_last_error(void);

/* Defaults: rational, 256 bits, task count, real test both, cap 50, ceiling 8192, 2 subsystems. */
POLYCERT_API void polycert_settings_init(polycert_settings* settings);

POLYCERT_API polycert_status polycert_system_parse(const char* text, polycert_arithmetic arithmetic,
                                                   unsigned long precision, polycert_system** out);
POLYCERT_API polycert_status polycert_system_load(const char* path, polycert_arithmetic arithmetic,
                                                  unsigned long precision, polycert_system** out);
POLYCERT_API void polycert_system_free(polycert_system* system);
POLYCERT_API polycert_status polycert_system_shape(const polycert_system* system, size_t* variables,
                                                   size_t* polynomials);
/* Canonical text in the system file grammar. */
POLYCERT_API const char* polycert_system_text(const polycert_system* system);

POLYCERT_API polycert_status polycert_points_parse(const char* text, const polycert_system* system,
                                                   polycert_points** out);
POLYCERT_API polycert_status polycert_points_load(const char* path, const polycert_system* system,
                                                  polycert_points** out);
POLYCERT_API void polycert_points_free(polycert_points* points);
POLYCERT_API size_t polycert_points_count(const polycert_points* points);

/* Runs the configured task. A precision-ceiling failure still produces a
 * result (so the summary can be inspected) and returns POLYCERT_ERR_PRECISION. */
POLYCERT_API polycert_status polycert_certify(const polycert_settings* settings, const polycert_system* system,
                                              const polycert_points* points, polycert_result** out);
POLYCERT_API void polycert_result_free(polycert_result* result);
POLYCERT_API polycert_status polycert_result_summary(const polycert_result* result, polycert_summary* out);
POLYCERT_API const char* polycert_result_summary_table(const polycert_result* result);
POLYCERT_API const char* polycert_result_report(const polycert_result* result);
/* Newline-separated banner lines (HEURISTIC:, ASSUMED-REAL:, ...); empty if none. */
POLYCERT_API const char* polycert_result_banners(const polycert_result* result);
/* Contents of an output file such as "points.certified"; NULL if not produced. */
POLYCERT_API const char* polycert_result_file(const polycert_result* result, const char* name);
POLYCERT_API polycert_status polycert_result_write(const polycert_result* result, const char* directory);

/* Parse, certify and write outputs in one call. On failure nothing is
 * written; `summary` is filled whenever certification ran. */
POLYCERT_API polycert_status polycert_run(const polycert_settings* settings, const char* system_path,
                                          const char* points_path, const char* output_dir,
                                          polycert_summary* summary, polycert_result** out);

#ifdef __cplusplus
}
#endif

#endif /* POLYCERT_POLYCERT_H */
