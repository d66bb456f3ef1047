/* C interface to the satake toolkit: scenario runs, catalog, identity checks, and
 * the decomposition/reduction kernels. All handles are opaque; functions return a
 * sat_status and leave a message in sat_last_error() on failure. */
#ifndef SATAKE_H
#define SATAKE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SAT_API __declspec(dllexport)
#else
#define SAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SAT_OK = 0,
    SAT_DISAGREE = 2,      /* run finished, prediction not confirmed */
    SAT_NOT_COVERED = 3,   /* input outside the implemented case analysis */
    SAT_INPUT_ERROR = 4,   /* malformed input, bad argument */
    SAT_INTERNAL_ERROR = 5
} sat_status;

typedef struct sat_scenario sat_scenario;
typedef struct sat_report sat_report;
typedef struct sat_group sat_group;

/* thread-local; valid until the next failing call on the same thread */
SAT_API const char* sat_last_error(void);
SAT_API const char* sat_version(void);

/* ---- scenarios ---- */
SAT_API sat_status sat_scenario_parse(const char* text, sat_scenario** out);
SAT_API sat_status sat_scenario_load(const char* path, sat_scenario** out);
SAT_API void sat_scenario_free(sat_scenario* sc);
SAT_API const char* sat_scenario_name(const sat_scenario* sc);
SAT_API sat_status sat_scenario_set_seed(sat_scenario* sc, uint64_t seed);
SAT_API sat_status sat_scenario_set_samples(sat_scenario* sc, size_t samples);
SAT_API sat_status sat_scenario_set_jobs(sat_scenario* sc, int jobs);
SAT_API sat_status sat_scenario_set_ycap(sat_scenario* sc, double ycap);

/* Runs the scenario. out_dir may be NULL (no files). The report is always produced when
 * the return value is not SAT_INPUT_ERROR from argument checks; its exit code carries the
 * outcome of the run. */
SAT_API sat_status sat_run(const sat_scenario* sc, const char* out_dir, sat_report** out);
SAT_API void sat_report_free(sat_report* r);
SAT_API int sat_report_exit_code(const sat_report* r);
SAT_API int sat_report_passed(const sat_report* r);
SAT_API const char* sat_report_message(const sat_report* r);
SAT_API const char* sat_report_summary(const sat_report* r);
SAT_API const char* sat_report_verdict_table(const sat_report* r);
SAT_API const char* sat_report_trace(const sat_report* r);   /* branch slugs, space separated */
SAT_API uint32_t sat_report_label(const sat_report* r);      /* bit k = simple root k+1 */
SAT_API int sat_report_support(const sat_report* r);         /* 0 interior, 1 boundary, 2 point */
SAT_API double sat_report_runtime(const sat_report* r);
SAT_API size_t sat_report_index_count(const sat_report* r);
/* mass of a label in the histogram for the given index position and threshold position */
SAT_API sat_status sat_report_mass(const sat_report* r, size_t index_pos, size_t tesc_pos, uint32_t label,
                                   double* mass);

/* Classifies without sampling; label and support as above. Returns SAT_NOT_COVERED when the
 * classifier rejects the input. */
SAT_API sat_status sat_classify(const sat_scenario* sc, uint32_t* label, int* support);

/* ---- catalog and identity checks ---- */
/* caller frees with sat_string_free */
SAT_API char* sat_catalog_text(void);
SAT_API sat_status sat_verify_identities(int trials, uint64_t seed, char** report, int* all_passed);
SAT_API void sat_string_free(char* s);

/* ---- groups and kernels ---- */
/* spec "sl n" or "sl2^r" */
SAT_API sat_status sat_group_create(const char* spec, sat_group** out);
SAT_API void sat_group_free(sat_group* g);
SAT_API int sat_group_dim(const sat_group* g);
SAT_API int sat_group_rank(const sat_group* g);
/* g row-major dim x dim; outputs row-major, any may be NULL */
SAT_API sat_status sat_iwasawa(const sat_group* grp, const double* g, double* n, double* a, double* k);
/* reduced representative gamma g and integer gamma, row-major */
SAT_API sat_status sat_reduce(const sat_group* grp, const double* g, double* rep, long long* gamma);
/* alpha_k of the Iwasawa a-part, rank entries */
SAT_API sat_status sat_root_values(const sat_group* grp, const double* g, double* values);

#ifdef __cplusplus
}
#endif

#endif
