#ifndef MUMFORD_HEAT_H
#define MUMFORD_HEAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define MH_API __attribute__((visibility("default")))
#else
#define MH_API
#endif

typedef enum mh_status {
  MH_OK = 0,
  MH_ERR_PARSE = 1,
  MH_ERR_VALIDATION = 2,
  MH_ERR_NUMERICAL = 3,
  MH_ERR_INVALID_ARGUMENT = 4,
  MH_ERR_IO = 5,
  MH_ERR_INTERNAL = 6
} mh_status;

/* A parsed, validated run configuration plus overrides. */
typedef struct mh_session mh_session;

MH_API const char* mh_version(void);
MH_API const char* mh_status_name(mh_status status);
/* Process exit code for a status: 0, 2 (validation) or 3 (numerical). */
MH_API int mh_exit_code(mh_status status);

/* Message of the last failure on this thread; empty when none. */
MH_API const char* mh_last_error(void);

MH_API mh_status mh_session_open(const char* config_json, mh_session** out);
MH_API mh_status mh_session_open_file(const char* path, mh_session** out);
MH_API void mh_session_close(mh_session* session);

/* Overrides. Each one revalidates the whole configuration and leaves the
   session unchanged on failure. */
MH_API mh_status mh_session_set_level(mh_session* session, long level);
MH_API mh_status mh_session_set_mode(mh_session* session, const char* mode);
MH_API mh_status mh_session_set_cutoff_length(mh_session* session, long length);
/* Tolerance as "num/den", an integer or a decimal. */
MH_API mh_status mh_session_set_cutoff_tolerance(mh_session* session, const char* tolerance);
/* Comma-separated times, each "num/den", an integer or a decimal. */
MH_API mh_status mh_session_set_times(mh_session* session, const char* times);
MH_API mh_status mh_session_set_paths(mh_session* session, long paths);
MH_API mh_status mh_session_set_seed(mh_session* session, uint64_t seed);

/* Strings returned through char** are owned by the caller. */
MH_API void mh_string_free(char* s);

MH_API mh_status mh_session_config_json(const mh_session* session, char** out);
MH_API mh_status mh_session_config_hash(const mh_session* session, char** out);

/* Runs validate, spectrum, evolve, sample, audit or resolvent. */
MH_API mh_status mh_run(mh_session* session, const char* command, char** primary_output);
/* Same, writing every artifact into dir. *written lists the file paths, one per line. */
MH_API mh_status mh_run_to_dir(mh_session* session, const char* command, const char* dir, char** written);

/* Closed-form eigenvalue of the wavelet supported on D(center, radius_exp),
   as exact text, with its certified error. */
MH_API mh_status mh_lambda_paper(mh_session* session, const char* center, long radius_exp, char** value,
                                 char** error);

#ifdef __cplusplus
}
#endif

#endif
