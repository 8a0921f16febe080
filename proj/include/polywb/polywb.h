#ifndef POLYWB_POLYWB_H
#define POLYWB_POLYWB_H

/* C interface to the polygraphic rewriting workbench.
 *
 * A workbench handle wraps a built-in preset or a polygraph read from text.
 * Every analysis writes a report (text or JSON) to *out, which the caller
 * releases with pw_free_string. On PW_INPUT_ERROR and PW_INTERNAL *out is
 * NULL and pw_last_error() describes the problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PW_API __declspec(dllexport)
#else
#define PW_API __attribute__((visibility("default")))
#endif

typedef struct pw_workbench pw_workbench;

typedef enum pw_status {
  PW_OK = 0,          /* success, or Equal */
  PW_NEGATIVE = 1,    /* the analysis found a failure, or NotEqual */
  PW_INPUT_ERROR = 2, /* unreadable or malformed input */
  PW_INTERNAL = 3
} pw_status;

typedef enum pw_format { PW_FORMAT_TEXT = 0, PW_FORMAT_JSON = 1 } pw_format;

typedef struct pw_options {
  size_t budget;          /* 0 selects the default step budget */
  size_t max_extra_width; /* extra wires for critical branchings */
  uint64_t bound;         /* grid bound override, 0 keeps the interpretation's */
  const char* interp;     /* interpretation text or NULL */
  pw_format format;
} pw_options;

PW_API void pw_options_init(pw_options* opts);

PW_API pw_status pw_open_preset(const char* name, pw_workbench** out);
PW_API pw_status pw_open_polygraph(const char* text, const char* name, pw_workbench** out);
PW_API void pw_close(pw_workbench* wb);

/* Newline-separated preset names; release with pw_free_string. */
PW_API char* pw_preset_names(void);

PW_API pw_status pw_normalize(const pw_workbench* wb, const char* expr, const pw_options* opts, char** out);
PW_API pw_status pw_critical(const pw_workbench* wb, const pw_options* opts, char** out);
PW_API pw_status pw_confluence(const pw_workbench* wb, const pw_options* opts, char** out);
PW_API pw_status pw_termination(const pw_workbench* wb, const pw_options* opts, char** out);
PW_API pw_status pw_homotopy_basis(const pw_workbench* wb, const pw_options* opts, char** out);
PW_API pw_status pw_decide(const pw_workbench* wb, const char* trace_a, const char* trace_b, const pw_options* opts,
                           char** out);
PW_API pw_status pw_info(const pw_workbench* wb, const pw_options* opts, char** out);
PW_API pw_status pw_export(const pw_workbench* wb, const pw_options* opts, char** out);

PW_API void pw_free_string(char* s);
PW_API const char* pw_last_error(void);
PW_API const char* pw_version(void);

#ifdef __cplusplus
}
#endif

#endif
