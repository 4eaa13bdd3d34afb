/* C interface to the fracsub numerical library.
 *
 * All entry points return fracsub_status; FRACSUB_OK is 0. Objects are
 * opaque handles created and destroyed here. On any failure the thread-local
 * message from fracsub_last_error() describes what went wrong.
 */
#ifndef FRACSUB_H
#define FRACSUB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define FRACSUB_API __declspec(dllexport)
#else
#  define FRACSUB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fracsub_status {
  FRACSUB_OK = 0,
  FRACSUB_ERR_CONFIG = 1,          /* unparseable / invalid configuration */
  FRACSUB_ERR_ASSUMPTION = 2,      /* standing hypothesis violated */
  FRACSUB_ERR_NON_CONVERGENCE = 3, /* iteration or stepper failed */
  FRACSUB_ERR_CHECK_FAILED = 4,    /* a verification check missed its threshold */
  FRACSUB_ERR_INVALID = 5,         /* bad argument */
  FRACSUB_ERR_IO = 6               /* file system trouble */
} fracsub_status;

typedef struct fracsub_spec fracsub_spec;
typedef struct fracsub_field fracsub_field;

FRACSUB_API const char* fracsub_last_error(void);
FRACSUB_API const char* fracsub_version(void);

/* --- problem specification ---------------------------------------------- */

FRACSUB_API fracsub_spec* fracsub_spec_create(void);
FRACSUB_API void fracsub_spec_destroy(fracsub_spec* spec);
/* Accepts the same keys as the configuration file, e.g. ("sigma", "0.5"). */
FRACSUB_API fracsub_status fracsub_spec_set(fracsub_spec* spec, const char* key,
                                            const char* value);
FRACSUB_API fracsub_status fracsub_spec_validate(const fracsub_spec* spec);

/* --- fields --------------------------------------------------------------*/

FRACSUB_API fracsub_status fracsub_coefficient(const fracsub_spec* spec, fracsub_field** out);
FRACSUB_API fracsub_status fracsub_field_from_csv(const fracsub_spec* spec, const char* path,
                                                  fracsub_field** out);
FRACSUB_API void fracsub_field_destroy(fracsub_field* f);
FRACSUB_API fracsub_status fracsub_field_dump_csv(const fracsub_field* f, const char* path);
FRACSUB_API fracsub_status fracsub_field_size(const fracsub_field* f, int64_t* out);
FRACSUB_API fracsub_status fracsub_field_values(const fracsub_field* f, double* buffer,
                                                int64_t buffer_len);
FRACSUB_API fracsub_status fracsub_field_sup_norm(const fracsub_field* f, double* out);

/* --- operators ------------------------------------------------------------
 * sigma of 0 means "use the spec's sigma".                                  */

FRACSUB_API fracsub_status fracsub_apply_spectral(const fracsub_spec* spec,
                                                  const fracsub_field* f, double sigma,
                                                  fracsub_field** out);
FRACSUB_API fracsub_status fracsub_riesz_convolve(const fracsub_spec* spec,
                                                  const fracsub_field* rho, double sigma,
                                                  fracsub_field** out);
FRACSUB_API fracsub_status fracsub_dirichlet_solve(const fracsub_spec* spec,
                                                   const fracsub_field* rho, double R,
                                                   fracsub_field** out);
/* Monotone iteration on the box (-R,R)^N; iterations_out may be NULL. */
FRACSUB_API fracsub_status fracsub_solve_ball(const fracsub_spec* spec, const fracsub_field* rho,
                                              double R, fracsub_field** out, int* iterations_out);

/* --- scenario runner ------------------------------------------------------
 * exit_class receives the CLI exit code (0 ok, 1 config, 2 assumption,
 * 3 non-convergence, 4 check failure). The returned status mirrors it.     */

FRACSUB_API fracsub_status fracsub_run(const char* config_path, const char* out_dir, int threads,
                                       int* exit_class);
FRACSUB_API fracsub_status fracsub_emit(const char* config_path, const char* out_dir, int threads,
                                        int* exit_class);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FRACSUB_H */
