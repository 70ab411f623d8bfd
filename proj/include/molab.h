/* SPDX-License-Identifier: Apache-2.0
 *
 * C API of the Musielak-Orlicz modular analysis library. The handles
 * are opaque; every function returns a status code and reports details
 * through molab_last_error(). Thread safety: handles are immutable
 * after creation and may be shared across threads; the error message
 * buffer is thread-local.
 */

#ifndef MOLAB_H
#define MOLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MOLAB_API __declspec(dllexport)
#else
#define MOLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum molab_status {
    MOLAB_OK = 0,
    MOLAB_ERR_INVALID_ARGUMENT = 1, /* bad parameter or handle */
    MOLAB_ERR_PARSE = 2,            /* malformed config / descriptor */
    MOLAB_ERR_DOMAIN = 3,           /* argument outside the math domain */
    MOLAB_ERR_NUMERIC = 4,          /* solver failed to converge */
    MOLAB_ERR_UNSUPPORTED = 5,      /* operation undefined for this family */
    MOLAB_ERR_IO = 6,               /* file system failure */
    MOLAB_ERR_INTERNAL = 7
} molab_status;

typedef struct molab_phi molab_phi;       /* modular integrand M(x,s) */
typedef struct molab_domain molab_domain; /* uniform grid over a box */
typedef struct molab_func molab_func;     /* samples on a domain */

MOLAB_API const char* molab_version(void);

/* Message for the last failing call on this thread; never NULL. */
MOLAB_API const char* molab_last_error(void);

/* --- integrands ------------------------------------------------------ */

/* family_json uses the same descriptor schema as the experiment config,
 * e.g. {"family":"double_phase","p":2,"q":3,"a":{"kind":"abs_power",
 * "coeff":1,"exponent":0.5}}. Fields are evaluated over the reference
 * box [lo,hi]^dim supplied here (bounds feed the declared field
 * ranges). */
MOLAB_API molab_status molab_phi_create(const char* family_json, int dim,
                                        const double* lo, const double* hi,
                                        molab_phi** out);
MOLAB_API void molab_phi_destroy(molab_phi* phi);

/* M(x,s); x has dim entries. */
MOLAB_API molab_status molab_phi_eval(const molab_phi* phi, const double* x,
                                      int dim, double s, double* out);

/* --- grids and functions --------------------------------------------- */

MOLAB_API molab_status molab_domain_create(int dim, const double* lo,
                                           const double* hi, const int* resolution,
                                           molab_domain** out);
MOLAB_API void molab_domain_destroy(molab_domain* domain);
MOLAB_API molab_status molab_domain_node_count(const molab_domain* domain,
                                               int64_t* out);

MOLAB_API molab_status molab_func_from_values(const molab_domain* domain,
                                              const double* values, int64_t count,
                                              molab_func** out);
/* fixture_json: {"shape":"hat"|"hat_power"|"plateau"|...} as in configs */
MOLAB_API molab_status molab_func_fixture(const molab_domain* domain,
                                          const char* fixture_json,
                                          molab_func** out);
MOLAB_API void molab_func_destroy(molab_func* func);
MOLAB_API molab_status molab_func_values(const molab_func* func, double* buffer,
                                         int64_t capacity);

/* --- modular machinery ----------------------------------------------- */

MOLAB_API molab_status molab_modular(const molab_phi* phi, const molab_func* u,
                                     double lambda, double* out);
MOLAB_API molab_status molab_luxemburg_norm(const molab_phi* phi,
                                            const molab_func* u, double rel_tol,
                                            double* out);
MOLAB_API molab_status molab_lp_norm(const molab_func* u, double p, double* out);
MOLAB_API molab_status molab_mollify(const molab_func* u, double eps,
                                     molab_func** out);

/* --- experiment runner ------------------------------------------------ */

/* Runs one subcommand (verify-lemmas | conjugate | norm | mollify |
 * lavrentiev | witness) against a config document. Writes report files
 * under out_dir and hands back the JSON report (free with
 * molab_string_free). seed == 0 and threads == 0 defer to the config.
 * Returns MOLAB_OK when every requested certification passed and
 * MOLAB_ERR_NUMERIC when the run completed with failed certifications
 * (the report is still produced). */
MOLAB_API molab_status molab_run(const char* subcommand, const char* config_json,
                                 const char* config_dir, const char* out_dir,
                                 uint64_t seed, int threads, char** report_json);
MOLAB_API void molab_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MOLAB_H */
