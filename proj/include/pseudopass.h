/*
 * pseudopass C API
 *
 * Verification, falsification and certification of pseudo-passivity for
 * convolution operators whose kernels are Dirac-derivative combs plus
 * exponential-polynomial tails.
 *
 * Conventions:
 *   - Every function returning pp_status sets a thread-local message on
 *     failure, readable via pp_last_error().
 *   - Objects behind opaque handles are freed with their pp_*_free function.
 *   - Strings returned through char** are heap-allocated; release them with
 *     pp_string_free().
 *   - High-level runners take inputs as text (kernel JSON, params JSON,
 *     sample CSV) plus a JSON options object, and return serialized reports.
 */
#ifndef PSEUDOPASS_H
#define PSEUDOPASS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERR_PARSE = 1,       /* malformed input text */
  PP_ERR_INVALID = 2,     /* well-formed but violates a precondition */
  PP_ERR_NUMERIC = 3,     /* quadrature or solver failure */
  PP_ERR_DOMAIN = 4,      /* evaluation outside the domain of definition */
  PP_ERR_UNSUPPORTED = 5, /* not defined for this representation */
  PP_ERR_INTERNAL = 6
} pp_status;

typedef struct pp_kernel pp_kernel;
typedef struct pp_samples pp_samples;

const char* pp_version(void);
const char* pp_last_error(void);
void pp_string_free(char* s);

/* ---- kernels ---- */

pp_status pp_kernel_parse(const char* json_text, pp_kernel** out);
void pp_kernel_free(pp_kernel* k);
pp_status pp_kernel_to_json(const pp_kernel* k, char** out_json);
pp_status pp_kernel_digest(const pp_kernel* k, char** out_hex);
/* +HUGE_VAL for the zero kernel (empty support). */
pp_status pp_kernel_support_lower_bound(const pp_kernel* k, double* out);
pp_status pp_kernel_is_real(const pp_kernel* k, int* out);
pp_status pp_kernel_is_tempered(const pp_kernel* k, int* out);
pp_status pp_kernel_laplace(const pp_kernel* k, double s_re, double s_im,
                            double* w_re, double* w_im);

/* ---- transfer samples ---- */

pp_status pp_samples_parse_csv(const char* csv_text, pp_samples** out);
void pp_samples_free(pp_samples* s);
size_t pp_samples_count(const pp_samples* s);
pp_status pp_samples_get(const pp_samples* s, size_t index, double* s_re,
                         double* s_im, double* w_re, double* w_im);

/* ---- regions ---- */

typedef enum pp_region_shape {
  PP_REGION_FULL_PLANE = 0,
  PP_REGION_HALF_PLANE = 1,
  PP_REGION_DISK = 2,
  PP_REGION_DISK_COMPLEMENT = 3,
  PP_REGION_POINT = 4,
  PP_REGION_EMPTY = 5
} pp_region_shape;

typedef struct pp_region {
  int shape;       /* pp_region_shape */
  int case_index;  /* 1-based taxonomy case */
  double center_re, center_im;
  double radius;
  double bound;    /* half-plane threshold on Re */
  int side_ge;     /* 1: Re >= bound, 0: Re <= bound */
} pp_region;

pp_status pp_classify_admittance(double c, double d, pp_region* out);
pp_status pp_classify_scattering(double F, double G, pp_region* out);
pp_status pp_region_contains(const pp_region* r, double re, double im, double tol,
                             int* out);

/* ---- parameter and transfer-value maps ---- */

/* F_j = c_j + d_j, G_j = c_j - d_j over n entries (and the inverse map). */
pp_status pp_params_adm_to_scat(const double* c, const double* d, size_t n,
                                double* F, double* G);
pp_status pp_params_scat_to_adm(const double* F, const double* G, size_t n,
                                double* c, double* d);
/* (1-w)/(1+w); PP_ERR_DOMAIN within tol of the pole at -1. */
pp_status pp_cayley(double w_re, double w_im, double tol, double* out_re,
                    double* out_im);

/* Range-inequality residuals at one sample; weight arrays have n entries. */
pp_status pp_admittance_range_residual(double w_re, double w_im, double s_re,
                                       double s_im, const double* c, const double* d,
                                       size_t n, double* out);
pp_status pp_scattering_range_residual(double w_re, double w_im, double s_re,
                                       double s_im, const double* F, const double* G,
                                       size_t n, double* out);

/* ---- subcommand runners ---- */

pp_status pp_run_verify(const char* kernel_json, const char* params_json,
                        const char* options_json, char** report_json);
pp_status pp_run_sweep(const char* kernel_json, const char* params_json,
                       const char* options_json, char** csv_out, char** report_json);
pp_status pp_run_classify(const char* options_json, char** text_out,
                          char** report_json, char** svg_out);
pp_status pp_run_fit(const char* samples_csv, const char* options_json,
                     char** report_json);
pp_status pp_run_convert(const char* samples_csv, const char* options_json,
                         char** csv_out, char** report_json);
pp_status pp_run_plot(const char* options_json, char** svg_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PSEUDOPASS_H */
