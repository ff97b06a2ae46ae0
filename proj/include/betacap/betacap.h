/* C interface of the betacap shared library.
 *
 * All entry points return a bc_status; on failure bc_last_error() gives a
 * thread-local message. Handles are opaque and must be released with the
 * matching *_free function.
 */
#ifndef BETACAP_H
#define BETACAP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
  BC_OK = 0,
  BC_ERR_INVALID_ARG = 1,  /* bad argument or violated precondition */
  BC_ERR_PARSE = 2,        /* malformed text spec or config */
  BC_ERR_NUMERIC = 3,      /* solver or quadrature failure */
  BC_ERR_WINDOW = 4,       /* too few singular values for a decay fit */
  BC_ERR_IO = 5            /* file system failure */
} bc_status;

const char* bc_version(void);
const char* bc_last_error(void);
void bc_string_free(char* s);

/* ---- coefficient weights ---------------------------------------------- */

typedef struct bc_weights bc_weights;

/* spec: "hardy" | "bergman" | "dirichlet" | "alpha(<a>)", a > -1. */
bc_status bc_weights_create(const char* spec, int n_max, bc_weights** out);
int bc_weights_count(const bc_weights* w);           /* n_max + 1 values */
bc_status bc_weights_get(const bc_weights* w, int n, double* out);
bc_status bc_weights_siz_bounds(const bc_weights* w, double eps,
                                double* delta_eps, double* big_c, int* ok);
void bc_weights_free(bc_weights* w);

/* ---- symbols ----------------------------------------------------------- */

typedef struct bc_symbol bc_symbol;

/* text e.g. "affine(0.3,0.4)" or "auto(0.5)*dil(0.5)"; `*` composes with
 * the right-most factor applied first. */
bc_status bc_symbol_parse(const char* text, bc_symbol** out);
bc_status bc_symbol_eval(const bc_symbol* s, double re, double im,
                         double* out_re, double* out_im);
bc_status bc_symbol_sup_norm(const bc_symbol* s, double* out);
bc_status bc_symbol_image_disk(const bc_symbol* s, double* center_re,
                               double* center_im, double* radius);
void bc_symbol_free(bc_symbol* s);

/* ---- approximation numbers and decay rate ------------------------------ */

typedef struct bc_spectrum bc_spectrum;

/* Singular values of the order-N truncation of C_phi on the space given by
 * weights; requires bc_weights_count(w) > N. */
bc_status bc_spectrum_compute(const bc_symbol* s, const bc_weights* w, int N,
                              bc_spectrum** out);
int bc_spectrum_count(const bc_spectrum* sp);
bc_status bc_spectrum_get(const bc_spectrum* sp, int n, double* a_n); /* 1-based */
bc_status bc_spectrum_beta(const bc_spectrum* sp, double* beta,
                           double* slope_stderr, double* fit_r2,
                           int* n_lo, int* n_hi);
void bc_spectrum_free(bc_spectrum* sp);

/* ---- Green capacity ----------------------------------------------------- */

/* set: "disk(b,a)" | "phdisk(w,r)" | "segment(x0,x1)" | "image(<symbol>)".
 * method: "closed_form" | "equilibrium" | "grid".
 * panels is the equilibrium panel count, grid_h the grid spacing. */
bc_status bc_capacity(const char* set, const char* method, int panels,
                      double grid_h, double* value, double* m_value,
                      double* error_indicator);

/* ---- verification harness ----------------------------------------------- */

/* Runs the experiments in config_path, writing reports plus summary.csv
 * into a timestamped subdirectory of out_dir. format: "json"|"csv"|"text".
 * all_pass is 1 iff every experiment met its tolerance. report_dir (if
 * non-NULL) receives the created directory; free with bc_string_free. */
bc_status bc_verify_file(const char* config_path, const char* out_dir,
                         const char* format, int* all_pass, char** report_dir);

/* Runs a single experiment from config text and returns the serialized
 * report; free with bc_string_free. */
bc_status bc_verify_text(const char* config_text, const char* format,
                         int* all_pass, char** report);

#ifdef __cplusplus
}
#endif

#endif /* BETACAP_H */
