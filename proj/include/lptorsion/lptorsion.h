/* C interface to the torsion calculator and the numerical labs.
 *
 * Every function returns an lpt_status. On failure the message is available
 * from lpt_last_error() on the same thread until the next call. Functions
 * that produce text hand back a heap string in *out which the caller
 * releases with lpt_string_free. Scalars travel as strings in the same
 * syntax the parser accepts: "3", "-1/4", "1+2*sqrt(3)", "0.26".
 */
#ifndef LPTORSION_H
#define LPTORSION_H

#include <stddef.h>

#if defined(LPT_BUILDING_LIBRARY)
#define LPT_API __attribute__((visibility("default")))
#else
#define LPT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  LPT_OK = 0,
  LPT_ERR_PARSE = 1,
  LPT_ERR_DOMAIN = 2,
  LPT_ERR_DEGREE = 3,
  LPT_ERR_FIELD_MISMATCH = 4,
  LPT_ERR_MODE_MISMATCH = 5,
  LPT_ERR_DIVISION_BY_ZERO = 6,
  LPT_ERR_NONABELIAN = 7,
  LPT_ERR_NOT_DETERMINED = 8,
  LPT_ERR_BLOWUP = 9,
  LPT_ERR_QUADRATURE = 10,
  LPT_ERR_INTERNAL = 11,
  LPT_ERR_NULL_ARGUMENT = 12
} lpt_status;

typedef struct lpt_spectrum lpt_spectrum;
typedef struct lpt_group lpt_group;
typedef struct lpt_pinched lpt_pinched;

LPT_API const char* lpt_status_name(lpt_status s);
LPT_API const char* lpt_last_error(void);
LPT_API void lpt_string_free(char* s);

/* approximate != 0 converts every parsed value to a double (float mode). */
LPT_API lpt_status lpt_spectrum_create(const char* const* weights, size_t count, int abelian, int approximate,
                                       lpt_spectrum** out);
/* sqrt(-delta) repeated n-mu times, then 1 repeated mu-1 times. */
LPT_API lpt_status lpt_spectrum_two_valued(int n, int mu, const char* delta, int approximate, lpt_spectrum** out);
LPT_API void lpt_spectrum_free(lpt_spectrum* s);
/* Number of weights, n - 1; 0 for a null handle. */
LPT_API int lpt_spectrum_rank(const lpt_spectrum* s);

LPT_API lpt_status lpt_group_heintze(const lpt_spectrum* s, lpt_group** out);
LPT_API lpt_status lpt_group_real_hyperbolic(int n, lpt_group** out);
LPT_API lpt_status lpt_group_reference(const char* name, lpt_group** out);
LPT_API void lpt_group_free(lpt_group* g);
LPT_API int lpt_group_dimension(const lpt_group* g);

LPT_API lpt_status lpt_pinched_create(int n, const char* delta, int approximate, lpt_pinched** out);
LPT_API void lpt_pinched_free(lpt_pinched* c);

/* Spectral calculators. */
LPT_API lpt_status lpt_exterior_json(const lpt_spectrum* s, int k, char** out);
LPT_API lpt_status lpt_critical_json(const lpt_spectrum* s, int k, char** out);
/* Contracting/dilating/neither plus the grading dimensions at p. */
LPT_API lpt_status lpt_contracting_json(const lpt_spectrum* s, int k, const char* p, char** out);

/* Pinching bounds. */
LPT_API lpt_status lpt_q_bound(const lpt_pinched* c, int k, char** out);
LPT_API lpt_status lpt_vanishing_json(const lpt_pinched* c, int k, char** out);
LPT_API lpt_status lpt_contraction_json(const lpt_pinched* c, int k, char** out);
LPT_API lpt_status lpt_eta_json(const lpt_pinched* c, int k, const char* p, char** out);

/* Torsion. */
LPT_API lpt_status lpt_nonvanishing_json(const lpt_spectrum* s, int k, char** out);
LPT_API lpt_status lpt_theorem_b_json(int n, int mu, const char* delta, char** out);
LPT_API lpt_status lpt_hyperbolic_points_json(int n, int k, char** out);
LPT_API lpt_status lpt_t_invariant(const lpt_group* g, char** out);
LPT_API lpt_status lpt_degree_report_json(const lpt_group* g, int k, char** out);
LPT_API lpt_status lpt_qi_check_json(const lpt_group* g, const lpt_pinched* c, char** out);
LPT_API lpt_status lpt_truncation_tradeoff(double mu, double eta, double m, double n_mag, double* s, double* bound);

/* Labs. config is a JSON object; missing keys take their defaults.
 *   riccati: dims, deltas (strings), count, seed, t_end, h
 *   lemma_r: p, j (list), n
 *   radial:  p, j (list)
 *   kunneth: eps (list), annuli
 */
LPT_API lpt_status lpt_lab_riccati_json(const char* config, char** out);
LPT_API lpt_status lpt_lab_lemma_r_json(const char* config, char** out);
LPT_API lpt_status lpt_lab_radial_json(const char* config, char** out);
LPT_API lpt_status lpt_lab_kunneth_json(const char* config, char** out);

#ifdef __cplusplus
}
#endif

#endif
