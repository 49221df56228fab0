#ifndef LINDOP_H
#define LINDOP_H

/* C interface to the lindop library: exact linear differential operators
 * over towers of formally defined functions. Handles are opaque; every
 * function that can fail reports through lindop_errno()/
 * lindop_error_message(). Returned strings are heap-allocated and must be
 * released with lindop_string_free(). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes, aligned with the library's internal classification. */
enum {
  LINDOP_OK = 0,
  LINDOP_ERR_DIV_ZERO = 1,
  LINDOP_ERR_TOWER_MISMATCH = 2,
  LINDOP_ERR_NEAR_TIE = 3,
  LINDOP_ERR_NOT_SUPPORTED = 4,
  LINDOP_ERR_PARSE = 5,
  LINDOP_ERR_BAD_ARG = 6,
  LINDOP_ERR_INTERNAL = 7,
};

/* A differential tower together with its named generators. */
typedef struct lindop_ctx lindop_ctx;
/* Either a field element or a linear differential operator. */
typedef struct lindop_value lindop_value;

/* Code and message of the most recent failure on this thread; the message
 * stays valid until the next failing call. A successful call clears them. */
int lindop_errno(void);
const char* lindop_error_message(void);

void lindop_string_free(char* s);

/* An empty context: the rational functions of z, no generators. */
lindop_ctx* lindop_ctx_new(void);
/* Builds a context from generator declarations, one `gen NAME : KIND = ARG;`
 * per generator with KIND in {logderiv, exp, prim, root}; `#` starts a
 * comment. NULL on error. */
lindop_ctx* lindop_ctx_from_config(const char* config_text);
void lindop_ctx_free(lindop_ctx* ctx);

/* Parses and evaluates an expression over z, i, D, and the context's
 * generators. NULL on error. */
lindop_value* lindop_eval(const lindop_ctx* ctx, const char* text);
void lindop_value_free(lindop_value* v);
int lindop_value_is_operator(const lindop_value* v);
/* Canonical rendering of the element or operator. */
char* lindop_value_str(const lindop_value* v);

/* Operator algebra. Elements are promoted to order-zero operators where an
 * operator is expected; all results are freshly allocated. */
lindop_value* lindop_compose(const lindop_value* a, const lindop_value* b);
/* Right division a = q*b + r with ord r < ord b; fills both out-slots. */
int lindop_rdivide(const lindop_value* a, const lindop_value* b,
                   lindop_value** q, lindop_value** r);
lindop_value* lindop_gcrd(const lindop_value* a, const lindop_value* b);
/* Kills the subleading coefficient of a monic operator by a logarithmic
 * substitution; fills the reduced operator and the log-derivative used. */
int lindop_gauge(const lindop_value* a, lindop_value** reduced,
                 lindop_value** w);
/* Transported operator annihilating y(z^n) for solutions y of a. */
lindop_value* lindop_changevar(const lindop_value* a, long n);
/* Wronskian determinant of n field elements. */
lindop_value* lindop_wronskian(const lindop_value* const* elems, size_t n);

/* ------------------------------------------------------------------ */
/* Command-shaped entry points: each evaluates its expression arguments in
 * the context and returns a rendered result, JSON when as_text is 0 and a
 * plain listing when it is 1. NULL on error. */

/* Composition of n >= 1 operators, left to right. */
char* lindop_compose_render(const lindop_ctx* ctx, const char* const* exprs,
                            size_t n, int as_text);
char* lindop_rdivide_render(const lindop_ctx* ctx, const char* a,
                            const char* b, int as_text);
/* Greatest common right divisor of n >= 1 operators. */
char* lindop_gcrd_render(const lindop_ctx* ctx, const char* const* exprs,
                         size_t n, int as_text);
char* lindop_gauge_render(const lindop_ctx* ctx, const char* a, int as_text);
char* lindop_changevar_render(const lindop_ctx* ctx, const char* a, long n,
                              int as_text);
char* lindop_wronskian_render(const lindop_ctx* ctx, const char* const* exprs,
                              size_t n, int as_text);

/* Exponential parts of an operator whose coefficients are rational in z.
 * With with_theta, parts are ordered from dominant to recessive growth
 * along the ray arg z = theta. */
char* lindop_exp_parts_render(const lindop_ctx* ctx, const char* expr,
                              int with_theta, double theta, int as_text);
/* Formal solutions attached to the simple exponential parts, with trunc
 * series coefficients each. */
char* lindop_formal_solve_render(const lindop_ctx* ctx, const char* expr,
                                 long trunc, int as_text);

/* The k coupled relations S_mu[Phi] = T_mu[G] for coefficient lists
 * c_0..c_{k-2} and C_0..C_{k-2} (each an array of k-1 expressions). */
char* lindop_frank_gen_render(const lindop_ctx* ctx, int k,
                              const char* const* c, const char* const* C,
                              int as_text);
/* Checks a candidate pair (g, phi) against all k relations; *failed is set
 * to 1 when some relation has a nonzero residual. */
char* lindop_frank_check_render(const lindop_ctx* ctx, int k,
                                const char* const* c, const char* const* C,
                                const char* g, const char* phi, int as_text,
                                int* failed);

/* Named verification scenario with key/value arguments (nargs pairs);
 * recognized keys depend on the scenario (delta, k, m, P, P1). *failed is
 * set to 1 when some check fails. */
char* lindop_verify(const char* scenario, const char* const* keys,
                    const char* const* values, size_t nargs,
                    unsigned long seed, int as_text, int* failed);
/* Runs every scenario (or the one named by filter) and aggregates. */
char* lindop_report(unsigned long seed, const char* filter, int parallel,
                    int as_text, int* failed);

#ifdef __cplusplus
}
#endif

#endif /* LINDOP_H */
