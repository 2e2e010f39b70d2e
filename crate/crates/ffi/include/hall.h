#ifndef HALL_H
#define HALL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

typedef enum HallStatus {
  HALL_STATUS_OK = 0,
  HALL_STATUS_INVALID_ARGUMENT = 1,
  HALL_STATUS_NULL_POINTER = 2,
  HALL_STATUS_INVALID_K = 3,
  HALL_STATUS_PARSE = 4,
  HALL_STATUS_NOT_DIVISIBLE = 5,
  HALL_STATUS_VERIFICATION = 6,
  HALL_STATUS_DEGENERATE = 7,
  HALL_STATUS_INTERNAL = 8,
} HallStatus;

/**
 * Opaque family member `(x, y, d)` for one odd `k`.
 */
typedef struct HallFamily HallFamily;

/**
 * Opaque integer polynomial.
 */
typedef struct HallPoly HallPoly;

/**
 * Opaque integer witness `x^3 - y^2 = d`.
 */
typedef struct HallWitness HallWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * successful call. Valid until the next call into this library on the same
 * thread; do not free.
 */
const char *hall_last_error_message(void);

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *hall_version(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 */
void hall_string_free(char *s);

/**
 * Parses text such as `8*t^7 + 28*t^5 - 1`.
 */
enum HallStatus hall_poly_parse(const char *text, struct HallPoly **out);

/**
 * Parses the JSON form `{"var":"t","coeffs":["-1","0","8"]}`.
 */
enum HallStatus hall_poly_from_json(const char *json, struct HallPoly **out);

/**
 * Text form using variable name `var` (NULL means `t`).
 */
enum HallStatus hall_poly_to_string(const struct HallPoly *p, const char *var, char **out);

enum HallStatus hall_poly_to_json(const struct HallPoly *p, char **out);

/**
 * Degree of `p`, or `INT64_MIN` for the zero polynomial (and for NULL).
 */
int64_t hall_poly_degree(const struct HallPoly *p);

/**
 * Evaluates `p` at the decimal integer `t`; the value is written as a
 * decimal string.
 */
enum HallStatus hall_poly_eval(const struct HallPoly *p, const char *t, char **out);

enum HallStatus hall_poly_add(const struct HallPoly *a,
                              const struct HallPoly *b,
                              struct HallPoly **out);

enum HallStatus hall_poly_sub(const struct HallPoly *a,
                              const struct HallPoly *b,
                              struct HallPoly **out);

enum HallStatus hall_poly_mul(const struct HallPoly *a,
                              const struct HallPoly *b,
                              struct HallPoly **out);

/**
 * Exact quotient `a / b`; fails with `NotDivisible` on a nonzero remainder.
 */
enum HallStatus hall_poly_div_exact(const struct HallPoly *a,
                                    const struct HallPoly *b,
                                    struct HallPoly **out);

void hall_poly_free(struct HallPoly *p);

/**
 * Builds the family member for odd `k` in `3..=200`.
 */
enum HallStatus hall_family_build(int64_t k, struct HallFamily **out);

/**
 * Same family member, built from the Pell recurrences instead.
 */
enum HallStatus hall_family_build_via_pell(int64_t k, struct HallFamily **out);

int64_t hall_family_k(const struct HallFamily *f);

enum HallStatus hall_family_to_json(const struct HallFamily *f, char **out);

/**
 * Copy of `x`; free with [`hall_poly_free`].
 */
enum HallStatus hall_family_x(const struct HallFamily *f, struct HallPoly **out);

enum HallStatus hall_family_y(const struct HallFamily *f, struct HallPoly **out);

enum HallStatus hall_family_d(const struct HallFamily *f, struct HallPoly **out);

/**
 * Evaluates the family at the decimal integer `t`.
 */
enum HallStatus hall_family_specialize(const struct HallFamily *f,
                                       const char *t,
                                       struct HallWitness **out);

void hall_family_free(struct HallFamily *f);

/**
 * Builds a witness from decimal `x`, `y`, `d`; fails unless `x >= 1`,
 * `d != 0` and `d = x^3 - y^2`.
 */
enum HallStatus hall_witness_new(const char *x,
                                 const char *y,
                                 const char *d,
                                 struct HallWitness **out);

/**
 * One JSON line: `{"source",...,"x","y","d","ratio"}`.
 */
enum HallStatus hall_witness_to_json(const struct HallWitness *w, char **out);

/**
 * Compares `|d|` with `x^(1/2 + p/q)`: writes -1 (below), 0 (equal) or 1
 * (above).
 */
enum HallStatus hall_witness_compare(const struct HallWitness *w,
                                     uint64_t p,
                                     uint64_t q,
                                     int32_t *out);

void hall_witness_free(struct HallWitness *w);

/**
 * First `n` witnesses from `z^2 - 5w^2 = -1`, as JSON lines.
 */
enum HallStatus hall_danilov_stream_json(uint32_t n, char **out);

/**
 * Runs a verification suite: `corpus`, `danilov-cubic`, `danilov-quartic`
 * or `quartic-k3`. Writes whether it passed and, if `out_json` is not
 * NULL, the reports as JSON.
 */
enum HallStatus hall_verify(const char *target, bool *verified, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HALL_H */
