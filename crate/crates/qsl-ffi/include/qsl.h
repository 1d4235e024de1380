#ifndef QSL_H
#define QSL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum QslStatus {
  Ok = 0,
  NullPointer = 1,
  InvalidUtf8 = 2,
  ParseError = 3,
  ModelError = 4,
  SearchError = 5,
  ProofRejected = 6,
  Unacceptable = 7,
  InvalidArgument = 8,
} QslStatus;

/**
 * Verdict codes for validity and deduction queries.
 */
typedef enum QslVerdict {
  ValidUpToBound = 0,
  Countermodel = 1,
  Unknown = 2,
} QslVerdict;

typedef struct QslFormula QslFormula;

typedef struct QslModel QslModel;

typedef struct QslSignature QslSignature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the last error message recorded on this thread, or null.
 * The caller owns the string.
 */
char *qsl_last_error(void);

/**
 * Releases a string returned by this API.
 *
 * # Safety
 * `s` must come from this API and not have been freed already.
 */
void qsl_string_free(char *s);

struct QslSignature *qsl_signature_new(void);

/**
 * # Safety
 * `sig` must be a live handle from `qsl_signature_new`.
 */
void qsl_signature_free(struct QslSignature *sig);

/**
 * # Safety
 * `sig` must be a live signature handle; `name` a NUL-terminated string.
 */
enum QslStatus qsl_signature_add_atom(struct QslSignature *sig, const char *name);

/**
 * Declares `a` and `b` as orthocomplement partners.
 *
 * # Safety
 * `sig` must be a live signature handle; `a`, `b` NUL-terminated strings.
 */
enum QslStatus qsl_signature_add_perp(struct QslSignature *sig, const char *a, const char *b);

/**
 * Parses surface syntax. With `auto_register` nonzero, unknown kets are
 * added to the signature; otherwise they are rejected.
 *
 * # Safety
 * `sig` must be a live signature handle, `text` a NUL-terminated
 * string, `out` a valid location for the new handle.
 */
enum QslStatus qsl_formula_parse(const char *text,
                                 struct QslSignature *sig,
                                 bool auto_register,
                                 struct QslFormula **out);

/**
 * # Safety
 * `f` must be a live formula handle.
 */
void qsl_formula_free(struct QslFormula *f);

/**
 * Fully parenthesized surface text; caller owns the string.
 *
 * # Safety
 * `f` must be a live formula handle.
 */
char *qsl_formula_render(const struct QslFormula *f);

/**
 * # Safety
 * `f` must be a live formula handle.
 */
bool qsl_formula_is_basic(const struct QslFormula *f);

/**
 * Loads a model from its JSON file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string, `out` a valid location.
 */
enum QslStatus qsl_model_from_json(const char *json, struct QslModel **out);

/**
 * # Safety
 * `m` must be a live model handle.
 */
void qsl_model_free(struct QslModel *m);

/**
 * # Safety
 * `m` must be a live model handle.
 */
char *qsl_model_to_json(const struct QslModel *m);

/**
 * Checks the acceptability filter (and orthogonality when the model
 * enables it).
 *
 * # Safety
 * `m` must be a live model handle.
 */
enum QslStatus qsl_model_check_acceptability(const struct QslModel *m);

/**
 * Evaluates a formula at a named world.
 *
 * # Safety
 * All handles must be live; `world` NUL-terminated; `out` valid.
 */
enum QslStatus qsl_model_eval(const struct QslModel *m,
                              const char *world,
                              const struct QslFormula *f,
                              bool *out);

/**
 * Bounded validity check. `class_code`: 0=K 1=T 2=S4 3=S5. On a
 * countermodel verdict, `out_model` (when non-null) receives the
 * witness model and `out_world` the falsifying world name.
 *
 * # Safety
 * `f` and `sig` must be live handles; output pointers valid or null.
 */
enum QslStatus qsl_check_validity(const struct QslFormula *f,
                                  const struct QslSignature *sig,
                                  uintptr_t max_worlds,
                                  uint32_t class_code,
                                  bool orthogonality,
                                  enum QslVerdict *out_verdict,
                                  struct QslModel **out_model,
                                  char **out_world);

/**
 * Checks a proof script in the JSON file format. On rejection,
 * `out_bad_line` (when non-null) receives the first bad line number.
 *
 * # Safety
 * `json` must be NUL-terminated; `out_bad_line` valid or null.
 */
enum QslStatus qsl_check_proof_json(const char *json, uintptr_t *out_bad_line);

/**
 * Decides the quantum deduction relation. `out_answer` receives
 * 0=yes, 1=no, 2=unknown.
 *
 * # Safety
 * `gamma` must point to `gamma_len` live formula handles; `alpha` and
 * `sig` must be live; `out_answer` valid.
 */
enum QslStatus qsl_quantum_derives(const struct QslFormula *const *gamma,
                                   uintptr_t gamma_len,
                                   const struct QslFormula *alpha,
                                   const struct QslSignature *sig,
                                   uintptr_t max_worlds,
                                   uint32_t class_code,
                                   bool orthogonality,
                                   uint32_t *out_answer);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QSL_H */
