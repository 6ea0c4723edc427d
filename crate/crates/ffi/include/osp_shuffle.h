#ifndef OSP_SHUFFLE_H
#define OSP_SHUFFLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OspStatus {
  OSP_STATUS_OK = 0,
  OSP_STATUS_NULL_POINTER = 1,
  OSP_STATUS_INVALID_UTF8 = 2,
  /*
   Malformed word, weight, root or module text.
   */
  OSP_STATUS_PARSE = 3,
  /*
   Well-formed input outside the domain of the call, e.g. a non-dominant word.
   */
  OSP_STATUS_INVALID_INPUT = 4,
  /*
   An internal consistency check failed.
   */
  OSP_STATUS_MATH_FAILURE = 5,
  OSP_STATUS_PANIC = 6,
} OspStatus;

/*
 Opaque handle to an algebra of fixed rank, with its per-weight caches.
 */
typedef struct OspAlgebra OspAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates the algebra of rank `n >= 1`. Free with [`osp_algebra_free`].

 # Safety
 `out` must be a valid pointer to writable storage.
 */
enum OspStatus osp_algebra_new(uint32_t n, struct OspAlgebra **out);

/*
 # Safety
 `alg` must be null or a handle from [`osp_algebra_new`] not yet freed.
 */
void osp_algebra_free(struct OspAlgebra *alg);

/*
 Rank of the algebra, or 0 for a null handle.

 # Safety
 `alg` must be null or a live handle.
 */
uint32_t osp_algebra_rank(const struct OspAlgebra *alg);

/*
 Shuffle product of two words such as `"(1,2)"`, written as element text.

 # Safety
 `alg` must be a live handle, `left` and `right` nul-terminated strings, `out` writable.
 */
enum OspStatus osp_shuffle_words(const struct OspAlgebra *alg,
                                 const char *left,
                                 const char *right,
                                 char **out);

/*
 Leading coefficient of the dual canonical vector of a dominant word.

 # Safety
 As for [`osp_shuffle_words`].
 */
enum OspStatus osp_kappa(const struct OspAlgebra *alg, const char *w, char **out);

/*
 Dual canonical vector of a dominant word, as element text.

 # Safety
 As for [`osp_shuffle_words`].
 */
enum OspStatus osp_dual_canonical(const struct OspAlgebra *alg, const char *w, char **out);

/*
 Dual PBW vector of a dominant word, as element text.

 # Safety
 As for [`osp_shuffle_words`].
 */
enum OspStatus osp_dual_pbw(const struct OspAlgebra *alg, const char *w, char **out);

/*
 Dominant words, PBW, dual PBW and dual canonical vectors of a weight such as `"1,2"`, as JSON.

 # Safety
 As for [`osp_shuffle_words`].
 */
enum OspStatus osp_weight_bases_json(const struct OspAlgebra *alg, const char *weight, char **out);

/*
 Checks the defining relations on a module given in the module-file JSON format.
 `orientation` is 0 for arrows `i -> i+1` and 1 for the reverse. `passed` receives 1 or 0
 and `report` (if non-null) the text report.

 # Safety
 `module_json` must be a nul-terminated string, `passed` writable, `report` null or writable.
 */
enum OspStatus osp_verify_module(const char *module_json,
                                 uint32_t orientation,
                                 int32_t *passed,
                                 char **report);

/*
 Message for the last failure on this thread, or null. Valid until the next call on this thread.
 */
const char *osp_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void osp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OSP_SHUFFLE_H */
