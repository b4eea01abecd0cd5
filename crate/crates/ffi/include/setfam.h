#ifndef SETFAM_H
#define SETFAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SetfamStatus {
  SETFAM_STATUS_OK = 0,
  SETFAM_STATUS_NULL_POINTER = 1,
  SETFAM_STATUS_INVALID_ARGUMENT = 2,
  SETFAM_STATUS_PARSE = 3,
  SETFAM_STATUS_UNSUPPORTED = 4,
  SETFAM_STATUS_TOO_LARGE = 5,
  /**
   * The input does not satisfy the operation's hypothesis.
   */
  SETFAM_STATUS_HYPOTHESIS = 6,
  /**
   * A design or self-check failed.
   */
  SETFAM_STATUS_DESIGN_FAILED = 7,
  /**
   * A buffer was too small; the required length was still reported.
   */
  SETFAM_STATUS_BUFFER_TOO_SMALL = 8,
  SETFAM_STATUS_PANIC = 9,
} SetfamStatus;

typedef enum SetfamAllowedKind {
  SETFAM_ALLOWED_KIND_INTERVAL = 0,
  SETFAM_ALLOWED_KIND_EXPLICIT = 1,
} SetfamAllowedKind;

typedef enum SetfamViolationKind {
  SETFAM_VIOLATION_KIND_NONE = 0,
  SETFAM_VIOLATION_KIND_INTERSECTION_SIZE = 1,
  SETFAM_VIOLATION_KIND_MEMBER_SIZE = 2,
  SETFAM_VIOLATION_KIND_DUPLICATE = 3,
} SetfamViolationKind;

typedef enum SetfamTheorem {
  SETFAM_THEOREM_EKR = 0,
  SETFAM_THEOREM_RCW = 1,
  SETFAM_THEOREM_FRANKL_WILSON = 2,
  SETFAM_THEOREM_SNEVILY = 3,
  SETFAM_THEOREM_THM15 = 4,
  SETFAM_THEOREM_THM16 = 5,
} SetfamTheorem;

typedef enum SetfamSearchStatus {
  SETFAM_SEARCH_STATUS_EXACT = 0,
  SETFAM_SEARCH_STATUS_BUDGET_EXHAUSTED = 1,
} SetfamSearchStatus;

/**
 * Opaque family handle.
 */
typedef struct SetfamFamily SetfamFamily;

/**
 * Opaque search result handle.
 */
typedef struct SetfamSearchResult SetfamSearchResult;

/**
 * Admissibility rule. With `Interval` the allowed intersection sizes are
 * `lmin..=lmax`; with `Explicit` they are the `lset_len` values at `lset`.
 */
typedef struct SetfamConstraint {
  enum SetfamAllowedKind kind;
  size_t lmin;
  size_t lmax;
  const size_t *lset;
  size_t lset_len;
  size_t size_min;
  size_t size_max;
} SetfamConstraint;

typedef struct SetfamValidation {
  bool valid;
  enum SetfamViolationKind kind;
  size_t i;
  size_t j;
} SetfamValidation;

/**
 * Search options. Zero budgets mean unlimited; `seed` may be null.
 */
typedef struct SetfamSearchOptions {
  bool symmetry_breaking;
  bool parallel;
  uint64_t node_budget;
  uint64_t time_budget_ms;
  const struct SetfamFamily *seed;
} SetfamSearchOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread.
 */
const char *setfam_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void setfam_string_free(char *s);

/**
 * Parses the text family format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SetfamStatus setfam_family_parse(const char *text, struct SetfamFamily **out);

/**
 * Builds a family from `count` members whose elements are stored back to
 * back in `elements`, member `i` having `lengths[i]` entries.
 *
 * # Safety
 * `elements` and `lengths` must be readable for the implied lengths.
 */
enum SetfamStatus setfam_family_from_lists(size_t n,
                                           const size_t *elements,
                                           const size_t *lengths,
                                           size_t count,
                                           struct SetfamFamily **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void setfam_family_free(struct SetfamFamily *f);

/**
 * Ground size, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t setfam_family_n(const struct SetfamFamily *f);

/**
 * Member count, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t setfam_family_len(const struct SetfamFamily *f);

/**
 * Copies the elements of member `index` into `buf`. `out_len` receives the
 * member size even when `cap` is too small.
 *
 * # Safety
 * `buf` must be writable for `cap` entries; `out_len` must be writable.
 */
enum SetfamStatus setfam_family_member(const struct SetfamFamily *f,
                                       size_t index,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *out_len);

/**
 * Renders the family in the text format.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum SetfamStatus setfam_family_to_text(const struct SetfamFamily *f, char **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SetfamStatus setfam_projective_plane(uint64_t q, struct SetfamFamily **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SetfamStatus setfam_fano_complement(struct SetfamFamily **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SetfamStatus setfam_paley_biplane(struct SetfamFamily **out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum SetfamStatus setfam_residual(const struct SetfamFamily *f,
                                  size_t block,
                                  struct SetfamFamily **out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum SetfamStatus setfam_steiner_augment(const struct SetfamFamily *f,
                                         uint64_t k,
                                         struct SetfamFamily **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SetfamStatus setfam_d_construction(uint64_t k, uint64_t d, struct SetfamFamily **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SetfamStatus setfam_all_k_subsets(size_t n, size_t k, struct SetfamFamily **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SetfamStatus setfam_star(size_t n, size_t s, struct SetfamFamily **out);

/**
 * # Safety
 * `f` and `c` must be valid; `out` must be writable.
 */
enum SetfamStatus setfam_validate(const struct SetfamFamily *f,
                                  const struct SetfamConstraint *c,
                                  struct SetfamValidation *out);

/**
 * Whether every `t`-subset lies in exactly `lambda` members.
 *
 * # Safety
 * `f` must be a live handle; `out_holds` must be writable.
 */
enum SetfamStatus setfam_verify_design(const struct SetfamFamily *f,
                                       uint64_t t,
                                       uint64_t lambda,
                                       bool *out_holds);

/**
 * Evaluates a bound and writes its JSON report. Parameters the theorem
 * does not take are ignored.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum SetfamStatus setfam_bound_json(enum SetfamTheorem theorem,
                                    uint64_t n,
                                    uint64_t s,
                                    uint64_t k,
                                    char **out_json);

/**
 * Exact maximum admissible family on `[n]`.
 *
 * # Safety
 * `c` must be valid; `options` may be null for defaults; `out` must be
 * writable.
 */
enum SetfamStatus setfam_max_family(size_t n,
                                    const struct SetfamConstraint *c,
                                    const struct SetfamSearchOptions *options,
                                    struct SetfamSearchResult **out);

/**
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void setfam_search_result_free(struct SetfamSearchResult *r);

/**
 * # Safety
 * `r` must be null or a live handle.
 */
size_t setfam_search_result_max_size(const struct SetfamSearchResult *r);

/**
 * # Safety
 * `r` must be null or a live handle.
 */
uint64_t setfam_search_result_nodes(const struct SetfamSearchResult *r);

/**
 * # Safety
 * `r` must be null or a live handle.
 */
uint64_t setfam_search_result_elapsed_ms(const struct SetfamSearchResult *r);

/**
 * Null handles report `BudgetExhausted`.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
enum SetfamSearchStatus setfam_search_result_status(const struct SetfamSearchResult *r);

/**
 * Copies the witness family into a new handle.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum SetfamStatus setfam_search_result_witness(const struct SetfamSearchResult *r,
                                               struct SetfamFamily **out);

/**
 * Triple cover of an intersecting family with no common element and no
 * hitting pair; the triples are returned as a family sorted by mask.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum SetfamStatus setfam_triple_cover(const struct SetfamFamily *f, struct SetfamFamily **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SETFAM_H */
