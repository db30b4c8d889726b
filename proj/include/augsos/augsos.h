/* augsos: exact sums of hermitian squares in rational group rings.
 *
 * C interface. Every object is an opaque handle released with its _free
 * function; every string returned through a char** is JSON (or plain text
 * where noted) owned by the caller and released with augsos_string_free.
 * Functions return AUGSOS_OK, AUGSOS_NEGATIVE for a well-formed question with
 * a negative answer, or an error code; augsos_last_error() then describes the
 * failure for the calling thread.
 */
#ifndef AUGSOS_H
#define AUGSOS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(AUGSOS_BUILDING)
#define AUGSOS_API __attribute__((visibility("default")))
#else
#define AUGSOS_API
#endif

typedef enum augsos_status {
  AUGSOS_OK = 0,
  AUGSOS_NEGATIVE = 1, /* falsified, conditional, not PSD, not an order unit */
  AUGSOS_E_INVALID_ARGUMENT = 2,
  AUGSOS_E_PARSE = 3,
  AUGSOS_E_IO = 4,
  AUGSOS_E_GROUP_MISMATCH = 5,
  AUGSOS_E_SHAPE_MISMATCH = 6,
  AUGSOS_E_BUDGET_EXCEEDED = 7,
  AUGSOS_E_ORDER_UNDECIDED = 8,
  AUGSOS_E_INVALID_GROUP = 9,
  AUGSOS_E_INVALID_WITNESS = 10,
  AUGSOS_E_NOT_IN_AUGMENTATION_IDEAL = 11,
  AUGSOS_E_INVALID_TORSION = 12,
  AUGSOS_E_WITNESS_REQUIRED = 13,
  AUGSOS_E_UNSUPPORTED_MODEL = 14,
  AUGSOS_E_NOT_IN_POWER = 15,
  AUGSOS_E_MALFORMED_CERTIFICATE = 16,
  AUGSOS_E_DIAGONAL_UNCERTIFIED = 17,
  AUGSOS_E_BASIS_TOO_LARGE = 18,
  AUGSOS_E_SEARCH_FAILED = 19,
  AUGSOS_E_NOT_PSD = 20,
  AUGSOS_E_INTERNAL = 21
} augsos_status;

typedef struct augsos_context augsos_context;
typedef struct augsos_group augsos_group;
typedef struct augsos_element augsos_element;
typedef struct augsos_certificate augsos_certificate;

typedef struct augsos_options {
  uint64_t seed;          /* confluence spot checks, random choices */
  int64_t budget;         /* rewrite steps per normalization */
  int64_t order_cutoff;
  int radius;             /* Gram basis radius; -1 picks the default */
  double tol;             /* numeric Gram solver tolerance */
  int64_t max_iter;
  uint64_t denominator_bound;
} augsos_options;

AUGSOS_API void augsos_options_init(augsos_options* options);

AUGSOS_API const char* augsos_version(void);
AUGSOS_API const char* augsos_status_name(augsos_status status);
/* Message for the last failing call on this thread ("" if none). */
AUGSOS_API const char* augsos_last_error(void);
AUGSOS_API void augsos_string_free(char* s);

/* A context owns loading options and shares one group object per distinct
 * definition, so elements read from different files can be combined. */
AUGSOS_API augsos_status augsos_context_new(const augsos_options* options, augsos_context** out);
AUGSOS_API void augsos_context_free(augsos_context* ctx);

/* Groups */
AUGSOS_API augsos_status augsos_group_load(augsos_context* ctx, const char* path, augsos_group** out);
AUGSOS_API augsos_status augsos_group_parse(augsos_context* ctx, const char* json, const char* base_dir,
                                            augsos_group** out);
AUGSOS_API augsos_status augsos_group_json(const augsos_group* group, char** out);
AUGSOS_API void augsos_group_free(augsos_group* group);
/* Loads without rejecting bad witnesses and reports on them. NEGATIVE when a
 * declared witness fails. */
AUGSOS_API augsos_status augsos_group_check(augsos_context* ctx, const char* path, char** report);

/* Ring elements. `fallback` (may be NULL) supplies the group for documents
 * without a "group" field. */
AUGSOS_API augsos_status augsos_element_load(augsos_context* ctx, const char* path, const augsos_group* fallback,
                                             augsos_element** out);
AUGSOS_API augsos_status augsos_element_parse(augsos_context* ctx, const char* json, const char* base_dir,
                                              const augsos_group* fallback, augsos_element** out);
AUGSOS_API augsos_status augsos_element_json(const augsos_element* x, char** out);
AUGSOS_API augsos_status augsos_element_group(const augsos_element* x, augsos_group** out);
AUGSOS_API void augsos_element_free(augsos_element* x);

/* Applies `ops` left to right to x and reports the result: "star", "neg",
 * "mul:PATH", "lmul:PATH", "add:PATH", "sub:PATH", "scale:p/q". */
AUGSOS_API augsos_status augsos_elem_eval(augsos_context* ctx, const augsos_element* x, const char* const* ops,
                                          size_t n_ops, char** report);

/* Certificates */
AUGSOS_API augsos_status augsos_certificate_load(augsos_context* ctx, const char* path, const augsos_group* fallback,
                                                 augsos_certificate** out);
AUGSOS_API augsos_status augsos_certificate_parse(augsos_context* ctx, const char* json, const char* base_dir,
                                                  const augsos_group* fallback, augsos_certificate** out);
AUGSOS_API augsos_status augsos_certificate_json(const augsos_certificate* cert, char** out);
AUGSOS_API void augsos_certificate_free(augsos_certificate* cert);
/* OK when verified, NEGATIVE when falsified or conditional. */
AUGSOS_API augsos_status augsos_certificate_verify(const augsos_certificate* cert, char** report);
/* Lambda as "p/q". */
AUGSOS_API augsos_status augsos_certificate_lambda(const augsos_certificate* cert, char** out);

/* Family */
AUGSOS_API augsos_status augsos_family_box(const augsos_group* group, int n, int closed_form, char** out);
AUGSOS_API augsos_status augsos_family_un(const augsos_element* u, int n, char** out);
/* D-preimage matrix; group_ring != 0 asks for the depth-2 variant over the
 * whole group ring instead of entries in I. */
AUGSOS_API augsos_status augsos_family_dpreimage(const augsos_element* xi, int group_ring, char** out);

/* Builders. Tuples and g are words ("a b", "e"); sign is +1 or -1. */
AUGSOS_API augsos_status augsos_cert_build_lemma21(const augsos_group* group, const char* s, const char* t,
                                                   const char* g, int sign, augsos_certificate** out);
/* base: "gram", "remark" or "obligation"; obligation_r is the Delta multiple
 * recorded by the obligation base ("p/q", NULL for 1). */
AUGSOS_API augsos_status augsos_cert_build_theorem(augsos_context* ctx, const augsos_element* eta, int n,
                                                   const char* base, const char* obligation_r,
                                                   augsos_certificate** out);
/* eta + lambda Delta through the identity matrix as an order unit. */
AUGSOS_API augsos_status augsos_cert_build_delta(const augsos_element* eta, augsos_certificate** out);

/* Gram searches. With order_unit NULL the target itself is certified
 * (NEGATIVE when the attempt fails). */
AUGSOS_API augsos_status augsos_gram_search(augsos_context* ctx, const augsos_element* target,
                                            const augsos_element* order_unit, augsos_certificate** out);
AUGSOS_API augsos_status augsos_gram_gap(augsos_context* ctx, const augsos_group* group, char** lambda,
                                         augsos_certificate** out);

/* Finite-group oracles through the regular representation. */
AUGSOS_API augsos_status augsos_oracle_psd(const augsos_element* f, char** report);
AUGSOS_API augsos_status augsos_oracle_orderunit(const augsos_element* u, char** report);
AUGSOS_API augsos_status augsos_oracle_eigen_gap(const augsos_group* group, double* gap);

/* Augmentation ideal. depth >= 2 gives an idempotence expression, otherwise
 * side is "left" or "right". */
AUGSOS_API augsos_status augsos_aug_decompose(const augsos_element* x, const char* side, int depth, char** out);
AUGSOS_API augsos_status augsos_aug_dims(const augsos_group* group, int n_max, char** out);
AUGSOS_API augsos_status augsos_aug_dimsub(const augsos_group* group, int n, char** out);

#ifdef __cplusplus
}
#endif

#endif /* AUGSOS_H */
