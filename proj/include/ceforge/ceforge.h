/* C interface to the ceforge engine.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every function returning cf_status leaves a
 * message for cf_last_error() on failure. Strings handed out through char**
 * parameters are heap-allocated and must be released with cf_string_free. */
#ifndef CEFORGE_H
#define CEFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CEFORGE_API __declspec(dllexport)
#else
#define CEFORGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cf_instance cf_instance;
typedef struct cf_ce_system cf_ce_system;

typedef enum cf_status {
  CF_OK = 0,
  CF_FAIL = 1,      /* the check ran and its answer is negative */
  CF_UNDECIDED = 2, /* search budget exhausted */
  CF_ERR_ARGUMENT = 3,

  CF_ERR_BOUND_EXCEEDED = 10,
  CF_ERR_NOT_JOIN_IRREDUCIBLE = 11,
  CF_ERR_NOT_CONVEX = 12,
  CF_ERR_NOT_A_DOWN_SET = 13,
  CF_ERR_NOT_A_POSET = 14,
  CF_ERR_DIMENSION_MISMATCH = 20,
  CF_ERR_NOT_A_DIFFERENTIAL = 21,
  CF_ERR_NOT_A_CHAIN_MAP = 22,
  CF_ERR_NOT_INVERTIBLE = 23,
  CF_ERR_NOT_A_FIELD = 24,
  CF_ERR_NOT_NESTED = 30,
  CF_ERR_HYPOTHESIS_VIOLATED = 31,
  CF_ERR_PRECONDITION_FAILED = 40,
  CF_ERR_LADDER_NOT_COMMUTING = 41,
  CF_ERR_AGREEMENT_FAILURE = 42,
  CF_ERR_CE_ISO_INCONSISTENT = 43,
  CF_ERR_GRADING_MISMATCH = 50,
  CF_ERR_PARSE = 60,
  CF_ERR_VALIDATION = 61,
  CF_ERR_INTERNAL = 99
} cf_status;

CEFORGE_API const char* cf_version(void);
CEFORGE_API const char* cf_status_name(cf_status status);
/* Message of the last failing call on this thread; "" if none. */
CEFORGE_API const char* cf_last_error(void);
CEFORGE_API void cf_string_free(char* s);

/* Instances. With check_invariants = 0 only the structure is checked
 * (used by validation reports); otherwise d*d = 0, filtration, degrees and a
 * declared strict flag are enforced. */
CEFORGE_API cf_status cf_instance_parse(const char* text, int check_invariants, cf_instance** out);
CEFORGE_API cf_status cf_instance_load(const char* path, int check_invariants, cf_instance** out);
CEFORGE_API void cf_instance_free(cf_instance* inst);
CEFORGE_API cf_status cf_instance_serialize(const cf_instance* inst, char** out);
CEFORGE_API size_t cf_instance_element_count(const cf_instance* inst);
CEFORGE_API size_t cf_instance_total_rank(const cf_instance* inst);

/* CF_OK when the instance satisfies its invariants, CF_FAIL otherwise. */
CEFORGE_API cf_status cf_validate(const cf_instance* inst, char** report);
/* Homology of the subquotient on a convex set given as "p,q". */
CEFORGE_API cf_status cf_homology(const cf_instance* inst, const char* convex, char** report);

CEFORGE_API cf_status cf_ce_system_new(const cf_instance* inst, cf_ce_system** out);
CEFORGE_API void cf_ce_system_free(cf_ce_system* sys);
CEFORGE_API cf_status cf_ce_term(const cf_ce_system* sys, const char* alpha, const char* beta, char** report);
/* max_downsets = 0 means no limit; jobs = 0 or 1 runs single-threaded. */
CEFORGE_API cf_status cf_ce_verify(const cf_ce_system* sys, size_t max_downsets, unsigned jobs, char** report);

/* CF_OK if isomorphic, CF_FAIL with a refutation, CF_UNDECIDED if the budget
 * ran out. ce_iso may be NULL; when non-NULL and an isomorphism is found it
 * receives the isomorphism as a ceforge-ce-iso document. */
CEFORGE_API cf_status cf_compare(const cf_instance* c, const cf_instance* a, uint64_t budget, uint64_t seed,
                                 char** report, char** ce_iso);

/* ce_iso_text is either a ceforge-ce-iso document or a ceforge-map document
 * whose induced maps define the CE isomorphism. */
CEFORGE_API cf_status cf_build_iso(const cf_instance* c, const cf_instance* a, const char* ce_iso_text,
                                   uint64_t seed, char** map_text, char** certificate);

/* Report with per-grade ranks followed by the documents a, f, g, h. */
CEFORGE_API cf_status cf_connect(const cf_instance* inst, char** report);

/* mu is "a=0,b=0,c=1". With second == NULL checks the Morse-Smale conditions;
 * otherwise certifies whether the two differentials agree (CF_OK) or not
 * (CF_FAIL). */
CEFORGE_API cf_status cf_morse_smale(const cf_instance* inst, const char* mu, const cf_instance* second,
                                     uint64_t budget, char** report);

#ifdef __cplusplus
}
#endif

#endif /* CEFORGE_H */
