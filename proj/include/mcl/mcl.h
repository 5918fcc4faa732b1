#ifndef MCL_MCL_H
#define MCL_MCL_H

/*
 * C API for the modular multi-concept lexicographic closure reasoner.
 *
 * A knowledge base is an opaque handle created from text in the .kb grammar.
 * Every call reports success through an mcl_status code; structured results
 * are returned as JSON strings that the caller releases with
 * mcl_string_free(). When a call fails and out_error is non-NULL it receives
 * a human-readable message (also released with mcl_string_free()).
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mcl_kb mcl_kb;

typedef enum mcl_status {
    MCL_OK = 0,
    MCL_E_PARSE = 1,          /* bad knowledge base or query text */
    MCL_E_ARGUMENT = 2,       /* null handle or malformed argument */
    MCL_E_IO = 3,             /* file not readable */
    MCL_E_UNKNOWN_MODULE = 4, /* module name not in the knowledge base */
    MCL_E_ATOM_CAP = 5,       /* too many signature atoms to enumerate */
    MCL_E_RESOURCE = 6,       /* tableau node budget exhausted */
    MCL_E_INCONSISTENT = 7,   /* strict axioms plus assertions have no model */
    MCL_E_QUERY = 8,          /* query shape does not fit the mode */
    MCL_E_INTERNAL = 9
} mcl_status;

typedef enum mcl_answer {
    MCL_ANSWER_ENTAILED = 0,
    MCL_ANSWER_NOT_ENTAILED = 1,
    /* mclt mode only: no compliant model exists, the query holds vacuously */
    MCL_ANSWER_VACUOUS = 2
} mcl_answer;

/* Library version string, statically allocated. */
const char* mcl_version(void);

/* Releases any string returned through an out parameter. NULL is a no-op. */
void mcl_string_free(char* s);

mcl_status mcl_kb_from_string(const char* text, mcl_kb** out_kb, char** out_error);
mcl_status mcl_kb_from_file(const char* path, mcl_kb** out_kb, char** out_error);
void mcl_kb_free(mcl_kb* kb);

/* Zero keeps the current value. Defaults: 20 atoms, 100000 tableau nodes. */
void mcl_kb_set_limits(mcl_kb* kb, uint32_t max_atoms, uint64_t max_tableau_nodes);

/* Classical consistency plus structural diagnostics. */
mcl_status mcl_kb_check(const mcl_kb* kb, int* out_consistent, char** out_json, char** out_error);

/* Rational-closure ranks of every named concept, module subject and default. */
mcl_status mcl_kb_rank_table(const mcl_kb* kb, char** out_json, char** out_error);

/*
 * Answers a query. mode is one of "mcl", "mclt", "classical" or
 * "module=<name>". Defeasible modes expect "T(C) <= D."; classical mode
 * expects "C <= D.", "A(a)." or "r(a,b).".
 */
mcl_status mcl_kb_entail(const mcl_kb* kb, const char* query, const char* mode, mcl_answer* out_answer,
                         char** out_json, char** out_error);

/*
 * Dumps the canonical domain built for the knowledge base (and the optional
 * query): atoms, types, per-module violation vectors, the global order on
 * violation profiles and the minimal types per module subject.
 */
mcl_status mcl_kb_model(const mcl_kb* kb, const char* query_or_null, char** out_json, char** out_error);

/*
 * Compares the engine against the brute-force propositional oracle on a
 * role-free knowledge base: the given queries (each "T(C) <= D.") plus
 * `random_queries` seeded random ones. out_disagreements receives the number
 * of queries the two sides answered differently (rank-table mismatches count
 * as one extra disagreement).
 */
mcl_status mcl_kb_oracle_compare(const mcl_kb* kb, const char* const* queries, uint32_t query_count,
                                 uint32_t random_queries, uint64_t seed, uint32_t* out_disagreements,
                                 char** out_json, char** out_error);

#ifdef __cplusplus
}
#endif

#endif /* MCL_MCL_H */
