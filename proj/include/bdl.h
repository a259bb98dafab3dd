/* bdl: four-valued first-order logic with classical implication, a sequent
 * calculus proof checker, and inconsistency-tolerant query answering over
 * relational databases with a null value.
 *
 * Every entry point returns a status code; on failure bdl_last_error() holds
 * a message for the calling thread. Strings returned through out-parameters
 * are owned by the caller and released with bdl_string_free().
 */
#ifndef BDL_H
#define BDL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values double as CLI exit codes. */
#define BDL_OK 0
#define BDL_INVALID 1 /* an invalid proof */
#define BDL_PARSE_ERROR 2
#define BDL_VALIDATION_ERROR 3
#define BDL_RESOURCE_LIMIT 4

/* Answer modes. */
#define BDL_MODE_PLAIN 0
#define BDL_MODE_CONSISTENT 1
#define BDL_MODE_STRONG 2

/* Proof systems. */
#define BDL_SYSTEM_BD 0
#define BDL_SYSTEM_PBD 1
#define BDL_SYSTEM_FOCL 2
#define BDL_SYSTEM_LP 3
#define BDL_SYSTEM_K3 4

typedef struct bdl_database bdl_database;

const char* bdl_last_error(void);
void bdl_string_free(char* s);

int bdl_database_load(const char* path, bdl_database** out);
int bdl_database_parse(const char* text, bdl_database** out);
void bdl_database_free(bdl_database* db);

/* Ceilings: max_structures bounds the generic model enumeration, max_basis
 * bounds subset enumerations over the fact base (2^max_basis checks),
 * max_additions bounds how many atoms a repair may add. Pass 0 to keep a
 * ceiling unchanged. */
int bdl_database_set_limits(bdl_database* db, uint64_t max_structures,
                            uint32_t max_basis, uint32_t max_additions);

/* report: "consistent\n" or "inconsistent\n" plus conflict and note lines. */
int bdl_database_check(bdl_database* db, int* consistent, char** report);

/* query: either the name of a query declared in the database file, or an
 * inline declaration of the form "name(x1,...,xn) :- <formula>".
 * report: one answer tuple per line (comma-separated constants, sorted by
 * declared constant order). notes: diagnostics to surface separately, or
 * NULL when there are none. */
int bdl_database_answer(bdl_database* db, const char* query, int mode,
                        int include_nulls, char** report, char** notes);

/* report: one repair per line. notes as above. */
int bdl_database_repairs(bdl_database* db, char** report, char** notes);

/* report: the closed formula's truth value in each canonical model of the
 * database's theory, one line per model. */
int bdl_database_eval(bdl_database* db, const char* formula, char** report);

/* Checks the derivation in the file against the chosen system. BDL_OK with
 * report "valid"; BDL_INVALID with report "invalid at step k: reason". */
int bdl_proof_check_file(const char* path, int system, char** report);

#ifdef __cplusplus
}
#endif

#endif /* BDL_H */
