#ifndef AQL_H
#define AQL_H

/* C interface to the affine quiver laboratory. All functions return AQL_OK or
 * an error code; aql_last_error() describes the most recent failure on the
 * calling thread. Strings returned through out-parameters are heap-allocated
 * and must be released with aql_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define AQL_OK 0
#define AQL_ERR_VALIDATION 1
#define AQL_ERR_BUDGET 2
#define AQL_ERR_INTERNAL 3

typedef struct aql_quiver aql_quiver;

const char* aql_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* aql_last_error(void);

void aql_string_free(char* s);

/* Quiver JSON schema:
 * {"vertices":["v0",...],"arrows":[{"id":"a","src":"v0","dst":"v1"},...]} */
int aql_quiver_parse(const char* json_text, aql_quiver** out);
void aql_quiver_free(aql_quiver* q);
int aql_quiver_canonical_json(const aql_quiver* q, char** out);
int aql_quiver_vertex_count(const aql_quiver* q, int* out);
int aql_quiver_arrow_count(const aql_quiver* q, int* out);

/* Bilinear and quadratic forms on dimension vectors of length n. */
int aql_euler_form(const aql_quiver* q, const long long* alpha, const long long* beta,
                   size_t n, long long* out);
int aql_symmetrized_form(const aql_quiver* q, const long long* alpha,
                         const long long* beta, size_t n, long long* out);
int aql_tits_form(const aql_quiver* q, const long long* alpha, size_t n, long long* out);

/* Runs one reporting command. params_json is the command's canonical
 * parameter record (JSON object). cache_dir may be NULL or empty to disable
 * the on-disk cache; jobs >= 1 bounds worker threads. The rendered report is
 * returned through out_payload. */
int aql_execute_task(const char* command, const char* quiver_json,
                     const char* params_json, const char* cache_dir, int jobs,
                     char** out_payload);

/* Stable content digest of (command, params, quiver, library version). */
int aql_task_digest(const char* command, const char* quiver_json,
                    const char* params_json, char** out_digest);

#ifdef __cplusplus
}
#endif

#endif /* AQL_H */
