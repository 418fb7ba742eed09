#ifndef QAC_H
#define QAC_H

/* C interface to the annealing-program toolkit: build array search, bound
 * location, and sorting Hamiltonians as QUBOs, write/load them, solve at
 * desk scale, and report resource usage.
 *
 * Conventions:
 *   - Every function returning qac_status leaves a message for the calling
 *     thread in qac_last_error() on failure.
 *   - Strings returned through char** are heap-allocated; release them with
 *     qac_string_free.
 *   - Programs returned through qac_program** are owned by the caller;
 *     release them with qac_program_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qac_status {
  QAC_OK = 0,
  QAC_ERR_INVALID = 2,      /* bad parameters or malformed request */
  QAC_ERR_CAPACITY = 3,     /* problem too large for the requested operation */
  QAC_ERR_INCONSISTENT = 4, /* files or states violate a structural invariant */
  QAC_ERR_IO = 5            /* file read/write/parse failure */
} qac_status;

typedef struct qac_program qac_program;

/* Library version, static storage. */
const char* qac_version(void);

/* Message for the most recent failure on this thread; empty string after a
 * success. Static storage, valid until the next call on the same thread. */
const char* qac_last_error(void);

/* Search over an array of n elements, kv bits each.
 * variant: "summation", "logical_or", or "count".
 * values_csv: comma-separated element values, or NULL for a symbolic array.
 * target: value to search for, or NULL to leave the target symbolic.
 * predicate: multi-criteria spec "offset:width:op:constant[,...]" with op in
 * {eq, gt, lt}, or NULL. Mutually exclusive with target. */
qac_status qac_build_search(size_t n, size_t kv, const char* variant, const char* values_csv,
                            const uint64_t* target, const char* predicate, qac_program** out);

/* Bounding indices of a target in a sorted array: comparator flags per
 * element plus span flags between neighbors. */
qac_status qac_build_bounds(size_t n, size_t kv, const char* values_csv, const uint64_t* target,
                            qac_program** out);

/* Full array sort: permutation mapping, conditional copy, ordering chain. */
qac_status qac_build_sort(size_t n, size_t kv, const char* values_csv, qac_program** out);

/* Loads a .qubo/.varmap.json pair: rebuilds the program from the varmap's
 * build parameters and verifies both files against the rebuild. Returns
 * QAC_ERR_INCONSISTENT when the files do not match the rebuild. */
qac_status qac_program_load(const char* qubo_path, const char* varmap_path, qac_program** out);

/* Writes <out_prefix>.qubo and <out_prefix>.varmap.json atomically. */
qac_status qac_program_write(const qac_program* prog, const char* out_prefix);

qac_status qac_program_qubo_text(const qac_program* prog, char** out);
qac_status qac_program_varmap_json(const qac_program* prog, char** out);

/* Variable/term/degree counts as JSON. */
qac_status qac_resource_report(const qac_program* prog, char** out_json);

/* Solves the program's Hamiltonian under its build-time clamps.
 * options_json (NULL for defaults):
 * {
 *   "mode": "exhaustive" | "sa",
 *   "cap": 64,          exhaustive: ground states to retain
 *   "max_free": 24,     exhaustive: refuse above this many free variables
 *   "seed": 1, "sweeps": 1000, "reads": 100,
 *   "beta_start": 0.05, "beta_end": 12.0,
 *   "clamp": {"vars": {label: bit}, "ints": {name: value}, "flags": {name: bit}},
 *   "classify": false   search only: add per-class minimum energies
 * } */
qac_status qac_solve(const qac_program* prog, const char* options_json, char** out_report_json);

/* Resource sweep over problem sizes ns for one builder kind:
 * "search_sum", "search_or", "bounds", or "sort". Returns CSV. */
qac_status qac_sweep_csv(const char* builder, const size_t* ns, size_t ns_len, size_t kv,
                         char** out_csv);

void qac_string_free(char* s);
void qac_program_free(qac_program* prog);

#ifdef __cplusplus
}
#endif

#endif /* QAC_H */
