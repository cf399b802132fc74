#ifndef PARTIALCOVER_H
#define PARTIALCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PcAlgorithm {
  PC_ALGORITHM_EPVCBD = 0,
  PC_ALGORITHM_BOUNDED_DEGREE = 1,
  PC_ALGORITHM_BY_L = 2,
  PC_ALGORITHM_FRACTIONAL = 3,
  PC_ALGORITHM_ORACLE = 4,
} PcAlgorithm;

typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_ARGUMENT = 1,
  PC_STATUS_INVALID_UTF8 = 2,
  PC_STATUS_PARSE_ERROR = 3,
  PC_STATUS_INVALID_INSTANCE = 4,
  PC_STATUS_VARIANT_ERROR = 5,
  PC_STATUS_NOT_BIPARTITE = 6,
  PC_STATUS_DEGREE_EXCEEDED = 7,
  PC_STATUS_INPUT_ERROR = 8,
  PC_STATUS_ORACLE_CAP_EXCEEDED = 9,
  PC_STATUS_INTERNAL_ERROR = 10,
  PC_STATUS_PANIC = 11,
} PcStatus;

// A parsed instance.
typedef struct PcInstance PcInstance;

// The outcome of one solver run.
typedef struct PcReport PcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread. The pointer stays valid
// until the next failing call on the same thread; it is never null.
const char *pc_last_error_message(void);

// Parses an instance in the weighted text format and validates it.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum PcStatus pc_instance_parse(const char *text, struct PcInstance **out);

// # Safety
// `inst` must come from [`pc_instance_parse`] and not be freed twice.
void pc_instance_free(struct PcInstance *inst);

// # Safety
// `inst` must be a live instance handle or null.
size_t pc_instance_vertex_count(const struct PcInstance *inst);

// # Safety
// `inst` must be a live instance handle or null.
size_t pc_instance_edge_count(const struct PcInstance *inst);

// Runs one algorithm. `degree` is the bound for
// [`PcAlgorithm::BoundedDegree`]; 0 means the maximum degree of the graph.
// [`PcAlgorithm::Oracle`] uses the default size cap.
//
// # Safety
// `inst` must be a live instance handle and `out` a valid pointer.
enum PcStatus pc_solve(const struct PcInstance *inst,
                       enum PcAlgorithm alg,
                       size_t degree,
                       struct PcReport **out);

// Matching-constrained variant on the instance graph; the budget and
// threshold in the file are ignored in favor of `k1` and `k2`.
//
// # Safety
// `inst` must be a live instance handle and `out` a valid pointer.
enum PcStatus pc_solve_pvcbm(const struct PcInstance *inst,
                             size_t k1,
                             size_t k2,
                             size_t k3,
                             struct PcReport **out);

// # Safety
// `report` must come from a solve call and not be freed twice.
void pc_report_free(struct PcReport *report);

// # Safety
// `report` must be a live report handle or null.
bool pc_report_is_yes(const struct PcReport *report);

// # Safety
// `report` must be a live report handle or null.
uint64_t pc_report_nodes_expanded(const struct PcReport *report);

// # Safety
// `report` must be a live report handle or null.
size_t pc_report_max_depth(const struct PcReport *report);

// Number of integrally chosen vertices in the witness (0 on no).
//
// # Safety
// `report` must be a live report handle or null.
size_t pc_report_witness_len(const struct PcReport *report);

// Copies up to `cap` witness vertex ids (0-based, ascending) into `buf` and
// returns how many were copied.
//
// # Safety
// `report` must be a live report handle and `buf` valid for `cap` writes.
size_t pc_report_witness(const struct PcReport *report, size_t *buf, size_t cap);

// Renders the report as `key=value` lines, or as one JSON object when
// `json` is set. Release the result with [`pc_string_free`]. Returns null
// for a null report.
//
// # Safety
// `report` must be a live report handle or null.
char *pc_report_to_string(const struct PcReport *report, bool json);

// # Safety
// `s` must come from [`pc_report_to_string`] and not be freed twice.
void pc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PARTIALCOVER_H */
