#ifndef LIEBASIS_H
#define LIEBASIS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LbStatus {
  LB_STATUS_OK = 0,
  LB_STATUS_NULL_POINTER = 1,
  LB_STATUS_INVALID_ARGUMENT = 2,
  LB_STATUS_DOMAIN_ERROR = 3,
  // The computation ran but an invariant check failed. Result handles are
  // still returned so the report can be inspected.
  LB_STATUS_INVARIANT_FAILURE = 4,
  LB_STATUS_BUFFER_TOO_SMALL = 5,
  LB_STATUS_INTERNAL = 6,
  LB_STATUS_PANIC = 7,
} LbStatus;

// Factor representation, passed as `int32_t`.
typedef enum LbRepKind {
  LB_REP_KIND_DEFINING = 0,
  LB_REP_KIND_CONJUGATE = 1,
  LB_REP_KIND_ADJOINT = 2,
} LbRepKind;

// Operator set to verify, passed as `int32_t`.
typedef enum LbBasisKind {
  LB_BASIS_KIND_PRODUCT = 0,
  LB_BASIS_KIND_COUPLED = 1,
} LbBasisKind;

typedef struct LbAlgebra LbAlgebra;

typedef struct LbDecomposition LbDecomposition;

typedef struct LbReport LbReport;

// Operator counts for one `n`.
typedef struct LbCounts {
  uint32_t n;
  uint32_t single_ir;
  uint32_t product;
  uint32_t coupled;
  uint32_t difference;
} LbCounts;

// One isotypic component. Unknown values are 0 (dims) or -1 (labels).
typedef struct LbComponent {
  uint32_t total_dim;
  uint32_t irrep_dim;
  uint32_t multiplicity;
  int32_t p;
  int32_t q;
} LbComponent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the calling thread's last error message into `buf`.
//
// Returns the number of bytes needed including the terminating NUL, or 0
// when there is no error. Writes nothing if `len` is too small.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t lb_last_error(char *buf, size_t len);

// Enumerated operator counts for su(n).
//
// # Safety
// `out` must be null or point to a writable `LbCounts`.
enum LbStatus lb_counts(uint32_t n, struct LbCounts *out);

// Build the su(n) generator basis.
//
// # Safety
// `out` must be null or point to a writable handle slot.
enum LbStatus lb_algebra_new(uint32_t n, struct LbAlgebra **out);

// # Safety
// `alg` must be null or a handle from `lb_algebra_new` not yet freed.
void lb_algebra_free(struct LbAlgebra *alg);

// Number of generators, `n² − 1`; 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
uint32_t lb_algebra_generator_count(const struct LbAlgebra *alg);

// Defining dimension `n`; 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
uint32_t lb_algebra_n(const struct LbAlgebra *alg);

// Write generator `index` as row-major real and imaginary parts, `n²`
// entries each.
//
// # Safety
// `re` and `im` must point to `len` writable doubles.
enum LbStatus lb_algebra_generator(const struct LbAlgebra *alg,
                                   uint32_t index,
                                   double *re,
                                   double *im,
                                   size_t len);

// Materialize the product or coupled set on `rep1 ⊗ rep2` and analyse it.
//
// `commute_tol <= 0` selects the default. On `LB_STATUS_OK` or
// `LB_STATUS_INVARIANT_FAILURE` a report handle is stored in `out`.
//
// # Safety
// `out` must be null or point to a writable handle slot.
enum LbStatus lb_verify(uint32_t n,
                        int32_t rep1,
                        int32_t rep2,
                        int32_t basis,
                        bool with_exchange,
                        double commute_tol,
                        struct LbReport **out);

// # Safety
// `report` must be null or a live handle.
bool lb_report_is_complete(const struct LbReport *report);

// # Safety
// `report` must be null or a live handle.
uint32_t lb_report_max_block_dim(const struct LbReport *report);

// # Safety
// `report` must be null or a live handle.
uint32_t lb_report_block_count(const struct LbReport *report);

// Copy the joint-block dimensions (report order) into `dims`.
//
// # Safety
// `dims` must point to `len` writable `uint32_t`.
enum LbStatus lb_report_block_dims(const struct LbReport *report, uint32_t *dims, size_t len);

// Canonical JSON report, NUL-terminated. `needed` receives the size
// including the NUL, also when the buffer is too small.
//
// # Safety
// `buf` must be null or point to `len` writable bytes; `needed` null or writable.
enum LbStatus lb_report_json(const struct LbReport *report, char *buf, size_t len, size_t *needed);

// # Safety
// `report` must be null or a handle from `lb_verify` not yet freed.
void lb_report_free(struct LbReport *report);

// Isotypic decomposition of `rep1 ⊗ rep2`, largest component first.
//
// # Safety
// `out` must be null or point to a writable handle slot.
enum LbStatus lb_decompose(uint32_t n, int32_t rep1, int32_t rep2, struct LbDecomposition **out);

// # Safety
// `d` must be null or a live handle.
uint32_t lb_decomposition_len(const struct LbDecomposition *d);

// # Safety
// `d` must be null or a live handle; `out` null or writable.
enum LbStatus lb_decomposition_component(const struct LbDecomposition *d,
                                         uint32_t index,
                                         struct LbComponent *out);

// Canonical JSON of the decomposition; same buffer protocol as `lb_report_json`.
//
// # Safety
// As for `lb_report_json`.
enum LbStatus lb_decomposition_json(const struct LbDecomposition *d,
                                    char *buf,
                                    size_t len,
                                    size_t *needed);

// # Safety
// `d` must be null or a handle from `lb_decompose` not yet freed.
void lb_decomposition_free(struct LbDecomposition *d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEBASIS_H */
