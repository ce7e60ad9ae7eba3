/* C interface to tbm-core: credibility functions, Moebius transforms and pignistic probabilities. */

#ifndef TBM_H
#define TBM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum TbmStatus {
  TBM_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  TBM_STATUS_NULL_POINTER = 1,
  /*
   An argument was malformed: bad length, unknown atom, non-finite value.
   */
  TBM_STATUS_INVALID_ARGUMENT = 2,
  /*
   The values violate the axioms of the requested representation.
   */
  TBM_STATUS_INVALID_CAPACITY = 3,
  /*
   Total conflict, or conditioning on an event of probability zero.
   */
  TBM_STATUS_IMPOSSIBLE = 4,
  /*
   The output buffer is shorter than the result.
   */
  TBM_STATUS_BUFFER_TOO_SMALL = 5,
  /*
   A panic was caught at the boundary. This is a bug.
   */
  TBM_STATUS_INTERNAL = 6,
} TbmStatus;

typedef enum TbmCapacityKind {
  TBM_CAPACITY_KIND_BELIEF = 0,
  TBM_CAPACITY_KIND_PLAUSIBILITY = 1,
  TBM_CAPACITY_KIND_PROBABILITY = 2,
  TBM_CAPACITY_KIND_POSSIBILITY = 3,
  TBM_CAPACITY_KIND_NECESSITY = 4,
  TBM_CAPACITY_KIND_GENERIC_MONOTONE = 5,
} TbmCapacityKind;

typedef enum TbmRoute {
  TBM_ROUTE_AUTO = 0,
  TBM_ROUTE_MASS_V = 1,
  TBM_ROUTE_MASS_W = 2,
  TBM_ROUTE_CLOSED_FORM = 3,
} TbmRoute;

typedef enum TbmConditioningMode {
  /*
   Mass of focal sets disjoint from the event stays on the empty set.
   */
  TBM_CONDITIONING_MODE_OPEN = 0,
  /*
   The result is renormalized over non-empty sets.
   */
  TBM_CONDITIONING_MODE_NORMALIZED = 1,
} TbmConditioningMode;

typedef struct TbmCapacity TbmCapacity;

typedef struct TbmFrame TbmFrame;

typedef struct TbmMass TbmMass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null if none.
 The pointer stays valid until the next failing call on the same thread.
 */
const char *tbm_last_error(void);

/*
 Creates a frame from `n` NUL-terminated UTF-8 atom names.

 # Safety
 `names` must point to `n` valid C strings; `out` must be writable.
 */
enum TbmStatus tbm_frame_new(const char *const *names, size_t n, struct TbmFrame **out);

/*
 Creates a frame with atoms `w0 .. w{n-1}`.

 # Safety
 `out` must be writable.
 */
enum TbmStatus tbm_frame_anonymous(size_t n, struct TbmFrame **out);

/*
 Number of atoms, or 0 for a null handle.

 # Safety
 `frame` must be null or a live handle.
 */
size_t tbm_frame_len(const struct TbmFrame *frame);

/*
 Bitmask of the subset with the given atom names.

 # Safety
 `frame` must be a live handle, `names` must point to `n` valid C
 strings, `out` must be writable.
 */
enum TbmStatus tbm_frame_subset(const struct TbmFrame *frame, const char *const *names, size_t n, uint32_t *out);

/*
 # Safety
 `frame` must be null or a handle not yet freed.
 */
void tbm_frame_free(struct TbmFrame *frame);

/*
 Creates basic belief masses from `2^n` values summing to one.
 Negative values are accepted (they arise as Möbius transforms of
 non-belief capacities).

 # Safety
 `frame` must be a live handle, `masses` must hold `len` values, `out`
 must be writable.
 */
enum TbmStatus tbm_mass_new(const struct TbmFrame *frame, const double *masses, size_t len, struct TbmMass **out);

/*
 Copies the `2^n` masses into `out`.

 # Safety
 `mass` must be a live handle and `out` must hold `len` values.
 */
enum TbmStatus tbm_mass_values(const struct TbmMass *mass, double *out, size_t len);

/*
 # Safety
 `mass` must be null or a handle not yet freed.
 */
void tbm_mass_free(struct TbmMass *mass);

/*
 Creates a capacity from `2^n` values, checked against the structural
 axioms (range, empty set, monotonicity).

 # Safety
 `frame` must be a live handle, `values` must hold `len` values, `out`
 must be writable.
 */
enum TbmStatus tbm_capacity_new(const struct TbmFrame *frame, enum TbmCapacityKind kind, const double *values, size_t len, struct TbmCapacity **out);

/*
 Belief function of non-negative masses.

 # Safety
 `mass` must be a live handle and `out` writable.
 */
enum TbmStatus tbm_capacity_from_mass(const struct TbmMass *mass, struct TbmCapacity **out);

/*
 Plausibility function of non-negative masses.

 # Safety
 `mass` must be a live handle and `out` writable.
 */
enum TbmStatus tbm_capacity_plausibility(const struct TbmMass *mass, struct TbmCapacity **out);

/*
 `CoCr(A) = Cr(Ω) − Cr(complement of A)`.

 # Safety
 `cr` must be a live handle and `out` writable.
 */
enum TbmStatus tbm_capacity_dual(const struct TbmCapacity *cr, struct TbmCapacity **out);

/*
 Copies the `2^n` values into `out`.

 # Safety
 `cr` must be a live handle and `out` must hold `len` values.
 */
enum TbmStatus tbm_capacity_values(const struct TbmCapacity *cr, double *out, size_t len);

/*
 Kind tag of a capacity.

 # Safety
 `cr` must be a live handle and `out` writable.
 */
enum TbmStatus tbm_capacity_kind(const struct TbmCapacity *cr, enum TbmCapacityKind *out);

/*
 Number of atoms of the capacity's frame, or 0 for a null handle.

 # Safety
 `cr` must be null or a live handle.
 */
size_t tbm_capacity_len(const struct TbmCapacity *cr);

/*
 # Safety
 `cr` must be null or a handle not yet freed.
 */
void tbm_capacity_free(struct TbmCapacity *cr);

/*
 Möbius transform `v` of the capacity.

 # Safety
 `cr` must be a live handle and `out` writable.
 */
enum TbmStatus tbm_moebius_v(const struct TbmCapacity *cr, struct TbmMass **out);

/*
 Möbius transform `w` of the dual capacity.

 # Safety
 `cr` must be a live handle and `out` writable.
 */
enum TbmStatus tbm_moebius_w(const struct TbmCapacity *cr, struct TbmMass **out);

/*
 Pignistic probability of each atom, written to `out[0..n]`.

 # Safety
 `cr` must be a live handle and `out` must hold `len` values.
 */
enum TbmStatus tbm_pignistic(const struct TbmCapacity *cr, enum TbmRoute route, bool normalize, double *out, size_t len);

/*
 Pignistic probability straight from masses: each mass split equally
 among the atoms of its set.

 # Safety
 `mass` must be a live handle and `out` must hold `len` values.
 */
enum TbmStatus tbm_pignistic_from_mass(const struct TbmMass *mass, bool normalize, double *out, size_t len);

/*
 Transfers each mass to its intersection with `event` (a bitmask).

 # Safety
 `mass` must be a live handle and `out` writable.
 */
enum TbmStatus tbm_condition(const struct TbmMass *mass, uint32_t event, enum TbmConditioningMode mode, struct TbmMass **out);

/*
 `alpha·cr1 + (1 − alpha)·cr2` on a frame of joined atom names.

 # Safety
 `cr1`, `cr2` must be live handles and `out` writable.
 */
enum TbmStatus tbm_alpha_combine(const struct TbmCapacity *cr1, const struct TbmCapacity *cr2, double alpha, struct TbmCapacity **out);

/*
 Expected utility of each act under the pignistic probability.
 `utilities` is row-major, `acts × n`. Writes `acts` values to
 `expected` and the index of the best act (lowest index among ties)
 to `best`.

 # Safety
 `cr` must be a live handle, `utilities` must hold `acts * n` values,
 `expected` must hold `len` values and `best` must be writable.
 */
enum TbmStatus tbm_expected_utilities(const struct TbmCapacity *cr, const double *utilities, size_t acts, bool normalize, double *expected, size_t len, size_t *best);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TBM_H */
