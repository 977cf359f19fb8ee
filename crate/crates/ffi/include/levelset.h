#ifndef LEVELSET_H
#define LEVELSET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Result of every fallible call.
 */
typedef enum LsStatus {
  LS_STATUS_OK = 0,
  LS_STATUS_NULL_POINTER = 1,
  LS_STATUS_INVALID_ARGUMENT = 2,
  LS_STATUS_DIMENSION_MISMATCH = 3,
  LS_STATUS_DOMAIN = 4,
  LS_STATUS_INTEGRATION_ABORT = 5,
  LS_STATUS_CONFIG = 6,
  LS_STATUS_IO = 7,
  LS_STATUS_SNAPSHOT = 8,
  LS_STATUS_PANIC = 9,
} LsStatus;

typedef enum LsScheme {
  LS_SCHEME_FIRST = 0,
  LS_SCHEME_ENO2 = 1,
  LS_SCHEME_ENO3 = 2,
  LS_SCHEME_WENO5 = 3,
} LsScheme;

typedef enum LsProblem {
  LS_PROBLEM_ROCKETS = 0,
  LS_PROBLEM_RIGID_ROTATION = 1,
} LsProblem;

/*
 Values on a grid.
 */
typedef struct LsField LsField;

/*
 Cartesian grid.
 */
typedef struct LsGrid LsGrid;

/*
 Checkpoints of a finished solve.
 */
typedef struct LsSolution LsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *ls_last_error(void);

/*
 Creates a grid. `periodic` holds one flag per dimension (nonzero means
 periodic) and may be NULL for none.
 */
enum LsStatus ls_grid_new(size_t dim,
                          const double *mins,
                          const double *maxs,
                          const size_t *counts,
                          const uint8_t *periodic,
                          struct LsGrid **out);

void ls_grid_free(struct LsGrid *grid);

/*
 Number of dimensions, or 0 for a NULL handle.
 */
size_t ls_grid_dim(const struct LsGrid *grid);

/*
 Total node count, or 0 for a NULL handle.
 */
size_t ls_grid_node_count(const struct LsGrid *grid);

/*
 Writes `dim` node counts into `counts`.
 */
enum LsStatus ls_grid_counts(const struct LsGrid *grid, size_t *counts);

/*
 Writes `dim` spacings into `spacings`.
 */
enum LsStatus ls_grid_spacings(const struct LsGrid *grid, double *spacings);

/*
 Field from `len` column-major values; `len` must equal the node count.
 */
enum LsStatus ls_field_from_data(const struct LsGrid *grid,
                                 const double *data,
                                 size_t len,
                                 struct LsField **out);

void ls_field_free(struct LsField *field);

/*
 Number of values, or 0 for a NULL handle.
 */
size_t ls_field_len(const struct LsField *field);

/*
 Copies the values, column-major, into `out`, which holds `len` doubles.
 */
enum LsStatus ls_field_copy_data(const struct LsField *field, double *out, size_t len);

/*
 Signed distance to a sphere (circle in 2-D).
 */
enum LsStatus ls_field_sphere(const struct LsGrid *grid,
                              const double *center,
                              double radius,
                              struct LsField **out);

/*
 Cylinder whose axis runs along every dimension flagged in `ignored`.
 */
enum LsStatus ls_field_cylinder(const struct LsGrid *grid,
                                const uint8_t *ignored,
                                const double *center,
                                double radius,
                                struct LsField **out);

/*
 Axis-aligned box between `lower` and `upper`.
 */
enum LsStatus ls_field_rectangle(const struct LsGrid *grid,
                                 const double *lower,
                                 const double *upper,
                                 struct LsField **out);

/*
 Pointwise minimum.
 */
enum LsStatus ls_field_union(const struct LsField *a,
                             const struct LsField *b,
                             struct LsField **out);

/*
 Pointwise maximum.
 */
enum LsStatus ls_field_intersection(const struct LsField *a,
                                    const struct LsField *b,
                                    struct LsField **out);

/*
 Negation.
 */
enum LsStatus ls_field_complement(const struct LsField *a, struct LsField **out);

/*
 Left and right one-sided derivatives along `dim`.
 */
enum LsStatus ls_upwind(const struct LsField *field,
                        size_t dim,
                        enum LsScheme scheme,
                        struct LsField **out_left,
                        struct LsField **out_right);

enum LsStatus ls_snapshot_write(const char *path_utf8, const struct LsField *field, double time);

/*
 Reads a snapshot whose header must describe `grid`.
 */
enum LsStatus ls_snapshot_read(const char *path_utf8,
                               const struct LsGrid *grid,
                               struct LsField **out_field,
                               double *out_time);

/*
 Solves a built-in problem with its default scheme, third-order
 Runge-Kutta and the default CFL factor.
 */
enum LsStatus ls_solve(enum LsProblem problem,
                       size_t grid_counts,
                       double t0,
                       double tf,
                       size_t n_checkpoints,
                       struct LsSolution **out);

void ls_solution_free(struct LsSolution *solution);

/*
 Number of checkpoints, or 0 for a NULL handle.
 */
size_t ls_solution_checkpoint_count(const struct LsSolution *solution);

/*
 Number of time steps taken, or 0 for a NULL handle.
 */
size_t ls_solution_steps(const struct LsSolution *solution);

/*
 Time and a copy of the field at checkpoint `index`.
 */
enum LsStatus ls_solution_checkpoint(const struct LsSolution *solution,
                                     size_t index,
                                     double *out_time,
                                     struct LsField **out_field);

/*
 Shared handle to the grid a field lives on; free it with `ls_grid_free`.
 */
enum LsStatus ls_field_grid(const struct LsField *field, struct LsGrid **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEVELSET_H */
