#include <stdio.h>
#include <string.h>
#include "levelset.h"

#define CHECK(call)                                                     \
    do {                                                                \
        enum LsStatus s_ = (call);                                      \
        if (s_ != LS_STATUS_OK) {                                       \
            fprintf(stderr, "%s failed: %d %s\n", #call, (int)s_,       \
                    ls_last_error());                                   \
            return 1;                                                   \
        }                                                               \
    } while (0)

int main(void) {
    double mins[2] = {-1.0, -1.0}, maxs[2] = {1.0, 1.0};
    size_t counts[2] = {21, 21};
    LsGrid *grid = NULL;
    CHECK(ls_grid_new(2, mins, maxs, counts, NULL, &grid));
    if (ls_grid_node_count(grid) != 441) return 2;

    double center[2] = {0.0, 0.0};
    LsField *circle = NULL;
    CHECK(ls_field_sphere(grid, center, 0.5, &circle));
    double values[441];
    CHECK(ls_field_copy_data(circle, values, 441));
    /* node (10, 10) is the origin */
    if (values[10 + 21 * 10] != -0.5) return 3;

    LsField *left = NULL, *right = NULL;
    CHECK(ls_upwind(circle, 0, LS_SCHEME_WENO5, &left, &right));

    if (ls_grid_new(2, mins, maxs, counts, NULL, NULL) != LS_STATUS_NULL_POINTER) return 4;
    if (ls_last_error() == NULL || strstr(ls_last_error(), "null") == NULL) return 5;

    LsSolution *sol = NULL;
    CHECK(ls_solve(LS_PROBLEM_RIGID_ROTATION, 21, 0.0, 0.0, 3, &sol));
    if (ls_solution_checkpoint_count(sol) != 1) return 6;

    ls_solution_free(sol);
    ls_field_free(left);
    ls_field_free(right);
    ls_field_free(circle);
    ls_grid_free(grid);
    printf("ok\n");
    return 0;
}
