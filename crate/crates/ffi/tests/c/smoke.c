#include <math.h>
#include <stdio.h>
#include "tbm.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        TbmStatus s_ = (call);                                             \
        if (s_ != TBM_STATUS_OK) {                                         \
            fprintf(stderr, "%s -> %d: %s\n", #call, (int)s_, tbm_last_error()); \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    const char *names[] = {"a", "b", "c"};
    TbmFrame *frame = NULL;
    CHECK(tbm_frame_new(names, 3, &frame));

    /* m({a}) = 0.4, m({a,b}) = 0.3, m({a,b,c}) = 0.3 */
    double masses[8] = {0, 0.4, 0, 0.3, 0, 0, 0, 0.3};
    TbmMass *mass = NULL;
    CHECK(tbm_mass_new(frame, masses, 8, &mass));

    TbmCapacity *bel = NULL;
    CHECK(tbm_capacity_from_mass(mass, &bel));

    double betp[3];
    CHECK(tbm_pignistic(bel, TBM_ROUTE_CLOSED_FORM, false, betp, 3));
    printf("%.6f %.6f %.6f\n", betp[0], betp[1], betp[2]);
    if (fabs(betp[0] - 0.65) > 1e-12 || fabs(betp[1] - 0.25) > 1e-12 || fabs(betp[2] - 0.10) > 1e-12) {
        return 2;
    }

    double small[2];
    if (tbm_pignistic(bel, TBM_ROUTE_AUTO, false, small, 2) != TBM_STATUS_BUFFER_TOO_SMALL) {
        return 3;
    }

    tbm_capacity_free(bel);
    tbm_mass_free(mass);
    tbm_frame_free(frame);
    return 0;
}
