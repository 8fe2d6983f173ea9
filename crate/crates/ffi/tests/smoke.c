#include <math.h>
#include <stdio.h>
#include "expclass.h"

int main(void) {
    ExpclassMatrix *m = NULL;
    double g = 0.0, bound = 0.0, norm = 0.0;
    if (expclass_gallery_shift(1.0, 1.0, 10, &m) != EXPCLASS_STATUS_OK) return 1;
    if (expclass_operator_gauge(m, 1.0, 1.0, &g) != EXPCLASS_STATUS_OK || fabs(g - 1.0) > 1e-12) return 2;
    if (expclass_resolvent_norm(m, 0.5, 0.0, &norm) != EXPCLASS_STATUS_OK) return 3;
    if (expclass_resolvent_bound(m, 1.0, 1.0, 0.5, 0.0, &bound) != EXPCLASS_STATUS_OK || norm > bound) return 4;
    if (expclass_matrix_dims(NULL, NULL, NULL) != EXPCLASS_STATUS_NULL_POINTER) return 5;
    expclass_matrix_free(m);
    printf("%s\n", expclass_status_message(EXPCLASS_STATUS_OK));
    return 0;
}
