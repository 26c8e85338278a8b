#include <stdio.h>
#include <string.h>

#include "cathom.h"

static const char *ARROW =
    "{\"objects\":[\"x\",\"y\"],"
    "\"morphisms\":[{\"id\":\"id_x\",\"src\":\"x\",\"tgt\":\"x\"},"
    "{\"id\":\"id_y\",\"src\":\"y\",\"tgt\":\"y\"},"
    "{\"id\":\"f\",\"src\":\"x\",\"tgt\":\"y\"}],"
    "\"identities\":{\"x\":\"id_x\",\"y\":\"id_y\"}}";

int main(void) {
    CathomCategory *c = NULL;
    if (cathom_category_from_json(ARROW, &c) != CATHOM_STATUS_OK) {
        fprintf(stderr, "load: %s\n", cathom_last_error());
        return 1;
    }
    size_t counts[4];
    if (cathom_nerve_counts(c, 3, counts, 4) != CATHOM_STATUS_OK) return 2;
    size_t betti[3];
    if (cathom_betti(c, 3, false, betti, 3) != CATHOM_STATUS_OK) return 3;
    bool ok = false;
    if (cathom_two_coskeletal(c, 3, &ok) != CATHOM_STATUS_OK || !ok) return 4;
    if (cathom_nerve_counts(c, 3, counts, 2) != CATHOM_STATUS_OUT_OF_RANGE) return 5;
    cathom_category_free(c);
    printf("counts %zu %zu %zu %zu betti %zu %zu %zu\n", counts[0], counts[1], counts[2], counts[3],
           betti[0], betti[1], betti[2]);
    return 0;
}
