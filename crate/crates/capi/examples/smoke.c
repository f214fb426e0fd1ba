#include "unising.h"
#include <stdio.h>
#include <assert.h>

int main(void) {
    uint64_t order = 0;
    assert(unising_multiplicative_order(3, 23, &order) == UNISING_STATUS_OK);
    assert(order == 11);

    UnisingVerdict *v = NULL;
    assert(unising_grp_cover(3, 11, NULL, &v) == UNISING_STATUS_OK);
    assert(unising_verdict_covered(v));
    assert(unising_verdict_dimension(v) == 5);
    char *json = NULL;
    assert(unising_verdict_to_json(v, &json) == UNISING_STATUS_OK);
    printf("verdict: %s\n", json);
    unising_string_free(json);
    unising_verdict_free(v);

    UnisingScanConfig cfg = {.workers = 2, .deterministic = true, .force_scan = true,
                             .budget = 0, .strategy = 0, .checkpoint_path = NULL};
    assert(unising_grp_cover(3, 5, &cfg, &v) == UNISING_STATUS_OK);
    assert(!unising_verdict_covered(v));
    size_t len = unising_verdict_witness_len(v);
    assert(len == 4);
    uint64_t w[4];
    assert(unising_verdict_witness(v, w, len) == UNISING_STATUS_OK);
    bool ok = false;
    assert(unising_verify_witness(3, 5, w, len, &ok) == UNISING_STATUS_OK && ok);
    unising_verdict_free(v);

    bool uni = false;
    uint8_t bits[2] = {1, 1};
    assert(unising_gl2_criterion(3, bits, 2, &uni) == UNISING_STATUS_OK && uni);
    printf("C ABI smoke test passed (version %s)\n", unising_version());
    return 0;
}
