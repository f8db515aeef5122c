#include <stdio.h>
#include <string.h>

#include "acx.h"

static const char *EXAMPLE =
    "{\"r\":2,\"c\":1,\"n\":[2,1,1],\"m\":0,\"l\":[[2,1],[2],[3]],"
    "\"A\":[[\"-1\",\"1\",\"0\"],[\"-1\",\"0\",\"1\"]],\"D\":[[-1,-2,1,2]]}";

int main(void) {
    AcxArrangement *handle = NULL;
    if (acx_arrangement_from_json(EXAMPLE, &handle) != ACX_STATUS_OK) {
        fprintf(stderr, "parse failed: %s\n", acx_last_error());
        return 1;
    }
    bool valid = false;
    if (acx_arrangement_validate(handle, &valid) != ACX_STATUS_OK || !valid) {
        fprintf(stderr, "validation failed\n");
        return 1;
    }
    uint64_t index = 0;
    if (acx_gorenstein_index(handle, ACX_METHOD_BOTH, &index) != ACX_STATUS_OK) {
        fprintf(stderr, "index failed: %s\n", acx_last_error());
        return 1;
    }
    char *report = NULL;
    if (acx_report_json(handle, ACX_REPORT_INFO, &report) != ACX_STATUS_OK || strstr(report, "\"fano\":true") == NULL) {
        fprintf(stderr, "info report failed\n");
        return 1;
    }
    acx_string_free(report);
    acx_arrangement_free(handle);

    if (acx_arrangement_from_json("{\"r\":", &handle) != ACX_STATUS_INVALID_INPUT) {
        fprintf(stderr, "truncated input accepted\n");
        return 1;
    }
    printf("gorenstein index %llu\n", (unsigned long long)index);
    return index == 12 ? 0 : 1;
}
