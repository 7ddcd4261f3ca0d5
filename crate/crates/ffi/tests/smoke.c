#include <stdio.h>
#include "mplrc.h"

int main(void) {
    MplrcBuildArgs args = {0};
    args.q = 7;
    args.r = 2;
    args.delta = 4;
    args.m_codes = 2;
    args.n_blocks = 3;

    MplrcCode *code = NULL;
    if (mplrc_construct("cor1", args, &code) != MPLRC_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", mplrc_last_error_message());
        return 1;
    }
    MplrcReport rep;
    if (mplrc_code_verify(code, &rep) != MPLRC_STATUS_OK) {
        fprintf(stderr, "verify: %s\n", mplrc_last_error_message());
        return 1;
    }
    printf("[%zu,%zu,%zu] %s\n", (size_t)rep.n, (size_t)rep.k, (size_t)rep.d,
           rep.optimal ? "optimal" : "not optimal");

    if (mplrc_construct("nope", args, &code) != MPLRC_STATUS_INVALID_ARGUMENT) {
        return 1;
    }
    mplrc_code_free(code);
    return 0;
}
