#include <stdio.h>
#include <string.h>

#include "seifert_covers.h"

static int fail(const char *what) {
    const char *msg = sfs_last_error_message();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    SfsInvariants *inv = NULL;
    if (sfs_invariants_parse("{2;(o1,0);(3,1),(3,1)}", &inv) != SFS_STATUS_OK)
        return fail("parse");

    size_t count = 0;
    if (sfs_epimorphism_count(inv, &count) != SFS_STATUS_OK)
        return fail("count");

    SfsInvariants *cover = NULL;
    if (sfs_double_cover(inv, "h=1,s1=1,s2=1", &cover) != SFS_STATUS_OK)
        return fail("cover");
    char *text = NULL;
    sfs_invariants_to_string(cover, &text);

    bool pass = false;
    if (sfs_verify(inv, "h=1,s1=1,s2=1", &pass, NULL) != SFS_STATUS_OK)
        return fail("verify");

    SfsInvariants *bad = NULL;
    SfsStatus st = sfs_invariants_parse("{0;(o9,1);}", &bad);

    printf("%zu %s %d %d\n", count, text, pass, (int)st);
    sfs_string_free(text);
    sfs_invariants_free(cover);
    sfs_invariants_free(inv);
    return 0;
}
