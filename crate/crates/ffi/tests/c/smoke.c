#include <stdio.h>
#include <string.h>

#include "snake_dimers.h"

static int check(int ok, const char *what) {
    if (!ok) {
        fprintf(stderr, "failed: %s (%s)\n", what, sd_last_error());
    }
    return ok ? 0 : 1;
}

int main(void) {
    int failures = 0;
    SdSnake *snake = NULL;
    failures += check(sd_snake_new("RRR", &snake) == SD_STATUS_OK, "build RRR");

    uint64_t count = 0;
    failures += check(sd_snake_count_covers(snake, SD_METHOD_AUTO, 1000000, &count) == SD_STATUS_OK, "count");
    failures += check(count == 61, "RRR has 61 covers");

    char *dual = NULL;
    failures += check(sd_snake_dual_word(snake, &dual) == SD_STATUS_OK, "dual word");
    failures += check(dual != NULL && strcmp(dual, "URU") == 0, "dual of RRR");
    sd_string_free(dual);

    SdLattice *lattice = NULL;
    failures += check(sd_lattice_new(snake, 1000000, &lattice) == SD_STATUS_OK, "lattice");
    failures += check(sd_lattice_len(lattice) == 61, "lattice size");
    sd_lattice_free(lattice);
    sd_snake_free(snake);

    failures += check(sd_snake_new("RXR", &snake) == SD_STATUS_INVALID_WORD, "bad word rejected");
    failures += check(strlen(sd_last_error()) > 0, "error message set");

    SdMatchingGraph *g = NULL;
    char *matchings = NULL;
    failures += check(sd_matching_graph_euler(5, &g) == SD_STATUS_OK, "euler graph");
    failures += check(sd_matching_graph_count(g, &matchings) == SD_STATUS_OK, "matching count");
    failures += check(matchings != NULL && strcmp(matchings, "16") == 0, "16 matchings");
    sd_string_free(matchings);
    sd_matching_graph_free(g);

    if (failures == 0) {
        printf("ok\n");
    }
    return failures == 0 ? 0 : 1;
}
