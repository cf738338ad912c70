#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "ctrs/suite/criteria.hpp"

#ifndef CTRS_CORPUS_DIR
#define CTRS_CORPUS_DIR "corpus"
#endif

int main(int argc, char** argv) {
    ctrs::suite::SuiteConfig cfg;
    cfg.corpus_dir = argc > 1 ? argv[1] : CTRS_CORPUS_DIR;
    if (const char* env = std::getenv("CTRS_CORPUS")) cfg.corpus_dir = env;
    bool all = true;
    double total = 0;
    for (const auto& o : ctrs::suite::run_all(cfg)) {
        std::cout << ctrs::suite::format_outcome(o) << std::endl;
        std::fprintf(stderr, "  criterion %d took %.2f s\n", o.id, o.seconds);
        all = all && o.pass;
        total += o.seconds;
    }
    std::fprintf(stderr, "total %.1f s\n", total);
    return all ? 0 : 1;
}
