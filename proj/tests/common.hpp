#pragma once

#include <string>

#include "ctrs/format.hpp"
#include "ctrs/system.hpp"
#include "ctrs/suite/generators.hpp"

#ifndef CTRS_CORPUS_DIR
#define CTRS_CORPUS_DIR "corpus"
#endif

namespace testing_util {

inline ctrs::RewriteSystem corpus(const std::string& name) {
    return ctrs::load_system(std::string(CTRS_CORPUS_DIR) + "/" + name + ".ctrs");
}
inline ctrs::RewriteSystem golden(const std::string& name) {
    return ctrs::load_system(std::string(CTRS_CORPUS_DIR) + "/golden/" + name + ".ctrs");
}
inline ctrs::Term term(const std::string& text, const ctrs::RewriteSystem& sys) { return ctrs::parse_term(text, sys); }

// oriented systems of the corpus
inline const std::vector<std::string>& oriented_corpus() {
    static const std::vector<std::string> names{"R0", "R1", "R2",  "R3",  "R3p",     "R4",  "R5",  "R6", "R7",
                                                "R8", "R9", "R10", "R10p", "R10quad", "R11", "R12p", "R20"};
    return names;
}

}  // namespace testing_util
