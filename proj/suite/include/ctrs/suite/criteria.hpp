#pragma once

#include <string>
#include <vector>

namespace ctrs::suite {

struct Outcome {
    int id = 0;
    std::string title;
    bool pass = false;
    /// Deterministic: no timings, no addresses.
    std::string detail;
    double seconds = 0;
};

struct SuiteConfig {
    std::string corpus_dir;
    /// Wall-time budget for criteria 1-12 together (criterion 13).
    double budget_seconds = 300;
};

inline constexpr int kCriteria = 13;

std::string criterion_title(int id);
/// Runs one of 1..12.  Criterion 13 needs the others, see run_all().
Outcome run_criterion(int id, const SuiteConfig& cfg);
/// 1..12, then 13: a second pass of 1..12 must reproduce every detail and the
/// first pass must fit in the budget.
std::vector<Outcome> run_all(const SuiteConfig& cfg);
/// "criterion  4 PASS  counterexample replays: ..."
std::string format_outcome(const Outcome& o);

}  // namespace ctrs::suite
