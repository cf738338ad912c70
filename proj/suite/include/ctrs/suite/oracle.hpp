#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>

#include "ctrs/rewrite.hpp"
#include "ctrs/system.hpp"

namespace ctrs::suite {

/**
 * Reference reachability by depth-first search with a best-depth table.
 *
 * Written apart from Engine on purpose: its own matcher, its own condition
 * evaluation (level n uses level n-1 closures of the same step bound) and no
 * sharing of memo tables with the engine.  Only plain rewriting; extra
 * variables must be bound by conditions.
 */
class DfsOracle {
public:
    DfsOracle(RewriteSystem system, int steps, std::size_t term_size);

    /// Terms reachable in at most `steps` steps at `level`, pruned like Engine.
    TermSet reach(const Term& from, int level);
    /// reach() at steps and steps+1 agree.
    bool converged(const Term& from, int level);

private:
    TermSet reach_depth(const Term& from, int level, int steps);
    void dfs(const Term& t, int depth, int level, int steps, std::map<Term, int, TermLess>& best);
    void one_step(const Term& t, int level, std::vector<Term>& out);
    bool conditions(const Rule& r, std::size_t i, std::map<std::string, Term>& s, int level,
                    std::vector<std::map<std::string, Term>>& sols);

    RewriteSystem sys_;
    int steps_;
    std::size_t term_size_;
    std::map<std::pair<int, Term>, TermSet, bool (*)(const std::pair<int, Term>&, const std::pair<int, Term>&)> memo_;
};

/// Naive matcher used by the oracle.
bool oracle_match(const Term& pattern, const Term& subject, std::map<std::string, Term>& s);

}  // namespace ctrs::suite
