#include "ctrs/suite/generators.hpp"

#include <algorithm>

#include "ctrs/unravel.hpp"

namespace ctrs::suite {

namespace {

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::string> bound_vars(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

}  // namespace

Term random_term(Rng& rng, const GenShape& shape, const std::vector<std::string>& vars, int depth) {
    bool leaf = depth == 0 || pick(rng, 0, 3) == 0;
    if (leaf) {
        std::vector<std::pair<std::string, int>> consts;
        for (const auto& s : shape.symbols)
            if (s.second == 0) consts.push_back(s);
        int n = static_cast<int>(vars.size() + consts.size());
        int i = pick(rng, 0, n - 1);
        if (i < static_cast<int>(vars.size())) return Term::var(vars[static_cast<std::size_t>(i)]);
        return Term::app(consts[static_cast<std::size_t>(i) - vars.size()].first);
    }
    const auto& [f, n] = shape.symbols[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(shape.symbols.size()) - 1))];
    std::vector<Term> args;
    for (int i = 0; i < n; ++i) args.push_back(random_term(rng, shape, vars, depth - 1));
    return Term::app(f, std::move(args));
}

Rule random_deterministic_rule(Rng& rng, const GenShape& shape, const std::string& label) {
    Rule r;
    r.label = label;
    std::vector<std::pair<std::string, int>> fs;
    for (const auto& s : shape.symbols)
        if (s.second > 0) fs.push_back(s);
    const auto& [root, arity] = fs[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(fs.size()) - 1))];
    std::vector<std::string> lvars(shape.variables.begin(), shape.variables.begin() + 3);
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, shape, lvars, shape.max_depth - 1));
    r.lhs = Term::app(root, std::move(args));

    std::set<std::string> known = var_set(r.lhs);
    int k = pick(rng, 0, shape.max_conditions);
    std::size_t fresh = 3;
    for (int i = 0; i < k; ++i) {
        Condition c;
        c.lhs = random_term(rng, shape, bound_vars(known), shape.max_depth);
        std::vector<std::string> tv = bound_vars(known);
        if (fresh < shape.variables.size() && pick(rng, 0, 1) == 0) tv.push_back(shape.variables[fresh++]);
        // favour new variables in targets so that extra variables actually occur
        if (fresh < shape.variables.size() && pick(rng, 0, 2) == 0) tv = {shape.variables[fresh++]};
        c.rhs = random_term(rng, shape, tv, shape.max_depth);
        collect_vars(c.rhs, known);
        r.conds.push_back(std::move(c));
    }
    r.rhs = random_term(rng, shape, bound_vars(known), shape.max_depth);
    return r;
}

RewriteSystem random_uopt_ne_system(Rng& rng, const GenShape& shape) {
    RewriteSystem sys;
    sys.variables = shape.variables;
    int n = pick(rng, 1, 3);
    while (static_cast<int>(sys.rules.size()) < n) {
        Rule r = random_deterministic_rule(rng, shape, "rho_" + std::to_string(sys.rules.size() + 1));
        if (!r.conditional()) continue;
        if (!ultra_syntactic(r, UltraProperty::NE, Unraveling::Uopt)) continue;
        sys.rules.push_back(std::move(r));
    }
    return sys;
}

}  // namespace ctrs::suite
