#include "ctrs/suite/oracle.hpp"

namespace ctrs::suite {

namespace {

bool key_less(const std::pair<int, Term>& a, const std::pair<int, Term>& b) {
    if (a.first != b.first) return a.first < b.first;
    return compare(a.second, b.second) < 0;
}

Term inst(const Term& t, const std::map<std::string, Term>& s) {
    if (t.is_var()) {
        auto it = s.find(t.name());
        return it == s.end() ? t : it->second;
    }
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(inst(a, s));
    return Term::app(t.name(), std::move(args));
}

void rewrite_inside(const Term& t, const std::function<void(const Term&, const std::function<Term(const Term&)>&)>& at) {
    at(t, [](const Term& u) { return u; });
    for (std::size_t i = 0; i < t.arity(); ++i) {
        rewrite_inside(t.args()[i], [&](const Term& sub, const std::function<Term(const Term&)>& plug) {
            at(sub, [&, i](const Term& u) {
                std::vector<Term> args = t.args();
                args[i] = plug(u);
                return Term::app(t.name(), std::move(args));
            });
        });
    }
}

}  // namespace

bool oracle_match(const Term& pattern, const Term& subject, std::map<std::string, Term>& s) {
    if (pattern.is_var()) {
        auto it = s.find(pattern.name());
        if (it == s.end()) {
            s.emplace(pattern.name(), subject);
            return true;
        }
        return it->second == subject;
    }
    if (subject.is_var() || subject.name() != pattern.name() || subject.arity() != pattern.arity()) return false;
    for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!oracle_match(pattern.args()[i], subject.args()[i], s)) return false;
    return true;
}

DfsOracle::DfsOracle(RewriteSystem system, int steps, std::size_t term_size)
    : sys_(std::move(system)), steps_(steps), term_size_(term_size), memo_(key_less) {}

bool DfsOracle::conditions(const Rule& r, std::size_t i, std::map<std::string, Term>& s, int level,
                           std::vector<std::map<std::string, Term>>& sols) {
    if (i == r.conds.size()) {
        sols.push_back(s);
        return true;
    }
    const auto& c = r.conds[i];
    Term lhs = inst(c.lhs, s);
    if (sys_.flavor == Flavor::Oriented) {
        for (const auto& u : reach(lhs, level)) {
            auto ext = s;
            if (oracle_match(c.rhs, u, ext)) conditions(r, i + 1, ext, level, sols);
        }
        return true;
    }
    Term rhs = inst(c.rhs, s);
    if (lhs == rhs) return conditions(r, i + 1, s, level, sols);
    TermSet a = reach(lhs, level);
    for (const auto& u : reach(rhs, level))
        if (a.count(u)) return conditions(r, i + 1, s, level, sols);
    return false;
}

void DfsOracle::one_step(const Term& t, int level, std::vector<Term>& out) {
    if (level < 1) return;
    rewrite_inside(t, [&](const Term& sub, const std::function<Term(const Term&)>& plug) {
        if (sub.is_var()) return;
        for (const auto& r : sys_.rules) {
            std::map<std::string, Term> s;
            if (!oracle_match(r.lhs, sub, s)) continue;
            std::vector<std::map<std::string, Term>> sols;
            if (r.conditional())
                conditions(r, 0, s, level - 1, sols);
            else
                sols.push_back(s);
            for (const auto& sol : sols) out.push_back(plug(inst(r.rhs, sol)));
        }
    });
}

void DfsOracle::dfs(const Term& t, int depth, int level, int steps, std::map<Term, int, TermLess>& best) {
    auto it = best.find(t);
    if (it != best.end() && it->second <= depth) return;
    best[t] = depth;
    if (depth == steps) return;
    std::vector<Term> next;
    one_step(t, level, next);
    for (const auto& u : next)
        if (u.size() <= term_size_) dfs(u, depth + 1, level, steps, best);
}

TermSet DfsOracle::reach_depth(const Term& from, int level, int steps) {
    std::map<Term, int, TermLess> best;
    dfs(from, 0, level, steps, best);
    TermSet out;
    for (const auto& [t, d] : best) out.insert(t);
    return out;
}

TermSet DfsOracle::reach(const Term& from, int level) {
    auto key = std::make_pair(level, from);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    TermSet s = reach_depth(from, level, steps_);
    memo_.emplace(key, s);
    return s;
}

bool DfsOracle::converged(const Term& from, int level) {
    return reach(from, level) == reach_depth(from, level, steps_ + 1);
}

}  // namespace ctrs::suite
