#include "ctrs/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace ctrs {

Policy Policy::context_sensitive(std::map<std::string, std::set<int>> mu) {
    Policy p;
    p.restriction = Restriction::ContextSensitive;
    p.mu = std::move(mu);
    return p;
}

Policy Policy::membership(std::set<std::string> marked) {
    Policy p;
    p.restriction = Restriction::Membership;
    p.marked = std::move(marked);
    return p;
}

std::vector<Term> ground_terms(const Signature& sig, int depth, std::size_t cap) {
    std::vector<Term> level;
    for (const auto& [f, n] : sig)
        if (n == 0) level.push_back(Term::app(f));
    TermSet all(level.begin(), level.end());
    for (int d = 1; d <= depth; ++d) {
        std::vector<Term> prev(all.begin(), all.end());
        for (const auto& [f, n] : sig) {
            if (n == 0) continue;
            std::vector<std::size_t> idx(n, 0);
            if (prev.empty()) break;
            for (;;) {
                std::vector<Term> args;
                for (int i = 0; i < n; ++i) args.push_back(prev[idx[i]]);
                all.insert(Term::app(f, std::move(args)));
                if (all.size() >= cap) return {all.begin(), all.end()};
                int k = n - 1;
                while (k >= 0 && ++idx[k] == prev.size()) idx[k--] = 0;
                if (k < 0) break;
            }
        }
    }
    return {all.begin(), all.end()};
}

std::optional<Derivation> Closure::derivation_to(const Term& t) const {
    auto it = index.find(t);
    if (it == index.end()) return std::nullopt;
    std::vector<Step> rev;
    for (std::size_t i = it->second; i != 0; i = back[i].parent) rev.push_back(back[i].step);
    Derivation d;
    d.start = terms.front();
    d.steps.assign(rev.rbegin(), rev.rend());
    return d;
}

bool EvClosure::contains_term(const Term& t) const {
    return std::any_of(states.begin(), states.end(), [&](const EvState& s) { return s.term == t; });
}

std::optional<Derivation> EvClosure::derivation_to(const Term& t) const {
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].term != t) continue;
        std::vector<Step> rev;
        for (std::size_t i = k; i != 0; i = back[i].parent) rev.push_back(back[i].step);
        Derivation d;
        d.start = start;
        d.ev_safe = true;
        d.basic0 = basic0;
        d.steps.assign(rev.rbegin(), rev.rend());
        return d;
    }
    return std::nullopt;
}

BasicSet function_positions(const Term& t) {
    auto ps = positions(t, PosKind::Function);
    return {ps.begin(), ps.end()};
}

BasicSet next_basic(const BasicSet& basic, const Position& p, const Rule& rule) {
    BasicSet out;
    for (const auto& q : basic)
        if (!is_prefix(p, q)) out.insert(q);
    for (const auto& q : positions(rule.rhs, PosKind::Function)) out.insert(concat(p, q));
    const auto lvars = positions(rule.lhs, PosKind::Variable);
    const auto rvars = positions(rule.rhs, PosKind::Variable);
    for (const auto& pl : lvars) {
        const Position base = concat(p, pl);
        const std::string& x = subterm_at(rule.lhs, pl).name();
        for (const auto& q : basic) {
            if (!is_prefix(base, q)) continue;
            Position rest(q.begin() + static_cast<std::ptrdiff_t>(base.size()), q.end());
            for (const auto& pr : rvars)
                if (subterm_at(rule.rhs, pr).name() == x) out.insert(concat(concat(p, pr), rest));
        }
    }
    return out;
}

// ---------------------------------------------------------------- Engine

namespace {

struct Flags {
    bool ev = false;
    bool nested = false;
};

struct MemoKey {
    int level;
    int steps;
    Term term;
    bool operator==(const MemoKey& o) const { return level == o.level && steps == o.steps && term == o.term; }
};
struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
        return k.term.hash() ^ (static_cast<std::size_t>(k.level) * 0x9e3779b97f4a7c15ULL) ^
               (static_cast<std::size_t>(k.steps) << 20);
    }
};

void post_order(const Term& t, Position& cur, std::vector<Position>& out) {
    for (std::size_t i = 0; i < t.arity(); ++i) {
        cur.push_back(static_cast<int>(i + 1));
        post_order(t.args()[i], cur, out);
        cur.pop_back();
    }
    out.push_back(cur);
}

}  // namespace

struct Engine::Impl {
    RewriteSystem sys;
    Bounds bounds;
    Policy policy;
    std::vector<Term> universe;
    std::set<std::string> marked;
    bool var_lhs = false;
    std::unordered_map<MemoKey, std::shared_ptr<const Closure>, MemoHash> memo;
    std::size_t explored = 0;

    bool allowed(const Term& t, const Position& p) const {
        switch (policy.restriction) {
            case Policy::Restriction::None: return true;
            case Policy::Restriction::ContextSensitive: {
                const Term* node = &t;
                for (int i : p) {
                    auto it = policy.mu.find(node->name());
                    if (it != policy.mu.end() && !it->second.count(i)) return false;
                    node = &node->arg(static_cast<std::size_t>(i));
                }
                return true;
            }
            case Policy::Restriction::Membership: {
                const Term& r = subterm_at(t, p);
                if (r.is_var()) return true;
                for (const auto& a : r.args())
                    if (contains_symbol(a, marked)) return false;
                return true;
            }
        }
        return true;
    }

    template <class F>
    void enumerate(const std::vector<std::string>& xs, std::size_t i, Substitution& s, Flags& fl, F&& f) {
        if (i == xs.size()) {
            f(s);
            return;
        }
        fl.ev = true;
        for (const auto& u : universe) {
            s[xs[i]] = u;
            enumerate(xs, i + 1, s, fl, f);
        }
        s.erase(xs[i]);
    }

    static std::vector<std::string> unbound(const Term& t, const Substitution& s) {
        std::vector<std::string> out;
        for (const auto& x : vars_in_order(t))
            if (!s.count(x)) out.push_back(x);
        return out;
    }

    std::shared_ptr<const Closure> closure_memo(const Term& t, int level) {
        MemoKey k{level, bounds.steps, t};
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        auto c = std::make_shared<const Closure>(run_reach(t, level, bounds.steps));
        memo.emplace(std::move(k), c);
        return c;
    }

    void solve(const Rule& r, std::size_t i, const Substitution& s, int level, Flags& fl,
               std::vector<Substitution>& out) {
        if (i == r.conds.size()) {
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
            return;
        }
        const Condition& c = r.conds[i];
        Substitution work = s;
        if (sys.flavor == Flavor::Oriented) {
            enumerate(unbound(c.lhs, s), 0, work, fl, [&](Substitution& si) {
                auto cl = closure_memo(substitute(c.lhs, si), level);
                if (!cl->exhaustive() || cl->nested_incomplete) fl.nested = true;
                if (cl->ev_enumerated) fl.ev = true;
                for (const auto& u : cl->terms) {
                    Substitution ext = si;
                    if (match_into(c.rhs, u, ext)) solve(r, i + 1, ext, level, fl, out);
                }
            });
        } else {
            std::vector<std::string> xs = unbound(c.lhs, s);
            for (const auto& x : unbound(c.rhs, s))
                if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
            enumerate(xs, 0, work, fl, [&](Substitution& si) {
                if (join(substitute(c.lhs, si), substitute(c.rhs, si), level, fl)) solve(r, i + 1, si, level, fl, out);
            });
        }
    }

    bool join(const Term& a, const Term& b, int level, Flags& fl) {
        if (a == b) return true;
        auto ca = closure_memo(a, level);
        auto cb = closure_memo(b, level);
        for (const auto* c : {ca.get(), cb.get()}) {
            if (!c->exhaustive() || c->nested_incomplete) fl.nested = true;
            if (c->ev_enumerated) fl.ev = true;
        }
        for (const auto& u : ca->terms)
            if (cb->contains(u)) return true;
        return false;
    }

    void steps_at(const Term& t, const Position& p, int level, Flags& fl, std::vector<Step>& out,
                  bool first_rule_only = false) {
        if (level < 1) return;
        const Term& redex = subterm_at(t, p);
        for (const auto& r : sys.rules) {
            auto m = match(r.lhs, redex);
            if (!m) continue;
            std::vector<Substitution> sols;
            if (r.conditional())
                solve(r, 0, *m, level - 1, fl, sols);
            else
                sols.push_back(*m);
            std::size_t before = out.size();
            for (auto& s : sols) {
                Substitution work = s;
                std::vector<std::string> free = unbound(r.rhs, s);
                enumerate(free, 0, work, fl, [&](Substitution& sf) {
                    Step st;
                    st.pos = p;
                    st.rule = r.label;
                    st.subst = sf;
                    st.result = replace_at(t, p, substitute(r.rhs, sf));
                    out.push_back(std::move(st));
                });
            }
            if (first_rule_only && out.size() > before) return;
        }
    }

    std::vector<Position> candidate_positions(const Term& t, bool post) const {
        std::vector<Position> ps;
        if (post) {
            Position cur;
            post_order(t, cur, ps);
        } else {
            ps = positions(t, PosKind::All);
        }
        std::vector<Position> out;
        for (auto& p : ps) {
            if (!var_lhs && subterm_at(t, p).is_var()) continue;
            if (allowed(t, p)) out.push_back(std::move(p));
        }
        return out;
    }

    std::vector<Step> succ(const Term& t, int level, Flags& fl) {
        std::vector<Step> out;
        ++explored;
        if (policy.strategy == Policy::Strategy::Full) {
            for (const auto& p : candidate_positions(t, false)) steps_at(t, p, level, fl, out);
            return out;
        }
        const bool top = policy.strategy == Policy::Strategy::LeftmostInnermostTop;
        for (const auto& p : candidate_positions(t, true)) {
            steps_at(t, p, level, fl, out, top);
            if (!out.empty()) return out;
        }
        return out;
    }

    Closure run_reach(const Term& from, int level, int steps, const std::function<bool(const Term&)>* stop = nullptr) {
        Closure c;
        c.terms.push_back(from);
        c.index.emplace(from, 0);
        c.back.push_back({0, {}});
        std::vector<std::size_t> frontier{0};
        Flags fl;
        auto expand = [&](std::size_t idx, std::vector<std::size_t>* next) -> bool {
            bool fresh_found = false;
            const Term t = c.terms[idx];
            for (auto& st : succ(t, level, fl)) {
                if (st.result.size() > bounds.term_size) {
                    c.size_pruned = true;
                    continue;
                }
                if (c.index.count(st.result)) continue;
                fresh_found = true;
                if (!next) continue;
                if (c.terms.size() >= bounds.max_states) {
                    c.state_capped = true;
                    continue;
                }
                c.index.emplace(st.result, c.terms.size());
                c.terms.push_back(st.result);
                c.back.push_back({idx, std::move(st)});
                next->push_back(c.terms.size() - 1);
                if (stop && (*stop)(c.terms.back())) {
                    c.stopped = true;
                    return fresh_found;
                }
            }
            return fresh_found;
        };
        for (int d = 0; d < steps && !frontier.empty() && !c.stopped; ++d) {
            std::vector<std::size_t> next;
            for (auto idx : frontier) {
                expand(idx, &next);
                if (c.stopped) break;
            }
            frontier = std::move(next);
        }
        if (c.stopped) {
            c.ev_enumerated = fl.ev;
            c.nested_incomplete = fl.nested;
            return c;
        }
        bool open = false;
        for (auto idx : frontier)
            if (expand(idx, nullptr)) {
                open = true;
                break;
            }
        c.converged = !open;
        c.ev_enumerated = fl.ev;
        c.nested_incomplete = fl.nested;
        return c;
    }
};

Engine::Engine(RewriteSystem system, Bounds bounds, Policy policy, std::optional<std::vector<Term>> universe)
    : impl_(std::make_unique<Impl>()) {
    impl_->sys = std::move(system);
    impl_->bounds = bounds;
    impl_->policy = std::move(policy);
    impl_->universe = universe ? std::move(*universe) : ground_terms(impl_->sys.signature(), bounds.ev_depth);
    impl_->marked = impl_->policy.marked.empty() ? impl_->sys.generated : impl_->policy.marked;
    for (const auto& r : impl_->sys.rules)
        if (r.lhs.is_var()) impl_->var_lhs = true;
}

Engine::~Engine() = default;

const RewriteSystem& Engine::system() const { return impl_->sys; }
const Bounds& Engine::bounds() const { return impl_->bounds; }
const Policy& Engine::policy() const { return impl_->policy; }
const std::vector<Term>& Engine::universe() const { return impl_->universe; }
std::size_t Engine::explored() const { return impl_->explored; }

std::vector<Step> Engine::successors(const Term& t) { return successors(t, impl_->bounds.level); }

std::vector<Step> Engine::successors(const Term& t, int level) {
    Flags fl;
    return impl_->succ(t, level, fl);
}

std::vector<Step> Engine::successors_at(const Term& t, const Position& p, int level) {
    std::vector<Step> out;
    if (!impl_->allowed(t, p)) return out;
    Flags fl;
    impl_->steps_at(t, p, level, fl, out);
    return out;
}

bool Engine::position_allowed(const Term& t, const Position& p) const { return impl_->allowed(t, p); }

std::optional<Position> Engine::leftmost_innermost(const Term& t, int level) {
    Flags fl;
    for (const auto& p : impl_->candidate_positions(t, true)) {
        std::vector<Step> out;
        impl_->steps_at(t, p, level, fl, out, true);
        if (!out.empty()) return p;
    }
    return std::nullopt;
}

Closure Engine::reach(const Term& from) { return reach(from, impl_->bounds.level, impl_->bounds.steps); }

Closure Engine::reach(const Term& from, int level, int steps) { return impl_->run_reach(from, level, steps); }

Closure Engine::reach_until(const Term& from, const std::function<bool(const Term&)>& stop) {
    return impl_->run_reach(from, impl_->bounds.level, impl_->bounds.steps, &stop);
}

bool Engine::joinable(const Term& s, const Term& t, int level) {
    Flags fl;
    return impl_->join(s, t, level, fl);
}

std::vector<Term> Engine::parallel_successors(const Term& t) {
    std::vector<Term> out;
    TermHashSet seen;
    auto add = [&](const Term& u) {
        if (seen.insert(u).second) out.push_back(u);
    };
    add(t);
    if (!t.is_var() && t.arity() > 0) {
        std::vector<std::vector<Term>> per;
        for (const auto& a : t.args()) per.push_back(parallel_successors(a));
        std::vector<std::size_t> idx(per.size(), 0);
        for (;;) {
            std::vector<Term> args;
            for (std::size_t i = 0; i < per.size(); ++i) args.push_back(per[i][idx[i]]);
            add(Term::app(t.name(), std::move(args)));
            std::size_t k = per.size();
            while (k > 0 && ++idx[k - 1] == per[k - 1].size()) idx[--k] = 0;
            if (k == 0) break;
        }
    }
    for (const auto& st : successors_at(t, {}, impl_->bounds.level)) add(st.result);
    return out;
}

std::vector<Step> Engine::ev_safe_successors(const EvState& state) {
    std::vector<Step> out;
    Flags fl;
    for (const auto& p : state.basic) {
        if (!has_position(state.term, p) || !impl_->allowed(state.term, p)) continue;
        std::vector<Step> here;
        impl_->steps_at(state.term, p, impl_->bounds.level, fl, here);
        for (auto& st : here) {
            st.basic = next_basic(state.basic, p, *impl_->sys.find(st.rule));
            out.push_back(std::move(st));
        }
    }
    return out;
}

EvClosure Engine::ev_safe_reach(const Term& from, const BasicSet& basic0) {
    EvClosure c;
    c.start = from;
    c.basic0 = basic0;
    c.states.push_back({from, basic0});
    c.back.push_back({0, {}});
    TermMap<std::vector<std::size_t>> index;
    index[from].push_back(0);
    auto known = [&](const Term& t, const BasicSet& b) {
        auto it = index.find(t);
        if (it == index.end()) return false;
        for (auto i : it->second)
            if (c.states[i].basic == b) return true;
        return false;
    };
    std::vector<std::size_t> frontier{0};
    auto expand = [&](std::size_t idx, std::vector<std::size_t>* next) {
        bool fresh = false;
        const EvState s = c.states[idx];
        Flags fl;
        for (const auto& p : s.basic) {
            if (!has_position(s.term, p) || !impl_->allowed(s.term, p)) continue;
            std::vector<Step> here;
            impl_->steps_at(s.term, p, impl_->bounds.level, fl, here);
            for (auto& st : here) {
                st.basic = next_basic(s.basic, p, *impl_->sys.find(st.rule));
                if (st.result.size() > impl_->bounds.term_size) {
                    c.size_pruned = true;
                    continue;
                }
                if (known(st.result, st.basic)) continue;
                fresh = true;
                if (!next) continue;
                if (c.states.size() >= impl_->bounds.max_states) {
                    c.state_capped = true;
                    continue;
                }
                index[st.result].push_back(c.states.size());
                c.states.push_back({st.result, st.basic});
                c.back.push_back({idx, std::move(st)});
                next->push_back(c.states.size() - 1);
            }
        }
        if (fl.ev) c.ev_enumerated = true;
        return fresh;
    };
    for (int d = 0; d < impl_->bounds.steps && !frontier.empty(); ++d) {
        std::vector<std::size_t> next;
        for (auto idx : frontier) expand(idx, &next);
        frontier = std::move(next);
    }
    bool open = false;
    for (auto idx : frontier)
        if (expand(idx, nullptr)) {
            open = true;
            break;
        }
    c.converged = !open;
    return c;
}

VerifyResult Engine::verify(const Derivation& d) {
    auto fail = [](int i, std::string msg) {
        VerifyResult r;
        r.ok = false;
        r.failed_step = i;
        r.message = std::move(msg);
        return r;
    };
    Term cur = d.start;
    BasicSet basic = d.basic0;
    const int level = impl_->bounds.level;
    if (d.ev_safe) {
        auto fp = function_positions(cur);
        for (const auto& q : basic) {
            if (!fp.count(q)) return fail(-1, "initial basic set is not within the function positions");
            if (!q.empty() && !basic.count(Position(q.begin(), q.end() - 1)))
                return fail(-1, "initial basic set is not prefix-closed");
        }
    }
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const Step& st = d.steps[i];
        const int si = static_cast<int>(i);
        const Rule* r = impl_->sys.find(st.rule);
        if (!r) return fail(si, "unknown rule " + st.rule);
        if (!has_position(cur, st.pos)) return fail(si, "position " + position_str(st.pos) + " not in term");
        if (!impl_->allowed(cur, st.pos)) return fail(si, "position " + position_str(st.pos) + " is restricted");
        if (d.ev_safe && !basic.count(st.pos)) return fail(si, "redex position is not basic");
        for (const auto& x : r->vars())
            if (!st.subst.count(x)) return fail(si, "substitution misses variable " + x);
        if (substitute(r->lhs, st.subst) != subterm_at(cur, st.pos)) return fail(si, "redex does not match lhs");
        Term next = replace_at(cur, st.pos, substitute(r->rhs, st.subst));
        if (next != st.result) return fail(si, "result term differs");
        if (r->conditional()) {
            if (level < 1) return fail(si, "conditional step at level 0");
            for (const auto& c : r->conds) {
                Term a = substitute(c.lhs, st.subst), b = substitute(c.rhs, st.subst);
                bool ok = impl_->sys.flavor == Flavor::Oriented ? impl_->closure_memo(a, level - 1)->contains(b)
                                                                : joinable(a, b, level - 1);
                if (!ok) return fail(si, "condition " + a.str() + " == " + b.str() + " not certified within bounds");
            }
        }
        if (impl_->policy.strategy != Policy::Strategy::Full) {
            auto li = leftmost_innermost(cur, level);
            if (!li || *li != st.pos) return fail(si, "not the leftmost-innermost redex");
            if (impl_->policy.strategy == Policy::Strategy::LeftmostInnermostTop) {
                std::vector<Step> first;
                Flags fl;
                impl_->steps_at(cur, st.pos, level, fl, first, true);
                if (first.empty() || first.front().rule != st.rule) return fail(si, "not the topmost applicable rule");
            }
        }
        if (d.ev_safe) {
            BasicSet nb = next_basic(basic, st.pos, *r);
            if (nb != st.basic) return fail(si, "basic set differs from the recurrence");
            basic = std::move(nb);
        }
        cur = std::move(next);
    }
    return {};
}

// ---------------------------------------------------------------- wrappers

std::vector<Step> trs_successors(const RewriteSystem& system, const Term& t, const Policy& policy,
                                 const std::vector<Term>& universe) {
    if (system.conditional()) throw DomainError("trs_successors: system is conditional");
    Engine e(system, Bounds{}, policy, universe);
    return e.successors(t);
}

std::vector<Step> ctrs_successors(const RewriteSystem& system, const Term& t, const Bounds& bounds,
                                  bool demand_complete) {
    if (demand_complete && bounds.level == 0)
        throw DomainError("ctrs_successors: level 0 cannot certify any conditional step");
    Engine e(system, bounds);
    return e.successors(t);
}

Closure reachable(const RewriteSystem& system, const Term& from, const Bounds& bounds, const Policy& policy) {
    Engine e(system, bounds, policy);
    return e.reach(from);
}

std::vector<Term> parallel_successors(const RewriteSystem& system, const Term& t) {
    Engine e(system);
    return e.parallel_successors(t);
}

VerifyResult verify_derivation(const Derivation& d, const RewriteSystem& system, const Policy& policy,
                               const Bounds& bounds) {
    Engine e(system, bounds, policy);
    return e.verify(d);
}

}  // namespace ctrs
