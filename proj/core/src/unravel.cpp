#include "ctrs/unravel.hpp"

#include <algorithm>
#include <cctype>

namespace ctrs {

namespace {

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a)
        if (b.count(x)) return false;
    return true;
}

Term u_term(const std::string& sym, std::vector<Term> head, const std::vector<std::string>& vars) {
    for (const auto& x : vars) head.push_back(Term::var(x));
    return Term::app(sym, std::move(head));
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    return out;
}

void require_deterministic(const RewriteSystem& system, const char* what) {
    if (system.flavor != Flavor::Oriented)
        throw DomainError(std::string(what) + " needs an oriented system");
    for (const auto& r : system.rules)
        if (!classify_rule(r, system).deterministic)
            throw DomainError(std::string(what) + ": rule " + r.label + " is not deterministic");
}

// Output skeleton: copy metadata, then reserve the new symbols.
struct Builder {
    RewriteSystem out;
    Signature sig;

    explicit Builder(const RewriteSystem& in) : sig(in.signature()) {
        out.variables = in.variables;
        out.flavor = Flavor::Oriented;
        out.extended = in.extended;
        out.origin = in.origin;
        out.generated = in.generated;
    }

    void claim(const std::string& sym) {
        if (sig.count(sym) && !out.generated.count(sym))
            throw DomainError("generated symbol " + sym + " clashes with the input signature");
        out.generated.insert(sym);
    }

    void add(const Rule& r) {
        for (const auto& x : r.vars())
            if (!out.is_variable(x)) out.add_variable(x);
        out.rules.push_back(r);
    }
};

}  // namespace

std::string u_symbol(const std::string& label, std::size_t i) {
    return "U_" + sanitize(label) + "_" + std::to_string(i);
}

std::string u_symbol(const std::string& label) { return "U_" + sanitize(label); }

UnravelPlan make_plan(const Rule& rule, const VarOrder& order) {
    UnravelPlan p;
    p.label = rule.label;
    for (std::size_t i = 1; i <= rule.conds.size(); ++i) {
        UnravelPlan::Step s;
        s.x = order.sort(x_set(rule, i));
        s.y = order.sort(y_set(rule, i));
        s.z = order.sort(z_set(rule, i));
        s.symbol = u_symbol(rule.label, i);
        p.steps.push_back(std::move(s));
    }
    return p;
}

std::vector<UnravelPlan> make_plans(const RewriteSystem& system) {
    VarOrder order(system.variables);
    std::vector<UnravelPlan> out;
    for (const auto& r : system.rules)
        if (r.conditional()) out.push_back(make_plan(r, order));
    return out;
}

std::vector<Rule> unravel_rule(const Rule& rule, Unraveling kind, const VarOrder& order) {
    if (!rule.conditional()) return {rule};
    const UnravelPlan plan = make_plan(rule, order);
    const std::size_t k = rule.conds.size();
    auto vec = [&](std::size_t i) -> const std::vector<std::string>& {
        const auto& s = plan.steps[i - 1];
        return kind == Unraveling::U ? s.x : s.z;
    };
    auto sym = [&](std::size_t i) { return plan.steps[i - 1].symbol; };

    std::vector<Rule> out;
    auto push = [&](Term l, Term r) {
        Rule nr;
        nr.label = rule.label + "/" + std::to_string(out.size() + 1);
        nr.lhs = std::move(l);
        nr.rhs = std::move(r);
        out.push_back(std::move(nr));
    };
    push(rule.lhs, u_term(sym(1), {rule.conds[0].lhs}, vec(1)));
    for (std::size_t i = 1; i < k; ++i)
        push(u_term(sym(i), {rule.conds[i - 1].rhs}, vec(i)), u_term(sym(i + 1), {rule.conds[i].lhs}, vec(i + 1)));
    push(u_term(sym(k), {rule.conds[k - 1].rhs}, vec(k)), rule.rhs);
    return out;
}

RewriteSystem unravel(const RewriteSystem& system, Unraveling kind) {
    require_deterministic(system, kind == Unraveling::U ? "U" : "Uopt");
    Builder b(system);
    VarOrder order(system.variables);
    for (const auto& r : system.rules) {
        for (std::size_t i = 1; i <= r.conds.size(); ++i) b.claim(u_symbol(r.label, i));
        for (auto& nr : unravel_rule(r, kind, order)) b.add(nr);
    }
    b.out.signature();
    return b.out;
}

RewriteSystem unravel_U(const RewriteSystem& system) { return unravel(system, Unraveling::U); }
RewriteSystem unravel_Uopt(const RewriteSystem& system) { return unravel(system, Unraveling::Uopt); }

RewriteSystem unravel_UJ(const RewriteSystem& system, bool rhs_vars) {
    if (system.flavor != Flavor::Join) throw DomainError("UJ needs a join system");
    Builder b(system);
    VarOrder order(system.variables);
    for (const auto& r : system.rules) {
        if (!r.conditional()) {
            b.add(r);
            continue;
        }
        const std::string sym = u_symbol(r.label);
        b.claim(sym);
        const auto keep = order.sort(var_set(rhs_vars ? r.rhs : r.lhs));
        std::vector<Term> first, second;
        std::set<std::string> taken = r.vars();
        taken.insert(system.variables.begin(), system.variables.end());
        NameSupply names(taken);
        for (const auto& c : r.conds) {
            first.push_back(c.lhs);
            first.push_back(c.rhs);
            Term x = Term::var(names.next("x"));
            second.push_back(x);
            second.push_back(x);
        }
        b.add(Rule{r.label + "/1", r.lhs, u_term(sym, first, keep), {}});
        b.add(Rule{r.label + "/2", u_term(sym, second, keep), r.rhs, {}});
    }
    b.out.signature();
    return b.out;
}

RewriteSystem unravel_UN(const RewriteSystem& system, bool rhs_vars, bool require_normal) {
    if (system.flavor != Flavor::Oriented) throw DomainError("UN needs an oriented system");
    for (const auto& r : system.rules)
        if (require_normal && !classify_rule(r, system).normal)
            throw DomainError("UN: rule " + r.label + " is not normal");
    Builder b(system);
    VarOrder order(system.variables);
    for (const auto& r : system.rules) {
        if (!r.conditional()) {
            b.add(r);
            continue;
        }
        const std::string sym = u_symbol(r.label);
        b.claim(sym);
        const auto keep = order.sort(var_set(rhs_vars ? r.rhs : r.lhs));
        std::vector<Term> ss, ts;
        for (const auto& c : r.conds) {
            ss.push_back(c.lhs);
            ts.push_back(c.rhs);
        }
        b.add(Rule{r.label + "/1", r.lhs, u_term(sym, ss, keep), {}});
        b.add(Rule{r.label + "/2", u_term(sym, ts, keep), r.rhs, {}});
    }
    b.out.signature();
    return b.out;
}

// ---------------------------------------------------------------- ultra-properties

const char* to_string(UltraProperty p) {
    switch (p) {
        case UltraProperty::LL: return "LL";
        case UltraProperty::RL: return "RL";
        case UltraProperty::NE: return "NE";
        case UltraProperty::NonLV: return "non-LV";
        case UltraProperty::NonRV: return "non-RV";
    }
    return "?";
}

const char* to_string(Unraveling u) { return u == Unraveling::U ? "U" : "Uopt"; }

namespace {

bool plain(const Rule& r, UltraProperty p) {
    switch (p) {
        case UltraProperty::LL: return is_linear(r.lhs);
        case UltraProperty::RL: return is_linear(r.rhs);
        case UltraProperty::NE: return subset(var_set(r.lhs), var_set(r.rhs));
        case UltraProperty::NonLV: return !r.lhs.is_var();
        case UltraProperty::NonRV: return !r.rhs.is_var();
    }
    return false;
}

}  // namespace

bool ultra_direct(const Rule& rule, UltraProperty p, Unraveling kind, const VarOrder& order) {
    for (const auto& r : unravel_rule(rule, kind, order))
        if (!plain(r, p)) return false;
    return true;
}

bool ultra_syntactic(const Rule& rule, UltraProperty p, Unraveling kind) {
    const std::size_t k = rule.conds.size();
    const auto& cs = rule.conds;
    switch (p) {
        case UltraProperty::NonLV: return !rule.lhs.is_var();
        case UltraProperty::NonRV: return !rule.rhs.is_var();
        case UltraProperty::LL:
            // same characterization for both unravelings
            if (!is_linear(rule.lhs)) return false;
            for (std::size_t i = 1; i <= k; ++i)
                if (!is_linear(cs[i - 1].rhs) || !disjoint(var_set(cs[i - 1].rhs), x_set(rule, i))) return false;
            return true;
        case UltraProperty::RL:
            if (!is_linear(rule.rhs)) return false;
            for (std::size_t i = 1; i <= k; ++i) {
                const Term& s = cs[i - 1].lhs;
                if (kind == Unraveling::U) {
                    if (!s.ground()) return false;
                } else if (!is_linear(s) || !disjoint(var_set(s), y_set(rule, i))) {
                    return false;
                }
            }
            return true;
        case UltraProperty::NE: {
            if (kind == Unraveling::U) {
                std::set<std::string> v = var_set(rule.lhs);
                for (const auto& c : cs) collect_vars(c.rhs, v);
                return subset(v, var_set(rule.rhs));
            }
            std::set<std::string> later = var_set(rule.rhs);  // Var(r, s_{i+1}, ..., s_k)
            for (std::size_t i = k; i >= 1; --i) {
                if (!subset(var_set(cs[i - 1].rhs), later)) return false;
                collect_vars(cs[i - 1].lhs, later);
            }
            return subset(var_set(rule.lhs), later);
        }
    }
    return false;
}

bool ultra_check(const Rule& rule, UltraProperty p, UltraMethod method, Unraveling kind, const VarOrder& order) {
    return method == UltraMethod::Direct ? ultra_direct(rule, p, kind, order) : ultra_syntactic(rule, p, kind);
}

bool ultra_check(const RewriteSystem& system, UltraProperty p, UltraMethod method, Unraveling kind) {
    VarOrder order(system.variables);
    for (const auto& r : system.rules)
        if (!ultra_check(r, p, method, kind, order)) return false;
    return true;
}

}  // namespace ctrs
