#include "ctrs/homo.hpp"

#include <algorithm>

#include "ctrs/unravel.hpp"

namespace ctrs {

std::string hvar(std::size_t i) { return "x" + std::to_string(i); }

namespace {

Term canonical_app(const std::string& sym, std::size_t first, std::size_t n) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < n; ++i) args.push_back(Term::var(hvar(first + i)));
    return Term::app(sym, std::move(args));
}

std::set<std::string> original_symbols(const RewriteSystem& s) {
    std::set<std::string> out;
    for (const auto& [f, n] : s.signature())
        if (!s.generated.count(f)) out.insert(f);
    return out;
}

void check_free(const RewriteSystem& s, const std::string& sym, const char* what) {
    if (s.signature().count(sym)) throw DomainError(std::string(what) + ": symbol " + sym + " is already in use");
    if (s.is_variable(sym)) throw DomainError(std::string(what) + ": " + sym + " is declared as a variable");
}

void require_join(const RewriteSystem& s, const char* what) {
    if (s.flavor != Flavor::Join) throw DomainError(std::string(what) + ": hypothesis 'join' fails");
}

void require_normal(const RewriteSystem& s, const char* what) {
    for (const auto& r : s.rules)
        if (!classify_rule(r, s).normal)
            throw DomainError(std::string(what) + ": hypothesis 'normal' fails at " + r.label);
}

void require_deterministic(const RewriteSystem& s, const char* what) {
    if (s.flavor != Flavor::Oriented) throw DomainError(std::string(what) + ": hypothesis 'oriented' fails");
    for (const auto& r : s.rules)
        if (!classify_rule(r, s).deterministic)
            throw DomainError(std::string(what) + ": hypothesis 'deterministic' fails at " + r.label);
}

// Positional renaming of a variable vector into canonical arguments starting at x<first>.
Substitution positional(const std::vector<std::string>& xs, std::size_t first) {
    Substitution s;
    for (std::size_t i = 0; i < xs.size(); ++i) s[xs[i]] = Term::var(hvar(first + i));
    return s;
}

}  // namespace

// ---------------------------------------------------------------- TreeHomomorphism

void TreeHomomorphism::set(const std::string& symbol, int arity, Term pattern) {
    for (const auto& v : var_set(pattern)) {
        bool ok = false;
        for (int i = 1; i <= arity; ++i) ok |= v == hvar(i);
        if (!ok) throw DomainError("pattern for " + symbol + " uses variable " + v + " outside x1..x" + std::to_string(arity));
    }
    map_[symbol] = Entry{arity, std::move(pattern)};
}

TreeHomomorphism TreeHomomorphism::from_entries(const std::vector<MapEntry>& entries) {
    TreeHomomorphism h;
    for (const auto& e : entries) {
        std::map<std::string, std::string> ren;
        for (std::size_t i = 0; i < e.params.size(); ++i) {
            if (ren.count(e.params[i])) throw DomainError("repeated parameter in MAP entry for " + e.symbol);
            ren[e.params[i]] = hvar(i + 1);
        }
        // bind every parameter first so a pattern variable named x2 is not mistaken for a parameter
        Substitution s;
        for (const auto& [from, to] : ren) s[from] = Term::var(to);
        for (const auto& v : var_set(e.pattern))
            if (!ren.count(v))
                throw DomainError("MAP entry for " + e.symbol + " uses unbound variable " + v);
        h.set(e.symbol, static_cast<int>(e.params.size()), substitute(e.pattern, s));
    }
    return h;
}

Term TreeHomomorphism::operator()(const Term& t) const {
    if (t.is_var()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back((*this)(a));
    auto it = map_.find(t.name());
    if (it == map_.end()) return Term::app(t.name(), std::move(args));
    if (static_cast<std::size_t>(it->second.arity) != args.size())
        throw DomainError("homomorphism maps " + t.name() + "/" + std::to_string(it->second.arity) +
                          " but the term uses arity " + std::to_string(args.size()));
    Substitution s;
    for (std::size_t i = 0; i < args.size(); ++i) s[hvar(i + 1)] = args[i];
    return substitute(it->second.pattern, s);
}

Rule TreeHomomorphism::operator()(const Rule& r) const {
    Rule out{r.label, (*this)(r.lhs), (*this)(r.rhs), {}};
    for (const auto& c : r.conds) out.conds.push_back({(*this)(c.lhs), (*this)(c.rhs)});
    return out;
}

RewriteSystem TreeHomomorphism::operator()(const RewriteSystem& s) const {
    const Signature sig = s.signature();
    for (const auto& [f, e] : map_) {
        auto it = sig.find(f);
        if (it != sig.end() && it->second != e.arity)
            throw DomainError("homomorphism maps " + f + "/" + std::to_string(e.arity) + " but the system uses " + f +
                              "/" + std::to_string(it->second));
    }
    RewriteSystem out = s;
    out.rules.clear();
    for (const auto& r : s.rules) out.rules.push_back((*this)(r));
    Signature after = out.signature();
    for (const auto& [f, n] : after)
        if (!sig.count(f)) out.generated.insert(f);
    return out;
}

bool TreeHomomorphism::linear() const {
    return std::all_of(map_.begin(), map_.end(), [](const auto& kv) { return is_linear(kv.second.pattern); });
}

bool TreeHomomorphism::non_erasing() const {
    for (const auto& [f, e] : map_)
        if (var_set(e.pattern).size() != static_cast<std::size_t>(e.arity)) return false;
    return true;
}

bool TreeHomomorphism::f_identical(const std::set<std::string>& f) const {
    for (const auto& sym : f) {
        auto it = map_.find(sym);
        if (it == map_.end()) continue;
        if (it->second.pattern != canonical_app(sym, 1, it->second.arity)) return false;
    }
    return true;
}

bool TreeHomomorphism::ev_preserving(const RewriteSystem& s) const {
    for (const auto& r : s.rules)
        if ((*this)(r).extra_vars() != r.extra_vars()) return false;
    return true;
}

std::string TreeHomomorphism::render() const {
    std::string out = "(MAP\n";
    for (const auto& [f, e] : map_) out += "  " + canonical_app(f, 1, e.arity).str() + " -> " + e.pattern.str() + "\n";
    return out + ")";
}

HomoProperties homomorphism_properties(const TreeHomomorphism& phi, const RewriteSystem& system,
                                       const std::set<std::string>& f) {
    return {phi.linear(), phi.non_erasing(), phi.f_identical(f), phi.ev_preserving(system)};
}

// ---------------------------------------------------------------- Norm and Det

RewriteSystem norm_transform(const RewriteSystem& system) {
    require_join(system, "Norm");
    check_free(system, "eq", "Norm");
    check_free(system, "top", "Norm");
    RewriteSystem out = system;
    out.flavor = Flavor::Oriented;
    out.rules.clear();
    const Term top2 = Term::app("eq", {Term::app("top"), Term::app("top")});
    for (const auto& r : system.rules) {
        Rule nr{r.label, r.lhs, r.rhs, {}};
        for (const auto& c : r.conds) nr.conds.push_back({Term::app("eq", {c.lhs, c.rhs}), top2});
        out.rules.push_back(nr);
    }
    std::string x = "x";
    if (system.signature().count(x)) {
        std::set<std::string> taken;
        for (const auto& [f, n] : system.signature()) taken.insert(f);
        x = NameSupply(taken).next("x");
    }
    Term vx = Term::var(x);
    out.rules.push_back(Rule{"norm_eq", Term::app("eq", {vx, vx}), top2, {}});
    if (!out.is_variable(x)) out.add_variable(x);
    out.generated.insert("eq");
    out.generated.insert("top");
    return out;
}

RewriteSystem det_transform(const RewriteSystem& system) {
    require_join(system, "Det");
    RewriteSystem out = system;
    out.flavor = Flavor::Oriented;
    out.rules.clear();
    std::set<std::string> taken(system.variables.begin(), system.variables.end());
    for (const auto& [f, n] : system.signature()) taken.insert(f);
    for (const auto& r : system.rules) {
        if (!r.conditional()) {
            out.rules.push_back(r);
            continue;
        }
        const std::size_t k = r.conds.size();
        const std::string eqk = "eq" + std::to_string(k);
        if (!out.generated.count(eqk)) check_free(system, eqk, "Det");
        out.generated.insert(eqk);
        std::set<std::string> local = taken;
        for (const auto& v : r.vars()) local.insert(v);
        NameSupply names(local);
        std::vector<Term> left, right;
        for (const auto& c : r.conds) {
            left.push_back(c.lhs);
            left.push_back(c.rhs);
            Term x = Term::var(names.next("x"));
            right.push_back(x);
            right.push_back(x);
            if (!out.is_variable(x.name())) out.add_variable(x.name());
        }
        out.rules.push_back(Rule{r.label, r.lhs, r.rhs, {{Term::app(eqk, left), Term::app(eqk, right)}}});
    }
    return out;
}

RewriteSystem as_join(const RewriteSystem& system) {
    RewriteSystem out = system;
    out.flavor = Flavor::Join;
    return out;
}

RewriteSystem as_oriented(const RewriteSystem& system) {
    RewriteSystem out = system;
    out.flavor = Flavor::Oriented;
    return out;
}

// ---------------------------------------------------------------- canonical phi

const char* to_string(PhiTheorem t) {
    switch (t) {
        case PhiTheorem::UToUopt: return "u_to_uopt";
        case PhiTheorem::UjToUnNorm: return "uj_to_unnorm";
        case PhiTheorem::UnToUj: return "un_to_uj";
        case PhiTheorem::UjToUnNormalJoin: return "uj_to_un_normaljoin";
        case PhiTheorem::UjToUDet: return "uj_to_udet";
        case PhiTheorem::UToUn: return "u_to_un";
    }
    return "?";
}

std::vector<PhiTheorem> all_phi_theorems() {
    return {PhiTheorem::UToUopt, PhiTheorem::UjToUnNorm,  PhiTheorem::UnToUj,
            PhiTheorem::UjToUnNormalJoin, PhiTheorem::UjToUDet, PhiTheorem::UToUn};
}

PhiTheorem phi_theorem_from_string(const std::string& name) {
    for (auto t : all_phi_theorems())
        if (name == to_string(t)) return t;
    throw DomainError("unknown canonical homomorphism '" + name + "'");
}

PhiRequirements phi_requirements(PhiTheorem t) {
    switch (t) {
        case PhiTheorem::UToUopt: return {false, true, false};
        case PhiTheorem::UToUn: return {true, false, true};
        default: return {true, false, false};
    }
}

TreeHomomorphism canonical_phi(PhiTheorem t, const RewriteSystem& system) {
    const char* name = to_string(t);
    const VarOrder order(system.variables);
    TreeHomomorphism phi;
    switch (t) {
        case PhiTheorem::UToUopt: {
            require_deterministic(system, name);
            for (const auto& r : system.rules) {
                const UnravelPlan plan = make_plan(r, order);
                for (const auto& st : plan.steps) {
                    const Substitution pos = positional(st.x, 2);
                    std::vector<Term> args{Term::var(hvar(1))};
                    for (const auto& z : st.z) args.push_back(pos.at(z));
                    phi.set(st.symbol, static_cast<int>(1 + st.x.size()), Term::app(st.symbol, args));
                }
            }
            break;
        }
        case PhiTheorem::UjToUnNorm:
        case PhiTheorem::UjToUDet:
        case PhiTheorem::UjToUnNormalJoin: {
            require_join(system, name);
            if (t == PhiTheorem::UjToUnNormalJoin) require_normal(system, name);
            for (const auto& r : system.rules) {
                if (!r.conditional()) continue;
                const std::size_t k = r.conds.size();
                const std::size_t nv = var_set(r.lhs).size();
                const std::string sym = u_symbol(r.label);
                std::vector<Term> head;
                for (std::size_t i = 0; i < k; ++i) {
                    Term a = Term::var(hvar(2 * i + 1)), b = Term::var(hvar(2 * i + 2));
                    if (t == PhiTheorem::UjToUnNorm)
                        head.push_back(Term::app("eq", {a, b}));
                    else
                        head.push_back(a);
                    if (t == PhiTheorem::UjToUDet) head.push_back(b);
                }
                if (t == PhiTheorem::UjToUDet) head = {Term::app("eq" + std::to_string(k), head)};
                for (std::size_t j = 0; j < nv; ++j) head.push_back(Term::var(hvar(2 * k + 1 + j)));
                const std::string target = t == PhiTheorem::UjToUDet ? u_symbol(r.label, 1) : sym;
                phi.set(sym, static_cast<int>(2 * k + nv), Term::app(target, head));
            }
            break;
        }
        case PhiTheorem::UnToUj: {
            if (system.flavor != Flavor::Oriented) throw DomainError(std::string(name) + ": hypothesis 'oriented' fails");
            require_normal(system, name);
            for (const auto& r : system.rules) {
                if (!r.conditional()) continue;
                const std::size_t k = r.conds.size();
                const std::size_t nv = var_set(r.lhs).size();
                std::vector<Term> head;
                for (std::size_t i = 0; i < k; ++i) {
                    head.push_back(Term::var(hvar(i + 1)));
                    head.push_back(r.conds[i].rhs);
                }
                for (std::size_t j = 0; j < nv; ++j) head.push_back(Term::var(hvar(k + 1 + j)));
                phi.set(u_symbol(r.label), static_cast<int>(k + nv), Term::app(u_symbol(r.label), head));
            }
            break;
        }
        case PhiTheorem::UToUn: {
            if (system.flavor != Flavor::Oriented) throw DomainError(std::string(name) + ": hypothesis 'oriented' fails");
            require_normal(system, name);
            for (const auto& r : system.rules) {
                const UnravelPlan plan = make_plan(r, order);
                const auto vl = order.sort(var_set(r.lhs));
                const std::size_t k = r.conds.size();
                for (std::size_t i = 1; i <= k; ++i) {
                    const auto& st = plan.steps[i - 1];
                    const Substitution pos = positional(st.x, 2);
                    std::vector<Term> args;
                    for (std::size_t j = 1; j < i; ++j) args.push_back(r.conds[j - 1].rhs);
                    args.push_back(Term::var(hvar(1)));
                    for (std::size_t j = i + 1; j <= k; ++j) args.push_back(substitute(r.conds[j - 1].lhs, pos));
                    for (const auto& v : vl) args.push_back(pos.at(v));
                    phi.set(st.symbol, static_cast<int>(1 + st.x.size()), Term::app(u_symbol(r.label), args));
                }
            }
            break;
        }
    }
    return phi;
}

// ---------------------------------------------------------------- simulation check

SimulationVerdict check_simulation(const RewriteSystem& lhs, const RewriteSystem& rhs, const TreeHomomorphism& phi,
                                   bool modulo_identity) {
    SimulationVerdict v;
    v.flags = homomorphism_properties(phi, rhs, original_symbols(rhs));
    RewriteSystem image = phi(rhs);

    std::vector<Rule> kept;
    for (const auto& r : image.rules) {
        if (modulo_identity && !r.conditional() && r.lhs == r.rhs && contains_symbol(r.lhs, rhs.generated)) {
            v.dropped.push_back(r);
            continue;
        }
        kept.push_back(r);
    }

    auto keyed = [](const std::vector<Rule>& rs) {
        std::map<std::string, Rule> m;
        for (const auto& r : rs) m.emplace(canonical_rule(r).str(), r);
        return m;
    };
    const auto a = keyed(lhs.rules);
    const auto b = keyed(kept);
    for (const auto& [key, r] : a)
        if (!b.count(key)) v.missing.push_back(r);
    for (const auto& [key, r] : b)
        if (!a.count(key)) v.extra.push_back(r);
    v.equal = v.missing.empty() && v.extra.empty();
    return v;
}

}  // namespace ctrs
