#include "ctrs/system.hpp"

#include <algorithm>
#include <functional>

namespace ctrs {

// ---------------------------------------------------------------- Rule

std::set<std::string> Rule::vars() const {
    std::set<std::string> v;
    collect_vars(lhs, v);
    collect_vars(rhs, v);
    for (const auto& c : conds) {
        collect_vars(c.lhs, v);
        collect_vars(c.rhs, v);
    }
    return v;
}

std::set<std::string> Rule::extra_vars() const {
    auto all = vars();
    for (const auto& x : var_set(lhs)) all.erase(x);
    return all;
}

bool Rule::same_shape(const Rule& o) const { return lhs == o.lhs && rhs == o.rhs && conds == o.conds; }

std::string Rule::str(Flavor f) const {
    (void)f;
    std::string s = lhs.str() + " -> " + rhs.str();
    for (std::size_t i = 0; i < conds.size(); ++i) {
        s += i ? ", " : " | ";
        s += conds[i].lhs.str() + " == " + conds[i].rhs.str();
    }
    return s;
}

// ---------------------------------------------------------------- RewriteSystem

bool RewriteSystem::is_variable(const std::string& name) const {
    return std::find(variables.begin(), variables.end(), name) != variables.end();
}

void RewriteSystem::add_variable(const std::string& name) {
    if (!is_variable(name)) variables.push_back(name);
}

namespace {

void add_symbols(const Term& t, Signature& sig) {
    if (t.is_var()) return;
    auto [it, inserted] = sig.emplace(t.name(), static_cast<int>(t.arity()));
    if (!inserted && it->second != static_cast<int>(t.arity()))
        throw DomainError("arity clash for symbol '" + t.name() + "': " + std::to_string(it->second) + " vs " +
                          std::to_string(t.arity()));
    for (const auto& a : t.args()) add_symbols(a, sig);
}

}  // namespace

Signature merge_signature(Signature sig, const Term& t) {
    add_symbols(t, sig);
    return sig;
}

Signature RewriteSystem::signature() const {
    Signature sig;
    for (const auto& r : rules) {
        add_symbols(r.lhs, sig);
        add_symbols(r.rhs, sig);
        for (const auto& c : r.conds) {
            add_symbols(c.lhs, sig);
            add_symbols(c.rhs, sig);
        }
    }
    return sig;
}

std::set<std::string> RewriteSystem::defined() const {
    std::set<std::string> d;
    for (const auto& r : rules)
        if (!r.lhs.is_var()) d.insert(r.lhs.name());
    return d;
}

std::set<std::string> RewriteSystem::constructors() const {
    auto d = defined();
    std::set<std::string> c;
    for (const auto& [f, n] : signature())
        if (!d.count(f)) c.insert(f);
    return c;
}

bool RewriteSystem::conditional() const {
    return std::any_of(rules.begin(), rules.end(), [](const Rule& r) { return r.conditional(); });
}

RewriteSystem RewriteSystem::underlying() const {
    RewriteSystem u = *this;
    for (auto& r : u.rules) r.conds.clear();
    return u;
}

const Rule* RewriteSystem::find(const std::string& label) const {
    for (const auto& r : rules)
        if (r.label == label) return &r;
    return nullptr;
}

VarOrder::VarOrder(const std::vector<std::string>& declared) {
    for (std::size_t i = 0; i < declared.size(); ++i) rank_.emplace(declared[i], i);
}

std::vector<std::string> VarOrder::sort(const std::set<std::string>& xs) const {
    std::vector<std::string> v(xs.begin(), xs.end());
    std::stable_sort(v.begin(), v.end(), [&](const std::string& a, const std::string& b) {
        auto ia = rank_.find(a), ib = rank_.find(b);
        bool da = ia != rank_.end(), db = ib != rank_.end();
        if (da && db) return ia->second < ib->second;
        if (da != db) return da;
        return a < b;
    });
    return v;
}

std::string NameSupply::next(const std::string& base) {
    for (int i = 1;; ++i) {
        std::string n = base + std::to_string(i);
        if (taken_.insert(n).second) return n;
    }
}

// ---------------------------------------------------------------- classification

std::set<std::string> x_set(const Rule& r, std::size_t i) {
    std::set<std::string> x = var_set(r.lhs);
    for (std::size_t j = 1; j < i; ++j) collect_vars(r.conds[j - 1].rhs, x);
    return x;
}

std::set<std::string> y_set(const Rule& r, std::size_t i) {
    std::set<std::string> y = var_set(r.rhs);
    collect_vars(r.conds[i - 1].rhs, y);
    for (std::size_t j = i + 1; j <= r.conds.size(); ++j) {
        collect_vars(r.conds[j - 1].lhs, y);
        collect_vars(r.conds[j - 1].rhs, y);
    }
    return y;
}

std::set<std::string> z_set(const Rule& r, std::size_t i) {
    auto x = x_set(r, i), y = y_set(r, i);
    std::set<std::string> z;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::inserter(z, z.end()));
    return z;
}

namespace {

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a)
        if (b.count(x)) return false;
    return true;
}

void count_occ(const Term& t, std::map<std::string, int>& m) {
    if (t.is_var()) {
        ++m[t.name()];
        return;
    }
    for (const auto& a : t.args()) count_occ(a, m);
}

bool is_constructor_term(const Term& t, const std::set<std::string>& defined) {
    if (t.is_var()) return true;
    if (defined.count(t.name())) return false;
    for (const auto& a : t.args())
        if (!is_constructor_term(a, defined)) return false;
    return true;
}

}  // namespace

bool is_normal_form(const Term& t, const RewriteSystem& system) {
    for (const auto& r : system.rules)
        if (match(r.lhs, t)) return false;
    if (t.is_var()) return true;
    for (const auto& a : t.args())
        if (!is_normal_form(a, system)) return false;
    return true;
}

RuleClass classify_rule(const Rule& rule, const RewriteSystem& ctx) {
    RuleClass c;
    const auto vl = var_set(rule.lhs);
    const auto vr = var_set(rule.rhs);
    std::set<std::string> vst, vs, vt;
    for (const auto& cd : rule.conds) {
        collect_vars(cd.lhs, vs);
        collect_vars(cd.rhs, vt);
    }
    vst = vs;
    vst.insert(vt.begin(), vt.end());

    std::set<std::string> bound = vl;
    for (const auto& cd : rule.conds) {
        if (!subset(var_set(cd.lhs), bound)) c.deterministic = false;
        collect_vars(cd.rhs, bound);
    }

    std::set<std::string> rst = vr;
    rst.insert(vst.begin(), vst.end());
    std::set<std::string> lst = vl;
    lst.insert(vst.begin(), vst.end());
    if (subset(rst, vl))
        c.type = 1;
    else if (subset(vr, vl))
        c.type = 2;
    else if (subset(vr, lst))
        c.type = 3;
    else
        c.type = 4;

    c.ll = is_linear(rule.lhs);
    c.rl = is_linear(rule.rhs);
    c.ne = subset(vl, vr);
    c.non_lv = !rule.lhs.is_var();
    c.non_rv = !rule.rhs.is_var();

    const RewriteSystem ru = ctx.underlying();
    const auto defined = ctx.defined();
    c.normal = true;
    c.ground_conditional = true;
    c.syntactically_deterministic = c.deterministic;
    bool uopt_ll = c.ll;
    for (std::size_t i = 1; i <= rule.conds.size(); ++i) {
        const auto& cd = rule.conds[i - 1];
        bool gnf = cd.rhs.ground() && is_normal_form(cd.rhs, ru);
        if (!gnf) c.normal = false;
        if (!cd.lhs.ground() || !cd.rhs.ground()) c.ground_conditional = false;
        auto xi = x_set(rule, i);
        auto vti = var_set(cd.rhs);
        bool sep = disjoint(vti, xi);
        if (!sep) c.right_separated = false;
        if (!(is_linear(cd.rhs) && sep)) c.right_stable = false;
        if (!is_linear(cd.rhs) || !sep) uopt_ll = false;
        if (!(is_constructor_term(cd.rhs, defined) || gnf)) c.syntactically_deterministic = false;
    }

    if (rule.conditional()) {
        c.wll_normal1 = c.normal && c.type == 1 && uopt_ll;
    } else {
        std::map<std::string, int> occ;
        count_occ(rule.lhs, occ);
        bool lin = true;
        for (const auto& x : vr)
            if (occ[x] > 1) lin = false;
        c.wll_normal1 = lin;
    }

    std::map<std::string, int> occ;
    count_occ(rule.lhs, occ);
    for (const auto& cd : rule.conds) count_occ(cd.rhs, occ);
    std::set<std::string> rs = vr;
    rs.insert(vs.begin(), vs.end());
    c.wll_3dctrs = c.deterministic && c.type <= 3;
    for (const auto& [x, n] : occ)
        if (n >= 2 && rs.count(x)) c.wll_3dctrs = false;
    return c;
}

ClassificationReport classify(const RewriteSystem& system) {
    ClassificationReport rep;
    rep.flavor = system.flavor;
    rep.defined = system.defined();
    rep.constructors = system.constructors();
    auto& s = rep.system;
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
        const auto& r = system.rules[i];
        RuleClass c = classify_rule(r, system);
        rep.rules.emplace_back(r.label, c);
        s.deterministic &= c.deterministic;
        s.type = std::max(s.type, c.type);
        s.ll &= c.ll;
        s.rl &= c.rl;
        s.ne &= c.ne;
        s.non_lv &= c.non_lv;
        s.non_rv &= c.non_rv;
        s.normal &= c.normal;
        s.ground_conditional &= c.ground_conditional;
        s.wll_normal1 &= c.wll_normal1;
        s.wll_3dctrs &= c.wll_3dctrs;
        s.right_stable &= c.right_stable;
        s.right_separated &= c.right_separated;
        s.syntactically_deterministic &= c.syntactically_deterministic;
        rep.max_conditions = std::max(rep.max_conditions, r.conds.size());
        if (!r.lhs.is_var())
            for (const auto& a : r.lhs.args())
                if (!is_constructor_term(a, rep.defined)) rep.constructor_system = false;
    }
    rep.strongly_deterministic = s.syntactically_deterministic ? "yes" : "unknown";
    for (const auto& cp : critical_pairs(system)) {
        rep.non_overlapping = false;
        if (!cp.pos.empty()) rep.overlay = false;
    }
    return rep;
}

// ---------------------------------------------------------------- inversion

Rule invert_rule(const Rule& r) {
    Rule inv;
    inv.label = r.label;
    inv.lhs = r.rhs;
    inv.rhs = r.lhs;
    for (auto it = r.conds.rbegin(); it != r.conds.rend(); ++it) inv.conds.push_back({it->rhs, it->lhs});
    return inv;
}

RewriteSystem invert(const RewriteSystem& system) {
    if (system.flavor != Flavor::Oriented) throw DomainError("invert: join systems are not supported");
    RewriteSystem out = system;
    out.extended = true;
    for (auto& r : out.rules) r = invert_rule(r);
    return out;
}

// ---------------------------------------------------------------- critical pairs

namespace {

Rule rename_rule_vars(const Rule& r, int tag) {
    std::map<std::string, std::string> ren;
    for (const auto& x : r.vars()) ren.emplace(x, fresh_name(x, tag));
    Rule o = r;
    o.lhs = rename_vars(r.lhs, ren);
    o.rhs = rename_vars(r.rhs, ren);
    for (auto& c : o.conds) {
        c.lhs = rename_vars(c.lhs, ren);
        c.rhs = rename_vars(c.rhs, ren);
    }
    return o;
}

}  // namespace

Rule substitute(const Rule& r, const Substitution& s) {
    Rule o = r;
    o.lhs = substitute(r.lhs, s);
    o.rhs = substitute(r.rhs, s);
    for (auto& c : o.conds) {
        c.lhs = substitute(c.lhs, s);
        c.rhs = substitute(c.rhs, s);
    }
    return o;
}

std::vector<CriticalPair> critical_pairs(const RewriteSystem& system) {
    std::vector<CriticalPair> out;
    const auto& rs = system.rules;
    for (std::size_t j = 0; j < rs.size(); ++j) {
        Rule outer = rename_rule_vars(rs[j], 2);
        for (const auto& p : positions(outer.lhs, PosKind::Function)) {
            const Term& sub = subterm_at(outer.lhs, p);
            for (std::size_t i = 0; i < rs.size(); ++i) {
                if (p.empty() && i == j) continue;
                Rule inner = rename_rule_vars(rs[i], 1);
                auto mgu = unify(inner.lhs, sub);
                if (!mgu) continue;
                CriticalPair cp;
                cp.left = substitute(replace_at(outer.lhs, p, inner.rhs), *mgu);
                cp.right = substitute(outer.rhs, *mgu);
                for (const auto& c : inner.conds) cp.conds.push_back({substitute(c.lhs, *mgu), substitute(c.rhs, *mgu)});
                for (const auto& c : outer.conds) cp.conds.push_back({substitute(c.lhs, *mgu), substitute(c.rhs, *mgu)});
                cp.trivial = cp.left == cp.right;
                cp.pos = p;
                cp.outer = rs[j].label;
                cp.inner = rs[i].label;
                cp.mgu = *mgu;
                cp.outer_renamed = outer;
                cp.inner_renamed = inner;
                out.push_back(std::move(cp));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- alpha equality

Term rename_symbols(const Term& t, const std::map<std::string, std::string>& m) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(rename_symbols(a, m));
    auto it = m.find(t.name());
    return Term::app(it == m.end() ? t.name() : it->second, std::move(args));
}

Rule rename_symbols(const Rule& r, const std::map<std::string, std::string>& m) {
    Rule o = r;
    o.lhs = rename_symbols(r.lhs, m);
    o.rhs = rename_symbols(r.rhs, m);
    for (auto& c : o.conds) {
        c.lhs = rename_symbols(c.lhs, m);
        c.rhs = rename_symbols(c.rhs, m);
    }
    return o;
}

Rule canonical_rule(const Rule& r) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    auto visit = [&](const Term& t) {
        for (const auto& x : vars_in_order(t))
            if (seen.insert(x).second) order.push_back(x);
    };
    visit(r.lhs);
    visit(r.rhs);
    for (const auto& c : r.conds) {
        visit(c.lhs);
        visit(c.rhs);
    }
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < order.size(); ++i) ren.emplace(order[i], "v" + std::to_string(i + 1));
    Rule o = r;
    o.label.clear();
    o.lhs = rename_vars(r.lhs, ren);
    o.rhs = rename_vars(r.rhs, ren);
    for (auto& c : o.conds) {
        c.lhs = rename_vars(c.lhs, ren);
        c.rhs = rename_vars(c.rhs, ren);
    }
    return o;
}

namespace {

std::vector<Rule> canonical_set(const RewriteSystem& s) {
    std::vector<Rule> out;
    std::set<std::string> seen;
    for (const auto& r : s.rules) {
        Rule c = canonical_rule(r);
        if (seen.insert(c.str()).second) out.push_back(c);
    }
    return out;
}

struct SymMap {
    std::map<std::string, std::string> fwd, bwd;
};

bool match_term(const Term& a, const Term& b, const std::set<std::string>& fixed, SymMap& m) {
    if (a.is_var() || b.is_var()) return a.is_var() && b.is_var() && a.name() == b.name();
    if (a.arity() != b.arity()) return false;
    bool fa = fixed.count(a.name()) > 0, fb = fixed.count(b.name()) > 0;
    if (fa || fb) {
        if (a.name() != b.name()) return false;
    } else {
        auto [i1, n1] = m.fwd.emplace(a.name(), b.name());
        auto [i2, n2] = m.bwd.emplace(b.name(), a.name());
        if (i1->second != b.name() || i2->second != a.name()) return false;
    }
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (!match_term(a.args()[i], b.args()[i], fixed, m)) return false;
    return true;
}

bool match_rule(const Rule& a, const Rule& b, const std::set<std::string>& fixed, SymMap& m) {
    if (a.conds.size() != b.conds.size()) return false;
    if (!match_term(a.lhs, b.lhs, fixed, m) || !match_term(a.rhs, b.rhs, fixed, m)) return false;
    for (std::size_t i = 0; i < a.conds.size(); ++i)
        if (!match_term(a.conds[i].lhs, b.conds[i].lhs, fixed, m) ||
            !match_term(a.conds[i].rhs, b.conds[i].rhs, fixed, m))
            return false;
    return true;
}

bool assign(std::size_t k, const std::vector<Rule>& as, const std::vector<Rule>& bs, std::vector<bool>& used,
            const std::set<std::string>& fixed, SymMap& m) {
    if (k == as.size()) return true;
    for (std::size_t j = 0; j < bs.size(); ++j) {
        if (used[j]) continue;
        SymMap trial = m;
        if (!match_rule(as[k], bs[j], fixed, trial)) continue;
        used[j] = true;
        if (assign(k + 1, as, bs, used, fixed, trial)) {
            m = std::move(trial);
            return true;
        }
        used[j] = false;
    }
    return false;
}

}  // namespace

bool alpha_u_equal(const RewriteSystem& a, const RewriteSystem& b, const std::set<std::string>& fixed) {
    auto as = canonical_set(a), bs = canonical_set(b);
    if (as.size() != bs.size()) return false;
    // Rules made only of fixed symbols go first: they prune the search without binding anything.
    std::stable_sort(as.begin(), as.end(), [&](const Rule& x, const Rule& y) {
        auto free_count = [&](const Rule& r) {
            std::map<std::string, int> syms;
            collect_symbols(r.lhs, syms);
            collect_symbols(r.rhs, syms);
            for (const auto& c : r.conds) {
                collect_symbols(c.lhs, syms);
                collect_symbols(c.rhs, syms);
            }
            int n = 0;
            for (const auto& [f, k] : syms) n += fixed.count(f) ? 0 : 1;
            return n;
        };
        return free_count(x) < free_count(y);
    });
    std::vector<bool> used(bs.size(), false);
    SymMap m;
    return assign(0, as, bs, used, fixed, m);
}

bool alpha_u_equal(const RewriteSystem& a, const RewriteSystem& b) {
    std::set<std::string> fixed;
    Signature sa, sb;
    try {
        sa = a.signature();
        sb = b.signature();
    } catch (const DomainError&) {
        return false;
    }
    for (const auto* sig : {&sa, &sb})
        for (const auto& [f, n] : *sig)
            if (!a.generated.count(f) && !b.generated.count(f)) fixed.insert(f);
    return alpha_u_equal(a, b, fixed);
}

bool equal_under_renaming(const RewriteSystem& a, const RewriteSystem& b,
                          const std::map<std::string, std::string>& symbol_map) {
    RewriteSystem ra = a;
    for (auto& r : ra.rules) r = rename_symbols(r, symbol_map);
    auto as = canonical_set(ra), bs = canonical_set(b);
    if (as.size() != bs.size()) return false;
    std::set<std::string> keys;
    for (const auto& r : bs) keys.insert(r.str());
    for (const auto& r : as)
        if (!keys.count(r.str())) return false;
    return true;
}

}  // namespace ctrs
