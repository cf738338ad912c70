#include "ctrs/sr.hpp"

#include "ctrs/unravel.hpp"

namespace ctrs {

std::string sr_bar(const std::string& f) { return f + "^bar"; }
std::string sr_stack(std::size_t k) { return "stk" + std::to_string(k); }

std::size_t SrContext::n_f(const std::string& f) const {
    auto it = cond_rules.find(f);
    return it == cond_rules.end() ? 0 : it->second.size();
}

bool SrContext::is_bar(const std::string& sym) const { return unbar(sym).has_value(); }

std::optional<std::string> SrContext::unbar(const std::string& sym) const {
    static const std::string suffix = "^bar";
    if (sym.size() <= suffix.size() || sym.compare(sym.size() - suffix.size(), suffix.size(), suffix) != 0)
        return std::nullopt;
    std::string f = sym.substr(0, sym.size() - suffix.size());
    if (!defined.count(f)) return std::nullopt;
    return f;
}

namespace {

Term bot() { return Term::app(kBot); }
Term curly(Term t) { return Term::app(kCurly, {std::move(t)}); }

Term stack(std::size_t k, std::vector<Term> elems) {
    while (elems.size() < k) elems.push_back(bot());
    return Term::app(sr_stack(k), std::move(elems));
}

Term vars_app(const std::string& sym, const std::vector<std::string>& names) {
    std::vector<Term> a;
    for (const auto& n : names) a.push_back(Term::var(n));
    return Term::app(sym, a);
}

// overline with an optional handler for U symbols
Term bar_rec(const SrContext& ctx, const Term& t, bool with_u);

Term u_image(const SrContext& ctx, const Term& t) {
    const auto [ri, i] = ctx.u_symbols.at(t.name());
    const Rule& rule = ctx.original.rules[ri];
    const std::string f = rule.lhs.name();
    const auto [sf, j] = ctx.slot.at(rule.label);
    const std::size_t k = rule.conds.size();
    const auto xs = VarOrder(ctx.original.variables).sort(x_set(rule, i));
    if (t.arity() != xs.size() + 1) throw DomainError("U symbol " + t.name() + " used at the wrong arity");
    Substitution s;
    for (std::size_t q = 0; q < xs.size(); ++q) s[xs[q]] = bar_rec(ctx, t.arg(q + 2), true);
    std::vector<Term> args;
    for (const auto& w : rule.lhs.args()) args.push_back(substitute(overline(ctx, w), s));
    std::vector<Term> elems{curly(bar_rec(ctx, t.arg(1), true))};
    for (std::size_t m = i - 1; m >= 1; --m) elems.push_back(substitute(overline(ctx, rule.conds[m - 1].rhs), s));
    for (std::size_t q = 1; q <= ctx.n_f(f); ++q) args.push_back(q == j ? stack(k, elems) : bot());
    return Term::app(sr_bar(f), args);
}

Term bar_rec(const SrContext& ctx, const Term& t, bool with_u) {
    if (t.is_var()) return t;
    if (with_u && ctx.u_symbols.count(t.name())) return u_image(ctx, t);
    auto it = ctx.arity.find(t.name());
    if (it == ctx.arity.end() || static_cast<std::size_t>(it->second) != t.arity())
        throw DomainError("overline: " + t.name() + " is not in the original signature");
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(bar_rec(ctx, a, with_u));
    if (!ctx.defined.count(t.name())) return Term::app(t.name(), args);
    for (std::size_t q = 0; q < ctx.n_f(t.name()); ++q) args.push_back(bot());
    return Term::app(sr_bar(t.name()), args);
}

std::vector<std::string> fresh_zs(const Rule& r, std::size_t n) {
    NameSupply names(r.vars());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(names.next("z"));
    return out;
}

}  // namespace

Term overline(const SrContext& ctx, const Term& t) { return bar_rec(ctx, t, false); }
Term overline_u(const SrContext& ctx, const Term& t) { return bar_rec(ctx, t, true); }
Term sr_translate(const SrContext& ctx, const Term& t) { return curly(overline(ctx, t)); }

SrContext make_sr_context(const RewriteSystem& system) {
    if (system.flavor != Flavor::Oriented) throw DomainError("SR needs an oriented system");
    SrContext ctx;
    ctx.original = system;
    ctx.arity = system.signature();
    ctx.defined = system.defined();
    ctx.constructors = system.constructors();
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
        const Rule& r = system.rules[i];
        if (r.lhs.is_var()) throw DomainError("SR: rule " + r.label + " has a variable left-hand side");
        if (!classify_rule(r, system).deterministic) throw DomainError("SR: rule " + r.label + " is not deterministic");
        if (!r.conditional()) continue;
        auto& v = ctx.cond_rules[r.lhs.name()];
        v.push_back(i);
        ctx.slot[r.label] = {r.lhs.name(), v.size()};
        ctx.stack_sizes.insert(r.conds.size());
        for (std::size_t q = 1; q <= r.conds.size(); ++q) ctx.u_symbols[u_symbol(r.label, q)] = {i, q};
    }
    auto reserve = [&](const std::string& s) {
        if (ctx.arity.count(s) || system.is_variable(s)) throw DomainError("SR: symbol " + s + " is reserved");
    };
    reserve(kCurly);
    reserve(kBot);
    for (auto k : ctx.stack_sizes) reserve(sr_stack(k));
    for (const auto& f : ctx.defined) reserve(sr_bar(f));
    return ctx;
}

SrResult sr_transform(const RewriteSystem& system) {
    SrResult res{RewriteSystem{}, make_sr_context(system)};
    const SrContext& ctx = res.ctx;
    RewriteSystem& out = res.system;
    out.variables = system.variables;
    out.origin = system.origin;
    out.generated = system.generated;
    auto add = [&](std::string label, Term l, Term r) {
        Rule nr{std::move(label), std::move(l), std::move(r), {}};
        for (const auto& x : nr.vars())
            if (!out.is_variable(x)) out.add_variable(x);
        out.rules.push_back(std::move(nr));
    };

    for (const auto& rule : system.rules) {
        const std::string f = rule.lhs.name();
        const std::size_t nf = ctx.n_f(f);
        std::vector<Term> ws;
        for (const auto& w : rule.lhs.args()) ws.push_back(overline(ctx, w));
        const auto zs = fresh_zs(rule, nf);
        const Term rbar = curly(overline(ctx, rule.rhs));
        if (!rule.conditional()) {
            std::vector<Term> args = ws;
            for (const auto& z : zs) args.push_back(Term::var(z));
            add(rule.label, Term::app(sr_bar(f), args), rbar);
            continue;
        }
        const std::size_t j = ctx.slot.at(rule.label).second;
        const std::size_t k = rule.conds.size();
        auto slot = [&](Term u) {
            std::vector<Term> args = ws;
            for (std::size_t q = 1; q <= nf; ++q) args.push_back(q == j ? u : Term::var(zs[q - 1]));
            return Term::app(sr_bar(f), args);
        };
        std::vector<Term> sb, tb;
        for (const auto& c : rule.conds) {
            sb.push_back(overline(ctx, c.lhs));
            tb.push_back(overline(ctx, c.rhs));
        }
        // stack after i conditions are done, with `head` in the brace
        auto stk = [&](const Term& head, std::size_t done) {
            std::vector<Term> e{curly(head)};
            for (std::size_t m = done; m >= 1; --m) e.push_back(tb[m - 1]);
            return stack(k, e);
        };
        add(rule.label + "/init", slot(bot()), slot(stk(sb[0], 0)));
        for (std::size_t i = 1; i < k; ++i)
            add(rule.label + "/adv" + std::to_string(i), slot(stk(tb[i - 1], i - 1)), slot(stk(sb[i], i)));
        add(rule.label + "/final", slot(stk(tb[k - 1], k - 1)), rbar);
    }

    for (const auto& [f, n] : ctx.arity) {
        if (!ctx.defined.count(f)) continue;
        const std::size_t nf = ctx.n_f(f);
        std::vector<std::string> xs, zs;
        for (int i = 1; i <= n; ++i) xs.push_back("x" + std::to_string(i));
        for (std::size_t i = 1; i <= nf; ++i) zs.push_back("z" + std::to_string(i));
        std::vector<Term> reset;
        for (const auto& x : xs) reset.push_back(Term::var(x));
        for (std::size_t i = 0; i < nf; ++i) reset.push_back(bot());
        for (int i = 1; i <= n; ++i) {
            std::vector<Term> args;
            for (int q = 1; q <= n; ++q) args.push_back(q == i ? curly(Term::var(xs[q - 1])) : Term::var(xs[q - 1]));
            for (const auto& z : zs) args.push_back(Term::var(z));
            add("push:" + sr_bar(f) + ":" + std::to_string(i), Term::app(sr_bar(f), args),
                curly(Term::app(sr_bar(f), reset)));
        }
    }
    for (const auto& [c, n] : ctx.arity) {
        if (ctx.defined.count(c) || n == 0) continue;
        std::vector<std::string> xs;
        for (int i = 1; i <= n; ++i) xs.push_back("x" + std::to_string(i));
        for (int i = 1; i <= n; ++i) {
            std::vector<Term> args;
            for (int q = 1; q <= n; ++q) args.push_back(q == i ? curly(Term::var(xs[q - 1])) : Term::var(xs[q - 1]));
            add("push:" + c + ":" + std::to_string(i), Term::app(c, args), curly(vars_app(c, xs)));
        }
    }
    add("collapse", curly(curly(Term::var("x"))), curly(Term::var("x")));

    out.generated.insert(kCurly);
    out.generated.insert(kBot);
    for (auto k : ctx.stack_sizes) out.generated.insert(sr_stack(k));
    for (const auto& f : ctx.defined) out.generated.insert(sr_bar(f));
    return res;
}

// ---------------------------------------------------------------- hat, positions, shape

std::optional<Term> hat(const SrContext& ctx, const Term& t) {
    if (t.is_var()) return t;
    if (t.name() == kCurly && t.arity() == 1) return hat(ctx, t.arg(1));
    std::string sym;
    std::size_t n = t.arity();
    if (auto f = ctx.unbar(t.name())) {
        sym = *f;
        n = static_cast<std::size_t>(ctx.arity.at(sym));
        if (t.arity() != n + ctx.n_f(sym)) return std::nullopt;
    } else if (ctx.constructors.count(t.name())) {
        sym = t.name();
    } else {
        return std::nullopt;
    }
    std::vector<Term> args;
    for (std::size_t i = 1; i <= n; ++i) {
        auto a = hat(ctx, t.arg(i));
        if (!a) return std::nullopt;
        args.push_back(*a);
    }
    return Term::app(sym, args);
}

namespace {

bool str_rec(const SrContext& ctx, const Term& t, const Position& at, std::set<Position>& out) {
    if (t.is_var()) {
        out.insert(at);
        return true;
    }
    std::size_t n = t.arity();
    if (t.name() == kCurly && n == 1) {
        Position p = at;
        p.push_back(1);
        return str_rec(ctx, t.arg(1), p, out);
    }
    if (auto f = ctx.unbar(t.name())) {
        n = static_cast<std::size_t>(ctx.arity.at(*f));
        if (t.arity() != n + ctx.n_f(*f)) return false;
    } else if (!ctx.constructors.count(t.name())) {
        return false;  // bot, stacks, anything foreign
    }
    out.insert(at);
    for (std::size_t i = 1; i <= n; ++i) {
        Position p = at;
        p.push_back(static_cast<int>(i));
        if (!str_rec(ctx, t.arg(i), p, out)) return false;
    }
    return true;
}

bool shape_rec(const SrContext& ctx, const Term& t) {
    if (t.is_var()) return true;
    if (t.name() == kBot) return false;
    auto f = ctx.unbar(t.name());
    if (!f) {
        if (t.name().rfind("stk", 0) == 0 && !ctx.arity.count(t.name())) return false;
        for (const auto& a : t.args())
            if (!shape_rec(ctx, a)) return false;
        return true;
    }
    const std::size_t n = static_cast<std::size_t>(ctx.arity.at(*f));
    const std::size_t nf = ctx.n_f(*f);
    if (t.arity() != n + nf) return false;
    for (std::size_t i = 1; i <= n; ++i)
        if (!shape_rec(ctx, t.arg(i))) return false;
    for (std::size_t j = 1; j <= nf; ++j) {
        const Term& u = t.arg(n + j);
        if (!u.is_var() && u.name() == kBot && u.arity() == 0) continue;
        const Rule& rule = ctx.original.rules[ctx.cond_rules.at(*f)[j - 1]];
        const std::size_t k = rule.conds.size();
        if (u.is_var() || u.name() != sr_stack(k) || u.arity() != k) return false;
        const Term& head = u.arg(1);
        if (head.is_var() || head.name() != kCurly || head.arity() != 1 || !shape_rec(ctx, head.arg(1))) return false;
        bool in_tail = false;
        for (std::size_t q = 2; q <= k; ++q) {
            const Term& e = u.arg(q);
            bool is_bot = !e.is_var() && e.name() == kBot && e.arity() == 0;
            if (is_bot) {
                in_tail = true;
                continue;
            }
            if (in_tail || !shape_rec(ctx, e)) return false;
        }
    }
    return true;
}

Step make_step(const RewriteSystem& sys, const Term& t, const Position& p, const std::string& label,
               const Substitution& extra = {}) {
    const Rule* r = sys.find(label);
    if (!r) throw DomainError("no rule labelled " + label);
    const Term& redex = subterm_at(t, p);
    auto s = match(r->lhs, redex);
    if (!s) throw DomainError("rule " + label + " does not match " + redex.str() + " at " + position_str(p));
    for (const auto& x : r->extra_vars()) {
        auto it = extra.find(x);
        if (it == extra.end()) throw DomainError("rule " + label + " needs a value for " + x);
        (*s)[x] = it->second;
    }
    Step st;
    st.pos = p;
    st.rule = label;
    st.subst = *s;
    st.result = replace_at(t, p, substitute(r->rhs, *s));
    return st;
}

bool is_curly(const Term& t) { return !t.is_var() && t.name() == kCurly && t.arity() == 1; }

}  // namespace

std::optional<std::set<Position>> structural_positions(const SrContext& ctx, const Term& t) {
    std::set<Position> out;
    if (!str_rec(ctx, t, {}, out)) return std::nullopt;
    return out;
}

bool reachable_shape(const SrContext& ctx, const Term& t) { return shape_rec(ctx, t); }

std::vector<Step> float_brace(const SrContext& ctx, const RewriteSystem& sr, const Term& t, const Position& pos,
                              bool stop_at_curly) {
    std::vector<Step> steps;
    Term cur = t;
    Position q = pos;
    if (!is_curly(subterm_at(cur, q))) throw DomainError("float_brace: no brace at " + position_str(q));
    while (!q.empty()) {
        const int i = q.back();
        Position parent(q.begin(), q.end() - 1);
        const Term& up = subterm_at(cur, parent);
        std::string label;
        if (is_curly(up)) {
            label = "collapse";
        } else if (auto f = ctx.unbar(up.name())) {
            if (i > ctx.arity.at(*f)) throw DomainError("float_brace: brace inside an extra argument");
            label = "push:" + up.name() + ":" + std::to_string(i);
        } else if (ctx.constructors.count(up.name())) {
            label = "push:" + up.name() + ":" + std::to_string(i);
        } else {
            throw DomainError("float_brace: position " + position_str(pos) + " is not structural");
        }
        Step st = make_step(sr, cur, parent, label);
        cur = st.result;
        steps.push_back(std::move(st));
        q = parent;
        if (label == "collapse" && stop_at_curly) break;
    }
    return steps;
}

Derivation sr_simulate_u_derivation(const SrContext& ctx, const RewriteSystem& sr, const Derivation& d) {
    const RewriteSystem u = unravel_U(ctx.original);
    Derivation out;
    out.start = curly(overline_u(ctx, d.start));
    Term cur = out.start;
    Term src = d.start;
    for (std::size_t n = 0; n < d.steps.size(); ++n) {
        const Step& st = d.steps[n];
        // position of the redex inside the image
        Position q{1};
        Term walk = src;
        for (int i : st.pos) {
            if (walk.is_var()) throw DomainError("step position leaves the term");
            auto us = ctx.u_symbols.find(walk.name());
            if (us != ctx.u_symbols.end()) {
                if (i != 1)
                    throw DomainError("step " + std::to_string(n + 1) +
                                      " rewrites inside a remembered argument of " + walk.name());
                const Rule& rule = ctx.original.rules[us->second.first];
                const auto n_args = static_cast<int>(rule.lhs.arity());
                const auto j = static_cast<int>(ctx.slot.at(rule.label).second);
                q.insert(q.end(), {n_args + j, 1, 1});
            } else {
                q.push_back(i);
            }
            walk = walk.arg(static_cast<std::size_t>(i));
        }

        const Rule* ur = u.find(st.rule);
        if (!ur) throw DomainError("unknown U(R) rule " + st.rule);
        Substitution sbar;
        for (const auto& [x, v] : st.subst) sbar[x] = overline_u(ctx, v);

        std::string label;
        bool produces_brace = false;
        const auto slash = st.rule.rfind('/');
        const Rule* orig = ctx.original.find(st.rule);
        if (orig && !orig->conditional()) {
            label = st.rule;
            produces_brace = true;
        } else {
            if (slash == std::string::npos) throw DomainError("unexpected rule label " + st.rule);
            const std::string base = st.rule.substr(0, slash);
            const std::size_t j = std::stoul(st.rule.substr(slash + 1));
            const Rule* cr = ctx.original.find(base);
            if (!cr) throw DomainError("unknown source rule " + base);
            const std::size_t k = cr->conds.size();
            if (j == 1) {
                label = base + "/init";
            } else if (j <= k) {
                label = base + "/adv" + std::to_string(j - 1);
            } else {
                label = base + "/final";
                produces_brace = true;
            }
        }
        Step sst = make_step(sr, cur, q, label, sbar);
        cur = sst.result;
        out.steps.push_back(std::move(sst));
        if (produces_brace)
            for (auto& fs : float_brace(ctx, sr, cur, q, true)) {
                cur = fs.result;
                out.steps.push_back(std::move(fs));
            }
        src = st.result;
        const Term expect = curly(overline_u(ctx, src));
        if (cur != expect)
            throw DomainError("simulation diverged at step " + std::to_string(n + 1) + ": " + cur.str() + " vs " +
                              expect.str());
    }
    return out;
}

}  // namespace ctrs
