#include "ctrs/term.hpp"

#include <algorithm>
#include <functional>

namespace ctrs {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term::Term() : Term(var("_")) {}

Term Term::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->hash = mix(0x51ed2701u, std::hash<std::string>{}(name));
    n->name = std::move(name);
    n->ground = false;
    return Term(std::move(n));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    std::size_t h = std::hash<std::string>{}(symbol);
    std::size_t sz = 1, dp = 0;
    bool gr = true;
    for (const auto& a : args) {
        h = mix(h, a.hash());
        sz += a.size();
        dp = std::max(dp, a.depth() + 1);
        gr = gr && a.ground();
    }
    n->name = std::move(symbol);
    n->args = std::move(args);
    n->hash = mix(h, n->args.size());
    n->size = sz;
    n->depth = dp;
    n->ground = gr;
    return Term(std::move(n));
}

bool Term::operator==(const Term& o) const {
    if (node_ == o.node_) return true;
    if (node_->hash != o.node_->hash || node_->size != o.node_->size) return false;
    if (node_->is_var != o.node_->is_var || node_->name != o.node_->name) return false;
    const auto& a = node_->args;
    const auto& b = o.node_->args;
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

int compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return 0;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
    return 0;
}

std::string Term::str() const {
    if (is_var() || arity() == 0) return name();
    std::string s = name() + "(";
    for (std::size_t i = 0; i < arity(); ++i) {
        if (i) s += ",";
        s += args()[i].str();
    }
    return s + ")";
}

std::string position_str(const Position& p) {
    if (p.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(p[i]);
    }
    return s;
}

bool is_prefix(const Position& p, const Position& q) {
    return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

bool parallel(const Position& p, const Position& q) { return !is_prefix(p, q) && !is_prefix(q, p); }

Position concat(const Position& p, const Position& q) {
    Position r = p;
    r.insert(r.end(), q.begin(), q.end());
    return r;
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (int i : p) {
        if (i < 1 || static_cast<std::size_t>(i) > cur->arity())
            throw PositionError("position " + position_str(p) + " not in " + t.str());
        cur = &cur->args()[i - 1];
    }
    return *cur;
}

bool has_position(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (int i : p) {
        if (i < 1 || static_cast<std::size_t>(i) > cur->arity()) return false;
        cur = &cur->args()[i - 1];
    }
    return true;
}

namespace {

Term replace_rec(const Term& t, const Position& p, std::size_t k, const Term& u) {
    if (k == p.size()) return u;
    int i = p[k];
    if (i < 1 || static_cast<std::size_t>(i) > t.arity())
        throw PositionError("position " + position_str(p) + " not in term");
    std::vector<Term> args = t.args();
    args[i - 1] = replace_rec(t.args()[i - 1], p, k + 1, u);
    return Term::app(t.name(), std::move(args));
}

void positions_rec(const Term& t, Position& cur, PosKind kind, std::vector<Position>& out) {
    if (kind == PosKind::All || (kind == PosKind::Function) == !t.is_var()) out.push_back(cur);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        cur.push_back(static_cast<int>(i + 1));
        positions_rec(t.args()[i], cur, kind, out);
        cur.pop_back();
    }
}

void vars_order_rec(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
    if (t.is_var()) {
        if (seen.insert(t.name()).second) out.push_back(t.name());
        return;
    }
    for (const auto& a : t.args()) vars_order_rec(a, out, seen);
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) { return replace_rec(t, p, 0, u); }

std::vector<Position> positions(const Term& t, PosKind kind) {
    std::vector<Position> out;
    Position cur;
    positions_rec(t, cur, kind, out);
    return out;
}

std::vector<std::string> vars_in_order(const Term& t) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    vars_order_rec(t, out, seen);
    return out;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
    if (t.ground()) return;
    if (t.is_var()) {
        out.insert(t.name());
        return;
    }
    for (const auto& a : t.args()) collect_vars(a, out);
}

std::set<std::string> var_set(const Term& t) {
    std::set<std::string> s;
    collect_vars(t, s);
    return s;
}

void collect_symbols(const Term& t, std::map<std::string, int>& out) {
    if (t.is_var()) return;
    out.emplace(t.name(), static_cast<int>(t.arity()));
    for (const auto& a : t.args()) collect_symbols(a, out);
}

std::size_t occurrences(const Term& t, const std::string& var) {
    if (t.is_var()) return t.name() == var ? 1 : 0;
    std::size_t n = 0;
    for (const auto& a : t.args()) n += occurrences(a, var);
    return n;
}

bool is_linear(const Term& t) {
    std::vector<std::string> all;
    std::function<void(const Term&)> go = [&](const Term& u) {
        if (u.is_var()) {
            all.push_back(u.name());
            return;
        }
        for (const auto& a : u.args()) go(a);
    };
    go(t);
    std::sort(all.begin(), all.end());
    return std::adjacent_find(all.begin(), all.end()) == all.end();
}

bool contains_symbol(const Term& t, const std::set<std::string>& syms) {
    if (t.is_var()) return false;
    if (syms.count(t.name())) return true;
    for (const auto& a : t.args())
        if (contains_symbol(a, syms)) return true;
    return false;
}

Term substitute(const Term& t, const Substitution& s) {
    if (t.is_var()) {
        auto it = s.find(t.name());
        return it == s.end() ? t : it->second;
    }
    if (t.ground() || t.arity() == 0) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(substitute(a, s));
        changed = changed || !(args.back() == a);
    }
    if (!changed) return t;
    return Term::app(t.name(), std::move(args));
}

Substitution compose(const Substitution& s, const Substitution& th) {
    Substitution out;
    for (const auto& [x, t] : s) out.emplace(x, substitute(t, th));
    for (const auto& [x, t] : th)
        if (!s.count(x)) out.emplace(x, t);
    // drop trivial bindings x -> x
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_var() && it->second.name() == it->first)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

std::set<std::string> domain(const Substitution& s) {
    std::set<std::string> d;
    for (const auto& [x, t] : s)
        if (!(t.is_var() && t.name() == x)) d.insert(x);
    return d;
}

std::vector<Term> range(const Substitution& s) {
    std::vector<Term> r;
    for (const auto& [x, t] : s)
        if (!(t.is_var() && t.name() == x)) r.push_back(t);
    return r;
}

Substitution restrict_to(const Substitution& s, const std::set<std::string>& xs) {
    Substitution out;
    for (const auto& [x, t] : s)
        if (xs.count(x)) out.emplace(x, t);
    return out;
}

Term rename_vars(const Term& t, const std::map<std::string, std::string>& ren) {
    Substitution s;
    for (const auto& [a, b] : ren) s.emplace(a, Term::var(b));
    return substitute(t, s);
}

std::string fresh_name(const std::string& base, int n) { return base + "#" + std::to_string(n); }

bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
    if (pattern.is_var()) {
        auto [it, inserted] = s.emplace(pattern.name(), subject);
        return inserted || it->second == subject;
    }
    if (subject.is_var() || pattern.name() != subject.name() || pattern.arity() != subject.arity())
        return false;
    for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match_into(pattern.args()[i], subject.args()[i], s)) return false;
    return true;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    Substitution s;
    if (!match_into(pattern, subject, s)) return std::nullopt;
    return s;
}

namespace {

Term walk(const Term& t, const Substitution& s) {
    Term cur = t;
    while (cur.is_var()) {
        auto it = s.find(cur.name());
        if (it == s.end()) break;
        cur = it->second;
    }
    return cur;
}

bool occurs(const std::string& x, const Term& t, const Substitution& s) {
    Term u = walk(t, s);
    if (u.is_var()) return u.name() == x;
    for (const auto& a : u.args())
        if (occurs(x, a, s)) return true;
    return false;
}

Term resolve(const Term& t, const Substitution& s) {
    Term u = walk(t, s);
    if (u.is_var() || u.arity() == 0) return u;
    std::vector<Term> args;
    for (const auto& a : u.args()) args.push_back(resolve(a, s));
    return Term::app(u.name(), std::move(args));
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
    Substitution s;  // triangular form
    std::vector<std::pair<Term, Term>> work{{a, b}};
    while (!work.empty()) {
        auto [l, r] = work.back();
        work.pop_back();
        l = walk(l, s);
        r = walk(r, s);
        if (l.is_var() && r.is_var() && l.name() == r.name()) continue;
        if (l.is_var() || r.is_var()) {
            if (!l.is_var()) std::swap(l, r);
            if (occurs(l.name(), r, s)) return std::nullopt;
            s.emplace(l.name(), r);
            continue;
        }
        if (l.name() != r.name() || l.arity() != r.arity()) return std::nullopt;
        for (std::size_t i = 0; i < l.arity(); ++i) work.emplace_back(l.args()[i], r.args()[i]);
    }
    Substitution out;
    for (const auto& [x, t] : s) out.emplace(x, resolve(t, s));
    return out;
}

bool variant(const Term& a, const Term& b) {
    std::map<std::string, std::string> fwd, bwd;
    std::function<bool(const Term&, const Term&)> go = [&](const Term& x, const Term& y) {
        if (x.is_var() != y.is_var()) return false;
        if (x.is_var()) {
            auto [i1, n1] = fwd.emplace(x.name(), y.name());
            auto [i2, n2] = bwd.emplace(y.name(), x.name());
            return i1->second == y.name() && i2->second == x.name();
        }
        if (x.name() != y.name() || x.arity() != y.arity()) return false;
        for (std::size_t i = 0; i < x.arity(); ++i)
            if (!go(x.args()[i], y.args()[i])) return false;
        return true;
    };
    return go(a, b);
}

Term Context::fill(const std::vector<Term>& fillers) const {
    if (fillers.size() != holes.size()) throw std::invalid_argument("context: filler count mismatch");
    Term t = term;
    for (std::size_t i = 0; i < holes.size(); ++i) t = replace_at(t, holes[i], fillers[i]);
    return t;
}

}  // namespace ctrs
