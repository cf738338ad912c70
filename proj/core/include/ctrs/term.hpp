#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ctrs {

class Term;

/// Root is the empty sequence; argument indices start at 1.
using Position = std::vector<int>;
using Substitution = std::map<std::string, Term>;

class PositionError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/**
 * First-order term.  Either a variable or a symbol applied to arguments.
 *
 * Nodes are immutable and shared; copying a Term is a refcount bump.
 * Size, depth, hash and groundness are cached at construction.
 */
class Term {
public:
    Term();  // the variable "_"; only useful as a placeholder

    static Term var(std::string name);
    static Term app(std::string symbol, std::vector<Term> args = {});

    bool is_var() const { return node_->is_var; }
    const std::string& name() const { return node_->name; }
    const std::vector<Term>& args() const { return node_->args; }
    const Term& arg(std::size_t i) const { return node_->args.at(i - 1); }  // 1-based
    std::size_t arity() const { return node_->args.size(); }
    std::size_t size() const { return node_->size; }
    // constants and variables have depth 0
    std::size_t depth() const { return node_->depth; }
    std::size_t hash() const { return node_->hash; }
    bool ground() const { return node_->ground; }

    bool operator==(const Term& o) const;
    bool operator!=(const Term& o) const { return !(*this == o); }

    std::string str() const;

private:
    struct Node {
        bool is_var = false;
        std::string name;
        std::vector<Term> args;
        std::size_t hash = 0;
        std::size_t size = 1;
        std::size_t depth = 0;
        bool ground = true;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend int compare(const Term&, const Term&);
};

/// Canonical total order: size, then variables first, then name, then arguments.
int compare(const Term& a, const Term& b);

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};
struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TermSet = std::set<Term, TermLess>;
using TermHashSet = std::unordered_set<Term, TermHash>;
template <class V>
using TermMap = std::unordered_map<Term, V, TermHash>;

// ---- positions ----

std::string position_str(const Position& p);  // "1.2.1", root is "e"
bool is_prefix(const Position& p, const Position& q);  // p <= q
bool parallel(const Position& p, const Position& q);
Position concat(const Position& p, const Position& q);

enum class PosKind { All, Function, Variable };

const Term& subterm_at(const Term& t, const Position& p);  // throws PositionError
bool has_position(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);  // throws PositionError
/// Pre-order, left to right.
std::vector<Position> positions(const Term& t, PosKind kind = PosKind::All);

// ---- variables and symbols ----

/// Variables in order of first occurrence (depth-first, left to right).
std::vector<std::string> vars_in_order(const Term& t);
void collect_vars(const Term& t, std::set<std::string>& out);
std::set<std::string> var_set(const Term& t);
void collect_symbols(const Term& t, std::map<std::string, int>& out);
bool is_linear(const Term& t);
bool contains_symbol(const Term& t, const std::set<std::string>& syms);
std::size_t occurrences(const Term& t, const std::string& var);

// ---- substitutions ----

Term substitute(const Term& t, const Substitution& s);
/// t.(s o th) == (t.s).th
Substitution compose(const Substitution& s, const Substitution& th);
std::set<std::string> domain(const Substitution& s);
std::vector<Term> range(const Substitution& s);
Substitution restrict_to(const Substitution& s, const std::set<std::string>& xs);
Term rename_vars(const Term& t, const std::map<std::string, std::string>& ren);

/// Fresh name: base + "#" + n.  The parser never accepts '#', so these never clash with input.
std::string fresh_name(const std::string& base, int n);

// ---- matching and unification ----

std::optional<Substitution> match(const Term& pattern, const Term& subject);
/// Extends `s` in place; on failure `s` is left in an unspecified state.
bool match_into(const Term& pattern, const Term& subject, Substitution& s);
/// Idempotent most general unifier with occurs check.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// True iff a and b are equal up to a bijective variable renaming.
bool variant(const Term& a, const Term& b);

/// Multi-hole context: a term plus parallel hole positions.
struct Context {
    Term term;
    std::vector<Position> holes;
    Term fill(const std::vector<Term>& fillers) const;
};

}  // namespace ctrs
