#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctrs/term.hpp"

namespace ctrs {

enum class Flavor { Oriented, Join };

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Condition {
    Term lhs;
    Term rhs;
    bool operator==(const Condition&) const = default;
};

struct Rule {
    std::string label;
    Term lhs;
    Term rhs;
    std::vector<Condition> conds;

    bool conditional() const { return !conds.empty(); }
    std::set<std::string> vars() const;
    /// (Var(r) u Var(c)) \ Var(l)
    std::set<std::string> extra_vars() const;
    /// same lhs, rhs and conditions; labels ignored
    bool same_shape(const Rule& o) const;
    std::string str(Flavor f = Flavor::Oriented) const;
};

using Signature = std::map<std::string, int>;

struct RewriteSystem {
    std::vector<Rule> rules;
    /// Declaration order matters: it is the fixed variable order used by the unravelings.
    std::vector<std::string> variables;
    Flavor flavor = Flavor::Oriented;
    bool extended = false;
    std::string origin;
    /// Symbols introduced by a transformation (U symbols, eq, SR markers, ...).
    std::set<std::string> generated;

    bool is_variable(const std::string& name) const;
    void add_variable(const std::string& name);
    /// Throws DomainError on an arity clash.
    Signature signature() const;
    std::set<std::string> defined() const;
    std::set<std::string> constructors() const;
    bool conditional() const;
    /// R_u: conditions dropped.
    RewriteSystem underlying() const;
    const Rule* find(const std::string& label) const;
};

/// Arity-consistent union of the symbols in a system and extra terms.
Signature merge_signature(Signature sig, const Term& t);

/// Lexicographic-by-declaration variable order; undeclared names sort after, by name.
class VarOrder {
public:
    explicit VarOrder(const std::vector<std::string>& declared);
    std::vector<std::string> sort(const std::set<std::string>& xs) const;

private:
    std::map<std::string, std::size_t> rank_;
};

/// Fresh variable names that avoid `taken`.  Readable ("x1", "x2", ...), unlike fresh_name().
class NameSupply {
public:
    explicit NameSupply(std::set<std::string> taken) : taken_(std::move(taken)) {}
    std::string next(const std::string& base);

private:
    std::set<std::string> taken_;
};

Rule substitute(const Rule& r, const Substitution& s);

// ---------------------------------------------------------------- classification

struct RuleClass {
    bool deterministic = true;
    int type = 1;
    bool ll = true, rl = true, ne = true, non_lv = true, non_rv = true;
    bool normal = true;
    bool ground_conditional = true;
    bool wll_normal1 = true;
    bool wll_3dctrs = true;
    bool right_stable = true;
    bool right_separated = true;
    bool syntactically_deterministic = true;
};

struct ClassificationReport {
    std::vector<std::pair<std::string, RuleClass>> rules;
    RuleClass system;  // conjunction; type is the maximum
    bool constructor_system = true;
    bool overlay = true;
    bool non_overlapping = true;
    /// "yes" when the syntactic check passes, otherwise "unknown"
    std::string strongly_deterministic = "yes";
    std::set<std::string> defined;
    std::set<std::string> constructors;
    Flavor flavor = Flavor::Oriented;
    std::size_t max_conditions = 0;
};

RuleClass classify_rule(const Rule& rule, const RewriteSystem& context);
ClassificationReport classify(const RewriteSystem& system);

/// X_i = Var(l, t_1..t_{i-1}); i is 1-based.
std::set<std::string> x_set(const Rule& r, std::size_t i);
/// Y_i = Var(r, t_i, s_{i+1}, t_{i+1}, ..., s_k, t_k)
std::set<std::string> y_set(const Rule& r, std::size_t i);
std::set<std::string> z_set(const Rule& r, std::size_t i);

/// No subterm of t is an instance of a lhs of an unconditional version of the rules.
bool is_normal_form(const Term& t, const RewriteSystem& system);

// ---------------------------------------------------------------- inversion

Rule invert_rule(const Rule& r);
/// Rejects join systems.
RewriteSystem invert(const RewriteSystem& system);

// ---------------------------------------------------------------- critical pairs

struct CriticalPair {
    Term left;   // outer lhs with inner rhs plugged in, instantiated
    Term right;  // outer rhs, instantiated
    std::vector<Condition> conds;
    bool trivial = false;
    Position pos;
    std::string outer;  // rule whose lhs contains the overlap position
    std::string inner;
    Substitution mgu;
    Rule outer_renamed;
    Rule inner_renamed;
};

std::vector<CriticalPair> critical_pairs(const RewriteSystem& system);

// ---------------------------------------------------------------- equality up to renaming

/// Rule with variables renamed to v1, v2, ... in order of first occurrence.
Rule canonical_rule(const Rule& r);

/**
 * Equal as rule sets up to per-rule variable renaming and a bijection on
 * non-fixed symbols.  Symbols in `fixed` must map to themselves.
 */
bool alpha_u_equal(const RewriteSystem& a, const RewriteSystem& b, const std::set<std::string>& fixed);
/// `fixed` defaults to the symbols of both systems that neither marks as generated.
bool alpha_u_equal(const RewriteSystem& a, const RewriteSystem& b);
/// Equality under a given symbol renaming applied to `a` (unmapped symbols stay).
bool equal_under_renaming(const RewriteSystem& a, const RewriteSystem& b,
                          const std::map<std::string, std::string>& symbol_map);

Term rename_symbols(const Term& t, const std::map<std::string, std::string>& m);
Rule rename_symbols(const Rule& r, const std::map<std::string, std::string>& m);

}  // namespace ctrs
