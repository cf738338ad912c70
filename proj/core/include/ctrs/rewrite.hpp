#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctrs/system.hpp"

namespace ctrs {

struct Bounds {
    int level = 6;                  // n in ->(n); conditions are evaluated at n-1
    int steps = 24;                 // breadth-first depth of every closure
    std::size_t term_size = 40;     // larger terms are pruned
    int ev_depth = 1;               // depth of the extra-variable universe
    std::size_t max_states = 1000000;  // hard cap per closure
};

struct Policy {
    enum class Restriction { None, ContextSensitive, Membership };
    enum class Strategy { Full, LeftmostInnermost, LeftmostInnermostTop };

    Restriction restriction = Restriction::None;
    /// Context-sensitive replacement map; symbols not listed may be entered at every argument.
    std::map<std::string, std::set<int>> mu;
    /// Membership: symbols that a redex may not contain below its root.  Empty means the system's generated symbols.
    std::set<std::string> marked;
    Strategy strategy = Strategy::Full;

    static Policy context_sensitive(std::map<std::string, std::set<int>> mu);
    static Policy membership(std::set<std::string> marked = {});
};

using BasicSet = std::set<Position>;

struct Step {
    Position pos;
    std::string rule;
    Substitution subst;
    Term result;
    BasicSet basic;  // ev-safe mode only
};

struct Derivation {
    Term start;
    std::vector<Step> steps;
    bool ev_safe = false;
    BasicSet basic0;

    const Term& end() const { return steps.empty() ? start : steps.back().result; }
};

struct EvState {
    Term term;
    BasicSet basic;
};

/// All ground terms over `sig` of depth <= depth, in canonical order.
std::vector<Term> ground_terms(const Signature& sig, int depth, std::size_t cap = 100000);

struct VerifyResult {
    bool ok = true;
    int failed_step = -1;  // 0-based
    std::string message;
    explicit operator bool() const { return ok; }
};

/// Bounded closure.  `exhaustive()` means nothing was cut off by the step, size or state
/// bounds and no extra variable had to be guessed from the universe.
struct Closure {
    std::vector<Term> terms;  // breadth-first order
    bool converged = false;
    bool size_pruned = false;
    bool state_capped = false;
    bool ev_enumerated = false;
    bool nested_incomplete = false;  // some condition was decided on a non-exhaustive closure
    bool stopped = false;            // reach_until hit its predicate

    bool exhaustive() const { return converged && !stopped && !size_pruned && !state_capped && !ev_enumerated; }
    bool contains(const Term& t) const { return index.count(t) > 0; }
    std::optional<Derivation> derivation_to(const Term& t) const;

    TermMap<std::size_t> index;
    struct Back {
        std::size_t parent;  // index into terms; self for the start
        Step step;
    };
    std::vector<Back> back;
};

struct EvClosure {
    std::vector<EvState> states;
    bool converged = false;
    bool size_pruned = false;
    bool state_capped = false;
    bool ev_enumerated = false;

    bool exhaustive() const { return converged && !size_pruned && !state_capped && !ev_enumerated; }
    bool contains_term(const Term& t) const;
    std::optional<Derivation> derivation_to(const Term& t) const;

    struct Back {
        std::size_t parent;
        Step step;
    };
    std::vector<Back> back;
    Term start;
    BasicSet basic0;
};

/**
 * Bounded rewriting over one system.  Unconditional systems may carry extra
 * variables; they are instantiated from the universe.  Conditional rules use
 * the level semantics: ->(0) is empty and a rule fires at level n when its
 * conditions hold for ->(n-1).
 */
class Engine {
public:
    Engine(RewriteSystem system, Bounds bounds = {}, Policy policy = {},
           std::optional<std::vector<Term>> universe = std::nullopt);
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const RewriteSystem& system() const;
    const Bounds& bounds() const;
    const Policy& policy() const;
    const std::vector<Term>& universe() const;

    std::vector<Step> successors(const Term& t);
    std::vector<Step> successors(const Term& t, int level);
    /// Steps at one position, ignoring strategy but honouring the restriction.
    std::vector<Step> successors_at(const Term& t, const Position& p, int level);
    bool position_allowed(const Term& t, const Position& p) const;
    /// Leftmost-innermost position with at least one step, if any.
    std::optional<Position> leftmost_innermost(const Term& t, int level);

    Closure reach(const Term& from);
    Closure reach(const Term& from, int level, int steps);
    /// Breadth-first like reach(), but ends as soon as `stop` holds for a newly found term.
    Closure reach_until(const Term& from, const std::function<bool(const Term&)>& stop);
    bool joinable(const Term& s, const Term& t, int level);

    std::vector<Term> parallel_successors(const Term& t);

    std::vector<Step> ev_safe_successors(const EvState& state);
    EvClosure ev_safe_reach(const Term& from, const BasicSet& basic0);

    VerifyResult verify(const Derivation& d);

    std::size_t explored() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

BasicSet function_positions(const Term& t);

/// The basic set after contracting `rule` at `p` with `subst`, per the EV-safe recurrence.
BasicSet next_basic(const BasicSet& basic, const Position& p, const Rule& rule);

// Convenience wrappers.
std::vector<Step> trs_successors(const RewriteSystem& system, const Term& t, const Policy& policy,
                                 const std::vector<Term>& universe);
std::vector<Step> ctrs_successors(const RewriteSystem& system, const Term& t, const Bounds& bounds,
                                  bool demand_complete = false);
Closure reachable(const RewriteSystem& system, const Term& from, const Bounds& bounds, const Policy& policy = {});
std::vector<Term> parallel_successors(const RewriteSystem& system, const Term& t);
VerifyResult verify_derivation(const Derivation& d, const RewriteSystem& system, const Policy& policy = {},
                               const Bounds& bounds = {});

}  // namespace ctrs
