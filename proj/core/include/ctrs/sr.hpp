#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctrs/rewrite.hpp"
#include "ctrs/system.hpp"

namespace ctrs {

// Reserved names of the SR signature.
inline constexpr const char* kCurly = "curly";
inline constexpr const char* kBot = "bot";
std::string sr_bar(const std::string& f);      // "<f>^bar"
std::string sr_stack(std::size_t k);           // "stk<k>"

struct SrContext {
    RewriteSystem original;
    std::set<std::string> defined;
    std::set<std::string> constructors;
    Signature arity;  // original signature
    /// rho_{f,1..n_f}: indices into original.rules of the conditional f-rules, input order.
    std::map<std::string, std::vector<std::size_t>> cond_rules;
    /// Per conditional rule label: the defined symbol and j in rho_{f,j}.
    std::map<std::string, std::pair<std::string, std::size_t>> slot;
    std::set<std::size_t> stack_sizes;
    /// U symbol of U(R) -> (rule index, i), used by the extended overline.
    std::map<std::string, std::pair<std::size_t, std::size_t>> u_symbols;

    std::size_t n_f(const std::string& f) const;
    bool is_bar(const std::string& sym) const;
    /// Inverse of sr_bar for defined symbols.
    std::optional<std::string> unbar(const std::string& sym) const;
};

struct SrResult {
    RewriteSystem system;
    SrContext ctx;
};

/// Throws DomainError on reserved-name collisions, variable left-hand sides or
/// non-deterministic rules.
SrResult sr_transform(const RewriteSystem& system);
SrContext make_sr_context(const RewriteSystem& system);

/// Throws DomainError on symbols outside the original signature.
Term overline(const SrContext& ctx, const Term& t);
/// Also translates U symbols of U(R) into stacked f-bar terms.
Term overline_u(const SrContext& ctx, const Term& t);
/// phi_SR(t) = {overline(t)}
Term sr_translate(const SrContext& ctx, const Term& t);
std::optional<Term> hat(const SrContext& ctx, const Term& t);

std::optional<std::set<Position>> structural_positions(const SrContext& ctx, const Term& t);
bool reachable_shape(const SrContext& ctx, const Term& t);

/// Steps that float the brace at `pos` upwards: push rules, then collapse.
/// With `stop_at_curly` the walk ends at the first enclosing brace.
std::vector<Step> float_brace(const SrContext& ctx, const RewriteSystem& sr, const Term& t, const Position& pos,
                              bool stop_at_curly);

/**
 * Replays a derivation of U(R) in SR(R).  Every U step becomes one SR step
 * followed by brace floating.  Steps inside a remembered-variable argument of a
 * U symbol have no counterpart in the construction and raise DomainError.
 */
Derivation sr_simulate_u_derivation(const SrContext& ctx, const RewriteSystem& sr, const Derivation& d);

}  // namespace ctrs
