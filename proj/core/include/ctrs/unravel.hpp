#pragma once

#include <string>
#include <vector>

#include "ctrs/system.hpp"

namespace ctrs {

enum class Unraveling { U, Uopt };

/// Variable bookkeeping for one conditional rule; `steps[i-1]` belongs to condition i.
struct UnravelPlan {
    struct Step {
        std::vector<std::string> x;  // X_i, sorted by the variable order
        std::vector<std::string> y;  // Y_i
        std::vector<std::string> z;  // X_i n Y_i
        std::string symbol;          // U_<label>_<i>
    };
    std::string label;
    std::vector<Step> steps;
};

/// "U_<label>_<i>" with characters outside [A-Za-z0-9_'] replaced by '_'.
std::string u_symbol(const std::string& label, std::size_t i);
/// "U_<label>", the single symbol used by UJ and UN.
std::string u_symbol(const std::string& label);

UnravelPlan make_plan(const Rule& rule, const VarOrder& order);
std::vector<UnravelPlan> make_plans(const RewriteSystem& system);

/// Rules generated for one rule; unconditional rules come back unchanged.
std::vector<Rule> unravel_rule(const Rule& rule, Unraveling kind, const VarOrder& order);

/// Both reject non-deterministic rules and join systems.
RewriteSystem unravel_U(const RewriteSystem& system);
RewriteSystem unravel_Uopt(const RewriteSystem& system);
RewriteSystem unravel(const RewriteSystem& system, Unraveling kind);

/// Join systems only.  With `rhs_vars` the remembered vector is Var(r) instead of Var(l).
RewriteSystem unravel_UJ(const RewriteSystem& system, bool rhs_vars = false);
/// Normal oriented systems only.  `require_normal = false` admits Norm(R), whose
/// condition target eq(top,top) is only a normal form up to the eq(x,x) rule.
RewriteSystem unravel_UN(const RewriteSystem& system, bool rhs_vars = false, bool require_normal = true);

enum class UltraProperty { LL, RL, NE, NonLV, NonRV };
enum class UltraMethod { Direct, Syntactic };

const char* to_string(UltraProperty p);
const char* to_string(Unraveling u);

/// Unravel the rule on its own and test the plain property on every result.
bool ultra_direct(const Rule& rule, UltraProperty p, Unraveling kind, const VarOrder& order);
/// Evaluate the closed-form characterization.
bool ultra_syntactic(const Rule& rule, UltraProperty p, Unraveling kind);
bool ultra_check(const Rule& rule, UltraProperty p, UltraMethod method, Unraveling kind,
                 const VarOrder& order = VarOrder({}));
/// Conjunction over the rules of a system (variable order from the system).
bool ultra_check(const RewriteSystem& system, UltraProperty p, UltraMethod method, Unraveling kind);

}  // namespace ctrs
