#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ctrs/system.hpp"

namespace ctrs::suite {

using Rng = std::mt19937_64;

/// Seeds used by the acceptance run; kept here so tests and suite agree.
inline constexpr std::uint64_t kUltraSeed = 0x5eed0001;
inline constexpr std::uint64_t kDualitySeed = 0x5eed0002;

struct GenShape {
    int max_conditions = 3;
    int max_depth = 3;
    std::vector<std::pair<std::string, int>> symbols{{"f", 2}, {"g", 1}, {"h", 2}, {"a", 0}, {"b", 0}, {"c", 1}};
    std::vector<std::string> variables{"x", "y", "z", "w", "v"};
};

/// Random term of depth <= depth over the shape's symbols and the given variables
/// (ground when `vars` is empty).
Term random_term(Rng& rng, const GenShape& shape, const std::vector<std::string>& vars, int depth);

/**
 * Deterministic rule: every s_i uses only variables of l, t_1..t_{i-1}; t_i and
 * the right-hand side may only use variables bound so far (t_i may bind new ones).
 * The left-hand side is never a variable.
 */
Rule random_deterministic_rule(Rng& rng, const GenShape& shape, const std::string& label = "rho_1");

/// A system of 1..3 random deterministic rules that is Uopt-NE rule by rule.
RewriteSystem random_uopt_ne_system(Rng& rng, const GenShape& shape = {});

}  // namespace ctrs::suite
