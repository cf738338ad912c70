#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ctrs/format.hpp"
#include "ctrs/system.hpp"

namespace ctrs {

/// Canonical pattern variable x<i> (1-based).
std::string hvar(std::size_t i);

/**
 * Tree homomorphism given by one pattern per symbol.  Patterns are written
 * over x1..xn where n is the symbol's arity; unmapped symbols are the identity.
 */
class TreeHomomorphism {
public:
    struct Entry {
        int arity = 0;
        Term pattern;
    };

    /// Throws DomainError if the pattern uses a variable other than x1..x<arity>.
    void set(const std::string& symbol, int arity, Term pattern);
    /// Parameters are renamed to x1..xn.
    static TreeHomomorphism from_entries(const std::vector<MapEntry>& entries);

    const std::map<std::string, Entry>& mapping() const { return map_; }
    bool empty() const { return map_.empty(); }

    Term operator()(const Term& t) const;
    Rule operator()(const Rule& r) const;
    /// Checks arities against the system's signature first.
    RewriteSystem operator()(const RewriteSystem& s) const;

    bool linear() const;
    bool non_erasing() const;
    /// Every symbol of `f` is mapped to itself.
    bool f_identical(const std::set<std::string>& f) const;
    /// EVar(phi(l) -> phi(r)) = EVar(l -> r) for every rule of `s`.
    bool ev_preserving(const RewriteSystem& s) const;

    /// "(MAP\n  f(x1,x2) -> pattern\n)"; identity for an empty mapping is "(MAP\n)".
    std::string render() const;

private:
    std::map<std::string, Entry> map_;
};

struct HomoProperties {
    bool linear = true;
    bool non_erasing = true;
    bool f_identical = true;
    bool ev_preserving = true;
};

HomoProperties homomorphism_properties(const TreeHomomorphism& phi, const RewriteSystem& system,
                                       const std::set<std::string>& f);

/// Join to normal: conditions become eq(s,t) == eq(top,top), plus eq(x,x) -> eq(top,top).
RewriteSystem norm_transform(const RewriteSystem& system);
/// Join to deterministic: one condition eq<k>(s1,t1,...) == eq<k>(x1,x1,...) per rule.
RewriteSystem det_transform(const RewriteSystem& system);

/// Same rules, flavor switched.  Normal oriented systems and their join reading.
RewriteSystem as_join(const RewriteSystem& system);
RewriteSystem as_oriented(const RewriteSystem& system);

enum class PhiTheorem { UToUopt, UjToUnNorm, UnToUj, UjToUnNormalJoin, UjToUDet, UToUn };

const char* to_string(PhiTheorem t);
/// Accepts the names used on the command line ("u_to_uopt", ...).
PhiTheorem phi_theorem_from_string(const std::string& name);
std::vector<PhiTheorem> all_phi_theorems();

/// Which flags the transfer argument for the theorem relies on.
struct PhiRequirements {
    bool non_erasing = false;
    bool ev_preserving = false;
    bool modulo_identity = false;
};
PhiRequirements phi_requirements(PhiTheorem t);

/// The homomorphism exactly as built in the corresponding proof.  Throws DomainError
/// naming the failed hypothesis when `system` does not qualify.
TreeHomomorphism canonical_phi(PhiTheorem t, const RewriteSystem& system);

struct SimulationVerdict {
    bool equal = false;
    std::vector<Rule> missing;  // in lhs, not produced by phi(rhs)
    std::vector<Rule> extra;    // produced by phi(rhs), not in lhs
    std::vector<Rule> dropped;  // identity rules discarded before comparing
    HomoProperties flags;
};

/**
 * Compare lhs with phi(rhs) as rule sets modulo per-rule variable renaming.
 * With `modulo_identity`, rules t -> t of phi(rhs) that mention a generated
 * symbol of `rhs` are discarded first.
 */
SimulationVerdict check_simulation(const RewriteSystem& lhs, const RewriteSystem& rhs, const TreeHomomorphism& phi,
                                   bool modulo_identity);

}  // namespace ctrs
