#pragma once

#include <string>

#include <json.hpp>

#include "ctrs/homo.hpp"
#include "ctrs/rewrite.hpp"
#include "ctrs/soundness.hpp"
#include "ctrs/system.hpp"

namespace ctrs {

using Json = nlohmann::ordered_json;

// Terms are {"sym": f, "args": [...]} or {"var": x}; positions are integer arrays.
Json encode(const Term& t);
Json encode(const Position& p);
Json encode(const Substitution& s);
/// {"term", "pos", "rule", "subst", "result"}; "term" is the term the step rewrites.
Json encode_step(const Term& before, const Step& st);
Json encode(const Derivation& d);
Json encode(const Rule& r, Flavor f);
Json encode(const RewriteSystem& s);
Json encode(const RuleClass& c);
Json encode(const ClassificationReport& r);
Json encode(const CriticalPair& cp);
Json encode(const HomoProperties& p);
Json encode(const SimulationVerdict& v);
Json encode(const Closure& c);
Json encode(const SoundnessVerdict& v);
Json encode(const ComparisonReport& r);
Json encode(const ConditionReport& r);

/// Throws DomainError on malformed input.
Term decode_term(const Json& j);
Derivation decode_derivation(const Json& j);

/// Two-space indented, trailing newline.
std::string emit_json(const Json& j);

}  // namespace ctrs
