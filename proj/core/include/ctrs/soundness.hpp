#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctrs/rewrite.hpp"
#include "ctrs/sr.hpp"
#include "ctrs/system.hpp"

namespace ctrs {

/// A transformation applied to one system, together with its term translation.
struct TransformationHandle {
    std::string name;  // U, Uopt, UJ, UN, UN∘Norm, U∘Det, SR
    RewriteSystem original;
    RewriteSystem transformed;
    std::function<Term(const Term&)> translate;
    /// Original term whose translation is the argument, if any.
    std::function<std::optional<Term>(const Term&)> back;
};

/// Accepts the names above; "UN-Norm"/"UNNorm" and "U-Det"/"UDet" are ASCII spellings.
/// Throws DomainError when the system does not fit the transformation.
TransformationHandle make_transformation(const std::string& name, const RewriteSystem& system);
std::vector<std::string> transformation_names();

/// The R-side reference bounds used for absence certificates.
Bounds reference_bounds();

struct AbsenceCertificate {
    enum class Direction { Forward, Backward };
    Direction direction = Direction::Forward;
    Term from;                 // s for Forward, t for Backward
    Term excluded;             // t for Forward, s for Backward
    RewriteSystem system;      // R, or invert(R) for Backward
    std::vector<Term> closure; // fully explored, breadth-first
    Bounds bounds;
};

struct Counterexample {
    Term s;
    Term t;
    Derivation witness;  // in the transformed system, from translate(s) to translate(t)
    AbsenceCertificate certificate;
};

enum class SoundnessStatus { CounterexampleFound, NoneWithinBounds };
const char* to_string(SoundnessStatus s);

struct SoundnessVerdict {
    SoundnessStatus status = SoundnessStatus::NoneWithinBounds;
    std::optional<Counterexample> counterexample;
    Bounds bounds;      // transformed side
    Bounds r_bounds;    // original side
    bool ev_safe = false;
    std::size_t starts = 0;
    std::size_t candidates = 0;   // original-term results checked
    /// Pairs that were not reachable in R within bounds but whose absence could not be certified.
    std::vector<std::pair<Term, Term>> unresolved;
    bool transformed_exhaustive = true;
};

struct SearchOptions {
    Bounds bounds;
    Bounds r_bounds = reference_bounds();
    Policy policy;
    bool ev_safe = false;
    /// When non-empty only these original terms are checked as end points.
    std::vector<Term> targets;
};

SoundnessVerdict search_unsoundness(const TransformationHandle& t, const std::vector<Term>& start_terms,
                                    const SearchOptions& options);

/// Original-signature terms up to `depth` over at most `max_vars` variables, canonical order.
std::vector<Term> default_start_terms(const Signature& sig, int depth = 3, std::size_t max_vars = 2,
                                      std::size_t cap = 2000);

struct ComparisonViolation {
    Term s;
    Term t;
    Derivation witness;   // in the first transformation
    bool certified = false;  // the second closure was exhaustive
};

struct ComparisonReport {
    std::string first;
    std::string second;
    std::vector<ComparisonViolation> violations;
    std::size_t pairs = 0;
    bool first_exhaustive = true;
    bool second_exhaustive = true;
};

/// Every original pair realized by `t1` within `bounds` must be realized by `t2`
/// within the bounds scaled by `scale` (steps only).
ComparisonReport compare_transformations(const TransformationHandle& t1, const TransformationHandle& t2,
                                         const std::vector<Term>& start_terms, const Bounds& bounds, int scale = 2);

// ---------------------------------------------------------------- condition report

struct ConditionValue {
    std::string name;
    std::string value;  // "yes", "no" or "undecided"
    std::string note;
};

struct TheoremRow {
    std::string id;
    std::string transformation;
    std::string condition;
    bool applies = false;
    bool external = false;     // result from the literature, not proven here
    bool undecided = false;    // rests on confluence
};

struct TransformationSummary {
    std::string transformation;
    std::vector<std::string> sound_by;      // theorem ids that apply
    std::vector<std::string> undecided;     // theorem ids that hinge on confluence
    std::vector<std::string> insufficient;  // conditions that hold but are known not to suffice
    std::string status;                     // "sound" or "unknown"
};

struct ConditionReport {
    std::vector<ConditionValue> conditions;
    std::vector<TheoremRow> theorems;
    std::vector<TransformationSummary> summary;
    /// Bounded critical-pair joinability, advisory only.
    std::size_t critical_pairs = 0;
    std::size_t joinable_pairs = 0;

    const TransformationSummary* find(const std::string& transformation) const;
    bool cites(const std::string& theorem_id) const;
};

ConditionReport soundness_condition_report(const RewriteSystem& system);

}  // namespace ctrs
