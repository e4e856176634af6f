#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faithcheck/dag.hpp"
#include "faithcheck/joint_table.hpp"
#include "faithcheck/statements.hpp"

namespace faithcheck {

/// One of the ten bundled reference distributions over (X, Y, Z).
JointTable example_table(int id);

/// Catalog entry: the table, the independence statements its documentation
/// lists for it, and notes where exact arithmetic disagrees with that
/// documentation.
struct ExampleEntry {
    int id;
    std::string summary;
    CISet listed;  // documented statements (subset of the truth, possibly not exhaustive)
    std::vector<std::string> notes;
};

const std::vector<ExampleEntry>& example_catalog();

/// extract_ci_set(P, sem) equals implied_ci_set(G), statements and mutual
/// flag both.
bool is_faithful(const JointTable& p, const Dag& g, Semantics sem);

enum class DagVerdict { kFaithful, kMarkovOnly, kNotMarkov };

/// Verdicts for every enumerated DAG over P's variables.
struct FaithReport {
    uint64_t hash = 0;
    Semantics sem = Semantics::kStrict;
    CISet extracted;
    std::vector<Dag> dags;                    // enumeration order
    std::vector<DagVerdict> verdicts;         // parallel to dags
    std::vector<size_t> faithful;             // indices into dags
    std::vector<std::vector<size_t>> classes; // Markov equivalence classes (index partition)

    std::string serialize(const VarSet& vars) const;
};

FaithReport classify(const JointTable& p, Semantics sem);

/// Identifier of one of the 57 statement patterns, written GROUP:INDEX with
/// GROUP a Roman numeral I..X. Valid indices: I:1-8, II:1-9, III:1-9,
/// IV:1-3, V:1-9, VI:1-9, VII:1-3, VIII:1-3, IX:1-3, X:1.
struct PatternId {
    int group = 0;  // 1..10
    int index = 0;  // 1-based

    static PatternId parse(std::string_view text);
    std::string str() const;
    bool operator==(const PatternId&) const = default;
};

const std::vector<PatternId>& all_pattern_ids();

/// The literal statement set of the pattern (over X, Y, Z).
CISet theorem3_pattern(PatternId id);

/// Realization search result. The goal is the semigraphoid closure of the
/// target, since an extracted set can never lack a closure consequence of
/// statements it contains (under standard semantics); when the closure adds
/// statements the match is reported as kClosure rather than kExact.
struct SearchOutcome {
    CISet target;
    CISet goal;  // semigraphoid closure of target
    enum class Status { kExact, kClosure, kNone } status = Status::kNone;
    std::optional<JointTable> table;   // extract == goal
    std::optional<JointTable> superset;  // first candidate with target within its extraction
    uint64_t tried = 0;

    bool found() const { return table.has_value(); }
};

/// Deterministic search for a table whose extracted set equals the closure of
/// `target`: bundled examples first, then the denominator grid, then seeded
/// random tables. Absence within the budget is a value, not an error.
SearchOutcome search_distribution(const VarSet& vars, const CISet& target, Semantics sem,
                                  uint64_t seed, uint64_t budget, int denom_bound);

/// ---- Theorem-3 style verification report ---------------------------------

struct PatternFinding {
    PatternId id;
    CISet target;
    CISet closure;
    SearchOutcome::Status status = SearchOutcome::Status::kNone;
    std::optional<JointTable> witness;
    std::vector<std::string> faithful_dags;  // serialized DAGs the witness is faithful to
};

struct Claim {
    enum class Verdict { kSupported, kContradicted, kUndecided };
    std::string label;
    Verdict verdict = Verdict::kUndecided;
    std::string note;
};

struct ConclusionFinding {
    int index = 0;  // 1..10
    std::vector<std::string> remarks;
    std::vector<Claim> claims;
    Claim::Verdict overall = Claim::Verdict::kSupported;
};

struct Theorem3Report {
    uint64_t seed = 0;
    uint64_t budget = 0;
    int denom_bound = 8;
    Semantics sem = Semantics::kStrict;
    std::vector<PatternFinding> patterns;
    std::vector<ConclusionFinding> conclusions;

    const PatternFinding& finding(PatternId id) const;
    std::string serialize() const;
};

/// Realizes all 57 patterns, classifies the realizations, and evaluates the
/// computationally checkable content of conclusions (1)-(10): implications to
/// mutual independence by counterexample search, set equalities under both
/// the closure and the realization-family reading, and faithfulness of
/// realizations to the empty graph. Claims that reference unrecoverable
/// figure anchors are decided only where the all-DAG classification decides
/// them, otherwise reported as undecided.
Theorem3Report verify_theorem3(uint64_t seed, uint64_t budget, int denom_bound, Semantics sem);

}  // namespace faithcheck
