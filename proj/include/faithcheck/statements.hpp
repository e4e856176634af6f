#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faithcheck/joint_table.hpp"
#include "faithcheck/varset.hpp"

namespace faithcheck {

/// Canonical conditional independence statement A _||_ B | S.
/// Invariants: a and b nonempty, a/b/s pairwise disjoint, and a precedes b in
/// the lexicographic order of sorted member indices (symmetry quotient).
struct CIStatement {
    VarMask a = 0, b = 0, s = 0;

    bool operator==(const CIStatement&) const = default;
};

/// Canonicalizes (swaps sides if needed) and validates.
CIStatement make_statement(VarMask a, VarMask b, VarMask s);

/// Deterministic statement order: (|A|+|B|, |S|, lexicographic).
bool statement_less(const CIStatement& x, const CIStatement& y);

/// "X _||_ Y", "X _||_ Y | Z", "X _||_ Y,Z".
std::string format_statement(const CIStatement& st, const VarSet& vars);
CIStatement parse_statement(std::string_view text, const VarSet& vars);

/// Every canonical (A,B,S) triple over n variables, in canonical order.
/// n=3 yields exactly 9 statements.
std::vector<CIStatement> statement_universe(int n);

/// Deduplicated, canonically sorted statement collection plus the derived
/// n-way mutual independence flag.
class CISet {
public:
    CISet() = default;

    /// Sorts, deduplicates, and derives the mutual flag from the statements
    /// (the chain criterion: X_i _||_ {X_{i+1},...} for every i).
    static CISet of(int var_count, std::vector<CIStatement> statements);

    /// Same, but with the mutual flag pinned by the caller (extraction uses
    /// the direct product test).
    static CISet with_mutual(int var_count, std::vector<CIStatement> statements, bool mutual);

    int var_count() const { return n_; }
    const std::vector<CIStatement>& statements() const { return stmts_; }
    size_t size() const { return stmts_.size(); }
    bool mutual() const { return mutual_; }

    bool contains(const CIStatement& st) const;
    /// Statement containment only; callers decide how mutual flags combine.
    bool statements_subset_of(const CISet& other) const;

    /// One statement per line in canonical order; a final "mutual" line when
    /// the flag is set.
    std::string serialize(const VarSet& vars) const;
    /// Statements joined by "; " on one line ("(none)" when empty).
    std::string one_line(const VarSet& vars) const;

    bool operator==(const CISet&) const = default;

private:
    int n_ = 0;
    std::vector<CIStatement> stmts_;
    bool mutual_ = false;
};

/// Mutual independence as derivable from plain statements: the chain
/// criterion holds iff every X_i _||_ (X_{i+1},...,X_{n-1}) is present.
bool derived_mutual(int var_count, const std::vector<CIStatement>& statements);

/// All statements of the universe that hold in P under the given semantics;
/// the mutual flag comes from the direct product test.
CISet extract_ci_set(const JointTable& table, Semantics sem);

/// Least fixed point under symmetry, decomposition, weak union and
/// contraction, with set-valued A, B, S.
CISet semigraphoid_closure(const CISet& set);

/// With positive=true additionally closes under the intersection rule
/// {A _||_ B | S u C, A _||_ C | S u B} => A _||_ (B,C) | S; with
/// positive=false this is exactly the semigraphoid closure.
CISet intersection_closure(const CISet& set, bool positive);

/// Checks the pairwise/conditional vs mutual biconditional
/// [X _||_ Y, X _||_ Z, Y _||_ Z, X _||_ Y | Z] <=> mutual independence
/// on a 3-variable table. Both values of the third variable must have
/// positive mass. A false return would indicate an implementation bug.
bool check_theorem2(const JointTable& table);

/// Conclusion of an implication query: a statement or mutual independence.
struct Goal {
    std::optional<CIStatement> statement;  // empty = mutual independence

    static Goal mutual() { return {}; }
    static Goal of(CIStatement st) { return {st}; }
    bool is_mutual() const { return !statement.has_value(); }
};

std::string format_goal(const Goal& goal, const VarSet& vars);
/// Accepts statement syntax or the keyword "mutual".
Goal parse_goal(std::string_view text, const VarSet& vars);

bool goal_holds(const JointTable& table, const Goal& goal, Semantics sem);

/// Result of a counterexample search: either a table satisfying every premise
/// and violating the conclusion, or exhaustion of the candidate budget.
struct Verdict {
    std::optional<JointTable> counterexample;
    uint64_t tried = 0;

    bool found() const { return counterexample.has_value(); }
};

/// Searches for a distribution over `vars` with premises within its extracted
/// set and the conclusion outside it: first the deterministic grid of tables
/// whose masses share a denominator D <= denom_bound, then seeded random
/// tables with denominators <= 120. Counterexamples are re-verified before
/// being returned. Absence of a counterexample within the budget is never a
/// proof.
Verdict check_implication(const VarSet& vars, const CISet& premises, const Goal& conclusion,
                          Semantics sem, uint64_t seed, uint64_t budget, int denom_bound);

}  // namespace faithcheck
