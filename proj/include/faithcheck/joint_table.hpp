#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "faithcheck/rational.hpp"
#include "faithcheck/varset.hpp"

namespace faithcheck {

/// Conditioning convention for conditional independence checks.
///
/// kStrict:   A _||_ B | S counts only if every assignment of S has positive
///            mass and factorization holds at every one.
/// kStandard: factorization is required only at assignments of S with
///            positive mass; zero-mass assignments are vacuous.
///
/// The two agree on unconditional statements and on strictly positive tables.
enum class Semantics { kStrict, kStandard };

std::string_view semantics_name(Semantics sem);
Semantics parse_semantics(std::string_view text);

/// Immutable joint distribution over n binary variables: 2^n exact masses
/// summing to 1, cell index = sum of bit i for variable i = 1. All subset
/// marginals are precomputed at construction, so prob() is a table lookup.
class JointTable {
public:
    JointTable(VarSet vars, std::vector<Rational> mass);

    /// Dist file grammar: '#' comments and blank lines ignored; the first
    /// content line is `vars <name>+`; every other line is
    /// `p <bit>{n} <rational>`. Unlisted cells are zero, duplicates are an
    /// error, masses must sum to exactly 1.
    static JointTable parse(std::string_view text);

    /// Canonical dist file text: vars line plus one `p` line per nonzero cell
    /// in cell-index order.
    std::string serialize() const;

    /// All 2^n masses space-separated in cell-index order (single line).
    std::string cells_str() const;

    const VarSet& vars() const { return vars_; }
    int var_count() const { return vars_.size(); }
    size_t cell_count() const { return mass_.size(); }
    const Rational& cell(unsigned idx) const { return mass_[idx]; }

    /// Exact marginal probability of a partial assignment.
    const Rational& prob(Assignment a) const;

    /// Conditional independence of A and B given S under the chosen
    /// semantics, decided by the cross-multiplied factorization
    /// P(a,b,s)P(s) = P(a,s)P(b,s), so no division ever happens.
    /// A and B must be nonempty and A, B, S pairwise disjoint.
    bool is_ci(VarMask a, VarMask b, VarMask s, Semantics sem) const;

    /// P(v) = prod_i P(v_i) at every full assignment.
    bool mutually_independent() const;

    bool strictly_positive() const;

    /// FNV-1a over the canonical serialization.
    uint64_t content_hash() const;

private:
    void build_marginals();

    VarSet vars_;
    std::vector<Rational> mass_;
    std::vector<Rational> marginal_;  // ternary-coded: digit of var i is 0, 1, or 2 = summed out
    std::vector<unsigned> pow3_;
};

}  // namespace faithcheck
