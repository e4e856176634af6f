#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "faithcheck/dag.hpp"
#include "faithcheck/joint_table.hpp"
#include "faithcheck/statements.hpp"

namespace faithcheck {

/// Singleton conditional independence query A _||_ B | S. Must be
/// deterministic: repeated queries agree.
using CIOracle = std::function<bool(int a, int b, VarMask s)>;

/// Oracle answering through exact arithmetic on a joint table.
CIOracle exact_oracle(const JointTable& table, Semantics sem);

/// For each removed skeleton edge {A,B}, the separating set recorded at
/// removal time.
using SepsetMap = std::map<std::pair<int, int>, VarMask>;

struct Skeleton {
    int n = 0;
    std::array<VarMask, VarSet::kMaxVars> adj{};
    SepsetMap sepsets;

    bool adjacent(int u, int v) const { return (adj[static_cast<size_t>(u)] >> v) & 1u; }
};

/// Edge-removal stage: starts complete; for k = 0, 1, ... removes {A,B} when
/// some S of size k inside either endpoint's other adjacencies satisfies the
/// oracle. Vertices, edges and candidate subsets are visited in a fixed
/// order (edges lexicographic, subsets by bitmask), so runs are reproducible.
Skeleton pc_skeleton(const CIOracle& oracle, int n);

/// Orientation stage: v-structures A->C<-B for nonadjacent A,B with common
/// neighbor C outside sepset(A,B), then Meek rules to closure.
Pattern pc_orient(const Skeleton& skeleton);

/// pc_orient after pc_skeleton.
Pattern pc(const CIOracle& oracle, int n);

/// Comparison of the PC output pattern against the distribution it was run
/// on: MATCH when some DAG consistent with the pattern is faithful to the
/// distribution, otherwise MISMATCH with the statement-set differences for
/// the closest consistent DAG.
struct PcDiagnosis {
    Pattern pattern;
    bool match = false;
    std::optional<Dag> witness;            // faithful DAG on MATCH, closest DAG on MISMATCH
    std::vector<CIStatement> missing;      // implied by the DAG, absent from the distribution
    std::vector<CIStatement> extra;        // held by the distribution, not implied
    bool witness_mutual_gap = false;       // mutual flag differs from the witness

    std::string serialize(const VarSet& vars) const;
};

PcDiagnosis pc_diagnose(const JointTable& table, Semantics sem);

}  // namespace faithcheck
