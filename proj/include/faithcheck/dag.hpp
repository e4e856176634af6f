#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "faithcheck/joint_table.hpp"
#include "faithcheck/statements.hpp"
#include "faithcheck/varset.hpp"

namespace faithcheck {

/// Labeled acyclic digraph over a VarSet. Edges are (parent, child) index
/// pairs, kept sorted; construction rejects self-loops, duplicate or
/// contradictory edges, and cycles.
class Dag {
public:
    Dag(VarSet vars, std::vector<std::pair<int, int>> edges);

    /// Grammar: the keyword `empty`, or `A->B` edges separated by `;`.
    static Dag parse(std::string_view text, const VarSet& vars);

    /// `empty` or edges sorted by (parent, child) joined with `;`.
    std::string serialize() const;

    const VarSet& vars() const { return vars_; }
    int var_count() const { return vars_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool edgeless() const { return edges_.empty(); }
    bool has_edge(int p, int c) const;
    bool adjacent(int u, int v) const { return has_edge(u, v) || has_edge(v, u); }

    VarMask parent_mask(int v) const { return parents_[static_cast<size_t>(v)]; }
    /// Vertices from which `mask` is reachable, including `mask` itself.
    VarMask ancestors_of(VarMask mask) const;

    /// Stable structure fingerprint (names excluded); seeds the Markov
    /// parameterization stream.
    uint64_t structure_key() const;

    bool operator==(const Dag& o) const { return vars_ == o.vars_ && edges_ == o.edges_; }

private:
    VarSet vars_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<VarMask> parents_;
};

/// All labeled DAGs on the given variables (n <= 5) in a fixed order: every
/// unordered pair cycles through absent / low->high / high->low, the first
/// pair fastest, acyclic results kept. The first entry is the empty graph.
std::vector<Dag> enumerate_dags(const VarSet& vars);

/// Standard d-separation: A and B are separated given S iff they are
/// disconnected in the moralized induced ancestral graph with S removed.
bool d_separated(const Dag& g, VarMask a, VarMask b, VarMask s);

/// Every statement of the universe that d-separation grants, with the mutual
/// flag set exactly for the edgeless graph.
CISet implied_ci_set(const Dag& g);

/// Global Markov property: implied_ci_set(G) within extract_ci_set(P, sem),
/// mutual flag respected.
bool markov_by_dsep(const JointTable& p, const Dag& g, Semantics sem);

/// Cross-multiplied per-vertex factorization at every full assignment:
/// P(v) * prod_i P(pa_i(v)) = prod_i P(v_i, pa_i(v)).
bool markov_by_factorization(const JointTable& p, const Dag& g);

/// Groups DAGs by equality of implied_ci_set; classes ordered by their first
/// member, members in input order. Returns indices into the input.
std::vector<std::vector<size_t>> markov_equivalence_classes(const std::vector<Dag>& dags);

/// Partially directed graph: a skeleton with some edges oriented.
struct Pattern {
    int n = 0;
    std::vector<std::pair<int, int>> undirected;  // (i, j) with i < j
    std::vector<std::pair<int, int>> directed;

    bool skeleton_has(int u, int v) const;
    bool directed_has(int p, int c) const;
    bool adjacent(int u, int v) const { return skeleton_has(u, v); }

    /// `empty`, or one edge per line: `A--B` undirected, `A->B` directed,
    /// sorted by endpoint pair.
    std::string serialize(const VarSet& vars) const;

    bool operator==(const Pattern&) const = default;
};

/// Completed pattern of G's Markov equivalence class: skeleton plus exactly
/// the compelled orientations (v-structures, then Meek rules R1-R4).
Pattern cpdag(const Dag& g);

/// Meek rules R1-R4 applied to a fixed point, orienting undirected edges of
/// the pattern. Only n=4,5 graphs exercise anything past R1.
Pattern meek_closure(const Pattern& pattern);

/// DAGs with the pattern's skeleton, respecting its orientations, and
/// introducing no v-structure the pattern does not already direct.
std::vector<Dag> consistent_extensions(const Pattern& pattern, const VarSet& vars);

/// Joint table factored through G with per-vertex conditional parameters
/// drawn uniformly from {1/d, ..., (d-1)/d}, d = denom_bound. Strictly
/// positive by construction and deterministic in (G, seed, denom_bound).
JointTable random_markov_distribution(const Dag& g, uint64_t seed, int denom_bound);

/// Named canonical three-vertex structures (informational catalog).
std::vector<std::pair<std::string, Dag>> named_structures(const VarSet& vars);

}  // namespace faithcheck
