#include "faithcheck/pc.hpp"

#include <algorithm>

#include "faithcheck/errors.hpp"

namespace faithcheck {

CIOracle exact_oracle(const JointTable& table, Semantics sem) {
    return [table, sem](int a, int b, VarMask s) { return table.is_ci(1u << a, 1u << b, s, sem); };
}

namespace {

// Subsets of `pool` of the given size, ascending by bitmask.
std::vector<VarMask> sized_subsets(VarMask pool, int size) {
    std::vector<VarMask> out;
    for (VarMask s = 0;; s = (s - pool) & pool) {  // iterates submasks ascending including 0
        if (mask_size(s) == size) out.push_back(s);
        if (s == pool) break;
    }
    return out;
}

}  // namespace

Skeleton pc_skeleton(const CIOracle& oracle, int n) {
    if (n < 1 || n > 5) throw InputError("PC supports 1 to 5 variables");
    Skeleton sk;
    sk.n = n;
    for (int v = 0; v < n; ++v)
        sk.adj[static_cast<size_t>(v)] = (((1u << n) - 1) & ~(1u << v));

    for (int k = 0;; ++k) {
        bool any_candidate = false;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (!sk.adjacent(a, b)) continue;
                bool removed = false;
                for (int side = 0; side < 2 && !removed; ++side) {
                    VarMask pool = (side == 0 ? sk.adj[static_cast<size_t>(a)] : sk.adj[static_cast<size_t>(b)]) &
                                   ~(1u << a) & ~(1u << b);
                    if (mask_size(pool) < k) continue;
                    any_candidate = true;
                    for (VarMask s : sized_subsets(pool, k)) {
                        if (side == 1 && (sk.adj[static_cast<size_t>(a)] & ~(1u << b) & s) == s)
                            continue;  // already tried as a subset of adj(a)
                        if (oracle(a, b, s)) {
                            sk.adj[static_cast<size_t>(a)] &= ~(1u << b);
                            sk.adj[static_cast<size_t>(b)] &= ~(1u << a);
                            sk.sepsets[{a, b}] = s;
                            removed = true;
                            break;
                        }
                    }
                }
            }
        }
        if (!any_candidate && k > 0) break;
        if (k >= n) break;
    }
    return sk;
}

Pattern pc_orient(const Skeleton& sk) {
    const int n = sk.n;
    Pattern pattern;
    pattern.n = n;

    std::array<VarMask, VarSet::kMaxVars> directed{};  // p -> children
    auto is_directed = [&](int p, int c) { return (directed[static_cast<size_t>(p)] >> c) & 1u; };

    // v-structures: a - c - b with a,b nonadjacent and c outside sepset(a,b)
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a) {
            if (a == c || !sk.adjacent(a, c)) continue;
            for (int b = a + 1; b < n; ++b) {
                if (b == c || !sk.adjacent(b, c) || sk.adjacent(a, b)) continue;
                auto it = sk.sepsets.find({a, b});
                VarMask sep = it == sk.sepsets.end() ? 0 : it->second;
                if (!((sep >> c) & 1u)) {
                    directed[static_cast<size_t>(a)] |= 1u << c;
                    directed[static_cast<size_t>(b)] |= 1u << c;
                }
            }
        }
    }

    // Hand the partially oriented skeleton to the shared Meek machinery by
    // rebuilding it as a pattern and closing with cpdag's rule set.
    Pattern seed;
    seed.n = n;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (!sk.adjacent(u, v)) continue;
            if (is_directed(u, v) && !is_directed(v, u)) seed.directed.emplace_back(u, v);
            else if (is_directed(v, u) && !is_directed(u, v)) seed.directed.emplace_back(v, u);
            else if (is_directed(u, v) && is_directed(v, u)) {
                // conflicting v-structures; keep the edge undirected
                seed.undirected.emplace_back(u, v);
            } else {
                seed.undirected.emplace_back(u, v);
            }
        }
    }
    return meek_closure(seed);
}

Pattern pc(const CIOracle& oracle, int n) {
    return pc_orient(pc_skeleton(oracle, n));
}

PcDiagnosis pc_diagnose(const JointTable& table, Semantics sem) {
    PcDiagnosis diag;
    diag.pattern = pc(exact_oracle(table, sem), table.var_count());
    const CISet extracted = extract_ci_set(table, sem);

    std::vector<Dag> candidates = consistent_extensions(diag.pattern, table.vars());
    if (candidates.empty()) {
        // Non-extendable output; fall back to every DAG so the report can
        // still name a closest structure.
        candidates = enumerate_dags(table.vars());
    }

    size_t best_cost = SIZE_MAX;
    for (const Dag& g : candidates) {
        CISet implied = implied_ci_set(g);
        std::vector<CIStatement> missing, extra;
        for (const auto& st : implied.statements())
            if (!extracted.contains(st)) missing.push_back(st);
        for (const auto& st : extracted.statements())
            if (!implied.contains(st)) extra.push_back(st);
        bool mutual_gap = implied.mutual() != extracted.mutual();
        size_t cost = missing.size() + extra.size() + (mutual_gap ? 1 : 0);
        if (cost == 0) {
            diag.match = true;
            diag.witness = g;
            diag.missing.clear();
            diag.extra.clear();
            diag.witness_mutual_gap = false;
            return diag;
        }
        if (cost < best_cost) {
            best_cost = cost;
            diag.witness = g;
            diag.missing = std::move(missing);
            diag.extra = std::move(extra);
            diag.witness_mutual_gap = mutual_gap;
        }
    }
    return diag;
}

std::string PcDiagnosis::serialize(const VarSet& vars) const {
    std::string out = "[pattern]\n" + pattern.serialize(vars);
    out += "[diagnosis]\n";
    out += match ? "MATCH\n" : "MISMATCH\n";
    if (witness) out += std::string(match ? "faithful: " : "closest: ") + witness->serialize() + "\n";
    if (!match) {
        std::string miss, ext;
        for (const auto& st : missing) {
            if (!miss.empty()) miss += "; ";
            miss += format_statement(st, vars);
        }
        for (const auto& st : extra) {
            if (!ext.empty()) ext += "; ";
            ext += format_statement(st, vars);
        }
        out += "missing: " + (miss.empty() ? "(none)" : miss) + "\n";
        out += "extra: " + (ext.empty() ? "(none)" : ext) + "\n";
        if (witness_mutual_gap) out += "mutual flag differs\n";
    }
    return out;
}

}  // namespace faithcheck
