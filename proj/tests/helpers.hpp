#pragma once

#include <string>
#include <vector>

#include "faithcheck/dag.hpp"
#include "faithcheck/faithful.hpp"
#include "faithcheck/statements.hpp"

namespace fc = faithcheck;

inline const fc::VarSet& xyz() {
    static const fc::VarSet v = fc::VarSet::xyz();
    return v;
}

inline fc::CIStatement stmt(std::string_view text) {
    return fc::parse_statement(text, xyz());
}

inline fc::CISet ciset(std::initializer_list<std::string_view> stmts, bool mutual = false) {
    std::vector<fc::CIStatement> parsed;
    for (auto s : stmts) parsed.push_back(stmt(s));
    return fc::CISet::with_mutual(3, std::move(parsed), mutual);
}

inline fc::Rational rat(std::string_view text) { return fc::Rational::parse(text); }

// ---------------------------------------------------------------------------
// Independent oracles (kept free of the code paths they check).

// Conditional independence by literal conditional distributions: divide out
// P(s) and compare P(a,b|s) with P(a|s)P(b|s). Uses division, unlike the
// production cross-multiplied check.
inline bool ci_by_division(const fc::JointTable& t, fc::VarMask a, fc::VarMask b, fc::VarMask s,
                           fc::Semantics sem) {
    const int n = t.var_count();
    auto assignments = [n](fc::VarMask mask) {
        std::vector<fc::Assignment> out;
        std::vector<int> vars;
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1u) vars.push_back(v);
        for (unsigned packed = 0; packed < (1u << vars.size()); ++packed) {
            fc::Assignment asg{mask, 0};
            for (size_t j = 0; j < vars.size(); ++j)
                if ((packed >> j) & 1u) asg.values |= 1u << vars[j];
            out.push_back(asg);
        }
        return out;
    };
    for (fc::Assignment sa : assignments(s)) {
        const fc::Rational ps = t.prob(sa);
        if (ps.is_zero()) {
            if (sem == fc::Semantics::kStrict && s != 0) return false;
            continue;
        }
        for (fc::Assignment aa : assignments(a)) {
            for (fc::Assignment ba : assignments(b)) {
                fc::Assignment abs{aa.vars | ba.vars | sa.vars, aa.values | ba.values | sa.values};
                fc::Assignment as{aa.vars | sa.vars, aa.values | sa.values};
                fc::Assignment bs{ba.vars | sa.vars, ba.values | sa.values};
                fc::Rational lhs = t.prob(abs) / ps;
                fc::Rational rhs = (t.prob(as) / ps) * (t.prob(bs) / ps);
                if (lhs != rhs) return false;
            }
        }
    }
    return true;
}

// d-separation by explicit path enumeration: every vertex-simple undirected
// path between A and B must contain a blocking triple (non-collider in S, or
// collider with no descendant in S).
inline bool dsep_by_paths(const fc::Dag& g, fc::VarMask a, fc::VarMask b, fc::VarMask s) {
    const int n = g.var_count();
    auto descendants = [&](int v) {
        fc::VarMask seen = 1u << v;
        bool grow = true;
        while (grow) {
            grow = false;
            for (auto [p, c] : g.edges()) {
                if (((seen >> p) & 1u) && !((seen >> c) & 1u)) {
                    seen |= 1u << c;
                    grow = true;
                }
            }
        }
        return seen;
    };
    auto path_active = [&](const std::vector<int>& path) {
        for (size_t i = 1; i + 1 < path.size(); ++i) {
            int u = path[i - 1], m = path[i], w = path[i + 1];
            const bool collider = g.has_edge(u, m) && g.has_edge(w, m);
            if (collider) {
                if ((descendants(m) & s) == 0) return false;  // blocked
            } else {
                if ((s >> m) & 1u) return false;  // blocked
            }
        }
        return true;
    };
    std::vector<int> path;
    fc::VarMask used = 0;
    bool connected = false;
    auto dfs = [&](auto&& self, int v) -> void {
        if (connected) return;
        path.push_back(v);
        used |= 1u << v;
        if ((b >> v) & 1u) {
            if (path_active(path)) connected = true;
        } else {
            for (int w = 0; w < n && !connected; ++w)
                if (!((used >> w) & 1u) && g.adjacent(v, w)) self(self, w);
        }
        used &= ~(1u << v);
        path.pop_back();
    };
    for (int v = 0; v < n && !connected; ++v)
        if ((a >> v) & 1u) dfs(dfs, v);
    return !connected;
}
