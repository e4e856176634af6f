#include "faithcheck/dag.hpp"

#include <algorithm>
#include <array>

#include "faithcheck/errors.hpp"
#include "faithcheck/rng.hpp"

namespace faithcheck {

Dag::Dag(VarSet vars, std::vector<std::pair<int, int>> edges)
    : vars_(std::move(vars)), edges_(std::move(edges)) {
    const int n = vars_.size();
    std::sort(edges_.begin(), edges_.end());
    parents_.assign(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < edges_.size(); ++i) {
        auto [p, c] = edges_[i];
        if (p < 0 || p >= n || c < 0 || c >= n) throw InputError("edge endpoint out of range");
        if (p == c) throw InputError("self-loop on " + vars_.name(p));
        if (i > 0 && edges_[i] == edges_[i - 1])
            throw InputError("duplicate edge " + vars_.name(p) + "->" + vars_.name(c));
        parents_[static_cast<size_t>(c)] |= 1u << p;
    }
    for (auto [p, c] : edges_) {
        if (parents_[static_cast<size_t>(p)] & (1u << c))
            throw InputError("cycle through " + vars_.name(p) + " and " + vars_.name(c));
    }
    // Kahn peel for longer cycles.
    VarMask removed = 0;
    for (int round = 0; round < n; ++round) {
        for (int v = 0; v < n; ++v) {
            if ((removed >> v) & 1u) continue;
            if ((parents_[static_cast<size_t>(v)] & ~removed) == 0) removed |= 1u << v;
        }
    }
    if (removed != vars_.full_mask()) throw InputError("directed cycle in graph");
}

bool Dag::has_edge(int p, int c) const {
    return (parents_[static_cast<size_t>(c)] >> p) & 1u;
}

VarMask Dag::ancestors_of(VarMask mask) const {
    VarMask res = mask;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < var_count(); ++v) {
            if (!((res >> v) & 1u)) continue;
            VarMask add = parents_[static_cast<size_t>(v)] & ~res;
            if (add) {
                res |= add;
                changed = true;
            }
        }
    }
    return res;
}

uint64_t Dag::structure_key() const {
    std::vector<unsigned char> bytes;
    bytes.push_back(static_cast<unsigned char>(var_count()));
    for (auto [p, c] : edges_) {
        bytes.push_back(static_cast<unsigned char>(p));
        bytes.push_back(static_cast<unsigned char>(c));
    }
    return fnv1a64(bytes.data(), bytes.size());
}

Dag Dag::parse(std::string_view text, const VarSet& vars) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view body = trim(text);
    if (body == "empty") return Dag(vars, {});
    std::vector<std::pair<int, int>> edges;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t semi = body.find(';', pos);
        std::string_view part =
            trim(body.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos));
        if (part.empty()) throw ParseError("empty edge in DAG spec");
        auto arrow = part.find("->");
        if (arrow == std::string_view::npos)
            throw ParseError("expected 'A->B' in DAG spec, got '" + std::string(part) + "'");
        std::string_view from = trim(part.substr(0, arrow));
        std::string_view to = trim(part.substr(arrow + 2));
        auto fi = vars.index_of(from);
        auto ti = vars.index_of(to);
        if (!fi) throw ParseError("unknown variable '" + std::string(from) + "' in DAG spec");
        if (!ti) throw ParseError("unknown variable '" + std::string(to) + "' in DAG spec");
        edges.emplace_back(*fi, *ti);
        if (semi == std::string_view::npos) break;
        pos = semi + 1;
    }
    return Dag(vars, std::move(edges));
}

std::string Dag::serialize() const {
    if (edges_.empty()) return "empty";
    std::string out;
    for (auto [p, c] : edges_) {
        if (!out.empty()) out += ';';
        out += vars_.name(p) + "->" + vars_.name(c);
    }
    return out;
}

std::vector<Dag> enumerate_dags(const VarSet& vars) {
    const int n = vars.size();
    if (n > 5) throw InputError("DAG enumeration supports at most 5 variables");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    uint64_t total = 1;
    for (size_t i = 0; i < pairs.size(); ++i) total *= 3;
    std::vector<Dag> out;
    for (uint64_t code = 0; code < total; ++code) {
        std::vector<std::pair<int, int>> edges;
        uint64_t c = code;
        for (auto [i, j] : pairs) {
            switch (c % 3) {
                case 1: edges.emplace_back(i, j); break;
                case 2: edges.emplace_back(j, i); break;
                default: break;
            }
            c /= 3;
        }
        try {
            out.emplace_back(vars, std::move(edges));
        } catch (const InputError&) {
            // cyclic orientation; skip
        }
    }
    return out;
}

bool d_separated(const Dag& g, VarMask a, VarMask b, VarMask s) {
    const VarMask full = g.vars().full_mask();
    if ((a | b | s) & ~full) throw InputError("statement names a variable outside the graph");
    if (a == 0 || b == 0) throw InputError("d-separation query with an empty side");
    if ((a & b) || (a & s) || (b & s)) throw InputError("overlapping sets in d-separation query");

    const VarMask anc = g.ancestors_of(a | b | s);
    const int n = g.var_count();
    // Moral graph of the induced ancestral subgraph.
    std::array<VarMask, VarSet::kMaxVars> nb{};
    auto connect = [&](int u, int v) {
        nb[static_cast<size_t>(u)] |= 1u << v;
        nb[static_cast<size_t>(v)] |= 1u << u;
    };
    for (auto [p, c] : g.edges()) {
        if (((anc >> p) & 1u) && ((anc >> c) & 1u)) connect(p, c);
    }
    for (int v = 0; v < n; ++v) {
        if (!((anc >> v) & 1u)) continue;
        VarMask ps = g.parent_mask(v) & anc;
        for (int p1 = 0; p1 < n; ++p1) {
            if (!((ps >> p1) & 1u)) continue;
            for (int p2 = p1 + 1; p2 < n; ++p2)
                if ((ps >> p2) & 1u) connect(p1, p2);
        }
    }
    // Reachability from A avoiding S.
    VarMask seen = a;
    VarMask frontier = a;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        VarMask next = nb[static_cast<size_t>(v)] & anc & ~seen & ~s;
        seen |= next;
        frontier |= next;
    }
    return (seen & b) == 0;
}

CISet implied_ci_set(const Dag& g) {
    std::vector<CIStatement> found;
    for (const auto& st : statement_universe(g.var_count()))
        if (d_separated(g, st.a, st.b, st.s)) found.push_back(st);
    return CISet::with_mutual(g.var_count(), std::move(found), g.edgeless());
}

bool markov_by_dsep(const JointTable& p, const Dag& g, Semantics sem) {
    if (p.vars() != g.vars()) throw InputError("distribution and graph use different variables");
    CISet implied = implied_ci_set(g);
    CISet extracted = extract_ci_set(p, sem);
    if (!implied.statements_subset_of(extracted)) return false;
    return !implied.mutual() || extracted.mutual();
}

bool markov_by_factorization(const JointTable& p, const Dag& g) {
    if (p.vars() != g.vars()) throw InputError("distribution and graph use different variables");
    const int n = p.var_count();
    for (unsigned idx = 0; idx < p.cell_count(); ++idx) {
        Rational lhs = p.cell(idx);
        Rational rhs(1);
        for (int v = 0; v < n; ++v) {
            VarMask pa = g.parent_mask(v);
            lhs *= p.prob(Assignment{pa, idx & pa});
            rhs *= p.prob(Assignment{pa | (1u << v), idx & (pa | (1u << v))});
        }
        if (lhs != rhs) return false;
    }
    return true;
}

std::vector<std::vector<size_t>> markov_equivalence_classes(const std::vector<Dag>& dags) {
    std::vector<std::vector<size_t>> classes;
    std::vector<CISet> keys;
    for (size_t i = 0; i < dags.size(); ++i) {
        if (i > 0 && !(dags[i].vars() == dags[0].vars()))
            throw InputError("equivalence classes need a common variable set");
        CISet ig = implied_ci_set(dags[i]);
        bool placed = false;
        for (size_t c = 0; c < classes.size(); ++c) {
            if (keys[c] == ig) {
                classes[c].push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            classes.push_back({i});
            keys.push_back(std::move(ig));
        }
    }
    return classes;
}

bool Pattern::skeleton_has(int u, int v) const {
    if (u > v) std::swap(u, v);
    if (std::find(undirected.begin(), undirected.end(), std::make_pair(u, v)) != undirected.end())
        return true;
    for (auto [p, c] : directed)
        if ((p == u && c == v) || (p == v && c == u)) return true;
    return false;
}

bool Pattern::directed_has(int p, int c) const {
    return std::find(directed.begin(), directed.end(), std::make_pair(p, c)) != directed.end();
}

std::string Pattern::serialize(const VarSet& vars) const {
    struct Line {
        int lo, hi;
        std::string text;
    };
    std::vector<Line> lines;
    for (auto [i, j] : undirected) lines.push_back({i, j, vars.name(i) + "--" + vars.name(j)});
    for (auto [p, c] : directed)
        lines.push_back({std::min(p, c), std::max(p, c), vars.name(p) + "->" + vars.name(c)});
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return std::tie(a.lo, a.hi, a.text) < std::tie(b.lo, b.hi, b.text);
    });
    if (lines.empty()) return "empty\n";
    std::string out;
    for (const auto& l : lines) out += l.text + "\n";
    return out;
}

namespace {

// Meek rules applied to a fixed point. adj/dir are mutable adjacency views:
// und holds undirected links, dir oriented ones.
struct PatternBuilder {
    int n;
    std::array<VarMask, VarSet::kMaxVars> und{};  // symmetric
    std::array<VarMask, VarSet::kMaxVars> out{};  // v -> children mask

    bool adjacent(int u, int v) const {
        return ((und[static_cast<size_t>(u)] >> v) & 1u) || ((out[static_cast<size_t>(u)] >> v) & 1u) ||
               ((out[static_cast<size_t>(v)] >> u) & 1u);
    }
    bool undirected(int u, int v) const { return (und[static_cast<size_t>(u)] >> v) & 1u; }
    bool directed(int p, int c) const { return (out[static_cast<size_t>(p)] >> c) & 1u; }

    void orient(int p, int c) {
        und[static_cast<size_t>(p)] &= ~(1u << c);
        und[static_cast<size_t>(c)] &= ~(1u << p);
        out[static_cast<size_t>(p)] |= 1u << c;
    }

    // R1: a->b, b--c, a and c nonadjacent  =>  b->c
    // R2: a->b->c, a--c                    =>  a->c
    // R3: a--b, a--c, a--d, c->b, d->b, c and d nonadjacent  =>  a->b
    // R4: a--b, a adjacent to c and d, c->d, d->b, c and b nonadjacent  =>  a->b
    bool meek_step() {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (!directed(a, b)) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == a || !undirected(b, c)) continue;
                    if (!adjacent(a, c)) {
                        orient(b, c);
                        return true;
                    }
                }
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int c = 0; c < n; ++c) {
                if (!undirected(a, c)) continue;
                for (int b = 0; b < n; ++b) {
                    if (directed(a, b) && directed(b, c)) {
                        orient(a, c);
                        return true;
                    }
                }
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (!undirected(a, b)) continue;
                for (int c = 0; c < n; ++c) {
                    if (!undirected(a, c) || !directed(c, b)) continue;
                    for (int d = c + 1; d < n; ++d) {
                        if (undirected(a, d) && directed(d, b) && !adjacent(c, d)) {
                            orient(a, b);
                            return true;
                        }
                    }
                }
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (!undirected(a, b)) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == b || !adjacent(a, c) || adjacent(c, b)) continue;
                    for (int d = 0; d < n; ++d) {
                        if (d == a || d == b) continue;
                        if (adjacent(a, d) && directed(c, d) && directed(d, b)) {
                            orient(a, b);
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    }

    Pattern finish() const {
        Pattern p;
        p.n = n;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v)
                if (undirected(u, v)) p.undirected.emplace_back(u, v);
        }
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v)
                if (directed(u, v)) p.directed.emplace_back(u, v);
        }
        std::sort(p.undirected.begin(), p.undirected.end());
        std::sort(p.directed.begin(), p.directed.end());
        return p;
    }
};

}  // namespace

Pattern meek_closure(const Pattern& pattern) {
    PatternBuilder pb;
    pb.n = pattern.n;
    for (auto [u, v] : pattern.undirected) {
        pb.und[static_cast<size_t>(u)] |= 1u << v;
        pb.und[static_cast<size_t>(v)] |= 1u << u;
    }
    for (auto [p, c] : pattern.directed) pb.out[static_cast<size_t>(p)] |= 1u << c;
    while (pb.meek_step()) {
    }
    return pb.finish();
}

Pattern cpdag(const Dag& g) {
    PatternBuilder pb;
    pb.n = g.var_count();
    for (auto [p, c] : g.edges()) {
        pb.und[static_cast<size_t>(p)] |= 1u << c;
        pb.und[static_cast<size_t>(c)] |= 1u << p;
    }
    // v-structures are compelled
    for (int v = 0; v < pb.n; ++v) {
        VarMask ps = g.parent_mask(v);
        for (int p1 = 0; p1 < pb.n; ++p1) {
            if (!((ps >> p1) & 1u)) continue;
            for (int p2 = p1 + 1; p2 < pb.n; ++p2) {
                if (((ps >> p2) & 1u) && !g.adjacent(p1, p2)) {
                    pb.orient(p1, v);
                    pb.orient(p2, v);
                }
            }
        }
    }
    while (pb.meek_step()) {
    }
    return pb.finish();
}

std::vector<Dag> consistent_extensions(const Pattern& pattern, const VarSet& vars) {
    std::vector<Dag> out;
    for (const Dag& g : enumerate_dags(vars)) {
        bool ok = true;
        // identical skeleton
        for (int u = 0; ok && u < g.var_count(); ++u)
            for (int v = u + 1; v < g.var_count(); ++v)
                if (g.adjacent(u, v) != pattern.skeleton_has(u, v)) ok = false;
        // pattern orientations respected
        for (auto [p, c] : pattern.directed)
            if (ok && !g.has_edge(p, c)) ok = false;
        if (!ok) continue;
        // no v-structure beyond those the pattern directs
        for (int v = 0; ok && v < g.var_count(); ++v) {
            VarMask ps = g.parent_mask(v);
            for (int p1 = 0; ok && p1 < g.var_count(); ++p1) {
                if (!((ps >> p1) & 1u)) continue;
                for (int p2 = p1 + 1; p2 < g.var_count(); ++p2) {
                    if (!((ps >> p2) & 1u) || g.adjacent(p1, p2)) continue;
                    if (!pattern.directed_has(p1, v) || !pattern.directed_has(p2, v)) ok = false;
                }
            }
        }
        if (ok) out.push_back(g);
    }
    return out;
}

JointTable random_markov_distribution(const Dag& g, uint64_t seed, int denom_bound) {
    if (denom_bound < 2) throw InputError("denominator bound must be at least 2");
    const int n = g.var_count();
    SplitMix64 rng{seed ^ g.structure_key()};
    const long d = denom_bound;

    // cpt[v][m] = numerator of P(v=1 | compacted parent assignment m)
    std::vector<std::vector<long>> cpt(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        cpt[static_cast<size_t>(v)].resize(size_t{1} << mask_size(g.parent_mask(v)));
        for (auto& num : cpt[static_cast<size_t>(v)])
            num = 1 + static_cast<long>(rng.below(static_cast<uint64_t>(d - 1)));
    }

    std::vector<Rational> mass;
    mass.reserve(size_t{1} << n);
    for (unsigned idx = 0; idx < (1u << n); ++idx) {
        Rational m(1);
        for (int v = 0; v < n; ++v) {
            unsigned packed = 0;
            int j = 0;
            for (VarMask pm = g.parent_mask(v); pm != 0; pm &= pm - 1, ++j) {
                int p = std::countr_zero(pm);
                packed |= ((idx >> p) & 1u) << j;
            }
            long a = cpt[static_cast<size_t>(v)][packed];
            m *= ((idx >> v) & 1u) ? Rational(a, d) : Rational(d - a, d);
        }
        mass.push_back(std::move(m));
    }
    return JointTable(g.vars(), std::move(mass));
}

std::vector<std::pair<std::string, Dag>> named_structures(const VarSet& vars) {
    if (vars.size() != 3) throw InputError("named structures are defined for 3 variables");
    auto d = [&](std::string_view spec) { return Dag::parse(spec, vars); };
    return {
        {"empty", d("empty")},
        {"edge-xy", d("X->Y")},
        {"edge-yx", d("Y->X")},
        {"edge-xz", d("X->Z")},
        {"edge-zx", d("Z->X")},
        {"edge-yz", d("Y->Z")},
        {"edge-zy", d("Z->Y")},
        {"chain-xzy", d("X->Z;Z->Y")},
        {"chain-yzx", d("Y->Z;Z->X")},
        {"fork-z", d("Z->X;Z->Y")},
        {"collider-z", d("X->Z;Y->Z")},
        {"direct-plus-confounder", d("X->Y;Z->X;Z->Y")},
        {"complete", d("X->Y;X->Z;Y->Z")},
    };
}

}  // namespace faithcheck
