#include <algorithm>
#include <array>

#include "faithcheck/errors.hpp"
#include "faithcheck/faithful.hpp"
#include "faithcheck/grid.hpp"
#include "faithcheck/parallel.hpp"
#include "faithcheck/rng.hpp"

namespace faithcheck {

namespace {

using Status = SearchOutcome::Status;
using V = Claim::Verdict;

// For n=3 the 9-statement universe plus the mutual flag packs into 10 bits,
// which makes exhaustive grid scans cheap set comparisons.
struct Packer {
    std::vector<CIStatement> universe = statement_universe(3);

    uint16_t pack(const CISet& set) const {
        uint16_t bits = 0;
        for (size_t i = 0; i < universe.size(); ++i)
            if (set.contains(universe[i])) bits |= static_cast<uint16_t>(1u << i);
        if (set.mutual()) bits |= 1u << 9;
        return bits;
    }

    uint16_t pack_extract(const JointTable& t, Semantics sem) const {
        uint16_t bits = 0;
        for (size_t i = 0; i < universe.size(); ++i)
            if (t.is_ci(universe[i].a, universe[i].b, universe[i].s, sem))
                bits |= static_cast<uint16_t>(1u << i);
        if (t.mutually_independent()) bits |= 1u << 9;
        return bits;
    }

    uint16_t pack_goal(const Goal& g) const {
        if (g.is_mutual()) return 1u << 9;
        for (size_t i = 0; i < universe.size(); ++i)
            if (universe[i] == *g.statement) return static_cast<uint16_t>(1u << i);
        throw InputError("goal outside the 3-variable universe");
    }
};

struct GridCache {
    std::vector<JointTable> tables;
    std::vector<uint16_t> extracted;
};

GridCache build_grid_cache(const Packer& packer, const VarSet& vars, int denom_bound, Semantics sem) {
    GridCache cache;
    for_each_grid_table(vars, denom_bound, [&](const JointTable& t) {
        cache.tables.push_back(t);
        return false;
    });
    cache.extracted.assign(cache.tables.size(), 0);
    parallel_chunks(cache.tables.size(), [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i)
            cache.extracted[i] = packer.pack_extract(cache.tables[i], sem);
    });
    return cache;
}

// Mirrors check_implication but reuses the packed grid for its first stage.
Verdict cached_implication(const Packer& packer, const GridCache& cache, const VarSet& vars,
                           const CISet& premises, const Goal& conclusion, Semantics sem,
                           uint64_t seed, uint64_t budget) {
    const uint16_t premise_bits = packer.pack(premises) & 0x1FF;  // statements only
    const uint16_t goal_bits = packer.pack_goal(conclusion);
    Verdict verdict;
    for (size_t i = 0; i < cache.tables.size() && verdict.tried < budget; ++i) {
        ++verdict.tried;
        const uint16_t bits = cache.extracted[i];
        if ((bits & premise_bits) == premise_bits && (bits & goal_bits) == 0) {
            verdict.counterexample = cache.tables[i];
            return verdict;
        }
    }
    SplitMix64 rng{seed ^ 0xD1B54A32D192ED03ull};
    while (verdict.tried < budget) {
        ++verdict.tried;
        JointTable t = random_table(vars, rng, 120, false);
        bool ok = true;
        for (const auto& st : premises.statements())
            if (!t.is_ci(st.a, st.b, st.s, sem)) { ok = false; break; }
        if (!ok || goal_holds(t, conclusion, sem)) continue;
        const uint16_t bits = packer.pack_extract(t, sem);
        if ((bits & premise_bits) == premise_bits && (bits & goal_bits) == 0) {
            verdict.counterexample = std::move(t);
            return verdict;
        }
    }
    return verdict;
}

struct Engine {
    VarSet vars = VarSet::xyz();
    Packer packer;
    Semantics sem = Semantics::kStrict;
    uint64_t seed = 0;
    uint64_t budget = 0;
    int denom_bound = 8;
    GridCache cache;
    Theorem3Report* report = nullptr;

    const PatternFinding& finding(PatternId id) const { return report->finding(id); }

    std::string cells_of(const JointTable& t) const { return t.cells_str(); }

    PatternFinding realize(PatternId id) const {
        PatternFinding f;
        f.id = id;
        f.target = theorem3_pattern(id);
        f.closure = semigraphoid_closure(f.target);
        const uint16_t goal_bits = packer.pack(f.closure);
        uint64_t tried = 0;
        for (size_t i = 0; i < cache.tables.size() && tried < budget; ++i) {
            ++tried;
            if (cache.extracted[i] == goal_bits) {
                f.witness = cache.tables[i];
                break;
            }
        }
        if (!f.witness && tried < budget) {
            SplitMix64 rng{seed ^ 0x9E6C63D0876A9A35ull};
            while (tried < budget) {
                ++tried;
                JointTable t = random_table(vars, rng, 120, false);
                if (packer.pack_extract(t, sem) == goal_bits) {
                    f.witness = std::move(t);
                    break;
                }
            }
        }
        if (f.witness) {
            f.status = f.closure == f.target ? Status::kExact : Status::kClosure;
            FaithReport cls = classify(*f.witness, sem);
            for (size_t i : cls.faithful) f.faithful_dags.push_back(cls.dags[i].serialize());
        }
        return f;
    }

    // ---- claim builders ----------------------------------------------------

    Claim implies_mutual(PatternId id) const {
        Claim c;
        c.label = id.str() + " => mutual";
        Verdict v = cached_implication(packer, cache, vars, theorem3_pattern(id), Goal::mutual(), sem,
                                       seed, budget);
        if (v.found()) {
            c.verdict = V::kContradicted;
            c.note = "counterexample cells " + v.counterexample->cells_str();
        } else {
            c.verdict = V::kSupported;
            c.note = "no counterexample among " + std::to_string(v.tried) + " candidates";
        }
        return c;
    }

    std::pair<Claim, Claim> set_equality(PatternId lhs, PatternId rhs) const {
        const CISet a = theorem3_pattern(lhs), b = theorem3_pattern(rhs);
        const CISet ca = semigraphoid_closure(a), cb = semigraphoid_closure(b);
        Claim closure_claim;
        closure_claim.label = "closure(" + lhs.str() + ") == closure(" + rhs.str() + ")";
        closure_claim.verdict = ca == cb ? V::kSupported : V::kContradicted;
        if (ca != cb)
            closure_claim.note = "closures have " + std::to_string(ca.size()) + " and " +
                                 std::to_string(cb.size()) + " statements";

        Claim family_claim;
        family_claim.label = "distributions satisfying " + lhs.str() + " == those satisfying " + rhs.str();
        family_claim.verdict = V::kSupported;
        uint64_t scanned = 0;
        auto cross = [&](const CISet& from, const CISet& to, PatternId to_id) {
            for (const auto& st : to.statements()) {
                if (family_claim.verdict != V::kSupported) return;
                if (from.contains(st)) continue;
                Verdict v = cached_implication(packer, cache, vars, from, Goal::of(st), sem, seed, budget);
                scanned += v.tried;
                if (v.found()) {
                    family_claim.verdict = V::kContradicted;
                    family_claim.note = format_statement(st, vars) + " of " + to_id.str() +
                                        " fails at cells " + v.counterexample->cells_str();
                }
            }
        };
        cross(a, b, rhs);
        cross(b, a, lhs);
        if (family_claim.verdict == V::kSupported)
            family_claim.note = "no separating distribution among " + std::to_string(scanned) + " candidates";
        return {closure_claim, family_claim};
    }

    Claim faithful_to_empty(PatternId id, bool expect_faithful) const {
        Claim c;
        c.label = id.str() + (expect_faithful ? " realization faithful to the empty graph"
                                              : " realization unfaithful to the empty graph");
        const PatternFinding& f = finding(id);
        if (!f.witness) {
            c.verdict = V::kUndecided;
            c.note = "no realization within budget";
            return c;
        }
        const bool empty_faithful =
            std::find(f.faithful_dags.begin(), f.faithful_dags.end(), "empty") != f.faithful_dags.end();
        c.verdict = empty_faithful == expect_faithful ? V::kSupported : V::kContradicted;
        c.note = "realization cells " + f.witness->cells_str() + " faithful to " +
                 (f.faithful_dags.empty() ? std::string("none") : join(f.faithful_dags));
        return c;
    }

    Claim faithful_to_none(PatternId id) const {
        Claim c;
        c.label = id.str() + " realization faithful to no DAG";
        const PatternFinding& f = finding(id);
        if (!f.witness) {
            c.verdict = V::kUndecided;
            c.note = "no realization within budget";
            return c;
        }
        if (f.faithful_dags.empty()) {
            c.verdict = V::kSupported;
            c.note = "realization cells " + f.witness->cells_str() + " faithful to none of the 25 DAGs";
        } else {
            // The claim speaks about an unrecoverable figure catalog; all we
            // can report is which classes the realization is faithful to.
            c.verdict = V::kUndecided;
            c.note = "realization cells " + f.witness->cells_str() + " is faithful to " +
                     join(f.faithful_dags) + "; whether those structures are among the figures is not recoverable";
        }
        return c;
    }

    Claim faithful_to_some(PatternId id) const {
        Claim c;
        c.label = id.str() + " realization faithful to some DAG";
        const PatternFinding& f = finding(id);
        if (!f.witness) {
            c.verdict = V::kUndecided;
            c.note = "no realization within budget (no binary distribution attains exactly this set)";
            return c;
        }
        if (f.faithful_dags.empty()) {
            c.verdict = V::kContradicted;
            c.note = "realization cells " + f.witness->cells_str() + " faithful to none of the 25 DAGs";
        } else {
            c.verdict = V::kSupported;
            c.note = "faithful to " + join(f.faithful_dags);
        }
        return c;
    }

    static std::string join(const std::vector<std::string>& parts) {
        std::string out;
        for (const auto& p : parts) {
            if (!out.empty()) out += " ; ";
            out += p;
        }
        return out;
    }
};

V aggregate(const ConclusionFinding& f) {
    bool undecided = false;
    for (const auto& c : f.claims) {
        if (c.verdict == V::kContradicted) return V::kContradicted;
        if (c.verdict == V::kUndecided) undecided = true;
    }
    return undecided ? V::kUndecided : V::kSupported;
}

std::string_view verdict_name(V v) {
    switch (v) {
        case V::kSupported: return "supported";
        case V::kContradicted: return "contradicted";
        case V::kUndecided: return "not-decidable-within-budget";
    }
    return "?";
}

std::string_view status_name(Status s) {
    switch (s) {
        case Status::kExact: return "exact";
        case Status::kClosure: return "closure";
        case Status::kNone: return "none";
    }
    return "?";
}

}  // namespace

const PatternFinding& Theorem3Report::finding(PatternId id) const {
    for (const auto& f : patterns)
        if (f.id == id) return f;
    throw InputError("unknown pattern id " + id.str());
}

Theorem3Report verify_theorem3(uint64_t seed, uint64_t budget, int denom_bound, Semantics sem) {
    if (budget == 0) throw InputError("zero search budget");
    Theorem3Report report;
    report.seed = seed;
    report.budget = budget;
    report.denom_bound = denom_bound;
    report.sem = sem;

    Engine eng;
    eng.sem = sem;
    eng.seed = seed;
    eng.budget = budget;
    eng.denom_bound = denom_bound;
    eng.cache = build_grid_cache(eng.packer, eng.vars, denom_bound, sem);
    eng.report = &report;

    for (PatternId id : all_pattern_ids()) report.patterns.push_back(eng.realize(id));

    auto P = [](int g, int i) { return PatternId{g, i}; };
    auto add_equalities = [&](ConclusionFinding& f, PatternId a, PatternId b) {
        auto [c1, c2] = eng.set_equality(a, b);
        f.claims.push_back(std::move(c1));
        f.claims.push_back(std::move(c2));
    };

    // (1) every group-I family matches no DAG
    {
        ConclusionFinding f;
        f.index = 1;
        f.remarks.push_back("stated through index I:9, but group I defines only 8 sets");
        for (int k = 1; k <= 8; ++k) f.claims.push_back(eng.faithful_to_none(P(1, k)));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (2) II:1 and II:9 faithful to specific figures, II:2..II:8 to none
    {
        ConclusionFinding f;
        f.index = 2;
        f.remarks.push_back("the figure anchors for II:1 and II:9 are not recoverable; the claims are "
                            "checked as: faithful to some DAG");
        f.claims.push_back(eng.faithful_to_some(P(2, 1)));
        for (int k = 2; k <= 8; ++k) f.claims.push_back(eng.faithful_to_none(P(2, k)));
        f.claims.push_back(eng.faithful_to_some(P(2, 9)));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (3) III:k => mutual, unfaithful to empty, III:k == VI:k == VII:l
    {
        ConclusionFinding f;
        f.index = 3;
        for (int k = 1; k <= 9; ++k) f.claims.push_back(eng.implies_mutual(P(3, k)));
        for (int k = 1; k <= 9; ++k) f.claims.push_back(eng.faithful_to_empty(P(3, k), false));
        for (int k = 1; k <= 9; ++k) {
            add_equalities(f, P(3, k), P(6, k));
            add_equalities(f, P(3, k), P(7, (k - 1) % 3 + 1));
        }
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (4) IV:k == X:1, faithful to empty
    {
        ConclusionFinding f;
        f.index = 4;
        for (int k = 1; k <= 3; ++k) add_equalities(f, P(4, k), P(10, 1));
        for (int k = 1; k <= 3; ++k) f.claims.push_back(eng.faithful_to_empty(P(4, k), true));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (5) V:k => mutual, unfaithful to empty, V:k == VIII:m pairs
    {
        ConclusionFinding f;
        f.index = 5;
        for (int k = 1; k <= 9; ++k) f.claims.push_back(eng.implies_mutual(P(5, k)));
        for (int k = 1; k <= 9; ++k) f.claims.push_back(eng.faithful_to_empty(P(5, k), false));
        const std::array<std::pair<int, int>, 6> pairs = {
            std::pair{1, 1}, {2, 2}, {5, 2}, {6, 3}, {7, 1}, {9, 3}};
        for (auto [vk, wk] : pairs) add_equalities(f, P(5, vk), P(8, wk));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (6) VI:k => mutual, unfaithful to empty, VI:k == IX:l
    {
        ConclusionFinding f;
        f.index = 6;
        for (int k = 1; k <= 9; ++k) f.claims.push_back(eng.implies_mutual(P(6, k)));
        for (int k = 1; k <= 9; ++k) f.claims.push_back(eng.faithful_to_empty(P(6, k), false));
        for (int k = 1; k <= 9; ++k) add_equalities(f, P(6, k), P(9, (k - 1) % 3 + 1));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (7) VII:k == X:1, faithful to empty
    {
        ConclusionFinding f;
        f.index = 7;
        for (int k = 1; k <= 3; ++k) add_equalities(f, P(7, k), P(10, 1));
        for (int k = 1; k <= 3; ++k) f.claims.push_back(eng.faithful_to_empty(P(7, k), true));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (8) VIII:k => mutual, unfaithful to empty
    {
        ConclusionFinding f;
        f.index = 8;
        for (int k = 1; k <= 3; ++k) f.claims.push_back(eng.implies_mutual(P(8, k)));
        for (int k = 1; k <= 3; ++k) f.claims.push_back(eng.faithful_to_empty(P(8, k), false));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (9) IV:k => mutual, unfaithful to empty -- in direct tension with (4)
    {
        ConclusionFinding f;
        f.index = 9;
        for (int k = 1; k <= 3; ++k) f.claims.push_back(eng.implies_mutual(P(4, k)));
        for (int k = 1; k <= 3; ++k) f.claims.push_back(eng.faithful_to_empty(P(4, k), false));
        f.remarks.push_back("conflict: conclusion 4 asserts the same IV:k realizations are faithful to "
                            "the empty graph, conclusion 9 asserts they are not; the classification "
                            "above resolves which side the arithmetic supports");
        for (int k = 1; k <= 3; ++k) {
            const PatternFinding& pf = eng.finding(P(4, k));
            if (pf.witness)
                f.remarks.push_back("IV:" + std::to_string(k) + " realization cells " +
                                    pf.witness->cells_str() + " classifies as faithful to " +
                                    (pf.faithful_dags.empty() ? std::string("none")
                                                              : Engine::join(pf.faithful_dags)));
        }
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }
    // (10) X:1 == the full intersection set, faithful to empty
    {
        ConclusionFinding f;
        f.index = 10;
        Claim closure_claim;
        closure_claim.label = "closure(X:1) == all nine statements plus mutual";
        CISet full = CISet::of(3, statement_universe(3));
        closure_claim.verdict = semigraphoid_closure(theorem3_pattern(P(10, 1))) == full
                                    ? V::kSupported
                                    : V::kContradicted;
        f.claims.push_back(std::move(closure_claim));
        CISet x1 = theorem3_pattern(P(10, 1));
        Claim family;
        family.label = "every distribution satisfying X:1 attains all nine statements plus mutual";
        family.verdict = V::kSupported;
        uint64_t scanned = 0;
        for (const auto& st : full.statements()) {
            if (family.verdict != V::kSupported) break;
            if (x1.contains(st)) continue;
            Verdict v = cached_implication(eng.packer, eng.cache, eng.vars, x1, Goal::of(st), sem, seed,
                                           budget);
            scanned += v.tried;
            if (v.found()) {
                family.verdict = V::kContradicted;
                family.note = format_statement(st, eng.vars) + " fails at cells " +
                              v.counterexample->cells_str();
            }
        }
        if (family.verdict == V::kSupported) {
            Verdict v = cached_implication(eng.packer, eng.cache, eng.vars, x1, Goal::mutual(), sem,
                                           seed, budget);
            scanned += v.tried;
            if (v.found()) {
                family.verdict = V::kContradicted;
                family.note = "mutual independence fails at cells " + v.counterexample->cells_str();
            } else {
                family.note = "no counterexample among " + std::to_string(scanned) + " candidates";
            }
        }
        f.claims.push_back(std::move(family));
        f.claims.push_back(eng.faithful_to_empty(P(10, 1), true));
        f.overall = aggregate(f);
        report.conclusions.push_back(std::move(f));
    }

    return report;
}

std::string Theorem3Report::serialize() const {
    const VarSet vars = VarSet::xyz();
    std::string out = "theorem3 report semantics=" + std::string(semantics_name(sem)) +
                      " seed=" + std::to_string(seed) + " budget=" + std::to_string(budget) +
                      " denom-bound=" + std::to_string(denom_bound) + "\n";
    for (const auto& f : patterns) {
        out += "[pattern " + f.id.str() + "]\n";
        out += "target: " + f.target.one_line(vars) + "\n";
        out += "closure: " + f.closure.one_line(vars) + "\n";
        out += "realized: " + std::string(status_name(f.status)) + "\n";
        if (f.witness) {
            out += "cells: " + f.witness->cells_str() + "\n";
            std::string fd;
            for (const auto& d : f.faithful_dags) {
                if (!fd.empty()) fd += " ; ";
                fd += d;
            }
            out += "faithful: " + (fd.empty() ? "none" : fd) + "\n";
        }
    }
    for (const auto& c : conclusions) {
        out += "[conclusion " + std::to_string(c.index) + "]\n";
        for (const auto& r : c.remarks) out += "note: " + r + "\n";
        for (const auto& cl : c.claims) {
            out += cl.label + ": " + std::string(verdict_name(cl.verdict));
            if (!cl.note.empty()) out += " -- " + cl.note;
            out += "\n";
        }
        out += "overall: " + std::string(verdict_name(c.overall)) + "\n";
    }
    return out;
}

}  // namespace faithcheck
