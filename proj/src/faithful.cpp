#include "faithcheck/faithful.hpp"

#include <algorithm>
#include <array>

#include "faithcheck/errors.hpp"
#include "faithcheck/grid.hpp"
#include "faithcheck/rng.hpp"

namespace faithcheck {

namespace {

JointTable make_example(std::initializer_list<std::pair<unsigned, Rational>> cells) {
    std::vector<Rational> mass(8);
    for (auto& [bits, m] : cells) {
        // listed as (x, y, z) digit triples, e.g. 011 = X=0, Y=1, Z=1
        unsigned x = (bits / 100) % 10, y = (bits / 10) % 10, z = bits % 10;
        mass[x + 2 * y + 4 * z] = m;
    }
    return JointTable(VarSet::xyz(), std::move(mass));
}

CISet listed_set(std::initializer_list<std::string_view> stmts, bool mutual) {
    const VarSet xyz = VarSet::xyz();
    std::vector<CIStatement> parsed;
    for (auto s : stmts) parsed.push_back(parse_statement(s, xyz));
    return CISet::with_mutual(3, std::move(parsed), mutual);
}

std::vector<ExampleEntry> build_catalog() {
    std::vector<ExampleEntry> out;
    out.push_back({1, "uniform table, fully independent",
                   listed_set({"X _||_ Y", "X _||_ Z", "Y _||_ Z", "X _||_ Y,Z", "X,Z _||_ Y",
                               "X,Y _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y", "Y _||_ Z | X"},
                              true),
                   {}});
    out.push_back({2, "pairwise independent only", listed_set({"X _||_ Y", "Y _||_ Z", "X _||_ Z"}, false), {}});
    out.push_back({3,
                   "X independent of (Y,Z), Y and Z dependent",
                   listed_set({"X _||_ Y", "X _||_ Z", "X _||_ Y,Z", "X _||_ Y | Z"}, false),
                   {"listing omits X _||_ Z | Y, which holds exactly (weak union)"}});
    out.push_back({4, "conditional independences only, zero cells",
                   listed_set({"X _||_ Y | Z", "X _||_ Z | Y"}, false), {}});
    out.push_back({5,
                   "documented as pairwise for X only",
                   listed_set({"X _||_ Y", "X _||_ Z"}, false),
                   {"the documented claim that X _||_ Y,Z fails is wrong: the X=1 cells are exactly "
                    "one third of the X=0 cells, so X _||_ Y,Z holds (with X _||_ Y | Z and X _||_ Z | Y)"}});
    out.push_back({6, "two-point support, conditional independences only",
                   listed_set({"X _||_ Y | Z", "X _||_ Z | Y", "Y _||_ Z | X"}, false), {}});
    out.push_back({7, "degenerate: X = 0 and Y = 0 almost surely",
                   listed_set({"X _||_ Y", "X _||_ Z", "Y _||_ Z", "X _||_ Y | Z"}, false), {}});
    out.push_back({8,
                   "degenerate: Z = 0 almost surely, X and Y dependent",
                   listed_set({"Y _||_ Z", "X _||_ Z", "Y _||_ Z | X", "X _||_ Z | Y"}, false),
                   {"the documented claim that X,Y _||_ Z fails is wrong: Z is constant, so "
                    "X,Y _||_ Z holds exactly"}});
    out.push_back({9, "X = 1 almost surely, Y and Z independent",
                   listed_set({"X _||_ Y", "Y _||_ Z", "X _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y",
                               "X _||_ Y,Z"},
                              false),
                   {}});
    out.push_back({10, "point mass at (0,0,0)",
                   listed_set({"X _||_ Y", "Y _||_ Z", "X _||_ Z"}, true), {}});
    return out;
}

}  // namespace

JointTable example_table(int id) {
    switch (id) {
        case 1: {
            std::vector<Rational> mass(8, Rational(1, 8));
            return JointTable(VarSet::xyz(), std::move(mass));
        }
        case 2:
            return make_example({{0, {1, 16}}, {1, {3, 16}}, {10, {3, 16}}, {11, {1, 16}},
                                 {100, {3, 16}}, {101, {1, 16}}, {110, {1, 16}}, {111, {3, 16}}});
        case 3:
            return make_example({{0, {1, 4}}, {1, {4, 15}}, {10, {1, 12}}, {11, {1, 15}},
                                 {100, {1, 8}}, {101, {4, 30}}, {110, {1, 24}}, {111, {1, 30}}});
        case 4:
            return make_example({{0, {1, 5}}, {11, {3, 10}}, {100, {3, 10}}, {111, {1, 5}}});
        case 5:
            return make_example({{0, {1, 4}}, {1, {3, 10}}, {10, {1, 8}}, {11, {3, 40}},
                                 {100, {1, 12}}, {101, {1, 10}}, {110, {1, 24}}, {111, {1, 40}}});
        case 6:
            return make_example({{0, {1, 4}}, {111, {3, 4}}});
        case 7:
            return make_example({{0, {1, 4}}, {1, {3, 4}}});
        case 8:
            return make_example({{0, {1, 3}}, {100, {1, 3}}, {110, {1, 3}}});
        case 9:
            return make_example({{100, {1, 4}}, {101, {1, 4}}, {110, {1, 4}}, {111, {1, 4}}});
        case 10:
            return make_example({{0, Rational(1)}});
        default:
            throw InputError("example id must be between 1 and 10, got " + std::to_string(id));
    }
}

const std::vector<ExampleEntry>& example_catalog() {
    static const std::vector<ExampleEntry> catalog = build_catalog();
    return catalog;
}

bool is_faithful(const JointTable& p, const Dag& g, Semantics sem) {
    if (p.vars() != g.vars()) throw InputError("distribution and graph use different variables");
    return extract_ci_set(p, sem) == implied_ci_set(g);
}

FaithReport classify(const JointTable& p, Semantics sem) {
    if (p.var_count() > 5) throw InputError("classification enumerates DAGs for at most 5 variables");
    FaithReport report;
    report.hash = p.content_hash();
    report.sem = sem;
    report.extracted = extract_ci_set(p, sem);
    report.dags = enumerate_dags(p.vars());
    report.verdicts.reserve(report.dags.size());
    for (size_t i = 0; i < report.dags.size(); ++i) {
        CISet implied = implied_ci_set(report.dags[i]);
        DagVerdict v = DagVerdict::kNotMarkov;
        if (implied.statements_subset_of(report.extracted) &&
            (!implied.mutual() || report.extracted.mutual())) {
            v = implied == report.extracted ? DagVerdict::kFaithful : DagVerdict::kMarkovOnly;
        }
        report.verdicts.push_back(v);
        if (v == DagVerdict::kFaithful) report.faithful.push_back(i);
    }
    report.classes = markov_equivalence_classes(report.dags);
    return report;
}

std::string FaithReport::serialize(const VarSet& vars) const {
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof hashbuf, "%016llx", static_cast<unsigned long long>(hash));
    std::string out = "# distribution " + std::string(hashbuf) + " semantics=" +
                      std::string(semantics_name(sem)) + "\n";
    out += "[extracted]\n" + extracted.serialize(vars);
    out += "[faithful]\n";
    if (faithful.empty()) out += "none\n";
    for (size_t i : faithful) out += dags[i].serialize() + "\n";
    out += "[markov]\n";
    bool any = false;
    for (size_t i = 0; i < dags.size(); ++i) {
        if (verdicts[i] == DagVerdict::kMarkovOnly) {
            out += dags[i].serialize() + "\n";
            any = true;
        }
    }
    if (!any) out += "none\n";
    out += "[classes]\n";
    for (const auto& cls : classes) {
        std::string verdict;
        switch (verdicts[cls.front()]) {
            case DagVerdict::kFaithful: verdict = "faithful"; break;
            case DagVerdict::kMarkovOnly: verdict = "markov-only"; break;
            case DagVerdict::kNotMarkov: verdict = "not-markov"; break;
        }
        std::string members;
        for (size_t i : cls) {
            if (!members.empty()) members += " ; ";
            members += dags[i].serialize();
        }
        out += verdict + ": " + members + "\n";
    }
    return out;
}

namespace {

constexpr std::array<int, 10> kGroupSizes = {8, 9, 9, 3, 9, 9, 3, 3, 3, 1};
constexpr std::array<std::string_view, 10> kGroupNames = {"I",  "II",  "III", "IV", "V",
                                                          "VI", "VII", "VIII", "IX", "X"};

// Statement shorthands over (X,Y,Z): bit 0 = X, 1 = Y, 2 = Z.
CIStatement st_xy() { return make_statement(1, 2, 0); }
CIStatement st_xz() { return make_statement(1, 4, 0); }
CIStatement st_yz() { return make_statement(2, 4, 0); }
CIStatement st_xy_z() { return make_statement(1, 2, 4); }
CIStatement st_xz_y() { return make_statement(1, 4, 2); }
CIStatement st_yz_x() { return make_statement(2, 4, 1); }

std::vector<CIStatement> pattern_statements(int group, int index) {
    const CIStatement XY = st_xy(), XZ = st_xz(), YZ = st_yz();
    const CIStatement XY_Z = st_xy_z(), XZ_Y = st_xz_y(), YZ_X = st_yz_x();
    const std::array<CIStatement, 3> pair_of = {XY, XZ, YZ};          // by (k-1)/3 for II/III groups
    const std::array<CIStatement, 3> cond_of = {XY_Z, XZ_Y, YZ_X};
    const int k = index - 1;
    switch (group) {
        case 1: {  // I
            switch (index) {
                case 1: return {XY, XZ};
                case 2: return {XY, YZ};
                case 3: return {XZ, YZ};
                case 4: return {XY, XZ, YZ};
                case 5: return {XY_Z, XZ_Y};
                case 6: return {XY_Z, YZ_X};
                case 7: return {YZ_X, XZ_Y};
                case 8: return {XY_Z, XZ_Y, YZ_X};
            }
            break;
        }
        case 2:  // II: pair (k/3) with conditional (k%3)
            return {pair_of[static_cast<size_t>(k / 3)], cond_of[static_cast<size_t>(k % 3)]};
        case 3: {  // III: pair with two conditionals, rotating
            const CIStatement p = pair_of[static_cast<size_t>(k / 3)];
            switch (k % 3) {
                case 0: return {p, XY_Z, XZ_Y};
                case 1: return {p, XZ_Y, YZ_X};
                case 2: return {p, YZ_X, XY_Z};
            }
            break;
        }
        case 4:  // IV: pair with all three conditionals
            return {pair_of[static_cast<size_t>(k)], XY_Z, XZ_Y, YZ_X};
        case 5: {  // V: two pairs with one conditional
            static const std::array<std::pair<CIStatement, CIStatement>, 3> duos = {
                std::pair{st_xy(), st_xz()}, std::pair{st_xz(), st_yz()}, std::pair{st_yz(), st_xy()}};
            auto [p1, p2] = duos[static_cast<size_t>(k / 3)];
            return {p1, p2, cond_of[static_cast<size_t>(k % 3)]};
        }
        case 6: {  // VI: two pairs with two conditionals, rotating
            static const std::array<std::pair<CIStatement, CIStatement>, 3> duos = {
                std::pair{st_xy(), st_xz()}, std::pair{st_xz(), st_yz()}, std::pair{st_yz(), st_xy()}};
            auto [p1, p2] = duos[static_cast<size_t>(k / 3)];
            switch (k % 3) {
                case 0: return {p1, p2, XY_Z, XZ_Y};
                case 1: return {p1, p2, XZ_Y, YZ_X};
                case 2: return {p1, p2, YZ_X, XY_Z};
            }
            break;
        }
        case 7: {  // VII: two pairs with all conditionals
            static const std::array<std::pair<CIStatement, CIStatement>, 3> duos = {
                std::pair{st_xy(), st_xz()}, std::pair{st_xz(), st_yz()}, std::pair{st_yz(), st_xy()}};
            auto [p1, p2] = duos[static_cast<size_t>(k)];
            return {p1, p2, XY_Z, XZ_Y, YZ_X};
        }
        case 8:  // VIII: all pairs with one conditional
            return {XY, XZ, YZ, cond_of[static_cast<size_t>(k)]};
        case 9: {  // IX: all pairs with two conditionals, rotating
            switch (k) {
                case 0: return {XY, XZ, YZ, XY_Z, XZ_Y};
                case 1: return {XY, XZ, YZ, XZ_Y, YZ_X};
                case 2: return {XY, XZ, YZ, YZ_X, XY_Z};
            }
            break;
        }
        case 10:  // X
            return {XY, XZ, YZ, XY_Z, XZ_Y, YZ_X};
    }
    throw InputError("invalid pattern id " + std::string(kGroupNames[static_cast<size_t>(group - 1)]) +
                     ":" + std::to_string(index));
}

}  // namespace

PatternId PatternId::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("pattern id must look like I:5, got '" + std::string(text) + "'");
    std::string_view group = text.substr(0, colon);
    std::string_view idx = text.substr(colon + 1);
    PatternId id;
    for (size_t g = 0; g < kGroupNames.size(); ++g) {
        if (group == kGroupNames[g]) id.group = static_cast<int>(g) + 1;
    }
    if (id.group == 0) throw InputError("unknown pattern group '" + std::string(group) + "'");
    if (idx.empty() || idx.size() > 2 || idx.find_first_not_of("0123456789") != std::string_view::npos)
        throw ParseError("bad pattern index '" + std::string(idx) + "'");
    id.index = std::stoi(std::string(idx));
    if (id.index < 1 || id.index > kGroupSizes[static_cast<size_t>(id.group - 1)])
        throw InputError("pattern index out of range for group " + std::string(group));
    return id;
}

std::string PatternId::str() const {
    return std::string(kGroupNames[static_cast<size_t>(group - 1)]) + ":" + std::to_string(index);
}

const std::vector<PatternId>& all_pattern_ids() {
    static const std::vector<PatternId> ids = [] {
        std::vector<PatternId> out;
        for (int g = 1; g <= 10; ++g)
            for (int i = 1; i <= kGroupSizes[static_cast<size_t>(g - 1)]; ++i)
                out.push_back(PatternId{g, i});
        return out;
    }();
    return ids;
}

CISet theorem3_pattern(PatternId id) {
    if (id.group < 1 || id.group > 10 || id.index < 1 ||
        id.index > kGroupSizes[static_cast<size_t>(id.group - 1)])
        throw InputError("invalid pattern id");
    return CISet::of(3, pattern_statements(id.group, id.index));
}

SearchOutcome search_distribution(const VarSet& vars, const CISet& target, Semantics sem,
                                  uint64_t seed, uint64_t budget, int denom_bound) {
    if (target.var_count() != vars.size())
        throw InputError("target and variable set disagree on the variable count");
    SearchOutcome outcome;
    outcome.target = target;
    outcome.goal = semigraphoid_closure(target);

    auto consider = [&](const JointTable& t) {
        ++outcome.tried;
        CISet ex = extract_ci_set(t, sem);
        if (!outcome.superset && target.statements_subset_of(ex) && (!target.mutual() || ex.mutual()))
            outcome.superset = t;
        if (ex == outcome.goal) {
            outcome.table = t;
            outcome.status = outcome.goal == target ? SearchOutcome::Status::kExact
                                                    : SearchOutcome::Status::kClosure;
            return true;
        }
        return false;
    };

    if (vars.size() == 3) {
        for (int id = 1; id <= 10 && outcome.tried < budget; ++id) {
            JointTable ex = example_table(id);
            if (!(ex.vars() == vars)) break;
            if (consider(ex)) return outcome;
        }
    }
    for_each_grid_table(vars, denom_bound, [&](const JointTable& t) {
        return outcome.tried >= budget || consider(t);
    });
    if (outcome.found() || outcome.tried >= budget) return outcome;

    SplitMix64 rng{seed ^ 0x9E6C63D0876A9A35ull};
    while (outcome.tried < budget) {
        JointTable t = random_table(vars, rng, 120, false);
        if (consider(t)) break;
    }
    return outcome;
}

}  // namespace faithcheck
