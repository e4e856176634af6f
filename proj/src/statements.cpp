#include "faithcheck/statements.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "faithcheck/errors.hpp"
#include "faithcheck/grid.hpp"
#include "faithcheck/rng.hpp"

namespace faithcheck {

CIStatement make_statement(VarMask a, VarMask b, VarMask s) {
    if (a == 0 || b == 0) throw InputError("independence statement with an empty side");
    if ((a & b) || (a & s) || (b & s)) throw InputError("overlapping sets in independence statement");
    if (lexset_less(b, a)) std::swap(a, b);
    return CIStatement{a, b, s};
}

namespace {

std::array<int, 3> size_key(const CIStatement& st) {
    return {mask_size(st.a) + mask_size(st.b), mask_size(st.s), 0};
}

}  // namespace

bool statement_less(const CIStatement& x, const CIStatement& y) {
    if (size_key(x) != size_key(y)) return size_key(x) < size_key(y);
    if (x.a != y.a) return lexset_less(x.a, y.a);
    if (x.b != y.b) return lexset_less(x.b, y.b);
    if (x.s != y.s) return lexset_less(x.s, y.s);
    return false;
}

std::string format_statement(const CIStatement& st, const VarSet& vars) {
    std::string out = vars.mask_names(st.a) + " _||_ " + vars.mask_names(st.b);
    if (st.s != 0) out += " | " + vars.mask_names(st.s);
    return out;
}

namespace {

VarMask parse_name_set(std::string_view text, const VarSet& vars) {
    VarMask m = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view name = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        // trim
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
        if (name.empty()) throw ParseError("empty variable name in set '" + std::string(text) + "'");
        auto idx = vars.index_of(name);
        if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'");
        m |= 1u << *idx;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return m;
}

}  // namespace

CIStatement parse_statement(std::string_view text, const VarSet& vars) {
    auto sep = text.find("_||_");
    if (sep == std::string_view::npos)
        throw ParseError("expected '_||_' in statement '" + std::string(text) + "'");
    std::string_view lhs = text.substr(0, sep);
    std::string_view rest = text.substr(sep + 4);
    auto bar = rest.find('|');
    std::string_view rhs = rest.substr(0, bar);
    VarMask s = 0;
    if (bar != std::string_view::npos) s = parse_name_set(rest.substr(bar + 1), vars);
    return make_statement(parse_name_set(lhs, vars), parse_name_set(rhs, vars), s);
}

std::vector<CIStatement> statement_universe(int n) {
    if (n < 1 || n > VarSet::kMaxVars) throw InputError("variable count out of range");
    std::vector<CIStatement> out;
    const VarMask full = (1u << n) - 1;
    for (VarMask a = 1; a <= full; ++a) {
        for (VarMask b = 1; b <= full; ++b) {
            if ((a & b) || !lexset_less(a, b)) continue;
            const VarMask rest = full & ~(a | b);
            VarMask s = rest;
            while (true) {
                out.push_back(CIStatement{a, b, s});
                if (s == 0) break;
                s = (s - 1) & rest;
            }
        }
    }
    std::sort(out.begin(), out.end(), statement_less);
    return out;
}

CISet CISet::of(int var_count, std::vector<CIStatement> statements) {
    std::sort(statements.begin(), statements.end(), statement_less);
    statements.erase(std::unique(statements.begin(), statements.end()), statements.end());
    bool m = derived_mutual(var_count, statements);
    return with_mutual(var_count, std::move(statements), m);
}

CISet CISet::with_mutual(int var_count, std::vector<CIStatement> statements, bool mutual) {
    std::sort(statements.begin(), statements.end(), statement_less);
    statements.erase(std::unique(statements.begin(), statements.end()), statements.end());
    CISet set;
    set.n_ = var_count;
    set.stmts_ = std::move(statements);
    set.mutual_ = mutual;
    for (const auto& st : set.stmts_) {
        if ((st.a | st.b | st.s) >> var_count)
            throw InputError("statement names a variable outside the set");
    }
    return set;
}

bool CISet::contains(const CIStatement& st) const {
    return std::binary_search(stmts_.begin(), stmts_.end(), st, statement_less);
}

bool CISet::statements_subset_of(const CISet& other) const {
    return std::includes(other.stmts_.begin(), other.stmts_.end(), stmts_.begin(), stmts_.end(),
                         statement_less);
}

std::string CISet::serialize(const VarSet& vars) const {
    std::string out;
    for (const auto& st : stmts_) out += format_statement(st, vars) + "\n";
    if (mutual_) out += "mutual\n";
    return out;
}

std::string CISet::one_line(const VarSet& vars) const {
    if (stmts_.empty() && !mutual_) return "(none)";
    std::string out;
    for (const auto& st : stmts_) {
        if (!out.empty()) out += "; ";
        out += format_statement(st, vars);
    }
    if (mutual_) out += out.empty() ? "mutual" : "; mutual";
    return out;
}

bool derived_mutual(int var_count, const std::vector<CIStatement>& statements) {
    if (var_count < 2) return true;
    auto has = [&](const CIStatement& st) {
        return std::find(statements.begin(), statements.end(), st) != statements.end();
    };
    for (int i = 0; i + 1 < var_count; ++i) {
        VarMask tail = 0;
        for (int j = i + 1; j < var_count; ++j) tail |= 1u << j;
        if (!has(make_statement(1u << i, tail, 0))) return false;
    }
    return true;
}

CISet extract_ci_set(const JointTable& table, Semantics sem) {
    std::vector<CIStatement> found;
    for (const auto& st : statement_universe(table.var_count()))
        if (table.is_ci(st.a, st.b, st.s, sem)) found.push_back(st);
    return CISet::with_mutual(table.var_count(), std::move(found), table.mutually_independent());
}

namespace {

struct StatementKey {
    bool operator()(const CIStatement& x, const CIStatement& y) const { return statement_less(x, y); }
};

using StatementSet = std::set<CIStatement, StatementKey>;

// Nonempty proper subsets of mask.
std::vector<VarMask> proper_parts(VarMask mask) {
    std::vector<VarMask> out;
    for (VarMask sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) out.push_back(sub);
    return out;
}

CISet close(const CISet& set, bool with_intersection) {
    StatementSet cur(set.statements().begin(), set.statements().end());
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<CIStatement> add;
        for (const auto& st : cur) {
            // Both orientations of the symmetric pair.
            const std::array<std::pair<VarMask, VarMask>, 2> sides{{{st.a, st.b}, {st.b, st.a}}};
            for (auto [p, q] : sides) {
                for (VarMask q1 : proper_parts(q)) {
                    add.push_back(make_statement(p, q1, st.s));             // decomposition
                    add.push_back(make_statement(p, q1, st.s | (q & ~q1)));  // weak union
                }
            }
        }
        for (const auto& s1 : cur) {
            for (const auto& s2 : cur) {
                const std::array<std::array<VarMask, 3>, 2> o1{{{s1.a, s1.b, s1.s}, {s1.b, s1.a, s1.s}}};
                const std::array<std::array<VarMask, 3>, 2> o2{{{s2.a, s2.b, s2.s}, {s2.b, s2.a, s2.s}}};
                for (const auto& [a1, b1, c1] : o1) {
                    for (const auto& [a2, c2, sc2] : o2) {
                        if (a1 != a2) continue;
                        // contraction: (A,B,S|C) + (A,C,S) => (A,B|C,S)
                        if (c1 == (sc2 | c2) && (sc2 & c2) == 0 && (b1 & c2) == 0)
                            add.push_back(make_statement(a1, b1 | c2, sc2));
                        // intersection: (A,B,S|C) + (A,C,S|B) => (A,B|C,S)
                        if (with_intersection && (c1 & c2) == c2 && (sc2 & b1) == b1 &&
                            (c1 & ~c2) == (sc2 & ~b1))
                            add.push_back(make_statement(a1, b1 | c2, c1 & ~c2));
                    }
                }
            }
        }
        for (const auto& st : add)
            if (cur.insert(st).second) changed = true;
    }
    return CISet::of(set.var_count(), {cur.begin(), cur.end()});
}

}  // namespace

CISet semigraphoid_closure(const CISet& set) {
    return close(set, false);
}

CISet intersection_closure(const CISet& set, bool positive) {
    return close(set, positive);
}

bool check_theorem2(const JointTable& table) {
    if (table.var_count() != 3) throw InputError("theorem 2 check needs exactly 3 variables");
    for (unsigned zv = 0; zv <= 1; ++zv) {
        if (table.prob(Assignment{4u, zv << 2}).is_zero())
            throw InputError("third variable has a zero-mass value");
    }
    const bool lhs = table.is_ci(1u, 2u, 0u, Semantics::kStrict) &&   // X _||_ Y
                     table.is_ci(1u, 4u, 0u, Semantics::kStrict) &&   // X _||_ Z
                     table.is_ci(2u, 4u, 0u, Semantics::kStrict) &&   // Y _||_ Z
                     table.is_ci(1u, 2u, 4u, Semantics::kStrict);     // X _||_ Y | Z
    return lhs == table.mutually_independent();
}

std::string format_goal(const Goal& goal, const VarSet& vars) {
    return goal.is_mutual() ? "mutual" : format_statement(*goal.statement, vars);
}

Goal parse_goal(std::string_view text, const VarSet& vars) {
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos) throw ParseError("empty statement");
    std::string_view trimmed = text.substr(begin, end - begin + 1);
    if (trimmed == "mutual") return Goal::mutual();
    return Goal::of(parse_statement(trimmed, vars));
}

bool goal_holds(const JointTable& table, const Goal& goal, Semantics sem) {
    if (goal.is_mutual()) return table.mutually_independent();
    const auto& st = *goal.statement;
    return table.is_ci(st.a, st.b, st.s, sem);
}

namespace {

bool premises_hold(const JointTable& t, const CISet& premises, Semantics sem) {
    for (const auto& st : premises.statements())
        if (!t.is_ci(st.a, st.b, st.s, sem)) return false;
    return true;
}

}  // namespace

Verdict check_implication(const VarSet& vars, const CISet& premises, const Goal& conclusion,
                          Semantics sem, uint64_t seed, uint64_t budget, int denom_bound) {
    if (premises.var_count() != vars.size())
        throw InputError("premises and variable set disagree on the variable count");
    if (!conclusion.is_mutual() && ((conclusion.statement->a | conclusion.statement->b |
                                     conclusion.statement->s) & ~vars.full_mask()))
        throw InputError("conclusion names a variable outside the set");
    if (budget == 0) throw InputError("zero search budget");

    Verdict verdict;
    auto consider = [&](const JointTable& t) {
        ++verdict.tried;
        if (!premises_hold(t, premises, sem) || goal_holds(t, conclusion, sem)) return false;
        // re-verify against the full extracted set before returning
        CISet ex = extract_ci_set(t, sem);
        for (const auto& st : premises.statements())
            if (!ex.contains(st)) return false;
        if (conclusion.is_mutual() ? ex.mutual() : ex.contains(*conclusion.statement)) return false;
        verdict.counterexample = t;
        return true;
    };

    for_each_grid_table(vars, denom_bound, [&](const JointTable& t) {
        return verdict.tried >= budget || consider(t);
    });
    if (verdict.found() || verdict.tried >= budget) return verdict;

    SplitMix64 rng{seed ^ 0xD1B54A32D192ED03ull};
    while (verdict.tried < budget) {
        JointTable t = random_table(vars, rng, 120, false);
        if (consider(t)) break;
    }
    return verdict;
}

}  // namespace faithcheck
