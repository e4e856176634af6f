#include "faithcheck/joint_table.hpp"

#include <sstream>

#include "faithcheck/errors.hpp"

namespace faithcheck {

std::string_view semantics_name(Semantics sem) {
    return sem == Semantics::kStrict ? "strict" : "standard";
}

Semantics parse_semantics(std::string_view text) {
    if (text == "strict") return Semantics::kStrict;
    if (text == "standard") return Semantics::kStandard;
    throw ParseError("unknown semantics '" + std::string(text) + "' (expected strict or standard)");
}

JointTable::JointTable(VarSet vars, std::vector<Rational> mass)
    : vars_(std::move(vars)), mass_(std::move(mass)) {
    const size_t cells = size_t{1} << vars_.size();
    if (mass_.size() != cells)
        throw InputError("expected " + std::to_string(cells) + " cell masses, got " + std::to_string(mass_.size()));
    Rational sum;
    for (const auto& m : mass_) sum += m;  // Rational construction already rejects negatives
    if (sum != Rational(1))
        throw InputError("mass sum " + sum.str() + " != 1");
    build_marginals();
}

void JointTable::build_marginals() {
    const int n = vars_.size();
    pow3_.resize(static_cast<size_t>(n) + 1);
    pow3_[0] = 1;
    for (int i = 0; i < n; ++i) pow3_[static_cast<size_t>(i) + 1] = pow3_[static_cast<size_t>(i)] * 3;
    marginal_.assign(pow3_[static_cast<size_t>(n)], Rational());

    // Codes whose digits are all 0/1 are cells; a digit 2 sums the variable
    // out. A code with digit 2 at v refers to two strictly smaller codes, so
    // one ascending pass fills the whole table.
    for (unsigned code = 0; code < marginal_.size(); ++code) {
        int free_var = -1;
        unsigned rem = code, cell = 0;
        for (int v = 0; v < n; ++v) {
            unsigned d = rem % 3;
            rem /= 3;
            if (d == 2) {
                free_var = v;
                break;
            }
            cell |= d << v;
        }
        if (free_var < 0) {
            marginal_[code] = mass_[cell];
        } else {
            unsigned base = code - 2 * pow3_[static_cast<size_t>(free_var)];
            marginal_[code] = marginal_[base] + marginal_[base + pow3_[static_cast<size_t>(free_var)]];
        }
    }
}

const Rational& JointTable::prob(Assignment a) const {
    if ((a.vars & ~vars_.full_mask()) != 0)
        throw InputError("assignment names a variable outside the table");
    unsigned code = 0;
    for (int v = 0; v < vars_.size(); ++v) {
        unsigned d = ((a.vars >> v) & 1u) ? ((a.values >> v) & 1u) : 2u;
        code += d * pow3_[static_cast<size_t>(v)];
    }
    return marginal_[code];
}

namespace {

// Iterates the assignments of `mask`, exposing each as (vars, values).
struct SubAssignments {
    VarMask mask;
    struct Iter {
        VarMask mask;
        unsigned packed;  // 0 .. 2^popcount(mask)
        Assignment operator*() const {
            Assignment a{mask, 0};
            unsigned p = packed;
            for (VarMask m = mask; m != 0; m &= m - 1) {
                if (p & 1u) a.values |= m & ~(m - 1);
                p >>= 1;
            }
            return a;
        }
        bool operator!=(const Iter& o) const { return packed != o.packed; }
        Iter& operator++() { ++packed; return *this; }
    };
    Iter begin() const { return {mask, 0}; }
    Iter end() const { return {mask, 1u << mask_size(mask)}; }
};

Assignment merge(Assignment a, Assignment b) {
    return {a.vars | b.vars, a.values | b.values};
}

}  // namespace

bool JointTable::is_ci(VarMask a, VarMask b, VarMask s, Semantics sem) const {
    const VarMask full = vars_.full_mask();
    if ((a | b | s) & ~full) throw InputError("statement names a variable outside the table");
    if (a == 0 || b == 0) throw InputError("independence statement with an empty side");
    if ((a & b) || (a & s) || (b & s)) throw InputError("overlapping sets in independence statement");

    for (Assignment sa : SubAssignments{s}) {
        const Rational& ps = prob(sa);
        if (ps.is_zero()) {
            // Every product in the cross-multiplied identity vanishes here;
            // under strict semantics a zero-mass conditioning value defeats
            // the statement outright.
            if (sem == Semantics::kStrict && s != 0) return false;
            continue;
        }
        for (Assignment aa : SubAssignments{a}) {
            const Rational& pas = prob(merge(aa, sa));
            for (Assignment ba : SubAssignments{b}) {
                if (prob(merge(merge(aa, ba), sa)) * ps != pas * prob(merge(ba, sa))) return false;
            }
        }
    }
    return true;
}

bool JointTable::mutually_independent() const {
    const int n = vars_.size();
    for (unsigned idx = 0; idx < mass_.size(); ++idx) {
        Rational prod(1);
        for (int v = 0; v < n; ++v)
            prod *= prob(Assignment{1u << v, idx & (1u << v)});
        if (mass_[idx] != prod) return false;
    }
    return true;
}

bool JointTable::strictly_positive() const {
    for (const auto& m : mass_)
        if (m.is_zero()) return false;
    return true;
}

JointTable JointTable::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<VarSet> vars;
    std::vector<Rational> mass;
    std::vector<bool> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!vars) {
            if (tok[0] != "vars")
                throw ParseError("line " + std::to_string(lineno) + ": missing vars line");
            vars = VarSet::of({tok.begin() + 1, tok.end()});
            mass.assign(size_t{1} << vars->size(), Rational());
            seen.assign(mass.size(), false);
            continue;
        }
        if (tok[0] != "p")
            throw ParseError("line " + std::to_string(lineno) + ": expected a p line");
        const int n = vars->size();
        if (static_cast<int>(tok.size()) != n + 2)
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
                             " bits and one rational");
        unsigned idx = 0;
        for (int v = 0; v < n; ++v) {
            const std::string& bit = tok[static_cast<size_t>(v) + 1];
            if (bit != "0" && bit != "1")
                throw ParseError("line " + std::to_string(lineno) + ": bad bit '" + bit + "'");
            if (bit == "1") idx |= 1u << v;
        }
        if (seen[idx])
            throw InputError("line " + std::to_string(lineno) + ": duplicate cell");
        seen[idx] = true;
        mass[idx] = Rational::parse(tok.back());
    }
    if (!vars) throw ParseError("missing vars line");
    return JointTable(std::move(*vars), std::move(mass));
}

std::string JointTable::serialize() const {
    std::string out = "vars";
    for (int v = 0; v < vars_.size(); ++v) out += " " + vars_.name(v);
    out += "\n";
    for (unsigned idx = 0; idx < mass_.size(); ++idx) {
        if (mass_[idx].is_zero()) continue;
        out += "p";
        for (int v = 0; v < vars_.size(); ++v) out += ((idx >> v) & 1u) ? " 1" : " 0";
        out += " " + mass_[idx].str() + "\n";
    }
    return out;
}

std::string JointTable::cells_str() const {
    std::string out;
    for (unsigned idx = 0; idx < mass_.size(); ++idx) {
        if (idx) out += ' ';
        out += mass_[idx].str();
    }
    return out;
}

uint64_t JointTable::content_hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : serialize()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace faithcheck
