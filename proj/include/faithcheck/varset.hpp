#pragma once

#include <bit>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace faithcheck {

/// Subset of variables as a bitmask; variable i contributes bit i.
using VarMask = unsigned;

inline int mask_size(VarMask m) { return std::popcount(m); }

/// Lexicographic comparison of the sorted index sequences two masks denote,
/// e.g. {0,2} < {1} and {0} < {0,1}.
inline bool lexset_less(VarMask a, VarMask b) {
    while (a != 0 && b != 0) {
        int ia = std::countr_zero(a), ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

/// Ordered set of distinct variable names; fixes the index <-> name bijection
/// used by masks, tables and graphs. Between 1 and 6 variables.
class VarSet {
public:
    static constexpr int kMaxVars = 6;

    /// Validates count, uniqueness and the [A-Za-z][A-Za-z0-9_]* shape.
    static VarSet of(std::vector<std::string> names);

    /// The conventional three-variable set X, Y, Z.
    static VarSet xyz();

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
    std::optional<int> index_of(std::string_view name) const;
    VarMask full_mask() const { return (1u << names_.size()) - 1; }

    /// Comma-joined names of a mask in index order, e.g. "X,Z".
    std::string mask_names(VarMask m) const;

    bool operator==(const VarSet&) const = default;

private:
    std::vector<std::string> names_;
};

/// Partial 0/1 assignment: `values` bits are meaningful only where `vars` is set.
struct Assignment {
    VarMask vars = 0;
    unsigned values = 0;
};

}  // namespace faithcheck
