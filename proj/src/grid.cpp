#include "faithcheck/grid.hpp"

#include <vector>

#include "faithcheck/errors.hpp"

namespace faithcheck {

namespace {

bool compose(const VarSet& vars, std::vector<long>& counts, size_t pos, long remaining, long denom,
             const std::function<bool(const JointTable&)>& visit) {
    if (pos + 1 == counts.size()) {
        counts[pos] = remaining;
        std::vector<Rational> mass;
        mass.reserve(counts.size());
        for (long k : counts) mass.emplace_back(k, denom);
        return visit(JointTable(vars, std::move(mass)));
    }
    for (long k = 0; k <= remaining; ++k) {
        counts[pos] = k;
        if (compose(vars, counts, pos + 1, remaining - k, denom, visit)) return true;
    }
    return false;
}

}  // namespace

bool for_each_grid_table(const VarSet& vars, int denom_bound,
                         const std::function<bool(const JointTable&)>& visit) {
    if (denom_bound < 1) throw InputError("denominator bound must be at least 1");
    std::vector<long> counts(size_t{1} << vars.size(), 0);
    for (long d = 1; d <= denom_bound; ++d)
        if (compose(vars, counts, 0, d, d, visit)) return true;
    return false;
}

}  // namespace faithcheck
