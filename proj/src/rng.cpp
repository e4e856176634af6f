#include "faithcheck/rng.hpp"

#include <algorithm>

#include "faithcheck/errors.hpp"

namespace faithcheck {

JointTable random_table(const VarSet& vars, SplitMix64& rng, int denom_max, bool strictly_positive) {
    const unsigned cells = 1u << vars.size();
    if (denom_max < 1 || (strictly_positive && denom_max < static_cast<int>(cells)))
        throw InputError("denominator bound too small for a random table");
    const uint64_t dmin = strictly_positive ? cells : 1;
    const uint64_t d = dmin + rng.below(static_cast<uint64_t>(denom_max) - dmin + 1);
    const uint64_t spread = strictly_positive ? d - cells : d;

    // cuts of [0, spread] split the denominator into `cells` parts
    std::vector<uint64_t> cuts(cells + 1, 0);
    cuts[cells] = spread;
    for (unsigned i = 1; i < cells; ++i) cuts[i] = rng.below(spread + 1);
    std::sort(cuts.begin(), cuts.end());

    std::vector<Rational> mass;
    mass.reserve(cells);
    for (unsigned i = 0; i < cells; ++i) {
        uint64_t k = cuts[i + 1] - cuts[i] + (strictly_positive ? 1 : 0);
        mass.emplace_back(static_cast<long>(k), static_cast<long>(d));
    }
    return JointTable(vars, std::move(mass));
}

}  // namespace faithcheck
