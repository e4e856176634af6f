#pragma once

#include <functional>

#include "faithcheck/joint_table.hpp"

namespace faithcheck {

/// Visits every table over `vars` whose masses share a common denominator D,
/// for D = 1..denom_bound, in a fixed order: D ascending, numerator vectors
/// in ascending lexicographic order. The visitor returns true to stop early;
/// the function returns true iff it was stopped.
///
/// The grid for n=3 and denom_bound=8 has 12869 tables, so exhaustive scans
/// stay cheap while covering every distribution the bundled examples need.
bool for_each_grid_table(const VarSet& vars, int denom_bound,
                         const std::function<bool(const JointTable&)>& visit);

}  // namespace faithcheck
