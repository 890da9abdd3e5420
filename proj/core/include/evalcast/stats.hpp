#pragma once

#include <span>
#include <vector>

namespace evalcast {

/// Type-7 (linear interpolation) quantile of ascending data.
double quantile_sorted(std::span<const double> sorted, double prob);

/// Type-7 quantiles of unsorted data, one per requested probability.
std::vector<double> quantiles(std::span<const double> values, std::span<const double> probs);

}  // namespace evalcast
