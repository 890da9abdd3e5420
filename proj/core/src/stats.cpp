#include "evalcast/stats.hpp"

#include <algorithm>
#include <cmath>

#include "evalcast/error.hpp"

namespace evalcast {

double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw ArgumentError("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> quantiles(std::span<const double> values, std::span<const double> probs) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) out.push_back(quantile_sorted(sorted, p));
  return out;
}

}  // namespace evalcast
