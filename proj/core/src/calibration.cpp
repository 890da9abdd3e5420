#include "evalcast/calibration.hpp"

#include <cmath>
#include <random>

#include "evalcast/error.hpp"
#include "evalcast/random.hpp"

namespace evalcast {

double transformed_rank(std::span<const double> members, double y, double u) {
  std::size_t below = 0;
  std::size_t ties = 0;
  for (double x : members) {
    if (x < y) {
      ++below;
    } else if (x == y) {
      ++ties;
    }
  }
  // rank = below + 1 + floor(u (ties + 1)) and (rank - 1 + U)/(m + 1) with U
  // the fractional part collapse to (below + u (ties + 1)) / (m + 1).
  const double m1 = static_cast<double>(members.size() + 1);
  const double v = (static_cast<double>(below) + u * static_cast<double>(ties + 1)) / m1;
  const double upper = static_cast<double>(below + ties + 1) / m1;
  return v < upper ? v : std::nextafter(upper, 0.0);
}

TransformedRankSample transformed_ranks(const EnsembleForecastTable& forecast, const ObservationSeries& obs,
                                        std::optional<std::uint64_t> seed, std::uint64_t stream) {
  const auto aligned = align(forecast, obs);
  if (aligned.empty()) {
    throw DataError("model '" + forecast.model_name() + "': no forecasts align with observations");
  }
  TransformedRankSample sample;
  sample.model = forecast.model_name();
  sample.seed = seed ? *seed : (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  const std::uint64_t key = rng::derive(sample.seed, stream);
  sample.values.reserve(aligned.size());
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    const double u = rng::to_unit(rng::mix64(key ^ rng::mix64(i)));
    sample.values.push_back(transformed_rank(aligned[i].members, aligned[i].obs, u));
  }
  return sample;
}

RankHistogram rank_histogram(const TransformedRankSample& sample, std::size_t bins) {
  if (bins < 2) throw ArgumentError("rank histogram needs at least 2 bins");
  if (sample.values.empty()) throw ArgumentError("rank histogram of an empty sample");
  RankHistogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.bin_edges[i] = static_cast<double>(i) / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  for (double v : sample.values) {
    if (!(v >= 0.0 && v < 1.0)) throw ArgumentError("transformed rank outside [0, 1)");
    const auto b = std::min(static_cast<std::size_t>(v * static_cast<double>(bins)), bins - 1);
    ++h.counts[b];
  }
  h.total = sample.values.size();
  return h;
}

PerModel<RankHistogram> rank_histogram_list(const EvaluationDataset& dataset, std::size_t bins,
                                            std::optional<std::uint64_t> seed) {
  const std::uint64_t s =
      seed ? *seed : (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  PerModel<RankHistogram> out;
  const auto& tables = dataset.forecasts();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    try {
      out.push_back({tables[i].model_name(),
                     rank_histogram(transformed_ranks(tables[i], dataset.observations(), s, i), bins)});
    } catch (const ArgumentError& e) {
      throw ArgumentError("model '" + tables[i].model_name() + "': " + e.what());
    }
  }
  return out;
}

}  // namespace evalcast
