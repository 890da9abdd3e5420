#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evalcast/dataset.hpp"
#include "evalcast/per_model.hpp"

namespace evalcast {

struct TransformedRankSample {
  std::string model;
  std::vector<double> values;  // each in [0, 1)
  std::uint64_t seed = 0;      // seed actually used
};

struct RankHistogram {
  std::vector<double> bin_edges;  // bins + 1 increasing edges from 0 to 1
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  std::size_t bins() const { return counts.size(); }
};

/// Transformed observation rank (rank - 1 + U) / (m + 1) for every forecast
/// row with an observation. Ties between the observation and members place
/// the observation uniformly within the tied block; the same uniform draw
/// serves both purposes, so each row consumes exactly one value of the
/// (seed, stream, row) counter stream. Without a seed one is drawn from
/// std::random_device and recorded in the sample.
TransformedRankSample transformed_ranks(const EnsembleForecastTable& forecast, const ObservationSeries& obs,
                                        std::optional<std::uint64_t> seed = std::nullopt,
                                        std::uint64_t stream = 0);

/// Transform of one observation against its ensemble given a uniform draw u in [0, 1).
double transformed_rank(std::span<const double> members, double y, double u);

/// Equal-width histogram over [0, 1]. Throws for bins < 2 or an empty sample.
RankHistogram rank_histogram(const TransformedRankSample& sample, std::size_t bins = 10);

/// Per-model histograms. Model i draws from RNG stream i of the shared
/// seed, so results do not depend on evaluation order.
PerModel<RankHistogram> rank_histogram_list(const EvaluationDataset& dataset, std::size_t bins = 10,
                                            std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace evalcast
