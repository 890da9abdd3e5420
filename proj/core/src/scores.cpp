#include "evalcast/scores.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "evalcast/error.hpp"
#include "evalcast/stats.hpp"

namespace evalcast {

namespace {

// sum_{i,j} |x_i - x_j| for ascending x.
double pairwise_abs_sum_sorted(std::span<const double> sorted) {
  const auto m = static_cast<double>(sorted.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    acc += (2.0 * static_cast<double>(i) - m + 1.0) * sorted[i];
  }
  return 2.0 * acc;
}

double spread_normaliser(std::size_t m, CrpsEstimator estimator) {
  const auto md = static_cast<double>(m);
  if (estimator == CrpsEstimator::fair) {
    if (m < 2) throw ArgumentError("fair CRPS needs at least 2 members");
    return 2.0 * md * (md - 1.0);
  }
  return 2.0 * md * md;
}

// -log of a Gaussian KDE at y, computed with log-sum-exp.
double kde_neg_log_density(std::span<const double> members, double y, double h) {
  double max_term = -std::numeric_limits<double>::infinity();
  for (double x : members) {
    const double z = (y - x) / h;
    max_term = std::max(max_term, -0.5 * z * z);
  }
  double acc = 0.0;
  for (double x : members) {
    const double z = (y - x) / h;
    acc += std::exp(-0.5 * z * z - max_term);
  }
  const double log_f = max_term + std::log(acc) - std::log(static_cast<double>(members.size()) * h) -
                       0.5 * std::log(2.0 * std::numbers::pi);
  return -log_f;
}

}  // namespace

double crps_ensemble(std::span<const double> members, double y, CrpsEstimator estimator) {
  if (members.empty()) throw ArgumentError("CRPS of an empty ensemble");
  std::vector<double> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  double abs_err = 0.0;
  for (double x : sorted) abs_err += std::abs(x - y);
  const double m = static_cast<double>(sorted.size());
  const double value = abs_err / m - pairwise_abs_sum_sorted(sorted) / spread_normaliser(sorted.size(), estimator);
  // The empirical form is non-negative; rounding can leave a tiny negative.
  return estimator == CrpsEstimator::empirical ? std::max(value, 0.0) : value;
}

double silverman_bandwidth(std::span<const double> members) {
  if (members.size() < 2) throw ArgumentError("bandwidth selection needs at least 2 members");
  std::vector<double> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : sorted) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double scale = std::min(sd, iqr / 1.34);
  if (!(scale > 0.0)) scale = sd;
  if (!(scale > 0.0)) {
    throw ArgumentError("ensemble has zero spread; pass an explicit KDE bandwidth for LogS");
  }
  return 0.9 * scale * std::pow(n, -0.2);
}

double logs_kde(std::span<const double> members, double y, std::optional<double> bandwidth) {
  if (members.empty()) throw ArgumentError("LogS of an empty ensemble");
  double h = 0.0;
  if (bandwidth) {
    if (!(*bandwidth > 0.0) || !std::isfinite(*bandwidth)) throw ArgumentError("KDE bandwidth must be positive");
    h = *bandwidth;
  } else {
    h = silverman_bandwidth(members);
  }
  return kde_neg_log_density(members, y, h);
}

double variogram_weight(VariogramWeighting scheme, std::size_t i, std::size_t j) {
  if (scheme == VariogramWeighting::uniform) return 1.0;
  const std::size_t dist = i > j ? i - j : j - i;
  return 1.0 / static_cast<double>(dist);
}

double variogram_score(std::span<const std::span<const double>> forecast, std::span<const double> obs, double p,
                       VariogramWeighting weights) {
  const std::size_t d = forecast.size();
  if (d < 2) throw ArgumentError("variogram score needs at least 2 dimensions");
  if (obs.size() != d) throw ArgumentError("variogram score: forecast and observation dimensions differ");
  if (!(p > 0.0) || !std::isfinite(p)) throw ArgumentError("variogram order p must be positive");
  const std::size_t m = forecast[0].size();
  if (m == 0) throw ArgumentError("variogram score of an empty ensemble");
  for (const auto& dim : forecast) {
    if (dim.size() != m) throw ArgumentError("variogram score: ragged member counts");
  }

  double score = 0.0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      // Running mean: exact when every member gives the same term.
      double expected = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        expected += (std::pow(std::abs(forecast[i][k] - forecast[j][k]), p) - expected) / static_cast<double>(k + 1);
      }
      const double diff = std::pow(std::abs(obs[i] - obs[j]), p) - expected;
      score += variogram_weight(weights, i, j) * diff * diff;
    }
  }
  return score;
}

std::string_view metric_name(MarginalMetric metric) { return metric == MarginalMetric::crps ? "CRPS" : "LogS"; }

MarginalMetric parse_metric(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "crps") return MarginalMetric::crps;
  if (lower == "logs") return MarginalMetric::logs;
  throw ArgumentError("unknown metric '" + std::string(name) + "' (expected CRPS or LogS)");
}

double climatology_score(const ObservationSeries& obs, const MarginalOptions& options) {
  if (obs.size() < 2) throw DataError("climatology reference needs at least 2 observations");
  std::vector<double> sorted;
  sorted.reserve(obs.size());
  for (const auto& o : obs.rows()) sorted.push_back(o.value);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  double total = 0.0;
  if (options.metric == MarginalMetric::crps) {
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];
    const double spread = pairwise_abs_sum_sorted(sorted) / spread_normaliser(n, options.crps_estimator);
    const double nd = static_cast<double>(n);
    for (const auto& o : obs.rows()) {
      const double y = o.value;
      const auto below = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), y) - sorted.begin());
      const double kb = static_cast<double>(below);
      const double abs_sum = (y * kb - prefix[below]) + ((prefix[n] - prefix[below]) - y * (nd - kb));
      total += abs_sum / nd - spread;
    }
  } else {
    const double h = options.bandwidth ? *options.bandwidth : silverman_bandwidth(sorted);
    for (const auto& o : obs.rows()) total += logs_kde(sorted, o.value, h);
  }
  return total / static_cast<double>(n);
}

std::vector<MarginalScoreRow> evaluate_marginal_distribution(const EvaluationDataset& dataset,
                                                             const MarginalOptions& options) {
  std::vector<MarginalScoreRow> out;
  for (const auto& table : dataset.forecasts()) {
    if (options.by_lead_time && !table.has_base_time()) {
      throw DataError("model '" + table.model_name() + "': scoring by lead time requires a BaseTime column");
    }
    const auto aligned = align(table, dataset.observations());
    if (aligned.empty()) throw DataError("model '" + table.model_name() + "': no forecasts align with observations");

    // Keyed by lead time in whole seconds; a single key when not split.
    std::map<std::int64_t, std::pair<double, std::size_t>> groups;
    for (const auto& row : aligned) {
      double s = 0.0;
      try {
        s = options.metric == MarginalMetric::crps ? crps_ensemble(row.members, row.obs, options.crps_estimator)
                                                   : logs_kde(row.members, row.obs, options.bandwidth);
      } catch (const ArgumentError& e) {
        throw ArgumentError("model '" + table.model_name() + "' at " + format_instant(row.valid_time) + ": " +
                            e.what());
      }
      const std::int64_t key = options.by_lead_time ? (row.valid_time - *row.base_time).count() : 0;
      auto& g = groups[key];
      g.first += s;
      g.second += 1;
    }
    for (const auto& [key, acc] : groups) {
      MarginalScoreRow r;
      r.model = table.model_name();
      if (options.by_lead_time) r.lead_time_hours = static_cast<double>(key) / 3600.0;
      r.metric = options.metric;
      r.value = acc.first / static_cast<double>(acc.second);
      out.push_back(std::move(r));
    }
  }
  if (options.include_reference) {
    out.push_back({std::string(kReferenceModel), std::nullopt, options.metric,
                   climatology_score(dataset.observations(), options)});
  }
  return out;
}

std::vector<JointScoreRow> keep_maximal_dimension(const std::vector<JointScoreRow>& rows) {
  std::size_t max_dim = 0;
  for (const auto& r : rows) {
    if (r.dimension) max_dim = std::max(max_dim, *r.dimension);
  }
  std::vector<JointScoreRow> out;
  for (const auto& r : rows) {
    if (r.vars && r.dimension == max_dim) out.push_back(r);
  }
  return out;
}

std::vector<JointScoreRow> evaluate_joint_distribution(const EvaluationDataset& dataset, const JointOptions& options) {
  if (!options.by_base_time) {
    throw ArgumentError("joint evaluation groups forecasts by base time; by_base_time must be set");
  }
  std::vector<JointScoreRow> rows;
  for (const auto& table : dataset.forecasts()) {
    if (!table.has_base_time()) {
      throw DataError("model '" + table.model_name() + "': joint evaluation requires a BaseTime column");
    }
    const auto aligned = align(table, dataset.observations());

    // Every base time in the table gets a row, scored or not.
    std::map<Instant, std::vector<const AlignedRow*>> groups;
    for (const auto& row : table.rows()) groups[*row.base_time];
    for (const auto& row : aligned) groups[*row.base_time].push_back(&row);

    for (auto& [base, members] : groups) {
      JointScoreRow r{table.model_name(), base, std::nullopt, std::nullopt};
      if (members.size() >= 2) {
        std::sort(members.begin(), members.end(),
                  [](const AlignedRow* a, const AlignedRow* b) { return a->valid_time < b->valid_time; });
        std::vector<std::span<const double>> forecast;
        std::vector<double> obs;
        for (const auto* a : members) {
          forecast.push_back(a->members);
          obs.push_back(a->obs);
        }
        r.vars = variogram_score(forecast, obs, options.p, options.weights);
        r.dimension = members.size();
      }
      rows.push_back(std::move(r));
    }
  }
  if (rows.empty()) throw DataError("joint evaluation: no base times in any model");
  if (!options.aggregate) return rows;

  const auto maximal = keep_maximal_dimension(rows);
  std::vector<JointScoreRow> aggregated;
  for (const auto& table : dataset.forecasts()) {
    double sum = 0.0;
    std::size_t count = 0;
    std::size_t dim = 0;
    for (const auto& r : maximal) {
      if (r.model != table.model_name()) continue;
      sum += *r.vars;
      dim = *r.dimension;
      ++count;
    }
    if (count == 0) {
      if (options.on_warning) {
        options.on_warning("model '" + table.model_name() + "' has no forecasts of maximal dimension; omitted");
      }
      continue;
    }
    aggregated.push_back({table.model_name(), std::nullopt, sum / static_cast<double>(count), dim});
  }
  return aggregated;
}

}  // namespace evalcast
