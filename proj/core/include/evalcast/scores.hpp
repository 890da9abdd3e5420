#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evalcast/dataset.hpp"

namespace evalcast {

using WarningSink = std::function<void(const std::string&)>;

enum class CrpsEstimator {
  empirical,  // exact CRPS of the ensemble's empirical step CDF
  fair,       // unbiased for the underlying distribution (m(m-1) normaliser)
};

/// CRPS of an ensemble against observation `y`:
///   (1/m) sum|x_i - y| - 1/(2 m^2) sum_ij |x_i - x_j|
/// Computed in O(m log m) from the sorted members. The fair variant needs
/// m >= 2. Throws ArgumentError on an empty ensemble.
double crps_ensemble(std::span<const double> members, double y,
                     CrpsEstimator estimator = CrpsEstimator::empirical);

/// Silverman's rule of thumb, 0.9 * min(sd, IQR/1.34) * m^(-1/5), with the
/// sample standard deviation and type-7 quartiles. When the IQR is zero the
/// standard deviation alone is used. Throws ArgumentError when all members
/// coincide (or m < 2).
double silverman_bandwidth(std::span<const double> members);

/// Logarithmic score -log f(y) of a Gaussian kernel density over the members.
/// Evaluated in log space, so far-tail observations give large finite values.
double logs_kde(std::span<const double> members, double y, std::optional<double> bandwidth = std::nullopt);

enum class VariogramWeighting {
  uniform,           // w_ij = 1
  inverse_distance,  // w_ij = 1/|i-j|
};

double variogram_weight(VariogramWeighting scheme, std::size_t i, std::size_t j);

/// Variogram score of order p for a d-dimensional ensemble forecast.
/// `forecast[i]` holds the m member values of dimension i, `obs[i]` the
/// observed value. Returns
///   sum_{i<j} w_ij (|y_i - y_j|^p - (1/m) sum_k |x_ik - x_jk|^p)^2.
/// Throws ArgumentError for d < 2, p <= 0 or ragged member counts.
double variogram_score(std::span<const std::span<const double>> forecast, std::span<const double> obs,
                       double p = 0.5, VariogramWeighting weights = VariogramWeighting::uniform);

enum class MarginalMetric { crps, logs };

std::string_view metric_name(MarginalMetric metric);
/// Accepts "CRPS" / "LogS" (case-insensitive).
MarginalMetric parse_metric(std::string_view name);

struct MarginalScoreRow {
  std::string model;
  std::optional<double> lead_time_hours;
  MarginalMetric metric = MarginalMetric::crps;
  double value = 0.0;
};

inline constexpr std::string_view kReferenceModel = "reference";

struct MarginalOptions {
  MarginalMetric metric = MarginalMetric::crps;
  bool by_lead_time = false;
  bool include_reference = true;
  CrpsEstimator crps_estimator = CrpsEstimator::empirical;
  std::optional<double> bandwidth;  // LogS only; Silverman when absent
};

/// Mean score per model (or per model and lead time) over all forecast rows
/// that have an observation. With include_reference, a final `reference`
/// row holds the climatological score: the ensemble of all observations is
/// used as the forecast at every observation time.
std::vector<MarginalScoreRow> evaluate_marginal_distribution(const EvaluationDataset& dataset,
                                                             const MarginalOptions& options = {});

/// Mean climatological score described above.
double climatology_score(const ObservationSeries& obs, const MarginalOptions& options);

struct JointScoreRow {
  std::string model;
  std::optional<Instant> base_time;  // absent on aggregated rows
  std::optional<double> vars;
  std::optional<std::size_t> dimension;
};

struct JointOptions {
  bool by_base_time = true;
  bool aggregate = false;
  double p = 0.5;
  VariogramWeighting weights = VariogramWeighting::uniform;
  WarningSink on_warning;
};

/// One variogram score per (model, base time) over the forecast rows that
/// align with observations, dimensions ordered by valid time. Base times
/// with fewer than two aligned rows give rows without a score. With
/// aggregate, only forecasts of the overall maximal dimension are kept and
/// averaged per model.
std::vector<JointScoreRow> evaluate_joint_distribution(const EvaluationDataset& dataset,
                                                       const JointOptions& options = {});

/// Rows whose dimension equals the largest dimension present.
std::vector<JointScoreRow> keep_maximal_dimension(const std::vector<JointScoreRow>& rows);

}  // namespace evalcast
