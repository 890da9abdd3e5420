#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "evalcast/datagen.hpp"
#include "evalcast/scores.hpp"
#include "support.hpp"

namespace evalcast {
namespace {

// Integral of (F(x) - 1{x >= y})^2 with F the empirical step CDF. The
// integrand is constant between breakpoints, so summing over the breakpoint
// partition is exact.
double crps_by_integration(std::vector<double> xs, double y) {
  std::vector<double> knots = xs;
  knots.push_back(y);
  std::sort(knots.begin(), knots.end());
  const double m = static_cast<double>(xs.size());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    if (b <= a) continue;
    const double mid = 0.5 * (a + b);
    const double f = static_cast<double>(std::count_if(xs.begin(), xs.end(), [&](double x) { return x <= mid; })) / m;
    const double h = mid >= y ? 1.0 : 0.0;
    total += (f - h) * (f - h) * (b - a);
  }
  return total;
}

TEST(Crps, MatchesIntegrationOfStepCdf) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> z(0.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 20;
    std::vector<double> xs(m);
    for (auto& x : xs) x = std::round(z(gen) * 4.0) / 4.0;  // ties on purpose
    const double y = z(gen);
    EXPECT_NEAR(crps_ensemble(xs, y), crps_by_integration(xs, y), 1e-9);
  }
}

TEST(Crps, SingleMemberIsAbsoluteError) {
  const std::vector<double> xs{3.5};
  EXPECT_DOUBLE_EQ(crps_ensemble(xs, 1.0), 2.5);
}

TEST(Crps, FairEstimatorUsesUnbiasedSpread) {
  const std::vector<double> xs{0.0, 1.0, 4.0};
  const double y = 2.0;
  double abs_err = 0.0, pairs = 0.0;
  for (double a : xs) {
    abs_err += std::abs(a - y);
    for (double b : xs) pairs += std::abs(a - b);
  }
  EXPECT_NEAR(crps_ensemble(xs, y, CrpsEstimator::fair), abs_err / 3.0 - pairs / (2.0 * 3.0 * 2.0), 1e-12);
  EXPECT_NEAR(crps_ensemble(xs, y), abs_err / 3.0 - pairs / (2.0 * 9.0), 1e-12);
}

TEST(Crps, RejectsDegenerateInput) {
  EXPECT_THROW(crps_ensemble(std::vector<double>{}, 1.0), ArgumentError);
  EXPECT_THROW(crps_ensemble(std::vector<double>{1.0}, 1.0, CrpsEstimator::fair), ArgumentError);
}

TEST(Crps, PropertyNonNegativeAndZeroForPerfectForecast) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs(2 + trial % 7);
    for (auto& x : xs) x = u(gen);
    EXPECT_GE(crps_ensemble(xs, u(gen)), 0.0);
  }
  const std::vector<double> same(5, 2.25);
  EXPECT_EQ(crps_ensemble(same, 2.25), 0.0);
}

TEST(Logs, MatchesDirectKernelSum) {
  const std::vector<double> xs{1.0, 2.0, 2.5, 4.0, 7.0};
  const double h = 0.8;
  for (double y : {-3.0, 0.0, 2.2, 5.0, 12.0}) {
    double f = 0.0;
    for (double x : xs) f += std::exp(-0.5 * ((y - x) / h) * ((y - x) / h)) / (h * std::sqrt(2.0 * std::numbers::pi));
    f /= static_cast<double>(xs.size());
    EXPECT_NEAR(logs_kde(xs, y, h), -std::log(f), 1e-10);
  }
}

TEST(Logs, StaysFiniteFarInTheTail) {
  const std::vector<double> xs{0.0, 0.1, 0.2};
  EXPECT_TRUE(std::isfinite(logs_kde(xs, 1000.0, 0.05)));
}

TEST(Logs, SilvermanBandwidth) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0, 10.0};
  // sd = sqrt(12.5) = 3.5355, IQR = 4 - 2 = 2, scale = min(sd, 2 / 1.34)
  const double expected = 0.9 * (2.0 / 1.34) * std::pow(5.0, -0.2);
  EXPECT_NEAR(silverman_bandwidth(xs), expected, 1e-12);
}

TEST(Logs, SilvermanFallsBackToSdWhenIqrIsZero) {
  const std::vector<double> xs{5.0, 5.0, 5.0, 5.0, 5.0, 5.0, 9.0};
  const double mean = 39.0 / 7.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / 6.0);
  EXPECT_NEAR(silverman_bandwidth(xs), 0.9 * sd * std::pow(7.0, -0.2), 1e-12);
}

TEST(Logs, ZeroSpreadNeedsExplicitBandwidth) {
  const std::vector<double> xs(4, 1.0);
  EXPECT_THROW(logs_kde(xs, 1.0), ArgumentError);
  EXPECT_NO_THROW(logs_kde(xs, 1.0, 0.5));
  EXPECT_THROW(logs_kde(xs, 1.0, 0.0), ArgumentError);
}

TEST(Metric, ParsesCaseInsensitively) {
  EXPECT_EQ(parse_metric("crps"), MarginalMetric::crps);
  EXPECT_EQ(parse_metric("LogS"), MarginalMetric::logs);
  EXPECT_THROW(parse_metric("rmse"), ArgumentError);
}

std::vector<std::span<const double>> spans(const std::vector<std::vector<double>>& dims) {
  return {dims.begin(), dims.end()};
}

TEST(Variogram, HandExpandedThreeDimensionsTwoMembers) {
  // dims x members
  const std::vector<std::vector<double>> f{{1.0, 2.0}, {4.0, 0.0}, {2.5, 3.0}};
  const std::vector<double> y{0.0, 1.0, 3.0};
  const double p = 0.5;
  auto term = [&](std::size_t i, std::size_t j) {
    const double e = 0.5 * (std::sqrt(std::abs(f[i][0] - f[j][0])) + std::sqrt(std::abs(f[i][1] - f[j][1])));
    const double d = std::sqrt(std::abs(y[i] - y[j])) - e;
    return d * d;
  };
  const double expected = term(0, 1) + term(0, 2) + term(1, 2);
  EXPECT_NEAR(variogram_score(spans(f), y, p), expected, 1e-12);

  const double weighted = term(0, 1) + 0.5 * term(0, 2) + term(1, 2);
  EXPECT_NEAR(variogram_score(spans(f), y, p, VariogramWeighting::inverse_distance), weighted, 1e-12);
}

TEST(Variogram, MeanShiftInvariant) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> z;
  std::vector<std::vector<double>> f(6, std::vector<double>(8));
  std::vector<double> y(6);
  for (auto& d : f)
    for (auto& v : d) v = z(gen);
  for (auto& v : y) v = z(gen);
  const double base = variogram_score(spans(f), y);
  for (auto& d : f)
    for (auto& v : d) v += 3.75;
  EXPECT_NEAR(variogram_score(spans(f), y), base, 1e-9);
}

TEST(Variogram, ZeroWhenMembersEqualObservation) {
  const std::vector<double> y{1.0, 4.0, 2.0, 8.0};
  std::vector<std::vector<double>> f;
  for (double v : y) f.push_back(std::vector<double>(5, v));
  EXPECT_EQ(variogram_score(spans(f), y), 0.0);
}

TEST(Variogram, RejectsBadInput) {
  const std::vector<std::vector<double>> one{{1.0, 2.0}};
  EXPECT_THROW(variogram_score(spans(one), std::vector<double>{1.0}), ArgumentError);
  const std::vector<std::vector<double>> two{{1.0, 2.0}, {1.0, 2.0}};
  EXPECT_THROW(variogram_score(spans(two), std::vector<double>{1.0, 2.0}, 0.0), ArgumentError);
  const std::vector<std::vector<double>> ragged{{1.0, 2.0}, {1.0}};
  EXPECT_THROW(variogram_score(spans(ragged), std::vector<double>{1.0, 2.0}), ArgumentError);
}

// Two models, hourly observations, forecasts issued at 00 and 06 with leads 1..3.
EvaluationDataset small_dataset() {
  using test::at;
  std::vector<Observation> obs;
  for (int h = 0; h < 12; ++h) obs.push_back({at("2024-01-01") + std::chrono::hours(h), 10.0 + h % 4});
  auto table = [&](const std::string& name, double shift) {
    std::vector<ForecastRow> rows;
    for (int base : {0, 6}) {
      for (int lead = 1; lead <= 3; ++lead) {
        const double centre = 10.0 + (base + lead) % 4 + shift;
        rows.push_back({at("2024-01-01") + std::chrono::hours(base + lead), at("2024-01-01") + std::chrono::hours(base),
                        {centre - 1.0, centre, centre + 1.5}});
      }
    }
    return EnsembleForecastTable(name, {"a", "b", "c"}, std::move(rows));
  };
  return EvaluationDataset({table("good", 0.0), table("bad", 2.0)}, ObservationSeries(std::move(obs)));
}

TEST(Marginal, AveragesMatchManualComputation) {
  const auto data = small_dataset();
  MarginalOptions opts;
  opts.include_reference = false;
  const auto rows = evaluate_marginal_distribution(data, opts);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    const auto* t = data.find(r.model);
    double sum = 0.0;
    for (const auto& row : t->rows()) sum += crps_ensemble(row.members, *data.observations().at(row.valid_time));
    EXPECT_NEAR(r.value, sum / 6.0, 1e-12);
    EXPECT_FALSE(r.lead_time_hours);
  }
  EXPECT_LT(rows[0].value, rows[1].value);
}

TEST(Marginal, ByLeadTimeAndReference) {
  const auto data = small_dataset();
  MarginalOptions opts;
  opts.by_lead_time = true;
  const auto rows = evaluate_marginal_distribution(data, opts);
  ASSERT_EQ(rows.size(), 7u);  // 2 models x 3 leads + reference
  EXPECT_EQ(rows.back().model, kReferenceModel);
  EXPECT_FALSE(rows.back().lead_time_hours);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) ASSERT_TRUE(rows[i].lead_time_hours);

  // climatology: every observation scored against the ensemble of all observations
  std::vector<double> all;
  for (const auto& o : data.observations().rows()) all.push_back(o.value);
  double sum = 0.0;
  for (double y : all) sum += crps_ensemble(all, y);
  EXPECT_NEAR(rows.back().value, sum / static_cast<double>(all.size()), 1e-12);
}

TEST(Marginal, LogsReferenceUsesKde) {
  const auto data = small_dataset();
  MarginalOptions opts;
  opts.metric = MarginalMetric::logs;
  const double ref = climatology_score(data.observations(), opts);
  std::vector<double> all;
  for (const auto& o : data.observations().rows()) all.push_back(o.value);
  double sum = 0.0;
  for (double y : all) sum += logs_kde(all, y);
  EXPECT_NEAR(ref, sum / static_cast<double>(all.size()), 1e-12);
}

TEST(Joint, OneRowPerBaseTimeAndAggregate) {
  const auto data = small_dataset();
  JointOptions opts;
  const auto rows = evaluate_joint_distribution(data, opts);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.vars);
    EXPECT_EQ(r.dimension, 3u);
  }
  opts.aggregate = true;
  const auto agg = evaluate_joint_distribution(data, opts);
  ASSERT_EQ(agg.size(), 2u);
  EXPECT_NEAR(*agg[0].vars, 0.5 * (*rows[0].vars + *rows[1].vars), 1e-12);
  EXPECT_FALSE(agg[0].base_time);
}

TEST(Joint, ShortGroupsAreNaAndAggregateWarns) {
  using test::at;
  std::vector<Observation> obs;
  for (int h = 0; h < 8; ++h) obs.push_back({at("2024-01-01") + std::chrono::hours(h), static_cast<double>(h)});
  std::vector<ForecastRow> full, partial;
  for (int lead = 1; lead <= 3; ++lead) {
    full.push_back({at("2024-01-01") + std::chrono::hours(lead), at("2024-01-01"), {1.0, 2.0}});
  }
  partial.push_back({at("2024-01-01") + std::chrono::hours(1), at("2024-01-01"), {1.0, 2.0}});
  partial.push_back({at("2024-01-01") + std::chrono::hours(4), at("2024-01-01") + std::chrono::hours(3), {1.0, 2.0}});
  partial.push_back({at("2024-01-01") + std::chrono::hours(5), at("2024-01-01") + std::chrono::hours(3), {1.0, 2.0}});
  EvaluationDataset data({EnsembleForecastTable("A", {"x", "y"}, full), EnsembleForecastTable("B", {"x", "y"}, partial)},
                         ObservationSeries(obs));
  JointOptions opts;
  const auto rows = evaluate_joint_distribution(data, opts);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].model, "B");
  EXPECT_FALSE(rows[1].vars);  // one row at the first base time
  EXPECT_EQ(rows[2].dimension, 2u);

  std::vector<std::string> warnings;
  opts.aggregate = true;
  opts.on_warning = [&](const std::string& w) { warnings.push_back(w); };
  const auto agg = evaluate_joint_distribution(data, opts);
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_EQ(agg[0].model, "A");
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Joint, RequiresBaseTimeGrouping) {
  JointOptions opts;
  opts.by_base_time = false;
  EXPECT_THROW(evaluate_joint_distribution(small_dataset(), opts), ArgumentError);
}

TEST(Crps, TranslationEquivariantExactly) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<int> k(-400, 400);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs(2 + trial % 15);
    for (auto& x : xs) x = k(gen) / 8.0;
    const double y = k(gen) / 8.0;
    const double c = k(gen);
    std::vector<double> shifted = xs;
    for (auto& x : shifted) x += c;
    EXPECT_EQ(crps_ensemble(shifted, y + c), crps_ensemble(xs, y));
  }
}

TEST(Logs, KernelPeakAndTailGrowth) {
  const std::vector<double> xs(5, 3.0);
  const double h = 0.7;
  EXPECT_NEAR(logs_kde(xs, 3.0, h), -std::log(1.0 / (h * std::sqrt(2.0 * std::numbers::pi))), 1e-12);
  const std::vector<double> spread{1.0, 2.0, 3.0, 4.0};
  double previous = logs_kde(spread, 2.5);
  for (double y = 3.0; y < 40.0; y += 1.0) {
    const double v = logs_kde(spread, y);
    EXPECT_GT(v, previous);
    previous = v;
  }
}

TEST(Variogram, PermutingDimensionsConsistentlyLeavesScore) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> z;
  std::vector<std::vector<double>> f(7, std::vector<double>(5));
  std::vector<double> y(7);
  for (auto& d : f)
    for (auto& v : d) v = z(gen);
  for (auto& v : y) v = z(gen);
  const double base = variogram_score(spans(f), y, 0.5);
  std::vector<std::size_t> perm{3, 0, 6, 1, 5, 2, 4};
  std::vector<std::vector<double>> pf;
  std::vector<double> py;
  for (auto i : perm) {
    pf.push_back(f[i]);
    py.push_back(y[i]);
  }
  EXPECT_NEAR(variogram_score(spans(pf), py, 0.5), base, 1e-12);
}

TEST(Marginal, OneRowPerObservedLeadTime) {
  auto spec = datagen::default_scenario();
  spec.days = 3;
  spec.horizon_hours = 9;
  spec.members = 5;
  const auto data = datagen::generate(spec);
  MarginalOptions opts;
  opts.by_lead_time = true;
  const auto rows = evaluate_marginal_distribution(data, opts);
  EXPECT_EQ(rows.size(), 2u * 9u + 1u);
  for (const auto& r : rows) EXPECT_GE(r.value, 0.0);
}

TEST(Marginal, HalvedNoiseScoresLowerAtEveryLead) {
  auto spec = datagen::default_scenario();
  spec.days = 7;
  spec.horizon_hours = 12;
  spec.models = {{"Model1", 1.0, 0.0, 1.0, datagen::CorrelationFidelity::faithful},
                 {"Model2", 0.5, 0.0, 1.0, datagen::CorrelationFidelity::faithful}};
  const auto data = datagen::generate(spec);
  MarginalOptions opts;
  opts.by_lead_time = true;
  opts.include_reference = false;
  const auto rows = evaluate_marginal_distribution(data, opts);
  ASSERT_EQ(rows.size(), 24u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(rows[i].lead_time_hours, rows[i + 12].lead_time_hours);
    EXPECT_LT(rows[i + 12].value, rows[i].value) << "lead " << *rows[i].lead_time_hours;
  }
}

TEST(Joint, ScoredRowsHaveDimensionAtLeastTwo) {
  auto spec = datagen::default_scenario();
  spec.days = 3;
  spec.horizon_hours = 6;
  spec.members = 5;
  JointOptions opts;
  for (const auto& r : evaluate_joint_distribution(datagen::generate(spec), opts)) {
    EXPECT_EQ(r.vars.has_value(), r.dimension.has_value());
    if (r.dimension) {
      EXPECT_GE(*r.dimension, 2u);
    }
  }
}

}  // namespace
}  // namespace evalcast
