#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evalcast/time.hpp"

namespace evalcast {

struct Observation {
  Instant time;
  double value = 0.0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Univariate observation series with strictly increasing timestamps and
/// finite values. Rows that were missing in the source are absent; their
/// number is kept for reporting.
class ObservationSeries {
 public:
  ObservationSeries() = default;
  /// Sorts by time; throws DataError on duplicate timestamps or non-finite values.
  explicit ObservationSeries(std::vector<Observation> rows, std::size_t missing_values = 0);

  const std::vector<Observation>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  std::size_t missing_values() const { return missing_values_; }

  /// Value at `t`, if observed.
  std::optional<double> at(Instant t) const;

  /// Minimum positive gap between consecutive timestamps; nullopt for fewer than two rows.
  std::optional<std::chrono::seconds> time_step() const;

  friend bool operator==(const ObservationSeries&, const ObservationSeries&) = default;

 private:
  std::vector<Observation> rows_;
  std::size_t missing_values_ = 0;
};

struct ForecastRow {
  Instant valid_time;
  std::optional<Instant> base_time;
  std::vector<double> members;

  /// Hours from base to valid time; nullopt without a base time.
  std::optional<double> lead_hours() const {
    if (!base_time) return std::nullopt;
    return hours_between(*base_time, valid_time);
  }

  friend bool operator==(const ForecastRow&, const ForecastRow&) = default;
};

/// One model's ensemble forecasts. Rows are kept sorted by (base_time, valid_time).
class EnsembleForecastTable {
 public:
  EnsembleForecastTable() = default;
  /// Validates the table invariants (m >= 2, uniform member count, base
  /// time present on all rows or none, unique (valid, base) pairs,
  /// base <= valid) and sorts the rows. Throws DataError naming the model.
  EnsembleForecastTable(std::string model_name, std::vector<std::string> member_names,
                        std::vector<ForecastRow> rows);

  const std::string& model_name() const { return model_name_; }
  const std::vector<std::string>& member_names() const { return member_names_; }
  const std::vector<ForecastRow>& rows() const { return rows_; }
  std::size_t member_count() const { return member_names_.size(); }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  bool has_base_time() const { return has_base_time_; }

  friend bool operator==(const EnsembleForecastTable&, const EnsembleForecastTable&) = default;

 private:
  std::string model_name_;
  std::vector<std::string> member_names_;
  std::vector<ForecastRow> rows_;
  bool has_base_time_ = false;
};

/// Forecast tables for one or more models (in insertion order) plus the
/// shared observation series.
class EvaluationDataset {
 public:
  EvaluationDataset() = default;
  /// Throws DataError when `forecasts` is empty or model names repeat.
  EvaluationDataset(std::vector<EnsembleForecastTable> forecasts, ObservationSeries observations,
                    std::vector<std::string> dropped_models = {});

  const std::vector<EnsembleForecastTable>& forecasts() const { return forecasts_; }
  const ObservationSeries& observations() const { return observations_; }
  const EnsembleForecastTable* find(std::string_view model) const;

  /// Models removed by a subsetting step because nothing was left of them.
  const std::vector<std::string>& dropped_models() const { return dropped_models_; }

  friend bool operator==(const EvaluationDataset&, const EvaluationDataset&) = default;

 private:
  std::vector<EnsembleForecastTable> forecasts_;
  ObservationSeries observations_;
  std::vector<std::string> dropped_models_;
};

struct LeadTime {
  double hours = 1.0;

  /// Throws ArgumentError for negative or non-finite hours.
  static LeadTime from_hours(double hours);
};

/// Loads `observations.csv` and every other `*.csv` in `dir` (one model per
/// file, named after the file stem; models ordered by file name).
EvaluationDataset load_from_csv_dir(const std::filesystem::path& dir);

ObservationSeries load_observations_csv(const std::filesystem::path& file);
EnsembleForecastTable load_forecast_csv(const std::filesystem::path& file, std::string model_name);

/// Writes the dataset in the same layout `load_from_csv_dir` reads.
void write_to_csv_dir(const EvaluationDataset& dataset, const std::filesystem::path& dir);

std::string observations_to_csv(const ObservationSeries& obs);
std::string forecast_to_csv(const EnsembleForecastTable& table);

struct ObservationStats {
  double mean = 0.0, min = 0.0, max = 0.0;
  std::size_t count = 0;
  std::size_t missing_values = 0;
};

struct ForecastStats {
  std::string model;
  double mean = 0.0, min = 0.0, max = 0.0;
  std::size_t number_of_forecasts = 0;  // rows x members
  std::size_t ensemble_size = 0;
};

struct SummaryReport {
  std::vector<Observation> observation_head;
  ObservationStats observations;
  struct ModelSummary {
    std::vector<std::string> member_names;
    std::vector<ForecastRow> head;
    ForecastStats stats;
  };
  std::vector<ModelSummary> models;
};

SummaryReport summary_stats(const EvaluationDataset& dataset, std::size_t head_rows = 6);

/// Keeps, in every table, only rows whose valid - base time equals the lead
/// time within one second. Tables left empty are dropped and listed in the
/// result's dropped_models(). Throws when a table lacks base times, or when
/// every model would be dropped.
EvaluationDataset make_evaluation_subset(const EvaluationDataset& dataset, LeadTime lead_time);

/// A forecast row joined with its observation. `members` views the table's
/// storage and is valid for the table's lifetime.
struct AlignedRow {
  std::size_t row_index = 0;
  Instant valid_time;
  std::optional<Instant> base_time;
  std::span<const double> members;
  double obs = 0.0;
};

/// Inner join on valid time, in forecast row order.
std::vector<AlignedRow> align(const EnsembleForecastTable& forecast, const ObservationSeries& obs);

/// One row per valid time, keeping the row with the earliest base time.
EnsembleForecastTable dedupe_overlapping(const EnsembleForecastTable& forecast);

}  // namespace evalcast
