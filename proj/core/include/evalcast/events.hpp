#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evalcast/dataset.hpp"
#include "evalcast/per_model.hpp"

namespace evalcast {

// ---------------------------------------------------------------------------
// Event definitions and detection

enum class EventKind { range, change };

/// A range event (value inside the open interval (lo, hi) at least once in
/// the window) or a change event (signed change of at least |c| between
/// any ordered pair of points in the window). The window counts
/// consecutive data points.
class EventSpec {
 public:
  static EventSpec range(double lo, double hi, std::size_t window);
  static EventSpec change(double c, std::size_t window);

  EventKind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double change_amount() const { return change_; }
  std::size_t window() const { return window_; }

 private:
  EventSpec() = default;
  EventKind kind_ = EventKind::range;
  double lo_ = 0.0, hi_ = 0.0, change_ = 0.0;
  std::size_t window_ = 1;
};

using Flags = std::vector<std::uint8_t>;

/// Element i is 1 iff some series[i .. i+W-1] lies in (lo, hi). Length is
/// n - W + 1. Throws ArgumentError when n < W, W == 0 or lo >= hi.
Flags detect_range_event(std::span<const double> series, double lo, double hi, std::size_t window);

/// Element i is 1 iff there are j < k in [i, i+W-1] with
/// series[k] - series[j] >= c (c > 0) or <= c (c < 0). Running-extremum
/// scan, O(n W).
Flags detect_change_event(std::span<const double> series, double c, std::size_t window);

/// Same, writing into `out`, which must hold n - W + 1 flags.
void detect_change_event(std::span<const double> series, double c, std::size_t window, std::span<std::uint8_t> out);

Flags detect_event(std::span<const double> series, const EventSpec& spec);

struct EventRow {
  Instant time;  // window start
  std::optional<Instant> base_time;
  std::uint8_t obs = 0;
  std::vector<std::uint8_t> member_flags;

  std::size_t member_count() const;  // number of members flagging the event

  friend bool operator==(const EventRow&, const EventRow&) = default;
};

/// Per-window binary outcomes for the observation and each member.
class EventDetectionTable {
 public:
  EventDetectionTable() = default;
  /// Validates flags are 0/1 and every row has `member_names.size()` flags.
  EventDetectionTable(std::string model, std::vector<std::string> member_names, std::vector<EventRow> rows);

  const std::string& model() const { return model_; }
  const std::vector<std::string>& member_names() const { return member_names_; }
  const std::vector<EventRow>& rows() const { return rows_; }
  std::size_t members() const { return member_names_.size(); }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  friend bool operator==(const EventDetectionTable&, const EventDetectionTable&) = default;

 private:
  std::string model_;
  std::vector<std::string> member_names_;
  std::vector<EventRow> rows_;
};

/// Runs the detector over the observation and every member column of each
/// model. A model's forecast rows that have observations must form an
/// evenly spaced sequence of distinct valid times (subset to one lead time
/// first); the spacing is the smallest gap between them. Throws DataError
/// naming the first missing timestamp on a gap.
PerModel<EventDetectionTable> event_detection_table(const EvaluationDataset& dataset, const EventSpec& spec);

/// Smallest gap between consecutive aligned valid times of `table`.
std::optional<std::chrono::seconds> aligned_time_step(const EnsembleForecastTable& table,
                                                      const ObservationSeries& obs);

std::string event_table_to_csv(const EventDetectionTable& table);
/// Reads `TimeStamp[,BaseTime],obs,<member flags...>`; the model is the file stem.
EventDetectionTable load_event_table_csv(const std::filesystem::path& file);
/// Every `*.csv` in `dir`, ordered by file name.
PerModel<EventDetectionTable> load_event_tables_dir(const std::filesystem::path& dir);
void write_event_tables_dir(const PerModel<EventDetectionTable>& tables, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Probability forecasts and their verification

struct ProbabilityOutcome {
  double probability = 0.0;
  std::uint8_t outcome = 0;
};

using ProbabilityOutcomeSeries = std::vector<ProbabilityOutcome>;

/// Fraction of members flagging the event, paired with the observed flag.
ProbabilityOutcomeSeries event_probabilities(const EventDetectionTable& table);

double brier_score(const ProbabilityOutcomeSeries& series);

struct BrierDecomposition {
  double bs = 0.0;
  double rel = 0.0;
  double res = 0.0;
  double unc = 0.0;
};

/// Reliability / resolution / uncertainty over groups of identical forecast
/// probabilities; bs = rel - res + unc up to rounding.
BrierDecomposition brier_decomposition(const ProbabilityOutcomeSeries& series);

struct ReliabilityBin {
  double lower = 0.0;  // the first bin is closed at 0, the rest are (lower, upper]
  double upper = 0.0;
  std::size_t forecasts = 0;
  std::size_t events = 0;
  std::optional<double> mean_probability;
  std::optional<double> observed_frequency;
};

struct ReliabilityDiagramData {
  std::vector<ReliabilityBin> bins;
};

/// 0, .05, .15, ..., .95, 1: eleven bins centred on multiples of 10%.
std::vector<double> default_reliability_edges();

ReliabilityDiagramData reliability_bins(const ProbabilityOutcomeSeries& series,
                                        const std::vector<double>& edges = default_reliability_edges());

struct RocPoint {
  std::size_t threshold = 0;  // members required to predict the event
  double far = 0.0;           // false-positive rate FP / (FP + TN)
  double tpr = 0.0;           // TP / (TP + FN)
};

struct RocCurve {
  std::vector<RocPoint> points;  // k = m+1 .. 0, i.e. (0,0) to (1,1)
  double auc = 0.0;
};

/// Sweeps the member-count threshold k = 0..m+1. Throws when the table is
/// empty or all outcomes are equal.
RocCurve roc_curve(const EventDetectionTable& table);

struct ContingencyTable {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t false_alarms = 0;
  std::size_t correct_negatives = 0;

  /// hits / (hits + misses)
  std::optional<double> hit_rate() const;
  /// false_alarms / (false_alarms + correct_negatives)
  std::optional<double> false_alarm_rate() const;
  /// false_alarms / (hits + false_alarms)
  std::optional<double> false_discovery_fraction() const;
};

/// Event predicted iff (flag count) / m >= threshold, threshold in (0, 1].
ContingencyTable contingency_table(const EventDetectionTable& table, double threshold);

/// Contingency counts when the event is predicted iff at least `k` members flag it.
ContingencyTable contingency_at_member_count(const EventDetectionTable& table, std::size_t k);

/// The member count equivalent to a probability threshold: ceil(t m).
std::size_t members_for_threshold(double threshold, std::size_t members);

PerModel<RocCurve> roc_curve_list(const PerModel<EventDetectionTable>& tables);
PerModel<ReliabilityDiagramData> reliability_diagram_list(
    const PerModel<EventDetectionTable>& tables, const std::vector<double>& edges = default_reliability_edges());
PerModel<double> brier_score_list(const PerModel<EventDetectionTable>& tables);
PerModel<BrierDecomposition> brier_decomposition_list(const PerModel<EventDetectionTable>& tables);
PerModel<ContingencyTable> contingency_table_list(const PerModel<EventDetectionTable>& tables, double threshold);

}  // namespace evalcast
