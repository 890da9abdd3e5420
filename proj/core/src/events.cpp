#include "evalcast/events.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "evalcast/csv.hpp"
#include "evalcast/error.hpp"

namespace evalcast {

namespace fs = std::filesystem;

EventSpec EventSpec::range(double lo, double hi, std::size_t window) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) throw ArgumentError("range event needs lo < hi");
  if (window == 0) throw ArgumentError("event window must be at least 1 data point");
  EventSpec s;
  s.kind_ = EventKind::range;
  s.lo_ = lo;
  s.hi_ = hi;
  s.window_ = window;
  return s;
}

EventSpec EventSpec::change(double c, std::size_t window) {
  if (!std::isfinite(c) || c == 0.0) throw ArgumentError("change event needs a finite, non-zero change");
  if (window == 0) throw ArgumentError("event window must be at least 1 data point");
  EventSpec s;
  s.kind_ = EventKind::change;
  s.change_ = c;
  s.window_ = window;
  return s;
}

namespace {

void check_window(std::size_t n, std::size_t window) {
  if (window == 0) throw ArgumentError("event window must be at least 1 data point");
  if (n < window) {
    throw ArgumentError("series of length " + std::to_string(n) + " is shorter than the window " +
                        std::to_string(window));
  }
}

}  // namespace

Flags detect_range_event(std::span<const double> series, double lo, double hi, std::size_t window) {
  check_window(series.size(), window);
  if (!(lo < hi)) throw ArgumentError("range event needs lo < hi");
  const std::size_t n = series.size();
  // next_hit[i]: first index >= i inside (lo, hi), or n.
  std::vector<std::size_t> next_hit(n + 1, n);
  for (std::size_t i = n; i-- > 0;) {
    next_hit[i] = (series[i] > lo && series[i] < hi) ? i : next_hit[i + 1];
  }
  Flags out(n - window + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = next_hit[i] < i + window ? 1 : 0;
  return out;
}

void detect_change_event(std::span<const double> series, double c, std::size_t window, std::span<std::uint8_t> out) {
  check_window(series.size(), window);
  if (c == 0.0 || std::isnan(c)) throw ArgumentError("change event needs a non-zero change");
  if (out.size() != series.size() - window + 1) throw ArgumentError("change event: output has the wrong length");
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 0;
    double extremum = series[i];
    for (std::size_t k = i + 1; k < i + window; ++k) {
      if (c > 0) {
        if (series[k] - extremum >= c) {
          out[i] = 1;
          break;
        }
        extremum = std::min(extremum, series[k]);
      } else {
        if (series[k] - extremum <= c) {
          out[i] = 1;
          break;
        }
        extremum = std::max(extremum, series[k]);
      }
    }
  }
}

Flags detect_change_event(std::span<const double> series, double c, std::size_t window) {
  check_window(series.size(), window);
  Flags out(series.size() - window + 1, 0);
  detect_change_event(series, c, window, out);
  return out;
}

Flags detect_event(std::span<const double> series, const EventSpec& spec) {
  return spec.kind() == EventKind::range ? detect_range_event(series, spec.lo(), spec.hi(), spec.window())
                                         : detect_change_event(series, spec.change_amount(), spec.window());
}

std::size_t EventRow::member_count() const {
  return static_cast<std::size_t>(std::count(member_flags.begin(), member_flags.end(), std::uint8_t{1}));
}

EventDetectionTable::EventDetectionTable(std::string model, std::vector<std::string> member_names,
                                         std::vector<EventRow> rows)
    : model_(std::move(model)), member_names_(std::move(member_names)), rows_(std::move(rows)) {
  if (member_names_.empty()) throw DataError("event table '" + model_ + "': no member columns");
  for (const auto& row : rows_) {
    if (row.member_flags.size() != member_names_.size()) {
      throw DataError("event table '" + model_ + "': row at " + format_instant(row.time) + " has " +
                      std::to_string(row.member_flags.size()) + " member flags, expected " +
                      std::to_string(member_names_.size()));
    }
    const bool binary = row.obs <= 1 && std::all_of(row.member_flags.begin(), row.member_flags.end(),
                                                    [](std::uint8_t f) { return f <= 1; });
    if (!binary) throw DataError("event table '" + model_ + "': flags must be 0 or 1");
  }
}

std::optional<std::chrono::seconds> aligned_time_step(const EnsembleForecastTable& table,
                                                      const ObservationSeries& obs) {
  auto aligned = align(table, obs);
  std::sort(aligned.begin(), aligned.end(),
            [](const AlignedRow& a, const AlignedRow& b) { return a.valid_time < b.valid_time; });
  std::optional<std::chrono::seconds> step;
  for (std::size_t i = 1; i < aligned.size(); ++i) {
    const auto gap = aligned[i].valid_time - aligned[i - 1].valid_time;
    if (gap.count() > 0 && (!step || gap < *step)) step = gap;
  }
  return step;
}

PerModel<EventDetectionTable> event_detection_table(const EvaluationDataset& dataset, const EventSpec& spec) {
  PerModel<EventDetectionTable> out;
  for (const auto& table : dataset.forecasts()) {
    const std::string ctx = "model '" + table.model_name() + "': ";
    auto aligned = align(table, dataset.observations());
    std::stable_sort(aligned.begin(), aligned.end(),
                     [](const AlignedRow& a, const AlignedRow& b) { return a.valid_time < b.valid_time; });
    if (aligned.size() < spec.window()) {
      throw DataError(ctx + std::to_string(aligned.size()) + " aligned rows, fewer than the window of " +
                      std::to_string(spec.window()));
    }
    std::optional<std::chrono::seconds> step;
    for (std::size_t i = 1; i < aligned.size(); ++i) {
      const auto gap = aligned[i].valid_time - aligned[i - 1].valid_time;
      if (gap.count() == 0) {
        throw DataError(ctx + "several forecasts for " + format_instant(aligned[i].valid_time) +
                        "; subset to a single lead time first");
      }
      if (!step || gap < *step) step = gap;
    }
    if (step) {
      for (std::size_t i = 1; i < aligned.size(); ++i) {
        if (aligned[i].valid_time - aligned[i - 1].valid_time != *step) {
          throw DataError(ctx + "gap in the time grid, first missing timestamp " +
                          format_instant(aligned[i - 1].valid_time + *step));
        }
      }
    }

    const std::size_t n = aligned.size();
    const std::size_t m = table.member_count();
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = aligned[i].obs;
    const Flags obs_flags = detect_event(column, spec);

    std::vector<EventRow> rows(obs_flags.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].time = aligned[i].valid_time;
      rows[i].base_time = aligned[i].base_time;
      rows[i].obs = obs_flags[i];
      rows[i].member_flags.resize(m);
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) column[i] = aligned[i].members[k];
      const Flags f = detect_event(column, spec);
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i].member_flags[k] = f[i];
    }
    out.push_back({table.model_name(), EventDetectionTable(table.model_name(), table.member_names(), std::move(rows))});
  }
  return out;
}

std::string event_table_to_csv(const EventDetectionTable& table) {
  const bool has_base = !table.empty() && table.rows().front().base_time.has_value();
  std::string out = "TimeStamp";
  if (has_base) out += ",BaseTime";
  out += ",obs";
  for (const auto& name : table.member_names()) out += "," + name;
  out += '\n';
  for (const auto& row : table.rows()) {
    out += format_instant(row.time);
    if (has_base) out += "," + (row.base_time ? format_instant(*row.base_time) : std::string("NA"));
    out += row.obs ? ",1" : ",0";
    for (auto f : row.member_flags) out += f ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

EventDetectionTable load_event_table_csv(const fs::path& file) {
  const auto doc = csv::read(file);
  const auto& h = doc.header;
  if (h.empty() || h[0] != "TimeStamp") throw DataError(file.string() + ": first column must be named 'TimeStamp'");
  const bool has_base = h.size() > 1 && h[1] == "BaseTime";
  const std::size_t obs_col = has_base ? 2 : 1;
  if (h.size() <= obs_col || h[obs_col] != "obs") {
    throw DataError(file.string() + ": expected an 'obs' column after TimeStamp" + (has_base ? "/BaseTime" : ""));
  }
  std::vector<std::string> members(h.begin() + static_cast<std::ptrdiff_t>(obs_col + 1), h.end());
  if (members.empty()) throw DataError(file.string() + ": no member columns");

  auto flag = [&](std::size_t r, std::size_t c) -> std::uint8_t {
    const auto& cell = doc.records[r][c];
    if (cell == "0") return 0;
    if (cell == "1") return 1;
    throw DataError(file.string() + ": line " + std::to_string(doc.line_numbers[r]) + ", column '" + h[c] +
                    "': expected 0 or 1, got '" + cell + "'");
  };

  std::vector<EventRow> rows(doc.records.size());
  for (std::size_t r = 0; r < doc.records.size(); ++r) {
    const auto t = parse_instant(doc.records[r][0]);
    if (!t) throw DataError(file.string() + ": line " + std::to_string(doc.line_numbers[r]) + ": bad TimeStamp");
    rows[r].time = *t;
    if (has_base && !csv::is_missing(doc.records[r][1])) {
      const auto b = parse_instant(doc.records[r][1]);
      if (!b) throw DataError(file.string() + ": line " + std::to_string(doc.line_numbers[r]) + ": bad BaseTime");
      rows[r].base_time = *b;
    }
    rows[r].obs = flag(r, obs_col);
    rows[r].member_flags.reserve(members.size());
    for (std::size_t c = obs_col + 1; c < h.size(); ++c) rows[r].member_flags.push_back(flag(r, c));
  }
  return EventDetectionTable(file.stem().string(), std::move(members), std::move(rows));
}

PerModel<EventDetectionTable> load_event_tables_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  if (files.empty()) throw DataError(dir.string() + ": no event tables (*.csv)");
  std::sort(files.begin(), files.end());
  PerModel<EventDetectionTable> out;
  for (const auto& f : files) {
    auto t = load_event_table_csv(f);
    std::string name = t.model();
    out.push_back({std::move(name), std::move(t)});
  }
  return out;
}

void write_event_tables_dir(const PerModel<EventDetectionTable>& tables, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& t : tables) csv::write_file_atomic(dir / (t.model + ".csv"), event_table_to_csv(t.value));
}

// ---------------------------------------------------------------------------

ProbabilityOutcomeSeries event_probabilities(const EventDetectionTable& table) {
  if (table.empty()) throw ArgumentError("event table '" + table.model() + "' is empty");
  ProbabilityOutcomeSeries out;
  out.reserve(table.size());
  const auto m = static_cast<double>(table.members());
  for (const auto& row : table.rows()) {
    out.push_back({static_cast<double>(row.member_count()) / m, row.obs});
  }
  return out;
}

namespace {

void check_series(const ProbabilityOutcomeSeries& series) {
  if (series.empty()) throw ArgumentError("empty probability/outcome series");
  for (const auto& p : series) {
    if (!(p.probability >= 0.0 && p.probability <= 1.0)) throw ArgumentError("forecast probability outside [0, 1]");
    if (p.outcome > 1) throw ArgumentError("outcome must be 0 or 1");
  }
}

}  // namespace

double brier_score(const ProbabilityOutcomeSeries& series) {
  check_series(series);
  double acc = 0.0;
  for (const auto& p : series) {
    const double d = p.probability - p.outcome;
    acc += d * d;
  }
  return acc / static_cast<double>(series.size());
}

BrierDecomposition brier_decomposition(const ProbabilityOutcomeSeries& series) {
  check_series(series);
  std::map<double, std::pair<std::size_t, std::size_t>> groups;  // f_k -> (n_k, events)
  std::size_t events = 0;
  for (const auto& p : series) {
    auto& g = groups[p.probability];
    ++g.first;
    g.second += p.outcome;
    events += p.outcome;
  }
  const double n = static_cast<double>(series.size());
  const double o_bar = static_cast<double>(events) / n;
  BrierDecomposition d;
  d.bs = brier_score(series);
  for (const auto& [f, g] : groups) {
    const double nk = static_cast<double>(g.first);
    const double ok = static_cast<double>(g.second) / nk;
    d.rel += nk * (f - ok) * (f - ok);
    d.res += nk * (ok - o_bar) * (ok - o_bar);
  }
  d.rel /= n;
  d.res /= n;
  d.unc = o_bar * (1.0 - o_bar);
  return d;
}

std::vector<double> default_reliability_edges() {
  std::vector<double> edges{0.0};
  for (int k = 1; k <= 10; ++k) edges.push_back((2.0 * k - 1.0) / 20.0);
  edges.push_back(1.0);
  return edges;
}

ReliabilityDiagramData reliability_bins(const ProbabilityOutcomeSeries& series, const std::vector<double>& edges) {
  check_series(series);
  if (edges.size() < 2 || edges.front() != 0.0 || edges.back() != 1.0) {
    throw ArgumentError("reliability bin edges must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw ArgumentError("reliability bin edges must be strictly increasing");
  }
  const std::size_t nb = edges.size() - 1;
  std::vector<double> prob_sum(nb, 0.0);
  ReliabilityDiagramData data;
  data.bins.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    data.bins[b].lower = edges[b];
    data.bins[b].upper = edges[b + 1];
  }
  for (const auto& p : series) {
    const auto it = std::lower_bound(edges.begin(), edges.end(), p.probability);
    const std::size_t b = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
    ++data.bins[b].forecasts;
    data.bins[b].events += p.outcome;
    prob_sum[b] += p.probability;
  }
  for (std::size_t b = 0; b < nb; ++b) {
    auto& bin = data.bins[b];
    if (bin.forecasts == 0) continue;
    const double n = static_cast<double>(bin.forecasts);
    bin.mean_probability = prob_sum[b] / n;
    bin.observed_frequency = static_cast<double>(bin.events) / n;
  }
  return data;
}

std::optional<double> ContingencyTable::hit_rate() const {
  if (hits + misses == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(hits + misses);
}

std::optional<double> ContingencyTable::false_alarm_rate() const {
  if (false_alarms + correct_negatives == 0) return std::nullopt;
  return static_cast<double>(false_alarms) / static_cast<double>(false_alarms + correct_negatives);
}

std::optional<double> ContingencyTable::false_discovery_fraction() const {
  if (hits + false_alarms == 0) return std::nullopt;
  return static_cast<double>(false_alarms) / static_cast<double>(hits + false_alarms);
}

ContingencyTable contingency_at_member_count(const EventDetectionTable& table, std::size_t k) {
  if (table.empty()) throw ArgumentError("event table '" + table.model() + "' is empty");
  ContingencyTable ct;
  for (const auto& row : table.rows()) {
    const bool predicted = row.member_count() >= k;
    if (row.obs) {
      (predicted ? ct.hits : ct.misses) += 1;
    } else {
      (predicted ? ct.false_alarms : ct.correct_negatives) += 1;
    }
  }
  return ct;
}

std::size_t members_for_threshold(double threshold, std::size_t members) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ArgumentError("threshold must lie in (0, 1]");
  // count / m >= t  <=>  count >= ceil(t m); the slack absorbs t m landing
  // a rounding error above an integer.
  return static_cast<std::size_t>(std::ceil(threshold * static_cast<double>(members) - 1e-9));
}

ContingencyTable contingency_table(const EventDetectionTable& table, double threshold) {
  return contingency_at_member_count(table, members_for_threshold(threshold, table.members()));
}

RocCurve roc_curve(const EventDetectionTable& table) {
  if (table.empty()) throw ArgumentError("event table '" + table.model() + "' is empty");
  const std::size_t m = table.members();
  // Rows per flag count, split by outcome.
  std::vector<std::size_t> pos(m + 2, 0), neg(m + 2, 0);
  for (const auto& row : table.rows()) (row.obs ? pos : neg)[row.member_count()] += 1;
  const std::size_t n_pos = std::accumulate(pos.begin(), pos.end(), std::size_t{0});
  const std::size_t n_neg = std::accumulate(neg.begin(), neg.end(), std::size_t{0});
  if (n_pos == 0 || n_neg == 0) {
    throw ArgumentError("event table '" + table.model() + "': ROC needs both events and non-events");
  }

  RocCurve curve;
  std::size_t tp = 0, fp = 0;
  for (std::size_t k = m + 2; k-- > 0;) {
    if (k <= m) {
      tp += pos[k];
      fp += neg[k];
    }
    curve.points.push_back({k, static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    curve.auc += (b.far - a.far) * (a.tpr + b.tpr) / 2.0;
  }
  return curve;
}

namespace {

template <typename F>
auto fan_out(const PerModel<EventDetectionTable>& tables, F&& fn) {
  using R = decltype(fn(tables.front().value));
  PerModel<R> out;
  out.reserve(tables.size());
  for (const auto& t : tables) {
    try {
      out.push_back({t.model, fn(t.value)});
    } catch (const Error& e) {
      throw ArgumentError("model '" + t.model + "': " + e.what());
    }
  }
  return out;
}

}  // namespace

PerModel<RocCurve> roc_curve_list(const PerModel<EventDetectionTable>& tables) {
  return fan_out(tables, [](const EventDetectionTable& t) { return roc_curve(t); });
}

PerModel<ReliabilityDiagramData> reliability_diagram_list(const PerModel<EventDetectionTable>& tables,
                                                          const std::vector<double>& edges) {
  return fan_out(tables,
                 [&](const EventDetectionTable& t) { return reliability_bins(event_probabilities(t), edges); });
}

PerModel<double> brier_score_list(const PerModel<EventDetectionTable>& tables) {
  return fan_out(tables, [](const EventDetectionTable& t) { return brier_score(event_probabilities(t)); });
}

PerModel<BrierDecomposition> brier_decomposition_list(const PerModel<EventDetectionTable>& tables) {
  return fan_out(tables, [](const EventDetectionTable& t) { return brier_decomposition(event_probabilities(t)); });
}

PerModel<ContingencyTable> contingency_table_list(const PerModel<EventDetectionTable>& tables, double threshold) {
  return fan_out(tables, [&](const EventDetectionTable& t) { return contingency_table(t, threshold); });
}

}  // namespace evalcast
