#include "evalcast/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "evalcast/csv.hpp"
#include "evalcast/error.hpp"

namespace evalcast {

namespace fs = std::filesystem;

ObservationSeries::ObservationSeries(std::vector<Observation> rows, std::size_t missing_values)
    : rows_(std::move(rows)), missing_values_(missing_values) {
  std::sort(rows_.begin(), rows_.end(),
            [](const Observation& a, const Observation& b) { return a.time < b.time; });
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!std::isfinite(rows_[i].value)) {
      throw DataError("observations: non-finite value at " + format_instant(rows_[i].time));
    }
    if (i > 0 && rows_[i].time == rows_[i - 1].time) {
      throw DataError("observations: duplicate timestamp " + format_instant(rows_[i].time));
    }
  }
}

std::optional<double> ObservationSeries::at(Instant t) const {
  const auto it = std::lower_bound(rows_.begin(), rows_.end(), t,
                                   [](const Observation& o, Instant v) { return o.time < v; });
  if (it == rows_.end() || it->time != t) return std::nullopt;
  return it->value;
}

std::optional<std::chrono::seconds> ObservationSeries::time_step() const {
  std::optional<std::chrono::seconds> step;
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    const auto gap = rows_[i].time - rows_[i - 1].time;
    if (!step || gap < *step) step = gap;
  }
  return step;
}

EnsembleForecastTable::EnsembleForecastTable(std::string model_name, std::vector<std::string> member_names,
                                             std::vector<ForecastRow> rows)
    : model_name_(std::move(model_name)), member_names_(std::move(member_names)), rows_(std::move(rows)) {
  const std::string ctx = "model '" + model_name_ + "': ";
  if (member_names_.size() < 2) {
    throw DataError(ctx + "an ensemble needs at least 2 members, got " + std::to_string(member_names_.size()));
  }
  has_base_time_ = !rows_.empty() && rows_.front().base_time.has_value();
  for (const auto& row : rows_) {
    if (row.members.size() != member_names_.size()) {
      throw DataError(ctx + "row at " + format_instant(row.valid_time) + " has " +
                      std::to_string(row.members.size()) + " members, expected " +
                      std::to_string(member_names_.size()));
    }
    if (row.base_time.has_value() != has_base_time_) {
      throw DataError(ctx + "base time must be present on all rows or none");
    }
    if (row.base_time && *row.base_time > row.valid_time) {
      throw DataError(ctx + "base time " + format_instant(*row.base_time) + " is after valid time " +
                      format_instant(row.valid_time));
    }
    for (double v : row.members) {
      if (!std::isfinite(v)) throw DataError(ctx + "non-finite member value at " + format_instant(row.valid_time));
    }
  }
  std::sort(rows_.begin(), rows_.end(), [](const ForecastRow& a, const ForecastRow& b) {
    return std::tie(a.base_time, a.valid_time) < std::tie(b.base_time, b.valid_time);
  });
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].valid_time == rows_[i - 1].valid_time && rows_[i].base_time == rows_[i - 1].base_time) {
      std::string where = format_instant(rows_[i].valid_time);
      if (rows_[i].base_time) where += " / base " + format_instant(*rows_[i].base_time);
      throw DataError(ctx + "duplicate forecast row " + where);
    }
  }
}

EvaluationDataset::EvaluationDataset(std::vector<EnsembleForecastTable> forecasts, ObservationSeries observations,
                                     std::vector<std::string> dropped_models)
    : forecasts_(std::move(forecasts)),
      observations_(std::move(observations)),
      dropped_models_(std::move(dropped_models)) {
  if (forecasts_.empty()) throw DataError("dataset has no forecast tables");
  std::set<std::string> names;
  for (const auto& f : forecasts_) {
    if (!names.insert(f.model_name()).second) throw DataError("duplicate model name '" + f.model_name() + "'");
  }
}

const EnsembleForecastTable* EvaluationDataset::find(std::string_view model) const {
  for (const auto& f : forecasts_) {
    if (f.model_name() == model) return &f;
  }
  return nullptr;
}

LeadTime LeadTime::from_hours(double hours) {
  if (!std::isfinite(hours) || hours < 0) {
    throw ArgumentError("lead time must be a non-negative number of hours");
  }
  return LeadTime{hours};
}

// ---------------------------------------------------------------------------
// CSV ingestion

namespace {

std::string cell_context(const csv::Document& doc, std::size_t record, const std::string& column) {
  return doc.source.string() + ": line " + std::to_string(doc.line_numbers[record]) + ", column '" + column + "'";
}

Instant parse_time_cell(const csv::Document& doc, std::size_t record, std::size_t col) {
  const auto t = parse_instant(doc.records[record][col]);
  if (!t) {
    throw DataError(cell_context(doc, record, doc.header[col]) + ": unparseable timestamp '" +
                    doc.records[record][col] + "'");
  }
  return *t;
}

}  // namespace

ObservationSeries load_observations_csv(const fs::path& file) {
  const auto doc = csv::read(file);
  if (doc.header.size() != 2 || doc.header[0] != "TimeStamp" || doc.header[1] != "obs") {
    throw DataError(file.string() + ": header must be 'TimeStamp,obs'");
  }
  std::vector<Observation> rows;
  rows.reserve(doc.records.size());
  std::size_t missing = 0;
  for (std::size_t r = 0; r < doc.records.size(); ++r) {
    const Instant t = parse_time_cell(doc, r, 0);
    const auto& cell = doc.records[r][1];
    if (csv::is_missing(cell)) {
      ++missing;
      continue;
    }
    const auto v = csv::parse_number(cell);
    if (!v) throw DataError(cell_context(doc, r, "obs") + ": non-numeric value '" + cell + "'");
    rows.push_back({t, *v});
  }
  try {
    return ObservationSeries(std::move(rows), missing);
  } catch (const DataError& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

EnsembleForecastTable load_forecast_csv(const fs::path& file, std::string model_name) {
  const auto doc = csv::read(file);
  if (doc.header.empty() || doc.header[0] != "TimeStamp") {
    throw DataError(file.string() + ": first column must be named 'TimeStamp'");
  }
  const bool has_base = doc.header.size() > 1 && doc.header[1] == "BaseTime";
  const std::size_t first_member = has_base ? 2 : 1;
  std::vector<std::string> member_names(doc.header.begin() + static_cast<std::ptrdiff_t>(first_member),
                                        doc.header.end());
  if (member_names.empty()) throw DataError(file.string() + ": no member columns");

  std::vector<ForecastRow> rows;
  rows.reserve(doc.records.size());
  for (std::size_t r = 0; r < doc.records.size(); ++r) {
    ForecastRow row;
    row.valid_time = parse_time_cell(doc, r, 0);
    if (has_base) row.base_time = parse_time_cell(doc, r, 1);
    row.members.reserve(member_names.size());
    for (std::size_t c = first_member; c < doc.header.size(); ++c) {
      const auto& cell = doc.records[r][c];
      if (csv::is_missing(cell)) {
        throw DataError(cell_context(doc, r, doc.header[c]) + ": missing member value");
      }
      const auto v = csv::parse_number(cell);
      if (!v) throw DataError(cell_context(doc, r, doc.header[c]) + ": non-numeric member value '" + cell + "'");
      row.members.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  try {
    return EnsembleForecastTable(std::move(model_name), std::move(member_names), std::move(rows));
  } catch (const DataError& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

EvaluationDataset load_from_csv_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  std::vector<fs::path> forecast_files;
  bool have_obs = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    if (entry.path().filename() == "observations.csv") {
      have_obs = true;
    } else {
      forecast_files.push_back(entry.path());
    }
  }
  if (!have_obs) throw DataError(dir.string() + ": observations.csv not found");
  if (forecast_files.empty()) throw DataError(dir.string() + ": no forecast tables (*.csv besides observations.csv)");
  std::sort(forecast_files.begin(), forecast_files.end());

  auto obs = load_observations_csv(dir / "observations.csv");
  std::vector<EnsembleForecastTable> tables;
  for (const auto& f : forecast_files) tables.push_back(load_forecast_csv(f, f.stem().string()));
  return EvaluationDataset(std::move(tables), std::move(obs));
}

std::string observations_to_csv(const ObservationSeries& obs) {
  std::string out = "TimeStamp,obs\n";
  for (const auto& o : obs.rows()) {
    out += format_instant(o.time);
    out += ',';
    out += csv::format_number(o.value);
    out += '\n';
  }
  return out;
}

std::string forecast_to_csv(const EnsembleForecastTable& table) {
  std::string out = "TimeStamp";
  if (table.has_base_time()) out += ",BaseTime";
  for (const auto& name : table.member_names()) out += "," + name;
  out += '\n';
  for (const auto& row : table.rows()) {
    out += format_instant(row.valid_time);
    if (row.base_time) out += "," + format_instant(*row.base_time);
    for (double v : row.members) {
      out += ',';
      out += csv::format_number(v);
    }
    out += '\n';
  }
  return out;
}

void write_to_csv_dir(const EvaluationDataset& dataset, const fs::path& dir) {
  fs::create_directories(dir);
  csv::write_file_atomic(dir / "observations.csv", observations_to_csv(dataset.observations()));
  for (const auto& table : dataset.forecasts()) {
    csv::write_file_atomic(dir / (table.model_name() + ".csv"), forecast_to_csv(table));
  }
}

// ---------------------------------------------------------------------------

SummaryReport summary_stats(const EvaluationDataset& dataset, std::size_t head_rows) {
  SummaryReport report;
  const auto& obs = dataset.observations().rows();
  report.observation_head.assign(obs.begin(), obs.begin() + static_cast<std::ptrdiff_t>(std::min(head_rows, obs.size())));
  report.observations.count = obs.size();
  report.observations.missing_values = dataset.observations().missing_values();
  if (!obs.empty()) {
    double sum = 0.0;
    report.observations.min = std::numeric_limits<double>::infinity();
    report.observations.max = -std::numeric_limits<double>::infinity();
    for (const auto& o : obs) {
      sum += o.value;
      report.observations.min = std::min(report.observations.min, o.value);
      report.observations.max = std::max(report.observations.max, o.value);
    }
    report.observations.mean = sum / static_cast<double>(obs.size());
  }

  for (const auto& table : dataset.forecasts()) {
    SummaryReport::ModelSummary ms;
    ms.member_names = table.member_names();
    ms.head.assign(table.rows().begin(),
                   table.rows().begin() + static_cast<std::ptrdiff_t>(std::min(head_rows, table.size())));
    ms.stats.model = table.model_name();
    ms.stats.ensemble_size = table.member_count();
    ms.stats.number_of_forecasts = table.size() * table.member_count();
    if (!table.empty()) {
      double sum = 0.0;
      ms.stats.min = std::numeric_limits<double>::infinity();
      ms.stats.max = -std::numeric_limits<double>::infinity();
      for (const auto& row : table.rows()) {
        for (double v : row.members) {
          sum += v;
          ms.stats.min = std::min(ms.stats.min, v);
          ms.stats.max = std::max(ms.stats.max, v);
        }
      }
      ms.stats.mean = sum / static_cast<double>(ms.stats.number_of_forecasts);
    }
    report.models.push_back(std::move(ms));
  }
  return report;
}

EvaluationDataset make_evaluation_subset(const EvaluationDataset& dataset, LeadTime lead_time) {
  const auto target = hours_to_seconds(lead_time.hours);
  std::vector<EnsembleForecastTable> kept;
  std::vector<std::string> dropped = dataset.dropped_models();
  for (const auto& table : dataset.forecasts()) {
    if (!table.has_base_time()) {
      throw DataError("model '" + table.model_name() + "': lead-time subsetting requires a BaseTime column");
    }
    std::vector<ForecastRow> rows;
    for (const auto& row : table.rows()) {
      const auto lead = row.valid_time - *row.base_time;
      if (std::chrono::abs(lead - target) <= std::chrono::seconds(1)) rows.push_back(row);
    }
    if (rows.empty()) {
      dropped.push_back(table.model_name());
      continue;
    }
    kept.emplace_back(table.model_name(), table.member_names(), std::move(rows));
  }
  if (kept.empty()) {
    std::ostringstream msg;
    msg << "no forecasts with lead time " << lead_time.hours << " h in any model";
    throw DataError(msg.str());
  }
  return EvaluationDataset(std::move(kept), dataset.observations(), std::move(dropped));
}

std::vector<AlignedRow> align(const EnsembleForecastTable& forecast, const ObservationSeries& obs) {
  std::vector<AlignedRow> out;
  const auto& rows = forecast.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (const auto y = obs.at(rows[i].valid_time)) {
      out.push_back({i, rows[i].valid_time, rows[i].base_time, rows[i].members, *y});
    }
  }
  return out;
}

EnsembleForecastTable dedupe_overlapping(const EnsembleForecastTable& forecast) {
  // Rows are sorted by base time first, so the first row seen for a valid
  // time carries the earliest base time.
  std::map<Instant, const ForecastRow*> first;
  for (const auto& row : forecast.rows()) first.emplace(row.valid_time, &row);
  std::vector<ForecastRow> rows;
  rows.reserve(first.size());
  for (const auto& [t, row] : first) rows.push_back(*row);
  return EnsembleForecastTable(forecast.model_name(), forecast.member_names(), std::move(rows));
}

}  // namespace evalcast
