#include "evalcast/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "evalcast/csv.hpp"

namespace evalcast::report {

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string csv_number(const std::optional<double>& v) { return v ? csv::format_number(*v) : "NA"; }

std::string lead_cell(double hours) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", hours);
  return buf;
}

// Decimals shown by %.<sig>g for v (0 when it switches to exponent form).
int decimals_for(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  const std::string s = buf;
  if (s.find_first_of("eE") != std::string::npos) return 0;
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

bool all_midnight(const std::vector<Instant>& ts) {
  return std::all_of(ts.begin(), ts.end(),
                     [](Instant t) { return std::chrono::floor<std::chrono::days>(t) == t; });
}

}  // namespace

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> format_numeric_column(const std::vector<std::optional<double>>& values, int significant) {
  int decimals = 0;
  for (const auto& v : values) {
    if (v && std::isfinite(*v)) decimals = std::max(decimals, decimals_for(*v, significant));
  }
  decimals = std::min(decimals, 15);
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v ? format_fixed(*v, decimals) : "NA");
  return out;
}

std::string format_frame(const std::vector<Column>& columns, bool row_numbers) {
  std::size_t n = 0;
  for (const auto& c : columns) n = std::max(n, c.cells.size());
  const std::size_t name_width = row_numbers ? std::to_string(n).size() : 0;
  std::vector<std::size_t> widths;
  for (const auto& c : columns) {
    std::size_t w = c.header.size();
    for (const auto& s : c.cells) w = std::max(w, s.size());
    widths.push_back(w);
  }
  std::string out = std::string(name_width, ' ');
  for (std::size_t j = 0; j < columns.size(); ++j) out += " " + pad_left(columns[j].header, widths[j]);
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out += row_numbers ? pad_right(std::to_string(i + 1), name_width) : std::string();
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const std::string cell = i < columns[j].cells.size() ? columns[j].cells[i] : "";
      out += " " + pad_left(cell, widths[j]);
    }
    out += '\n';
  }
  return out;
}

std::string format_summary(const SummaryReport& report) {
  std::string out = "OBSERVATIONS\n------------\n";
  {
    Column ts{"TimeStamp", {}};
    std::vector<std::optional<double>> vals;
    for (const auto& o : report.observation_head) {
      ts.cells.push_back(format_instant(o.time));
      vals.push_back(o.value);
    }
    out += format_frame({ts, Column{"obs", format_numeric_column(vals)}}, false);
  }
  out += "\n\nFORECASTS\n---------\n";
  for (const auto& model : report.models) {
    out += model.stats.model + "\n";
    std::vector<Column> cols;
    Column ts{"TimeStamp", {}};
    std::vector<Instant> bases;
    for (const auto& row : model.head) {
      ts.cells.push_back(format_instant(row.valid_time));
      if (row.base_time) bases.push_back(*row.base_time);
    }
    cols.push_back(std::move(ts));
    if (!bases.empty()) {
      Column bt{"BaseTime", {}};
      const bool compact = all_midnight(bases);
      for (Instant b : bases) bt.cells.push_back(compact ? format_instant_compact(b) : format_instant(b));
      cols.push_back(std::move(bt));
    }
    for (std::size_t k = 0; k < model.member_names.size(); ++k) {
      std::vector<std::optional<double>> vals;
      for (const auto& row : model.head) vals.push_back(row.members[k]);
      cols.push_back(Column{model.member_names[k], format_numeric_column(vals)});
    }
    out += format_frame(cols, false) + "\n";
  }
  out += "\nSUMMARY\n-------\n$observations\n";
  const auto& o = report.observations;
  out += format_frame({Column{"mean", format_numeric_column({o.mean})}, Column{"min", format_numeric_column({o.min})},
                       Column{"max", format_numeric_column({o.max})},
                       Column{"number_of_observations", {std::to_string(o.count)}},
                       Column{"missing_values", {std::to_string(o.missing_values)}}},
                      false);
  for (const auto& model : report.models) {
    const auto& s = model.stats;
    out += "\n$" + s.model + "\n";
    out += format_frame({Column{"mean", format_numeric_column({s.mean})}, Column{"min", format_numeric_column({s.min})},
                         Column{"max", format_numeric_column({s.max})},
                         Column{"number_of_forecasts", {std::to_string(s.number_of_forecasts)}},
                         Column{"ensemble_size", {std::to_string(s.ensemble_size)}}},
                        false);
  }
  return out;
}

std::string format_marginal(const std::vector<MarginalScoreRow>& rows) {
  Column model{"forecast", {}};
  Column lead{"leadtime", {}};
  std::vector<std::optional<double>> vals;
  bool any_lead = false;
  for (const auto& r : rows) {
    model.cells.push_back(r.model);
    lead.cells.push_back(r.lead_time_hours ? lead_cell(*r.lead_time_hours) : "NA");
    any_lead = any_lead || r.lead_time_hours.has_value();
    vals.push_back(r.value);
  }
  const std::string metric = rows.empty() ? "CRPS" : std::string(metric_name(rows.front().metric));
  std::vector<Column> cols{model};
  if (any_lead) cols.push_back(lead);
  cols.push_back(Column{metric, format_numeric_column(vals)});
  return format_frame(cols);
}

std::string marginal_to_csv(const std::vector<MarginalScoreRow>& rows) {
  const std::string metric = rows.empty() ? "CRPS" : std::string(metric_name(rows.front().metric));
  std::string out = "forecast,leadtime," + metric + "\n";
  for (const auto& r : rows) {
    out += r.model + "," + csv_number(r.lead_time_hours) + "," + csv::format_number(r.value) + "\n";
  }
  return out;
}

std::string format_joint(const std::vector<JointScoreRow>& rows) {
  Column model{"forecast", {}};
  Column base{"basetime", {}};
  Column dim{"dimension", {}};
  std::vector<std::optional<double>> vals;
  bool any_base = false;
  for (const auto& r : rows) {
    model.cells.push_back(r.model);
    base.cells.push_back(r.base_time ? format_instant(*r.base_time) : "NA");
    any_base = any_base || r.base_time.has_value();
    dim.cells.push_back(r.dimension ? std::to_string(*r.dimension) : "NA");
    vals.push_back(r.vars);
  }
  std::vector<Column> cols{model};
  if (any_base) cols.push_back(base);
  cols.push_back(Column{"VarS", format_numeric_column(vals)});
  cols.push_back(dim);
  return format_frame(cols);
}

std::string joint_to_csv(const std::vector<JointScoreRow>& rows) {
  std::string out = "forecast,basetime,VarS,dimension\n";
  for (const auto& r : rows) {
    out += r.model + "," + (r.base_time ? format_instant(*r.base_time) : "NA") + "," + csv_number(r.vars) + "," +
           (r.dimension ? std::to_string(*r.dimension) : "NA") + "\n";
  }
  return out;
}

std::string histogram_to_csv(const RankHistogram& hist) {
  std::string out = "bin_lower,bin_upper,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out += csv::format_number(hist.bin_edges[i]) + "," + csv::format_number(hist.bin_edges[i + 1]) + "," +
           std::to_string(hist.counts[i]) + "\n";
  }
  return out;
}

std::string format_histograms(const PerModel<RankHistogram>& hists) {
  std::string out;
  for (const auto& h : hists) {
    out += "$" + h.model + "\n";
    Column lo{"bin_lower", {}}, hi{"bin_upper", {}}, count{"count", {}};
    for (std::size_t i = 0; i < h.value.counts.size(); ++i) {
      lo.cells.push_back(format_fixed(h.value.bin_edges[i], 2));
      hi.cells.push_back(format_fixed(h.value.bin_edges[i + 1], 2));
      count.cells.push_back(std::to_string(h.value.counts[i]));
    }
    out += format_frame({lo, hi, count}) + "\n";
  }
  return out;
}

std::string reliability_to_csv(const ReliabilityDiagramData& data) {
  std::string out = "bin_lower,bin_upper,forecasts,events,mean_probability,observed_frequency\n";
  for (const auto& b : data.bins) {
    out += csv::format_number(b.lower) + "," + csv::format_number(b.upper) + "," + std::to_string(b.forecasts) + "," +
           std::to_string(b.events) + "," + csv_number(b.mean_probability) + "," + csv_number(b.observed_frequency) +
           "\n";
  }
  return out;
}

std::string format_reliability(const PerModel<ReliabilityDiagramData>& data) {
  std::string out;
  for (const auto& d : data) {
    out += "$" + d.model + "\n";
    Column interval{"interval", {}}, n{"forecasts", {}}, ev{"events", {}};
    std::vector<std::optional<double>> mean, freq;
    for (const auto& b : d.value.bins) {
      interval.cells.push_back(format_fixed(b.lower, 2) + "-" + format_fixed(b.upper, 2));
      n.cells.push_back(std::to_string(b.forecasts));
      ev.cells.push_back(std::to_string(b.events));
      mean.push_back(b.mean_probability);
      freq.push_back(b.observed_frequency);
    }
    out += format_frame({interval, n, ev, Column{"mean_prob", format_numeric_column(mean)},
                         Column{"obs_freq", format_numeric_column(freq)}}) +
           "\n";
  }
  return out;
}

std::string roc_to_csv(const RocCurve& curve) {
  std::string out = "threshold,far,tpr\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.threshold) + "," + csv::format_number(p.far) + "," + csv::format_number(p.tpr) + "\n";
  }
  return out;
}

std::string format_roc(const PerModel<RocCurve>& curves) {
  std::string out;
  for (const auto& c : curves) {
    out += "$" + c.model + "\n";
    Column k{"members", {}};
    std::vector<std::optional<double>> far, tpr;
    for (const auto& p : c.value.points) {
      k.cells.push_back(std::to_string(p.threshold));
      far.push_back(p.far);
      tpr.push_back(p.tpr);
    }
    out += format_frame({k, Column{"FAR", format_numeric_column(far)}, Column{"TPR", format_numeric_column(tpr)}});
    out += "AUC " + format_numeric_column({c.value.auc}).front() + "\n\n";
  }
  return out;
}

std::string format_brier(const PerModel<double>& scores) {
  std::vector<std::optional<double>> vals;
  for (const auto& s : scores) vals.push_back(s.value);
  const auto cells = format_numeric_column(vals);
  std::string head, body;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const std::size_t w = std::max(scores[i].model.size(), cells[i].size());
    head += pad_left(scores[i].model, w) + " ";
    body += pad_left(cells[i], w) + " ";
  }
  return head + "\n" + body + "\n";
}

std::string brier_to_csv(const PerModel<BrierDecomposition>& scores) {
  std::string out = "forecast,BS,REL,RES,UNC\n";
  for (const auto& s : scores) {
    out += s.model + "," + csv::format_number(s.value.bs) + "," + csv::format_number(s.value.rel) + "," +
           csv::format_number(s.value.res) + "," + csv::format_number(s.value.unc) + "\n";
  }
  return out;
}

std::string format_contingency(const PerModel<ContingencyTable>& tables) {
  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i].value;
    const auto rate = [](const std::optional<double>& v) { return v ? format_fixed(*v, 3) : std::string("NA"); };
    out += "$" + tables[i].model + "\n";
    out += format_frame({Column{"hits", {std::to_string(t.hits)}}, Column{"misses", {std::to_string(t.misses)}},
                         Column{"falsealarms", {std::to_string(t.false_alarms)}},
                         Column{"correctnegatives", {std::to_string(t.correct_negatives)}},
                         Column{"HR", {rate(t.hit_rate())}}, Column{"FAR", {rate(t.false_alarm_rate())}}});
    if (i + 1 < tables.size()) out += "\n";
  }
  return out;
}

std::string contingency_to_csv(const PerModel<ContingencyTable>& tables) {
  std::string out = "forecast,hits,misses,falsealarms,correctnegatives,HR,FAR\n";
  for (const auto& t : tables) {
    out += t.model + "," + std::to_string(t.value.hits) + "," + std::to_string(t.value.misses) + "," +
           std::to_string(t.value.false_alarms) + "," + std::to_string(t.value.correct_negatives) + "," +
           csv_number(t.value.hit_rate()) + "," + csv_number(t.value.false_alarm_rate()) + "\n";
  }
  return out;
}

std::string format_event_table_head(const EventDetectionTable& table, std::size_t rows) {
  const std::size_t n = std::min(rows, table.size());
  std::vector<Column> cols{Column{"TimeStamp", {}}};
  const bool has_base = n > 0 && table.rows().front().base_time.has_value();
  if (has_base) cols.push_back(Column{"BaseTime", {}});
  cols.push_back(Column{"obs", {}});
  for (const auto& name : table.member_names()) cols.push_back(Column{name, {}});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = table.rows()[i];
    std::size_t c = 0;
    cols[c++].cells.push_back(format_instant(r.time));
    if (has_base) cols[c++].cells.push_back(r.base_time ? format_instant(*r.base_time) : "NA");
    cols[c++].cells.push_back(std::to_string(r.obs));
    for (auto f : r.member_flags) cols[c++].cells.push_back(std::to_string(f));
  }
  return format_frame(cols);
}

}  // namespace evalcast::report
