#include "evalcast/plots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "evalcast/csv.hpp"
#include "evalcast/error.hpp"
#include "evalcast/stats.hpp"

namespace evalcast::plot {

namespace fs = std::filesystem;

std::string_view kind_name(PlotKind kind) {
  switch (kind) {
    case PlotKind::observations: return "observations";
    case PlotKind::forecast_fan: return "forecast_fan";
    case PlotKind::score_by_leadtime: return "score_by_leadtime";
    case PlotKind::variogram_scores: return "variogram_scores";
    case PlotKind::rank_histogram: return "rank_histogram";
    case PlotKind::reliability: return "reliability";
    case PlotKind::roc: return "roc";
  }
  return "unknown";
}

std::string_view mark_type_name(MarkType type) {
  switch (type) {
    case MarkType::line: return "line";
    case MarkType::points: return "points";
    case MarkType::band: return "band";
    case MarkType::bar: return "bar";
    case MarkType::hline: return "hline";
  }
  return "line";
}

namespace {

constexpr double kLeft = 72, kRight = 170, kTop = 44, kBottom = 56;

// Series colours by first appearance; reference lines are grey.
constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

bool is_reference_series(const std::string& s) {
  return s == "reference" || s == "diagonal" || s == "chance";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v, double step) {
  char buf[32];
  const int decimals = step >= 1 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  std::snprintf(buf, sizeof buf, "%.*f", std::clamp(decimals, 0, 6), v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (f * mag >= raw) return f * mag;
  }
  return 10.0 * mag;
}

double time_step_seconds(double span) {
  constexpr std::array<double, 10> steps = {3600, 3 * 3600, 6 * 3600, 12 * 3600, 86400,
                                            2 * 86400, 7 * 86400, 14 * 86400, 30 * 86400, 91 * 86400};
  for (double s : steps) {
    if (span / s <= 8) return s;
  }
  return 365 * 86400.0;
}

std::string time_label(double secs, double step) {
  const Instant t{std::chrono::seconds(static_cast<std::int64_t>(std::llround(secs)))};
  const std::string full = format_instant(t);  // YYYY-MM-DD HH:MM:SS
  return step >= 86400 ? full.substr(5, 5) : full.substr(5, 11);
}

struct Bounds {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity(), y1 = -std::numeric_limits<double>::infinity();
  void add_x(double v) {
    if (!std::isfinite(v)) return;
    x0 = std::min(x0, v);
    x1 = std::max(x1, v);
  }
  void add_y(double v) {
    if (!std::isfinite(v)) return;
    y0 = std::min(y0, v);
    y1 = std::max(y1, v);
  }
};

void widen(double& lo, double& hi, double pad_fraction) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = 0;
    hi = 1;
    return;
  }
  if (hi - lo <= 0) {
    const double d = std::abs(lo) > 0 ? std::abs(lo) * 0.1 : 1.0;
    lo -= d;
    hi += d;
    return;
  }
  const double pad = (hi - lo) * pad_fraction;
  lo -= pad;
  hi += pad;
}

}  // namespace

std::string render_svg(const Figure& figure) {
  Bounds b;
  for (const auto& m : figure.marks) {
    for (double v : m.x) b.add_x(v);
    for (double v : m.x2) b.add_x(v);
    for (double v : m.y) b.add_y(v);
    for (double v : m.y2) b.add_y(v);
    if (m.type == MarkType::bar) b.add_y(0.0);
  }
  double x0 = b.x0, x1 = b.x1, y0 = b.y0, y1 = b.y1;
  if (figure.x_range) {
    std::tie(x0, x1) = *figure.x_range;
  } else {
    widen(x0, x1, 0.0);
  }
  if (figure.y_range) {
    std::tie(y0, y1) = *figure.y_range;
  } else {
    widen(y0, y1, 0.05);
  }

  const double pw = kCanvasWidth - kLeft - kRight;
  const double ph = kCanvasHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - y0) / (y1 - y0) * ph; };

  std::map<std::string, std::string> colours;
  std::vector<std::string> legend;
  for (const auto& m : figure.marks) {
    if (colours.count(m.series)) continue;
    if (is_reference_series(m.series)) {
      colours[m.series] = "#555555";
    } else {
      colours[m.series] = kPalette[legend.size() % kPalette.size()];
    }
    legend.push_back(m.series);
  }

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(kCanvasWidth) +
         "\" height=\"" + std::to_string(kCanvasHeight) + "\" viewBox=\"0 0 " + std::to_string(kCanvasWidth) + " " +
         std::to_string(kCanvasHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kCanvasWidth) + "\" height=\"" +
         std::to_string(kCanvasHeight) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(kLeft) + "\" y=\"24\" font-size=\"15\">" + escape(figure.title) + "</text>\n";

  // Axes and ticks.
  svg += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
         "\"/>\n</g>\n";
  svg += "<g class=\"ticks\" fill=\"black\">\n";
  const double xstep = figure.x_is_time ? time_step_seconds(x1 - x0) : nice_step(x1 - x0, 6);
  for (double t = std::ceil(x0 / xstep - 1e-9) * xstep; t <= x1 + xstep * 1e-9; t += xstep) {
    const double px = sx(t);
    if (figure.grid) {
      svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(px) + "\" y2=\"" + fmt(kTop + ph) +
             "\" stroke=\"#dddddd\"/>\n";
    }
    svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(kTop + ph) + "\" x2=\"" + fmt(px) + "\" y2=\"" +
           fmt(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    const std::string label = figure.x_is_time ? time_label(t, xstep) : tick_label(t, xstep);
    svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
           escape(label) + "</text>\n";
  }
  const double ystep = nice_step(y1 - y0, 5);
  for (double t = std::ceil(y0 / ystep - 1e-9) * ystep; t <= y1 + ystep * 1e-9; t += ystep) {
    const double py = sy(t);
    if (figure.grid) {
      svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(kLeft + pw) + "\" y2=\"" + fmt(py) +
             "\" stroke=\"#dddddd\"/>\n";
    }
    svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(kLeft) + "\" y2=\"" + fmt(py) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(py + 4) + "\" text-anchor=\"end\">" +
           escape(tick_label(t, ystep)) + "</text>\n";
  }
  svg += "</g>\n";
  svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kCanvasHeight - 12.0) + "\" text-anchor=\"middle\">" +
         escape(figure.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt(kTop + ph / 2) + ")\">" + escape(figure.y_label) + "</text>\n";

  // Marks, clipped to the plot area.
  svg += "<defs><clipPath id=\"plot-area\"><rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\"/></clipPath></defs>\n";
  svg += "<g class=\"marks\" clip-path=\"url(#plot-area)\">\n";
  for (const auto& m : figure.marks) {
    const std::string& colour = colours[m.series];
    switch (m.type) {
      case MarkType::line: {
        if (m.x.size() == 1) {
          svg += "<circle cx=\"" + fmt(sx(m.x[0])) + "\" cy=\"" + fmt(sy(m.y[0])) + "\" r=\"2.5\" fill=\"" + colour +
                 "\"/>\n";
          break;
        }
        std::string pts;
        for (std::size_t i = 0; i < m.x.size(); ++i) {
          if (i) pts += ' ';
          pts += fmt(sx(m.x[i])) + "," + fmt(sy(m.y[i]));
        }
        const char* dash = is_reference_series(m.series) ? " stroke-dasharray=\"6 4\"" : "";
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.5\"" + dash +
               "/>\n";
        break;
      }
      case MarkType::points:
        for (std::size_t i = 0; i < m.x.size(); ++i) {
          svg += "<circle cx=\"" + fmt(sx(m.x[i])) + "\" cy=\"" + fmt(sy(m.y[i])) + "\" r=\"3\" fill=\"" + colour +
                 "\"/>\n";
        }
        break;
      case MarkType::band: {
        std::string pts;
        for (std::size_t i = 0; i < m.x.size(); ++i) pts += fmt(sx(m.x[i])) + "," + fmt(sy(m.y2[i])) + " ";
        for (std::size_t i = m.x.size(); i-- > 0;) {
          pts += fmt(sx(m.x[i])) + "," + fmt(sy(m.y[i]));
          if (i) pts += ' ';
        }
        svg += "<polygon points=\"" + pts + "\" fill=\"" + colour + "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
        break;
      }
      case MarkType::bar:
        for (std::size_t i = 0; i < m.x.size(); ++i) {
          const double left = sx(m.x[i]), right = sx(m.x2[i]);
          const double top = sy(std::max(m.y[i], 0.0)), base = sy(std::min(m.y[i], 0.0));
          svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(right - left) +
                 "\" height=\"" + fmt(base - top) + "\" fill=\"" + colour + "\" fill-opacity=\"0.7\" stroke=\"white\"/>\n";
        }
        break;
      case MarkType::hline:
        for (double y : m.y) {
          svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(sy(y)) + "\" x2=\"" + fmt(kLeft + pw) + "\" y2=\"" +
                 fmt(sy(y)) + "\" stroke=\"" + colour + "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
        }
        break;
    }
  }
  svg += "</g>\n";

  // Legend and notes.
  svg += "<g class=\"legend\">\n";
  double ly = kTop + 10;
  for (const auto& s : legend) {
    const double lx = kCanvasWidth - kRight + 14;
    svg += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly - 9) + "\" width=\"14\" height=\"10\" fill=\"" + colours[s] +
           "\"/>\n";
    svg += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(ly) + "\">" + escape(s) + "</text>\n";
    ly += 18;
  }
  double ny = kTop + 18;
  for (const auto& note : figure.notes) {
    svg += "<text x=\"" + fmt(kLeft + 10) + "\" y=\"" + fmt(ny) + "\">" + escape(note) + "</text>\n";
    ny += 16;
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string sidecar_csv(const Figure& figure) {
  std::string out = "mark,series,index,x,y,x2,y2\n";
  auto cell = [](const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? csv::format_number(v[i]) : std::string("NA");
  };
  for (const auto& m : figure.marks) {
    const std::size_t n = std::max({m.x.size(), m.y.size(), m.x2.size(), m.y2.size()});
    for (std::size_t i = 0; i < n; ++i) {
      out += std::string(mark_type_name(m.type)) + "," + m.series + "," + std::to_string(i) + "," + cell(m.x, i) +
             "," + cell(m.y, i) + "," + cell(m.x2, i) + "," + cell(m.y2, i) + "\n";
    }
  }
  return out;
}

std::vector<Mark> read_sidecar(const fs::path& file) {
  const auto doc = csv::read(file);
  if (doc.header != std::vector<std::string>{"mark", "series", "index", "x", "y", "x2", "y2"}) {
    throw DataError(file.string() + ": not a plot sidecar");
  }
  std::vector<Mark> marks;
  for (const auto& rec : doc.records) {
    MarkType type = MarkType::line;
    bool known = false;
    for (MarkType t : {MarkType::line, MarkType::points, MarkType::band, MarkType::bar, MarkType::hline}) {
      if (rec[0] == mark_type_name(t)) {
        type = t;
        known = true;
      }
    }
    if (!known) throw DataError(file.string() + ": unknown mark type '" + rec[0] + "'");
    if (rec[2] == "0" || marks.empty()) {
      marks.push_back(Mark{type, rec[1], {}, {}, {}, {}});
    }
    auto& m = marks.back();
    auto push = [&](std::vector<double>& v, const std::string& c) {
      if (const auto num = csv::parse_number(c)) v.push_back(*num);
    };
    push(m.x, rec[3]);
    push(m.y, rec[4]);
    push(m.x2, rec[5]);
    push(m.y2, rec[6]);
  }
  return marks;
}

PlotArtifact write_figure(const Figure& figure, const fs::path& path, bool with_sidecar) {
  PlotArtifact art;
  art.kind = figure.kind;
  art.output_path = path;
  art.figure = figure;
  csv::write_file_atomic(path, render_svg(figure));
  if (with_sidecar) {
    fs::path side = path;
    side.replace_extension(".csv");
    csv::write_file_atomic(side, sidecar_csv(figure));
    art.data_sidecar = side;
  }
  return art;
}

namespace {

double epoch_seconds(Instant t) { return static_cast<double>(t.time_since_epoch().count()); }

}  // namespace

PlotArtifact plot_observations(const ObservationSeries& obs, const ObservationPlotOptions& options,
                               const fs::path& path) {
  if (obs.empty()) throw ArgumentError("no observations to plot");
  const std::size_t n = options.all ? obs.size() : std::min(options.numobs, obs.size());
  if (n == 0) throw ArgumentError("numobs must be at least 1");
  Figure fig;
  fig.kind = PlotKind::observations;
  fig.title = "Observations";
  fig.x_label = "Time (UTC)";
  fig.y_label = "obs";
  fig.x_is_time = true;
  fig.grid = options.grid;
  Mark line{MarkType::line, "obs", {}, {}, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    line.x.push_back(epoch_seconds(obs.rows()[i].time));
    line.y.push_back(obs.rows()[i].value);
  }
  fig.marks.push_back(std::move(line));
  return write_figure(fig, path);
}

PlotArtifact plot_forecasts(const EnsembleForecastTable& forecast, const ForecastPlotOptions& options,
                            const ObservationSeries* overlay, const fs::path& path) {
  if (forecast.member_count() < 2) throw ArgumentError("fan charts need an ensemble");
  std::vector<const ForecastRow*> selected;
  std::string subtitle;
  EnsembleForecastTable deduped;
  if (!options.by) {
    deduped = dedupe_overlapping(forecast);
    for (const auto& r : deduped.rows()) selected.push_back(&r);
  } else if (*options.by == ForecastSelection::leadtime) {
    if (!forecast.has_base_time()) throw DataError("model '" + forecast.model_name() + "': no BaseTime column");
    const auto target = hours_to_seconds(options.lead.hours);
    for (const auto& r : forecast.rows()) {
      if (std::chrono::abs((r.valid_time - *r.base_time) - target) <= std::chrono::seconds(1)) selected.push_back(&r);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, ", lead time %g h", options.lead.hours);
    subtitle = buf;
  } else {
    if (!forecast.has_base_time()) throw DataError("model '" + forecast.model_name() + "': no BaseTime column");
    if (!forecast.empty()) {
      const Instant first = *forecast.rows().front().base_time;
      for (const auto& r : forecast.rows()) {
        if (*r.base_time == first) selected.push_back(&r);
      }
      subtitle = ", issued " + format_instant(first);
    }
  }
  if (selected.empty()) throw ArgumentError("model '" + forecast.model_name() + "': no forecasts match the selection");
  std::stable_sort(selected.begin(), selected.end(),
                   [](const ForecastRow* a, const ForecastRow* b) { return a->valid_time < b->valid_time; });
  if (!options.all && selected.size() > options.numobs) selected.resize(std::max<std::size_t>(options.numobs, 1));

  static constexpr std::array<double, 5> probs = {0.05, 0.25, 0.5, 0.75, 0.95};
  Mark outer{MarkType::band, "5-95%", {}, {}, {}, {}};
  Mark inner{MarkType::band, "25-75%", {}, {}, {}, {}};
  Mark median{MarkType::line, "median", {}, {}, {}, {}};
  for (const auto* row : selected) {
    const auto q = quantiles(row->members, probs);
    const double x = epoch_seconds(row->valid_time);
    outer.x.push_back(x);
    outer.y.push_back(q[0]);
    outer.y2.push_back(q[4]);
    inner.x.push_back(x);
    inner.y.push_back(q[1]);
    inner.y2.push_back(q[3]);
    median.x.push_back(x);
    median.y.push_back(q[2]);
  }

  Figure fig;
  fig.kind = PlotKind::forecast_fan;
  fig.title = forecast.model_name() + subtitle;
  fig.x_label = "Time (UTC)";
  fig.y_label = "Forecast";
  fig.x_is_time = true;
  fig.grid = options.grid;
  const double first = median.x.front(), last = median.x.back();
  fig.marks = {std::move(outer), std::move(inner), std::move(median)};
  if (overlay) {
    Mark obs_line{MarkType::line, "obs", {}, {}, {}, {}};
    for (const auto& o : overlay->rows()) {
      const double x = epoch_seconds(o.time);
      if (x < first || x > last) continue;
      obs_line.x.push_back(x);
      obs_line.y.push_back(o.value);
    }
    if (!obs_line.x.empty()) fig.marks.push_back(std::move(obs_line));
  }
  return write_figure(fig, path);
}

PlotArtifact plot_score_by_leadtime(const std::vector<MarginalScoreRow>& rows, const fs::path& path) {
  Figure fig;
  fig.kind = PlotKind::score_by_leadtime;
  fig.x_label = "Lead time (hours)";
  fig.grid = true;
  std::vector<Mark> lines;
  std::vector<Mark> refs;
  for (const auto& r : rows) {
    fig.y_label = std::string(metric_name(r.metric));
    if (!r.lead_time_hours) {
      refs.push_back(Mark{MarkType::hline, r.model, {}, {r.value}, {}, {}});
      continue;
    }
    auto it = std::find_if(lines.begin(), lines.end(), [&](const Mark& m) { return m.series == r.model; });
    if (it == lines.end()) {
      lines.push_back(Mark{MarkType::line, r.model, {}, {}, {}, {}});
      it = lines.end() - 1;
    }
    it->x.push_back(*r.lead_time_hours);
    it->y.push_back(r.value);
  }
  if (lines.empty()) throw ArgumentError("no scores with lead times to plot");
  fig.title = fig.y_label + " by lead time";
  fig.marks = std::move(lines);
  for (auto& r : refs) fig.marks.push_back(std::move(r));
  return write_figure(fig, path);
}

PlotArtifact plot_variogram_scores(const std::vector<JointScoreRow>& rows, const fs::path& path) {
  const auto maximal = keep_maximal_dimension(rows);
  if (maximal.empty()) throw ArgumentError("no variogram scores to plot");
  Figure fig;
  fig.kind = PlotKind::variogram_scores;
  fig.title = "Variogram score, dimension " + std::to_string(*maximal.front().dimension);
  fig.x_label = "Base time (UTC)";
  fig.y_label = "VarS";
  fig.x_is_time = true;
  fig.grid = true;
  for (const auto& r : maximal) {
    if (!r.base_time) continue;
    auto it = std::find_if(fig.marks.begin(), fig.marks.end(), [&](const Mark& m) { return m.series == r.model; });
    if (it == fig.marks.end()) {
      fig.marks.push_back(Mark{MarkType::line, r.model, {}, {}, {}, {}});
      it = fig.marks.end() - 1;
    }
    it->x.push_back(epoch_seconds(*r.base_time));
    it->y.push_back(*r.vars);
  }
  if (fig.marks.empty()) throw ArgumentError("variogram plot needs per-base-time rows");
  return write_figure(fig, path);
}

PlotArtifact plot_rank_histogram(const RankHistogram& hist, const std::string& model, const fs::path& path) {
  if (hist.counts.empty() || hist.total == 0) throw ArgumentError("empty rank histogram");
  Figure fig;
  fig.kind = PlotKind::rank_histogram;
  fig.title = "Transformed rank histogram: " + model;
  fig.x_label = "Transformed rank";
  fig.y_label = "Count";
  fig.x_range = std::pair{0.0, 1.0};
  Mark bars{MarkType::bar, model, {}, {}, {}, {}};
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    bars.x.push_back(hist.bin_edges[i]);
    bars.x2.push_back(hist.bin_edges[i + 1]);
    bars.y.push_back(static_cast<double>(hist.counts[i]));
  }
  fig.marks.push_back(std::move(bars));
  fig.marks.push_back(Mark{MarkType::hline, "reference",
                           {}, {static_cast<double>(hist.total) / static_cast<double>(hist.counts.size())}, {}, {}});
  return write_figure(fig, path);
}

PlotArtifact plot_reliability(const ReliabilityDiagramData& data, const std::string& model, const fs::path& path) {
  Mark pts{MarkType::line, model, {}, {}, {}, {}};
  for (const auto& b : data.bins) {
    if (!b.observed_frequency) continue;
    pts.x.push_back(*b.mean_probability);
    pts.y.push_back(*b.observed_frequency);
  }
  if (pts.x.empty()) throw ArgumentError("reliability diagram has no populated bins");
  Figure fig;
  fig.kind = PlotKind::reliability;
  fig.title = "Reliability diagram: " + model;
  fig.x_label = "Forecast probability";
  fig.y_label = "Observed relative frequency";
  fig.x_range = std::pair{0.0, 1.0};
  fig.y_range = std::pair{0.0, 1.0};
  fig.grid = true;
  fig.marks.push_back(Mark{MarkType::line, "diagonal", {0.0, 1.0}, {0.0, 1.0}, {}, {}});
  Mark dots{MarkType::points, model, pts.x, pts.y, {}, {}};
  fig.marks.push_back(std::move(pts));
  fig.marks.push_back(std::move(dots));
  return write_figure(fig, path);
}

std::string auc_label(double auc) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "AUC = %.3f", auc);
  return buf;
}

PlotArtifact plot_roc(const RocCurve& curve, const std::string& model, const fs::path& path) {
  if (curve.points.empty()) throw ArgumentError("empty ROC curve");
  Figure fig;
  fig.kind = PlotKind::roc;
  fig.title = "ROC curve: " + model;
  fig.x_label = "False alarm rate";
  fig.y_label = "True positive rate";
  fig.x_range = std::pair{0.0, 1.0};
  fig.y_range = std::pair{0.0, 1.0};
  fig.grid = true;
  fig.marks.push_back(Mark{MarkType::line, "chance", {0.0, 1.0}, {0.0, 1.0}, {}, {}});
  Mark line{MarkType::line, model, {}, {}, {}, {}};
  for (const auto& p : curve.points) {
    line.x.push_back(p.far);
    line.y.push_back(p.tpr);
  }
  fig.marks.push_back(std::move(line));
  fig.notes.push_back(auc_label(curve.auc));
  return write_figure(fig, path);
}

}  // namespace evalcast::plot
