#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <sstream>

#include "evalcast/evalcast.hpp"

namespace evalcast::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string data_dir;
  std::string events_dir;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  // plotting
  bool all = false;
  std::size_t numobs = 100;
  bool grid = false;
  std::string by;
  std::string model;

  // scoring
  std::string metric = "CRPS";
  bool by_lead_time = false;
  bool no_reference = false;
  bool fair = false;
  std::optional<double> bandwidth;
  bool by_base_time = false;
  bool aggregate = false;
  double p = 0.5;
  std::string weights = "uniform";
  std::optional<double> lead;

  // calibration
  std::size_t bins = 10;

  // events
  std::string range;
  std::optional<double> change;
  std::optional<std::size_t> window;
  std::optional<double> window_hours;
  double threshold = 0.5;

  // generate
  int days = 14;
  double obs_step = 1.0;
  double issue_step = 3.0;
  int horizon = 48;
  int members = 20;
  std::vector<std::string> profiles;
};

double parse_bound(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
  if (s.empty() || s.find_first_not_of("+-.0123456789eE") != std::string::npos) {
    throw ArgumentError("invalid range bound '" + s + "'");
  }
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ArgumentError("invalid range bound '" + s + "'");
  return v;
}

datagen::ModelProfile parse_profile(const std::string& text) {
  // name:noise:bias:dispersion:fidelity
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 5) {
    throw ArgumentError("model profile '" + text + "' must be name:noise:bias:dispersion:faithful|shuffled");
  }
  datagen::ModelProfile p;
  p.name = parts[0];
  try {
    p.noise_scale = std::stod(parts[1]);
    p.bias = std::stod(parts[2]);
    p.dispersion = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw ArgumentError("model profile '" + text + "': non-numeric field");
  }
  if (parts[4] == "faithful") {
    p.fidelity = datagen::CorrelationFidelity::faithful;
  } else if (parts[4] == "shuffled") {
    p.fidelity = datagen::CorrelationFidelity::shuffled;
  } else {
    throw ArgumentError("model profile '" + text + "': fidelity must be faithful or shuffled");
  }
  return p;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  EvaluationDataset dataset() const {
    if (cfg_.data_dir.empty()) throw ArgumentError("--data is required");
    auto data = load_from_csv_dir(cfg_.data_dir);
    if (cfg_.lead) {
      data = make_evaluation_subset(data, LeadTime::from_hours(*cfg_.lead));
      for (const auto& m : data.dropped_models()) {
        err_ << "warning: model '" << m << "' has no forecasts at lead time " << *cfg_.lead << " h; dropped\n";
      }
    }
    return data;
  }

  std::optional<fs::path> out_dir(bool required) const {
    if (cfg_.out_dir.empty()) {
      if (required) throw ArgumentError("--out is required");
      return std::nullopt;
    }
    fs::create_directories(cfg_.out_dir);
    return fs::path(cfg_.out_dir);
  }

  void write(const fs::path& file, const std::string& content) const { csv::write_file_atomic(file, content); }

  void summary() const {
    out_ << report::format_summary(summary_stats(dataset()));
  }

  void plot_obs() const {
    const auto data = dataset();
    const auto dir = *out_dir(true);
    plot::ObservationPlotOptions opts{cfg_.all, cfg_.numobs, cfg_.grid};
    const auto art = plot::plot_observations(data.observations(), opts, dir / "observations.svg");
    out_ << "wrote " << art.output_path.filename().string() << " (" << art.figure.marks.front().x.size()
         << " observations)\n";
  }

  void plot_forecasts() const {
    const auto data = dataset();
    const auto dir = *out_dir(true);
    plot::ForecastPlotOptions opts;
    if (cfg_.by == "leadtime") {
      opts.by = plot::ForecastSelection::leadtime;
    } else if (cfg_.by == "basetime") {
      opts.by = plot::ForecastSelection::basetime;
    } else if (!cfg_.by.empty()) {
      throw ArgumentError("--by must be leadtime or basetime");
    }
    opts.lead = LeadTime::from_hours(cfg_.lead.value_or(1.0));
    opts.all = cfg_.all;
    opts.numobs = cfg_.numobs;
    opts.grid = cfg_.grid;
    bool any = false;
    for (const auto& table : data.forecasts()) {
      if (!cfg_.model.empty() && table.model_name() != cfg_.model) continue;
      any = true;
      const auto art =
          plot::plot_forecasts(table, opts, &data.observations(), dir / ("forecasts_" + table.model_name() + ".svg"));
      out_ << "wrote " << art.output_path.filename().string() << "\n";
    }
    if (!any) throw ArgumentError("no model named '" + cfg_.model + "'");
  }

  // eval-marginal reads the full dataset: --lead here selects nothing,
  // lead-time grouping is --by-lead-time.
  void eval_marginal() const {
    if (cfg_.data_dir.empty()) throw ArgumentError("--data is required");
    const auto data = load_from_csv_dir(cfg_.data_dir);
    MarginalOptions opts;
    opts.metric = parse_metric(cfg_.metric);
    opts.by_lead_time = cfg_.by_lead_time;
    opts.include_reference = !cfg_.no_reference;
    opts.crps_estimator = cfg_.fair ? CrpsEstimator::fair : CrpsEstimator::empirical;
    opts.bandwidth = cfg_.bandwidth;
    const auto rows = evaluate_marginal_distribution(data, opts);
    out_ << report::format_marginal(rows);
    if (const auto dir = out_dir(false)) {
      const std::string stem = "marginal_" + std::string(metric_name(opts.metric));
      write(*dir / (stem + ".csv"), report::marginal_to_csv(rows));
      if (opts.by_lead_time) plot::plot_score_by_leadtime(rows, *dir / ("score_by_leadtime_" + std::string(metric_name(opts.metric)) + ".svg"));
    }
  }

  void eval_joint() const {
    if (cfg_.data_dir.empty()) throw ArgumentError("--data is required");
    const auto data = load_from_csv_dir(cfg_.data_dir);
    JointOptions opts;
    opts.by_base_time = true;
    opts.aggregate = cfg_.aggregate;
    opts.p = cfg_.p;
    if (cfg_.weights == "uniform") {
      opts.weights = VariogramWeighting::uniform;
    } else if (cfg_.weights == "inverse-distance" || cfg_.weights == "inverse_distance") {
      opts.weights = VariogramWeighting::inverse_distance;
    } else {
      throw ArgumentError("--weights must be uniform or inverse-distance");
    }
    opts.on_warning = [this](const std::string& w) { err_ << "warning: " << w << "\n"; };
    const auto rows = evaluate_joint_distribution(data, opts);
    out_ << report::format_joint(rows);
    if (const auto dir = out_dir(false)) {
      write(*dir / (cfg_.aggregate ? "joint_vars_aggregate.csv" : "joint_vars.csv"), report::joint_to_csv(rows));
      if (!cfg_.aggregate) plot::plot_variogram_scores(rows, *dir / "variogram_scores.svg");
    }
  }

  void rank_hist() const {
    const auto data = dataset();
    const auto hists = rank_histogram_list(data, cfg_.bins, cfg_.seed);
    out_ << report::format_histograms(hists);
    if (const auto dir = out_dir(false)) {
      for (const auto& h : hists) {
        write(*dir / ("rank_histogram_" + h.model + ".csv"), report::histogram_to_csv(h.value));
        plot::plot_rank_histogram(h.value, h.model, *dir / ("rank_histogram_" + h.model + ".svg"));
      }
    }
  }

  EventSpec event_spec(const EvaluationDataset& data) const {
    const bool has_range = !cfg_.range.empty();
    if (has_range == cfg_.change.has_value()) throw ArgumentError("give exactly one of --range or --change");
    if (cfg_.window.has_value() == cfg_.window_hours.has_value()) {
      throw ArgumentError("give exactly one of --window or --window-hours");
    }
    std::size_t window = 0;
    if (cfg_.window) {
      window = *cfg_.window;
    } else {
      std::optional<std::chrono::seconds> step;
      for (const auto& t : data.forecasts()) {
        const auto s = aligned_time_step(t, data.observations());
        if (!s) continue;
        if (step && *step != *s) throw DataError("models have different time steps; use --window");
        step = s;
      }
      if (!step) throw DataError("cannot infer the time step for --window-hours");
      const double points = *cfg_.window_hours * 3600.0 / static_cast<double>(step->count());
      window = static_cast<std::size_t>(std::max(1.0, std::round(points)));
    }
    if (has_range) {
      const auto comma = cfg_.range.find(',');
      if (comma == std::string::npos) throw ArgumentError("--range must be lo,hi");
      return EventSpec::range(parse_bound(cfg_.range.substr(0, comma)), parse_bound(cfg_.range.substr(comma + 1)),
                              window);
    }
    return EventSpec::change(*cfg_.change, window);
  }

  PerModel<EventDetectionTable> event_tables() const {
    if (!cfg_.events_dir.empty()) {
      if (!cfg_.data_dir.empty()) throw ArgumentError("give either --events or --data, not both");
      return load_event_tables_dir(cfg_.events_dir);
    }
    const auto data = dataset();
    return event_detection_table(data, event_spec(data));
  }

  void detect_events() const {
    const auto data = dataset();
    const auto tables = event_detection_table(data, event_spec(data));
    const auto dir = *out_dir(true);
    write_event_tables_dir(tables, dir);
    for (const auto& t : tables) {
      out_ << "$" << t.model << " (" << t.value.size() << " windows)\n" << report::format_event_table_head(t.value);
      out_ << "\n";
    }
  }

  void roc() const {
    const auto curves = roc_curve_list(event_tables());
    out_ << report::format_roc(curves);
    if (const auto dir = out_dir(false)) {
      for (const auto& c : curves) {
        write(*dir / ("roc_" + c.model + ".csv"), report::roc_to_csv(c.value));
        plot::plot_roc(c.value, c.model, *dir / ("roc_" + c.model + ".svg"));
      }
    }
  }

  void reliability() const {
    const auto data = reliability_diagram_list(event_tables());
    out_ << report::format_reliability(data);
    if (const auto dir = out_dir(false)) {
      for (const auto& d : data) {
        write(*dir / ("reliability_" + d.model + ".csv"), report::reliability_to_csv(d.value));
        plot::plot_reliability(d.value, d.model, *dir / ("reliability_" + d.model + ".svg"));
      }
    }
  }

  void brier() const {
    const auto tables = event_tables();
    const auto decomposition = brier_decomposition_list(tables);
    PerModel<double> scores;
    for (const auto& d : decomposition) scores.push_back({d.model, d.value.bs});
    out_ << report::format_brier(scores);
    if (const auto dir = out_dir(false)) write(*dir / "brier.csv", report::brier_to_csv(decomposition));
  }

  void contingency() const {
    const auto tables = contingency_table_list(event_tables(), cfg_.threshold);
    out_ << report::format_contingency(tables);
    if (const auto dir = out_dir(false)) write(*dir / "contingency.csv", report::contingency_to_csv(tables));
  }

  void generate() const {
    const auto dir = *out_dir(true);
    auto spec = datagen::default_scenario();
    spec.days = cfg_.days;
    spec.obs_step_hours = cfg_.obs_step;
    spec.issue_step_hours = cfg_.issue_step;
    spec.horizon_hours = cfg_.horizon;
    spec.members = cfg_.members;
    spec.seed = cfg_.seed.value_or(1);
    if (!cfg_.profiles.empty()) {
      spec.models.clear();
      for (const auto& p : cfg_.profiles) spec.models.push_back(parse_profile(p));
    }
    const auto data = datagen::generate_to_dir(spec, dir);
    out_ << "wrote " << data.observations().size() << " observations and " << data.forecasts().size()
         << " forecast tables to " << dir.string() << "\n";
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Evaluate ensemble forecasts against observations", "evalcast"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto data_opt = [&](CLI::App* sub) {
    sub->add_option("--data", cfg.data_dir, "Dataset directory (observations.csv + <model>.csv)");
  };
  auto out_opt = [&](CLI::App* sub, const std::string& what) { sub->add_option("--out", cfg.out_dir, what); };
  auto lead_opt = [&](CLI::App* sub, const std::string& what) { sub->add_option("--lead", cfg.lead, what); };
  auto event_opts = [&](CLI::App* sub) {
    sub->add_option("--events", cfg.events_dir, "Directory of event detection tables");
    data_opt(sub);
    lead_opt(sub, "Subset to this lead time (hours) before detection");
    sub->add_option("--range", cfg.range, "Range event lo,hi (open interval; inf allowed)");
    sub->add_option("--change", cfg.change, "Change event: signed change c");
    sub->add_option("--window", cfg.window, "Window length in data points")->check(CLI::PositiveNumber);
    sub->add_option("--window-hours", cfg.window_hours, "Window length in hours")->check(CLI::PositiveNumber);
  };

  auto* summary = app.add_subcommand("summary", "Print the head and summary statistics of a dataset");
  data_opt(summary);

  auto* plot_obs = app.add_subcommand("plot-obs", "Plot the observation series");
  data_opt(plot_obs);
  out_opt(plot_obs, "Output directory");
  plot_obs->add_flag("--all", cfg.all, "Plot every observation");
  plot_obs->add_option("--numobs", cfg.numobs, "Number of observations to plot (default 100)");
  plot_obs->add_flag("--grid", cfg.grid, "Draw grid lines");

  auto* plot_fc = app.add_subcommand("plot-forecasts", "Fan charts of the forecast ensembles");
  data_opt(plot_fc);
  out_opt(plot_fc, "Output directory");
  plot_fc->add_option("--model", cfg.model, "Only this model");
  plot_fc->add_option("--by", cfg.by, "leadtime or basetime");
  lead_opt(plot_fc, "Lead time in hours for --by leadtime (default 1)");
  plot_fc->add_flag("--all", cfg.all, "Plot every timestamp");
  plot_fc->add_option("--numobs", cfg.numobs, "Timestamps to plot when --all is not set");
  plot_fc->add_flag("--grid", cfg.grid, "Draw grid lines");

  auto* marginal = app.add_subcommand("eval-marginal", "CRPS or LogS of every marginal forecast");
  data_opt(marginal);
  out_opt(marginal, "Directory for the CSV table and plot");
  marginal->add_option("--metric", cfg.metric, "CRPS (default) or LogS");
  marginal->add_flag("--by-lead-time", cfg.by_lead_time, "Average per lead time");
  marginal->add_flag("--no-reference", cfg.no_reference, "Omit the climatology reference row");
  marginal->add_flag("--fair", cfg.fair, "Use the fair CRPS estimator");
  marginal->add_option("--bandwidth", cfg.bandwidth, "KDE bandwidth for LogS (default: Silverman)");

  auto* joint = app.add_subcommand("eval-joint", "Variogram score per model and base time");
  data_opt(joint);
  out_opt(joint, "Directory for the CSV table and plot");
  joint->add_flag("--by-base-time", cfg.by_base_time, "Group forecasts by base time (the only grouping)");
  joint->add_flag("--aggregate", cfg.aggregate, "Mean score over forecasts of maximal dimension");
  joint->add_option("--p", cfg.p, "Variogram order (default 0.5)");
  joint->add_option("--weights", cfg.weights, "uniform or inverse-distance");

  auto* rank = app.add_subcommand("rank-hist", "Transformed rank histograms");
  data_opt(rank);
  out_opt(rank, "Directory for CSV and plots");
  lead_opt(rank, "Subset to this lead time (hours) first");
  rank->add_option("--bins", cfg.bins, "Number of bins (default 10)");
  rank->add_option("--seed", cfg.seed, "RNG seed");

  auto* detect = app.add_subcommand("detect-events", "Build event detection tables");
  event_opts(detect);
  out_opt(detect, "Directory for the detection tables");

  auto* roc = app.add_subcommand("roc", "ROC curves and AUC");
  event_opts(roc);
  out_opt(roc, "Directory for CSV and plots");

  auto* rel = app.add_subcommand("reliability", "Reliability diagrams");
  event_opts(rel);
  out_opt(rel, "Directory for CSV and plots");

  auto* brier = app.add_subcommand("brier", "Brier scores");
  event_opts(brier);
  out_opt(brier, "Directory for the CSV table");

  auto* cont = app.add_subcommand("contingency", "Contingency tables");
  event_opts(cont);
  out_opt(cont, "Directory for the CSV table");
  cont->add_option("--threshold", cfg.threshold, "Fraction of members required (default 0.5)");

  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset");
  out_opt(gen, "Output directory");
  gen->add_option("--days", cfg.days, "Length of the observation period");
  gen->add_option("--obs-step", cfg.obs_step, "Observation step in hours");
  gen->add_option("--issue-step", cfg.issue_step, "Forecast issue interval in hours");
  gen->add_option("--horizon", cfg.horizon, "Forecast horizon in hours");
  gen->add_option("--members", cfg.members, "Ensemble size");
  gen->add_option("--seed", cfg.seed, "RNG seed (default 1)");
  gen->add_option("--model", cfg.profiles, "Profile name:noise:bias:dispersion:faithful|shuffled (repeatable)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  Runner runner(cfg, out, err);
  try {
    if (summary->parsed()) runner.summary();
    if (plot_obs->parsed()) runner.plot_obs();
    if (plot_fc->parsed()) runner.plot_forecasts();
    if (marginal->parsed()) runner.eval_marginal();
    if (joint->parsed()) runner.eval_joint();
    if (rank->parsed()) runner.rank_hist();
    if (detect->parsed()) runner.detect_events();
    if (roc->parsed()) runner.roc();
    if (rel->parsed()) runner.reliability();
    if (brier->parsed()) runner.brier();
    if (cont->parsed()) runner.contingency();
    if (gen->parsed()) runner.generate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace evalcast::cli
