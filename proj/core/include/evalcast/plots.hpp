#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evalcast/calibration.hpp"
#include "evalcast/dataset.hpp"
#include "evalcast/events.hpp"
#include "evalcast/scores.hpp"

namespace evalcast::plot {

enum class PlotKind { observations, forecast_fan, score_by_leadtime, variogram_scores, rank_histogram, reliability, roc };

std::string_view kind_name(PlotKind kind);

enum class MarkType {
  line,    // polyline through (x, y)
  points,  // markers at (x, y)
  band,    // filled area between y and y2 over x
  bar,     // rectangle [x, x2] x [0, y]
  hline,   // horizontal line at y[0]
};

std::string_view mark_type_name(MarkType type);

/// One drawable element. Vectors are parallel; unused ones stay empty.
struct Mark {
  MarkType type = MarkType::line;
  std::string series;
  std::vector<double> x, y, x2, y2;

  friend bool operator==(const Mark&, const Mark&) = default;
};

struct Figure {
  PlotKind kind = PlotKind::observations;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool x_is_time = false;  // x holds seconds since the epoch
  bool grid = false;
  std::optional<std::pair<double, double>> x_range;
  std::optional<std::pair<double, double>> y_range;
  std::vector<Mark> marks;
  std::vector<std::string> notes;  // text drawn in the upper-left corner
};

inline constexpr int kCanvasWidth = 960;
inline constexpr int kCanvasHeight = 480;

/// Deterministic SVG 1.1 document for the figure.
std::string render_svg(const Figure& figure);

/// CSV of every mark value: `mark,series,index,x,y,x2,y2` with NA for unused.
std::string sidecar_csv(const Figure& figure);
std::vector<Mark> read_sidecar(const std::filesystem::path& file);

struct PlotArtifact {
  PlotKind kind = PlotKind::observations;
  std::filesystem::path output_path;
  std::optional<std::filesystem::path> data_sidecar;
  Figure figure;
};

/// Writes `<path>` (SVG) and, if requested, `<path stem>.csv` next to it.
PlotArtifact write_figure(const Figure& figure, const std::filesystem::path& path, bool with_sidecar = true);

struct ObservationPlotOptions {
  bool all = false;
  std::size_t numobs = 100;
  bool grid = false;
};

PlotArtifact plot_observations(const ObservationSeries& obs, const ObservationPlotOptions& options,
                               const std::filesystem::path& path);

enum class ForecastSelection { leadtime, basetime };

struct ForecastPlotOptions {
  std::optional<ForecastSelection> by;  // absent: overlapping rows removed first
  LeadTime lead{1.0};
  bool all = false;
  std::size_t numobs = 100;  // timestamps shown when not `all`
  bool grid = false;
};

/// Fan chart of the 5/25/50/75/95% member quantiles per valid time, with an
/// optional observation overlay.
PlotArtifact plot_forecasts(const EnsembleForecastTable& forecast, const ForecastPlotOptions& options,
                            const ObservationSeries* overlay, const std::filesystem::path& path);

PlotArtifact plot_score_by_leadtime(const std::vector<MarginalScoreRow>& rows, const std::filesystem::path& path);

/// Per-model VarS over base time, restricted to the maximal dimension.
PlotArtifact plot_variogram_scores(const std::vector<JointScoreRow>& rows, const std::filesystem::path& path);

PlotArtifact plot_rank_histogram(const RankHistogram& hist, const std::string& model,
                                 const std::filesystem::path& path);

PlotArtifact plot_reliability(const ReliabilityDiagramData& data, const std::string& model,
                              const std::filesystem::path& path);

PlotArtifact plot_roc(const RocCurve& curve, const std::string& model, const std::filesystem::path& path);

/// AUC annotation text as drawn on ROC plots.
std::string auc_label(double auc);

}  // namespace evalcast::plot
