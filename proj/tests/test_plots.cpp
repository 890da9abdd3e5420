#include <gtest/gtest.h>

#include "evalcast/datagen.hpp"
#include "evalcast/plots.hpp"
#include "support.hpp"

namespace evalcast {
namespace {

datagen::ScenarioSpec small_spec() {
  auto spec = datagen::default_scenario();
  spec.days = 3;
  spec.horizon_hours = 12;
  spec.members = 6;
  return spec;
}

TEST(Plots, SidecarRoundTrip) {
  test::TempDir dir("plots");
  const auto data = datagen::generate(small_spec());
  const auto art = plot::plot_forecasts(data.forecasts()[0], {}, &data.observations(), dir / "fan.svg");
  ASSERT_TRUE(art.data_sidecar);
  EXPECT_TRUE(std::filesystem::exists(art.output_path));
  EXPECT_EQ(plot::read_sidecar(*art.data_sidecar), art.figure.marks);
  ASSERT_EQ(art.figure.marks.size(), 4u);
  EXPECT_EQ(art.figure.marks[0].series, "5-95%");
  EXPECT_EQ(art.figure.marks[3].series, "obs");
}

TEST(Plots, OutputIsByteDeterministic) {
  test::TempDir a("plot_a"), b("plot_b");
  const auto data = datagen::generate(small_spec());
  plot::plot_observations(data.observations(), {true, 100, true}, a / "obs.svg");
  plot::plot_observations(data.observations(), {true, 100, true}, b / "obs.svg");
  EXPECT_EQ(test::read_text(a / "obs.svg"), test::read_text(b / "obs.svg"));
  EXPECT_EQ(test::read_text(a / "obs.svg.csv"), test::read_text(b / "obs.svg.csv"));
  const auto svg = test::read_text(a / "obs.svg");
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Plots, ObservationCountHonoursNumobs) {
  test::TempDir dir("numobs");
  const auto data = datagen::generate(small_spec());
  const auto art = plot::plot_observations(data.observations(), {false, 10, false}, dir / "o.svg");
  EXPECT_EQ(art.figure.marks.front().x.size(), 10u);
  const auto all = plot::plot_observations(data.observations(), {true, 10, false}, dir / "p.svg");
  EXPECT_EQ(all.figure.marks.front().x.size(), data.observations().size());
}

TEST(Plots, RocAndReliabilityCarryReferenceLines) {
  test::TempDir dir("roc");
  RocCurve curve{{{3, 0.0, 0.0}, {2, 0.2, 0.6}, {1, 0.5, 0.9}, {0, 1.0, 1.0}}, 0.0};
  curve.auc = 0.5 * 0.2 * 0.6 + 0.3 * 0.5 * 1.5 + 0.5 * 0.5 * 1.9;
  const auto roc = plot::plot_roc(curve, "M", dir / "roc.svg");
  EXPECT_EQ(roc.figure.marks.front().series, "chance");
  ASSERT_FALSE(roc.figure.notes.empty());
  EXPECT_EQ(roc.figure.notes.front(), plot::auc_label(curve.auc));
  EXPECT_EQ(plot::auc_label(0.73555), "AUC = 0.736");

  const auto rel = plot::plot_reliability(reliability_bins({{0.1, 0}, {0.9, 1}}), "M", dir / "rel.svg");
  EXPECT_EQ(rel.figure.marks.front().series, "diagonal");
}

TEST(Plots, ScoreByLeadTimeDrawsReferenceAsLevel) {
  test::TempDir dir("score");
  std::vector<MarginalScoreRow> rows{{"A", 1.0, MarginalMetric::crps, 0.5},
                                     {"A", 2.0, MarginalMetric::crps, 0.7},
                                     {std::string(kReferenceModel), std::nullopt, MarginalMetric::crps, 1.0}};
  const auto art = plot::plot_score_by_leadtime(rows, dir / "s.svg");
  bool has_hline = false;
  for (const auto& m : art.figure.marks) has_hline |= (m.type == plot::MarkType::hline && m.series == kReferenceModel);
  EXPECT_TRUE(has_hline);
}

}  // namespace
}  // namespace evalcast
