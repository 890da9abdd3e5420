#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "evalcast/csv.hpp"
#include "evalcast/dataset.hpp"
#include "evalcast/datagen.hpp"
#include "support.hpp"

namespace evalcast {
namespace {

using test::at;

TEST(Time, ParsesCommonForms) {
  EXPECT_EQ(at("2024-09-01"), at("2024-09-01 00:00:00"));
  EXPECT_EQ(at("2024-09-01T05:30"), at("2024-09-01 05:30:00"));
  EXPECT_EQ(at("2024-09-01T05:30:00Z"), at("2024-09-01 05:30"));
  EXPECT_EQ(at("2024-09-01T07:30:00+02:00"), at("2024-09-01 05:30"));
  EXPECT_FALSE(parse_instant("2024-13-01"));
  EXPECT_FALSE(parse_instant("yesterday"));
  EXPECT_EQ(format_instant(at("2024-02-29 23:59:59")), "2024-02-29 23:59:59");
  EXPECT_EQ(format_instant_compact(at("2024-02-29")), "2024-02-29");
}

TEST(Csv, ReadsBomCrlfAndBlankLines) {
  test::TempDir dir("csv");
  test::write_text(dir / "a.csv", "\xEF\xBB\xBFTimeStamp,obs\r\n2024-01-01 00:00,1.5\r\n\r\n2024-01-01 01:00,NA\r\n");
  const auto doc = csv::read(dir / "a.csv");
  EXPECT_EQ(doc.header, (std::vector<std::string>{"TimeStamp", "obs"}));
  ASSERT_EQ(doc.records.size(), 2u);
  EXPECT_EQ(doc.line_numbers[1], 4u);
  EXPECT_TRUE(csv::is_missing(doc.records[1][1]));
}

TEST(Observations, MissingValuesAreCounted) {
  test::TempDir dir("obs");
  test::write_text(dir / "observations.csv", "TimeStamp,obs\n2024-01-01 01:00,2\n2024-01-01 00:00,1\n2024-01-01 02:00,\n");
  const auto obs = load_observations_csv(dir / "observations.csv");
  EXPECT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs.missing_values(), 1u);
  EXPECT_EQ(obs.rows().front().time, at("2024-01-01"));
  EXPECT_EQ(obs.at(at("2024-01-01 01:00")), 2.0);
  EXPECT_FALSE(obs.at(at("2024-01-01 02:00")));
}

TEST(Observations, RejectsBadInput) {
  test::TempDir dir("obsbad");
  test::write_text(dir / "a.csv", "time,obs\n2024-01-01,1\n");
  EXPECT_THROW(load_observations_csv(dir / "a.csv"), DataError);
  test::write_text(dir / "b.csv", "TimeStamp,obs\n2024-01-01,1\n2024-01-01,2\n");
  EXPECT_THROW(load_observations_csv(dir / "b.csv"), DataError);
  test::write_text(dir / "c.csv", "TimeStamp,obs\nnot a date,1\n");
  EXPECT_THROW(load_observations_csv(dir / "c.csv"), DataError);
}

TEST(Forecasts, MissingMemberNamesFileLineAndColumn) {
  test::TempDir dir("fc");
  test::write_text(dir / "M.csv", "TimeStamp,BaseTime,a,b\n2024-01-01 01:00,2024-01-01,1,2\n2024-01-01 02:00,2024-01-01,3,\n");
  try {
    load_forecast_csv(dir / "M.csv", "M");
    FAIL();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("M.csv"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'b'"), std::string::npos) << msg;
  }
}

TEST(Forecasts, TableInvariants) {
  const auto t = at("2024-01-01");
  const auto h = std::chrono::hours(1);
  EXPECT_THROW(EnsembleForecastTable("M", {"a"}, {{t + h, t, {1.0}}}), DataError);
  EXPECT_THROW(EnsembleForecastTable("M", {"a", "b"}, {{t + h, t, {1.0}}}), DataError);
  EXPECT_THROW(EnsembleForecastTable("M", {"a", "b"}, {{t, t + h, {1.0, 2.0}}}), DataError);
  EXPECT_THROW(EnsembleForecastTable("M", {"a", "b"}, {{t + h, t, {1.0, 2.0}}, {t + h, t, {1.0, 2.0}}}), DataError);
  EXPECT_THROW(EnsembleForecastTable("M", {"a", "b"}, {{t + h, t, {1.0, 2.0}}, {t + h, std::nullopt, {1.0, 2.0}}}),
               DataError);
  const EnsembleForecastTable ok("M", {"a", "b"}, {{t + 2 * h, t, {1.0, 2.0}}, {t + h, t, {1.0, 2.0}}});
  EXPECT_EQ(ok.rows().front().valid_time, t + h);
  EXPECT_EQ(ok.rows().front().lead_hours(), 1.0);
}

datagen::ScenarioSpec small_spec() {
  auto spec = datagen::default_scenario();
  spec.days = 2;
  spec.horizon_hours = 6;
  spec.members = 4;
  return spec;
}

TEST(Dataset, CsvRoundTripPreservesValues) {
  test::TempDir dir("roundtrip");
  const auto data = datagen::generate_to_dir(small_spec(), dir.path());
  const auto back = load_from_csv_dir(dir.path());
  EXPECT_EQ(back, data);
}

TEST(Dataset, DirectoryErrors) {
  test::TempDir dir("dirs");
  EXPECT_THROW(load_from_csv_dir(dir / "nope"), DataError);
  test::write_text(dir / "observations.csv", "TimeStamp,obs\n2024-01-01,1\n");
  EXPECT_THROW(load_from_csv_dir(dir.path()), DataError);
}

TEST(Subset, KeepsExactlyOneLeadTime) {
  const auto data = datagen::generate(small_spec());
  for (double lead : {1.0, 3.0, 6.0}) {
    const auto sub = make_evaluation_subset(data, LeadTime::from_hours(lead));
    for (const auto& t : sub.forecasts()) {
      std::size_t expected = 0;
      for (const auto& r : data.find(t.model_name())->rows()) expected += (*r.lead_hours() == lead);
      EXPECT_EQ(t.size(), expected);
      for (const auto& r : t.rows()) EXPECT_EQ(*r.lead_hours(), lead);
    }
  }
  EXPECT_THROW(make_evaluation_subset(data, LeadTime::from_hours(7.0)), DataError);
  EXPECT_THROW(LeadTime::from_hours(-1.0), ArgumentError);
}

TEST(Subset, DropsEmptyModels) {
  const auto t = at("2024-01-01");
  const auto h = std::chrono::hours(1);
  EvaluationDataset data({EnsembleForecastTable("A", {"a", "b"}, {{t + h, t, {1.0, 2.0}}}),
                          EnsembleForecastTable("B", {"a", "b"}, {{t + 2 * h, t, {1.0, 2.0}}})},
                         ObservationSeries({{t, 1.0}}));
  const auto sub = make_evaluation_subset(data, LeadTime::from_hours(2.0));
  ASSERT_EQ(sub.forecasts().size(), 1u);
  EXPECT_EQ(sub.dropped_models(), std::vector<std::string>{"A"});
}

TEST(Align, PairsOnlyObservedValidTimes) {
  const auto data = datagen::generate(small_spec());
  const auto& table = data.forecasts().front();
  const auto aligned = align(table, data.observations());
  std::size_t expected = 0;
  for (const auto& r : table.rows()) expected += data.observations().at(r.valid_time).has_value();
  ASSERT_EQ(aligned.size(), expected);
  for (const auto& a : aligned) {
    EXPECT_EQ(a.obs, *data.observations().at(a.valid_time));
    EXPECT_EQ(a.members.data(), table.rows()[a.row_index].members.data());
  }
}

TEST(Dedupe, EarliestBaseTimeWins) {
  const auto data = datagen::generate(small_spec());
  const auto& table = data.forecasts().front();
  const auto d = dedupe_overlapping(table);
  std::set<Instant> valid;
  for (const auto& r : table.rows()) valid.insert(r.valid_time);
  ASSERT_EQ(d.size(), valid.size());
  for (const auto& r : d.rows()) {
    for (const auto& o : table.rows()) {
      if (o.valid_time == r.valid_time) {
        EXPECT_LE(*r.base_time, *o.base_time);
      }
    }
  }
}

TEST(Summary, CountsAndHead) {
  const auto data = datagen::generate(small_spec());
  const auto s = summary_stats(data);
  EXPECT_EQ(s.observation_head.size(), 6u);
  EXPECT_EQ(s.observations.count, 49u);
  ASSERT_EQ(s.models.size(), 2u);
  EXPECT_EQ(s.models[0].stats.number_of_forecasts, data.forecasts()[0].size() * 4);
  EXPECT_EQ(s.models[0].stats.ensemble_size, 4u);
  EXPECT_LE(s.observations.min, s.observations.mean);
  EXPECT_LE(s.observations.mean, s.observations.max);
}

TEST(Datagen, DefaultScenarioShape) {
  const auto data = datagen::generate(datagen::default_scenario());
  EXPECT_EQ(data.observations().size(), 337u);
  ASSERT_EQ(data.forecasts().size(), 2u);
  EXPECT_EQ(data.forecasts()[0].model_name(), "Model1");
  EXPECT_EQ(data.forecasts()[1].model_name(), "Model2");
  // base times every 3 h from start to end inclusive, 48 hourly leads each
  const std::size_t bases = 14 * 24 / 3 + 1;
  for (const auto& t : data.forecasts()) {
    EXPECT_EQ(t.size(), bases * 48);
    EXPECT_EQ(t.member_count(), 20u);
  }
  for (const auto& o : data.observations().rows()) EXPECT_GE(o.value, 0.0);
}

TEST(Datagen, DeterministicPerSeed) {
  auto spec = small_spec();
  EXPECT_EQ(datagen::generate(spec), datagen::generate(spec));
  auto other = spec;
  other.seed = 2;
  EXPECT_NE(datagen::generate(spec).observations(), datagen::generate(other).observations());
}

TEST(Datagen, ValidatesSpec) {
  auto spec = small_spec();
  spec.issue_step_hours = 1.5;
  spec.obs_step_hours = 1.0;
  EXPECT_THROW(spec.validate(), ArgumentError);
  spec = small_spec();
  spec.members = 1;
  EXPECT_THROW(spec.validate(), ArgumentError);
  spec = small_spec();
  spec.models.push_back(spec.models.front());
  EXPECT_THROW(spec.validate(), ArgumentError);
}

TEST(Dataset, ObservationCountMatchesFileLines) {
  test::TempDir dir("lines");
  datagen::generate_to_dir(small_spec(), dir.path());
  const auto text = test::read_text(dir / "observations.csv");
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  EXPECT_EQ(summary_stats(load_from_csv_dir(dir.path())).observations.count, lines - 1);
}

TEST(Align, CountEqualsValidTimeIntersectionAfterDedupe) {
  const auto data = datagen::generate(small_spec());
  const auto d = dedupe_overlapping(data.forecasts().front());
  std::set<Instant> obs_times;
  for (const auto& o : data.observations().rows()) obs_times.insert(o.time);
  std::size_t both = 0;
  for (const auto& r : d.rows()) both += obs_times.count(r.valid_time);
  EXPECT_EQ(align(d, data.observations()).size(), both);
}

}  // namespace
}  // namespace evalcast
