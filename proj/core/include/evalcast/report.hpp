#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evalcast/calibration.hpp"
#include "evalcast/dataset.hpp"
#include "evalcast/events.hpp"
#include "evalcast/scores.hpp"

// Console tables and CSV serialisation of evaluation results.
namespace evalcast::report {

/// A column of pre-formatted cells, right-aligned under its header.
struct Column {
  std::string header;
  std::vector<std::string> cells;
};

/// Whitespace-aligned table in the style of an R data.frame print. With
/// `row_numbers`, a left column counts rows from 1.
std::string format_frame(const std::vector<Column>& columns, bool row_numbers = true);

/// Formats a numeric column: each value gets 7 significant digits and the
/// column shares the largest number of decimals any value needs. Absent
/// values print as NA.
std::vector<std::string> format_numeric_column(const std::vector<std::optional<double>>& values,
                                               int significant = 7);

std::string format_fixed(double v, int decimals);

std::string format_summary(const SummaryReport& report);

std::string format_marginal(const std::vector<MarginalScoreRow>& rows);
std::string marginal_to_csv(const std::vector<MarginalScoreRow>& rows);

/// Aggregated rows (no base time) print as `forecast VarS dimension`.
std::string format_joint(const std::vector<JointScoreRow>& rows);
std::string joint_to_csv(const std::vector<JointScoreRow>& rows);

std::string histogram_to_csv(const RankHistogram& hist);
std::string format_histograms(const PerModel<RankHistogram>& hists);

std::string reliability_to_csv(const ReliabilityDiagramData& data);
std::string format_reliability(const PerModel<ReliabilityDiagramData>& data);

std::string roc_to_csv(const RocCurve& curve);
std::string format_roc(const PerModel<RocCurve>& curves);

std::string format_brier(const PerModel<double>& scores);
std::string brier_to_csv(const PerModel<BrierDecomposition>& scores);

/// `$Model` blocks with `hits misses falsealarms correctnegatives HR FAR`;
/// rates at 3 decimals.
std::string format_contingency(const PerModel<ContingencyTable>& tables);
std::string contingency_to_csv(const PerModel<ContingencyTable>& tables);

std::string format_event_table_head(const EventDetectionTable& table, std::size_t rows = 6);

}  // namespace evalcast::report
