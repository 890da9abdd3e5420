#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evalcast/dataset.hpp"

namespace evalcast::datagen {

enum class CorrelationFidelity {
  faithful,  // each member is one coherent trajectory
  shuffled,  // members are permuted independently at every lead time
};

struct ModelProfile {
  std::string name;
  double noise_scale = 0.0;  // scale of an error path shared by all members
  double bias = 0.0;
  double dispersion = 1.0;   // multiplies the members' innovation scale
  CorrelationFidelity fidelity = CorrelationFidelity::faithful;
};

/// Parameters of the synthetic wind-speed scenario. The truth follows a
/// mean-reverting AR(1) process clipped at zero; the hourly coefficients
/// are rescaled to the observation step.
struct ScenarioSpec {
  Instant start = Instant{std::chrono::sys_days{std::chrono::year{2024} / 9 / 1}};
  int days = 14;
  double obs_step_hours = 1.0;
  double issue_step_hours = 3.0;
  int horizon_hours = 48;
  int members = 20;
  std::uint64_t seed = 1;
  double mean_level = 12.0;
  double hourly_persistence = 0.95;
  double hourly_innovation_sd = 1.0;
  std::vector<ModelProfile> models;

  /// Throws ArgumentError when a field is out of range.
  void validate() const;
};

/// Two models: Model1 noisy with scrambled
/// member trajectories, Model2 close to the truth's own dynamics.
ScenarioSpec default_scenario();

/// Builds the dataset. Identical specs give identical datasets.
///
/// Truth x_t on the observation grid from `start` over `days` (inclusive
/// of the end point). For each base time on the issue grid, member k's
/// path restarts from the truth at the base time and follows the same
/// dynamics with innovations scaled by `dispersion`; `bias` and
/// `noise_scale` times a shared AR error path are added, then values are
/// clipped at 0. A `shuffled` profile permutes members per lead time.
/// Valid times run from one step to `horizon_hours` after the base time and
/// may extend past the observation period.
EvaluationDataset generate(const ScenarioSpec& spec);

/// generate() and write the CSV directory layout.
EvaluationDataset generate_to_dir(const ScenarioSpec& spec, const std::filesystem::path& dir);

}  // namespace evalcast::datagen
