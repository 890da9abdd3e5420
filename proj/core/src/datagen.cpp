#include "evalcast/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "evalcast/error.hpp"
#include "evalcast/random.hpp"

namespace evalcast::datagen {

namespace {

// Stream ids; base-time streams are offset by the base time's grid index.
constexpr std::uint64_t kTruthStream = 0;
constexpr std::uint64_t kMemberStream = 1ULL << 32;
constexpr std::uint64_t kErrorStream = 2ULL << 32;
constexpr std::uint64_t kShuffleStream = 3ULL << 32;

bool is_multiple(double value, double step) {
  const double q = value / step;
  return std::abs(q - std::round(q)) < 1e-9;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

void ScenarioSpec::validate() const {
  if (days <= 0) throw ArgumentError("scenario: days must be positive");
  if (!(obs_step_hours > 0) || !(issue_step_hours > 0)) throw ArgumentError("scenario: time steps must be positive");
  if (!is_multiple(issue_step_hours, obs_step_hours)) {
    throw ArgumentError("scenario: issue step must be a multiple of the observation step");
  }
  if (horizon_hours < issue_step_hours) throw ArgumentError("scenario: horizon must be at least the issue step");
  if (horizon_hours < obs_step_hours) throw ArgumentError("scenario: horizon must cover one observation step");
  if (members < 2) throw ArgumentError("scenario: ensembles need at least 2 members");
  if (!(hourly_persistence > 0 && hourly_persistence < 1)) {
    throw ArgumentError("scenario: persistence must lie in (0, 1)");
  }
  if (!(hourly_innovation_sd > 0)) throw ArgumentError("scenario: innovation sd must be positive");
  if (models.empty()) throw ArgumentError("scenario: at least one model profile is required");
  std::set<std::string> names;
  for (const auto& m : models) {
    if (m.name.empty() || m.name == "observations") throw ArgumentError("scenario: invalid model name '" + m.name + "'");
    if (!names.insert(m.name).second) throw ArgumentError("scenario: duplicate model name '" + m.name + "'");
    if (!(m.noise_scale >= 0)) throw ArgumentError("scenario: noise scale must be non-negative");
    if (!(m.dispersion > 0)) throw ArgumentError("scenario: dispersion must be positive");
    if (!std::isfinite(m.bias)) throw ArgumentError("scenario: bias must be finite");
  }
}

ScenarioSpec default_scenario() {
  ScenarioSpec spec;
  spec.models = {
      ModelProfile{"Model1", 1.2, 0.0, 1.0, CorrelationFidelity::shuffled},
      ModelProfile{"Model2", 0.4, 0.0, 1.0, CorrelationFidelity::faithful},
  };
  return spec;
}

EvaluationDataset generate(const ScenarioSpec& spec) {
  spec.validate();
  const double step_h = spec.obs_step_hours;
  const double phi = std::pow(spec.hourly_persistence, step_h);
  const double rho2 = spec.hourly_persistence * spec.hourly_persistence;
  const double sigma = spec.hourly_innovation_sd * std::sqrt((1.0 - phi * phi) / (1.0 - rho2));
  const double stationary_sd = spec.hourly_innovation_sd / std::sqrt(1.0 - rho2);
  const double mu = spec.mean_level;
  const auto step = hours_to_seconds(step_h);

  const auto n_obs = static_cast<std::size_t>(std::floor(spec.days * 24.0 / step_h + 1e-9)) + 1;
  const auto issue_every = static_cast<std::size_t>(std::llround(spec.issue_step_hours / step_h));
  const auto leads = static_cast<std::size_t>(std::floor(spec.horizon_hours / step_h + 1e-9));
  const auto m = static_cast<std::size_t>(spec.members);

  // Truth, kept unrounded for forecast initialisation.
  std::vector<double> truth(n_obs);
  {
    rng::Stream s(spec.seed, kTruthStream);
    truth[0] = std::max(0.0, mu + stationary_sd * s.normal());
    for (std::size_t t = 1; t < n_obs; ++t) truth[t] = std::max(0.0, mu + phi * (truth[t - 1] - mu) + sigma * s.normal());
  }
  std::vector<Observation> obs(n_obs);
  for (std::size_t t = 0; t < n_obs; ++t) obs[t] = {spec.start + step * static_cast<std::int64_t>(t), round2(truth[t])};

  std::vector<std::string> member_names;
  for (std::size_t k = 0; k < m; ++k) member_names.push_back("m" + std::to_string(k + 1));

  std::vector<std::vector<ForecastRow>> rows(spec.models.size());
  std::vector<double> innovations(m * leads);
  std::vector<double> error_path(leads);
  std::vector<double> values(m * leads);
  std::vector<std::size_t> perm(m);

  for (std::size_t b = 0; b < n_obs; b += issue_every) {
    const Instant base = spec.start + step * static_cast<std::int64_t>(b);
    {
      rng::Stream s(spec.seed, kMemberStream + b);
      for (auto& v : innovations) v = s.normal();
    }
    {
      rng::Stream s(spec.seed, kErrorStream + b);
      double e = 0.0;
      for (auto& v : error_path) {
        e = phi * e + sigma * s.normal();
        v = e;
      }
    }
    for (std::size_t p = 0; p < spec.models.size(); ++p) {
      const auto& profile = spec.models[p];
      for (std::size_t k = 0; k < m; ++k) {
        double x = truth[b];
        for (std::size_t h = 0; h < leads; ++h) {
          x = std::max(0.0, mu + phi * (x - mu) + profile.dispersion * sigma * innovations[k * leads + h]);
          values[h * m + k] = round2(std::max(0.0, x + profile.bias + profile.noise_scale * error_path[h]));
        }
      }
      if (profile.fidelity == CorrelationFidelity::shuffled) {
        rng::Stream s(spec.seed, kShuffleStream + b * spec.models.size() + p);
        for (std::size_t h = 0; h < leads; ++h) {
          std::iota(perm.begin(), perm.end(), std::size_t{0});
          for (std::size_t i = m - 1; i > 0; --i) std::swap(perm[i], perm[s.below(i + 1)]);
          std::vector<double> row(values.begin() + static_cast<std::ptrdiff_t>(h * m),
                                  values.begin() + static_cast<std::ptrdiff_t>((h + 1) * m));
          for (std::size_t k = 0; k < m; ++k) values[h * m + k] = row[perm[k]];
        }
      }
      for (std::size_t h = 0; h < leads; ++h) {
        ForecastRow row;
        row.base_time = base;
        row.valid_time = base + step * static_cast<std::int64_t>(h + 1);
        row.members.assign(values.begin() + static_cast<std::ptrdiff_t>(h * m),
                           values.begin() + static_cast<std::ptrdiff_t>((h + 1) * m));
        rows[p].push_back(std::move(row));
      }
    }
  }

  std::vector<EnsembleForecastTable> tables;
  for (std::size_t p = 0; p < spec.models.size(); ++p) {
    tables.emplace_back(spec.models[p].name, member_names, std::move(rows[p]));
  }
  return EvaluationDataset(std::move(tables), ObservationSeries(std::move(obs)));
}

EvaluationDataset generate_to_dir(const ScenarioSpec& spec, const std::filesystem::path& dir) {
  auto data = generate(spec);
  write_to_csv_dir(data, dir);
  return data;
}

}  // namespace evalcast::datagen
