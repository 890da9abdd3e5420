#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace evalcast {

/// A UTC instant at one-second resolution.
using Instant = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DD`, `YYYY-MM-DD HH:MM[:SS]` or the same with a `T`
/// separator. A trailing `Z` or `+HH:MM` / `-HH:MM` offset is honoured;
/// without one the wall time is taken as UTC. A bare date is midnight.
std::optional<Instant> parse_instant(std::string_view text);

/// Formats as `YYYY-MM-DD HH:MM:SS` (UTC).
std::string format_instant(Instant t);

/// Formats as `YYYY-MM-DD` when the instant is midnight, else as
/// format_instant. Used for compact base-time columns in console tables.
std::string format_instant_compact(Instant t);

inline double hours_between(Instant from, Instant to) {
  return static_cast<double>((to - from).count()) / 3600.0;
}

inline std::chrono::seconds hours_to_seconds(double hours) {
  return std::chrono::seconds(static_cast<std::int64_t>(hours * 3600.0 + (hours >= 0 ? 0.5 : -0.5)));
}

}  // namespace evalcast
