#include "evalcast/time.hpp"

#include <cctype>
#include <cstdio>

namespace evalcast {

namespace {

// Reads exactly `width` digits starting at `pos`.
bool read_digits(std::string_view s, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Instant> parse_instant(std::string_view text) {
  using namespace std::chrono;
  const std::string_view s = trim(text);

  int year = 0, month = 0, day = 0;
  if (!read_digits(s, 0, 4, year) || s.size() < 10 || s[4] != '-' || !read_digits(s, 5, 2, month) ||
      s[7] != '-' || !read_digits(s, 8, 2, day)) {
    return std::nullopt;
  }
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;

  int hour = 0, minute = 0, second = 0;
  std::size_t pos = 10;
  if (pos < s.size() && (s[pos] == ' ' || s[pos] == 'T')) {
    ++pos;
    if (!read_digits(s, pos, 2, hour) || pos + 2 >= s.size() || s[pos + 2] != ':' ||
        !read_digits(s, pos + 3, 2, minute)) {
      return std::nullopt;
    }
    pos += 5;
    if (pos < s.size() && s[pos] == ':') {
      if (!read_digits(s, pos + 1, 2, second)) return std::nullopt;
      pos += 3;
    }
    if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
  }

  seconds offset{0};
  if (pos < s.size()) {
    const std::string_view tz = s.substr(pos);
    if (tz == "Z" || tz == "UTC" || tz == " UTC") {
      // UTC
    } else if ((tz[0] == '+' || tz[0] == '-') && tz.size() == 6 && tz[3] == ':') {
      int oh = 0, om = 0;
      if (!read_digits(tz, 1, 2, oh) || !read_digits(tz, 4, 2, om)) return std::nullopt;
      offset = hours(oh) + minutes(om);
      if (tz[0] == '-') offset = -offset;
    } else {
      return std::nullopt;
    }
  }

  return Instant{sys_days{ymd}} + hours(hour) + minutes(minute) + seconds(second) - offset;
}

std::string format_instant(Instant t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const hh_mm_ss hms{t - day_start};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02ld:%02ld:%02ld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

std::string format_instant_compact(Instant t) {
  using namespace std::chrono;
  if (floor<days>(t) == t) return format_instant(t).substr(0, 10);
  return format_instant(t);
}

}  // namespace evalcast
