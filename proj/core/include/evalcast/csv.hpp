#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evalcast::csv {

/// A parsed comma-separated file: header plus raw cell text per record.
/// Quoting is not supported; cells are trimmed of surrounding blanks.
struct Document {
  std::filesystem::path source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;
  // 1-based line number of each record in the file, for diagnostics.
  std::vector<std::size_t> line_numbers;
};

/// Reads a UTF-8 CSV file (LF or CRLF). Blank lines are skipped. Throws
/// DataError when the file cannot be opened, is empty, or a record has a
/// different number of cells from the header.
Document read(const std::filesystem::path& path);

std::vector<std::string> split_line(std::string_view line);

/// Parses a finite double; `nullopt` for anything else (including empty).
std::optional<double> parse_number(std::string_view cell);

/// True for an empty cell or the literal `NA`.
bool is_missing(std::string_view cell);

/// Shortest round-tripping decimal representation.
std::string format_number(double v);

/// Writes `content` to `path` through a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace evalcast::csv
