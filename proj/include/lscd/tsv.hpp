#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lscd::tsv {

/// A header-led tab-separated table. Rows are padded/validated to header width.
struct Table {
  std::filesystem::path source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
  /// Index of a required column; throws FormatError naming the column and file.
  std::size_t require(std::string_view name) const;
};

/// Parse a UTF-8 TSV file with a header row. An empty file yields an empty table.
/// Rows whose field count differs from the header raise FormatError with the line number.
Table read(const std::filesystem::path& path);
Table parse(std::string_view text, const std::filesystem::path& source = {});

void write(const std::filesystem::path& path, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows);
std::string render(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
/// Strict full-string parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

/// Number of Unicode code points in a UTF-8 string (counts non-continuation bytes).
std::size_t utf8_length(std::string_view s);

}  // namespace lscd::tsv
