#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opengrid/error.hpp"

// Minimal RFC 4180 reader/writer: comma delimiter, '"' quoting with doubled
// quotes, header row required. Record numbers count the header as 1, so the
// first data row is record 2.
namespace opengrid::csv {

struct Record {
  std::size_t number = 0;
  std::vector<std::string> fields;
};

class Table {
 public:
  static Table read(std::istream& in, std::string source);
  static Table read_file(const std::string& path);

  const std::string& source() const { return source_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Record>& records() const { return records_; }

  std::optional<std::size_t> find_column(std::string_view name) const;
  // Throws MissingColumn naming the file.
  std::size_t column(std::string_view name) const;

  // Field accessor tolerant of short rows (missing trailing optional cells).
  std::string_view field(const Record& rec, std::size_t col) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Record> records_;
};

double parse_number(std::string_view text, ErrorCode on_error, const Table& table,
                    const Record& rec, std::string_view column);
long long parse_integer(std::string_view text, const Table& table, const Record& rec,
                        std::string_view column);

// Shortest decimal form that round-trips, so output is byte-stable.
std::string format_number(double value);

std::string quote(std::string_view field);
void write_row(std::ostream& out, std::span<const std::string> fields);
void write_row(std::ostream& out, std::initializer_list<std::string> fields);

}  // namespace opengrid::csv
