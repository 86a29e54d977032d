#include "opengrid/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

namespace opengrid::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const Table& table, const Record& rec, std::string_view column) {
  return table.source() + " row " + std::to_string(rec.number) + " column '" +
         std::string(column) + "'";
}

// Splits the whole document into records. Quoted fields may span lines.
std::vector<std::vector<std::string>> split_records(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  bool row_has_content = false;

  auto end_field = [&] {
    row.push_back(was_quoted ? field : std::string(trim(field)));
    field.clear();
    was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = !row_has_content && row.size() == 1 && row.front().empty();
    if (!blank) out.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        was_quoted = true;
        row_has_content = true;
        field.clear();
        break;
      case ',':
        end_field();
        row_has_content = true;
        break;
      case '\n':
        end_row();
        break;
      case '\r':
        break;
      default:
        if (!was_quoted) field.push_back(c);
        if (c != ' ' && c != '\t') row_has_content = true;
    }
  }
  if (!field.empty() || !row.empty() || was_quoted) end_row();
  return out;
}

}  // namespace

Table Table::read(std::istream& in, std::string source) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);

  Table table;
  table.source_ = std::move(source);
  auto rows = split_records(text);
  if (rows.empty()) {
    throw Error(ErrorCode::MissingColumn, table.source_ + ": header row required");
  }
  table.header_ = std::move(rows.front());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    table.records_.push_back(Record{i + 1, std::move(rows[i])});
  }
  return table;
}

Table Table::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read(in, path);
}

std::optional<std::size_t> Table::find_column(std::string_view name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header_.begin());
}

std::size_t Table::column(std::string_view name) const {
  if (auto col = find_column(name)) return *col;
  throw Error(ErrorCode::MissingColumn,
              source_ + " row 1: missing column '" + std::string(name) + "'");
}

std::string_view Table::field(const Record& rec, std::size_t col) const {
  if (col >= rec.fields.size()) return {};
  return rec.fields[col];
}

double parse_number(std::string_view text, ErrorCode on_error, const Table& table,
                    const Record& rec, std::string_view column) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw Error(on_error, where(table, rec, column) + ": '" + std::string(text) +
                              "' is not a finite number");
  }
  return value;
}

long long parse_integer(std::string_view text, const Table& table, const Record& rec,
                        std::string_view column) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::NonNumericValue,
                where(table, rec, column) + ": '" + std::string(text) + "' is not an integer");
  }
  return value;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << quote(fields[i]);
  }
  out << '\n';
}

void write_row(std::ostream& out, std::initializer_list<std::string> fields) {
  write_row(out, std::span<const std::string>(fields.begin(), fields.size()));
}

}  // namespace opengrid::csv
