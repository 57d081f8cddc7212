#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mfewave {

/// A CSV table: cells are stored already formatted so that output is
/// byte-stable; numbers use 17 significant digits.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

std::string cell(double v);
std::string cell(long long v);
std::string cell(std::size_t v);
std::string cell(int v);
std::string cell(bool v);

using HeaderEntries = std::vector<std::pair<std::string, std::string>>;

/// `# key = value` lines, a column-header row, then the rows.
std::string render_csv(const HeaderEntries& header, const Table& table);
void write_csv(const std::string& path, const HeaderEntries& header, const Table& table);

struct CsvFile {
  HeaderEntries header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
  /// Numeric column, parsed with strtod.
  std::vector<double> numbers(const std::string& name) const;
};

CsvFile parse_csv(const std::string& text);
CsvFile read_csv(const std::string& path);

/// Row-major matrix of values for a heatmap.
struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Self-contained SVG documents (no external assets, linear colour scale).
std::string render_svg(const Heatmap& map);
std::string render_svg(const LinePlot& plot);
void write_text(const std::string& path, const std::string& text);

}  // namespace mfewave
