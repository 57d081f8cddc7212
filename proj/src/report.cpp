#include "mfewave/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mfewave {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("table '" + name + "': row width does not match the columns");
  rows.push_back(std::move(row));
}

std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string cell(long long v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "pass" : "fail"; }

std::string render_csv(const HeaderEntries& header, const Table& table) {
  std::string out;
  for (const auto& [k, v] : header) out += "# " + k + " = " + v + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_csv(const std::string& path, const HeaderEntries& header, const Table& table) {
  write_text(path, render_csv(header, table));
}

std::size_t CsvFile::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> CsvFile::numbers(const std::string& name) const {
  const auto c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(std::strtod(r.at(c).c_str(), nullptr));
  return out;
}

CsvFile parse_csv(const std::string& text) {
  CsvFile f;
  std::stringstream ss(text);
  std::string line;
  bool have_columns = false;
  auto cells = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ls(l);
    std::string c;
    while (std::getline(ls, c, ',')) out.push_back(c);
    if (!l.empty() && l.back() == ',') out.emplace_back();
    return out;
  };
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos) continue;
      f.header.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
      continue;
    }
    if (!have_columns) {
      f.columns = cells(line);
      have_columns = true;
    } else {
      f.rows.push_back(cells(line));
    }
  }
  return f;
}

CsvFile read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0, kRight = 110.0, kTop = 40.0, kBottom = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// blue - white - red for signed data, white - dark blue for non-negative data
std::string colour(double t, bool diverging) {
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (diverging) {
    if (t < 0.5) {
      const double a = t / 0.5;
      r = static_cast<int>(40 + a * 215);
      g = static_cast<int>(70 + a * 185);
      b = 255;
    } else {
      const double a = (t - 0.5) / 0.5;
      r = 255;
      g = static_cast<int>(255 - a * 205);
      b = static_cast<int>(255 - a * 215);
    }
  } else {
    r = static_cast<int>(255 - t * 235);
    g = static_cast<int>(255 - t * 200);
    b = static_cast<int>(255 - t * 100);
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string frame(const std::string& title, const std::string& xl, const std::string& yl) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) +
                  "\" height=\"" + px(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + px(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(title) + "</text>\n";
  s += "<text x=\"" + px(kLeft + (kWidth - kLeft - kRight) / 2) + "\" y=\"" +
       px(kHeight - 15) + "\" text-anchor=\"middle\">" + escape(xl) + "</text>\n";
  s += "<text x=\"18\" y=\"" + px(kTop + (kHeight - kTop - kBottom) / 2) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       px(kTop + (kHeight - kTop - kBottom) / 2) + ")\">" + escape(yl) + "</text>\n";
  return s;
}

std::string tick_labels(double x0, double x1, double y0, double y1, bool log_x, bool log_y) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  std::string s;
  for (int i = 0; i <= 4; ++i) {
    const double a = i / 4.0;
    double xv = x0 + a * (x1 - x0), yv = y0 + a * (y1 - y0);
    if (log_x) xv = std::pow(10.0, xv);
    if (log_y) yv = std::pow(10.0, yv);
    s += "<text x=\"" + px(kLeft + a * pw) + "\" y=\"" + px(kTop + ph + 16) +
         "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
    s += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(kTop + ph - a * ph + 4) +
         "\" text-anchor=\"end\">" + num(yv) + "</text>\n";
  }
  return s;
}

}  // namespace

std::string render_svg(const Heatmap& map) {
  if (map.values.size() != map.rows * map.cols)
    throw std::invalid_argument("heatmap: value count does not match the shape");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : map.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (map.values.empty()) lo = hi = 0.0;
  const bool diverging = lo < 0.0;
  if (diverging) {
    const double m = std::max(-lo, hi);
    lo = -m;
    hi = m;
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  std::string s = frame(map.title, map.x_label, map.y_label);
  // columns run along x, rows along y (row 0 at the bottom)
  const double cw = pw / static_cast<double>(std::max<std::size_t>(map.cols, 1));
  const double ch = ph / static_cast<double>(std::max<std::size_t>(map.rows, 1));
  for (std::size_t r = 0; r < map.rows; ++r)
    for (std::size_t c = 0; c < map.cols; ++c) {
      const double v = map.values[r * map.cols + c];
      s += "<rect x=\"" + px(kLeft + c * cw) + "\" y=\"" + px(kTop + ph - (r + 1) * ch) +
           "\" width=\"" + px(cw + 0.05) + "\" height=\"" + px(ch + 0.05) + "\" fill=\"" +
           colour((v - lo) / span, diverging) + "\"/>\n";
    }
  s += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(pw) + "\" height=\"" +
       px(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += tick_labels(map.x_min, map.x_max, map.y_min, map.y_max, false, false);
  // colour bar
  const double bx = kWidth - kRight + 20;
  for (int i = 0; i < 50; ++i) {
    const double a = i / 49.0;
    s += "<rect x=\"" + px(bx) + "\" y=\"" + px(kTop + ph - (i + 1) * ph / 50) +
         "\" width=\"16\" height=\"" + px(ph / 50 + 0.05) + "\" fill=\"" + colour(a, diverging) +
         "\"/>\n";
  }
  s += "<text x=\"" + px(bx + 20) + "\" y=\"" + px(kTop + 8) + "\">" + num(hi) + "</text>\n";
  s += "<text x=\"" + px(bx + 20) + "\" y=\"" + px(kTop + ph) + "\">" + num(lo) + "</text>\n";
  s += "</svg>\n";
  return s;
}

std::string render_svg(const LinePlot& plot) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(tx(x)) && std::isfinite(ty(y));
  };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& se : plot.series)
    for (std::size_t i = 0; i < se.x.size(); ++i) {
      if (!usable(se.x[i], se.y[i])) continue;
      x0 = std::min(x0, tx(se.x[i]));
      x1 = std::max(x1, tx(se.x[i]));
      y0 = std::min(y0, ty(se.y[i]));
      y1 = std::max(y1, ty(se.y[i]));
    }
  if (!(x0 <= x1)) x0 = 0.0, x1 = 1.0;
  if (!(y0 <= y1)) y0 = 0.0, y1 = 1.0;
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto mx = [&](double v) { return kLeft + (tx(v) - x0) / (x1 - x0) * pw; };
  auto my = [&](double v) { return kTop + ph - (ty(v) - y0) / (y1 - y0) * ph; };
  std::string s = frame(plot.title, plot.x_label, plot.y_label);
  s += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(pw) + "\" height=\"" +
       px(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += tick_labels(x0, x1, y0, y1, plot.log_x, plot.log_y);
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& se = plot.series[k];
    const char* col = palette[k % 8];
    std::string pts;
    for (std::size_t i = 0; i < se.x.size(); ++i) {
      if (!usable(se.x[i], se.y[i])) continue;
      pts += px(mx(se.x[i])) + "," + px(my(se.y[i])) + " ";
    }
    s += "<polyline fill=\"none\" stroke=\"" + std::string(col) + "\" stroke-width=\"1.5\" points=\"" +
         pts + "\"/>\n";
    s += "<text x=\"" + px(kWidth - kRight + 8) + "\" y=\"" + px(kTop + 14 + 16 * k) +
         "\" fill=\"" + col + "\">" + escape(se.label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace mfewave
