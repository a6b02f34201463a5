// Copyright 2026 The spvte Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spvte/app/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "spvte/error.hpp"

namespace spvte::app {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& text, const std::string& where) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument(where + ": '" + text + "' is not a number");
  }
  return v;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

/// Roughly five round tick positions covering [lo, hi].
RealVector nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  RealVector ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::string tick_label(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw NumericalError("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

void write_snapshots_csv(const std::filesystem::path& path, const GridSpec& grid,
                         std::span<const Frame> frames) {
  auto out = open_out(path);
  out << "t,j,x,density,potential\n";
  for (const auto& f : frames) {
    if (f.density.size() != grid.n_points() ||
        (!f.potential.empty() && f.potential.size() != grid.n_points())) {
      throw InvalidArgument("write_snapshots_csv: frame size does not match the grid");
    }
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
      out << format_double(f.time) << ',' << j << ',' << format_double(grid.x(j)) << ','
          << format_double(f.density[j]) << ','
          << format_double(f.potential.empty() ? 0.0 : f.potential[j]) << '\n';
    }
  }
}

std::vector<Frame> read_snapshots_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "t,j,x,density,potential") {
    throw InvalidArgument(path.string() + ": unexpected header");
  }
  std::vector<Frame> frames;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(row);
    const auto cells = split_csv(line);
    if (cells.size() != 5) throw InvalidArgument(where + ": expected 5 columns");
    const double t = parse_number(cells[0], where);
    const double j = parse_number(cells[1], where);
    if (j == 0.0) {
      frames.push_back({t, {}, {}});
    } else if (frames.empty() || frames.back().time != t ||
               j != static_cast<double>(frames.back().density.size())) {
      throw InvalidArgument(where + ": rows are not grouped by frame with consecutive j");
    }
    frames.back().density.push_back(parse_number(cells[3], where));
    frames.back().potential.push_back(parse_number(cells[4], where));
  }
  return frames;
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const VteStepRecord> records) {
  auto out = open_out(path);
  out << "step,time,fidelity_vs_reference,cost,truncated_rank\n";
  for (const auto& r : records) {
    out << r.step << ',' << format_double(r.time) << ','
        << (r.fidelity_vs_reference >= 0.0 ? format_double(r.fidelity_vs_reference) : "") << ','
        << format_double(r.cost) << ',' << r.truncated_rank << '\n';
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

std::string render_svg(const PlotSpec& plot) {
  constexpr double kWidth = 720, kHeight = 440;
  constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 55;
  constexpr std::array<const char*, 8> kColors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                               "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if ((plot.log_x && s.x[i] <= 0) || (plot.log_y && s.y[i] <= 0)) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - (v - y0) / (y1 - y0)) * ph; };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(plot.title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : nice_ticks(x0, x1)) {
    const double p = px(t);
    svg << "<line x1=\"" << p << "\" y1=\"" << kTop + ph << "\" x2=\"" << p << "\" y2=\""
        << kTop + ph + 5 << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << p << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << (plot.log_x ? "1e" + tick_label(t) : tick_label(t)) << "</text>\n";
  }
  for (double t : nice_ticks(y0, y1)) {
    const double p = py(t);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << p << "\" x2=\"" << kLeft << "\" y2=\"" << p
        << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << p + 4 << "\" text-anchor=\"end\">"
        << (plot.log_y ? "1e" + tick_label(t) : tick_label(t)) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << xml_escape(plot.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(plot.y_label) << "</text>\n";

  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const char* color = kColors[si % kColors.size()];
    std::ostringstream pts;
    pts.precision(6);
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if ((plot.log_x && s.x[i] <= 0) || (plot.log_y && s.y[i] <= 0)) continue;
      const double X = px(tx(s.x[i])), Y = py(ty(s.y[i]));
      if (s.markers) {
        svg << "<circle cx=\"" << X << "\" cy=\"" << Y << "\" r=\"3.5\" fill=\"" << color
            << "\"/>\n";
      } else {
        pts << X << ',' << Y << ' ';
      }
    }
    if (!s.markers) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\""
          << pts.str() << "\"/>\n";
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(si);
    svg << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << kLeft + pw + 32 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>";
    svg << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly << "\">" << xml_escape(s.label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spvte::app
