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

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spvte/grid.hpp"
#include "spvte/vte.hpp"

namespace spvte::app {

/// One time frame of a trajectory in physical units (density has mean one).
struct Frame {
  double time = 0.0;
  RealVector density;
  RealVector potential;  ///< empty when the run has no potential
};

/// Columns t, j, x, density, potential.
void write_snapshots_csv(const std::filesystem::path& path, const GridSpec& grid,
                         std::span<const Frame> frames);

/// Reads a file written by write_snapshots_csv. Rows must be grouped by t
/// with j = 0..N-1; throws InvalidArgument on malformed input.
std::vector<Frame> read_snapshots_csv(const std::filesystem::path& path);

/// Columns step, time, fidelity_vs_reference, cost, truncated_rank. The
/// fidelity column is left empty for records without a reference value.
void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const VteStepRecord> records);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

struct PlotSeries {
  std::string label;
  RealVector x;
  RealVector y;
  bool markers = false;  ///< points instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Self-contained SVG line chart.
std::string render_svg(const PlotSpec& plot);

}  // namespace spvte::app
