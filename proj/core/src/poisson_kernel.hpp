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

#include <span>
#include <vector>

#include "fft.hpp"
#include "spvte/grid.hpp"

namespace spvte::detail {

/// Cached FFT plan and stencil symbol for repeated periodic Poisson solves.
class PeriodicPoisson {
 public:
  explicit PeriodicPoisson(const GridSpec& grid);

  /// V with laplacian_stencil(V) = density - 1 and zero mean. Throws
  /// InvalidArgument when the source mean exceeds 1e-8.
  void solve(std::span<const double> density, std::span<double> potential);

 private:
  FftPlan plan_;
  std::vector<double> inverse_symbol_;
  std::vector<std::complex<double>> work_;
};

}  // namespace spvte::detail
