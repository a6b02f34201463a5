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

#include <cstdint>
#include <functional>
#include <span>

#include "spvte/ansatz.hpp"
#include "spvte/grid.hpp"

namespace spvte {

using Objective = std::function<double(std::span<const double> x)>;
/// Returns f(x) and writes the gradient into `grad`.
using ObjectiveWithGradient = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct MinimizeResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  /// Stopped by its own criterion (target reached or stationary) rather than the iteration cap.
  bool converged = false;
};

struct SimplexSettings {
  double initial_step = 0.1;
  int max_iterations = 200;
  double size_tolerance = 1e-8;
  /// Stop as soon as f <= target.
  double target = -1.0;
};

/// Derivative-free Nelder-Mead simplex (GSL nmsimplex2).
MinimizeResult minimize_simplex(const Objective& f, RealVector x0, const SimplexSettings& settings);

struct QuasiNewtonSettings {
  int max_iterations = 500;
  double gradient_tolerance = 1e-9;
  double initial_step = 1e-2;
  double line_tolerance = 0.1;
  double target = -1.0;
};

/// BFGS with analytic gradients (GSL vector_bfgs2).
MinimizeResult minimize_bfgs(const ObjectiveWithGradient& fg, RealVector x0,
                             const QuasiNewtonSettings& settings);

struct StateFitSettings {
  int restarts = 16;
  double accept_fidelity = 0.999;
  std::uint64_t seed = 0;
  int max_iterations = 2000;
};

struct StateFit {
  RealVector params;
  double fidelity = 0.0;
  /// <target|U(params)|0>, useful to recover a sign for real targets.
  Complex overlap;
};

/// Maximizes |<target|U(theta)|0>|^2 with BFGS from `restarts` random starts
/// (uniform in [-pi, pi)). Throws ConvergenceError when the best fidelity is
/// below `accept_fidelity`. `target` must be normalized.
StateFit fit_state_parameters(const LayeredAnsatz& ansatz, std::span<const Complex> target,
                              const StateFitSettings& settings);

}  // namespace spvte
