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
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "spvte/analysis.hpp"
#include "spvte/app/config.hpp"
#include "spvte/app/output.hpp"
#include "spvte/spectral.hpp"
#include "spvte/vte.hpp"

namespace spvte::app {

struct VteOutcome {
  GridSpec grid;
  VteTrajectory trajectory;
  double initial_fit_fidelity = 0.0;
  /// State fidelity against the spectral reference at t_final.
  std::optional<double> final_fidelity;
  std::vector<Frame> reference_frames;
};

/// Fits theta_0 to the initial profile, seeds the potential, and runs the
/// variational evolution, probing the spectral reference every step when
/// cfg.compare_reference is set.
VteOutcome simulate_vte(const RunConfig& cfg);

struct SpectralOutcome {
  GridSpec grid;
  SpectralTrajectory trajectory;
};

SpectralOutcome simulate_spectral(const RunConfig& cfg);

struct ScalingOutcome {
  std::vector<ConvergenceRecord> records;  ///< ordered by lambda, then n
  std::vector<std::pair<double, MinQubits>> min_qubits;
  LogFit fit;
};

/// Convergence metric of spectral runs at n = min_qubits..reference_qubits
/// for every lambda, and the logarithmic fit of the fractional minimum n.
ScalingOutcome simulate_scaling(const RunConfig& cfg);

struct ShotOutcome {
  double sigma_z = 0.0;            ///< exact expectation of the estimator
  double empirical_mean = 0.0;
  double empirical_std = 0.0;      ///< sample standard deviation over repetitions
  double predicted_std = 0.0;      ///< sqrt((1 - sigma_z^2) / N_s)
  double phi_v = 0.0;
  double variance_potential = 0.0; ///< phi_V-scaled error estimate
};

/// Repeats the sampled potential-product Hadamard test on a fixed instance.
ShotOutcome simulate_shots(const RunConfig& cfg);

struct CompareOutcome {
  std::vector<std::pair<double, double>> fidelity;  ///< (t, density fidelity)
};

/// Density fidelity frame by frame between two snapshot files.
CompareOutcome compare_snapshots(const std::filesystem::path& a, const std::filesystem::path& b);

/// Runs cfg.mode and writes every artifact into cfg.output_dir. Returns the
/// summary document, which also lands in summary.json.
nlohmann::json run_and_emit(const RunConfig& cfg);

}  // namespace spvte::app
