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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spvte/ansatz.hpp"
#include "spvte/error.hpp"
#include "spvte/vte.hpp"

namespace spvte::app {

/// Schema violation; what() starts with the offending field path.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : InvalidArgument(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class RunMode { Vte, Spectral, Scaling, Shots, Compare };

struct AnsatzConfig {
  std::vector<PauliAxis> axes;
  int depth = 4;  ///< rotation layers
  Entangler entangler = Entangler::LinearCZ;

  LayeredAnsatz build(int n_qubits) const;
  friend bool operator==(const AnsatzConfig&, const AnsatzConfig&) = default;
};

struct RunConfig {
  RunMode mode = RunMode::Vte;

  // grid and physics
  int n_qubits = 4;
  double length = 8.0;
  double lambda = 1.0;
  double initial_amplitude = 0.6;
  double initial_wavenumber = 0.78539816339744830962;  // pi / 4
  double t_final = 3.0;
  std::vector<double> snapshot_times{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};

  // variational evolution
  AnsatzConfig wavefunction{{PauliAxis::Y, PauliAxis::Z}, 4, Entangler::LinearCZ};
  AnsatzConfig potential{{PauliAxis::Y}, 4, Entangler::LinearCX};
  int n_steps = 600;
  double svd_cutoff = 1e-7;
  double tikhonov = 1e-3;
  EvalPath eval_path = EvalPath::Analytic;
  ProjectorWeight projector = ProjectorWeight::Normalized;
  bool sampled_shots = false;
  std::uint64_t n_shots = 0;
  std::uint64_t seed = 0;
  int fit_restarts = 16;
  double fit_accept_fidelity = 0.999;
  PotentialOptimizerSettings optimizer;
  bool require_potential_convergence = false;
  bool compare_reference = true;

  // classical reference
  double reference_dt = 1e-4;
  bool self_gravity = true;

  // scaling study
  std::vector<double> scaling_lambdas{1.0, 0.5, 0.25, 0.125, 0.0625};
  int scaling_min_qubits = 4;
  int scaling_reference_qubits = 13;
  double scaling_threshold = 0.1;
  double scaling_t_frame = 3.0;

  // shot study
  int shot_qubits = 3;
  int shot_repetitions = 200;
  std::uint64_t shot_count = 10000;

  // compare
  std::string compare_a;
  std::string compare_b;

  // output
  std::string output_dir = "out";
  bool plot = false;
  int threads = 1;

  VteConfig vte_config() const;
  ShotModel shot_model() const;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

std::string to_string(RunMode mode);
RunMode parse_mode(const std::string& text);

/// Parses a JSON document, filling defaults and rejecting unknown keys.
RunConfig parse_config(const std::string& text);
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Range and consistency checks; throws ConfigError.
void validate(const RunConfig& cfg);

}  // namespace spvte::app
