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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spvte/ansatz.hpp"
#include "spvte/grid.hpp"
#include "spvte/poisson.hpp"
#include "spvte/qsim.hpp"

namespace spvte {

enum class EvalPath {
  Analytic,  ///< inner products of derivative statevectors
  Hadamard,  ///< ancilla interferometer circuits
};

/// Weight w of the global-phase projector terms,
///   M_kl = Re<d_k psi|d_l psi> - w Im<d_k psi|psi> Im<d_l psi|psi>,
///   B_k  = Im<d_k psi|H|psi>   - w Im<d_k psi|psi> <psi|H|psi>.
/// Normalized (w = 1) is the McLachlan projector for the unit-norm register
/// state; GridScaled (w = N) substitutes Psi = sqrt(N) psi into both
/// factors of the product term.
enum class ProjectorWeight { Normalized, GridScaled };

/// M theta_dot = B.
struct EomSystem {
  Eigen::MatrixXd M;
  Eigen::VectorXd B;
};

struct VteConfig {
  double dt = 3.0 / 600.0;
  int n_steps = 600;
  double svd_cutoff = 1e-7;
  double tikhonov = 1e-3;
  EvalPath eval_path = EvalPath::Analytic;
  ShotModel shots = ShotModel::exact();
  double lambda = 1.0;
  ProjectorWeight projector = ProjectorWeight::Normalized;
  int threads = 1;

  void validate() const;
};

/// The Schrodinger-Poisson Hamiltonian on the register,
///   H = -(lambda/2) L + (phi_V / lambda) diag(V~),
/// with L the periodic 3-point stencil. No potential means V = 0.
struct SpHamiltonian {
  GridSpec grid;
  double lambda = 1.0;
  std::optional<PotentialModel> potential;

  ComplexVector apply(std::span<const Complex> psi) const;
};

double m_element(const LayeredAnsatz& wf, std::span<const double> theta, int k, int l,
                 const VteConfig& cfg, std::uint64_t stream = 0);

double b_element(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                 const SpHamiltonian& h, const VteConfig& cfg, std::uint64_t stream = 0);

/// Builds M and B for one timestep. `stream` separates shot seeds between steps.
EomSystem assemble_eom(const LayeredAnsatz& wf, std::span<const double> theta,
                       const SpHamiltonian& h, const VteConfig& cfg, std::uint64_t stream = 0);

struct EomSolution {
  Eigen::VectorXd theta_dot;
  int rank = 0;  ///< singular values kept
};

/// Least-squares solve of (M + tikhonov I) x = B through an SVD whose
/// singular values below svd_cutoff * sigma_max are dropped.
EomSolution solve_eom(const EomSystem& sys, double svd_cutoff, double tikhonov);

RealVector euler_step(std::span<const double> theta, const Eigen::VectorXd& theta_dot, double dt);

struct VteSnapshot {
  double time = 0.0;
  ComplexVector psi;
  RealVector density;
  RealVector potential;  ///< zero-mean gauge
};

struct VteStepRecord {
  int step = 0;
  double time = 0.0;
  double cost = 0.0;  ///< potential cost after re-optimization
  int truncated_rank = 0;
  double b_norm = 0.0;
  int potential_iterations = 0;
  bool potential_converged = true;
  double fidelity_vs_reference = -1.0;  ///< negative when no probe is set
};

struct VteRunSettings {
  VteConfig vte;
  PotentialOptimizerSettings potential;
  /// Abort (ConvergenceError) when a potential optimization does not converge.
  bool require_potential_convergence = false;
  std::vector<double> snapshot_times;
  /// Optional fidelity against a reference at time t.
  std::function<double(double t, std::span<const Complex> psi)> fidelity_probe;
};

struct VteTrajectory {
  RealVector theta;
  std::optional<PotentialModel> potential;
  std::vector<VteSnapshot> snapshots;
  std::vector<VteStepRecord> records;  ///< record 0 describes t = 0
  ComplexVector final_state;
};

/// Algorithm loop: optimize the potential for theta_0, then for every step
/// assemble and solve the equations of motion, take an Euler step, and
/// re-optimize the potential for the new parameters. Without a potential the
/// evolution is free (V = 0). Throws NumericalError on non-finite parameters.
VteTrajectory run_vte(const LayeredAnsatz& wf, RealVector theta0, const GridSpec& grid,
                      std::optional<PotentialModel> potential, const VteRunSettings& settings);

struct CircuitBudgetRow {
  std::string term;
  std::size_t count;
  int qubits;
};

/// Distinct circuits per timestep for each quantity, with register widths.
std::vector<CircuitBudgetRow> circuit_budget(int param_count, int n_qubits);

}  // namespace spvte
