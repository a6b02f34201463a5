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

#include "spvte/ansatz.hpp"
#include "spvte/grid.hpp"
#include "spvte/hadamard.hpp"
#include "spvte/optimize.hpp"

namespace spvte {

/// Circuit-encoded potential V_j = phi_V * V~_j with V~ = U_V(params)|0>.
/// The ansatz must be real-valued, so sum_j V~_j^2 = 1 and V~ is real.
struct PotentialModel {
  GridSpec grid;
  LayeredAnsatz ansatz;
  double phi_v = 0.0;
  RealVector params;

  PotentialModel(GridSpec grid, LayeredAnsatz ansatz, double phi_v, RealVector params);

  RealVector normalized_values() const;
  RealVector values() const;
  /// values() minus their mean.
  RealVector gauge_fixed_values() const;
};

/// Periodic 3-point Laplacian (v_{j+1} - 2 v_j + v_{j-1}) / dx^2.
RealVector laplacian_stencil(std::span<const double> v, double dx);

/// Poisson source N |psi_j|^2 - 1 from register amplitudes.
RealVector poisson_source(std::span<const Complex> psi);

/// Solves laplacian_stencil(V) = density - 1 exactly in Fourier space, with
/// the k = 0 mode set to zero. `density` is the physical |Psi|^2 (mean one);
/// a source mean larger than 1e-8 throws InvalidArgument.
RealVector poisson_solve_exact(std::span<const double> density, const GridSpec& grid);

/// sum_j (laplacian(V)_j - N |psi_j|^2 + 1)^2 with V = phi_v * tilde.
double potential_cost(double phi_v, std::span<const double> tilde, std::span<const Complex> psi,
                      const GridSpec& grid);
double potential_cost(const PotentialModel& model, std::span<const Complex> psi);

/// Cost pieces assembled from Hadamard-test circuits.
struct CostTerms {
  double s1 = 0.0;  ///< sum_j V~_j V~_{j+1}
  double s2 = 0.0;  ///< sum_j V~_j V~_{j+2}
  /// sum_j laplacian(V)_j^2 = (2 phi_V^2 / dx^4) * bracket().
  double laplacian_norm = 0.0;
  /// <Psi|V_+|Psi> - 2 <Psi|V|Psi> + <Psi|V_-|Psi> with (V_+-)_j = V_{j+-1}.
  double cross = 0.0;
  /// sum_j (N |psi_j|^2 - 1)^2, independent of the potential.
  double source_norm = 0.0;
  double dx = 1.0;

  double bracket() const noexcept { return 4.0 * (1.0 - s1) - (1.0 - s2); }
  /// Equals potential_cost: the sum of laplacian(V) against the constant
  /// vanishes under periodic boundaries.
  double total() const noexcept { return laplacian_norm - 2.0 * cross / (dx * dx) + source_norm; }
};

CostTerms cost_terms_via_circuits(double phi_v, const RegisterPrep& potential,
                                  std::span<const Complex> psi, const GridSpec& grid,
                                  const ShotModel& shots = ShotModel::exact());
CostTerms cost_terms_via_circuits(const PotentialModel& model, std::span<const Complex> psi,
                                  const ShotModel& shots = ShotModel::exact());

struct PotentialOptimizerSettings {
  double tolerance = 1e-6;  ///< tau_V on the cost
  int simplex_iterations = 200;
  double simplex_step = 0.05;
  int bfgs_iterations = 1000;
  double gradient_tolerance = 1e-8;
};

struct PotentialFit {
  PotentialModel model;
  double cost = 0.0;
  int iterations = 0;
  /// Cost below tolerance, or both stages stopped on their own criteria.
  bool converged = false;
};

/// Minimizes potential_cost jointly over (phi_V, params): simplex first, then
/// BFGS with analytic gradients. Returns at once when the warm start already
/// meets the tolerance.
PotentialFit optimize_potential(std::span<const Complex> psi, const PotentialModel& warm_start,
                                const PotentialOptimizerSettings& settings = {});

/// Starting potential for a wavefunction: phi_V = ||V_exact||_2 from the
/// spectral solver, params fitted to V_exact / phi_V by fidelity, sign folded
/// into phi_V.
PotentialModel initial_potential(std::span<const Complex> psi, const GridSpec& grid,
                                 const LayeredAnsatz& ansatz, const StateFitSettings& fit);

}  // namespace spvte
