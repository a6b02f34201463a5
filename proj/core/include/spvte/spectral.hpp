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

#include <memory>
#include <span>
#include <vector>

#include "spvte/grid.hpp"

namespace spvte {

/// Register-normalized wavefunction on a periodic grid at time t.
struct SpectralState {
  GridSpec grid;
  ComplexVector psi;
  double time = 0.0;
};

struct SpectralOptions {
  /// When false the potential is forced to zero (free evolution).
  bool self_gravity = true;
  /// Multiplies the Poisson source. A value g stands for a mean density of g when the
  /// state itself is normalized to mean density one.
  double coupling = 1.0;
};

/// Strang kick-drift-kick integrator for i dpsi/dt = -(lambda/2) psi'' + V psi / lambda
/// with V from the periodic Poisson solver on the current density. The drift
/// is exact in Fourier space with k = 2 pi m / L, m in [-N/2, N/2).
/// A negative dt runs the reversed splitting, so step(dt) then step(-dt) is
/// the identity up to round-off.
class SpectralSolver {
 public:
  SpectralSolver(const GridSpec& grid, double lambda, SpectralOptions options = {});
  ~SpectralSolver();
  SpectralSolver(SpectralSolver&&) noexcept;
  SpectralSolver& operator=(SpectralSolver&&) noexcept;

  const GridSpec& grid() const noexcept;
  double lambda() const noexcept;

  void step(SpectralState& state, double dt);
  /// Advances by n_steps steps of size dt.
  void advance(SpectralState& state, double dt, long n_steps);

  /// Gauge-fixed potential for the state's current density (zero if disabled).
  RealVector potential(const SpectralState& state);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One step with a temporary solver.
SpectralState spectral_step(SpectralState state, double dt, double lambda,
                            SpectralOptions options = {});

struct SpectralSnapshot {
  double time = 0.0;
  ComplexVector psi;
  RealVector density;
  RealVector potential;
};

struct SpectralTrajectory {
  std::vector<SpectralSnapshot> snapshots;
  SpectralState final_state;
  /// max_t |sum |psi|^2 - 1| over every step taken.
  double max_norm_drift = 0.0;
};

/// Evolves `initial` to t_final with round(t_final / dt) steps of equal size
/// (at least one when t_final > 0), recording snapshots at the steps nearest
/// to `snapshot_times` (each must lie in [0, t_final]).
SpectralTrajectory run_reference(const PhysicalField& initial, double lambda, double t_final,
                                 double dt, std::span<const double> snapshot_times,
                                 SpectralOptions options = {});

}  // namespace spvte
