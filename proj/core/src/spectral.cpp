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

#include "spvte/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "poisson_kernel.hpp"
#include "spvte/error.hpp"

namespace spvte {

struct SpectralSolver::Impl {
  Impl(const GridSpec& g, double l, SpectralOptions o)
      : grid(g), lambda(l), options(o), fft(g.n_points()), poisson(g), k_squared(g.n_points()),
        density(g.n_points()), v(g.n_points()) {
    for (std::size_t m = 0; m < g.n_points(); ++m) {
      const double k = 2.0 * std::numbers::pi *
                       static_cast<double>(detail::signed_frequency(m, g.n_points())) / g.length();
      k_squared[m] = k * k;
    }
  }

  void kick(ComplexVector& psi, double dt) {
    if (!options.self_gravity) return;
    const double n = static_cast<double>(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) density[j] = n * std::norm(psi[j]);
    poisson.solve(density, v);
    if (options.coupling != 1.0) {
      for (double& x : v) x *= options.coupling;
    }
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= std::polar(1.0, -dt * v[j] / lambda);
  }

  void drift(ComplexVector& psi, double dt) {
    fft.forward(psi);
    const double inv_n = 1.0 / static_cast<double>(psi.size());
    for (std::size_t m = 0; m < psi.size(); ++m) {
      psi[m] *= std::polar(inv_n, -dt * lambda * k_squared[m] / 2.0);
    }
    fft.backward(psi);
  }

  GridSpec grid;
  double lambda;
  SpectralOptions options;
  detail::FftPlan fft;
  detail::PeriodicPoisson poisson;
  RealVector k_squared;
  RealVector density;
  RealVector v;
};

SpectralSolver::SpectralSolver(const GridSpec& grid, double lambda, SpectralOptions options) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
  if (!std::isfinite(options.coupling)) throw InvalidArgument("coupling must be finite");
  impl_ = std::make_unique<Impl>(grid, lambda, options);
}

SpectralSolver::~SpectralSolver() = default;
SpectralSolver::SpectralSolver(SpectralSolver&&) noexcept = default;
SpectralSolver& SpectralSolver::operator=(SpectralSolver&&) noexcept = default;

const GridSpec& SpectralSolver::grid() const noexcept { return impl_->grid; }
double SpectralSolver::lambda() const noexcept { return impl_->lambda; }

void SpectralSolver::step(SpectralState& state, double dt) {
  if (!(state.grid == impl_->grid) || state.psi.size() != impl_->grid.n_points()) {
    throw InvalidArgument("state does not match the solver grid");
  }
  impl_->kick(state.psi, dt / 2.0);
  impl_->drift(state.psi, dt);
  impl_->kick(state.psi, dt / 2.0);
  state.time += dt;
}

void SpectralSolver::advance(SpectralState& state, double dt, long n_steps) {
  for (long i = 0; i < n_steps; ++i) step(state, dt);
}

RealVector SpectralSolver::potential(const SpectralState& state) {
  RealVector v(state.psi.size(), 0.0);
  if (!impl_->options.self_gravity) return v;
  const double n = static_cast<double>(state.psi.size());
  RealVector rho(state.psi.size());
  for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = n * std::norm(state.psi[j]);
  impl_->poisson.solve(rho, v);
  for (double& x : v) x *= impl_->options.coupling;
  return v;
}

SpectralState spectral_step(SpectralState state, double dt, double lambda, SpectralOptions options) {
  SpectralSolver(state.grid, lambda, options).step(state, dt);
  return state;
}

SpectralTrajectory run_reference(const PhysicalField& initial, double lambda, double t_final,
                                 double dt, std::span<const double> snapshot_times,
                                 SpectralOptions options) {
  if (!(t_final >= 0.0)) throw InvalidArgument("t_final must be non-negative");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  const long n_steps = t_final > 0.0 ? std::max(1L, std::lround(t_final / dt)) : 0L;
  const double h = n_steps > 0 ? t_final / static_cast<double>(n_steps) : 0.0;

  std::vector<std::pair<long, std::size_t>> wanted;
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const double t = snapshot_times[i];
    if (t < -1e-12 || t > t_final + 1e-12) {
      throw InvalidArgument("snapshot time " + std::to_string(t) + " outside [0, t_final]");
    }
    wanted.emplace_back(h > 0.0 ? std::lround(t / h) : 0L, i);
  }
  std::sort(wanted.begin(), wanted.end());

  const QuantumAmplitudes q = encode_physical(initial);
  SpectralSolver solver(initial.grid, lambda, options);
  SpectralState state{initial.grid, q.values, 0.0};
  SpectralTrajectory out{{}, state, 0.0};
  out.snapshots.resize(snapshot_times.size());

  auto record = [&](std::size_t slot) {
    SpectralSnapshot& s = out.snapshots[slot];
    s.time = state.time;
    s.psi = state.psi;
    s.density = density_from_amplitudes(state.psi);
    s.potential = solver.potential(state);
  };

  std::size_t next = 0;
  for (long step = 0;; ++step) {
    while (next < wanted.size() && wanted[next].first == step) record(wanted[next++].second);
    double norm = 0.0;
    for (const auto& a : state.psi) norm += std::norm(a);
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(norm - 1.0));
    if (step == n_steps) break;
    solver.step(state, h);
    // Pin the clock to the step grid rather than accumulating round-off.
    state.time = static_cast<double>(step + 1) * h;
  }
  out.final_state = std::move(state);
  return out;
}

}  // namespace spvte
