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

#include "spvte/poisson.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "poisson_kernel.hpp"
#include "spvte/error.hpp"

namespace spvte {
namespace {

void check_grid_size(std::size_t size, const GridSpec& grid, const char* what) {
  if (size != grid.n_points()) {
    throw InvalidArgument(std::string(what) + " length " + std::to_string(size) +
                          " does not match the grid (" + std::to_string(grid.n_points()) + ")");
  }
}

RealVector real_amplitudes(const StateVector& s) {
  RealVector out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) out[i] = s[i].real();
  return out;
}

}  // namespace

namespace detail {

PeriodicPoisson::PeriodicPoisson(const GridSpec& grid)
    : plan_(grid.n_points()), inverse_symbol_(grid.n_points(), 0.0), work_(grid.n_points()) {
  const std::size_t n = grid.n_points();
  const double dx = grid.dx();
  for (std::size_t m = 1; m < n; ++m) {
    // Stencil eigenvalue for the mode exp(2 pi i m j / N); the 1/N of the
    // inverse transform is folded in.
    const double s = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
    inverse_symbol_[m] = -(dx * dx) / (4.0 * s * s) / static_cast<double>(n);
  }
}

void PeriodicPoisson::solve(std::span<const double> density, std::span<double> potential) {
  const std::size_t n = work_.size();
  if (density.size() != n || potential.size() != n) {
    throw InvalidArgument("Poisson solve: array length does not match the grid");
  }
  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    work_[j] = density[j] - 1.0;
    mean += density[j] - 1.0;
  }
  mean /= static_cast<double>(n);
  if (std::abs(mean) > 1e-8) {
    throw InvalidArgument("Poisson source has nonzero mean " + std::to_string(mean));
  }
  plan_.forward(work_);
  for (std::size_t m = 0; m < n; ++m) work_[m] *= inverse_symbol_[m];
  plan_.backward(work_);
  for (std::size_t j = 0; j < n; ++j) potential[j] = work_[j].real();
}

}  // namespace detail

PotentialModel::PotentialModel(GridSpec g, LayeredAnsatz a, double phi, RealVector p)
    : grid(g), ansatz(std::move(a)), phi_v(phi), params(std::move(p)) {
  if (ansatz.n_qubits() != grid.n_qubits()) {
    throw InvalidArgument("potential ansatz width does not match the grid");
  }
  if (!ansatz.is_real_valued()) throw InvalidArgument("potential ansatz must be real-valued");
  if (params.size() != static_cast<std::size_t>(ansatz.param_count())) {
    throw InvalidArgument("potential parameter count mismatch");
  }
}

RealVector PotentialModel::normalized_values() const {
  return real_amplitudes(build_unitary_state(ansatz, params));
}

RealVector PotentialModel::values() const {
  RealVector v = normalized_values();
  for (auto& x : v) x *= phi_v;
  return v;
}

RealVector PotentialModel::gauge_fixed_values() const {
  RealVector v = values();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (auto& x : v) x -= mean;
  return v;
}

RealVector laplacian_stencil(std::span<const double> v, double dx) {
  const std::size_t n = v.size();
  if (n < 2) throw InvalidArgument("laplacian needs at least two points");
  RealVector out(n);
  const double inv = 1.0 / (dx * dx);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = (v[(j + 1) % n] - 2.0 * v[j] + v[(j + n - 1) % n]) * inv;
  }
  return out;
}

RealVector poisson_source(std::span<const Complex> psi) {
  const double n = static_cast<double>(psi.size());
  RealVector s(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) s[j] = n * std::norm(psi[j]) - 1.0;
  return s;
}

RealVector poisson_solve_exact(std::span<const double> density, const GridSpec& grid) {
  check_grid_size(density.size(), grid, "density");
  RealVector v(grid.n_points());
  detail::PeriodicPoisson(grid).solve(density, v);
  return v;
}

double potential_cost(double phi_v, std::span<const double> tilde, std::span<const Complex> psi,
                      const GridSpec& grid) {
  check_grid_size(tilde.size(), grid, "potential");
  check_grid_size(psi.size(), grid, "wavefunction");
  RealVector v(tilde.begin(), tilde.end());
  for (auto& x : v) x *= phi_v;
  const RealVector lap = laplacian_stencil(v, grid.dx());
  const RealVector src = poisson_source(psi);
  double cost = 0.0;
  for (std::size_t j = 0; j < lap.size(); ++j) cost += (lap[j] - src[j]) * (lap[j] - src[j]);
  return cost;
}

double potential_cost(const PotentialModel& model, std::span<const Complex> psi) {
  return potential_cost(model.phi_v, model.normalized_values(), psi, model.grid);
}

CostTerms cost_terms_via_circuits(double phi_v, const RegisterPrep& potential,
                                  std::span<const Complex> psi, const GridSpec& grid,
                                  const ShotModel& shots) {
  check_grid_size(psi.size(), grid, "wavefunction");
  if (potential.n_qubits() != grid.n_qubits()) {
    throw InvalidArgument("potential register does not match the grid");
  }
  const RegisterPrep wf = RegisterPrep::amplitudes(psi);
  auto shot = [&](std::uint64_t i) { return shots.reseeded(derive_seed(shots.seed, i)); };

  CostTerms t;
  t.dx = grid.dx();
  t.s1 = circuit_potential_autocorrelation(potential, 1, shot(0));
  t.s2 = circuit_potential_autocorrelation(potential, 2, shot(1));
  t.laplacian_norm = 2.0 * phi_v * phi_v / std::pow(t.dx, 4) * t.bracket();

  const double plus = circuit_potential_expectation(wf, potential, ShiftDirection::Minus, shot(2));
  const double centre = circuit_potential_expectation(wf, potential, std::nullopt, shot(3));
  const double minus = circuit_potential_expectation(wf, potential, ShiftDirection::Plus, shot(4));
  // <Psi|V|Psi> = N phi_V sum_j V~_j |psi_j|^2.
  const double n = static_cast<double>(grid.n_points());
  t.cross = n * phi_v * (plus - 2.0 * centre + minus);

  for (double s : poisson_source(psi)) t.source_norm += s * s;
  return t;
}

CostTerms cost_terms_via_circuits(const PotentialModel& model, std::span<const Complex> psi,
                                  const ShotModel& shots) {
  return cost_terms_via_circuits(model.phi_v, RegisterPrep::circuit(model.ansatz, model.params),
                                 psi, model.grid, shots);
}

PotentialFit optimize_potential(std::span<const Complex> psi, const PotentialModel& warm,
                                const PotentialOptimizerSettings& settings) {
  check_grid_size(psi.size(), warm.grid, "wavefunction");
  const GridSpec& grid = warm.grid;
  const LayeredAnsatz& ansatz = warm.ansatz;
  const int p = ansatz.param_count();
  const RealVector src = poisson_source(psi);
  const double dx = grid.dx();

  auto unpack = [&](std::span<const double> x) {
    return std::make_pair(x[0], RealVector(x.begin() + 1, x.end()));
  };
  auto residual = [&](double phi, const RealVector& tilde) {
    RealVector r = laplacian_stencil(tilde, dx);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = phi * r[j] - src[j];
    return r;
  };
  const Objective f = [&](std::span<const double> x) {
    const auto [phi, theta] = unpack(x);
    double c = 0.0;
    for (double r : residual(phi, real_amplitudes(build_unitary_state(ansatz, theta)))) c += r * r;
    return c;
  };
  const ObjectiveWithGradient fg = [&](std::span<const double> x, std::span<double> grad) {
    const auto [phi, theta] = unpack(x);
    const RealVector tilde = real_amplitudes(build_unitary_state(ansatz, theta));
    const RealVector r = residual(phi, tilde);
    // The stencil is symmetric, so sum_j r_j L(u)_j = sum_j L(r)_j u_j.
    const RealVector lr = laplacian_stencil(r, dx);
    double c = 0.0;
    double g_phi = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      c += r[j] * r[j];
      g_phi += lr[j] * tilde[j];
    }
    grad[0] = 2.0 * g_phi;
    for (int k = 0; k < p; ++k) {
      const RealVector d = real_amplitudes(build_derivative_state(ansatz, theta, k));
      double g = 0.0;
      for (std::size_t j = 0; j < d.size(); ++j) g += lr[j] * d[j];
      grad[static_cast<std::size_t>(k) + 1] = 2.0 * phi * g;
    }
    return c;
  };

  RealVector x0{warm.phi_v};
  x0.insert(x0.end(), warm.params.begin(), warm.params.end());

  PotentialFit out{warm, f(x0), 0, false};
  if (out.cost <= settings.tolerance) {
    out.converged = true;
    return out;
  }

  SimplexSettings ss;
  ss.initial_step = settings.simplex_step;
  ss.max_iterations = settings.simplex_iterations;
  ss.target = settings.tolerance;
  MinimizeResult stage = minimize_simplex(f, x0, ss);
  int iterations = stage.iterations;
  bool converged = stage.value <= settings.tolerance;

  if (!converged) {
    QuasiNewtonSettings qs;
    qs.max_iterations = settings.bfgs_iterations;
    qs.gradient_tolerance = settings.gradient_tolerance;
    qs.target = settings.tolerance;
    const MinimizeResult refined = minimize_bfgs(fg, stage.x, qs);
    iterations += refined.iterations;
    if (refined.value <= stage.value) stage = refined;
    converged = refined.converged;
  }

  const auto [phi, theta] = unpack(stage.x);
  if (!std::isfinite(phi)) throw NumericalError("potential optimizer produced non-finite phi_V");
  return {PotentialModel(grid, ansatz, phi, theta), stage.value, iterations, converged};
}

PotentialModel initial_potential(std::span<const Complex> psi, const GridSpec& grid,
                                 const LayeredAnsatz& ansatz, const StateFitSettings& fit) {
  check_grid_size(psi.size(), grid, "wavefunction");
  RealVector density(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) {
    density[j] = static_cast<double>(psi.size()) * std::norm(psi[j]);
  }
  const RealVector v = poisson_solve_exact(density, grid);
  const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (norm < 1e-300) {
    // Uniform density: any normalized V~ with phi_V = 0 represents V = 0.
    return {grid, ansatz, 0.0, RealVector(static_cast<std::size_t>(ansatz.param_count()), 0.0)};
  }
  ComplexVector target(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) target[j] = v[j] / norm;
  const StateFit s = fit_state_parameters(ansatz, target, fit);
  const double sign = s.overlap.real() < 0.0 ? -1.0 : 1.0;
  return {grid, ansatz, sign * norm, s.params};
}

}  // namespace spvte
