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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "spvte/error.hpp"
#include "spvte/spectral.hpp"

namespace spvte {
namespace {

constexpr double kPi = std::numbers::pi;

SpectralState initial_state(const GridSpec& g, double amplitude = 0.5, double wavenumber = -1.0) {
  const double k = wavenumber > 0.0 ? wavenumber : 2.0 * kPi / g.length();
  return {g, encode_physical(initial_condition(g, amplitude, k)).values, 0.0};
}

double l2_distance(const ComplexVector& a, const ComplexVector& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

TEST(Spectral, FreeFourierModePicksUpExactPhase) {
  const GridSpec g(5, 6.0);
  const double lambda = 0.7;
  const int m = 3;
  const double k = 2.0 * kPi * m / g.length();
  SpectralState s{g, ComplexVector(g.n_points()), 0.0};
  const double amp = 1.0 / std::sqrt(static_cast<double>(g.n_points()));
  for (std::size_t j = 0; j < g.n_points(); ++j) s.psi[j] = std::polar(amp, k * g.x(j));
  const ComplexVector start = s.psi;

  SpectralSolver solver(g, lambda, {.self_gravity = false});
  solver.advance(s, 0.01, 137);
  const double t = 1.37;
  const Complex phase = std::polar(1.0, -lambda * k * k * t / 2.0);
  for (std::size_t j = 0; j < g.n_points(); ++j) {
    EXPECT_NEAR(std::abs(s.psi[j] - phase * start[j]), 0.0, 1e-12);
  }
  EXPECT_NEAR(s.time, t, 1e-12);
}

TEST(Spectral, UniformStateIsStationary) {
  const GridSpec g(6, 10.0);
  SpectralState s{g, ComplexVector(g.n_points(), 1.0 / 8.0), 0.0};
  SpectralSolver solver(g, 1.0);
  solver.advance(s, 0.05, 200);
  for (const auto& a : s.psi) EXPECT_NEAR(std::abs(a - Complex(0.125, 0.0)), 0.0, 1e-13);
  for (double v : solver.potential(s)) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Spectral, StrangSplittingIsSecondOrder) {
  const GridSpec g(6, 10.0);
  const double t = 1.0;
  auto run = [&](double dt) {
    SpectralState s = initial_state(g);
    SpectralSolver(g, 1.0).advance(s, dt, std::lround(t / dt));
    return s.psi;
  };
  const ComplexVector fine = run(1.0 / 1600.0);
  const double e1 = l2_distance(run(0.02), fine);
  const double e2 = l2_distance(run(0.01), fine);
  EXPECT_GT(e1, 0.0);
  EXPECT_GE(e1 / e2, 3.5);
  EXPECT_LE(e1 / e2, 4.5);
}

TEST(Spectral, ZeroFinalTimeReturnsInitialState) {
  const GridSpec g(4, 10.0);
  const PhysicalField f = initial_condition(g, 0.5, 2.0 * kPi / 10.0);
  const std::vector<double> times{0.0};
  const auto traj = run_reference(f, 1.0, 0.0, 0.01, times);
  ASSERT_EQ(traj.snapshots.size(), 1u);
  const auto q = encode_physical(f);
  for (std::size_t j = 0; j < g.n_points(); ++j) {
    EXPECT_EQ(traj.final_state.psi[j], q.values[j]);
    EXPECT_EQ(traj.snapshots[0].psi[j], q.values[j]);
  }
  EXPECT_EQ(traj.final_state.time, 0.0);
}

TEST(Spectral, NegativeStepUndoesForwardEvolution) {
  const GridSpec g(6, 10.0);
  SpectralState s = initial_state(g);
  const ComplexVector start = s.psi;
  SpectralSolver solver(g, 1.0);
  solver.advance(s, 0.01, 300);
  EXPECT_GT(l2_distance(s.psi, start), 0.1);
  solver.advance(s, -0.01, 300);
  EXPECT_LT(l2_distance(s.psi, start), 1e-10);
}

TEST(Spectral, NormDriftStaysAtRoundOff) {
  const GridSpec g(6, 10.0);
  const PhysicalField f = initial_condition(g, 0.5, 2.0 * kPi / 10.0);
  const auto traj = run_reference(f, 1.0, 1000.0, 0.01, {});
  EXPECT_LT(traj.max_norm_drift, 1e-10);
}

// x -> a x, t -> b t, Psi -> Psi / b, lambda -> a^2 lambda / b. The amplitude rescaling
// changes the mean density to 1/b^2, which the normalized solver carries as the coupling.
TEST(Spectral, ScalingCovariance) {
  const double alpha = 2.0;
  const double beta = 2.0;
  const double lambda = 0.6;
  const GridSpec g(6, 10.0);
  const GridSpec gs(6, alpha * 10.0);

  SpectralState a = initial_state(g);
  SpectralState b{gs, a.psi, 0.0};
  SpectralSolver(g, lambda).advance(a, 0.01, 250);
  SpectralSolver(gs, alpha * alpha * lambda / beta, {.coupling = 1.0 / (beta * beta)})
      .advance(b, beta * 0.01, 250);

  EXPECT_NEAR(b.time, beta * a.time, 1e-12);
  const RealVector ra = density_from_amplitudes(a.psi);
  const RealVector rb = density_from_amplitudes(b.psi);
  for (std::size_t j = 0; j < g.n_points(); ++j) {
    // Both sides carry the same 1/b^2 factor in physical units.
    EXPECT_NEAR(rb[j], ra[j], 1e-6);
  }
  // The map is not trivial: the unscaled run with the scaled lambda differs.
  SpectralState c = initial_state(g);
  SpectralSolver(g, alpha * alpha * lambda / beta).advance(c, 0.01, 250);
  EXPECT_GT(l2_distance(c.psi, a.psi), 1e-2);
}

TEST(Spectral, LargeLambdaApproachesFreeEvolution) {
  const GridSpec g(6, 10.0);
  // Density L2 gap to the V = 0 run at t = 3; the potential term enters as 1 / lambda.
  auto gap = [&](double lambda) {
    SpectralState grav = initial_state(g);
    SpectralState free = grav;
    SpectralSolver(g, lambda).advance(grav, 1e-3, 3000);
    SpectralSolver(g, lambda, {.self_gravity = false}).advance(free, 1e-3, 3000);
    const RealVector a = density_from_amplitudes(grav.psi);
    const RealVector b = density_from_amplitudes(free.psi);
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s * g.dx());
  };
  const double g2 = gap(1e2);
  const double g3 = gap(1e3);
  const double g4 = gap(1e4);
  EXPECT_GT(g2, g3);
  EXPECT_GT(g3, g4);
  EXPECT_LT(g4, 1e-3);
}

TEST(Spectral, GravityCollapsesOverdensity) {
  const GridSpec g(6, 10.0);
  const double k = 2.0 * kPi / 10.0;
  const PhysicalField f = initial_condition(g, 0.5, k);
  const std::vector<double> times{0.0, 1.0};
  const auto traj = run_reference(f, 1.0, 1.0, 0.005, times);
  // Peak of 1 + 0.5 sin(kx) sits at x = L/4 and grows under self-gravity.
  const std::size_t peak = g.n_points() / 4;
  EXPECT_NEAR(traj.snapshots[0].density[peak], 1.5, 1e-12);
  EXPECT_GT(traj.snapshots[1].density[peak], 1.5);
}

TEST(Spectral, SnapshotsKeepRequestOrder) {
  const GridSpec g(4, 10.0);
  const PhysicalField f = initial_condition(g, 0.5, 2.0 * kPi / 10.0);
  const std::vector<double> times{2.0, 0.0, 1.0};
  const auto traj = run_reference(f, 1.0, 2.0, 0.01, times);
  ASSERT_EQ(traj.snapshots.size(), 3u);
  EXPECT_NEAR(traj.snapshots[0].time, 2.0, 1e-12);
  EXPECT_NEAR(traj.snapshots[1].time, 0.0, 1e-12);
  EXPECT_NEAR(traj.snapshots[2].time, 1.0, 1e-12);
  EXPECT_EQ(traj.snapshots[0].psi, traj.final_state.psi);
}

TEST(Spectral, RejectsBadInput) {
  const GridSpec g(4, 10.0);
  EXPECT_THROW(SpectralSolver(g, 0.0), InvalidArgument);
  EXPECT_THROW(SpectralSolver(g, -1.0), InvalidArgument);
  SpectralSolver solver(g, 1.0);
  SpectralState wrong{GridSpec(5, 10.0), ComplexVector(32, 0.0), 0.0};
  EXPECT_THROW(solver.step(wrong, 0.01), InvalidArgument);
  const PhysicalField f = initial_condition(g, 0.5, 1.0);
  const std::vector<double> late{3.0};
  EXPECT_THROW(run_reference(f, 1.0, 2.0, 0.01, late), InvalidArgument);
  EXPECT_THROW(run_reference(f, 1.0, 2.0, 0.0, {}), InvalidArgument);
  EXPECT_THROW(run_reference(f, 1.0, -1.0, 0.01, {}), InvalidArgument);
}

}  // namespace
}  // namespace spvte
