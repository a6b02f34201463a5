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
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "spvte/analysis.hpp"
#include "spvte/error.hpp"

namespace spvte {
namespace {

TEST(Fidelity, Examples) {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexVector e0{1.0, 0.0};
  const ComplexVector e1{0.0, 1.0};
  const ComplexVector plus{r, r};
  EXPECT_DOUBLE_EQ(fidelity(e0, e0), 1.0);
  EXPECT_DOUBLE_EQ(fidelity(e0, e1), 0.0);
  EXPECT_NEAR(fidelity(e0, plus), 0.5, 1e-15);
  // Global phase drops out.
  const ComplexVector phased{Complex(0.0, r), Complex(0.0, r)};
  EXPECT_NEAR(fidelity(plus, phased), 1.0, 1e-15);
  EXPECT_THROW(fidelity(e0, ComplexVector(3, 0.0)), InvalidArgument);
}

TEST(Fidelity, DensityForm) {
  const RealVector flat(8, 1.0);
  EXPECT_NEAR(density_fidelity(flat, flat), 1.0, 1e-15);
  // Half the points carry everything: (sum sqrt(2) / 8 over 4 points)^2 = 1/2.
  RealVector half(8, 0.0);
  for (int j = 0; j < 4; ++j) half[j] = 2.0;
  EXPECT_NEAR(density_fidelity(flat, half), 0.5, 1e-15);
}

TEST(ConvergenceMetric, LinearProfileIsInterpolatedExactly) {
  // Periodic triangle wave: piecewise linear on the coarse grid.
  const std::size_t nf = 64;
  RealVector fine(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    const double u = static_cast<double>(i) / nf;
    fine[i] = 1.0 + 0.3 * (u < 0.5 ? 4.0 * u - 1.0 : 3.0 - 4.0 * u);
  }
  RealVector coarse(8);
  for (std::size_t j = 0; j < 8; ++j) coarse[j] = fine[j * 8];
  EXPECT_NEAR(convergence_metric(coarse, fine, 10.0), 0.0, 1e-14);
}

TEST(ConvergenceMetric, SameResolutionIsPlainL2) {
  const RealVector a{1.0, 2.0, 3.0, 4.0};
  const RealVector b{1.5, 2.0, 2.0, 4.0};
  // sqrt(dx * (0.25 + 1)) with dx = 2.
  EXPECT_NEAR(convergence_metric(a, b, 8.0), std::sqrt(2.5), 1e-15);
  EXPECT_NEAR(convergence_metric(a, a, 8.0), 0.0, 0.0);
}

TEST(ConvergenceMetric, UniformAgainstSine) {
  const double delta = 0.2;
  const double length = 10.0;
  const std::size_t nf = 128;
  RealVector ref(nf);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < nf; ++i) {
    const double s = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / nf);
    ref[i] = 1.0 + delta * s;
    sum_sq += s * s;
  }
  const RealVector coarse(16, 1.0);
  const double expected = delta * std::sqrt(sum_sq * length / nf);
  EXPECT_NEAR(convergence_metric(coarse, ref, length), expected, 1e-14);
  // Closed form: sum sin^2 = N / 2, so the norm is delta sqrt(L / 2).
  EXPECT_NEAR(expected, delta * std::sqrt(length / 2.0), 1e-14);
}

TEST(ConvergenceMetric, RejectsFinerThanReference) {
  EXPECT_THROW(convergence_metric(RealVector(16, 1.0), RealVector(8, 1.0), 1.0), InvalidArgument);
  EXPECT_THROW(convergence_metric(RealVector(8, 1.0), RealVector(8, 1.0), 0.0), InvalidArgument);
}

TEST(Interpolation, WrapsOnLastInterval) {
  const RealVector coarse{0.0, 2.0};
  const RealVector out = interpolate_periodic(coarse, 4);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_DOUBLE_EQ(out[0], 0.0);
  EXPECT_DOUBLE_EQ(out[1], 1.0);
  EXPECT_DOUBLE_EQ(out[2], 2.0);
  EXPECT_DOUBLE_EQ(out[3], 1.0);
}

TEST(MinQubits, Bracketing) {
  const std::vector<ConvergenceRecord> r{{4, 1.0, 0.5, 3.0}, {5, 1.0, 0.05, 3.0}};
  const MinQubits m = min_qubits_for_convergence(r, 0.1);
  EXPECT_EQ(m.n, 5);
  EXPECT_GT(m.fractional, 4.0);
  EXPECT_LT(m.fractional, 5.0);
  EXPECT_NEAR(m.fractional, 4.0 + 0.4 / 0.45, 1e-14);
  EXPECT_TRUE(m.monotone);
}

TEST(MinQubits, ThresholdAboveEverythingGivesSmallest) {
  const std::vector<ConvergenceRecord> r{{5, 1.0, 0.05}, {3, 1.0, 0.4}, {4, 1.0, 0.2}};
  const MinQubits m = min_qubits_for_convergence(r, 1.0);
  EXPECT_EQ(m.n, 3);
  EXPECT_DOUBLE_EQ(m.fractional, 3.0);
}

TEST(MinQubits, PowerLawRecords) {
  std::vector<ConvergenceRecord> r;
  for (int n = 3; n <= 10; ++n) r.push_back({n, 1.0, std::ldexp(1.0, -n)});
  const MinQubits m = min_qubits_for_convergence(r, std::ldexp(1.0, -7));
  EXPECT_EQ(m.n, 7);
  EXPECT_DOUBLE_EQ(m.fractional, 7.0);
}

TEST(MinQubits, LaterExcursionAboveThresholdCounts) {
  const std::vector<ConvergenceRecord> r{{3, 1.0, 0.5}, {4, 1.0, 0.2}, {5, 1.0, 0.05},
                                         {6, 1.0, 0.3}, {7, 1.0, 0.01}};
  const MinQubits m = min_qubits_for_convergence(r, 0.1);
  EXPECT_EQ(m.n, 7);
}

TEST(MinQubits, Errors) {
  EXPECT_THROW(min_qubits_for_convergence({}, 0.1), InvalidArgument);
  const std::vector<ConvergenceRecord> r{{4, 1.0, 0.5}, {5, 1.0, 0.3}};
  EXPECT_THROW(min_qubits_for_convergence(r, 0.1), InvalidArgument);
}

TEST(LogFit, RecoversSyntheticModel) {
  std::vector<std::pair<double, double>> pts;
  for (double lambda : {0.1, 0.25, 0.5, 1.0, 2.0}) pts.emplace_back(lambda, -1.44 * std::log(lambda) + 6.0);
  const LogFit f = fit_log_scaling(pts);
  EXPECT_NEAR(f.k, -1.44, 1e-12);
  EXPECT_NEAR(f.q, 6.0, 1e-12);
  EXPECT_NEAR(f.rms_residual, 0.0, 1e-12);
}

TEST(LogFit, OneQubitPerHalvingIsMinusOneOverLnTwo) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 5; ++i) pts.emplace_back(std::ldexp(1.0, -i), 4.0 + i);
  const LogFit f = fit_log_scaling(pts);
  EXPECT_NEAR(f.k, -1.0 / std::numbers::ln2, 1e-12);
  EXPECT_NEAR(f.k, -1.44, 0.01);
}

TEST(LogFit, ConstantDataHasZeroSlope) {
  const std::vector<std::pair<double, double>> pts{{0.1, 5.0}, {1.0, 5.0}, {3.0, 5.0}};
  const LogFit f = fit_log_scaling(pts);
  EXPECT_NEAR(f.k, 0.0, 1e-14);
  EXPECT_NEAR(f.q, 5.0, 1e-14);
}

TEST(LogFit, Errors) {
  const std::vector<std::pair<double, double>> two{{0.1, 5.0}, {1.0, 4.0}};
  EXPECT_THROW(fit_log_scaling(two), InvalidArgument);
  const std::vector<std::pair<double, double>> same{{1.0, 5.0}, {1.0, 4.0}, {1.0, 3.0}};
  EXPECT_THROW(fit_log_scaling(same), InvalidArgument);
  const std::vector<std::pair<double, double>> negative{{-1.0, 5.0}, {1.0, 4.0}, {2.0, 3.0}};
  EXPECT_THROW(fit_log_scaling(negative), InvalidArgument);
}

TEST(Variance, PotentialEstimator) {
  EXPECT_NEAR(variance_potential(1.0, 8.0, 0.0, 1e4), 0.08, 1e-15);
  EXPECT_DOUBLE_EQ(variance_potential(1.0, 8.0, 1.0, 1e4), 0.0);
  EXPECT_DOUBLE_EQ(variance_potential(1.0, 8.0, -1.0, 1e4), 0.0);
  const double e = variance_potential(0.7, 8.0, 0.3, 1e3);
  EXPECT_NEAR(variance_potential(0.7, 8.0, 0.3, 4e3), e / 2.0, 1e-15);
  EXPECT_THROW(variance_potential(1.0, 8.0, 1.5, 1e4), InvalidArgument);
  EXPECT_THROW(variance_potential(1.0, 8.0, 0.0, 0.5), InvalidArgument);
}

TEST(Variance, KineticEstimator) {
  EXPECT_NEAR(variance_kinetic(3, 8.0, 0.0, 0.0, 0.0, 1e4), 0.16, 1e-15);
  const double e3 = variance_kinetic(3, 8.0, 0.2, -0.1, 0.5, 1e4);
  EXPECT_NEAR(variance_kinetic(4, 8.0, 0.2, -0.1, 0.5, 1e4), 4.0 * e3, 1e-13);
  EXPECT_NEAR(variance_kinetic(3, 8.0, 0.2, -0.1, 0.5, 4e4), e3 / 2.0, 1e-15);
  EXPECT_THROW(variance_kinetic(3, 8.0, 2.0, 0.0, 0.0, 1e4), InvalidArgument);
}

TEST(LocalMaxima, PeriodicScan) {
  const RealVector v{3.0, 1.0, 2.0, 1.0, 0.5, 2.5};
  const auto m = local_maxima(v, 1.5);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], 0u);
  EXPECT_EQ(m[1], 2u);
  EXPECT_TRUE(local_maxima(v, 5.0).empty());
}

}  // namespace
}  // namespace spvte
