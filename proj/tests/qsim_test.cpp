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
#include <random>
#include <set>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "spvte/error.hpp"
#include "spvte/qsim.hpp"
#include "test_support.hpp"

namespace spvte {
namespace {

using testing::random_state;

Eigen::Matrix2cd to_eigen(const Matrix2& m) {
  Eigen::Matrix2cd out;
  out << m[0], m[1], m[2], m[3];
  return out;
}

// Full-register matrix as I - P + P (I x ... x U x ... x I), with P the
// projector onto the required control values. Qubit n-1 is the leftmost
// Kronecker factor.
Eigen::MatrixXcd embed(const Gate& g, int n) {
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(1, 1);
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
    for (const auto& c : g.controls) {
      if (c.qubit == q) p = c.state ? Eigen::Matrix2cd{{0, 0}, {0, 1}} : Eigen::Matrix2cd{{1, 0}, {0, 0}};
    }
    const Eigen::Matrix2cd t = q == g.target ? to_eigen(g.matrix()) : Eigen::Matrix2cd::Identity();
    proj = Eigen::kroneckerProduct(proj, p).eval();
    target = Eigen::kroneckerProduct(target, t).eval();
  }
  const auto dim = proj.rows();
  return Eigen::MatrixXcd::Identity(dim, dim) - proj + proj * target;
}

Gate random_gate(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 6);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  const int t = qubit(rng);
  Gate g{static_cast<GateKind>(kind(rng)), t, {}, angle(rng)};
  std::uniform_int_distribution<int> ncontrols(0, std::min(2, n - 1));
  for (int c = ncontrols(rng); c > 0;) {
    const int q = qubit(rng);
    bool used = q == t;
    for (const auto& ctl : g.controls) used = used || ctl.qubit == q;
    if (used) continue;
    g.controls.push_back({q, (rng() & 1) != 0});
    --c;
  }
  return g;
}

TEST(Gate, PauliXFlipsZero) {
  const auto s = apply_gate(StateVector(1), Gate::x(0));
  EXPECT_EQ(s[0], Complex(0.0));
  EXPECT_EQ(s[1], Complex(1.0));
}

TEST(Gate, RyQuarterTurnMakesPlusState) {
  const auto s = apply_gate(StateVector(1), Gate::ry(0, M_PI / 2));
  EXPECT_NEAR(std::abs(s[0] - Complex(M_SQRT1_2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - Complex(M_SQRT1_2)), 0.0, 1e-15);
}

TEST(Gate, CxOnOneZero) {
  // |q1 q0> = |10>: index 2. Control q1, target q0 gives |11>.
  const auto s = apply_gate(StateVector::basis_state(2, 2), Gate::cx(1, 0));
  EXPECT_EQ(s[3], Complex(1.0));
}

TEST(Gate, NegativePolarityControl) {
  Gate g = Gate::x(0).with_control({1, false});
  EXPECT_EQ(apply_gate(StateVector::basis_state(2, 0), g)[1], Complex(1.0));
  EXPECT_EQ(apply_gate(StateVector::basis_state(2, 2), g)[2], Complex(1.0));
}

TEST(Gate, RotationsAreExponentials) {
  const Eigen::Matrix2cd sx{{0, 1}, {1, 0}};
  const Eigen::Matrix2cd sy{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
  const Eigen::Matrix2cd sz{{1, 0}, {0, -1}};
  for (double a : {-2.7, -0.4, 0.0, 0.9, 3.1}) {
    const Complex f(0.0, -a / 2.0);
    EXPECT_LT((to_eigen(Gate::rx(0, a).matrix()) - (f * sx).exp()).norm(), 1e-14);
    EXPECT_LT((to_eigen(Gate::ry(0, a).matrix()) - (f * sy).exp()).norm(), 1e-14);
    EXPECT_LT((to_eigen(Gate::rz(0, a).matrix()) - (f * sz).exp()).norm(), 1e-14);
  }
}

TEST(Gate, MatricesAreUnitary) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto u = to_eigen(random_gate(1, rng).matrix());
    EXPECT_LT((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm(), 1e-14);
  }
}

TEST(Gate, RejectsBadIndices) {
  StateVector s(2);
  EXPECT_THROW(s.apply(Gate::x(2)), InvalidArgument);
  EXPECT_THROW(s.apply(Gate::x(-1)), InvalidArgument);
  EXPECT_THROW(s.apply(Gate::cx(0, 0)), InvalidArgument);
  EXPECT_THROW(s.apply(Gate::cx(3, 0)), InvalidArgument);
  EXPECT_THROW(Circuit(3).add(Gate::toffoli(1, 1, 0)), InvalidArgument);
}

TEST(StateVector, RandomCircuitsPreserveNorm) {
  std::mt19937_64 rng(11);
  for (int n : {1, 4, 8, 11}) {
    StateVector s(n);
    for (int i = 0; i < 200; ++i) s.apply(random_gate(n, rng));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10) << n;
  }
}

TEST(StateVector, SequentialEqualsComposedMatrix) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    const auto psi0 = random_state(std::size_t{1} << n, rng);
    Circuit c(n);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
    for (int i = 0; i < 40; ++i) {
      const Gate g = random_gate(n, rng);
      c.add(g);
      u = embed(g, n) * u;
    }
    const auto s = apply_circuit(StateVector(n, psi0), c);
    const Eigen::VectorXcd expected =
        u * Eigen::Map<const Eigen::VectorXcd>(psi0.data(), 1 << n);
    for (int i = 0; i < (1 << n); ++i) EXPECT_NEAR(std::abs(s[i] - expected(i)), 0.0, 1e-12);
    EXPECT_LT((circuit_unitary(c) - u).norm(), 1e-12);
  }
}

TEST(Circuit, InverseUndoes) {
  std::mt19937_64 rng(8);
  Circuit c(3);
  for (int i = 0; i < 30; ++i) c.add(random_gate(3, rng));
  Circuit round = c;
  round.append(c.inverse());
  EXPECT_LT((circuit_unitary(round) - Eigen::MatrixXcd::Identity(8, 8)).norm(), 1e-12);
}

TEST(Circuit, ControlledByActsOnlyOnMatchingBranch) {
  Circuit c(2);
  c.add(Gate::h(0));
  const auto cc = c.controlled_by({1, true});
  EXPECT_EQ(apply_circuit(StateVector::basis_state(2, 0), cc)[0], Complex(1.0));
  EXPECT_NEAR(std::abs(apply_circuit(StateVector::basis_state(2, 2), cc)[3]), M_SQRT1_2, 1e-15);
}

TEST(StateVector, TensorProductOrdering) {
  const auto s = tensor_product(StateVector::basis_state(1, 1), StateVector::basis_state(2, 2));
  EXPECT_EQ(s.n_qubits(), 3);
  EXPECT_EQ(s[6], Complex(1.0));
}

TEST(InnerProduct, BasicIdentities) {
  std::mt19937_64 rng(2);
  const StateVector a(3, random_state(8, rng));
  EXPECT_NEAR(std::abs(inner_product(a, a) - Complex(1.0)), 0.0, 1e-14);
  EXPECT_EQ(inner_product(StateVector::basis_state(2, 1), StateVector::basis_state(2, 2)), Complex(0.0));
  EXPECT_THROW(inner_product(StateVector(2), StateVector(3)), InvalidArgument);
}

TEST(InnerProduct, MatchesElementwiseSum) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_state(8, rng);
    const auto b = random_state(8, rng);
    Complex sum{};
    for (int j = 0; j < 8; ++j) sum += std::conj(a[j]) * b[j];
    EXPECT_NEAR(std::abs(inner_product(StateVector(3, a), StateVector(3, b)) - sum), 0.0, 1e-14);
  }
}

TEST(Expectation, ExactValues) {
  EXPECT_EQ(expectation_sigma_z(StateVector(1), 0, ShotModel::exact()), 1.0);
  const auto plus = apply_gate(StateVector(1), Gate::h(0));
  EXPECT_NEAR(expectation_sigma_z(plus, 0, ShotModel::exact()), 0.0, 1e-15);
  EXPECT_NEAR(expectation_sigma_z(StateVector::basis_state(2, 1), 0, ShotModel::exact()), -1.0, 1e-15);
}

TEST(Expectation, SampledWithinFiveSigma) {
  const double n = 1e4;
  const double sigma = std::sqrt((1.0 - 0.25) / n);
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    const double v = sample_sigma_z(0.75, ShotModel::sampled(10000, seed));
    EXPECT_NEAR(v, 0.5, 5.0 * sigma);
    EXPECT_EQ(v, sample_sigma_z(0.75, ShotModel::sampled(10000, seed)));
  }
}

TEST(Expectation, SampledMeanIsUnbiased) {
  const double p0 = 0.3;
  const int seeds = 1000;
  const std::uint64_t shots = 500;
  double mean = 0.0;
  for (int s = 0; s < seeds; ++s) {
    mean += sample_sigma_z(p0, ShotModel::sampled(shots, derive_seed(17, s)));
  }
  mean /= seeds;
  const double exact = 2 * p0 - 1;
  const double se = std::sqrt((1 - exact * exact) / static_cast<double>(shots) / seeds);
  EXPECT_NEAR(mean, exact, 5 * se);
}

TEST(Expectation, SampledConvergesToExact) {
  const double p0 = 0.62;
  const double v = sample_sigma_z(p0, ShotModel::sampled(100'000'000, 5));
  EXPECT_NEAR(v, 2 * p0 - 1, 5e-4);
}

TEST(Seeds, CounterExpansionIsInjectiveOnSmallRange) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t c = 0; c < 10000; ++c) seen.insert(derive_seed(42, c));
  EXPECT_EQ(seen.size(), 10000U);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

}  // namespace
}  // namespace spvte
