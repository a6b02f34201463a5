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

#include <gtest/gtest.h>

#include "spvte/ansatz.hpp"
#include "spvte/error.hpp"
#include "spvte/hadamard.hpp"
#include "test_support.hpp"

namespace spvte {
namespace {

using testing::dot;
using testing::random_angles;
using testing::random_state;

TEST(LayeredAnsatz, ParameterLayout) {
  const auto wf = LayeredAnsatz::wavefunction(4, 4);
  EXPECT_EQ(wf.param_count(), 32);
  EXPECT_EQ(wf.entangling_layers(), 3);
  const auto s = wf.slot(9);  // layer 1, axis 0 (Y), qubit 1
  EXPECT_EQ(s.layer, 1);
  EXPECT_EQ(s.axis, PauliAxis::Y);
  EXPECT_EQ(s.qubit, 1);
  EXPECT_EQ(wf.slot(6).axis, PauliAxis::Z);
  EXPECT_EQ(LayeredAnsatz::wavefunction(5, 6).param_count(), 60);
}

TEST(LayeredAnsatz, ZeroAnglesGiveZeroState) {
  const auto pot = LayeredAnsatz::potential(3, 3);
  const auto s = build_unitary_state(pot, RealVector(9, 0.0));
  EXPECT_NEAR(std::abs(s[0] - Complex(1.0)), 0.0, 1e-15);
}

TEST(LayeredAnsatz, SingleQubitRy) {
  const LayeredAnsatz a(1, 1, {PauliAxis::Y}, Entangler::LinearCX);
  for (double t : {-1.3, 0.2, 2.5}) {
    const RealVector theta{t};
    const auto s = build_unitary_state(a, theta);
    EXPECT_NEAR(std::abs(s[0] - Complex(std::cos(t / 2))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - Complex(std::sin(t / 2))), 0.0, 1e-15);
  }
}

TEST(LayeredAnsatz, PotentialAnsatzIsRealValued) {
  const auto pot = LayeredAnsatz::potential(3, 3);
  EXPECT_EQ(pot.param_count(), 9);
  EXPECT_TRUE(pot.is_real_valued());
  EXPECT_FALSE(LayeredAnsatz::wavefunction(3, 3).is_real_valued());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto s = build_unitary_state(pot, random_angles(9, rng));
    for (const auto& a : s.amplitudes()) EXPECT_LT(std::abs(a.imag()), 1e-14);
  }
}

TEST(LayeredAnsatz, RejectsWrongParameterCount) {
  const auto wf = LayeredAnsatz::wavefunction(2, 2);
  EXPECT_THROW(build_unitary_state(wf, RealVector(3, 0.0)), InvalidArgument);
  EXPECT_THROW(build_derivative_state(wf, RealVector(8, 0.0), 8), InvalidArgument);
}

// Central differences converge to -(i/2) W_k|0> at second order.
TEST(Derivative, MatchesCentralDifferences) {
  const auto wf = LayeredAnsatz::wavefunction(3, 3);
  std::mt19937_64 rng(9);
  const auto theta = random_angles(static_cast<std::size_t>(wf.param_count()), rng);
  for (int k : {0, 4, 11, 17}) {
    const auto d = build_derivative_state(wf, theta, k);
    double err[2];
    const double hs[2] = {1e-3, 1e-4};
    for (int i = 0; i < 2; ++i) {
      auto up = theta, down = theta;
      up[k] += hs[i];
      down[k] -= hs[i];
      const auto su = build_unitary_state(wf, up);
      const auto sd = build_unitary_state(wf, down);
      double e = 0.0;
      for (std::size_t j = 0; j < 8; ++j) e += std::norm(d[j] - (su[j] - sd[j]) / (2 * hs[i]));
      err[i] = std::sqrt(e);
    }
    EXPECT_LT(err[0], 0.1 * hs[0] * hs[0]);
    EXPECT_LT(err[1], 0.1 * hs[1] * hs[1] + 1e-10);
  }
}

TEST(FkState, SingleQubitHandValues) {
  const LayeredAnsatz a(1, 1, {PauliAxis::Y}, Entangler::LinearCX);
  const auto s = build_fk_state(a, RealVector{0.0}, 0);
  // index = 2 * system + ancilla
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - Complex(M_SQRT1_2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[2] - Complex(0.0, M_SQRT1_2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[3]), 0.0, 1e-15);
}

TEST(FkState, AncillaZeroBranchIsW) {
  const auto wf = LayeredAnsatz::wavefunction(3, 2);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto theta = random_angles(12, rng);
    for (int k = 0; k < 12; k += 5) {
      const auto s = build_fk_state(wf, theta, k);
      const auto w = build_w_state(wf, theta, k);
      EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
      EXPECT_NEAR(s.probability_zero(kAncilla), 0.5, 1e-12);
      for (std::size_t j = 0; j < 8; ++j) {
        EXPECT_NEAR(std::abs(s[2 * j] - M_SQRT1_2 * w[j]), 0.0, 1e-12);
      }
      // The flipped control puts the generator on the |1> branch.
      const auto f1 = build_fk_state(wf, theta, k, 1);
      for (std::size_t j = 0; j < 8; ++j) {
        EXPECT_NEAR(std::abs(f1[2 * j + 1] - M_SQRT1_2 * w[j]), 0.0, 1e-12);
      }
    }
  }
}

TEST(FklState, NormalizedAndDiagonalValue) {
  const LayeredAnsatz a(1, 1, {PauliAxis::Y}, Entangler::LinearCX);
  EXPECT_NEAR(circuit_derivative_overlap(a, RealVector{0.7}, 0, 0, ShotModel::exact()), 1.0, 1e-14);
  const auto wf = LayeredAnsatz::wavefunction(3, 2);
  std::mt19937_64 rng(13);
  const auto theta = random_angles(12, rng);
  EXPECT_NEAR(build_fkl_state(wf, theta, 2, 9).norm_squared(), 1.0, 1e-12);
}

TEST(FklState, IndependentQubitsAtZeroAngles) {
  const LayeredAnsatz a(2, 1, {PauliAxis::Y}, Entangler::LinearCX);
  const RealVector theta{0.0, 0.0};
  const auto d0 = build_derivative_state(a, theta, 0);
  const auto d1 = build_derivative_state(a, theta, 1);
  EXPECT_NEAR(dot(d0.amplitudes(), d1.amplitudes()).real(), 0.0, 1e-15);
  EXPECT_NEAR(circuit_derivative_overlap(a, theta, 0, 1, ShotModel::exact()), 0.0, 1e-15);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd system_block(int n, ShiftDirection dir) {
  const int work = adder_work_qubits(n);
  const int width = 1 + n + work;
  const auto layout = AdderLayout::contiguous(0, 1, n, 1 + n);
  const std::size_t N = std::size_t{1} << n;
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t j = 0; j < N; ++j) {
    auto s = adder(StateVector::basis_state(width, (j << 1) | 1), layout, dir);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      if (std::abs(s[i]) < 1e-12) continue;
      EXPECT_EQ(i & 1, 1U) << "control flipped";
      EXPECT_EQ(i >> (1 + n), 0U) << "work ancilla not restored";
      block(static_cast<Eigen::Index>((i >> 1) & (N - 1)), static_cast<Eigen::Index>(j)) += s[i].real();
    }
  }
  return block;
}

TEST(Adder, DecrementsWithControl) {
  const int n = 3;
  const auto layout = AdderLayout::contiguous(0, 1, n, 1 + n);
  const int width = 1 + n + adder_work_qubits(n);
  const auto s = adder(StateVector::basis_state(width, (3 << 1) | 1), layout, ShiftDirection::Minus);
  EXPECT_NEAR(std::abs(s[(2 << 1) | 1]), 1.0, 1e-15);
  const auto w = adder(StateVector::basis_state(width, 1), layout, ShiftDirection::Minus);
  EXPECT_NEAR(std::abs(w[(7 << 1) | 1]), 1.0, 1e-15);
  // Control off: identity.
  const auto off = adder(StateVector::basis_state(width, 3 << 1), layout, ShiftDirection::Minus);
  EXPECT_NEAR(std::abs(off[3 << 1]), 1.0, 1e-15);
}

TEST(Adder, IsCyclicShiftPermutation) {
  for (int n = 2; n <= 6; ++n) {
    const std::size_t N = std::size_t{1} << n;
    Eigen::MatrixXd minus = Eigen::MatrixXd::Zero(N, N), plus = minus;
    for (std::size_t j = 0; j < N; ++j) {
      minus((j + N - 1) % N, j) = 1.0;
      plus((j + 1) % N, j) = 1.0;
    }
    EXPECT_LT((system_block(n, ShiftDirection::Minus) - minus).norm(), 1e-12) << n;
    EXPECT_LT((system_block(n, ShiftDirection::Plus) - plus).norm(), 1e-12) << n;
  }
}

TEST(Adder, GateCountsAndInverse) {
  for (int n = 3; n <= 6; ++n) {
    const int width = 1 + n + adder_work_qubits(n);
    const auto layout = AdderLayout::contiguous(0, 1, n, 1 + n);
    const auto c = adder_circuit(layout, ShiftDirection::Minus, width);
    int toffoli = 0, cx = 0;
    for (const auto& g : c) {
      ASSERT_EQ(g.kind, GateKind::X);
      (g.controls.size() == 2 ? toffoli : cx) += 1;
      EXPECT_LE(g.controls.size(), 2U);
    }
    EXPECT_EQ(toffoli, 2 * n - 2);
    EXPECT_EQ(cx, n - 2);
    EXPECT_EQ(adder_work_qubits(n), n - 2);
    Circuit round = c;
    round.append(adder_circuit(layout, ShiftDirection::Plus, width));
    const auto u = circuit_unitary(round);
    EXPECT_LT((u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm(), 1e-12);
  }
}

TEST(Adder, RejectsDirtyWorkQubits) {
  const int n = 4;
  const auto layout = AdderLayout::contiguous(0, 1, n, 1 + n);
  const int width = 1 + n + adder_work_qubits(n);
  EXPECT_THROW(adder(StateVector::basis_state(width, std::size_t{1} << (1 + n)), layout,
                     ShiftDirection::Minus),
               InvalidArgument);
}

TEST(IndexSum, PinnedExamples) {
  for (std::size_t l = 0; l < 8; ++l) EXPECT_EQ(index_sum(0, l, 3), l);
  EXPECT_EQ(index_sum(1, 3, 2), 0U);
  EXPECT_EQ(index_sum(1, 3, 3), 4U);
}

TEST(ToffoliLadder, ShiftsPotentialByWavefunctionIndex) {
  for (int n = 1; n <= 3; ++n) {
    const std::size_t N = std::size_t{1} << n;
    std::vector<int> wf_q, pot_q;
    for (int i = 0; i < n; ++i) {
      wf_q.push_back(1 + i);
      pot_q.push_back(1 + n + i);
    }
    const int width = 1 + 2 * n;
    const auto ladder = toffoli_ladder(0, wf_q, pot_q, width);
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t l = 0; l < N; ++l) {
        const std::size_t in = 1 | (l << 1) | (j << (1 + n));
        const auto s = apply_circuit(StateVector::basis_state(width, in), ladder);
        const std::size_t out = 1 | (l << 1) | (((j + N - l) % N) << (1 + n));
        EXPECT_NEAR(std::abs(s[out]), 1.0, 1e-15) << n << ' ' << j << ' ' << l;
        // index_sum inverts the map.
        EXPECT_EQ(index_sum((j + N - l) % N, l, n), j);
        const auto off = apply_circuit(StateVector::basis_state(width, in & ~std::size_t{1}), ladder);
        EXPECT_NEAR(std::abs(off[in & ~std::size_t{1}]), 1.0, 1e-15);
      }
    }
  }
}

TEST(ToffoliLadder, RejectsMismatchedRegisters) {
  const std::vector<int> a{1, 2}, b{3};
  EXPECT_THROW(toffoli_ladder(0, a, b, 4), InvalidArgument);
}

}  // namespace
}  // namespace spvte
