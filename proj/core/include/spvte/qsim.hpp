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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spvte/grid.hpp"

namespace spvte {

// Qubit ordering is little-endian throughout: qubit q contributes bit (1 << q)
// to the basis-state index, so qubit 0 is the least significant qubit.

enum class GateKind { RX, RY, RZ, X, Y, Z, H };

/// A control qubit and the computational-basis value it must hold.
struct Control {
  int qubit;
  bool state = true;

  friend bool operator==(const Control&, const Control&) = default;
};

using Matrix2 = std::array<Complex, 4>;  // row-major 2x2

/// Single-target gate with any number of (polarity-aware) controls.
/// Rotations follow R_a(angle) = exp(-i angle a / 2).
struct Gate {
  GateKind kind;
  int target;
  std::vector<Control> controls;
  double angle = 0.0;

  static Gate rx(int q, double angle) { return {GateKind::RX, q, {}, angle}; }
  static Gate ry(int q, double angle) { return {GateKind::RY, q, {}, angle}; }
  static Gate rz(int q, double angle) { return {GateKind::RZ, q, {}, angle}; }
  static Gate x(int q) { return {GateKind::X, q, {}, 0.0}; }
  static Gate y(int q) { return {GateKind::Y, q, {}, 0.0}; }
  static Gate z(int q) { return {GateKind::Z, q, {}, 0.0}; }
  static Gate h(int q) { return {GateKind::H, q, {}, 0.0}; }
  static Gate cx(int control, int target) { return {GateKind::X, target, {{control, true}}, 0.0}; }
  static Gate cy(int control, int target) { return {GateKind::Y, target, {{control, true}}, 0.0}; }
  static Gate cz(int control, int target) { return {GateKind::Z, target, {{control, true}}, 0.0}; }
  static Gate toffoli(int c0, int c1, int target) {
    return {GateKind::X, target, {{c0, true}, {c1, true}}, 0.0};
  }
  static Gate mcx(std::vector<Control> controls, int target) {
    return {GateKind::X, target, std::move(controls), 0.0};
  }

  bool is_rotation() const noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  }
  Gate with_control(Control c) const;
  Gate inverse() const;
  Matrix2 matrix() const;
};

/// Ordered gate list acting on a fixed-width register.
class Circuit {
 public:
  explicit Circuit(int n_qubits = 0) : n_qubits_(n_qubits) {}

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  Circuit& add(Gate gate);
  Circuit& append(const Circuit& other);
  Circuit inverse() const;
  /// Every gate additionally conditioned on `c`.
  Circuit controlled_by(Control c) const;

  auto begin() const { return gates_.begin(); }
  auto end() const { return gates_.end(); }

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, ComplexVector amplitudes);

  static StateVector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;

  void apply(const Gate& gate);
  void apply(const Circuit& circuit);

  /// Probability that measuring `qubit` yields 0.
  double probability_zero(int qubit) const;

 private:
  int n_qubits_;
  ComplexVector amplitudes_;
};

StateVector apply_gate(StateVector state, const Gate& gate);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

/// |high> (x) |low>: `low` occupies qubits [0, low.n_qubits()).
StateVector tensor_product(const StateVector& high, const StateVector& low);

/// <a|b>, conjugating a.
Complex inner_product(const StateVector& a, const StateVector& b);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

/// Exact expectation values, or a seeded binomial estimate from N_s shots.
struct ShotModel {
  enum class Mode { Exact, Sampled };

  Mode mode = Mode::Exact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static ShotModel exact() { return {}; }
  static ShotModel sampled(std::uint64_t shots, std::uint64_t seed) {
    return {Mode::Sampled, shots, seed};
  }
  bool is_exact() const noexcept { return mode == Mode::Exact; }
  /// Same shot budget, different stream.
  ShotModel reseeded(std::uint64_t seed) const { return {mode, shots, seed}; }
};

/// Counter-based seed expansion (SplitMix64 finalizer over master ^ f(counter)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// (n0 - n1) / N_s with n0 ~ Binomial(N_s, p0); exact mode returns 2 p0 - 1.
double sample_sigma_z(double p0, const ShotModel& shots);

/// <sigma_z> on `qubit`: P(0) - P(1).
double expectation_sigma_z(const StateVector& state, int qubit, const ShotModel& shots);

/// Dense unitary of a circuit (column i = circuit applied to |i>).
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

}  // namespace spvte
