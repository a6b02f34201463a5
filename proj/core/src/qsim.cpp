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

#include "spvte/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "spvte/error.hpp"

namespace spvte {
namespace {

constexpr Complex kI{0.0, 1.0};

void validate(const Gate& gate, int n_qubits) {
  auto in_range = [n_qubits](int q) { return q >= 0 && q < n_qubits; };
  if (!in_range(gate.target)) {
    throw InvalidArgument("gate target " + std::to_string(gate.target) + " out of range for " +
                          std::to_string(n_qubits) + " qubits");
  }
  for (std::size_t i = 0; i < gate.controls.size(); ++i) {
    const int q = gate.controls[i].qubit;
    if (!in_range(q)) {
      throw InvalidArgument("gate control " + std::to_string(q) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
    }
    if (q == gate.target) throw InvalidArgument("gate control overlaps its target");
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.controls[j].qubit == q) throw InvalidArgument("duplicate gate control qubit");
    }
  }
}

}  // namespace

Gate Gate::with_control(Control c) const {
  Gate g = *this;
  g.controls.push_back(c);
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (is_rotation()) g.angle = -angle;
  return g;
}

Matrix2 Gate::matrix() const {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::RX:
      return {c, -kI * s, -kI * s, c};
    case GateKind::RY:
      return {c, -s, s, c};
    case GateKind::RZ:
      return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y:
      return {0.0, -kI, kI, 0.0};
    case GateKind::Z:
      return {1.0, 0.0, 0.0, -1.0};
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      return {r, r, r, -r};
    }
  }
  return {1.0, 0.0, 0.0, 1.0};
}

Circuit& Circuit::add(Gate gate) {
  validate(gate, n_qubits_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_) {
    throw InvalidArgument("Circuit::append: appended circuit is wider than the register");
  }
  for (const auto& g : other.gates_) add(g);
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit out(n_qubits_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

Circuit Circuit::controlled_by(Control c) const {
  Circuit out(n_qubits_);
  for (const auto& g : gates_) out.add(g.with_control(c));
  return out;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 28) {
    throw InvalidArgument("StateVector: qubit count must be in [1, 28]");
  }
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 28) {
    throw InvalidArgument("StateVector: qubit count must be in [1, 28]");
  }
  if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw InvalidArgument("StateVector: amplitude count must be 2^n_qubits");
  }
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw InvalidArgument("basis_state: index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

void StateVector::apply(const Gate& gate) {
  validate(gate, n_qubits_);
  std::size_t ctrl_mask = 0;
  std::size_t ctrl_value = 0;
  for (const auto& c : gate.controls) {
    const std::size_t bit = std::size_t{1} << c.qubit;
    ctrl_mask |= bit;
    if (c.state) ctrl_value |= bit;
  }
  const std::size_t tbit = std::size_t{1} << gate.target;
  const Matrix2 m = gate.matrix();
  const std::size_t dim = amplitudes_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & tbit) != 0 || (i & ctrl_mask) != ctrl_value) continue;
    const std::size_t j = i | tbit;
    const Complex a0 = amplitudes_[i];
    const Complex a1 = amplitudes_[j];
    amplitudes_[i] = m[0] * a0 + m[1] * a1;
    amplitudes_[j] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply(const Circuit& circuit) {
  if (circuit.n_qubits() > n_qubits_) {
    throw InvalidArgument("StateVector::apply: circuit is wider than the register");
  }
  for (const auto& g : circuit) apply(g);
}

double StateVector::probability_zero(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) throw InvalidArgument("probability_zero: qubit out of range");
  const std::size_t bit = std::size_t{1} << qubit;
  double p0 = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & bit) == 0) p0 += std::norm(amplitudes_[i]);
  }
  return p0;
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
  state.apply(circuit);
  return state;
}

StateVector tensor_product(const StateVector& high, const StateVector& low) {
  const int n = high.n_qubits() + low.n_qubits();
  ComplexVector amps(std::size_t{1} << n);
  const std::size_t low_dim = low.dim();
  for (std::size_t h = 0; h < high.dim(); ++h) {
    for (std::size_t l = 0; l < low_dim; ++l) amps[h * low_dim + l] = high[h] * low[l];
  }
  return StateVector(n, std::move(amps));
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("inner_product: dimension mismatch");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw InvalidArgument("inner_product: qubit count mismatch");
  return inner_product(a.amplitudes(), b.amplitudes());
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master ^ (counter * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sample_sigma_z(double p0, const ShotModel& shots) {
  p0 = std::clamp(p0, 0.0, 1.0);
  if (shots.is_exact()) return 2.0 * p0 - 1.0;
  if (shots.shots == 0) throw InvalidArgument("sampled ShotModel needs at least one shot");
  std::mt19937_64 rng(shots.seed);
  std::binomial_distribution<std::uint64_t> draw(shots.shots, p0);
  const double n0 = static_cast<double>(draw(rng));
  const double ns = static_cast<double>(shots.shots);
  return (2.0 * n0 - ns) / ns;
}

double expectation_sigma_z(const StateVector& state, int qubit, const ShotModel& shots) {
  return sample_sigma_z(state.probability_zero(qubit), shots);
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
  const int n = circuit.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis_state(n, col);
    s.apply(circuit);
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = s[row];
  }
  return u;
}

}  // namespace spvte
