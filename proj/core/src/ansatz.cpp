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

#include "spvte/ansatz.hpp"

#include <algorithm>
#include <string>

#include "spvte/error.hpp"

namespace spvte {
namespace {

GateKind rotation_kind(PauliAxis a) {
  switch (a) {
    case PauliAxis::X:
      return GateKind::RX;
    case PauliAxis::Y:
      return GateKind::RY;
    case PauliAxis::Z:
      return GateKind::RZ;
  }
  return GateKind::RY;
}

GateKind pauli_kind(PauliAxis a) {
  switch (a) {
    case PauliAxis::X:
      return GateKind::X;
    case PauliAxis::Y:
      return GateKind::Y;
    case PauliAxis::Z:
      return GateKind::Z;
  }
  return GateKind::Y;
}

void check_param_index(const LayeredAnsatz& ansatz, int k) {
  if (k < 0 || k >= ansatz.param_count()) {
    throw InvalidArgument("parameter index " + std::to_string(k) + " out of range [0, " +
                          std::to_string(ansatz.param_count()) + ")");
  }
}

void check_control_state(int c) {
  if (c != 0 && c != 1) throw InvalidArgument("control state must be 0 or 1");
}

StateVector prepare_plus_and_run(int width, const Circuit& body) {
  StateVector s(width);
  s.apply(Gate::h(kAncilla));
  s.apply(body);
  return s;
}

}  // namespace

LayeredAnsatz::LayeredAnsatz(int n_qubits, int layers, std::vector<PauliAxis> axes,
                             Entangler entangler)
    : n_qubits_(n_qubits), layers_(layers), axes_(std::move(axes)), entangler_(entangler) {
  if (n_qubits_ < 1 || n_qubits_ > 24) throw InvalidArgument("ansatz qubit count out of range");
  if (layers_ < 1) throw InvalidArgument("ansatz needs at least one rotation layer");
  if (axes_.empty()) throw InvalidArgument("ansatz needs at least one rotation axis");
}

LayeredAnsatz LayeredAnsatz::wavefunction(int n_qubits, int layers) {
  return {n_qubits, layers, {PauliAxis::Y, PauliAxis::Z}, Entangler::LinearCZ};
}

LayeredAnsatz LayeredAnsatz::potential(int n_qubits, int layers) {
  return {n_qubits, layers, {PauliAxis::Y}, Entangler::LinearCX};
}

LayeredAnsatz::Slot LayeredAnsatz::slot(int param) const {
  check_param_index(*this, param);
  const int per_layer = n_qubits_ * static_cast<int>(axes_.size());
  const int within = param % per_layer;
  return {param / per_layer, axes_[static_cast<std::size_t>(within / n_qubits_)],
          within % n_qubits_};
}

bool LayeredAnsatz::is_real_valued() const noexcept {
  // R_y and CX/CZ have real matrices.
  return std::all_of(axes_.begin(), axes_.end(), [](PauliAxis a) { return a == PauliAxis::Y; });
}

void LayeredAnsatz::check_params(std::span<const double> theta) const {
  if (theta.size() != static_cast<std::size_t>(param_count())) {
    throw InvalidArgument("expected " + std::to_string(param_count()) + " parameters, got " +
                          std::to_string(theta.size()));
  }
}

Circuit LayeredAnsatz::circuit(std::span<const double> theta, int register_width, int offset,
                               std::span<const PauliInsertion> insertions) const {
  check_params(theta);
  if (offset < 0 || offset + n_qubits_ > register_width) {
    throw InvalidArgument("ansatz register does not fit in the circuit width");
  }
  for (const auto& ins : insertions) check_param_index(*this, ins.param);

  Circuit c(register_width);
  int p = 0;
  for (int layer = 0; layer < layers_; ++layer) {
    if (layer > 0) {
      for (int q = 0; q + 1 < n_qubits_; ++q) {
        c.add(entangler_ == Entangler::LinearCX ? Gate::cx(offset + q, offset + q + 1)
                                                : Gate::cz(offset + q, offset + q + 1));
      }
    }
    for (PauliAxis axis : axes_) {
      for (int q = 0; q < n_qubits_; ++q, ++p) {
        for (const auto& ins : insertions) {
          if (ins.param != p) continue;
          Gate g{pauli_kind(axis), offset + q, {}, 0.0};
          if (ins.control) g.controls.push_back(*ins.control);
          c.add(std::move(g));
        }
        c.add(Gate{rotation_kind(axis), offset + q, {}, theta[static_cast<std::size_t>(p)]});
      }
    }
  }
  return c;
}

StateVector build_unitary_state(const LayeredAnsatz& ansatz, std::span<const double> theta) {
  StateVector s(ansatz.n_qubits());
  s.apply(ansatz.circuit(theta, ansatz.n_qubits()));
  return s;
}

StateVector build_w_state(const LayeredAnsatz& ansatz, std::span<const double> theta, int k) {
  const PauliInsertion ins{k, std::nullopt};
  StateVector s(ansatz.n_qubits());
  s.apply(ansatz.circuit(theta, ansatz.n_qubits(), 0, std::span(&ins, 1)));
  return s;
}

StateVector build_derivative_state(const LayeredAnsatz& ansatz, std::span<const double> theta,
                                   int k) {
  StateVector s = build_w_state(ansatz, theta, k);
  for (auto& a : s.amplitudes()) a *= Complex(0.0, -0.5);
  return s;
}

Circuit fk_circuit(const LayeredAnsatz& ansatz, std::span<const double> theta, int k,
                   int control_state, int register_width, int ancilla, int offset) {
  check_control_state(control_state);
  const PauliInsertion ins{k, Control{ancilla, control_state == 1}};
  return ansatz.circuit(theta, register_width, offset, std::span(&ins, 1));
}

Circuit fkl_circuit(const LayeredAnsatz& ansatz, std::span<const double> theta, int k, int l,
                    int register_width, int ancilla, int offset) {
  const PauliInsertion ins[2] = {{k, Control{ancilla, false}}, {l, Control{ancilla, true}}};
  return ansatz.circuit(theta, register_width, offset, ins);
}

StateVector build_fk_state(const LayeredAnsatz& ansatz, std::span<const double> theta, int k,
                           int control_state) {
  const int width = ansatz.n_qubits() + 1;
  return prepare_plus_and_run(width, fk_circuit(ansatz, theta, k, control_state, width));
}

StateVector build_fkl_state(const LayeredAnsatz& ansatz, std::span<const double> theta, int k,
                            int l) {
  const int width = ansatz.n_qubits() + 1;
  return prepare_plus_and_run(width, fkl_circuit(ansatz, theta, k, l, width));
}

// ---------------------------------------------------------------------------

int adder_work_qubits(int n) noexcept { return std::max(n - 2, 0); }

AdderLayout AdderLayout::contiguous(int control, int system_offset, int n, int work_offset) {
  AdderLayout layout{control, {}, {}};
  for (int q = 0; q < n; ++q) layout.system.push_back(system_offset + q);
  for (int q = 0; q < adder_work_qubits(n); ++q) layout.work.push_back(work_offset + q);
  return layout;
}

Circuit adder_circuit(const AdderLayout& layout, ShiftDirection direction, int register_width) {
  const auto& s = layout.system;
  const auto& a = layout.work;
  const int n = static_cast<int>(s.size());
  if (n < 1) throw InvalidArgument("adder needs at least one system qubit");
  if (static_cast<int>(a.size()) != adder_work_qubits(n)) {
    throw InvalidArgument("adder on " + std::to_string(n) + " qubits needs " +
                          std::to_string(adder_work_qubits(n)) + " work ancillas");
  }
  const int c = layout.control;

  // Decrement: bit m flips iff the original bits 0..m-1 are all 0, which is
  // the same as the already-updated bits 0..m-1 all being 1. Work ancilla a_i
  // holds c AND q_0..q_i (updated values) while the carry is in flight.
  Circuit circ(register_width);
  circ.add(Gate::cx(c, s[0]));
  if (n >= 2) circ.add(Gate::toffoli(c, s[0], s[1]));
  if (n >= 3) {
    circ.add(Gate::toffoli(c, s[0], a[0]));
    for (int i = 1; i <= n - 3; ++i) {
      circ.add(Gate::toffoli(a[i - 1], s[i], a[i]));
      circ.add(Gate::cx(a[i], s[i + 1]));
    }
    circ.add(Gate::toffoli(a[n - 3], s[n - 2], s[n - 1]));
    for (int i = n - 3; i >= 1; --i) circ.add(Gate::toffoli(a[i - 1], s[i], a[i]));
    circ.add(Gate::toffoli(c, s[0], a[0]));
  }
  return direction == ShiftDirection::Minus ? circ : circ.inverse();
}

StateVector adder(StateVector state, const AdderLayout& layout, ShiftDirection direction) {
  std::uint64_t work_mask = 0;
  for (int q : layout.work) {
    if (q < 0 || q >= state.n_qubits()) throw InvalidArgument("work ancilla out of range");
    work_mask |= std::uint64_t{1} << q;
  }
  double stray = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & work_mask) != 0) stray += std::norm(amps[i]);
  }
  if (stray > 1e-12) throw InvalidArgument("adder work ancillas are not in |0>");
  state.apply(adder_circuit(layout, direction, state.n_qubits()));
  return state;
}

std::size_t index_sum(std::size_t j, std::size_t l, int n_bits) {
  if (n_bits < 1 || n_bits > 62) throw InvalidArgument("index_sum bit width out of range");
  const std::size_t mask = (std::size_t{1} << n_bits) - 1;
  if (j > mask || l > mask) throw InvalidArgument("index_sum operand exceeds register size");
  return (j + l) & mask;
}

Circuit toffoli_ladder(int control, std::span<const int> wavefunction,
                       std::span<const int> potential, int register_width) {
  if (wavefunction.size() != potential.size() || wavefunction.empty()) {
    throw InvalidArgument("ladder registers must have equal, nonzero size");
  }
  const int n = static_cast<int>(potential.size());
  Circuit circ(register_width);
  for (int i = 0; i < n; ++i) {
    // pot -= 2^i when control and wf_i are set. Highest bit first so every
    // borrow condition sees the pre-subtraction bits.
    for (int m = n - 1; m >= i; --m) {
      std::vector<Control> ctrls{{control, true}, {wavefunction[static_cast<std::size_t>(i)], true}};
      for (int b = i; b < m; ++b) ctrls.push_back({potential[static_cast<std::size_t>(b)], false});
      circ.add(Gate::mcx(std::move(ctrls), potential[static_cast<std::size_t>(m)]));
    }
  }
  return circ;
}

}  // namespace spvte
