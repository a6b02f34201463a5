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

#include <optional>
#include <span>
#include <vector>

#include "spvte/qsim.hpp"

namespace spvte {

enum class PauliAxis { X, Y, Z };
enum class Entangler { LinearCX, LinearCZ };

/// A Pauli generator inserted immediately before the rotation that carries
/// parameter `param`; optionally conditioned on an ancilla.
struct PauliInsertion {
  int param;
  std::optional<Control> control;
};

/// Hardware-efficient layered circuit
///
///   U(theta) = U_rot(theta_0) * prod_{xi=1}^{layers-1} U_ent * U_rot(theta_xi),
///
/// where every rotation layer applies, for each axis in `axes` in turn, one
/// rotation R_axis per qubit, and every entangling layer is a nearest-neighbour
/// chain (q, q+1) for q = 0..n-2 (no wrap-around).
///
/// `layers` counts rotation layers, so there are layers - 1 entangling layers
/// and n_qubits * axes.size() * layers parameters. Parameter k lives in
/// layer k / (n * A), axis (k / n) % A, qubit k % n.
class LayeredAnsatz {
 public:
  LayeredAnsatz(int n_qubits, int layers, std::vector<PauliAxis> axes, Entangler entangler);

  /// R_y + R_z blocks with CZ chains.
  static LayeredAnsatz wavefunction(int n_qubits, int layers);
  /// R_y blocks with CX chains; produces real amplitudes.
  static LayeredAnsatz potential(int n_qubits, int layers);

  int n_qubits() const noexcept { return n_qubits_; }
  int layers() const noexcept { return layers_; }
  int entangling_layers() const noexcept { return layers_ - 1; }
  int param_count() const noexcept { return n_qubits_ * static_cast<int>(axes_.size()) * layers_; }
  const std::vector<PauliAxis>& axes() const noexcept { return axes_; }
  Entangler entangler() const noexcept { return entangler_; }

  struct Slot {
    int layer;
    PauliAxis axis;
    int qubit;
  };
  Slot slot(int param) const;

  /// True when every amplitude of U(theta)|0> is real for any theta.
  bool is_real_valued() const noexcept;

  /// U(theta) on qubits [offset, offset + n_qubits) of a `register_width`
  /// register, with optional generator insertions (W_k circuits).
  Circuit circuit(std::span<const double> theta, int register_width, int offset = 0,
                  std::span<const PauliInsertion> insertions = {}) const;

  friend bool operator==(const LayeredAnsatz&, const LayeredAnsatz&) = default;

 private:
  void check_params(std::span<const double> theta) const;

  int n_qubits_;
  int layers_;
  std::vector<PauliAxis> axes_;
  Entangler entangler_;
};

/// U(theta)|0...0>.
StateVector build_unitary_state(const LayeredAnsatz& ansatz, std::span<const double> theta);

/// W_k(theta)|0...0>: U with the generator of parameter k inserted before its rotation.
StateVector build_w_state(const LayeredAnsatz& ansatz, std::span<const double> theta, int k);

/// |d_k psi> = -(i/2) W_k(theta)|0...0> (not normalized).
StateVector build_derivative_state(const LayeredAnsatz& ansatz, std::span<const double> theta,
                                   int k);

/// Register layout shared by every ancilla-assisted circuit in this library:
/// ancilla on qubit 0, the ansatz register on qubits [1, n].
inline constexpr int kAncilla = 0;
inline constexpr int kSystemOffset = 1;

/// F_k^{(c)}: the generator of parameter k is applied only when the ancilla
/// is in |c>. Acts on an (offset..offset+n, ancilla) sub-register.
Circuit fk_circuit(const LayeredAnsatz& ansatz, std::span<const double> theta, int k,
                   int control_state, int register_width, int ancilla = kAncilla,
                   int offset = kSystemOffset);

/// F_{k,l}: generator k on ancilla |0>, generator l on ancilla |1>.
Circuit fkl_circuit(const LayeredAnsatz& ansatz, std::span<const double> theta, int k, int l,
                    int register_width, int ancilla = kAncilla, int offset = kSystemOffset);

/// F_k^{(c)} |0...0>|+>; for c = 0 this is (2i|d_k psi>|0> + |psi>|1>)/sqrt(2).
/// Amplitude index = 2 * system_index + ancilla_bit.
StateVector build_fk_state(const LayeredAnsatz& ansatz, std::span<const double> theta, int k,
                           int control_state = 0);

/// F_{k,l} |0...0>|+> = i sqrt(2) (|d_k psi>|0> + |d_l psi>|1>).
StateVector build_fkl_state(const LayeredAnsatz& ansatz, std::span<const double> theta, int k,
                            int l);

// ---------------------------------------------------------------------------
// Cyclic adder

enum class ShiftDirection {
  Minus,  ///< |bin(j)> -> |bin(j-1)>, i.e. A|psi> = |psi_+>
  Plus,   ///< |bin(j)> -> |bin(j+1)>, the reversed circuit A^-1
};

/// Qubits used by a controlled adder on an n-qubit register; `work` holds
/// max(n - 2, 0) ancillas that must start (and end) in |0>.
struct AdderLayout {
  int control;
  std::vector<int> system;  ///< least significant first
  std::vector<int> work;

  static AdderLayout contiguous(int control, int system_offset, int n, int work_offset);
};

int adder_work_qubits(int n) noexcept;

/// Controlled decrement built from one CX on the least significant qubit, a
/// Toffoli into the second qubit, and a carry chain stored in the work
/// ancillas (loaded, used, then unloaded). For n >= 3 it uses 2n - 2 Toffoli
/// and n - 2 CX gates.
Circuit adder_circuit(const AdderLayout& layout, ShiftDirection direction, int register_width);

/// Applies the controlled adder. Throws InvalidArgument when the work ancillas
/// are not in |0>.
StateVector adder(StateVector state, const AdderLayout& layout, ShiftDirection direction);

// ---------------------------------------------------------------------------
// Toffoli ladder

/// dec(bin(j) + bin(l)) with periodic wrap: (j + l) mod 2^n_bits.
std::size_t index_sum(std::size_t j, std::size_t l, int n_bits);

/// Controlled register coupling used for pointwise products. Conditioned on
/// `control`, maps |j>_pot |l>_wf -> |j - l mod N>_pot |l>_wf, so that after
/// the ladder the amplitude sitting on |j>_pot |l>_wf is the old amplitude of
/// |index_sum(j, l)>_pot |l>_wf. Each wavefunction qubit l_i drives one Toffoli
/// (control, l_i -> pot_i) plus the borrow gates pot_m, m > i, which are
/// multi-controlled X gates conditioned on pot_i..pot_{m-1} being |0>.
Circuit toffoli_ladder(int control, std::span<const int> wavefunction,
                       std::span<const int> potential, int register_width);

}  // namespace spvte
