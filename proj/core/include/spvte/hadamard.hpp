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
#include <variant>

#include "spvte/ansatz.hpp"
#include "spvte/qsim.hpp"

namespace spvte {

/// How a register gets its state: an ansatz circuit run from |0...0>, or
/// direct amplitude loading (an idealized state-preparation oracle).
class RegisterPrep {
 public:
  static RegisterPrep circuit(const LayeredAnsatz& ansatz, std::span<const double> theta);
  static RegisterPrep amplitudes(std::span<const Complex> values);
  static RegisterPrep amplitudes(std::span<const double> values);

  int n_qubits() const noexcept { return n_qubits_; }

  /// Loads the register on qubits [offset, offset + n) of `joint`, which must
  /// be |0...0> there. With a control, only the matching branch is loaded.
  void prepare(StateVector& joint, int offset, std::optional<Control> control = {}) const;

 private:
  struct Ansatz {
    LayeredAnsatz ansatz;
    RealVector theta;
  };
  RegisterPrep(int n, std::variant<Ansatz, ComplexVector> source)
      : n_qubits_(n), source_(std::move(source)) {}

  int n_qubits_;
  std::variant<Ansatz, ComplexVector> source_;
};

/// Ancilla-qubit interferometer. Starting from `initial` (ancilla qubit 0 in
/// |0>), applies H on the ancilla, `body`, H again, and returns <sigma_z> of
/// the ancilla. For a pre-measurement state (|b0>|0> + |b1>|1>)/sqrt(2) this
/// is Re<b0|b1>.
double hadamard_test(StateVector initial, const Circuit& body, const ShotModel& shots);

/// Circuit widths used below (n = system qubits per register).
int width_derivative_overlap(int n);  ///< n + 1: derivative and phase overlaps
int width_potential_product(int n);   ///< 2n + 1: potential product
int width_shifted_overlap(int n);     ///< max(2n - 1, n + 1): shifted overlaps

// --- Derivative circuits (wavefunction prepared by its ansatz) -------------

/// 4 Re<d_k psi|d_l psi>.
double circuit_derivative_overlap(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                                  int l, const ShotModel& shots);

/// 2 Im<d_k psi|psi>.
double circuit_phase_overlap(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                             const ShotModel& shots);

/// 2 Im sum_l conj(d_k psi_l) V~_l psi_l, using a controlled U_V and
/// the Toffoli ladder between the two registers.
double circuit_potential_product(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                                 const RegisterPrep& potential, const ShotModel& shots);

/// 2 Im sum_j conj(d_k psi_j) psi_{j+1} (Minus, F_k^(0) then the
/// controlled adder) or 2 Im sum_j conj(d_k psi_j) psi_{j-1} (Plus, F_k^(1)).
double circuit_shifted_overlap(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                               ShiftDirection direction, const ShotModel& shots);

// --- Expectation circuits (no derivative control) ---------------------------

/// Re<psi|psi_+> = Re sum_j conj(psi_j) psi_{j+1}.
double circuit_shift_expectation(const RegisterPrep& psi, const ShotModel& shots);

/// sum_l V~_{l+s} |psi_l|^2 with s = 0, +1 (shift = Minus) or -1 (Plus).
double circuit_potential_expectation(const RegisterPrep& psi, const RegisterPrep& potential,
                                     std::optional<ShiftDirection> shift,
                                     const ShotModel& shots);

/// Re sum_j conj(V~_j) V~_{j+m} for m = 1 or 2 (adder applied m times).
double circuit_potential_autocorrelation(const RegisterPrep& potential, int lag,
                                         const ShotModel& shots);

}  // namespace spvte
