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

#include "spvte/hadamard.hpp"

#include <string>
#include <vector>

#include "spvte/error.hpp"

namespace spvte {
namespace {

int log2_exact(std::size_t size) {
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size || n == 0) {
    throw InvalidArgument("register amplitudes must have power-of-two length >= 2, got " +
                          std::to_string(size));
  }
  return n;
}

double finish(StateVector& s, const ShotModel& shots) {
  s.apply(Gate::h(kAncilla));
  return expectation_sigma_z(s, kAncilla, shots);
}

StateVector start(int width) {
  StateVector s(width);
  s.apply(Gate::h(kAncilla));
  return s;
}

std::vector<int> range(int first, int count) {
  std::vector<int> r;
  for (int i = 0; i < count; ++i) r.push_back(first + i);
  return r;
}

/// Adder controlled on the ancilla-|1> branch, applied `repeats` times.
void apply_shift(StateVector& s, int offset, int n, int work_offset, ShiftDirection direction,
                 int repeats = 1) {
  const AdderLayout layout = AdderLayout::contiguous(kAncilla, offset, n, work_offset);
  const Circuit a = adder_circuit(layout, direction, s.n_qubits());
  for (int r = 0; r < repeats; ++r) s.apply(a);
}

void check_same_size(int a, int b) {
  if (a != b) throw InvalidArgument("wavefunction and potential registers differ in size");
}

}  // namespace

RegisterPrep RegisterPrep::circuit(const LayeredAnsatz& ansatz, std::span<const double> theta) {
  if (theta.size() != static_cast<std::size_t>(ansatz.param_count())) {
    throw InvalidArgument("register preparation: parameter count mismatch");
  }
  return {ansatz.n_qubits(), Ansatz{ansatz, RealVector(theta.begin(), theta.end())}};
}

RegisterPrep RegisterPrep::amplitudes(std::span<const Complex> values) {
  const int n = log2_exact(values.size());
  return {n, ComplexVector(values.begin(), values.end())};
}

RegisterPrep RegisterPrep::amplitudes(std::span<const double> values) {
  const int n = log2_exact(values.size());
  return {n, ComplexVector(values.begin(), values.end())};
}

void RegisterPrep::prepare(StateVector& joint, int offset, std::optional<Control> control) const {
  if (offset < 0 || offset + n_qubits_ > joint.n_qubits()) {
    throw InvalidArgument("register does not fit in the joint state");
  }
  if (const auto* a = std::get_if<Ansatz>(&source_)) {
    Circuit c = a->ansatz.circuit(a->theta, joint.n_qubits(), offset);
    joint.apply(control ? c.controlled_by(*control) : c);
    return;
  }
  const auto& values = std::get<ComplexVector>(source_);
  const std::uint64_t reg_mask = ((std::uint64_t{1} << n_qubits_) - 1) << offset;
  auto amps = joint.amplitudes();
  ComplexVector out(amps.size(), Complex{});
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] == Complex{}) continue;
    if ((i & reg_mask) != 0) throw InvalidArgument("register to load is not in |0>");
    const bool active = !control || (((i >> control->qubit) & 1U) == (control->state ? 1U : 0U));
    if (!active) {
      out[i] += amps[i];
      continue;
    }
    for (std::size_t r = 0; r < values.size(); ++r) out[i | (r << offset)] += amps[i] * values[r];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

double hadamard_test(StateVector initial, const Circuit& body, const ShotModel& shots) {
  if (initial.probability_zero(kAncilla) < 1.0 - 1e-12) {
    throw InvalidArgument("Hadamard-test ancilla must start in |0>");
  }
  initial.apply(Gate::h(kAncilla));
  initial.apply(body);
  return finish(initial, shots);
}

int width_derivative_overlap(int n) { return n + 1; }
int width_potential_product(int n) { return 2 * n + 1; }
int width_shifted_overlap(int n) { return 1 + n + adder_work_qubits(n); }

double circuit_derivative_overlap(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                                  int l, const ShotModel& shots) {
  const int w = width_derivative_overlap(wf.n_qubits());
  return hadamard_test(StateVector(w), fkl_circuit(wf, theta, k, l, w), shots);
}

double circuit_phase_overlap(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                             const ShotModel& shots) {
  const int w = width_derivative_overlap(wf.n_qubits());
  return hadamard_test(StateVector(w), fk_circuit(wf, theta, k, 0, w), shots);
}

double circuit_potential_product(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                                 const RegisterPrep& potential, const ShotModel& shots) {
  const int n = wf.n_qubits();
  check_same_size(n, potential.n_qubits());
  const int pot = 1 + n;
  StateVector s = start(width_potential_product(n));
  s.apply(fk_circuit(wf, theta, k, 0, s.n_qubits()));
  potential.prepare(s, pot, Control{kAncilla, true});
  const auto wf_qubits = range(kSystemOffset, n);
  const auto pot_qubits = range(pot, n);
  s.apply(toffoli_ladder(kAncilla, wf_qubits, pot_qubits, s.n_qubits()));
  return finish(s, shots);
}

double circuit_shifted_overlap(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                               ShiftDirection direction, const ShotModel& shots) {
  const int n = wf.n_qubits();
  StateVector s = start(width_shifted_overlap(n));
  // The derivative branch is |0> for psi_+ and |1> for psi_-; the adder always
  // acts on the |1> branch, so the same decrement A serves both.
  const int derivative_branch = direction == ShiftDirection::Minus ? 0 : 1;
  s.apply(fk_circuit(wf, theta, k, derivative_branch, s.n_qubits()));
  apply_shift(s, kSystemOffset, n, 1 + n, ShiftDirection::Minus);
  return finish(s, shots);
}

double circuit_shift_expectation(const RegisterPrep& psi, const ShotModel& shots) {
  const int n = psi.n_qubits();
  StateVector s(width_shifted_overlap(n));
  psi.prepare(s, kSystemOffset);
  s.apply(Gate::h(kAncilla));
  apply_shift(s, kSystemOffset, n, 1 + n, ShiftDirection::Minus);
  return finish(s, shots);
}

double circuit_potential_expectation(const RegisterPrep& psi, const RegisterPrep& potential,
                                     std::optional<ShiftDirection> shift,
                                     const ShotModel& shots) {
  const int n = psi.n_qubits();
  check_same_size(n, potential.n_qubits());
  const int pot = 1 + n;
  const int work = 1 + 2 * n;
  StateVector s(work + (shift ? adder_work_qubits(n) : 0));
  psi.prepare(s, kSystemOffset);
  s.apply(Gate::h(kAncilla));
  potential.prepare(s, pot, Control{kAncilla, true});
  if (shift) apply_shift(s, pot, n, work, *shift);
  const auto wf_qubits = range(kSystemOffset, n);
  const auto pot_qubits = range(pot, n);
  s.apply(toffoli_ladder(kAncilla, wf_qubits, pot_qubits, s.n_qubits()));
  return finish(s, shots);
}

double circuit_potential_autocorrelation(const RegisterPrep& potential, int lag,
                                         const ShotModel& shots) {
  if (lag != 1 && lag != 2) throw InvalidArgument("autocorrelation lag must be 1 or 2");
  const int n = potential.n_qubits();
  StateVector s(width_shifted_overlap(n));
  potential.prepare(s, kSystemOffset);
  s.apply(Gate::h(kAncilla));
  apply_shift(s, kSystemOffset, n, 1 + n, ShiftDirection::Minus, lag);
  return finish(s, shots);
}

}  // namespace spvte
