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

#include "spvte/grid.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "spvte/error.hpp"

namespace spvte {

GridSpec::GridSpec(int n_qubits, double length) : n_qubits_(n_qubits), length_(length) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw InvalidArgument("grid: n_qubits must be in [1, 30], got " + std::to_string(n_qubits));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("grid: length must be positive and finite");
  }
  n_points_ = std::size_t{1} << n_qubits;
  dx_ = length / static_cast<double>(n_points_);
}

RealVector GridSpec::coordinates() const {
  RealVector xs(n_points_);
  for (std::size_t j = 0; j < n_points_; ++j) xs[j] = x(j);
  return xs;
}

double PhysicalField::mean_density() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum / static_cast<double>(values.size());
}

double QuantumAmplitudes::norm_squared() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum;
}

QuantumAmplitudes encode_physical(const PhysicalField& field) {
  const std::size_t n = field.grid.n_points();
  if (field.values.size() != n) {
    throw InvalidArgument("encode_physical: field has " + std::to_string(field.values.size()) +
                          " values, grid has " + std::to_string(n));
  }
  const double mean = field.mean_density();
  if (!std::isfinite(mean) || std::abs(mean - 1.0) > kNormalizationRepairTolerance) {
    throw InvalidArgument("encode_physical: mean density " + std::to_string(mean) +
                          " violates the unit-mean normalization");
  }
  // Dividing by sqrt(N * mean) both encodes and repairs the small residual.
  const double scale = 1.0 / std::sqrt(static_cast<double>(n) * mean);
  QuantumAmplitudes out{field.grid, ComplexVector(n)};
  for (std::size_t j = 0; j < n; ++j) out.values[j] = field.values[j] * scale;
  return out;
}

PhysicalField decode_field(const QuantumAmplitudes& state) {
  const double scale = std::sqrt(static_cast<double>(state.grid.n_points()));
  PhysicalField out{state.grid, ComplexVector(state.values.size())};
  for (std::size_t j = 0; j < state.values.size(); ++j) out.values[j] = state.values[j] * scale;
  return out;
}

RealVector density_from_amplitudes(std::span<const Complex> amplitudes) {
  const double n = static_cast<double>(amplitudes.size());
  RealVector rho(amplitudes.size());
  for (std::size_t j = 0; j < amplitudes.size(); ++j) rho[j] = n * std::norm(amplitudes[j]);
  return rho;
}

RealVector decode_density(const QuantumAmplitudes& state) {
  return density_from_amplitudes(state.values);
}

PhysicalField initial_condition(const GridSpec& grid, double amplitude, double wavenumber) {
  if (!(std::abs(amplitude) < 1.0)) {
    throw InvalidArgument("initial_condition: |amplitude| must be < 1 to keep the density positive");
  }
  PhysicalField field{grid, ComplexVector(grid.n_points())};
  for (std::size_t j = 0; j < grid.n_points(); ++j) {
    field.values[j] = std::sqrt(1.0 + amplitude * std::sin(wavenumber * grid.x(j)));
  }
  return field;
}

}  // namespace spvte
