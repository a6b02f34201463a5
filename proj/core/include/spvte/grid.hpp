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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spvte {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Uniform periodic 1D grid with N = 2^n points on [0, L).
///
/// Points sit at x_j = j * dx (left-closed convention), so x = L is
/// identified with x = 0.
class GridSpec {
 public:
  GridSpec(int n_qubits, double length);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_points() const noexcept { return n_points_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return dx_; }
  double x(std::size_t j) const noexcept { return static_cast<double>(j) * dx_; }

  RealVector coordinates() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_qubits_;
  std::size_t n_points_;
  double length_;
  double dx_;
};

/// Physical amplitude Psi_j with |Psi_j|^2 = rho_j / rho*; mean density is one.
struct PhysicalField {
  GridSpec grid;
  ComplexVector values;

  double mean_density() const;
};

/// Register amplitudes psi_j = Psi_j / sqrt(N); unit 2-norm.
struct QuantumAmplitudes {
  GridSpec grid;
  ComplexVector values;

  double norm_squared() const;
};

/// Relative normalization error accepted (and repaired) by encode_physical.
inline constexpr double kNormalizationRepairTolerance = 1e-6;

/// Psi -> psi = Psi / sqrt(N). Inputs whose mean density deviates from one by
/// less than kNormalizationRepairTolerance are renormalized; larger deviations
/// throw InvalidArgument.
QuantumAmplitudes encode_physical(const PhysicalField& field);

/// Inverse of encode_physical: Psi = sqrt(N) psi.
PhysicalField decode_field(const QuantumAmplitudes& state);

/// Physical density N |psi_j|^2.
RealVector decode_density(const QuantumAmplitudes& state);

/// Density N |psi_j|^2 from raw register amplitudes.
RealVector density_from_amplitudes(std::span<const Complex> amplitudes);

/// Psi_j = sqrt(1 + amplitude * sin(wavenumber * x_j)). Requires |amplitude| < 1.
PhysicalField initial_condition(const GridSpec& grid, double amplitude, double wavenumber);

}  // namespace spvte
