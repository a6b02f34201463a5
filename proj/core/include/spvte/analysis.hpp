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

#include <span>
#include <vector>

#include "spvte/grid.hpp"

namespace spvte {

/// |<a|b>|^2 for normalized register states.
double fidelity(std::span<const Complex> a, std::span<const Complex> b);
double fidelity(const QuantumAmplitudes& a, const QuantumAmplitudes& b);

/// Fidelity of the amplitude-only states built from two densities, each
/// normalized first: (sum_j sqrt(p_j q_j))^2 / (sum_j p_j * sum_j q_j).
double density_fidelity(std::span<const double> p, std::span<const double> q);

/// Periodic piecewise-linear interpolation of `coarse` (N_c points on
/// [0, L)) onto `fine_points` >= N_c equally spaced points of the same box.
RealVector interpolate_periodic(std::span<const double> coarse, std::size_t fine_points);

/// sqrt(dx_ref * sum_j (I f_n - f_ref)_j^2), where I is interpolate_periodic
/// onto the reference grid of box length `length`.
double convergence_metric(std::span<const double> f_n, std::span<const double> f_ref,
                          double length);

struct ConvergenceRecord {
  int n = 0;
  double lambda = 1.0;
  double c = 0.0;
  double t_frame = 0.0;
};

struct MinQubits {
  int n = 0;             ///< first resolution after which every record stays <= threshold
  double fractional = 0; ///< linear interpolation in C between n - 1 and n
  bool monotone = true;  ///< C is non-increasing from the bracketing record onwards
};

/// Smallest scanned n such that C <= threshold for n and every finer
/// resolution. Throws InvalidArgument when the finest record is still above
/// the threshold or the records are empty.
MinQubits min_qubits_for_convergence(std::span<const ConvergenceRecord> records, double threshold);

struct LogFit {
  double k = 0.0;  ///< slope against ln(lambda)
  double q = 0.0;
  double rms_residual = 0.0;
};

/// Least squares n = K ln(lambda) + q over (lambda, n) points; needs at least
/// three points and two distinct positive lambdas.
LogFit fit_log_scaling(std::span<const std::pair<double, double>> points);

/// E_V = phi_V L sqrt((1 - <sigma_z>^2) / N_s).
double variance_potential(double phi_v, double length, double sigma_z, double n_shots);

/// E_K = (2^{2n} / L) sqrt((4 - s_+^2 - s_-^2 + 2 s_0^2) / N_s).
double variance_kinetic(int n_qubits, double length, double sigma_plus, double sigma_minus,
                        double sigma_zero, double n_shots);

/// Indices of strict periodic local maxima with value above `threshold`.
std::vector<std::size_t> local_maxima(std::span<const double> values, double threshold);

}  // namespace spvte
