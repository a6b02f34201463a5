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

#include "spvte/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spvte/error.hpp"
#include "spvte/qsim.hpp"

namespace spvte {
namespace {

void check_sigma(double s, const char* name) {
  if (!(std::abs(s) <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [-1, 1]");
}

void check_shots(double n) {
  if (!(n >= 1.0)) throw InvalidArgument("shot count must be at least 1");
}

}  // namespace

double fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("fidelity: dimension mismatch");
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

double fidelity(const QuantumAmplitudes& a, const QuantumAmplitudes& b) {
  return fidelity(a.values, b.values);
}

double density_fidelity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) throw InvalidArgument("density fidelity: size mismatch");
  double s = 0.0, sp = 0.0, sq = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < 0.0 || q[j] < 0.0) throw InvalidArgument("density fidelity: negative density");
    s += std::sqrt(p[j] * q[j]);
    sp += p[j];
    sq += q[j];
  }
  if (!(sp > 0.0) || !(sq > 0.0)) throw InvalidArgument("density fidelity: zero density");
  return std::clamp(s * s / (sp * sq), 0.0, 1.0);
}

RealVector interpolate_periodic(std::span<const double> coarse, std::size_t fine_points) {
  const std::size_t nc = coarse.size();
  if (nc == 0 || fine_points < nc) {
    throw InvalidArgument("interpolation target must be at least as fine as the source");
  }
  RealVector out(fine_points);
  for (std::size_t i = 0; i < fine_points; ++i) {
    const double u = static_cast<double>(i) * static_cast<double>(nc) / static_cast<double>(fine_points);
    const auto j = static_cast<std::size_t>(std::floor(u));
    const double w = u - static_cast<double>(j);
    out[i] = (1.0 - w) * coarse[j % nc] + w * coarse[(j + 1) % nc];
  }
  return out;
}

double convergence_metric(std::span<const double> f_n, std::span<const double> f_ref,
                          double length) {
  if (f_n.size() > f_ref.size()) {
    throw InvalidArgument("convergence metric: resolution exceeds the reference");
  }
  if (!(length > 0.0)) throw InvalidArgument("convergence metric: length must be positive");
  const RealVector up = interpolate_periodic(f_n, f_ref.size());
  double s = 0.0;
  for (std::size_t j = 0; j < up.size(); ++j) s += (up[j] - f_ref[j]) * (up[j] - f_ref[j]);
  return std::sqrt(s * length / static_cast<double>(f_ref.size()));
}

MinQubits min_qubits_for_convergence(std::span<const ConvergenceRecord> records, double threshold) {
  if (records.empty()) throw InvalidArgument("no convergence records");
  std::vector<ConvergenceRecord> r(records.begin(), records.end());
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  if (r.back().c > threshold) {
    throw InvalidArgument("threshold " + std::to_string(threshold) +
                          " is not reached in the scanned range");
  }
  std::size_t first = 0;  // first index of the converged tail
  for (std::size_t i = r.size(); i-- > 0;) {
    if (r[i].c > threshold) {
      first = i + 1;
      break;
    }
  }
  MinQubits out;
  out.n = r[first].n;
  out.fractional = r[first].n;
  if (first > 0) {
    const auto& a = r[first - 1];
    const auto& b = r[first];
    out.fractional = a.n + (b.n - a.n) * (a.c - threshold) / (a.c - b.c);
  }
  for (std::size_t i = first == 0 ? 1 : first; i < r.size(); ++i) {
    if (r[i].c > r[i - 1].c) out.monotone = false;
  }
  return out;
}

LogFit fit_log_scaling(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw InvalidArgument("log fit needs at least three points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [lambda, n] : points) {
    if (!(lambda > 0.0)) throw InvalidArgument("log fit: lambda must be positive");
    const double x = std::log(lambda);
    sx += x;
    sy += n;
    sxx += x * x;
    sxy += x * n;
  }
  const double m = static_cast<double>(points.size());
  const double den = m * sxx - sx * sx;
  if (std::abs(den) <= 1e-12 * std::max(1.0, m * sxx)) {
    throw InvalidArgument("log fit: lambda values are degenerate");
  }
  LogFit f;
  f.k = (m * sxy - sx * sy) / den;
  f.q = (sy - f.k * sx) / m;
  double ss = 0.0;
  for (const auto& [lambda, n] : points) {
    const double e = n - (f.k * std::log(lambda) + f.q);
    ss += e * e;
  }
  f.rms_residual = std::sqrt(ss / m);
  return f;
}

double variance_potential(double phi_v, double length, double sigma_z, double n_shots) {
  check_sigma(sigma_z, "sigma_z");
  check_shots(n_shots);
  return std::abs(phi_v) * length * std::sqrt((1.0 - sigma_z * sigma_z) / n_shots);
}

double variance_kinetic(int n_qubits, double length, double sigma_plus, double sigma_minus,
                        double sigma_zero, double n_shots) {
  check_sigma(sigma_plus, "sigma_plus");
  check_sigma(sigma_minus, "sigma_minus");
  check_sigma(sigma_zero, "sigma_zero");
  check_shots(n_shots);
  if (n_qubits < 1) throw InvalidArgument("qubit count must be positive");
  if (!(length > 0.0)) throw InvalidArgument("length must be positive");
  const double var = 4.0 - sigma_plus * sigma_plus - sigma_minus * sigma_minus +
                     2.0 * sigma_zero * sigma_zero;
  return std::ldexp(1.0, 2 * n_qubits) / length * std::sqrt(var / n_shots);
}

std::vector<std::size_t> local_maxima(std::span<const double> values, double threshold) {
  std::vector<std::size_t> out;
  const std::size_t n = values.size();
  for (std::size_t j = 0; j < n && n >= 3; ++j) {
    const double v = values[j];
    if (v > threshold && v > values[(j + n - 1) % n] && v >= values[(j + 1) % n]) out.push_back(j);
  }
  return out;
}

}  // namespace spvte
