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

#include "spvte/vte.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "spvte/error.hpp"
#include "spvte/parallel.hpp"

namespace spvte {
namespace {

enum class CircuitKind : std::uint64_t { Metric, Phase, Shifted, Potential, Energy };

/// Independent shot stream per (step, circuit kind, indices).
ShotModel circuit_shots(const VteConfig& cfg, std::uint64_t stream, CircuitKind kind,
                        std::uint64_t a = 0, std::uint64_t b = 0) {
  if (cfg.shots.is_exact()) return cfg.shots;
  std::uint64_t s = derive_seed(cfg.shots.seed, stream);
  s = derive_seed(s, static_cast<std::uint64_t>(kind));
  s = derive_seed(s, a);
  s = derive_seed(s, b);
  return cfg.shots.reseeded(s);
}

double projector_weight(const VteConfig& cfg, const LayeredAnsatz& wf) {
  return cfg.projector == ProjectorWeight::Normalized
             ? 1.0
             : static_cast<double>(std::size_t{1} << wf.n_qubits());
}

void check_grid(const LayeredAnsatz& wf, const SpHamiltonian& h) {
  if (wf.n_qubits() != h.grid.n_qubits()) {
    throw InvalidArgument("wavefunction ansatz does not match the Hamiltonian grid");
  }
  if (h.potential && !(h.potential->grid == h.grid)) {
    throw InvalidArgument("potential grid does not match the wavefunction grid");
  }
}

/// Pieces of <d_k psi|H|psi> measured by circuits.
struct HadamardB {
  double sigma_plus, sigma_minus, sigma_zero, sigma_v;
};

HadamardB measure_b(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                    const SpHamiltonian& h, const VteConfig& cfg, std::uint64_t stream) {
  const auto kk = static_cast<std::uint64_t>(k);
  HadamardB m{};
  m.sigma_plus = circuit_shifted_overlap(wf, theta, k, ShiftDirection::Minus,
                                         circuit_shots(cfg, stream, CircuitKind::Shifted, kk, 0));
  m.sigma_minus = circuit_shifted_overlap(wf, theta, k, ShiftDirection::Plus,
                                          circuit_shots(cfg, stream, CircuitKind::Shifted, kk, 1));
  m.sigma_zero =
      circuit_phase_overlap(wf, theta, k, circuit_shots(cfg, stream, CircuitKind::Phase, kk));
  m.sigma_v = 0.0;
  if (h.potential) {
    const auto prep = RegisterPrep::circuit(h.potential->ansatz, h.potential->params);
    m.sigma_v = circuit_potential_product(wf, theta, k, prep,
                                          circuit_shots(cfg, stream, CircuitKind::Potential, kk));
  }
  return m;
}

double kinetic_prefactor(const SpHamiltonian& h) {
  return -h.lambda / (2.0 * h.grid.dx() * h.grid.dx());
}

double potential_prefactor(const SpHamiltonian& h) {
  return h.potential ? h.potential->phi_v / h.lambda : 0.0;
}

/// Im<d_k psi|H|psi> from the four circuit values.
double im_dk_h_psi(const HadamardB& m, const SpHamiltonian& h) {
  return kinetic_prefactor(h) * 0.5 * (m.sigma_plus - 2.0 * m.sigma_zero + m.sigma_minus) +
         potential_prefactor(h) * 0.5 * m.sigma_v;
}

/// <psi|H|psi> from circuits without derivative control.
double energy_by_circuits(const LayeredAnsatz& wf, std::span<const double> theta,
                          const SpHamiltonian& h, const VteConfig& cfg, std::uint64_t stream) {
  const RegisterPrep psi = RegisterPrep::circuit(wf, theta);
  const double shift = circuit_shift_expectation(psi, circuit_shots(cfg, stream, CircuitKind::Energy, 0));
  // Re<psi|psi_-> = Re<psi|psi_+>, so the stencil gives 2 Re<psi|psi_+> - 2.
  double e = kinetic_prefactor(h) * (2.0 * shift - 2.0);
  if (h.potential) {
    const auto prep = RegisterPrep::circuit(h.potential->ansatz, h.potential->params);
    e += potential_prefactor(h) *
         circuit_potential_expectation(psi, prep, std::nullopt,
                                       circuit_shots(cfg, stream, CircuitKind::Energy, 1));
  }
  return e;
}

double energy_analytic(std::span<const Complex> psi, const SpHamiltonian& h) {
  const ComplexVector hpsi = h.apply(psi);
  return inner_product(psi, hpsi).real();
}

}  // namespace

void VteConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (n_steps < 0) throw InvalidArgument("n_steps must be non-negative");
  if (!(svd_cutoff > 0.0)) throw InvalidArgument("svd_cutoff must be positive");
  if (!(tikhonov > 0.0)) throw InvalidArgument("tikhonov must be positive");
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!shots.is_exact() && shots.shots == 0) throw InvalidArgument("sampled mode needs shots > 0");
}

ComplexVector SpHamiltonian::apply(std::span<const Complex> psi) const {
  const std::size_t n = grid.n_points();
  if (psi.size() != n) throw InvalidArgument("state does not match the Hamiltonian grid");
  const double kin = -lambda / (2.0 * grid.dx() * grid.dx());
  ComplexVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = kin * (psi[(j + 1) % n] - 2.0 * psi[j] + psi[(j + n - 1) % n]);
  }
  if (potential) {
    const RealVector v = potential->values();
    for (std::size_t j = 0; j < n; ++j) out[j] += v[j] / lambda * psi[j];
  }
  return out;
}

double m_element(const LayeredAnsatz& wf, std::span<const double> theta, int k, int l,
                 const VteConfig& cfg, std::uint64_t stream) {
  const double w = projector_weight(cfg, wf);
  if (cfg.eval_path == EvalPath::Analytic) {
    const StateVector psi = build_unitary_state(wf, theta);
    const StateVector dk = build_derivative_state(wf, theta, k);
    const StateVector dl = build_derivative_state(wf, theta, l);
    const double ck = inner_product(dk, psi).imag();
    const double cl = inner_product(dl, psi).imag();
    return inner_product(dk, dl).real() - w * ck * cl;
  }
  const auto kk = static_cast<std::uint64_t>(k);
  const auto ll = static_cast<std::uint64_t>(l);
  // ||d_k psi||^2 = 1/4 because W_k is unitary; no circuit needed on the diagonal.
  const double metric =
      k == l ? 0.25
             : 0.25 * circuit_derivative_overlap(
                          wf, theta, std::min(k, l), std::max(k, l),
                          circuit_shots(cfg, stream, CircuitKind::Metric, std::min(kk, ll),
                                        std::max(kk, ll)));
  const double ck =
      0.5 * circuit_phase_overlap(wf, theta, k, circuit_shots(cfg, stream, CircuitKind::Phase, kk));
  const double cl =
      0.5 * circuit_phase_overlap(wf, theta, l, circuit_shots(cfg, stream, CircuitKind::Phase, ll));
  return metric - w * ck * cl;
}

double b_element(const LayeredAnsatz& wf, std::span<const double> theta, int k,
                 const SpHamiltonian& h, const VteConfig& cfg, std::uint64_t stream) {
  check_grid(wf, h);
  const double w = projector_weight(cfg, wf);
  if (cfg.eval_path == EvalPath::Analytic) {
    const StateVector psi = build_unitary_state(wf, theta);
    const StateVector dk = build_derivative_state(wf, theta, k);
    const ComplexVector hpsi = h.apply(psi.amplitudes());
    const double ck = inner_product(dk, psi).imag();
    return inner_product(dk.amplitudes(), hpsi).imag() -
           w * ck * energy_analytic(psi.amplitudes(), h);
  }
  const HadamardB m = measure_b(wf, theta, k, h, cfg, stream);
  return im_dk_h_psi(m, h) - w * 0.5 * m.sigma_zero * energy_by_circuits(wf, theta, h, cfg, stream);
}

EomSystem assemble_eom(const LayeredAnsatz& wf, std::span<const double> theta,
                       const SpHamiltonian& h, const VteConfig& cfg, std::uint64_t stream) {
  check_grid(wf, h);
  const int p = wf.param_count();
  const auto np = static_cast<std::size_t>(p);
  const double w = projector_weight(cfg, wf);
  EomSystem sys{Eigen::MatrixXd::Zero(p, p), Eigen::VectorXd::Zero(p)};
  Eigen::VectorXd c(p);

  if (cfg.eval_path == EvalPath::Analytic) {
    const StateVector psi = build_unitary_state(wf, theta);
    const ComplexVector hpsi = h.apply(psi.amplitudes());
    const double energy = inner_product(psi.amplitudes(), hpsi).real();
    std::vector<StateVector> d(np, StateVector(wf.n_qubits()));
    parallel_for(np, cfg.threads, [&](std::size_t k) {
      d[k] = build_derivative_state(wf, theta, static_cast<int>(k));
      c(static_cast<Eigen::Index>(k)) = inner_product(d[k], psi).imag();
      sys.B(static_cast<Eigen::Index>(k)) = inner_product(d[k].amplitudes(), hpsi).imag();
    });
    parallel_for(np, cfg.threads, [&](std::size_t k) {
      for (std::size_t l = k; l < np; ++l) {
        sys.M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
            inner_product(d[k], d[l]).real();
      }
    });
    sys.B -= w * energy * c;
  } else {
    const double energy = energy_by_circuits(wf, theta, h, cfg, stream);
    parallel_for(np, cfg.threads, [&](std::size_t k) {
      const HadamardB m = measure_b(wf, theta, static_cast<int>(k), h, cfg, stream);
      c(static_cast<Eigen::Index>(k)) = 0.5 * m.sigma_zero;
      sys.B(static_cast<Eigen::Index>(k)) = im_dk_h_psi(m, h);
      sys.M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 0.25;
      for (std::size_t l = k + 1; l < np; ++l) {
        sys.M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
            0.25 * circuit_derivative_overlap(
                       wf, theta, static_cast<int>(k), static_cast<int>(l),
                       circuit_shots(cfg, stream, CircuitKind::Metric, k, l));
      }
    });
    sys.B -= w * energy * c;
  }
  sys.M = sys.M.selfadjointView<Eigen::Upper>();
  sys.M -= w * c * c.transpose();
  if (!sys.M.allFinite() || !sys.B.allFinite()) {
    throw NumericalError("equations of motion contain non-finite entries");
  }
  return sys;
}

EomSolution solve_eom(const EomSystem& sys, double svd_cutoff, double tikhonov) {
  const Eigen::Index p = sys.M.rows();
  if (p == 0 || sys.M.cols() != p || sys.B.size() != p) {
    throw InvalidArgument("equation-of-motion dimensions are inconsistent");
  }
  if (svd_cutoff < 0.0 || tikhonov < 0.0) throw InvalidArgument("negative regularization");
  if (!sys.M.allFinite() || !sys.B.allFinite()) throw NumericalError("non-finite M or B");
  if (sys.M.cwiseAbs().maxCoeff() == 0.0) {
    throw NumericalError("M is identically zero: the ansatz has no tangent directions");
  }
  const Eigen::MatrixXd a = sys.M + tikhonov * Eigen::MatrixXd::Identity(p, p);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double floor = svd_cutoff * s(0);
  Eigen::VectorXd coeff = svd.matrixU().transpose() * sys.B;
  EomSolution out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 0.0 && s(i) >= floor) {
      coeff(i) /= s(i);
      ++out.rank;
    } else {
      coeff(i) = 0.0;
    }
  }
  out.theta_dot = svd.matrixV() * coeff;
  return out;
}

RealVector euler_step(std::span<const double> theta, const Eigen::VectorXd& theta_dot, double dt) {
  if (static_cast<Eigen::Index>(theta.size()) != theta_dot.size()) {
    throw InvalidArgument("parameter and velocity sizes differ");
  }
  RealVector out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += dt * theta_dot(static_cast<Eigen::Index>(i));
  }
  return out;
}

VteTrajectory run_vte(const LayeredAnsatz& wf, RealVector theta0, const GridSpec& grid,
                      std::optional<PotentialModel> potential, const VteRunSettings& settings) {
  const VteConfig& cfg = settings.vte;
  cfg.validate();
  if (wf.n_qubits() != grid.n_qubits()) throw InvalidArgument("ansatz does not match the grid");
  if (theta0.size() != static_cast<std::size_t>(wf.param_count())) {
    throw InvalidArgument("initial parameter count mismatch");
  }

  VteTrajectory traj;
  traj.theta = std::move(theta0);
  std::vector<bool> taken(settings.snapshot_times.size(), false);

  auto reoptimize = [&](VteStepRecord& rec, std::span<const Complex> psi) {
    if (!potential) return;
    PotentialFit fit = optimize_potential(psi, *potential, settings.potential);
    rec.cost = fit.cost;
    rec.potential_iterations = fit.iterations;
    rec.potential_converged = fit.converged;
    potential = std::move(fit.model);
    if (settings.require_potential_convergence && !fit.converged) {
      throw ConvergenceError("potential optimization did not converge at t = " +
                                 std::to_string(rec.time),
                             fit.cost);
    }
  };
  auto observe = [&](VteStepRecord& rec, const StateVector& psi) {
    if (settings.fidelity_probe) rec.fidelity_vs_reference = settings.fidelity_probe(rec.time, psi.amplitudes());
    for (std::size_t i = 0; i < settings.snapshot_times.size(); ++i) {
      if (taken[i] || std::abs(settings.snapshot_times[i] - rec.time) > 0.5 * cfg.dt + 1e-12) continue;
      taken[i] = true;
      VteSnapshot snap;
      snap.time = rec.time;
      snap.psi.assign(psi.amplitudes().begin(), psi.amplitudes().end());
      snap.density = density_from_amplitudes(psi.amplitudes());
      snap.potential = potential ? potential->gauge_fixed_values() : RealVector(grid.n_points(), 0.0);
      traj.snapshots.push_back(std::move(snap));
    }
    traj.records.push_back(rec);
  };

  StateVector psi = build_unitary_state(wf, traj.theta);
  VteStepRecord rec0;
  reoptimize(rec0, psi.amplitudes());
  observe(rec0, psi);

  for (int step = 1; step <= cfg.n_steps; ++step) {
    const SpHamiltonian h{grid, cfg.lambda, potential};
    const EomSystem sys = assemble_eom(wf, traj.theta, h, cfg, static_cast<std::uint64_t>(step));
    const EomSolution sol = solve_eom(sys, cfg.svd_cutoff, cfg.tikhonov);
    traj.theta = euler_step(traj.theta, sol.theta_dot, cfg.dt);
    for (double t : traj.theta) {
      if (!std::isfinite(t)) {
        throw NumericalError("non-finite parameters at step " + std::to_string(step));
      }
    }
    psi = build_unitary_state(wf, traj.theta);
    if (std::abs(psi.norm_squared() - 1.0) > 1e-10) {
      throw NumericalError("register normalization lost at step " + std::to_string(step));
    }
    VteStepRecord rec;
    rec.step = step;
    rec.time = step * cfg.dt;
    rec.truncated_rank = sol.rank;
    rec.b_norm = sys.B.norm();
    reoptimize(rec, psi.amplitudes());
    observe(rec, psi);
  }
  traj.potential = std::move(potential);
  traj.final_state.assign(psi.amplitudes().begin(), psi.amplitudes().end());
  return traj;
}

std::vector<CircuitBudgetRow> circuit_budget(int param_count, int n_qubits) {
  if (param_count < 0 || n_qubits < 1) throw InvalidArgument("invalid circuit budget input");
  const auto mp = static_cast<std::size_t>(param_count);
  return {
      {"Re<d_k psi|d_l psi>", mp > 0 ? mp * (mp - 1) / 2 : 0, n_qubits + 1},
      {"Im<d_k psi|psi>", mp, n_qubits + 1},
      {"Im<d_k psi|V|psi>", mp, 2 * n_qubits + 1},
      {"Im<d_k psi|psi_+->", 2 * mp, 2 * n_qubits - 1},
  };
}

}  // namespace spvte
