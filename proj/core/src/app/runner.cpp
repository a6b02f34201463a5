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

#include "spvte/app/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "spvte/error.hpp"
#include "spvte/hadamard.hpp"
#include "spvte/parallel.hpp"

namespace spvte::app {
namespace {

using nlohmann::json;

/// Counter values for derive_seed, one per independent random consumer.
enum SeedStream : std::uint64_t {
  kWavefunctionFit = 1,
  kPotentialFit = 2,
  kShotInstance = 3,
  kShotRepetition = 1000,
};

StateFitSettings fit_settings(const RunConfig& cfg, SeedStream stream) {
  StateFitSettings s;
  s.restarts = cfg.fit_restarts;
  s.accept_fidelity = cfg.fit_accept_fidelity;
  s.seed = derive_seed(cfg.seed, stream);
  return s;
}

PhysicalField initial_field(const RunConfig& cfg, const GridSpec& grid) {
  return initial_condition(grid, cfg.initial_amplitude, cfg.initial_wavenumber);
}

std::vector<double> with_final_time(std::vector<double> times, double t_final) {
  if (std::none_of(times.begin(), times.end(),
                   [&](double t) { return std::abs(t - t_final) < 1e-12; })) {
    times.push_back(t_final);
  }
  std::sort(times.begin(), times.end());
  return times;
}

std::vector<Frame> frames_of(const SpectralTrajectory& traj) {
  std::vector<Frame> out;
  for (const auto& s : traj.snapshots) out.push_back({s.time, s.density, s.potential});
  return out;
}

std::vector<Frame> frames_of(const VteTrajectory& traj) {
  std::vector<Frame> out;
  for (const auto& s : traj.snapshots) out.push_back({s.time, s.density, s.potential});
  return out;
}

PlotSpec density_plot(const std::string& title, const GridSpec& grid,
                      const std::vector<Frame>& frames, const std::string& prefix = "t = ") {
  PlotSpec plot{title, "x", "density", false, false, {}};
  RealVector x = grid.coordinates();
  x.push_back(grid.length());
  for (const auto& f : frames) {
    RealVector y = f.density;
    y.push_back(f.density.front());  // periodic closure
    plot.series.push_back({prefix + format_double(f.time), x, y, false});
  }
  return plot;
}

json frame_peaks(const std::vector<Frame>& frames) {
  json out = json::array();
  for (const auto& f : frames) {
    out.push_back({{"t", f.time},
                   {"max_density", *std::max_element(f.density.begin(), f.density.end())},
                   {"maxima_above_1_2", local_maxima(f.density, 1.2).size()},
                   {"maxima_above_1_5", local_maxima(f.density, 1.5).size()}});
  }
  return out;
}

json run_vte_mode(const RunConfig& cfg, const std::filesystem::path& dir) {
  const VteOutcome out = simulate_vte(cfg);
  const auto frames = frames_of(out.trajectory);
  write_snapshots_csv(dir / "snapshots.csv", out.grid, frames);
  write_diagnostics_csv(dir / "diagnostics.csv", out.trajectory.records);
  if (!out.reference_frames.empty()) {
    write_snapshots_csv(dir / "reference_snapshots.csv", out.grid, out.reference_frames);
  }

  int unconverged = 0;
  for (const auto& r : out.trajectory.records) unconverged += r.potential_converged ? 0 : 1;
  json budget = json::array();
  const auto wf = cfg.wavefunction.build(cfg.n_qubits);
  for (const auto& row : circuit_budget(wf.param_count(), cfg.n_qubits)) {
    budget.push_back({{"term", row.term}, {"count", row.count}, {"qubits", row.qubits}});
  }
  json summary{{"initial_fit_fidelity", out.initial_fit_fidelity},
               {"final_fidelity", out.final_fidelity ? json(*out.final_fidelity) : json(nullptr)},
               {"final_cost", out.trajectory.records.back().cost},
               {"steps", out.trajectory.records.size() - 1},
               {"potential_unconverged_steps", unconverged},
               {"parameter_count", wf.param_count()},
               {"circuit_budget", budget},
               {"final_parameters", out.trajectory.theta}};

  if (cfg.plot) {
    auto plot = density_plot("Variational evolution", out.grid, frames);
    write_text(dir / "density.svg", render_svg(plot));
    if (!out.reference_frames.empty()) {
      PlotSpec cmp = density_plot("Final frame", out.grid, {frames.back()}, "VTE t = ");
      auto ref = density_plot("", out.grid, {out.reference_frames.back()}, "reference t = ");
      cmp.series.push_back(ref.series.front());
      write_text(dir / "final_frame.svg", render_svg(cmp));

      PlotSpec fid{"Fidelity against the reference", "t", "fidelity", false, false, {}};
      PlotSeries s{"VTE", {}, {}, false};
      for (const auto& r : out.trajectory.records) {
        s.x.push_back(r.time);
        s.y.push_back(r.fidelity_vs_reference);
      }
      fid.series.push_back(std::move(s));
      write_text(dir / "fidelity.svg", render_svg(fid));
    }
  }
  return summary;
}

json run_spectral_mode(const RunConfig& cfg, const std::filesystem::path& dir) {
  const SpectralOutcome out = simulate_spectral(cfg);
  const auto frames = frames_of(out.trajectory);
  write_snapshots_csv(dir / "snapshots.csv", out.grid, frames);
  if (cfg.plot) {
    write_text(dir / "density.svg",
               render_svg(density_plot("Spectral reference", out.grid, frames)));
  }
  return {{"max_norm_drift", out.trajectory.max_norm_drift}, {"frames", frame_peaks(frames)}};
}

json run_scaling_mode(const RunConfig& cfg, const std::filesystem::path& dir) {
  const ScalingOutcome out = simulate_scaling(cfg);
  std::ostringstream csv;
  csv << "lambda,n,c\n";
  json records = json::array();
  for (const auto& r : out.records) {
    csv << format_double(r.lambda) << ',' << r.n << ',' << format_double(r.c) << '\n';
    records.push_back({{"lambda", r.lambda}, {"n", r.n}, {"c", r.c}, {"t_frame", r.t_frame}});
  }
  write_text(dir / "scaling.csv", csv.str());
  json mins = json::array();
  for (const auto& [lambda, m] : out.min_qubits) {
    mins.push_back({{"lambda", lambda},
                    {"n", m.n},
                    {"fractional", m.fractional},
                    {"monotone", m.monotone}});
  }
  if (cfg.plot) {
    PlotSpec c_plot{"Convergence against the reference resolution", "qubits", "C", false, true, {}};
    for (double lambda : cfg.scaling_lambdas) {
      PlotSeries s{"lambda = " + format_double(lambda), {}, {}, false};
      for (const auto& r : out.records) {
        if (r.lambda == lambda && r.n < cfg.scaling_reference_qubits) {
          s.x.push_back(r.n);
          s.y.push_back(r.c);
        }
      }
      c_plot.series.push_back(std::move(s));
    }
    write_text(dir / "convergence.svg", render_svg(c_plot));

    PlotSpec n_plot{"Minimum qubits", "lambda", "n", true, false, {}};
    PlotSeries pts{"measured", {}, {}, true};
    PlotSeries line{"K ln(lambda) + q", {}, {}, false};
    for (const auto& [lambda, m] : out.min_qubits) {
      pts.x.push_back(lambda);
      pts.y.push_back(m.fractional);
    }
    const auto [lo, hi] = std::minmax_element(cfg.scaling_lambdas.begin(), cfg.scaling_lambdas.end());
    for (int i = 0; i <= 40; ++i) {
      const double l = *lo * std::pow(*hi / *lo, i / 40.0);
      line.x.push_back(l);
      line.y.push_back(out.fit.k * std::log(l) + out.fit.q);
    }
    n_plot.series = {pts, line};
    write_text(dir / "min_qubits.svg", render_svg(n_plot));
  }
  return {{"records", records},
          {"min_qubits", mins},
          {"fit", {{"K", out.fit.k}, {"q", out.fit.q}, {"rms_residual", out.fit.rms_residual}}}};
}

json run_shots_mode(const RunConfig& cfg) {
  const ShotOutcome o = simulate_shots(cfg);
  return {{"sigma_z", o.sigma_z},
          {"empirical_mean", o.empirical_mean},
          {"empirical_std", o.empirical_std},
          {"predicted_std", o.predicted_std},
          {"relative_deviation", o.empirical_std / o.predicted_std - 1.0},
          {"phi_v", o.phi_v},
          {"variance_potential", o.variance_potential},
          {"repetitions", cfg.shot_repetitions},
          {"n_shots", cfg.shot_count}};
}

json run_compare_mode(const RunConfig& cfg, const std::filesystem::path& dir) {
  if (cfg.compare_a.empty() || cfg.compare_b.empty()) {
    throw ConfigError("compare", "both 'a' and 'b' snapshot files are required");
  }
  const CompareOutcome out = compare_snapshots(cfg.compare_a, cfg.compare_b);
  std::ostringstream csv;
  csv << "t,fidelity\n";
  double worst = 1.0;
  for (const auto& [t, f] : out.fidelity) {
    csv << format_double(t) << ',' << format_double(f) << '\n';
    worst = std::min(worst, f);
  }
  write_text(dir / "compare.csv", csv.str());
  if (cfg.plot && !out.fidelity.empty()) {
    PlotSpec plot{"Density fidelity", "t", "fidelity", false, false, {}};
    PlotSeries s{"a vs b", {}, {}, false};
    for (const auto& [t, f] : out.fidelity) {
      s.x.push_back(t);
      s.y.push_back(f);
    }
    plot.series.push_back(std::move(s));
    write_text(dir / "compare.svg", render_svg(plot));
  }
  return {{"frames", out.fidelity.size()}, {"min_fidelity", worst}};
}

}  // namespace

VteOutcome simulate_vte(const RunConfig& cfg) {
  validate(cfg);
  const GridSpec grid(cfg.n_qubits, cfg.length);
  const PhysicalField field = initial_field(cfg, grid);
  const QuantumAmplitudes target = encode_physical(field);
  const LayeredAnsatz wf = cfg.wavefunction.build(cfg.n_qubits);

  const StateFit fit = fit_state_parameters(wf, target.values, fit_settings(cfg, kWavefunctionFit));
  std::optional<PotentialModel> potential;
  if (cfg.self_gravity) {
    potential = initial_potential(target.values, grid, cfg.potential.build(cfg.n_qubits),
                                  fit_settings(cfg, kPotentialFit));
  }

  VteRunSettings rs;
  rs.vte = cfg.vte_config();
  rs.potential = cfg.optimizer;
  rs.require_potential_convergence = cfg.require_potential_convergence;
  rs.snapshot_times = cfg.snapshot_times;

  const SpectralOptions options{cfg.self_gravity};
  SpectralSolver solver(grid, cfg.lambda, options);
  SpectralState probe_state{grid, target.values, 0.0};
  if (cfg.compare_reference) {
    rs.fidelity_probe = [&](double t, std::span<const Complex> psi) {
      const double gap = t - probe_state.time;
      if (gap > 1e-12) {
        const long steps = std::max(1L, std::lround(gap / cfg.reference_dt));
        solver.advance(probe_state, gap / static_cast<double>(steps), steps);
        probe_state.time = t;
      }
      return fidelity(psi, probe_state.psi);
    };
  }

  VteOutcome out{grid, run_vte(wf, fit.params, grid, potential, rs), fit.fidelity, {}, {}};
  if (cfg.compare_reference) {
    const auto times = with_final_time(cfg.snapshot_times, cfg.t_final);
    const auto ref = run_reference(field, cfg.lambda, cfg.t_final, cfg.reference_dt, times, options);
    for (const auto& s : ref.snapshots) {
      if (std::any_of(cfg.snapshot_times.begin(), cfg.snapshot_times.end(),
                      [&](double t) { return std::abs(t - s.time) < 1e-9; })) {
        out.reference_frames.push_back({s.time, s.density, s.potential});
      }
    }
    out.final_fidelity = fidelity(out.trajectory.final_state, ref.snapshots.back().psi);
  }
  return out;
}

SpectralOutcome simulate_spectral(const RunConfig& cfg) {
  validate(cfg);
  const GridSpec grid(cfg.n_qubits, cfg.length);
  return {grid, run_reference(initial_field(cfg, grid), cfg.lambda, cfg.t_final, cfg.reference_dt,
                              cfg.snapshot_times, SpectralOptions{cfg.self_gravity})};
}

ScalingOutcome simulate_scaling(const RunConfig& cfg) {
  validate(cfg);
  const int n_lo = cfg.scaling_min_qubits;
  const int n_hi = cfg.scaling_reference_qubits;
  const std::size_t per_lambda = static_cast<std::size_t>(n_hi - n_lo + 1);
  const std::size_t tasks = cfg.scaling_lambdas.size() * per_lambda;
  std::vector<RealVector> densities(tasks);
  const std::vector<double> frame{cfg.scaling_t_frame};

  // Largest grids first so the slowest runs do not end up last.
  parallel_for(tasks, cfg.threads, [&](std::size_t i) {
    const std::size_t task = tasks - 1 - (i % cfg.scaling_lambdas.size()) * per_lambda -
                             i / cfg.scaling_lambdas.size();
    const double lambda = cfg.scaling_lambdas[task / per_lambda];
    const GridSpec grid(n_lo + static_cast<int>(task % per_lambda), cfg.length);
    const auto traj = run_reference(initial_field(cfg, grid), lambda, cfg.scaling_t_frame,
                                    cfg.reference_dt, frame, SpectralOptions{cfg.self_gravity});
    densities[task] = traj.snapshots.front().density;
  });

  ScalingOutcome out;
  std::vector<std::pair<double, double>> points;
  for (std::size_t li = 0; li < cfg.scaling_lambdas.size(); ++li) {
    const double lambda = cfg.scaling_lambdas[li];
    const RealVector& ref = densities[li * per_lambda + per_lambda - 1];
    std::vector<ConvergenceRecord> recs;
    for (std::size_t k = 0; k < per_lambda; ++k) {
      const double c = convergence_metric(densities[li * per_lambda + k], ref, cfg.length);
      recs.push_back({n_lo + static_cast<int>(k), lambda, c, cfg.scaling_t_frame});
    }
    const MinQubits m = min_qubits_for_convergence(recs, cfg.scaling_threshold);
    out.min_qubits.emplace_back(lambda, m);
    points.emplace_back(lambda, m.fractional);
    out.records.insert(out.records.end(), recs.begin(), recs.end());
  }
  out.fit = fit_log_scaling(points);
  return out;
}

ShotOutcome simulate_shots(const RunConfig& cfg) {
  validate(cfg);
  const int n = cfg.shot_qubits;
  const LayeredAnsatz wf = LayeredAnsatz::wavefunction(n, 2);
  const LayeredAnsatz pot = LayeredAnsatz::potential(n, 2);
  std::mt19937_64 rng(derive_seed(cfg.seed, kShotInstance));
  std::uniform_real_distribution<double> angle(-3.14159265358979, 3.14159265358979);
  RealVector theta(static_cast<std::size_t>(wf.param_count()));
  RealVector phi(static_cast<std::size_t>(pot.param_count()));
  for (auto& t : theta) t = angle(rng);
  for (auto& p : phi) p = angle(rng);
  const RegisterPrep prep = RegisterPrep::circuit(pot, phi);
  constexpr int k = 0;

  ShotOutcome out;
  out.sigma_z = circuit_potential_product(wf, theta, k, prep, ShotModel::exact());
  RealVector samples(static_cast<std::size_t>(cfg.shot_repetitions));
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const auto shots = ShotModel::sampled(cfg.shot_count, derive_seed(cfg.seed, kShotRepetition + r));
    samples[r] = circuit_potential_product(wf, theta, k, prep, shots);
  }
  const double ns = static_cast<double>(samples.size());
  out.empirical_mean = std::accumulate(samples.begin(), samples.end(), 0.0) / ns;
  double ss = 0.0;
  for (double s : samples) ss += (s - out.empirical_mean) * (s - out.empirical_mean);
  out.empirical_std = std::sqrt(ss / (ns - 1.0));
  const double n_shots = static_cast<double>(cfg.shot_count);
  out.predicted_std = std::sqrt((1.0 - out.sigma_z * out.sigma_z) / n_shots);
  out.phi_v = 1.0;
  out.variance_potential = variance_potential(out.phi_v, cfg.length, out.sigma_z, n_shots);
  return out;
}

CompareOutcome compare_snapshots(const std::filesystem::path& a, const std::filesystem::path& b) {
  const auto fa = read_snapshots_csv(a);
  const auto fb = read_snapshots_csv(b);
  CompareOutcome out;
  for (const auto& f : fa) {
    auto it = std::find_if(fb.begin(), fb.end(),
                           [&](const Frame& g) { return std::abs(g.time - f.time) < 1e-9; });
    if (it == fb.end()) continue;
    if (it->density.size() != f.density.size()) {
      throw InvalidArgument("compare: frames at t = " + format_double(f.time) +
                            " have different resolutions");
    }
    out.fidelity.emplace_back(f.time, density_fidelity(f.density, it->density));
  }
  if (out.fidelity.empty()) throw InvalidArgument("compare: the files share no frame times");
  return out;
}

json run_and_emit(const RunConfig& cfg) {
  validate(cfg);
  const std::filesystem::path dir = cfg.output_dir;
  std::filesystem::create_directories(dir);
  const auto start = std::chrono::steady_clock::now();

  json result;
  switch (cfg.mode) {
    case RunMode::Vte:
      result = run_vte_mode(cfg, dir);
      break;
    case RunMode::Spectral:
      result = run_spectral_mode(cfg, dir);
      break;
    case RunMode::Scaling:
      result = run_scaling_mode(cfg, dir);
      break;
    case RunMode::Shots:
      result = run_shots_mode(cfg);
      break;
    case RunMode::Compare:
      result = run_compare_mode(cfg, dir);
      break;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json summary{{"mode", to_string(cfg.mode)},
               {"seed", cfg.seed},
               {"result", result},
               {"config", config_to_json(cfg)},
               {"wall_time_seconds", wall}};
  write_json(dir / "summary.json", summary);
  return summary;
}

}  // namespace spvte::app
