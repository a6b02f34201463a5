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

#include "spvte/optimize.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "spvte/error.hpp"

namespace spvte {
namespace {

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct FMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct FdfMinimizerDeleter {
  void operator()(gsl_multimin_fdfminimizer* m) const { gsl_multimin_fdfminimizer_free(m); }
};
using Vector = std::unique_ptr<gsl_vector, VectorDeleter>;

Vector make_vector(std::span<const double> values) {
  Vector v(gsl_vector_alloc(values.size()));
  if (!v) throw std::bad_alloc();
  for (std::size_t i = 0; i < values.size(); ++i) gsl_vector_set(v.get(), i, values[i]);
  return v;
}

RealVector to_real(const gsl_vector* v) {
  RealVector out(v->size);
  for (std::size_t i = 0; i < v->size; ++i) out[i] = gsl_vector_get(v, i);
  return out;
}

std::span<const double> view(const gsl_vector* v) {
  // GSL vectors allocated here are contiguous (stride 1).
  return {v->data, v->size};
}

double f_trampoline(const gsl_vector* x, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  const double value = f(view(x));
  return std::isfinite(value) ? value : GSL_POSINF;
}

double fdf_value(const gsl_vector* x, void* params) {
  const auto& fg = *static_cast<const ObjectiveWithGradient*>(params);
  RealVector g(x->size);
  return fg(view(x), g);
}

void fdf_gradient(const gsl_vector* x, void* params, gsl_vector* grad) {
  const auto& fg = *static_cast<const ObjectiveWithGradient*>(params);
  fg(view(x), std::span<double>(grad->data, grad->size));
}

void fdf_both(const gsl_vector* x, void* params, double* f, gsl_vector* grad) {
  const auto& fg = *static_cast<const ObjectiveWithGradient*>(params);
  *f = fg(view(x), std::span<double>(grad->data, grad->size));
}

}  // namespace

MinimizeResult minimize_simplex(const Objective& f, RealVector x0, const SimplexSettings& s) {
  disable_gsl_abort();
  if (x0.empty()) throw InvalidArgument("simplex minimizer needs at least one variable");
  const std::size_t dim = x0.size();
  Vector x = make_vector(x0);
  Vector step(gsl_vector_alloc(dim));
  gsl_vector_set_all(step.get(), s.initial_step);

  gsl_multimin_function fn{&f_trampoline, dim, const_cast<Objective*>(&f)};
  std::unique_ptr<gsl_multimin_fminimizer, FMinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get());

  MinimizeResult r;
  // fminimizer_set does not evaluate f at the start point.
  const double f0 = f_trampoline(x.get(), const_cast<Objective*>(&f));
  if (f0 <= s.target) return {std::move(x0), f0, 0, true};
  while (r.iterations < s.max_iterations) {
    ++r.iterations;
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) {
      r.converged = true;  // no further progress possible
      break;
    }
    if (m->fval <= s.target ||
        gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), s.size_tolerance) ==
            GSL_SUCCESS) {
      r.converged = true;
      break;
    }
  }
  if (r.iterations == 0 || m->fval > f0) return {std::move(x0), f0, r.iterations, r.converged};
  r.x = to_real(m->x);
  r.value = m->fval;
  return r;
}

MinimizeResult minimize_bfgs(const ObjectiveWithGradient& fg, RealVector x0,
                             const QuasiNewtonSettings& s) {
  disable_gsl_abort();
  if (x0.empty()) throw InvalidArgument("BFGS minimizer needs at least one variable");
  const std::size_t dim = x0.size();
  Vector x = make_vector(x0);
  gsl_multimin_function_fdf fn{&fdf_value, &fdf_gradient, &fdf_both, dim,
                               const_cast<ObjectiveWithGradient*>(&fg)};
  std::unique_ptr<gsl_multimin_fdfminimizer, FdfMinimizerDeleter> m(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, dim));
  gsl_multimin_fdfminimizer_set(m.get(), &fn, x.get(), s.initial_step, s.line_tolerance);

  MinimizeResult r;
  for (r.iterations = 0; r.iterations < s.max_iterations;) {
    if (m->f <= s.target ||
        gsl_multimin_test_gradient(m->gradient, s.gradient_tolerance) == GSL_SUCCESS) {
      r.converged = true;
      break;
    }
    ++r.iterations;
    if (gsl_multimin_fdfminimizer_iterate(m.get()) != GSL_SUCCESS) {
      // Line search cannot improve further: a numerical stationary point.
      r.converged = true;
      break;
    }
  }
  if (m->f <= s.target) r.converged = true;
  r.x = to_real(m->x);
  r.value = m->f;
  if (!std::isfinite(r.value)) throw NumericalError("BFGS produced a non-finite objective");
  return r;
}

StateFit fit_state_parameters(const LayeredAnsatz& ansatz, std::span<const Complex> target,
                              const StateFitSettings& settings) {
  const std::size_t dim = std::size_t{1} << ansatz.n_qubits();
  if (target.size() != dim) throw InvalidArgument("fit target has the wrong dimension");
  if (settings.restarts < 1) throw InvalidArgument("state fit needs at least one restart");
  const int p = ansatz.param_count();

  auto overlap_with = [&](const StateVector& s) {
    return inner_product(target, s.amplitudes());
  };
  const ObjectiveWithGradient fg = [&](std::span<const double> theta, std::span<double> grad) {
    const StateVector psi = build_unitary_state(ansatz, theta);
    const Complex o = overlap_with(psi);
    for (int k = 0; k < p; ++k) {
      const Complex dk = overlap_with(build_derivative_state(ansatz, theta, k));
      grad[static_cast<std::size_t>(k)] = -2.0 * std::real(std::conj(o) * dk);
    }
    return 1.0 - std::norm(o);
  };

  StateFit best;
  best.fidelity = -1.0;
  QuasiNewtonSettings qn;
  qn.max_iterations = settings.max_iterations;
  qn.gradient_tolerance = 1e-10;
  qn.initial_step = 0.1;
  for (int r = 0; r < settings.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(settings.seed, static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    RealVector x0(static_cast<std::size_t>(p));
    for (auto& v : x0) v = angle(rng);
    const MinimizeResult res = minimize_bfgs(fg, std::move(x0), qn);
    const double fid = 1.0 - res.value;
    if (fid > best.fidelity) {
      best.params = res.x;
      best.fidelity = fid;
      best.overlap = overlap_with(build_unitary_state(ansatz, res.x));
    }
  }
  if (best.fidelity < settings.accept_fidelity) {
    throw ConvergenceError("state fit reached fidelity " + std::to_string(best.fidelity) +
                               " below the acceptance threshold",
                           best.fidelity);
  }
  return best;
}

}  // namespace spvte
