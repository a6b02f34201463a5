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

#include "spvte/app/config.hpp"

#include <cmath>
#include <set>

namespace spvte::app {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

/// One JSON object being read: remembers which keys were consumed so that
/// leftovers can be rejected.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(path(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(path(key), "must be finite");
    }
  }
  void read(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(path(key), "expected an integer");
      const auto x = v->get<std::int64_t>();
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        throw ConfigError(path(key), "integer out of range");
      }
      out = static_cast<int>(x);
    }
  }
  void read(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(path(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void read(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key), "expected true or false");
      out = v->get<bool>();
    }
  }
  void read(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(path(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  void read(const std::string& key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) throw ConfigError(path(key), "expected an array of numbers");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        if (!(*v)[i].is_number()) {
          throw ConfigError(path(key) + "[" + std::to_string(i) + "]", "expected a number");
        }
        out.push_back((*v)[i].get<double>());
      }
    }
  }

  /// Sub-object, or nullptr when absent.
  const json* object(const std::string& key) { return find(key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(path(it.key()), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string axis_name(PauliAxis a) {
  switch (a) {
    case PauliAxis::X:
      return "x";
    case PauliAxis::Y:
      return "y";
    case PauliAxis::Z:
      return "z";
  }
  return "y";
}

std::string entangler_name(Entangler e) { return e == Entangler::LinearCX ? "cx" : "cz"; }

void read_ansatz(Section& parent, const std::string& key, AnsatzConfig& out) {
  const json* j = parent.object(key);
  if (!j) return;
  Section s(*j, parent.path(key));
  if (const json* axes = s.find("axes")) {
    if (!axes->is_array() || axes->empty()) {
      throw ConfigError(s.path("axes"), "expected a non-empty array of \"x\", \"y\", \"z\"");
    }
    out.axes.clear();
    for (std::size_t i = 0; i < axes->size(); ++i) {
      const json& a = (*axes)[i];
      const std::string p = s.path("axes") + "[" + std::to_string(i) + "]";
      if (!a.is_string()) throw ConfigError(p, "expected \"x\", \"y\" or \"z\"");
      const auto name = a.get<std::string>();
      if (name == "x") out.axes.push_back(PauliAxis::X);
      else if (name == "y") out.axes.push_back(PauliAxis::Y);
      else if (name == "z") out.axes.push_back(PauliAxis::Z);
      else throw ConfigError(p, "unknown axis '" + name + "'");
    }
  }
  s.read("depth", out.depth);
  std::string ent = entangler_name(out.entangler);
  s.read("entangler", ent);
  if (ent == "cx") out.entangler = Entangler::LinearCX;
  else if (ent == "cz") out.entangler = Entangler::LinearCZ;
  else throw ConfigError(s.path("entangler"), "expected \"cx\" or \"cz\"");
  s.finish();
}

json ansatz_json(const AnsatzConfig& a) {
  json axes = json::array();
  for (auto x : a.axes) axes.push_back(axis_name(x));
  return {{"axes", axes}, {"depth", a.depth}, {"entangler", entangler_name(a.entangler)}};
}

template <class F>
void with_section(Section& parent, const std::string& key, F&& f) {
  if (const json* j = parent.object(key)) {
    Section s(*j, parent.path(key));
    f(s);
    s.finish();
  }
}

void require(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

}  // namespace

LayeredAnsatz AnsatzConfig::build(int n_qubits) const {
  return {n_qubits, depth, axes, entangler};
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Vte:
      return "vte";
    case RunMode::Spectral:
      return "spectral";
    case RunMode::Scaling:
      return "scaling";
    case RunMode::Shots:
      return "shots";
    case RunMode::Compare:
      return "compare";
  }
  return "vte";
}

RunMode parse_mode(const std::string& text) {
  for (RunMode m : {RunMode::Vte, RunMode::Spectral, RunMode::Scaling, RunMode::Shots,
                    RunMode::Compare}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError("mode", "unknown mode '" + text + "'");
}

VteConfig RunConfig::vte_config() const {
  VteConfig v;
  v.n_steps = n_steps;
  v.dt = n_steps > 0 ? t_final / n_steps : t_final;
  v.svd_cutoff = svd_cutoff;
  v.tikhonov = tikhonov;
  v.eval_path = eval_path;
  v.shots = shot_model();
  v.lambda = lambda;
  v.projector = projector;
  v.threads = threads;
  return v;
}

ShotModel RunConfig::shot_model() const {
  return sampled_shots ? ShotModel::sampled(n_shots, seed) : ShotModel::exact();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return config_to_json(a) == config_to_json(b);
}

RunConfig config_from_json(const json& doc) {
  RunConfig c;
  Section root(doc, "");
  std::string mode = to_string(c.mode);
  root.read("mode", mode);
  c.mode = parse_mode(mode);
  root.read("seed", c.seed);
  root.read("threads", c.threads);

  with_section(root, "grid", [&](Section& s) {
    s.read("n_qubits", c.n_qubits);
    s.read("length", c.length);
  });
  with_section(root, "physics", [&](Section& s) {
    s.read("lambda", c.lambda);
    s.read("initial_amplitude", c.initial_amplitude);
    s.read("initial_wavenumber", c.initial_wavenumber);
    s.read("t_final", c.t_final);
    s.read("snapshot_times", c.snapshot_times);
    s.read("self_gravity", c.self_gravity);
  });
  read_ansatz(root, "wavefunction_ansatz", c.wavefunction);
  read_ansatz(root, "potential_ansatz", c.potential);
  with_section(root, "vte", [&](Section& s) {
    s.read("n_steps", c.n_steps);
    s.read("svd_cutoff", c.svd_cutoff);
    s.read("tikhonov", c.tikhonov);
    std::string path = c.eval_path == EvalPath::Analytic ? "analytic" : "hadamard";
    s.read("eval_path", path);
    if (path == "analytic") c.eval_path = EvalPath::Analytic;
    else if (path == "hadamard") c.eval_path = EvalPath::Hadamard;
    else throw ConfigError(s.path("eval_path"), "expected \"analytic\" or \"hadamard\"");
    std::string proj = c.projector == ProjectorWeight::Normalized ? "normalized" : "grid_scaled";
    s.read("projector", proj);
    if (proj == "normalized") c.projector = ProjectorWeight::Normalized;
    else if (proj == "grid_scaled") c.projector = ProjectorWeight::GridScaled;
    else throw ConfigError(s.path("projector"), "expected \"normalized\" or \"grid_scaled\"");
    s.read("compare_reference", c.compare_reference);
  });
  with_section(root, "shots", [&](Section& s) {
    std::string m = c.sampled_shots ? "sampled" : "exact";
    s.read("mode", m);
    if (m == "exact") c.sampled_shots = false;
    else if (m == "sampled") c.sampled_shots = true;
    else throw ConfigError(s.path("mode"), "expected \"exact\" or \"sampled\"");
    s.read("n_shots", c.n_shots);
  });
  with_section(root, "initial_fit", [&](Section& s) {
    s.read("restarts", c.fit_restarts);
    s.read("accept_fidelity", c.fit_accept_fidelity);
  });
  with_section(root, "potential_optimizer", [&](Section& s) {
    s.read("tolerance", c.optimizer.tolerance);
    s.read("simplex_iterations", c.optimizer.simplex_iterations);
    s.read("simplex_step", c.optimizer.simplex_step);
    s.read("bfgs_iterations", c.optimizer.bfgs_iterations);
    s.read("gradient_tolerance", c.optimizer.gradient_tolerance);
    s.read("require_convergence", c.require_potential_convergence);
  });
  with_section(root, "reference", [&](Section& s) { s.read("dt", c.reference_dt); });
  with_section(root, "scaling", [&](Section& s) {
    s.read("lambdas", c.scaling_lambdas);
    s.read("min_qubits", c.scaling_min_qubits);
    s.read("reference_qubits", c.scaling_reference_qubits);
    s.read("threshold", c.scaling_threshold);
    s.read("t_frame", c.scaling_t_frame);
  });
  with_section(root, "shot_study", [&](Section& s) {
    s.read("qubits", c.shot_qubits);
    s.read("repetitions", c.shot_repetitions);
    s.read("n_shots", c.shot_count);
  });
  with_section(root, "compare", [&](Section& s) {
    s.read("a", c.compare_a);
    s.read("b", c.compare_b);
  });
  with_section(root, "output", [&](Section& s) {
    s.read("directory", c.output_dir);
    s.read("plot", c.plot);
  });
  root.finish();
  validate(c);
  return c;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(doc);
}

json config_to_json(const RunConfig& c) {
  return {
      {"mode", to_string(c.mode)},
      {"seed", c.seed},
      {"threads", c.threads},
      {"grid", {{"n_qubits", c.n_qubits}, {"length", c.length}}},
      {"physics",
       {{"lambda", c.lambda},
        {"initial_amplitude", c.initial_amplitude},
        {"initial_wavenumber", c.initial_wavenumber},
        {"t_final", c.t_final},
        {"snapshot_times", c.snapshot_times},
        {"self_gravity", c.self_gravity}}},
      {"wavefunction_ansatz", ansatz_json(c.wavefunction)},
      {"potential_ansatz", ansatz_json(c.potential)},
      {"vte",
       {{"n_steps", c.n_steps},
        {"svd_cutoff", c.svd_cutoff},
        {"tikhonov", c.tikhonov},
        {"eval_path", c.eval_path == EvalPath::Analytic ? "analytic" : "hadamard"},
        {"projector", c.projector == ProjectorWeight::Normalized ? "normalized" : "grid_scaled"},
        {"compare_reference", c.compare_reference}}},
      {"shots", {{"mode", c.sampled_shots ? "sampled" : "exact"}, {"n_shots", c.n_shots}}},
      {"initial_fit", {{"restarts", c.fit_restarts}, {"accept_fidelity", c.fit_accept_fidelity}}},
      {"potential_optimizer",
       {{"tolerance", c.optimizer.tolerance},
        {"simplex_iterations", c.optimizer.simplex_iterations},
        {"simplex_step", c.optimizer.simplex_step},
        {"bfgs_iterations", c.optimizer.bfgs_iterations},
        {"gradient_tolerance", c.optimizer.gradient_tolerance},
        {"require_convergence", c.require_potential_convergence}}},
      {"reference", {{"dt", c.reference_dt}}},
      {"scaling",
       {{"lambdas", c.scaling_lambdas},
        {"min_qubits", c.scaling_min_qubits},
        {"reference_qubits", c.scaling_reference_qubits},
        {"threshold", c.scaling_threshold},
        {"t_frame", c.scaling_t_frame}}},
      {"shot_study",
       {{"qubits", c.shot_qubits}, {"repetitions", c.shot_repetitions}, {"n_shots", c.shot_count}}},
      {"compare", {{"a", c.compare_a}, {"b", c.compare_b}}},
      {"output", {{"directory", c.output_dir}, {"plot", c.plot}}},
  };
}

void validate(const RunConfig& c) {
  require(c.n_qubits >= 1 && c.n_qubits <= 20, "grid.n_qubits", "must be in [1, 20]");
  require(c.length > 0.0, "grid.length", "must be positive");
  require(c.lambda > 0.0, "physics.lambda", "must be positive");
  require(std::abs(c.initial_amplitude) < 1.0, "physics.initial_amplitude",
          "must lie in (-1, 1)");
  require(c.t_final >= 0.0, "physics.t_final", "must be non-negative");
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
    const double t = c.snapshot_times[i];
    require(t >= 0.0 && t <= c.t_final + 1e-12,
            "physics.snapshot_times[" + std::to_string(i) + "]", "must lie in [0, t_final]");
  }
  require(c.wavefunction.depth >= 1, "wavefunction_ansatz.depth", "must be at least 1");
  require(!c.wavefunction.axes.empty(), "wavefunction_ansatz.axes", "must not be empty");
  require(c.potential.depth >= 1, "potential_ansatz.depth", "must be at least 1");
  require(!c.potential.axes.empty(), "potential_ansatz.axes", "must not be empty");
  for (auto a : c.potential.axes) {
    require(a == PauliAxis::Y, "potential_ansatz.axes", "the potential ansatz must be RY-only");
  }
  require(c.n_steps >= 0, "vte.n_steps", "must be non-negative");
  require(c.svd_cutoff > 0.0, "vte.svd_cutoff", "must be positive");
  require(c.tikhonov > 0.0, "vte.tikhonov", "must be positive");
  require(!c.sampled_shots || c.n_shots > 0, "shots.n_shots", "must be positive in sampled mode");
  require(c.fit_restarts >= 1, "initial_fit.restarts", "must be at least 1");
  require(c.fit_accept_fidelity > 0.0 && c.fit_accept_fidelity <= 1.0,
          "initial_fit.accept_fidelity", "must lie in (0, 1]");
  require(c.optimizer.tolerance > 0.0, "potential_optimizer.tolerance", "must be positive");
  require(c.optimizer.simplex_iterations >= 0, "potential_optimizer.simplex_iterations",
          "must be non-negative");
  require(c.optimizer.simplex_step > 0.0, "potential_optimizer.simplex_step", "must be positive");
  require(c.optimizer.bfgs_iterations >= 0, "potential_optimizer.bfgs_iterations",
          "must be non-negative");
  require(c.optimizer.gradient_tolerance > 0.0, "potential_optimizer.gradient_tolerance",
          "must be positive");
  require(c.reference_dt > 0.0, "reference.dt", "must be positive");
  require(c.scaling_lambdas.size() >= 3, "scaling.lambdas", "needs at least three values");
  for (std::size_t i = 0; i < c.scaling_lambdas.size(); ++i) {
    require(c.scaling_lambdas[i] > 0.0, "scaling.lambdas[" + std::to_string(i) + "]",
            "must be positive");
  }
  require(c.scaling_min_qubits >= 1, "scaling.min_qubits", "must be at least 1");
  require(c.scaling_reference_qubits > c.scaling_min_qubits &&
              c.scaling_reference_qubits <= 20,
          "scaling.reference_qubits", "must exceed min_qubits and be at most 20");
  require(c.scaling_threshold > 0.0, "scaling.threshold", "must be positive");
  require(c.scaling_t_frame >= 0.0, "scaling.t_frame", "must be non-negative");
  require(c.shot_qubits >= 2 && c.shot_qubits <= 6, "shot_study.qubits", "must be in [2, 6]");
  require(c.shot_repetitions >= 2, "shot_study.repetitions", "must be at least 2");
  require(c.shot_count >= 1, "shot_study.n_shots", "must be positive");
  require(c.threads >= 1, "threads", "must be at least 1");
}

}  // namespace spvte::app
