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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spvte/app/config.hpp"
#include "spvte/app/runner.hpp"
#include "spvte/error.hpp"

namespace {

enum ExitCode : int {
  kSuccess = 0,
  kOtherFailure = 1,
  kConfigError = 2,
  kNumericalAbort = 3,
  kNonConvergence = 4,
};

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool plot = false;
  std::string compare_a;
  std::string compare_b;
};

spvte::app::RunConfig load(const Overrides& o, spvte::app::RunMode mode) {
  std::string text;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw spvte::app::ConfigError("--config", "cannot read '" + o.config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  auto cfg = spvte::app::parse_config(text);
  cfg.mode = mode;
  if (o.out) cfg.output_dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  if (o.plot) cfg.plot = true;
  if (!o.compare_a.empty()) cfg.compare_a = o.compare_a;
  if (!o.compare_b.empty()) cfg.compare_b = o.compare_b;
  spvte::app::validate(cfg);
  return cfg;
}

int run(const Overrides& o, spvte::app::RunMode mode) {
  try {
    const auto cfg = load(o, mode);
    const auto summary = spvte::app::run_and_emit(cfg);
    std::cout << summary["result"].dump(2) << '\n';
    std::cout << "artifacts written to " << cfg.output_dir << '\n';
    return kSuccess;
  } catch (const spvte::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const spvte::ConvergenceError& e) {
    std::cerr << "not converged: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const spvte::NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  } catch (const spvte::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOtherFailure;
  }
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--plot", o.plot, "Write SVG plots");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid variational time evolution for the 1D Schrodinger-Poisson equation"};
  app.require_subcommand(1);
  Overrides o;

  struct Command {
    const char* name;
    const char* help;
    spvte::app::RunMode mode;
  };
  const Command commands[] = {
      {"vte-run", "Variational evolution with a self-consistent potential", spvte::app::RunMode::Vte},
      {"spectral-run", "Classical spectral reference trajectory", spvte::app::RunMode::Spectral},
      {"scaling-study", "Resolution convergence across lambda and the log fit",
       spvte::app::RunMode::Scaling},
      {"shot-study", "Sampled Hadamard-test spread against the binomial estimate",
       spvte::app::RunMode::Shots},
      {"compare", "Density fidelity between two snapshot files", spvte::app::RunMode::Compare},
  };
  std::optional<spvte::app::RunMode> chosen;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    if (c.mode == spvte::app::RunMode::Compare) {
      sub->add_option("a", o.compare_a, "First snapshots.csv");
      sub->add_option("b", o.compare_b, "Second snapshots.csv");
    }
    sub->callback([&chosen, mode = c.mode] { chosen = mode; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }
  return run(o, *chosen);
}
