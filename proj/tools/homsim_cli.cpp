// Copyright 2026 The homsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "homsim/homsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
  std::string config;
  std::string out_dir = ".";
  std::size_t grid_n = 0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config, "scenario file (JSON)")
      ->required();
  cmd->add_option("--out", opt.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--grid-n", opt.grid_n,
                  "override grid point counts (convergence studies)");
  cmd->add_flag("--quiet", opt.quiet, "suppress console summary");
}

int run_task(homsim::TaskKind task, const CommonOptions& opt) {
  homsim::Scenario scenario = homsim::load_scenario(opt.config);
  if (scenario.task != task)
    throw homsim::ValidationError(
        "config declares task \"" + std::string(to_string(scenario.task)) +
        "\" but the \"" + std::string(to_string(task)) +
        "\" subcommand was invoked");
  if (opt.grid_n > 0) {
    if (scenario.grid) scenario.grid->n = opt.grid_n;
    if (scenario.blue_grid) scenario.blue_grid->n = opt.grid_n;
  }

  const homsim::RunReport report = homsim::execute(scenario, opt.out_dir);

  if (!opt.quiet) {
    std::printf("task     : %s\n", std::string(to_string(task)).c_str());
    std::printf("config   : %s (hash %s)\n", opt.config.c_str(),
                report.config_hash.c_str());
    if (report.probabilities) {
      std::printf("P_RR     : %.12g\n", report.probabilities->p_rr);
      std::printf("P_RB     : %.12g\n", report.probabilities->p_rb);
      std::printf("P_BB     : %.12g\n", report.probabilities->p_bb);
    }
    if (!report.schmidt_sigma.empty())
      std::printf("sigma_1  : %.12g\n", report.schmidt_sigma.front());
    if (report.condition_residual)
      std::printf("residual : %.12g\n", *report.condition_residual);
    if (report.unitarity_residual)
      std::printf("unitarity: %.12g\n", *report.unitarity_residual);
    if (report.reconstruction_residual)
      std::printf("reconstr.: %.12g\n", *report.reconstruction_residual);
    for (const auto& f : report.outputs)
      std::printf("wrote    : %s\n", f.string().c_str());
    std::printf("elapsed  : %.3f s\n", report.elapsed_seconds);
  }

  if (task == homsim::TaskKind::verify && report.unitarity_residual &&
      *report.unitarity_residual > 1e-10) {
    std::fprintf(stderr, "verify: unitarity residual %g exceeds 1e-10\n",
                 *report.unitarity_residual);
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-photon interference at passive and frequency-shifting "
               "beam splitters"};
  app.require_subcommand(1);

  struct Sub {
    homsim::TaskKind task;
    CLI::App* cmd;
    CommonOptions opt;
  };
  Sub subs[] = {
      {homsim::TaskKind::run,
       app.add_subcommand("run", "propagate one photon pair"), {}},
      {homsim::TaskKind::scan,
       app.add_subcommand("scan", "coincidence dip over arrival delays"), {}},
      {homsim::TaskKind::decompose,
       app.add_subcommand("decompose",
                          "beam-splitter and Schmidt decomposition"),
       {}},
      {homsim::TaskKind::synthesize,
       app.add_subcommand("synthesize", "build a kernel from a Schmidt spec"),
       {}},
      {homsim::TaskKind::verify,
       app.add_subcommand("verify", "unitarity residual report"), {}},
  };
  for (auto& sub : subs) add_common(sub.cmd, sub.opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    for (const auto& sub : subs)
      if (sub.cmd->parsed()) return run_task(sub.task, sub.opt);
    return kExitValidation;
  } catch (const homsim::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const homsim::NotUnitary& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const homsim::DegenerateSpectrum& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const homsim::Error& e) {
    std::fprintf(stderr, "invalid scenario: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
