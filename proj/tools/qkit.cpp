// Copyright 2026 The qkit Authors
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
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qkit/commands.hpp"
#include "qkit/core.hpp"
#include "qkit/fixtures.hpp"

namespace cli = qkit::cli;

int main(int argc, char** argv) {
  CLI::App app{"qkit: quantumness and interferometric capability toolkit"};
  app.require_subcommand(1);

  cli::Options opt;
  std::string format = "text";
  std::string out_path;
  std::string fixture_name;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", out_path, "Write the report to this file instead of stdout");
    sub->add_option("--seed", opt.seed, "Seed for all randomised searches");
    sub->add_option("--budget", opt.budget, "Optimiser budget: restarts[,max_evals[,ftol]]");
  };

  CLI::App* classify = app.add_subcommand("classify", "Membership in the four classical families");
  classify->add_option("--state", opt.state, "State file, or fixture:<name>")->required();
  classify->add_option("--basis", opt.basis, "A-basis: computational or fourier");
  common(classify);

  CLI::App* measure = app.add_subcommand("measure", "Skew-information quantumness measures");
  measure->add_option("--state", opt.state, "State file, or fixture:<name>")->required();
  measure->add_option("--basis", opt.basis, "A-basis for the BD-discord: computational or fourier");
  measure->add_option("--generator", opt.generator, "Generator eigenvalues, comma separated");
  measure->add_option("--m", opt.m, "Decomposition size for the convex roof");
  common(measure);

  CLI::App* interfere = app.add_subcommand("interfere", "Run an interferometric scenario");
  interfere->add_option("--scenario", opt.scenario, "Scenario file")->required();
  common(interfere);

  CLI::App* adversary = app.add_subcommand("adversary", "Play an adversary game from a scenario");
  adversary->add_option("--scenario", opt.scenario, "Scenario file")->required();
  common(adversary);

  CLI::App* table1 = app.add_subcommand("table1", "Quantumness matrix over the canonical states");
  common(table1);

  CLI::App* fixture = app.add_subcommand("fixture", "Export a built-in state as a state file");
  fixture->add_option("name", fixture_name, "Fixture name")->required();
  fixture->add_option("--out", out_path, "Write the state file here instead of stdout");
  CLI::App* fixtures = app.add_subcommand("fixtures", "List built-in fixture names");

  CLI11_PARSE(app, argc, argv);

  try {
    opt.format = cli::parse_format(format);
    cli::Report rep;
    if (fixtures->parsed()) {
      for (const std::string& n : qkit::fixture_names()) rep.body += n + "\n";
    } else if (fixture->parsed()) {
      rep = cli::cmd_fixture(fixture_name);
    } else if (classify->parsed()) {
      rep = cli::cmd_classify(opt);
    } else if (measure->parsed()) {
      rep = cli::cmd_measure(opt);
    } else if (interfere->parsed()) {
      rep = cli::cmd_interfere(opt);
    } else if (adversary->parsed()) {
      rep = cli::cmd_adversary(opt);
    } else {
      rep = cli::cmd_table1(opt);
    }

    if (out_path.empty()) {
      std::cout << rep.body;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return cli::kExitInput;
      }
      out << rep.body;
    }
    if (!rep.converged) std::cerr << "warning: some optimisations did not converge\n";
    return rep.exit_code();
  } catch (const qkit::Error& e) {
    std::cerr << "error (" << qkit::to_string(e.kind()) << "): " << e.what() << "\n";
    return cli::kExitInput;
  }
}
