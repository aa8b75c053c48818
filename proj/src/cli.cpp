// Copyright 2026 The linopt Authors
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

#include "linopt/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "linopt/io.hpp"

namespace linopt::cli {

namespace {

using io::json;

struct Options {
  std::string circuit;
  std::string state;
  std::string config;
  std::string output;
  std::string statistics;
  std::string pattern;
  int d = 0;
  std::optional<std::uint64_t> seed;
  double tolerance = 1e-10;
  double me_tolerance = tol::kMaxEntangled;
};

Statistics statistics_flag(const Options& o) {
  try {
    return parse_statistics(o.statistics);
  } catch (const std::invalid_argument& e) {
    throw io::InputError("--statistics", e.what());
  }
}

int qudit_dimension(const Options& o) {
  if (o.d < 1) throw io::InputError("--d", "qudit dimension must be positive");
  return o.d;
}

io::ParsedCircuit load_circuit(const Options& o) {
  return io::parse_circuit(io::read_file(o.circuit));
}

void require_modes(const ModeUnitaryd& u, int needed, const char* what) {
  if (u.n() < needed) {
    throw io::InputError("--d", std::string(what) + " needs at least " + std::to_string(needed) +
                                    " modes, circuit has " + std::to_string(u.n()));
  }
}

ClickPattern parse_pattern(const std::string& text, int n, Statistics statistics) {
  int i = 0, j = 0;
  char comma = 0;
  std::istringstream ss(text);
  if (!(ss >> i >> comma >> j) || comma != ',' || !ss.eof())
    throw io::InputError("--pattern", "expected \"i,j\" with 1-based mode indices");
  if (i < 1 || j < 1 || i > n || j > n)
    throw io::InputError("--pattern", "mode index outside [1, " + std::to_string(n) + "]");
  if (i > j) std::swap(i, j);
  if (i == j && statistics == Statistics::Fermionic) {
    throw io::InputError("--pattern",
                         "double click (" + text + ") cannot occur for fermions: Pauli exclusion");
  }
  return {i - 1, j - 1};
}

json with_inputs(json report, const Options& o) {
  json inputs = json::object();
  if (!o.circuit.empty()) inputs["circuit"] = o.circuit;
  if (!o.state.empty()) inputs["state"] = o.state;
  if (!o.config.empty()) inputs["config"] = o.config;
  report["config"]["inputs"] = std::move(inputs);
  return report;
}

json cmd_compose(const Options& o) { return io::circuit_json(load_circuit(o).unitary); }

json cmd_povm(const Options& o) {
  const auto circuit = load_circuit(o);
  const int d = qudit_dimension(o);
  const Statistics s = statistics_flag(o);
  require_modes(circuit.unitary, 2 * d, "a two-qudit POVM");
  json report = io::povm_report(circuit.unitary, d, s, o.tolerance);
  if (!o.pattern.empty()) {
    const auto p = parse_pattern(o.pattern, static_cast<int>(circuit.unitary.n()), s);
    const json wanted = io::pattern_json(p);
    json kept = json::array();
    for (auto& e : report["elements"])
      if (e["pattern"] == wanted) kept.push_back(e);
    report["elements"] = std::move(kept);
    report["config"]["pattern"] = wanted;
  }
  return report;
}

json cmd_analyze(const Options& o) {
  const auto circuit = load_circuit(o);
  const int d = qudit_dimension(o);
  require_modes(circuit.unitary, 2 * d, "a two-qudit analysis");
  return io::analyze_report(circuit.unitary, d, statistics_flag(o), o.tolerance, o.me_tolerance);
}

json cmd_bell(const Options& o) {
  const auto circuit = load_circuit(o);
  const int d = qudit_dimension(o);
  require_modes(circuit.unitary, 2 * d, "Bell discrimination");
  return io::bell_report(circuit.unitary, d, statistics_flag(o), o.tolerance, o.me_tolerance);
}

json cmd_crosscheck(const Options& o) {
  const auto circuit = load_circuit(o);
  const auto state = io::parse_state(io::read_file(o.state));
  if (!o.statistics.empty() && statistics_flag(o) != state.statistics()) {
    throw io::InputError("--statistics", "flag says " + o.statistics + " but the state file says " +
                                             std::string(to_string(state.statistics())));
  }
  require_modes(circuit.unitary, 2 * static_cast<int>(state.d()), "the encoded state");
  return io::crosscheck_report(circuit.unitary, state, o.tolerance);
}

json cmd_single_qudit(const Options& o) {
  const auto circuit = load_circuit(o);
  const int d = qudit_dimension(o);
  require_modes(circuit.unitary, d, "a single-qudit POVM");
  return io::single_qudit_report(circuit.unitary, d, o.tolerance);
}

json cmd_optimize(const Options& o) {
  const json raw = io::read_file(o.config);
  auto config = io::parse_optimizer_config(raw);
  if (o.seed) {
    config.seed = *o.seed;
  } else if (!raw.contains("seed")) {
    throw io::InputError("seed", "optimize needs an explicit seed (config field or --seed)");
  }
  return io::optimize_report(config, optimize(config));
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("-o,--output", o.output, "Write the report to this file");
  sub->add_option("--tolerance", o.tolerance, "Tolerance for numerical checks")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized measurements of two qudits by linear optics"};
  app.name("linopt");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(io::kVersion));

  auto* compose = app.add_subcommand("compose", "Compose a circuit into its mode unitary");
  compose->add_option("--circuit", o.circuit)->required();
  add_common(compose, o);

  auto* povm = app.add_subcommand("povm", "Two-qudit POVM induced by a circuit");
  auto* analyze = app.add_subcommand("analyze", "Schmidt and maximal-entanglement analysis");
  auto* bell = app.add_subcommand("bell", "Bell-state discrimination report");
  for (auto* sub : {povm, analyze, bell}) {
    sub->add_option("--circuit", o.circuit)->required();
    sub->add_option("--d", o.d, "Qudit dimension")->required();
    sub->add_option("--statistics", o.statistics, "boson or fermion")->required();
    add_common(sub, o);
  }
  povm->add_option("--pattern", o.pattern, "Report only the click pattern \"i,j\"");
  for (auto* sub : {analyze, bell})
    sub->add_option("--me-tolerance", o.me_tolerance, "Relative singular-value spread for ME");

  auto* crosscheck = app.add_subcommand("crosscheck", "Compare POVM probabilities with the Fock oracle");
  crosscheck->add_option("--circuit", o.circuit)->required();
  crosscheck->add_option("--state", o.state)->required();
  crosscheck->add_option("--statistics", o.statistics, "Must match the state file if given");
  add_common(crosscheck, o);

  auto* optimize_cmd = app.add_subcommand("optimize", "Search for the best ME projection");
  optimize_cmd->add_option("--config", o.config)->required();
  optimize_cmd->add_option("--seed", o.seed, "Overrides the config seed");
  add_common(optimize_cmd, o);

  auto* single = app.add_subcommand("single-qudit", "Single-qudit POVM of a circuit");
  single->add_option("--circuit", o.circuit)->required();
  single->add_option("--d", o.d, "Qudit dimension")->required();
  add_common(single, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "linopt " << io::kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "linopt: " << e.what() << "\n";
    return kInputError;
  }

  json report;
  try {
    if (compose->parsed()) report = cmd_compose(o);
    else if (povm->parsed()) report = cmd_povm(o);
    else if (analyze->parsed()) report = cmd_analyze(o);
    else if (bell->parsed()) report = cmd_bell(o);
    else if (crosscheck->parsed()) report = cmd_crosscheck(o);
    else if (optimize_cmd->parsed()) report = cmd_optimize(o);
    else report = cmd_single_qudit(o);
  } catch (const io::InputError& e) {
    err << "linopt: invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const InvariantViolation& e) {
    err << "linopt: check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "linopt: invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "linopt: invalid input: " << e.what() << "\n";
    return kInputError;
  }

  report = with_inputs(std::move(report), o);
  const std::string text = report.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output);
    if (!file || !(file << text)) {
      err << "linopt: cannot write " << o.output << "\n";
      return kInputError;
    }
  }
  if (report.contains("ok") && !report["ok"].get<bool>()) {
    err << "linopt: check failed:";
    for (const auto& [name, v] : report["checks"].items())
      if (!v.get<bool>()) err << " " << name;
    err << "\n";
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace linopt::cli
