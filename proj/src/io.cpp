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

#include "linopt/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace linopt::io {

namespace {

std::string at(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& key, const std::string& base) {
  if (!obj.is_object()) throw InputError(base, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(at(base, key), "required field is missing");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError(field, "expected a number");
  return j.get<double>();
}

long long integer(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw InputError(field, "expected an integer");
  return j.get<long long>();
}

int positive_int(const json& j, const std::string& field) {
  const long long v = integer(j, field);
  if (v < 1 || v > 1'000'000) throw InputError(field, "expected a positive integer");
  return static_cast<int>(v);
}

Statistics statistics_field(const json& j, const std::string& field) {
  if (!j.is_string()) throw InputError(field, "expected \"boson\" or \"fermion\"");
  try {
    return parse_statistics(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(field, e.what());
  }
}

int mode_index(const json& j, const std::string& field, int n) {
  const long long m = integer(j, field);
  if (m < 1 || m > n)
    throw InputError(field, "mode index " + std::to_string(m) + " outside [1, " +
                                std::to_string(n) + "]");
  return static_cast<int>(m);
}

std::pair<int, int> mode_pair(const json& j, const std::string& field, int n) {
  if (!j.is_array() || j.size() != 2) throw InputError(field, "expected two mode indices");
  const int a = mode_index(j[0], idx(field, 0), n);
  const int b = mode_index(j[1], idx(field, 1), n);
  if (a == b) throw InputError(field, "the two modes must differ");
  return {a, b};
}

json schmidt_json(const MatrixXcd& p, bool null) {
  json out = json::object();
  if (null) {
    out["singular_values"] = json::array();
    out["numerical_rank"] = 0;
    return out;
  }
  const auto s = schmidt(p);
  out["singular_values"] = std::vector<double>(s.singular_values.data(),
                                               s.singular_values.data() + s.singular_values.size());
  out["numerical_rank"] = s.numerical_rank;
  return out;
}

json header(std::string_view kind) {
  return json{{"schema", "linopt." + std::string(kind) + "/1"}, {"version", kVersion}};
}

json finish(json report) {
  bool ok = true;
  for (const auto& [_, v] : report["checks"].items()) ok = ok && v.get<bool>();
  report["ok"] = ok;
  return report;
}

}  // namespace

json parse_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < byte; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("", source + ": malformed JSON at line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ": " + e.what());
  }
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path.string());
}

json to_json(const Complex<double>& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
  return out;
}

Complex<double> complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) throw InputError(field, "expected {\"re\": x, \"im\": y}");
  const double re = j.contains("re") ? number(j["re"], at(field, "re")) : 0.0;
  const double im = j.contains("im") ? number(j["im"], at(field, "im")) : 0.0;
  if (!j.contains("re") && !j.contains("im"))
    throw InputError(field, "complex entry needs \"re\" and/or \"im\"");
  return {re, im};
}

MatrixXcd matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InputError(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw InputError(idx(field, 0), "expected an array");
  const std::size_t cols = j[0].size();
  MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw InputError(idx(field, r), "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(row[c], idx(idx(field, r), c));
  }
  return m;
}

OpticalCircuit parse_circuit_elements(const json& j) {
  OpticalCircuit circuit;
  circuit.n = positive_int(require(j, "n", ""), "n");
  const json& elements = require(j, "elements", "");
  if (!elements.is_array()) throw InputError("elements", "expected an array");
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const std::string base = idx("elements", k);
    const json& e = elements[k];
    const json& type = require(e, "type", base);
    if (!type.is_string()) throw InputError(at(base, "type"), "expected a string");
    const auto t = type.get<std::string>();
    if (t == "bs") {
      const auto [a, b] = mode_pair(require(e, "modes", base), at(base, "modes"), circuit.n);
      const double theta = number(require(e, "theta", base), at(base, "theta"));
      const double phi = e.contains("phi") ? number(e["phi"], at(base, "phi")) : 0.0;
      circuit.elements.emplace_back(BeamSplitter{a, b, theta, phi});
    } else if (t == "ps") {
      const int m = mode_index(require(e, "mode", base), at(base, "mode"), circuit.n);
      const double phi = number(require(e, "phi", base), at(base, "phi"));
      circuit.elements.emplace_back(PhaseShifter{m, phi});
    } else if (t == "swap") {
      const auto [a, b] = mode_pair(require(e, "modes", base), at(base, "modes"), circuit.n);
      circuit.elements.emplace_back(ModeSwap{a, b});
    } else {
      throw InputError(at(base, "type"), "unknown element type \"" + t +
                                             "\" (expected bs, ps or swap)");
    }
  }
  return circuit;
}

ParsedCircuit parse_circuit(const json& j, double tolerance) {
  if (!j.is_object()) throw InputError("", "circuit must be a JSON object");
  const int n = positive_int(require(j, "n", ""), "n");
  const bool has_elements = j.contains("elements");
  const bool has_unitary = j.contains("unitary");
  if (has_elements == has_unitary)
    throw InputError("", "circuit needs exactly one of \"elements\" or \"unitary\"");
  if (has_elements) return {compose_circuit<double>(parse_circuit_elements(j)), j};

  MatrixXcd m = matrix_from_json(j["unitary"], "unitary");
  if (m.rows() != n || m.cols() != n)
    throw InputError("unitary", "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                    " matrix");
  const double residual = validate_unitary(m);
  if (!(residual <= tolerance)) {
    throw InputError("unitary", "matrix is not unitary: max |U^dagger U - I| = " +
                                    std::to_string(residual));
  }
  return {ModeUnitaryd(std::move(m), tolerance), j};
}

TwoQuditStated parse_state(const json& j) {
  if (!j.is_object()) throw InputError("", "state must be a JSON object");
  const int d = positive_int(require(j, "d", ""), "d");
  const Statistics s = statistics_field(require(j, "statistics", ""), "statistics");
  const bool has_c = j.contains("C");
  const bool has_bell = j.contains("bell");
  if (has_c == has_bell) throw InputError("", "state needs exactly one of \"C\" or \"bell\"");
  if (has_bell) {
    const json& b = j["bell"];
    if (!b.is_array() || b.size() != 2) throw InputError("bell", "expected [m, k]");
    const long long m = integer(b[0], "bell[0]");
    const long long k = integer(b[1], "bell[1]");
    if (m < 0 || m >= d || k < 0 || k >= d)
      throw InputError("bell", "indices must lie in [0, d)");
    return bell_state<double>(d, m, k, s);
  }
  MatrixXcd c = matrix_from_json(j["C"], "C");
  if (c.rows() != d || c.cols() != d)
    throw InputError("C", "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  const double norm = c.squaredNorm();
  if (std::abs(norm - 1.0) > tol::kNormalization) {
    throw InputError("C", "normalization invariant violated: Tr(C^dagger C) = " +
                              std::to_string(norm) + ", expected 1");
  }
  return TwoQuditStated(std::move(c), s);
}

OptimizerConfig parse_optimizer_config(const json& j) {
  if (!j.is_object()) throw InputError("", "optimizer config must be a JSON object");
  OptimizerConfig c;
  c.n = positive_int(require(j, "n", ""), "n");
  c.d = positive_int(require(j, "d", ""), "d");
  c.statistics = statistics_field(require(j, "statistics", ""), "statistics");
  c.restarts = positive_int(require(j, "restarts", ""), "restarts");
  const long long iters = integer(require(j, "max_iterations", ""), "max_iterations");
  if (iters < 0 || iters > 100'000'000) throw InputError("max_iterations", "out of range");
  c.max_iterations = static_cast<int>(iters);
  if (j.contains("seed")) {
    const long long seed = integer(j["seed"], "seed");
    if (seed < 0) throw InputError("seed", "expected a non-negative integer");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (j.contains("tolerance")) {
    c.tolerance = number(j["tolerance"], "tolerance");
    if (c.tolerance < 0) throw InputError("tolerance", "expected a non-negative number");
  }
  if (c.n < 2 * c.d) throw InputError("n", "must be at least 2d");
  return c;
}

json circuit_json(const ModeUnitaryd& u) {
  json out = header("circuit");
  out["n"] = u.n();
  out["unitary"] = to_json(u.matrix());
  out["unitarity_residual"] = validate_unitary(u.matrix());
  return out;
}

json state_json(const TwoQuditStated& s) {
  return json{{"d", s.d()}, {"statistics", to_string(s.statistics())}, {"C", to_json(s.matrix())}};
}

json optimizer_config_json(const OptimizerConfig& c) {
  return json{{"n", c.n},
              {"d", c.d},
              {"statistics", to_string(c.statistics)},
              {"restarts", c.restarts},
              {"max_iterations", c.max_iterations},
              {"seed", c.seed},
              {"tolerance", c.tolerance}};
}

json pattern_json(ClickPattern p) { return json::array({p.i + 1, p.j + 1}); }

json povm_report(const ModeUnitaryd& u, int d, Statistics statistics, double tolerance) {
  const auto elements = povm_elements(u, d, statistics);
  json out = header("povm");
  out["config"] = {{"n", u.n()}, {"d", d}, {"statistics", to_string(statistics)},
                   {"tolerance", tolerance}};
  int max_rank = 0;
  json list = json::array();
  for (const auto& e : elements) {
    json item = schmidt_json(e.P, e.null);
    max_rank = std::max(max_rank, item["numerical_rank"].get<int>());
    item["pattern"] = pattern_json(e.pattern);
    item["double_click"] = e.pattern.double_click();
    item["null"] = e.null;
    item["weight"] = e.weight();
    item["P"] = to_json(e.P);
    list.push_back(std::move(item));
  }
  out["elements"] = std::move(list);
  const double residual = completeness_check(elements, d);
  out["completeness_residual"] = residual;
  out["max_numerical_rank"] = max_rank;
  out["checks"] = {{"completeness", residual <= tolerance},
                   {"schmidt_rank_at_most_two", max_rank <= 2}};
  return finish(std::move(out));
}

json analyze_report(const ModeUnitaryd& u, int d, Statistics statistics, double tolerance,
                    double me_tolerance) {
  const auto elements = povm_elements(u, d, statistics);
  json out = header("analyze");
  out["config"] = {{"n", u.n()},
                   {"d", d},
                   {"statistics", to_string(statistics)},
                   {"tolerance", tolerance},
                   {"me_tolerance", me_tolerance}};
  int max_rank = 0;
  json list = json::array();
  for (const auto& e : elements) {
    json item = schmidt_json(e.P, e.null);
    max_rank = std::max(max_rank, item["numerical_rank"].get<int>());
    const auto me = e.null ? MEClassification<double>{} : is_maximally_entangled(e.P, me_tolerance);
    item["pattern"] = pattern_json(e.pattern);
    item["null"] = e.null;
    item["weight"] = e.weight();
    item["is_me"] = me.is_me;
    item["kappa"] = me.kappa;
    list.push_back(std::move(item));
  }
  out["elements"] = std::move(list);
  const double residual = completeness_check(elements, d);
  const double success = me_success_probability(elements, d, me_tolerance);
  out["completeness_residual"] = residual;
  out["max_numerical_rank"] = max_rank;
  out["me_success_probability"] = success;
  json detectors = json::array();
  for (const auto& c : detector_accounting(u, d, statistics, me_tolerance))
    detectors.push_back({{"mode", c.mode + 1}, {"me_weight", c.me_weight}, {"bound", c.bound}});
  out["detectors"] = std::move(detectors);
  out["checks"] = {{"completeness", residual <= tolerance},
                   {"schmidt_rank_at_most_two", max_rank <= 2},
                   {"success_at_most_half", d != 2 || success <= 0.5 + 1e-9},
                   {"no_me_beyond_qubits", d <= 2 || success == 0.0}};
  return finish(std::move(out));
}

json bell_report(const ModeUnitaryd& u, int d, Statistics statistics, double tolerance,
                 double me_tolerance) {
  const auto report = bell_discrimination(u, d, statistics, me_tolerance);
  json out = header("bell");
  out["config"] = {{"n", u.n()},
                   {"d", d},
                   {"statistics", to_string(statistics)},
                   {"tolerance", tolerance},
                   {"me_tolerance", me_tolerance}};
  json inputs = json::array();
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < d; ++k) inputs.push_back(json::array({m, k}));
  out["bell_inputs"] = std::move(inputs);
  json rows = json::array();
  json identified = json::array();
  for (const auto& r : report.rows) {
    json row{{"pattern", pattern_json(r.pattern)},
             {"probabilities", r.probabilities},
             {"null", r.null},
             {"weight", r.weight},
             {"is_me", r.is_me},
             {"kappa", r.kappa},
             {"singular_values", std::vector<double>(r.singular_values.data(),
                                                     r.singular_values.data() +
                                                         r.singular_values.size())}};
    if (r.identified) {
      const json id = json::array({r.identified->first, r.identified->second});
      row["identified"] = id;
      if (std::find(identified.begin(), identified.end(), id) == identified.end())
        identified.push_back(id);
    } else {
      row["identified"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  std::sort(identified.begin(), identified.end());
  out["patterns"] = std::move(rows);
  out["identified_states"] = std::move(identified);
  out["input_totals"] = report.input_totals;
  out["success_uniform_bell"] = report.success_uniform_bell;
  out["success_maximally_mixed"] = report.success_maximally_mixed;
  const bool totals_ok = std::all_of(report.input_totals.begin(), report.input_totals.end(),
                                     [&](double t) { return std::abs(t - 1.0) <= tolerance; });
  out["checks"] = {
      {"probabilities_normalized", totals_ok},
      {"success_at_most_half",
       d != 2 || (report.success_uniform_bell <= 0.5 + 1e-9 &&
                  report.success_maximally_mixed <= 0.5 + 1e-9)}};
  return finish(std::move(out));
}

json crosscheck_report(const ModeUnitaryd& u, const TwoQuditStated& state, double tolerance) {
  const int n = static_cast<int>(u.n());
  const auto oracle = detection_probabilities(evolve(encode(state, n), u));
  json out = header("crosscheck");
  out["config"] = {{"n", n},
                   {"d", state.d()},
                   {"statistics", to_string(state.statistics())},
                   {"tolerance", tolerance}};
  out["state"] = state_json(state);
  json rows = json::array();
  double worst = 0.0;
  for (const auto& e : povm_elements(u, state.d(), state.statistics())) {
    const auto it = oracle.find(OccupationBasisState(e.pattern.i, e.pattern.j, state.statistics()));
    const double reference = it == oracle.end() ? 0.0 : it->second;
    const double formula = outcome_probability(e, state);
    worst = std::max(worst, std::abs(formula - reference));
    rows.push_back({{"pattern", pattern_json(e.pattern)}, {"formula", formula}, {"oracle", reference}});
  }
  out["patterns"] = std::move(rows);
  out["max_abs_deviation"] = worst;
  out["checks"] = {{"oracle_agreement", worst <= tolerance}};
  return finish(std::move(out));
}

json single_qudit_report(const ModeUnitaryd& u, int d, double tolerance) {
  const auto povm = single_qudit_povm(u, d);
  json out = header("single-qudit");
  out["config"] = {{"n", u.n()}, {"d", d}, {"tolerance", tolerance}};
  json vectors = json::array();
  for (std::size_t i = 0; i < povm.vectors.size(); ++i)
    vectors.push_back({{"mode", i + 1}, {"v", to_json(VectorXcd(povm.vectors[i]))},
                       {"weight", povm.vectors[i].squaredNorm()}});
  out["elements"] = std::move(vectors);
  const double residual = povm.completeness_residual();
  out["completeness_residual"] = residual;
  out["checks"] = {{"completeness", residual <= tolerance}};
  return finish(std::move(out));
}

json optimize_report(const OptimizerConfig& config, const OptimizationResult& result) {
  json out = header("optimize");
  out["config"] = optimizer_config_json(config);
  out["best_params"] = result.best_params;
  out["best_surrogate"] = result.best_surrogate;
  out["best_hard_success"] = result.best_hard_success;
  out["best_restart"] = result.best_restart;
  json restarts = json::array();
  for (const auto& r : result.restarts) {
    restarts.push_back({{"index", r.index},
                        {"iterations", r.iterations},
                        {"evaluations", r.evaluations},
                        {"converged", r.converged},
                        {"initial_surrogate", r.initial_surrogate},
                        {"surrogate", r.surrogate},
                        {"hard_success", r.hard_success}});
  }
  out["restarts"] = std::move(restarts);
  out["checks"] = {{"success_at_most_half",
                    config.d != 2 || verify_bound({result}, config.d)}};
  return finish(std::move(out));
}

namespace {

enum class Kind { Number, Integer, Boolean, String, Array, Object, ArrayOrNull };

void expect(const json& obj, const std::string& key, Kind kind, const std::string& base = "") {
  const json& v = require(obj, key, base);
  bool good = false;
  switch (kind) {
    case Kind::Number: good = v.is_number(); break;
    case Kind::Integer: good = v.is_number_integer(); break;
    case Kind::Boolean: good = v.is_boolean(); break;
    case Kind::String: good = v.is_string(); break;
    case Kind::Array: good = v.is_array(); break;
    case Kind::Object: good = v.is_object(); break;
    case Kind::ArrayOrNull: good = v.is_array() || v.is_null(); break;
  }
  if (!good) throw InputError(at(base, key), "wrong type");
}

void expect_each(const json& obj, const std::string& key,
                 const std::vector<std::pair<std::string, Kind>>& fields) {
  const json& arr = obj[key];
  for (std::size_t k = 0; k < arr.size(); ++k)
    for (const auto& [name, kind] : fields) expect(arr[k], name, kind, idx(key, k));
}

}  // namespace

void validate_report(std::string_view kind, const json& r) {
  if (!r.is_object()) throw InputError("", "report must be an object");
  expect(r, "schema", Kind::String);
  expect(r, "version", Kind::String);
  const std::string schema = "linopt." + std::string(kind) + "/1";
  if (r["schema"] != schema) throw InputError("schema", "expected \"" + schema + "\"");

  if (kind == "circuit") {
    (void)parse_circuit(r);
    return;
  }
  expect(r, "config", Kind::Object);
  expect(r, "checks", Kind::Object);
  expect(r, "ok", Kind::Boolean);
  for (const auto& [name, v] : r["checks"].items())
    if (!v.is_boolean()) throw InputError("checks." + name, "expected a boolean");

  if (kind == "povm" || kind == "analyze") {
    expect(r, "elements", Kind::Array);
    expect(r, "completeness_residual", Kind::Number);
    expect(r, "max_numerical_rank", Kind::Integer);
    expect_each(r, "elements", {{"pattern", Kind::Array}, {"null", Kind::Boolean},
                                {"weight", Kind::Number}, {"singular_values", Kind::Array},
                                {"numerical_rank", Kind::Integer}});
    if (kind == "povm") {
      expect_each(r, "elements", {{"P", Kind::Array}, {"double_click", Kind::Boolean}});
    } else {
      expect(r, "me_success_probability", Kind::Number);
      expect(r, "detectors", Kind::Array);
      expect_each(r, "elements", {{"is_me", Kind::Boolean}, {"kappa", Kind::Number}});
      expect_each(r, "detectors", {{"mode", Kind::Integer}, {"me_weight", Kind::Number},
                                   {"bound", Kind::Number}});
    }
  } else if (kind == "bell") {
    expect(r, "bell_inputs", Kind::Array);
    expect(r, "patterns", Kind::Array);
    expect(r, "identified_states", Kind::Array);
    expect(r, "input_totals", Kind::Array);
    expect(r, "success_uniform_bell", Kind::Number);
    expect(r, "success_maximally_mixed", Kind::Number);
    expect_each(r, "patterns", {{"pattern", Kind::Array}, {"probabilities", Kind::Array},
                                {"identified", Kind::ArrayOrNull}, {"is_me", Kind::Boolean},
                                {"kappa", Kind::Number}, {"weight", Kind::Number},
                                {"singular_values", Kind::Array}});
  } else if (kind == "crosscheck") {
    expect(r, "state", Kind::Object);
    (void)parse_state(r["state"]);
    expect(r, "patterns", Kind::Array);
    expect(r, "max_abs_deviation", Kind::Number);
    expect_each(r, "patterns", {{"pattern", Kind::Array}, {"formula", Kind::Number},
                                {"oracle", Kind::Number}});
  } else if (kind == "single-qudit") {
    expect(r, "elements", Kind::Array);
    expect(r, "completeness_residual", Kind::Number);
    expect_each(r, "elements", {{"mode", Kind::Integer}, {"v", Kind::Array},
                                {"weight", Kind::Number}});
  } else if (kind == "optimize") {
    (void)parse_optimizer_config(r["config"]);
    expect(r, "best_params", Kind::Array);
    expect(r, "best_surrogate", Kind::Number);
    expect(r, "best_hard_success", Kind::Number);
    expect(r, "best_restart", Kind::Integer);
    expect(r, "restarts", Kind::Array);
    expect_each(r, "restarts", {{"index", Kind::Integer}, {"iterations", Kind::Integer},
                                {"converged", Kind::Boolean}, {"surrogate", Kind::Number},
                                {"hard_success", Kind::Number}});
  } else {
    throw InputError("schema", "unknown report kind \"" + std::string(kind) + "\"");
  }
}

}  // namespace linopt::io
