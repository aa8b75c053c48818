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

// JSON input files and reports. Complex numbers are {"re": x, "im": y};
// mode and pattern indices are 1-based. Schemas are described in
// docs/schemas.md.

#ifndef LINOPT_IO_HPP_
#define LINOPT_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "linopt/entanglement.hpp"
#include "linopt/mode_algebra.hpp"
#include "linopt/optimizer.hpp"
#include "linopt/povm.hpp"
#include "linopt/state_matrix.hpp"

namespace linopt::io {

using nlohmann::json;

inline constexpr std::string_view kVersion = "0.1.0";

/// Schema or invariant violation in an input file. `field` is a JSON path
/// such as "elements[2].theta".
class InputError : public std::invalid_argument {
 public:
  InputError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses JSON text; syntax errors become InputError with line and column.
json parse_text(std::string_view text, const std::string& source);
json read_file(const std::filesystem::path& path);

json to_json(const Complex<double>& z);
json to_json(const MatrixXcd& m);
json to_json(const VectorXcd& v);
Complex<double> complex_from_json(const json& j, const std::string& field);
MatrixXcd matrix_from_json(const json& j, const std::string& field);

struct ParsedCircuit {
  ModeUnitaryd unitary;
  json source;  // the circuit document as read
};

ParsedCircuit parse_circuit(const json& j, double tolerance = tol::kUnitarity);
OpticalCircuit parse_circuit_elements(const json& j);
TwoQuditStated parse_state(const json& j);
OptimizerConfig parse_optimizer_config(const json& j);

json circuit_json(const ModeUnitaryd& u);
json state_json(const TwoQuditStated& s);
json optimizer_config_json(const OptimizerConfig& c);
json pattern_json(ClickPattern p);

json povm_report(const ModeUnitaryd& u, int d, Statistics statistics, double tolerance);
json analyze_report(const ModeUnitaryd& u, int d, Statistics statistics, double tolerance,
                    double me_tolerance);
json bell_report(const ModeUnitaryd& u, int d, Statistics statistics, double tolerance,
                 double me_tolerance);
json crosscheck_report(const ModeUnitaryd& u, const TwoQuditStated& state, double tolerance);
json single_qudit_report(const ModeUnitaryd& u, int d, double tolerance);
json optimize_report(const OptimizerConfig& config, const OptimizationResult& result);

/// Report kinds: "circuit", "povm", "analyze", "bell", "crosscheck",
/// "single-qudit", "optimize". Throws InputError naming the first missing or
/// mistyped field.
void validate_report(std::string_view kind, const json& report);

}  // namespace linopt::io

#endif  // LINOPT_IO_HPP_
