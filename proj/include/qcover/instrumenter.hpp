// Copyright 2026 The qcover Authors
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

#pragma once

#include <string>

#include "qcover/circuit.hpp"
#include "qcover/transpiler.hpp"

namespace qcover {

std::string condition_value_label(GateKind kind, std::uint32_t ordinal, std::uint32_t cx_index);
std::string condition_probability_label(GateKind kind, std::uint32_t ordinal, std::uint32_t cx_index);
std::string decision_value_label(GateKind kind, std::uint32_t ordinal, std::uint32_t control_index);
std::string decision_probability_label(GateKind kind, std::uint32_t ordinal, std::uint32_t control_index);

/// Adds probes to a transpiled circuit.
///
/// Each provenance-bearing cx is followed by an expectation and a
/// probabilities probe on its control qubit. At the end of each origin
/// gate's expansion, every control qubit gets the same pair at decision
/// level. Gate instructions are left untouched.
Circuit instrument(const TranspiledCircuit &transpiled);

/// OpenQASM-like listing with probes rendered as `//` comments.
std::string render_instrumented(const Circuit &instrumented);

}  // namespace qcover
