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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcover/coverage.hpp"
#include "qcover/statevector.hpp"
#include "qcover/transpiler.hpp"

namespace qcover {

struct PipelineOptions {
    double epsilon{kDefaultEpsilon};
    SimulatorOptions simulator;
    std::optional<double> time_limit_seconds;
};

struct CoverResult {
    TranspiledCircuit transpiled;
    Circuit instrumented;
    RunResult run;
    CoverageReport report;
};

/// transpile -> instrument -> run -> analyze.
CoverResult cover(const Circuit &circuit, std::string name, const PipelineOptions &options = {});

/// The nine metrics in report order: coverage, Jain, probabilistic, each as
/// condition, decision, path.
constexpr std::size_t kMetricCount = 9;
std::array<double, kMetricCount> metric_values(const CoverageReport &report);
std::string_view criterion_name(std::size_t metric);  // "Condition", "Decision", "Path"
std::string_view family_name(std::size_t metric);     // "coverage", "jain", "probabilistic"

struct Stats {
    double min{0.0};
    double max{0.0};
    double median{0.0};
    double avg{0.0};
};

/// Throws Error on an empty input.
Stats describe(std::vector<double> values);

struct SummaryGroup {
    std::string name;
    std::size_t circuits{0};
    std::array<Stats, kMetricCount> stats{};
};

/// A decision made of more than one condition: several control qubits, or
/// cswap, whose decomposed cx are driven by the target qubits.
bool is_complex_gate(const DecisionOutcome &gate);
bool has_complex_gate(const CoverageReport &report);

/// Groups "All", "Non-complex" (no complex gate) and ">=1 complex".
std::vector<SummaryGroup> summarize(std::span<const CoverageReport> reports);

std::string format_report(const CoverageReport &report);
std::string format_summary(std::span<const SummaryGroup> groups);
nlohmann::json summary_to_json(std::span<const SummaryGroup> groups);

}  // namespace qcover
