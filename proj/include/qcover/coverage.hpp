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
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcover/statevector.hpp"
#include "qcover/transpiler.hpp"

namespace qcover {

constexpr double kDefaultEpsilon = 1e-9;
inline constexpr const char *kReportSchema = "qcover.coverage_report.v1";

struct Classification {
    int true_hit{0};
    int false_hit{0};
    double ptrue{0.0};
    double pfalse{0.0};
};

/// Outcome of one decomposed cx: its control was |1> (true), |0> (false) or
/// both at the probe point.
struct ConditionOutcome {
    InstructionId origin_gate_id;
    GateKind kind;
    std::uint32_t ordinal;
    std::uint32_t cx_index;
    double expectation;
    int true_hit;
    int false_hit;
    double ptrue;
    double pfalse;
};

/// Outcome of one original controlled gate.
struct DecisionOutcome {
    InstructionId origin_gate_id;
    GateKind kind;
    std::uint32_t ordinal;
    std::vector<double> controls;  // per-control expectation values
    int true_hit;
    int false_hit;
    double ptrue;
    double pfalse;
};

/// Percentages for the three criteria.
struct Metrics {
    double condition{100.0};
    double decision{100.0};
    double path{100.0};
};

struct CoverageReport {
    std::string circuit;
    std::size_t num_qubits{0};
    std::size_t controlled_gates{0};  // |G(Q)|
    std::size_t cx_conditions{0};     // sum of N over G(Q)
    std::size_t control_qubits{0};    // sum of |L(g)| over G(Q)
    Metrics coverage;
    Metrics jain;
    Metrics probabilistic;
    std::vector<DecisionOutcome> per_gate;
    std::vector<ConditionOutcome> per_cx;
};

/// Throws CoverageError if `expectation` is outside [-1-eps, 1+eps].
Classification classify_condition(double expectation, const std::array<double, 2> &probs, double epsilon);

/// Throws CoverageError on an empty control list or mismatched sizes.
Classification classify_decision(std::span<const double> expectations, std::span<const std::array<double, 2>> probs,
                                 double epsilon);

/// (sum x)^2 / (n sum x^2). Throws CoverageError on empty or all-zero input.
double jain_index(std::span<const double> values);

/// Computes all nine metrics. Throws CoverageError if a probe label that the
/// instrumenter would emit is missing from `log`.
CoverageReport analyze(const ProbeLog &log, const TranspiledCircuit &transpiled, double epsilon = kDefaultEpsilon);

nlohmann::json to_json(const CoverageReport &report);

}  // namespace qcover
