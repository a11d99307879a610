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

#include "qcover/coverage.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qcover/error.hpp"
#include "qcover/instrumenter.hpp"

namespace qcover {

namespace {

double expectation_of(const ProbeLog &log, const std::string &label) {
    const ProbeRecord *rec = log.find(label);
    if (rec == nullptr) {
        throw CoverageError("missing probe label " + label);
    }
    const auto *value = std::get_if<double>(&rec->value);
    if (value == nullptr) {
        throw CoverageError("probe " + label + " does not hold an expectation value");
    }
    return *value;
}

std::array<double, 2> probabilities_of(const ProbeLog &log, const std::string &label) {
    const ProbeRecord *rec = log.find(label);
    if (rec == nullptr) {
        throw CoverageError("missing probe label " + label);
    }
    const auto *value = std::get_if<std::array<double, 2>>(&rec->value);
    if (value == nullptr) {
        throw CoverageError("probe " + label + " does not hold probabilities");
    }
    return *value;
}

void check_range(double expectation, double epsilon) {
    if (!(expectation >= -1.0 - epsilon && expectation <= 1.0 + epsilon)) {
        throw CoverageError(fmt::format("expectation value {} outside [-1, 1]", expectation));
    }
}

double percent_of_log2(double log2_fraction) { return std::min(100.0, 100.0 * std::exp2(log2_fraction)); }

}  // namespace

Classification classify_condition(double expectation, const std::array<double, 2> &probs, double epsilon) {
    check_range(expectation, epsilon);
    Classification c;
    if (expectation <= -1.0 + epsilon) {
        c.true_hit = 1;
    } else if (expectation >= 1.0 - epsilon) {
        c.false_hit = 1;
    } else {
        c.true_hit = 1;
        c.false_hit = 1;
    }
    c.ptrue = probs[1];
    c.pfalse = probs[0];
    return c;
}

Classification classify_decision(std::span<const double> expectations, std::span<const std::array<double, 2>> probs,
                                 double epsilon) {
    if (expectations.empty()) {
        throw CoverageError("decision needs at least one control");
    }
    if (expectations.size() != probs.size()) {
        throw CoverageError("decision expectation and probability counts differ");
    }
    bool all_one = true;
    bool any_zero = false;
    for (double e : expectations) {
        check_range(e, epsilon);
        all_one = all_one && e <= -1.0 + epsilon;
        any_zero = any_zero || e >= 1.0 - epsilon;
    }
    Classification c;
    if (all_one) {
        c.true_hit = 1;
    } else if (any_zero) {
        c.false_hit = 1;
    } else {
        c.true_hit = 1;
        c.false_hit = 1;
    }
    for (const auto &p : probs) {
        c.ptrue += p[1];
        c.pfalse += p[0];
    }
    return c;
}

double jain_index(std::span<const double> values) {
    if (values.empty()) {
        throw CoverageError("Jain index of an empty list");
    }
    double sum = 0.0;
    double squares = 0.0;
    for (double v : values) {
        if (v < 0.0) {
            throw CoverageError("Jain index needs non-negative values");
        }
        sum += v;
        squares += v * v;
    }
    if (squares == 0.0) {
        throw CoverageError("Jain index of all-zero values");
    }
    return sum * sum / (static_cast<double>(values.size()) * squares);
}

CoverageReport analyze(const ProbeLog &log, const TranspiledCircuit &transpiled, double epsilon) {
    CoverageReport report;
    report.num_qubits = transpiled.circuit.num_qubits();
    report.controlled_gates = transpiled.origins.size();

    double decision_hits = 0.0;
    double decision_squares = 0.0;
    double condition_hits = 0.0;
    double condition_squares = 0.0;
    double log2_paths = 0.0;
    double log2_path_squares = 0.0;

    for (const auto &origin : transpiled.origins) {
        for (std::uint32_t j = 1; j <= origin.cx_ids.size(); ++j) {
            const double e = expectation_of(log, condition_value_label(origin.kind, origin.ordinal, j));
            const auto p = probabilities_of(log, condition_probability_label(origin.kind, origin.ordinal, j));
            const Classification c = classify_condition(e, p, epsilon);
            report.per_cx.push_back(
                {origin.id, origin.kind, origin.ordinal, j, e, c.true_hit, c.false_hit, c.ptrue, c.pfalse});
            const double square = c.ptrue * c.ptrue + c.pfalse * c.pfalse;
            condition_hits += c.true_hit + c.false_hit;
            condition_squares += square;
            log2_paths += std::log2(static_cast<double>(c.true_hit + c.false_hit));
            log2_path_squares += std::log2(square);
        }
        std::vector<double> exps;
        std::vector<std::array<double, 2>> probs;
        for (std::uint32_t k = 1; k <= origin.controls.size(); ++k) {
            exps.push_back(expectation_of(log, decision_value_label(origin.kind, origin.ordinal, k)));
            probs.push_back(probabilities_of(log, decision_probability_label(origin.kind, origin.ordinal, k)));
        }
        const Classification d = classify_decision(exps, probs, epsilon);
        report.per_gate.push_back(
            {origin.id, origin.kind, origin.ordinal, exps, d.true_hit, d.false_hit, d.ptrue, d.pfalse});
        decision_hits += d.true_hit + d.false_hit;
        decision_squares += d.ptrue * d.ptrue + d.pfalse * d.pfalse;
        report.cx_conditions += origin.cx_ids.size();
        report.control_qubits += origin.controls.size();
    }

    if (report.controlled_gates == 0) {
        report.probabilistic = report.jain = report.coverage = Metrics{};
        return report;
    }
    const auto m = static_cast<double>(report.controlled_gates);
    const auto s = static_cast<double>(report.cx_conditions);
    const auto l = static_cast<double>(report.control_qubits);

    report.coverage.decision = 100.0 * decision_hits / (2.0 * m);
    report.coverage.condition = 100.0 * condition_hits / (2.0 * s);
    report.coverage.path = percent_of_log2(log2_paths - s);

    report.jain.decision = std::min(100.0, 100.0 * l * l / (2.0 * m * decision_squares));
    report.jain.condition = std::min(100.0, 100.0 * s * s / (2.0 * s * condition_squares));
    report.jain.path = percent_of_log2(-s - log2_path_squares);

    report.probabilistic.condition = report.coverage.condition * report.jain.condition / 100.0;
    report.probabilistic.decision = report.coverage.decision * report.jain.decision / 100.0;
    report.probabilistic.path = report.coverage.path * report.jain.path / 100.0;
    return report;
}

nlohmann::json to_json(const CoverageReport &report) {
    using nlohmann::json;
    auto metrics = [](const Metrics &m) {
        return json{{"condition", m.condition}, {"decision", m.decision}, {"path", m.path}};
    };
    json per_gate = json::array();
    for (const auto &g : report.per_gate) {
        per_gate.push_back({{"id", g.origin_gate_id},
                            {"kind", std::string(gate_name(g.kind))},
                            {"ordinal", g.ordinal},
                            {"controls", g.controls},
                            {"true", g.true_hit},
                            {"false", g.false_hit},
                            {"ptrue", g.ptrue},
                            {"pfalse", g.pfalse}});
    }
    json per_cx = json::array();
    for (const auto &c : report.per_cx) {
        per_cx.push_back({{"origin_gate_id", c.origin_gate_id},
                          {"kind", std::string(gate_name(c.kind))},
                          {"ordinal", c.ordinal},
                          {"cx_index", c.cx_index},
                          {"expectation", c.expectation},
                          {"true", c.true_hit},
                          {"false", c.false_hit},
                          {"ptrue", c.ptrue},
                          {"pfalse", c.pfalse}});
    }
    return json{{"schema", kReportSchema},
                {"circuit", report.circuit},
                {"num_qubits", report.num_qubits},
                {"controlled_gates", report.controlled_gates},
                {"cx_conditions", report.cx_conditions},
                {"control_qubits", report.control_qubits},
                {"coverage", metrics(report.coverage)},
                {"jain", metrics(report.jain)},
                {"probabilistic", metrics(report.probabilistic)},
                {"per_gate", std::move(per_gate)},
                {"per_cx", std::move(per_cx)}};
}

}  // namespace qcover
