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

#include "qcover/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <fmt/format.h>

#include "qcover/error.hpp"
#include "qcover/instrumenter.hpp"

namespace qcover {

CoverResult cover(const Circuit &circuit, std::string name, const PipelineOptions &options) {
    SimulatorOptions sim = options.simulator;
    if (options.time_limit_seconds) {
        sim.deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(*options.time_limit_seconds));
    }
    CoverResult result;
    result.transpiled = transpile(circuit);
    result.instrumented = instrument(result.transpiled);
    result.run = run(result.instrumented, sim);
    result.report = analyze(result.run.log, result.transpiled, options.epsilon);
    result.report.circuit = std::move(name);
    return result;
}

std::array<double, kMetricCount> metric_values(const CoverageReport &r) {
    return {r.coverage.condition,      r.coverage.decision,      r.coverage.path,
            r.jain.condition,          r.jain.decision,          r.jain.path,
            r.probabilistic.condition, r.probabilistic.decision, r.probabilistic.path};
}

std::string_view criterion_name(std::size_t metric) {
    static constexpr std::string_view kNames[] = {"Condition", "Decision", "Path"};
    return kNames[metric % 3];
}

std::string_view family_name(std::size_t metric) {
    static constexpr std::string_view kNames[] = {"coverage", "jain", "probabilistic"};
    return kNames[metric / 3];
}

Stats describe(std::vector<double> values) {
    if (values.empty()) {
        throw Error("no values to summarize");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    Stats s;
    s.min = values.front();
    s.max = values.back();
    s.median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    s.avg = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    return s;
}

bool is_complex_gate(const DecisionOutcome &gate) { return gate.controls.size() > 1 || gate.kind == GateKind::CSwap; }

bool has_complex_gate(const CoverageReport &report) {
    return std::any_of(report.per_gate.begin(), report.per_gate.end(), is_complex_gate);
}

std::vector<SummaryGroup> summarize(std::span<const CoverageReport> reports) {
    std::vector<SummaryGroup> groups;
    auto add = [&](std::string name, auto keep) {
        SummaryGroup group{std::move(name), 0, {}};
        std::array<std::vector<double>, kMetricCount> columns;
        for (const auto &r : reports) {
            if (!keep(r)) {
                continue;
            }
            ++group.circuits;
            const auto values = metric_values(r);
            for (std::size_t m = 0; m < kMetricCount; ++m) {
                columns[m].push_back(values[m]);
            }
        }
        if (group.circuits > 0) {
            for (std::size_t m = 0; m < kMetricCount; ++m) {
                group.stats[m] = describe(std::move(columns[m]));
            }
        }
        groups.push_back(std::move(group));
    };
    add("All", [](const CoverageReport &) { return true; });
    add("Non-complex", [](const CoverageReport &r) { return !has_complex_gate(r); });
    add(">=1 complex", [](const CoverageReport &r) { return has_complex_gate(r); });
    return groups;
}

std::string format_report(const CoverageReport &r) {
    std::string out = fmt::format("{} ({} qubits, {} controlled gates, {} cx conditions)\n", r.circuit, r.num_qubits,
                                  r.controlled_gates, r.cx_conditions);
    out += fmt::format("  {:<10} {:>9} {:>9} {:>14}\n", "Metric", "Coverage", "Jain", "Probabilistic");
    const auto v = metric_values(r);
    for (std::size_t c = 0; c < 3; ++c) {
        out += fmt::format("  {:<10} {:>9.2f} {:>9.2f} {:>14.2f}\n", criterion_name(c), v[c], v[3 + c], v[6 + c]);
    }
    return out;
}

std::string format_summary(std::span<const SummaryGroup> groups) {
    std::string out = fmt::format("{:<10} {:<18} | {:^31} | {:^31} | {:^31}\n", "Metric", "Group", "Coverage (%)",
                                  "Jain (%)", "Probabilistic (%)");
    std::string sub;
    for (int f = 0; f < 3; ++f) {
        sub += fmt::format(" | {:>7} {:>7} {:>7} {:>7}", "Min", "Max", "Median", "Avg");
    }
    out += fmt::format("{:<10} {:<18}{}\n", "", "", sub);
    for (std::size_t c = 0; c < 3; ++c) {
        for (const auto &g : groups) {
            std::string row = fmt::format("{:<10} {:<18}", &g == &groups.front() ? criterion_name(c) : "",
                                          fmt::format("{} ({})", g.name, g.circuits));
            for (std::size_t f = 0; f < 3; ++f) {
                const Stats &s = g.stats[f * 3 + c];
                if (g.circuits == 0) {
                    row += fmt::format(" | {:>7} {:>7} {:>7} {:>7}", "-", "-", "-", "-");
                } else {
                    row += fmt::format(" | {:>7.2f} {:>7.2f} {:>7.2f} {:>7.2f}", s.min, s.max, s.median, s.avg);
                }
            }
            out += row + "\n";
        }
    }
    return out;
}

nlohmann::json summary_to_json(std::span<const SummaryGroup> groups) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &g : groups) {
        nlohmann::json metrics = nlohmann::json::object();
        if (g.circuits > 0) {
            for (std::size_t m = 0; m < kMetricCount; ++m) {
                const Stats &s = g.stats[m];
                std::string criterion(criterion_name(m));
                std::transform(criterion.begin(), criterion.end(), criterion.begin(),
                               [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
                metrics[std::string(family_name(m))][criterion] = {
                    {"min", s.min}, {"max", s.max}, {"median", s.median}, {"avg", s.avg}};
            }
        }
        out.push_back({{"group", g.name}, {"circuits", g.circuits}, {"metrics", std::move(metrics)}});
    }
    return out;
}

}  // namespace qcover
