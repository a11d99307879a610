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

#include "qcover/mutation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "qcover/error.hpp"
#include "qcover/parallel.hpp"

namespace qcover {

namespace {

using K = GateKind;

constexpr std::array kClassA{K::H, K::X, K::Y, K::Z, K::S, K::Sdg, K::T, K::Tdg, K::SX, K::Id};
constexpr std::array kClassB{K::RX, K::RY, K::RZ, K::P};
constexpr std::array kClassC{K::CX, K::CY, K::CZ, K::CH, K::CSX};
constexpr std::array kClassD{K::CRX, K::CRY, K::CRZ, K::CP, K::CU1};

constexpr std::array kOperators{MutationOperator::QGR, MutationOperator::QGD, MutationOperator::QGI};

std::string describe_gate(const GateInstruction &g) {
    std::string out(gate_name(g.kind));
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
        out += fmt::format("{}q[{}]", i == 0 ? " " : ",", g.qubits[i]);
    }
    return out;
}

InstructionId next_free_id(const Circuit &circuit) {
    InstructionId next = 0;
    for (const auto &inst : circuit.instructions()) {
        if (const auto *g = as_gate(inst)) {
            next = std::max(next, g->id + 1);
        }
    }
    return next;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

std::string format_optional(const std::optional<double> &v) { return v ? fmt::format("{:.6f}", *v) : "null"; }

}  // namespace

std::string_view operator_name(MutationOperator op) {
    switch (op) {
        case MutationOperator::QGR:
            return "qgr";
        case MutationOperator::QGD:
            return "qgd";
        case MutationOperator::QGI:
            return "qgi";
    }
    return "?";
}

std::optional<MutationOperator> operator_from_name(std::string_view name) {
    for (auto op : kOperators) {
        if (operator_name(op) == name) {
            return op;
        }
    }
    return std::nullopt;
}

std::span<const MutationOperator> all_operators() { return kOperators; }

std::span<const GateKind> syntactic_class(GateKind kind) {
    for (std::span<const GateKind> cls :
         {std::span<const GateKind>(kClassA), std::span<const GateKind>(kClassB), std::span<const GateKind>(kClassC),
          std::span<const GateKind>(kClassD)}) {
        if (std::find(cls.begin(), cls.end(), kind) != cls.end()) {
            return cls;
        }
    }
    return {};
}

std::vector<Mutant> generate_mutants(const Circuit &circuit, std::span<const MutationOperator> operators,
                                     std::uint64_t seed, std::optional<std::size_t> budget) {
    if (circuit.has_probes()) {
        throw MutationError("cannot mutate a circuit that contains probes");
    }
    const auto &insts = circuit.instructions();
    const InstructionId fresh_id = next_free_id(circuit);
    std::vector<Mutant> out;
    auto emit = [&](MutationOperator op, InstructionId site, std::string detail, std::vector<Instruction> body) {
        out.push_back({out.size(), op, site, std::move(detail),
                       Circuit::from_instructions(circuit.num_qubits(), circuit.num_clbits(), std::move(body))});
    };
    auto wanted = [&](MutationOperator op) {
        return std::find(operators.begin(), operators.end(), op) != operators.end();
    };

    for (auto op : kOperators) {
        if (!wanted(op)) {
            continue;
        }
        for (std::size_t pos = 0; pos < insts.size(); ++pos) {
            const auto &gate = std::get<GateInstruction>(insts[pos]);
            if (gate_info(gate.kind).is_directive()) {
                continue;
            }
            switch (op) {
                case MutationOperator::QGD: {
                    std::vector<Instruction> body = insts;
                    body.erase(body.begin() + static_cast<std::ptrdiff_t>(pos));
                    emit(op, gate.id, "delete " + describe_gate(gate), std::move(body));
                    break;
                }
                case MutationOperator::QGR:
                    for (GateKind kind : syntactic_class(gate.kind)) {
                        if (kind == gate.kind) {
                            continue;
                        }
                        std::vector<Instruction> body = insts;
                        std::get<GateInstruction>(body[pos]).kind = kind;
                        emit(op, gate.id, fmt::format("replace {} with {}", describe_gate(gate), gate_name(kind)),
                             std::move(body));
                    }
                    break;
                case MutationOperator::QGI:
                    for (GateKind kind : syntactic_class(gate.kind)) {
                        GateInstruction inserted{kind, gate.params, gate.qubits, {}, fresh_id};
                        const std::string detail =
                            fmt::format("insert {} after {}", describe_gate(inserted), describe_gate(gate));
                        std::vector<Instruction> body = insts;
                        body.insert(body.begin() + static_cast<std::ptrdiff_t>(pos) + 1, std::move(inserted));
                        emit(op, gate.id, detail, std::move(body));
                    }
                    break;
            }
        }
    }

    if (budget && out.size() > *budget) {
        std::vector<std::size_t> all(out.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i] = i;
        }
        std::mt19937_64 rng(seed);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(*budget);
        std::sort(all.begin(), all.end());
        std::vector<Mutant> kept;
        kept.reserve(all.size());
        for (std::size_t i : all) {
            kept.push_back(std::move(out[i]));
        }
        out = std::move(kept);
    }
    return out;
}

std::string_view status_name(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::Killed:
            return "killed";
        case VerdictStatus::Survived:
            return "survived";
        case VerdictStatus::Timeout:
            return "timeout";
        case VerdictStatus::EngineError:
            return "error";
    }
    return "?";
}

Baseline measure_baseline(const Circuit &original, const JudgeOptions &options) {
    Baseline b;
    std::vector<double> times;
    for (int r = 0; r < std::max(1, options.repetitions); ++r) {
        const auto start = std::chrono::steady_clock::now();
        b.state = statevector_of(original, options.simulator);
        times.push_back(seconds_since(start));
    }
    b.seconds = median(std::move(times));
    return b;
}

MutantVerdict judge(const Baseline &baseline, const Mutant &mutant, const JudgeOptions &options) {
    MutantVerdict v;
    v.mutant_id = mutant.id;
    v.op = mutant.op;
    v.original_seconds = baseline.seconds;
    const double limit = std::max(options.timeout_factor * baseline.seconds, options.timeout_floor_seconds);
    const int reps = std::max(1, options.repetitions);
    // a run cut off at the limit counts as infinitely slow
    std::vector<double> times;
    int over = 0;
    Statevector state;
    try {
        for (int r = 0; r < reps && 2 * over <= reps; ++r) {
            SimulatorOptions sim = options.simulator;
            const auto start = std::chrono::steady_clock::now();
            sim.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                       std::chrono::duration<double>(limit));
            try {
                state = statevector_of(mutant.circuit, sim);
                const double t = seconds_since(start);
                times.push_back(t);
                over += t > limit ? 1 : 0;
            } catch (const TimeLimitExceeded &) {
                times.push_back(std::numeric_limits<double>::infinity());
                ++over;
            }
        }
    } catch (const std::exception &e) {
        v.status = VerdictStatus::EngineError;
        v.error = e.what();
        return v;
    }
    if (2 * over > reps) {
        v.status = VerdictStatus::Timeout;
        v.mutant_seconds = std::numeric_limits<double>::infinity();
        return v;
    }
    v.mutant_seconds = median(times);
    try {
        v.fidelity = fidelity(baseline.state, state);
    } catch (const std::exception &e) {
        v.status = VerdictStatus::EngineError;
        v.error = e.what();
        return v;
    }
    v.status = *v.fidelity >= 1.0 - options.tolerance ? VerdictStatus::Survived : VerdictStatus::Killed;
    return v;
}

MutantVerdict judge(const Circuit &original, const Mutant &mutant, const JudgeOptions &options) {
    return judge(measure_baseline(original, options), mutant, options);
}

void VerdictCounts::add(VerdictStatus status) {
    ++mutants;
    switch (status) {
        case VerdictStatus::Killed:
            ++killed;
            break;
        case VerdictStatus::Survived:
            ++survived;
            break;
        case VerdictStatus::Timeout:
            ++timeout;
            break;
        case VerdictStatus::EngineError:
            ++errors;
            break;
    }
}

std::optional<double> VerdictCounts::score() const {
    const std::size_t judged = killed + survived + timeout;
    if (judged == 0) {
        return std::nullopt;
    }
    return static_cast<double>(killed) / static_cast<double>(judged);
}

double mutation_score(std::size_t killed, std::size_t survived, std::size_t timeout) {
    const std::size_t judged = killed + survived + timeout;
    if (judged == 0) {
        throw MutationError("mutation score of an empty verdict list");
    }
    return static_cast<double>(killed) / static_cast<double>(judged);
}

double mutation_score(std::span<const MutantVerdict> verdicts) {
    VerdictCounts counts;
    for (const auto &v : verdicts) {
        counts.add(v.status);
    }
    return mutation_score(counts.killed, counts.survived, counts.timeout);
}

CampaignResult campaign(const Circuit &circuit, std::string name, const CampaignOptions &options,
                        std::optional<CoverageReport> coverage) {
    CampaignResult result;
    result.circuit = std::move(name);
    result.qubits = circuit.num_qubits();
    result.coverage = std::move(coverage);
    for (auto op : kOperators) {
        if (std::find(options.operators.begin(), options.operators.end(), op) != options.operators.end()) {
            result.operators.push_back(op);
            result.per_operator[op] = {};
        }
    }
    result.mutants = generate_mutants(circuit, result.operators, options.seed, options.budget);
    result.verdicts.resize(result.mutants.size());
    if (!result.mutants.empty()) {
        std::optional<Baseline> baseline;
        std::string baseline_error;
        try {
            baseline = measure_baseline(circuit, options.judge);
        } catch (const std::exception &e) {
            baseline_error = e.what();
        }
        parallel_for(result.mutants.size(), options.jobs, [&](std::size_t i) {
            const Mutant &m = result.mutants[i];
            if (baseline) {
                result.verdicts[i] = judge(*baseline, m, options.judge);
            } else {
                result.verdicts[i] = {m.id, m.op, VerdictStatus::EngineError, std::nullopt, 0.0, 0.0, baseline_error};
            }
        });
    }
    for (const auto &v : result.verdicts) {
        result.per_operator[v.op].add(v.status);
        result.total.add(v.status);
    }
    return result;
}

std::string csv_header() {
    return "circuit,qubits,operator,mutants,killed,survived,timeout,score,condition_cov,decision_cov,path_cov,"
           "prob_condition,prob_decision,prob_path\n";
}

std::string csv_rows(const CampaignResult &result) {
    std::string coverage_cols;
    if (result.coverage) {
        const auto &c = *result.coverage;
        coverage_cols = fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}", c.coverage.condition,
                                    c.coverage.decision, c.coverage.path, c.probabilistic.condition,
                                    c.probabilistic.decision, c.probabilistic.path);
    } else {
        coverage_cols = "null,null,null,null,null,null";
    }
    std::string name = result.circuit;
    if (name.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : name) {
            quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        }
        name = quoted + "\"";
    }
    auto row = [&](std::string_view op, const VerdictCounts &c) {
        return fmt::format("{},{},{},{},{},{},{},{},{}\n", name, result.qubits, op, c.mutants, c.killed, c.survived,
                           c.timeout, format_optional(c.score()), coverage_cols);
    };
    std::string out;
    for (auto op : result.operators) {
        out += row(operator_name(op), result.per_operator.at(op));
    }
    out += row("all", result.total);
    return out;
}

}  // namespace qcover
