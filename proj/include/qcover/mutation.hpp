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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcover/circuit.hpp"
#include "qcover/coverage.hpp"
#include "qcover/statevector.hpp"

namespace qcover {

enum class MutationOperator : std::uint8_t { QGR, QGD, QGI };

std::string_view operator_name(MutationOperator op);  // "qgr", "qgd", "qgi"
std::optional<MutationOperator> operator_from_name(std::string_view name);
std::span<const MutationOperator> all_operators();

/// Kinds a gate may be replaced by or paired with: same arity, parameter
/// count and control structure. Empty for kinds outside every class.
std::span<const GateKind> syntactic_class(GateKind kind);

struct Mutant {
    std::size_t id;
    MutationOperator op;
    InstructionId site;
    std::string detail;
    Circuit circuit;
};

/// Enumerates mutants in canonical order (operator qgr, qgd, qgi; then site;
/// then class order). Measurements and barriers are never mutation sites. With
/// a budget, a seeded uniform subset of that size is kept in canonical order.
std::vector<Mutant> generate_mutants(const Circuit &circuit, std::span<const MutationOperator> operators,
                                     std::uint64_t seed = 0, std::optional<std::size_t> budget = std::nullopt);

enum class VerdictStatus : std::uint8_t { Killed, Survived, Timeout, EngineError };
std::string_view status_name(VerdictStatus status);

struct MutantVerdict {
    std::size_t mutant_id{0};
    MutationOperator op{MutationOperator::QGR};
    VerdictStatus status{VerdictStatus::Killed};
    std::optional<double> fidelity;
    double original_seconds{0.0};
    double mutant_seconds{0.0};
    std::string error;
};

struct JudgeOptions {
    double tolerance{1e-8};
    double timeout_factor{1.10};
    /// Runtimes below this never count as a timeout; keeps millisecond-scale
    /// runs deterministic.
    double timeout_floor_seconds{0.05};
    int repetitions{3};
    SimulatorOptions simulator;
};

/// Reference state and median runtime of an original circuit.
struct Baseline {
    Statevector state;
    double seconds{0.0};
};

Baseline measure_baseline(const Circuit &original, const JudgeOptions &options = {});
MutantVerdict judge(const Baseline &baseline, const Mutant &mutant, const JudgeOptions &options = {});
MutantVerdict judge(const Circuit &original, const Mutant &mutant, const JudgeOptions &options = {});

struct VerdictCounts {
    std::size_t mutants{0};
    std::size_t killed{0};
    std::size_t survived{0};
    std::size_t timeout{0};
    std::size_t errors{0};

    void add(VerdictStatus status);
    /// killed / (killed + survived + timeout); empty when nothing was judged.
    std::optional<double> score() const;
};

/// Throws MutationError when no verdict counts toward the score.
double mutation_score(std::size_t killed, std::size_t survived, std::size_t timeout);
double mutation_score(std::span<const MutantVerdict> verdicts);

struct CampaignOptions {
    std::vector<MutationOperator> operators{MutationOperator::QGR, MutationOperator::QGD, MutationOperator::QGI};
    std::uint64_t seed{0};
    std::optional<std::size_t> budget;
    std::size_t jobs{1};
    JudgeOptions judge;
};

struct CampaignResult {
    std::string circuit;
    std::size_t qubits{0};
    std::vector<MutationOperator> operators;
    std::vector<Mutant> mutants;
    std::vector<MutantVerdict> verdicts;  // ordered by mutant id
    std::map<MutationOperator, VerdictCounts> per_operator;
    VerdictCounts total;
    std::optional<CoverageReport> coverage;
};

/// Judges every mutant of `circuit`. Engine errors are recorded per mutant.
CampaignResult campaign(const Circuit &circuit, std::string name, const CampaignOptions &options,
                        std::optional<CoverageReport> coverage = std::nullopt);

std::string csv_header();
/// One row per requested operator followed by an "all" row.
std::string csv_rows(const CampaignResult &result);

}  // namespace qcover
