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
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcover/circuit.hpp"

namespace qcover {

/// Affine expression over the original gate's parameters:
/// `constant + sum_i coeff[i] * params[i]`.
struct AngleExpr {
    double constant{0.0};
    std::array<double, 4> coeff{};

    double evaluate(std::span<const double> params) const;

    static AngleExpr constant_of(double value) { return {value, {}}; }
    /// `scale * params[index] + offset`
    static AngleExpr param(std::size_t index, double scale = 1.0, double offset = 0.0);
};

/// One primitive application inside a decomposition template. Operands are
/// positions in the original gate's operand list.
struct TemplateOp {
    GateKind kind;
    std::vector<std::uint8_t> operands;
    std::vector<AngleExpr> params;
};

struct DecompositionRule {
    GateKind kind;
    std::vector<TemplateOp> ops;

    std::size_t cx_count() const;
};

/// Composite unitary of `rule` for the given original parameters, over the
/// original gate's operands (little-endian).
Matrix rule_unitary(const DecompositionRule &rule, std::span<const double> params);

/// Registry of decomposition rules keyed by gate kind.
class RuleRegistry {
  public:
    /// Checks the rule and adds it. Throws TranspileError on a duplicate
    /// kind, a malformed template, or when the template's unitary differs from
    /// the kind's defining unitary by more than 1e-10 (max-norm, up to global
    /// phase) at canonical parameter values.
    void register_rule(DecompositionRule rule);

    const DecompositionRule *find(GateKind kind) const;
    std::size_t size() const { return rules_.size(); }
    std::vector<GateKind> kinds() const;

    /// Registry preloaded with a rule for each of the 22 controlled kinds.
    static RuleRegistry with_standard_rules();
    /// Shared immutable instance of `with_standard_rules()`.
    static const RuleRegistry &standard();

  private:
    std::map<GateKind, DecompositionRule> rules_;
};

/// The rule set behind `RuleRegistry::standard()`.
std::vector<DecompositionRule> standard_decomposition_rules();

/// Canonical parameter values used for eager rule checks.
std::vector<double> canonical_params(GateKind kind);

struct CxProvenance {
    InstructionId origin_gate_id;
    std::uint32_t cx_index;  // 1-based ordinal j within C(g')

    bool operator==(const CxProvenance &) const = default;
};

/// One member of G(Q) together with its expansion.
struct OriginGate {
    InstructionId id;
    GateKind kind;
    std::uint32_t ordinal;  // 1-based among origin gates of the same kind
    std::vector<Qubit> controls;
    std::vector<InstructionId> cx_ids;  // C(g') in program order
    std::size_t block_end;              // position just past the expansion

    bool operator==(const OriginGate &) const = default;
};

struct TranspiledCircuit {
    Circuit circuit;
    std::map<InstructionId, CxProvenance> cx_provenance;
    std::map<InstructionId, std::vector<Qubit>> origin_controls;
    std::map<InstructionId, std::size_t> block_end;
    std::vector<OriginGate> origins;  // program order
};

/// Replaces every controlled gate by its rule expansion.
///
/// Gates with a control qubit become origin gates: their emitted cx are
/// recorded in `cx_provenance`. Expansions of dcx/ecr are emitted without
/// provenance. Every other instruction passes through unchanged. Output ids
/// are dense in output order. No optimization is applied.
TranspiledCircuit transpile(const Circuit &circuit, const RuleRegistry &rules = RuleRegistry::standard());

/// Serialized transpiled circuit followed by a provenance table.
std::string dump_provenance(const TranspiledCircuit &transpiled);

}  // namespace qcover
