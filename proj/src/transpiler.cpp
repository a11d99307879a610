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

#include "qcover/transpiler.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "qcover/error.hpp"
#include "qcover/qasm.hpp"

namespace qcover {

namespace {

constexpr double kEquivalenceTolerance = 1e-10;

bool is_template_primitive(GateKind kind) {
    return kind == GateKind::U || kind == GateKind::P || kind == GateKind::CX || kind == GateKind::Id;
}

// Lifts `local`, acting on `operands` (little-endian), to a `num_operands` space.
Matrix embed(const Matrix &local, std::span<const std::uint8_t> operands, int num_operands) {
    const std::size_t dim = std::size_t{1} << num_operands;
    const std::size_t local_dim = static_cast<std::size_t>(local.rows());
    Matrix out = Matrix::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t in_sub = 0;
        for (std::size_t b = 0; b < operands.size(); ++b) {
            in_sub |= ((col >> operands[b]) & 1U) << b;
        }
        for (std::size_t out_sub = 0; out_sub < local_dim; ++out_sub) {
            std::size_t row = col;
            for (std::size_t b = 0; b < operands.size(); ++b) {
                row = (row & ~(std::size_t{1} << operands[b])) | (((out_sub >> b) & 1U) << operands[b]);
            }
            out(row, col) += local(out_sub, in_sub);
        }
    }
    return out;
}

std::vector<double> evaluate_params(const TemplateOp &op, std::span<const double> params) {
    std::vector<double> out;
    out.reserve(op.params.size());
    for (const auto &expr : op.params) {
        out.push_back(expr.evaluate(params));
    }
    return out;
}

}  // namespace

double AngleExpr::evaluate(std::span<const double> params) const {
    double value = constant;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        if (coeff[i] != 0.0) {
            value += coeff[i] * params[i];
        }
    }
    return value;
}

AngleExpr AngleExpr::param(std::size_t index, double scale, double offset) {
    AngleExpr e{offset, {}};
    e.coeff.at(index) = scale;
    return e;
}

std::size_t DecompositionRule::cx_count() const {
    return static_cast<std::size_t>(
        std::count_if(ops.begin(), ops.end(), [](const TemplateOp &op) { return op.kind == GateKind::CX; }));
}

Matrix rule_unitary(const DecompositionRule &rule, std::span<const double> params) {
    const int n = gate_info(rule.kind).num_qubits;
    Matrix total = Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
    for (const auto &op : rule.ops) {
        const auto values = evaluate_params(op, params);
        total = embed(gate_unitary(op.kind, values), op.operands, n) * total;
    }
    return total;
}

std::vector<double> canonical_params(GateKind kind) {
    static constexpr double kValues[] = {0.7, -1.3, 2.1, 0.4};
    const int count = gate_info(kind).num_params;
    return {kValues, kValues + count};
}

void RuleRegistry::register_rule(DecompositionRule rule) {
    const GateInfo &info = gate_info(rule.kind);
    const std::string name(info.name);
    if (rules_.count(rule.kind) != 0U) {
        throw TranspileError("duplicate decomposition rule for kind " + name);
    }
    if (!info.controlled) {
        throw TranspileError("decomposition rules are only accepted for controlled kinds, not " + name);
    }
    if (rule.ops.empty()) {
        throw TranspileError("empty template for " + name);
    }
    for (const auto &op : rule.ops) {
        const GateInfo &op_info = gate_info(op.kind);
        if (!is_template_primitive(op.kind)) {
            throw TranspileError("template for " + name + " uses non-primitive gate " + std::string(op_info.name));
        }
        if (op.operands.size() != static_cast<std::size_t>(op_info.num_qubits) ||
            op.params.size() != static_cast<std::size_t>(op_info.num_params)) {
            throw TranspileError("template for " + name + " has a malformed " + std::string(op_info.name));
        }
        for (std::size_t i = 0; i < op.operands.size(); ++i) {
            if (op.operands[i] >= info.num_qubits) {
                throw TranspileError("template for " + name + " references undefined operand role");
            }
            for (std::size_t j = i + 1; j < op.operands.size(); ++j) {
                if (op.operands[i] == op.operands[j]) {
                    throw TranspileError("template for " + name + " repeats an operand");
                }
            }
        }
        for (const auto &expr : op.params) {
            for (std::size_t i = static_cast<std::size_t>(info.num_params); i < expr.coeff.size(); ++i) {
                if (expr.coeff[i] != 0.0) {
                    throw TranspileError("template for " + name + " references undefined parameter");
                }
            }
        }
    }
    const auto params = canonical_params(rule.kind);
    const double distance = phase_insensitive_distance(rule_unitary(rule, params), gate_unitary(rule.kind, params));
    if (!(distance <= kEquivalenceTolerance)) {
        throw TranspileError(fmt::format("template for {} is not equivalent to its defining unitary (max deviation {:.3g})",
                                         name, distance));
    }
    rules_.emplace(rule.kind, std::move(rule));
}

const DecompositionRule *RuleRegistry::find(GateKind kind) const {
    auto it = rules_.find(kind);
    return it == rules_.end() ? nullptr : &it->second;
}

std::vector<GateKind> RuleRegistry::kinds() const {
    std::vector<GateKind> out;
    for (const auto &[kind, rule] : rules_) {
        out.push_back(kind);
    }
    return out;
}

RuleRegistry RuleRegistry::with_standard_rules() {
    RuleRegistry registry;
    for (auto &rule : standard_decomposition_rules()) {
        registry.register_rule(std::move(rule));
    }
    return registry;
}

const RuleRegistry &RuleRegistry::standard() {
    static const RuleRegistry registry = with_standard_rules();
    return registry;
}

TranspiledCircuit transpile(const Circuit &circuit, const RuleRegistry &rules) {
    if (circuit.has_probes()) {
        throw TranspileError("cannot transpile a circuit that already contains probes");
    }
    TranspiledCircuit out;
    out.circuit = Circuit(circuit.num_qubits(), circuit.num_clbits());
    std::map<GateKind, std::uint32_t> ordinals;
    InstructionId next_id = 0;

    auto emit = [&](GateKind kind, std::vector<Qubit> qubits, std::vector<double> params, std::vector<Clbit> clbits) {
        GateInstruction g{kind, std::move(params), std::move(qubits), std::move(clbits), next_id++};
        out.circuit.add_gate(std::move(g));
        return next_id - 1;
    };

    for (const auto &inst : circuit.instructions()) {
        const auto &gate = std::get<GateInstruction>(inst);
        const GateInfo &info = gate_info(gate.kind);
        if (!info.controlled) {
            emit(gate.kind, gate.qubits, gate.params, gate.clbits);
            continue;
        }
        const DecompositionRule *rule = rules.find(gate.kind);
        if (rule == nullptr) {
            throw TranspileError("missing decomposition rule for " + std::string(info.name));
        }
        OriginGate origin{gate.id, gate.kind, 0, {}, {}, 0};
        const bool tracked = info.has_control_qubits();
        if (tracked) {
            origin.ordinal = ++ordinals[gate.kind];
            for (auto pos : info.control_positions()) {
                origin.controls.push_back(gate.qubits.at(pos));
            }
        }
        for (const auto &op : rule->ops) {
            std::vector<Qubit> qubits;
            qubits.reserve(op.operands.size());
            for (auto role : op.operands) {
                qubits.push_back(gate.qubits.at(role));
            }
            const InstructionId id = emit(op.kind, std::move(qubits), evaluate_params(op, gate.params), {});
            if (tracked && op.kind == GateKind::CX) {
                origin.cx_ids.push_back(id);
                out.cx_provenance[id] = CxProvenance{gate.id, static_cast<std::uint32_t>(origin.cx_ids.size())};
            }
        }
        if (tracked) {
            origin.block_end = out.circuit.size();
            out.origin_controls[gate.id] = origin.controls;
            out.block_end[gate.id] = origin.block_end;
            out.origins.push_back(std::move(origin));
        }
    }
    return out;
}

std::string dump_provenance(const TranspiledCircuit &transpiled) {
    std::string out = qasm::serialize(transpiled.circuit);
    out += "// provenance: origin_id kind ordinal controls cx_index instruction_id position\n";
    std::map<InstructionId, std::size_t> position;
    for (std::size_t i = 0; i < transpiled.circuit.size(); ++i) {
        if (const auto *g = as_gate(transpiled.circuit.instructions()[i])) {
            position[g->id] = i;
        }
    }
    for (const auto &origin : transpiled.origins) {
        std::string controls;
        for (std::size_t k = 0; k < origin.controls.size(); ++k) {
            controls += fmt::format("{}{}", k == 0 ? "" : ",", origin.controls[k]);
        }
        for (std::size_t j = 0; j < origin.cx_ids.size(); ++j) {
            out += fmt::format("// {} {} {} [{}] {} {} {}\n", origin.id, gate_name(origin.kind), origin.ordinal,
                               controls, j + 1, origin.cx_ids[j], position.at(origin.cx_ids[j]));
        }
    }
    return out;
}

}  // namespace qcover
