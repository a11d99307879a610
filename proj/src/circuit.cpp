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

#include "qcover/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "qcover/error.hpp"

namespace qcover {

namespace {

std::vector<std::string> gate_violations(const GateInstruction &gate, std::size_t num_qubits, std::size_t num_clbits) {
    std::vector<std::string> out;
    const GateInfo &info = gate_info(gate.kind);
    const std::string name(info.name);
    if (info.num_qubits >= 0 && gate.qubits.size() != static_cast<std::size_t>(info.num_qubits)) {
        out.push_back(name + ": arity mismatch (expected " + std::to_string(info.num_qubits) + " qubits, got " +
                      std::to_string(gate.qubits.size()) + ")");
    }
    if (info.num_qubits < 0 && gate.qubits.empty()) {
        out.push_back(name + ": needs at least one qubit");
    }
    if (gate.params.size() != static_cast<std::size_t>(info.num_params)) {
        out.push_back(name + ": param count (expected " + std::to_string(info.num_params) + ", got " +
                      std::to_string(gate.params.size()) + ")");
    }
    for (double p : gate.params) {
        if (!std::isfinite(p)) {
            out.push_back(name + ": non-finite parameter");
            break;
        }
    }
    for (Qubit q : gate.qubits) {
        if (q >= num_qubits) {
            out.push_back(name + ": qubit " + std::to_string(q) + " out of range");
        }
    }
    std::set<Qubit> seen(gate.qubits.begin(), gate.qubits.end());
    if (seen.size() != gate.qubits.size()) {
        out.push_back(name + ": duplicate operand");
    }
    const std::size_t expected_clbits = gate.kind == GateKind::Measure ? 1 : 0;
    if (gate.clbits.size() != expected_clbits) {
        out.push_back(name + ": clbit count (expected " + std::to_string(expected_clbits) + ")");
    }
    for (Clbit c : gate.clbits) {
        if (c >= num_clbits) {
            out.push_back(name + ": clbit " + std::to_string(c) + " out of range");
        }
    }
    return out;
}

void throw_if_invalid(const GateInstruction &gate, std::size_t num_qubits, std::size_t num_clbits) {
    auto problems = gate_violations(gate, num_qubits, num_clbits);
    if (!problems.empty()) {
        throw ValidationError(problems.front());
    }
}

}  // namespace

Circuit::Circuit(std::size_t num_qubits, std::size_t num_clbits) : num_qubits_(num_qubits), num_clbits_(num_clbits) {}

Circuit Circuit::from_instructions(std::size_t num_qubits, std::size_t num_clbits,
                                   std::vector<Instruction> instructions) {
    Circuit c(num_qubits, num_clbits);
    for (const auto &inst : instructions) {
        if (const auto *g = as_gate(inst)) {
            c.next_id_ = std::max(c.next_id_, g->id + 1);
        }
    }
    c.instructions_ = std::move(instructions);
    return c;
}

InstructionId Circuit::add_gate(GateKind kind, std::vector<Qubit> qubits, std::vector<double> params,
                                std::vector<Clbit> clbits) {
    GateInstruction gate{kind, std::move(params), std::move(qubits), std::move(clbits), next_id_};
    const InstructionId id = gate.id;
    add_gate(std::move(gate));
    return id;
}

void Circuit::add_gate(GateInstruction gate) {
    throw_if_invalid(gate, num_qubits_, num_clbits_);
    // every existing id is below next_id_, so only smaller ids need a search
    if (gate.id < next_id_ && find_gate(gate.id) != nullptr) {
        throw ValidationError("duplicate instruction id " + std::to_string(gate.id));
    }
    next_id_ = std::max(next_id_, gate.id + 1);
    instructions_.emplace_back(std::move(gate));
}

void Circuit::add_probe(Probe probe) {
    if (probe.qubit >= num_qubits_) {
        throw ValidationError("probe " + probe.label + ": qubit out of range");
    }
    instructions_.emplace_back(std::move(probe));
}

std::size_t Circuit::gate_count() const {
    return static_cast<std::size_t>(std::count_if(instructions_.begin(), instructions_.end(),
                                                  [](const Instruction &i) { return as_gate(i) != nullptr; }));
}

std::size_t Circuit::probe_count() const { return instructions_.size() - gate_count(); }

const GateInstruction *Circuit::find_gate(InstructionId id) const {
    for (const auto &inst : instructions_) {
        if (const auto *g = as_gate(inst); g != nullptr && g->id == id) {
            return g;
        }
    }
    return nullptr;
}

Circuit Circuit::without_probes() const {
    std::vector<Instruction> gates;
    gates.reserve(instructions_.size());
    for (const auto &inst : instructions_) {
        if (as_gate(inst) != nullptr) {
            gates.push_back(inst);
        }
    }
    Circuit out = from_instructions(num_qubits_, num_clbits_, std::move(gates));
    out.next_id_ = next_id_;
    return out;
}

Circuit Circuit::renumbered() const {
    std::vector<Instruction> copy = instructions_;
    InstructionId next = 0;
    for (auto &inst : copy) {
        if (auto *g = std::get_if<GateInstruction>(&inst)) {
            g->id = next++;
        }
    }
    return from_instructions(num_qubits_, num_clbits_, std::move(copy));
}

std::vector<Violation> validate(const Circuit &circuit) {
    std::vector<Violation> out;
    std::unordered_set<InstructionId> ids;
    std::unordered_set<std::string> labels;
    const auto &insts = circuit.instructions();
    for (std::size_t pos = 0; pos < insts.size(); ++pos) {
        if (const auto *g = as_gate(insts[pos])) {
            for (auto &msg : gate_violations(*g, circuit.num_qubits(), circuit.num_clbits())) {
                out.push_back({pos, std::move(msg)});
            }
            if (!ids.insert(g->id).second) {
                out.push_back({pos, "duplicate instruction id " + std::to_string(g->id)});
            }
        } else {
            const Probe &p = std::get<Probe>(insts[pos]);
            if (p.qubit >= circuit.num_qubits()) {
                out.push_back({pos, "probe " + p.label + ": qubit out of range"});
            }
            if (!labels.insert(p.label).second) {
                out.push_back({pos, "duplicate label " + p.label});
            }
            const auto &prov = p.provenance;
            const bool condition_ok = prov.cx_index.has_value() && *prov.cx_index >= 1 && !prov.control_index;
            const bool decision_ok = prov.control_index.has_value() && *prov.control_index >= 1 && !prov.cx_index;
            if ((prov.level == ProbeLevel::Condition && !condition_ok) ||
                (prov.level == ProbeLevel::Decision && !decision_ok)) {
                out.push_back({pos, "probe " + p.label + ": inconsistent provenance"});
            }
        }
    }
    return out;
}

std::vector<ControlledGate> controlled_gate_inventory(const Circuit &circuit) {
    std::vector<ControlledGate> out;
    for (const auto &inst : circuit.instructions()) {
        const auto *g = as_gate(inst);
        if (g == nullptr) {
            continue;
        }
        const GateInfo &info = gate_info(g->kind);
        if (!info.has_control_qubits()) {
            continue;
        }
        ControlledGate cg{g->id, g->kind, {}};
        for (auto pos : info.control_positions()) {
            cg.controls.push_back(g->qubits.at(pos));
        }
        out.push_back(std::move(cg));
    }
    return out;
}

bool structurally_equal(const Circuit &a, const Circuit &b, double tolerance) {
    if (a.num_qubits() != b.num_qubits() || a.num_clbits() != b.num_clbits() || a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto *ga = as_gate(a.instructions()[i]);
        const auto *gb = as_gate(b.instructions()[i]);
        if ((ga == nullptr) != (gb == nullptr)) {
            return false;
        }
        if (ga == nullptr) {
            if (!(*as_probe(a.instructions()[i]) == *as_probe(b.instructions()[i]))) {
                return false;
            }
            continue;
        }
        if (ga->kind != gb->kind || ga->qubits != gb->qubits || ga->clbits != gb->clbits ||
            ga->params.size() != gb->params.size()) {
            return false;
        }
        for (std::size_t p = 0; p < ga->params.size(); ++p) {
            if (std::abs(ga->params[p] - gb->params[p]) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qcover
