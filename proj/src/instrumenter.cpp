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

#include "qcover/instrumenter.hpp"

#include <fmt/format.h>

#include "qcover/qasm.hpp"

namespace qcover {

std::string condition_value_label(GateKind kind, std::uint32_t ordinal, std::uint32_t cx_index) {
    return fmt::format("{}_{}_cx_{}_value", gate_name(kind), ordinal, cx_index);
}

std::string condition_probability_label(GateKind kind, std::uint32_t ordinal, std::uint32_t cx_index) {
    return fmt::format("{}_{}_cx_{}_probability", gate_name(kind), ordinal, cx_index);
}

std::string decision_value_label(GateKind kind, std::uint32_t ordinal, std::uint32_t control_index) {
    return fmt::format("{}_{}_value_{}", gate_name(kind), ordinal, control_index);
}

std::string decision_probability_label(GateKind kind, std::uint32_t ordinal, std::uint32_t control_index) {
    return fmt::format("{}_{}_probability_{}", gate_name(kind), ordinal, control_index);
}

Circuit instrument(const TranspiledCircuit &transpiled) {
    const Circuit &src = transpiled.circuit;
    Circuit out(src.num_qubits(), src.num_clbits());

    std::map<InstructionId, const OriginGate *> origin_by_id;
    std::multimap<std::size_t, const OriginGate *> ending_at;
    for (const auto &origin : transpiled.origins) {
        origin_by_id[origin.id] = &origin;
        ending_at.emplace(origin.block_end, &origin);
    }

    for (std::size_t pos = 0; pos < src.size(); ++pos) {
        const auto &gate = std::get<GateInstruction>(src.instructions()[pos]);
        out.add_gate(gate);
        if (auto it = transpiled.cx_provenance.find(gate.id); it != transpiled.cx_provenance.end()) {
            const OriginGate &origin = *origin_by_id.at(it->second.origin_gate_id);
            const std::uint32_t j = it->second.cx_index;
            const ProbeProvenance prov{origin.id, ProbeLevel::Condition, j, std::nullopt};
            const Qubit control = gate.qubits.at(0);
            out.add_probe({ProbeMode::Expectation, control, condition_value_label(origin.kind, origin.ordinal, j), prov});
            out.add_probe(
                {ProbeMode::Probabilities, control, condition_probability_label(origin.kind, origin.ordinal, j), prov});
        }
        auto [first, last] = ending_at.equal_range(pos + 1);
        for (auto it = first; it != last; ++it) {
            const OriginGate &origin = *it->second;
            for (std::uint32_t k = 1; k <= origin.controls.size(); ++k) {
                const ProbeProvenance prov{origin.id, ProbeLevel::Decision, std::nullopt, k};
                const Qubit control = origin.controls[k - 1];
                out.add_probe(
                    {ProbeMode::Expectation, control, decision_value_label(origin.kind, origin.ordinal, k), prov});
                out.add_probe({ProbeMode::Probabilities, control,
                               decision_probability_label(origin.kind, origin.ordinal, k), prov});
            }
        }
    }
    return out;
}

std::string render_instrumented(const Circuit &instrumented) {
    const std::string text = qasm::serialize(instrumented.without_probes());
    std::vector<std::string> lines;
    for (std::size_t start = 0; start < text.size();) {
        const std::size_t end = text.find('\n', start);
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    const std::size_t header = lines.size() - instrumented.gate_count();

    std::string out;
    for (std::size_t i = 0; i < header; ++i) {
        out += lines[i] + "\n";
    }
    std::size_t next_line = header;
    for (const auto &inst : instrumented.instructions()) {
        if (const auto *probe = as_probe(inst)) {
            if (probe->mode == ProbeMode::Expectation) {
                out += fmt::format("// save_exp_value(z) q[{}] '{}'\n", probe->qubit, probe->label);
            } else {
                out += fmt::format("// save_prob q[{}] '{}'\n", probe->qubit, probe->label);
            }
        } else {
            out += lines[next_line++] + "\n";
        }
    }
    if (!instrumented.has_probes()) {
        out += "// fully sequential, coverage 100% by definition\n";
    }
    return out;
}

}  // namespace qcover
