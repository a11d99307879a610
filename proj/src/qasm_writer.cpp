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

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qcover/qasm.hpp"

namespace qcover::qasm {

std::string format_angle(double radians) {
    if (radians == 0.0) {
        return "0";
    }
    constexpr int kDenominators[] = {1, 2, 3, 4, 6, 8, 12, 16, 32, 64};
    for (int den : kDenominators) {
        const double multiple = radians * den / std::numbers::pi;
        const double num = std::round(multiple);
        if (num == 0.0 || std::abs(num) > 64.0 * den) {
            continue;
        }
        const double rebuilt = num * std::numbers::pi / den;
        if (std::abs(rebuilt - radians) > 1e-15 * std::max(1.0, std::abs(radians))) {
            continue;
        }
        const long n = static_cast<long>(num);
        std::string out = n < 0 ? "-" : "";
        if (std::abs(n) != 1) {
            out += fmt::format("{}*", std::abs(n));
        }
        out += "pi";
        if (den != 1) {
            out += fmt::format("/{}", den);
        }
        return out;
    }
    return fmt::format("{}", radians);
}

std::string serialize(const Circuit &circuit) {
    if (circuit.has_probes()) {
        throw Error("probes not serializable: strip probes before emitting OpenQASM");
    }
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (circuit.num_qubits() > 0) {
        out += fmt::format("qreg q[{}];\n", circuit.num_qubits());
    }
    if (circuit.num_clbits() > 0) {
        out += fmt::format("creg c[{}];\n", circuit.num_clbits());
    }
    for (const auto &inst : circuit.instructions()) {
        const auto &g = std::get<GateInstruction>(inst);
        if (g.kind == GateKind::Measure) {
            out += fmt::format("measure q[{}] -> c[{}];\n", g.qubits.at(0), g.clbits.at(0));
            continue;
        }
        out += gate_name(g.kind);
        if (!g.params.empty()) {
            out += "(";
            for (std::size_t i = 0; i < g.params.size(); ++i) {
                out += (i == 0 ? "" : ",") + format_angle(g.params[i]);
            }
            out += ")";
        }
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            out += fmt::format("{}q[{}]", i == 0 ? " " : ",", g.qubits[i]);
        }
        out += ";\n";
    }
    return out;
}

}  // namespace qcover::qasm
