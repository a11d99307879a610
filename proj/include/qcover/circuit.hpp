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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcover/gates.hpp"

namespace qcover {

using InstructionId = std::uint32_t;
using Qubit = std::uint32_t;
using Clbit = std::uint32_t;

/// One gate application, measurement or barrier.
struct GateInstruction {
    GateKind kind{GateKind::Id};
    std::vector<double> params;
    std::vector<Qubit> qubits;
    std::vector<Clbit> clbits;
    InstructionId id{0};

    bool operator==(const GateInstruction &) const = default;
};

enum class ProbeMode : std::uint8_t { Expectation, Probabilities };
enum class ProbeLevel : std::uint8_t { Condition, Decision };

/// Links a probe back to the original controlled gate it observes.
///
/// Condition probes carry the 1-based ordinal of the decomposed cx inside the
/// gate's expansion; decision probes carry the 1-based ordinal of the control
/// qubit inside the gate's control list.
struct ProbeProvenance {
    InstructionId origin_gate_id{0};
    ProbeLevel level{ProbeLevel::Condition};
    std::optional<std::uint32_t> cx_index;
    std::optional<std::uint32_t> control_index;

    bool operator==(const ProbeProvenance &) const = default;
};

/// Non-collapsing simulator directive recording <Z> or the Z-basis marginal of
/// one qubit.
struct Probe {
    ProbeMode mode{ProbeMode::Expectation};
    Qubit qubit{0};
    std::string label;
    ProbeProvenance provenance;

    bool operator==(const Probe &) const = default;
};

using Instruction = std::variant<GateInstruction, Probe>;

/// A controlled gate with at least one computational-basis control: a member
/// of G(Q).
struct ControlledGate {
    InstructionId id;
    GateKind kind;
    std::vector<Qubit> controls;

    bool operator==(const ControlledGate &) const = default;
};

struct Violation {
    std::size_t position;  // index into Circuit::instructions()
    std::string message;
};

/// Ordered instruction list over flat qubit and classical-bit index spaces.
///
/// `add_gate` rejects malformed instructions; `from_instructions` accepts
/// anything and leaves checking to `validate`.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t num_qubits, std::size_t num_clbits = 0);

    static Circuit from_instructions(std::size_t num_qubits, std::size_t num_clbits,
                                     std::vector<Instruction> instructions);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_clbits() const { return num_clbits_; }
    const std::vector<Instruction> &instructions() const { return instructions_; }
    std::size_t size() const { return instructions_.size(); }
    bool empty() const { return instructions_.empty(); }

    /// Appends a gate with the next dense id. Throws ValidationError.
    InstructionId add_gate(GateKind kind, std::vector<Qubit> qubits, std::vector<double> params = {},
                           std::vector<Clbit> clbits = {});
    /// Appends a gate keeping its id. Throws ValidationError.
    void add_gate(GateInstruction gate);
    void add_probe(Probe probe);

    std::size_t gate_count() const;
    std::size_t probe_count() const;
    bool has_probes() const { return probe_count() > 0; }
    const GateInstruction *find_gate(InstructionId id) const;

    Circuit without_probes() const;
    /// Copy with gate ids renumbered densely in program order.
    Circuit renumbered() const;

    bool operator==(const Circuit &) const = default;

  private:
    std::size_t num_qubits_{0};
    std::size_t num_clbits_{0};
    std::vector<Instruction> instructions_;
    InstructionId next_id_{0};
};

/// Checks every IR invariant. An empty result means the circuit is valid.
std::vector<Violation> validate(const Circuit &circuit);

/// G(Q): controlled gates with a control qubit, in program order.
std::vector<ControlledGate> controlled_gate_inventory(const Circuit &circuit);

/// Equal kinds, operands and clbits; params compared within `tolerance`.
/// Probes must match exactly. Ids are ignored.
bool structurally_equal(const Circuit &a, const Circuit &b, double tolerance = 1e-12);

inline const GateInstruction *as_gate(const Instruction &inst) { return std::get_if<GateInstruction>(&inst); }
inline const Probe *as_probe(const Instruction &inst) { return std::get_if<Probe>(&inst); }

}  // namespace qcover
