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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace qcover {

enum class GateKind : std::uint8_t {
    // single-qubit primitives
    U,
    P,
    Id,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    RX,
    RY,
    RZ,
    // uncontrolled two-qubit
    Swap,
    // directives
    Measure,
    Barrier,
    // controlled kinds
    CX,
    CY,
    CZ,
    CH,
    CSX,
    CRZ,
    CRX,
    CRY,
    CU1,
    CU3,
    CP,
    CS,
    CSdg,
    CCX,
    RCCX,
    RCCCX,
    C3SX,
    CCZ,
    CU,
    CSwap,
    DCX,
    ECR,
};

/// Static metadata for one gate kind.
///
/// `num_qubits` is -1 for barrier, which accepts any number of operands.
/// `controlled` marks the 22 controlled kinds; `no_control` marks the two of
/// them (dcx, ecr) that have no computational-basis control qubit.
/// Control positions index into the operand list, not into the register.
struct GateInfo {
    GateKind kind;
    std::string_view name;
    int num_qubits;
    int num_params;
    bool controlled;
    bool no_control;
    std::uint8_t num_controls;
    std::uint8_t controls[3];

    std::span<const std::uint8_t> control_positions() const { return {controls, num_controls}; }
    bool has_control_qubits() const { return controlled && !no_control; }
    bool is_directive() const { return kind == GateKind::Measure || kind == GateKind::Barrier; }
};

const GateInfo &gate_info(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

std::span<const GateKind> all_gate_kinds();
/// The 22 controlled kinds, in the order Qiskit documents them.
std::span<const GateKind> controlled_gate_kinds();

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Defining unitary of a non-directive gate over its operands.
///
/// Little-endian: operand 0 is the least significant bit of the row/column
/// index. Conventions follow Qiskit, so phases of relative-phase gates (rccx,
/// rcccx) and of rotations are fixed, not merely up to global phase.
Matrix gate_unitary(GateKind kind, std::span<const double> params);

/// Max-norm distance between `a` and `b` after removing the best global phase.
/// Returns +infinity when the matrices are (numerically) orthogonal.
double phase_insensitive_distance(const Matrix &a, const Matrix &b);

}  // namespace qcover
