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

#include "qcover/gates.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qcover/error.hpp"

namespace qcover {

namespace {

using K = GateKind;

// clang-format off
constexpr std::array<GateInfo, 40> kGateTable{{
    {K::U,       "u",       1, 3, false, false, 0, {}},
    {K::P,       "p",       1, 1, false, false, 0, {}},
    {K::Id,      "id",      1, 0, false, false, 0, {}},
    {K::H,       "h",       1, 0, false, false, 0, {}},
    {K::X,       "x",       1, 0, false, false, 0, {}},
    {K::Y,       "y",       1, 0, false, false, 0, {}},
    {K::Z,       "z",       1, 0, false, false, 0, {}},
    {K::S,       "s",       1, 0, false, false, 0, {}},
    {K::Sdg,     "sdg",     1, 0, false, false, 0, {}},
    {K::T,       "t",       1, 0, false, false, 0, {}},
    {K::Tdg,     "tdg",     1, 0, false, false, 0, {}},
    {K::SX,      "sx",      1, 0, false, false, 0, {}},
    {K::RX,      "rx",      1, 1, false, false, 0, {}},
    {K::RY,      "ry",      1, 1, false, false, 0, {}},
    {K::RZ,      "rz",      1, 1, false, false, 0, {}},
    {K::Swap,    "swap",    2, 0, false, false, 0, {}},
    {K::Measure, "measure", 1, 0, false, false, 0, {}},
    {K::Barrier, "barrier", -1, 0, false, false, 0, {}},
    {K::CX,      "cx",      2, 0, true, false, 1, {0}},
    {K::CY,      "cy",      2, 0, true, false, 1, {0}},
    {K::CZ,      "cz",      2, 0, true, false, 1, {0}},
    {K::CH,      "ch",      2, 0, true, false, 1, {0}},
    {K::CSX,     "csx",     2, 0, true, false, 1, {0}},
    {K::CRZ,     "crz",     2, 1, true, false, 1, {0}},
    {K::CRX,     "crx",     2, 1, true, false, 1, {0}},
    {K::CRY,     "cry",     2, 1, true, false, 1, {0}},
    {K::CU1,     "cu1",     2, 1, true, false, 1, {0}},
    {K::CU3,     "cu3",     2, 3, true, false, 1, {0}},
    {K::CP,      "cp",      2, 1, true, false, 1, {0}},
    {K::CS,      "cs",      2, 0, true, false, 1, {0}},
    {K::CSdg,    "csdg",    2, 0, true, false, 1, {0}},
    {K::CCX,     "ccx",     3, 0, true, false, 2, {0, 1}},
    {K::RCCX,    "rccx",    3, 0, true, false, 2, {0, 1}},
    {K::RCCCX,   "rcccx",   4, 0, true, false, 3, {0, 1, 2}},
    {K::C3SX,    "c3sx",    4, 0, true, false, 3, {0, 1, 2}},
    {K::CCZ,     "ccz",     3, 0, true, false, 2, {0, 1}},
    {K::CU,      "cu",      2, 4, true, false, 1, {0}},
    {K::CSwap,   "cswap",   3, 0, true, false, 1, {0}},
    {K::DCX,     "dcx",     2, 0, true, true,  0, {}},
    {K::ECR,     "ecr",     2, 0, true, true,  0, {}},
}};
// clang-format on

constexpr std::array<GateKind, 40> kAllKinds = [] {
    std::array<GateKind, 40> out{};
    for (std::size_t i = 0; i < kGateTable.size(); ++i) {
        out[i] = kGateTable[i].kind;
    }
    return out;
}();

constexpr std::array<GateKind, 22> kControlledKinds{
    K::CX,  K::CY,  K::CZ,    K::CH,   K::CSX,  K::CRZ,  K::CRX,  K::CRY,   K::CU1, K::CU3, K::CP,
    K::CS,  K::CSdg, K::CCX,  K::RCCX, K::RCCCX, K::C3SX, K::CCZ, K::CU,    K::CSwap, K::DCX, K::ECR,
};

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

using Mat2 = Eigen::Matrix2cd;

Mat2 u_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Mat2 m;
    m << c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s, std::exp(kI * (phi + lambda)) * c;
    return m;
}

Mat2 phase_matrix(double lambda) {
    Mat2 m;
    m << 1, 0, 0, std::exp(kI * lambda);
    return m;
}

Mat2 rx_matrix(double theta) {
    Mat2 m;
    m << std::cos(theta / 2), -kI * std::sin(theta / 2), -kI * std::sin(theta / 2), std::cos(theta / 2);
    return m;
}

Mat2 ry_matrix(double theta) {
    Mat2 m;
    m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    return m;
}

Mat2 rz_matrix(double theta) {
    Mat2 m;
    m << std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2));
    return m;
}

Mat2 single_qubit(GateKind kind, std::span<const double> p) {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 m;
    switch (kind) {
    case K::U: return u_matrix(p[0], p[1], p[2]);
    case K::P: return phase_matrix(p[0]);
    case K::Id: return Mat2::Identity();
    case K::H: m << r, r, r, -r; return m;
    case K::X: m << 0, 1, 1, 0; return m;
    case K::Y: m << 0, -kI, kI, 0; return m;
    case K::Z: m << 1, 0, 0, -1; return m;
    case K::S: return phase_matrix(kPi / 2);
    case K::Sdg: return phase_matrix(-kPi / 2);
    case K::T: return phase_matrix(kPi / 4);
    case K::Tdg: return phase_matrix(-kPi / 4);
    case K::SX: m << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5); return m;
    case K::RX: return rx_matrix(p[0]);
    case K::RY: return ry_matrix(p[0]);
    case K::RZ: return rz_matrix(p[0]);
    default: break;
    }
    throw Error("not a single-qubit gate: " + std::string(gate_name(kind)));
}

// Applies `target_op` to the operand bits `targets` whenever every operand in
// `controls` is 1; identity otherwise.
Matrix controlled(int num_operands, std::initializer_list<int> controls, std::initializer_list<int> targets,
                  const Matrix &target_op) {
    const std::size_t dim = std::size_t{1} << num_operands;
    Matrix out = Matrix::Zero(dim, dim);
    std::size_t control_mask = 0;
    for (int c : controls) {
        control_mask |= std::size_t{1} << c;
    }
    for (std::size_t col = 0; col < dim; ++col) {
        if ((col & control_mask) != control_mask) {
            out(col, col) = 1;
            continue;
        }
        std::size_t in_sub = 0;
        int bit = 0;
        for (int t : targets) {
            in_sub |= ((col >> t) & 1U) << bit++;
        }
        for (std::size_t out_sub = 0; out_sub < static_cast<std::size_t>(target_op.rows()); ++out_sub) {
            std::size_t row = col;
            bit = 0;
            for (int t : targets) {
                row = (row & ~(std::size_t{1} << t)) | (((out_sub >> bit++) & 1U) << t);
            }
            out(row, col) += target_op(out_sub, in_sub);
        }
    }
    return out;
}

Matrix swap_matrix() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 1;
    m(1, 2) = m(2, 1) = 1;
    return m;
}

Matrix rccx_matrix() {
    Matrix m = Matrix::Identity(8, 8);
    m(3, 3) = 0;
    m(7, 7) = 0;
    m(7, 3) = kI;
    m(3, 7) = -kI;
    m(5, 5) = -1;
    return m;
}

Matrix rcccx_matrix() {
    Matrix m = Matrix::Identity(16, 16);
    m(3, 3) = kI;
    m(11, 11) = -kI;
    m(7, 7) = 0;
    m(15, 15) = 0;
    m(15, 7) = -1;
    m(7, 15) = 1;
    return m;
}

Matrix ecr_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix m(4, 4);
    m << 0, r, 0, kI * r,  //
        r, 0, -kI * r, 0,  //
        0, kI * r, 0, r,   //
        -kI * r, 0, r, 0;
    return m;
}

}  // namespace

const GateInfo &gate_info(GateKind kind) { return kGateTable.at(static_cast<std::size_t>(kind)); }

std::string_view gate_name(GateKind kind) { return gate_info(kind).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &info : kGateTable) {
        if (info.name == name) {
            return info.kind;
        }
    }
    return std::nullopt;
}

std::span<const GateKind> all_gate_kinds() { return kAllKinds; }

std::span<const GateKind> controlled_gate_kinds() { return kControlledKinds; }

Matrix gate_unitary(GateKind kind, std::span<const double> params) {
    const GateInfo &info = gate_info(kind);
    if (info.is_directive()) {
        throw Error("directive has no unitary: " + std::string(info.name));
    }
    if (static_cast<int>(params.size()) != info.num_params) {
        throw ValidationError("param count mismatch for " + std::string(info.name));
    }
    if (info.num_qubits == 1) {
        return single_qubit(kind, params);
    }
    const double pi = kPi;
    Mat2 x = single_qubit(K::X, {});
    switch (kind) {
    case K::Swap: return swap_matrix();
    case K::CX: return controlled(2, {0}, {1}, x);
    case K::CY: return controlled(2, {0}, {1}, single_qubit(K::Y, {}));
    case K::CZ: return controlled(2, {0}, {1}, single_qubit(K::Z, {}));
    case K::CH: return controlled(2, {0}, {1}, single_qubit(K::H, {}));
    case K::CSX: return controlled(2, {0}, {1}, single_qubit(K::SX, {}));
    case K::CRZ: return controlled(2, {0}, {1}, rz_matrix(params[0]));
    case K::CRX: return controlled(2, {0}, {1}, rx_matrix(params[0]));
    case K::CRY: return controlled(2, {0}, {1}, ry_matrix(params[0]));
    case K::CU1:
    case K::CP: return controlled(2, {0}, {1}, phase_matrix(params[0]));
    case K::CU3: return controlled(2, {0}, {1}, u_matrix(params[0], params[1], params[2]));
    case K::CS: return controlled(2, {0}, {1}, phase_matrix(pi / 2));
    case K::CSdg: return controlled(2, {0}, {1}, phase_matrix(-pi / 2));
    case K::CCX: return controlled(3, {0, 1}, {2}, x);
    case K::RCCX: return rccx_matrix();
    case K::RCCCX: return rcccx_matrix();
    case K::C3SX: return controlled(4, {0, 1, 2}, {3}, single_qubit(K::SX, {}));
    case K::CCZ: return controlled(3, {0, 1}, {2}, single_qubit(K::Z, {}));
    case K::CU: {
        Matrix target = std::exp(kI * params[3]) * u_matrix(params[0], params[1], params[2]);
        return controlled(2, {0}, {1}, target);
    }
    case K::CSwap: return controlled(3, {0}, {1, 2}, swap_matrix());
    case K::DCX: return controlled(2, {1}, {0}, x) * controlled(2, {0}, {1}, x);
    case K::ECR: return ecr_matrix();
    default: break;
    }
    throw Error("no unitary for " + std::string(info.name));
}

double phase_insensitive_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    const Complex overlap = (b.adjoint() * a).trace();
    if (std::abs(overlap) < 1e-12) {
        return std::numeric_limits<double>::infinity();
    }
    const Complex phase = overlap / std::abs(overlap);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qcover
