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

// Decomposition templates for the 22 controlled kinds into {u, p, cx}.
//
// The cswap template reproduces Qiskit 2.1's optimization-level-0 output
// gate-by-gate. Its first target rotation is u(pi/2, 0, a) followed later by
// u(pi/2 - a, -3pi/4, pi/2); any `a` yields cswap, and a = 0.1 matches Qiskit's
// rounded output angles 0.10 and 1.47. The remaining templates are the textbook
// Qiskit definitions flattened to primitives.

#include <numbers>

#include "qcover/transpiler.hpp"

namespace qcover {

namespace {

constexpr double kPi = std::numbers::pi;

using A = AngleExpr;

A c(double v) { return A::constant_of(v); }

TemplateOp u(A theta, A phi, A lambda, std::uint8_t q) { return {GateKind::U, {q}, {theta, phi, lambda}}; }
TemplateOp p(A lambda, std::uint8_t q) { return {GateKind::P, {q}, {lambda}}; }
TemplateOp cx(std::uint8_t control, std::uint8_t target) { return {GateKind::CX, {control, target}, {}}; }
TemplateOp h(std::uint8_t q) { return u(c(kPi / 2), c(0), c(kPi), q); }

using Ops = std::vector<TemplateOp>;

void append(Ops &dst, const Ops &src) { dst.insert(dst.end(), src.begin(), src.end()); }

// controlled phase by `lambda` (an expression) on (control, target)
Ops cphase(A lambda, std::uint8_t control, std::uint8_t target) {
    A half = lambda;
    half.constant /= 2;
    for (auto &k : half.coeff) {
        k /= 2;
    }
    A neg_half = half;
    neg_half.constant = -neg_half.constant;
    for (auto &k : neg_half.coeff) {
        k = -k;
    }
    return {p(half, control), cx(control, target), p(neg_half, target), cx(control, target), p(half, target)};
}

Ops ccx_ops(std::uint8_t a, std::uint8_t b, std::uint8_t t) {
    return {h(t),
            cx(b, t),
            p(c(-kPi / 4), t),
            cx(a, t),
            p(c(kPi / 4), t),
            cx(b, t),
            p(c(-kPi / 4), t),
            cx(a, t),
            p(c(kPi / 4), b),
            p(c(kPi / 4), t),
            h(t),
            cx(a, b),
            p(c(kPi / 4), a),
            p(c(-kPi / 4), b),
            cx(a, b)};
}

Ops cu3_ops(const A &theta_half, const A &neg_theta_half, const A &phi, const A &sum_half, const A &diff_half,
            const A &neg_sum_half) {
    return {p(sum_half, 0),
            p(diff_half, 1),
            cx(0, 1),
            u(neg_theta_half, c(0), neg_sum_half, 1),
            cx(0, 1),
            u(theta_half, phi, c(0), 1)};
}

// (lambda + phi) / 2 style combinations over params (theta=0, phi=1, lambda=2)
A combo(double k_phi, double k_lambda) {
    A e;
    e.coeff[1] = k_phi;
    e.coeff[2] = k_lambda;
    return e;
}

Ops cu3_from_params() {
    return cu3_ops(A::param(0, 0.5), A::param(0, -0.5), A::param(1), combo(0.5, 0.5), combo(-0.5, 0.5),
                   combo(-0.5, -0.5));
}

Ops c3sx_ops() {
    constexpr std::uint8_t t = 3;
    Ops ops;
    auto step = [&](double angle, std::uint8_t control) {
        ops.push_back(h(t));
        append(ops, cphase(c(angle), control, t));
        ops.push_back(h(t));
    };
    step(kPi / 8, 0);
    ops.push_back(cx(0, 1));
    step(-kPi / 8, 1);
    ops.push_back(cx(0, 1));
    step(kPi / 8, 1);
    ops.push_back(cx(1, 2));
    step(-kPi / 8, 2);
    ops.push_back(cx(0, 2));
    step(kPi / 8, 2);
    ops.push_back(cx(1, 2));
    step(-kPi / 8, 2);
    ops.push_back(cx(0, 2));
    step(kPi / 8, 2);
    return ops;
}

Ops rcccx_ops() {
    const auto u2 = [](std::uint8_t q) { return h(q); };  // u2(0, pi) == h
    return {u2(3),          p(c(kPi / 4), 3), cx(2, 3), p(c(-kPi / 4), 3), u2(3),
            cx(0, 3),       p(c(kPi / 4), 3), cx(1, 3), p(c(-kPi / 4), 3), cx(0, 3),
            p(c(kPi / 4), 3), cx(1, 3),       p(c(-kPi / 4), 3), u2(3),    p(c(kPi / 4), 3),
            cx(2, 3),       p(c(-kPi / 4), 3), u2(3)};
}

Ops rzx_ops(double theta) { return {h(1), cx(0, 1), p(c(theta), 1), cx(0, 1), h(1)}; }

}  // namespace

std::vector<DecompositionRule> standard_decomposition_rules() {
    std::vector<DecompositionRule> rules;
    auto add = [&](GateKind kind, Ops ops) { rules.push_back({kind, std::move(ops)}); };

    add(GateKind::CX, {cx(0, 1)});
    add(GateKind::CY, {p(c(-kPi / 2), 1), cx(0, 1), p(c(kPi / 2), 1)});
    add(GateKind::CZ, {h(1), cx(0, 1), h(1)});
    add(GateKind::CH, {p(c(kPi / 2), 1), h(1), p(c(kPi / 4), 1), cx(0, 1), p(c(-kPi / 4), 1), h(1),
                       p(c(-kPi / 2), 1)});
    {
        Ops ops{h(1)};
        append(ops, cphase(c(kPi / 2), 0, 1));
        ops.push_back(h(1));
        add(GateKind::CSX, std::move(ops));
    }
    add(GateKind::CRZ, {p(A::param(0, 0.5), 1), cx(0, 1), p(A::param(0, -0.5), 1), cx(0, 1)});
    add(GateKind::CRX, {p(c(kPi / 2), 1), cx(0, 1), u(A::param(0, -0.5), c(0), c(0), 1), cx(0, 1),
                        u(A::param(0, 0.5), c(-kPi / 2), c(0), 1)});
    add(GateKind::CRY, {u(A::param(0, 0.5), c(0), c(0), 1), cx(0, 1), u(A::param(0, -0.5), c(0), c(0), 1), cx(0, 1)});
    add(GateKind::CU1, cphase(A::param(0), 0, 1));
    add(GateKind::CU3, cu3_from_params());
    add(GateKind::CP, cphase(A::param(0), 0, 1));
    add(GateKind::CS, cphase(c(kPi / 2), 0, 1));
    add(GateKind::CSdg, cphase(c(-kPi / 2), 0, 1));
    add(GateKind::CCX, ccx_ops(0, 1, 2));
    add(GateKind::RCCX, {h(2), p(c(kPi / 4), 2), cx(1, 2), p(c(-kPi / 4), 2), cx(0, 2), p(c(kPi / 4), 2), cx(1, 2),
                         p(c(-kPi / 4), 2), h(2)});
    add(GateKind::RCCCX, rcccx_ops());
    add(GateKind::C3SX, c3sx_ops());
    {
        Ops ops{h(2)};
        append(ops, ccx_ops(0, 1, 2));
        ops.push_back(h(2));
        add(GateKind::CCZ, std::move(ops));
    }
    {
        Ops ops{p(A::param(3), 0)};
        append(ops, cu3_from_params());
        add(GateKind::CU, std::move(ops));
    }
    {
        constexpr double a = 0.1;
        add(GateKind::CSwap, {u(c(kPi / 2), c(kPi / 2), c(-kPi / 2), 1),
                              u(c(kPi / 2), c(0), c(a), 2),
                              cx(1, 2),
                              u(c(kPi / 2), c(-kPi / 2), c(kPi / 2), 1),
                              u(c(kPi / 2 - a), c(-3 * kPi / 4), c(kPi / 2), 2),
                              cx(0, 2),
                              p(c(kPi / 4), 2),
                              cx(1, 2),
                              p(c(kPi / 4), 1),
                              p(c(-kPi / 4), 2),
                              cx(0, 2),
                              cx(0, 1),
                              p(c(kPi / 4), 0),
                              p(c(-kPi / 4), 1),
                              cx(0, 1),
                              u(c(kPi / 2), c(0), c(-3 * kPi / 4), 2),
                              cx(2, 1)});
    }
    add(GateKind::DCX, {cx(0, 1), cx(1, 0)});
    {
        Ops ops = rzx_ops(kPi / 4);
        ops.push_back(u(c(kPi), c(0), c(kPi), 0));
        append(ops, rzx_ops(-kPi / 4));
        add(GateKind::ECR, std::move(ops));
    }
    return rules;
}

}  // namespace qcover
