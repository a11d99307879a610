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

#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracle.hpp"
#include "qcover/error.hpp"
#include "qcover/transpiler.hpp"

namespace {

using qcover::GateKind;

// Template product evaluated with oracle matrices only.
oracle::Matrix oracle_template_unitary(const qcover::DecompositionRule &rule, std::span<const double> params) {
    const auto n = static_cast<std::size_t>(qcover::gate_info(rule.kind).num_qubits);
    oracle::Matrix total = oracle::Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
    for (const auto &op : rule.ops) {
        std::vector<double> values;
        for (const auto &e : op.params) {
            values.push_back(e.evaluate(params));
        }
        std::vector<qcover::Qubit> qubits(op.operands.begin(), op.operands.end());
        total = oracle::embed(oracle::gate_matrix(op.kind, values), qubits, n) * total;
    }
    return total;
}

std::vector<double> random_params(GateKind kind, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    std::vector<double> out;
    for (int i = 0; i < qcover::gate_info(kind).num_params; ++i) {
        out.push_back(angle(rng));
    }
    return out;
}

const qcover::DecompositionRule &rule_for(GateKind kind) {
    const auto *rule = qcover::RuleRegistry::standard().find(kind);
    EXPECT_NE(rule, nullptr);
    return *rule;
}

TEST(Rules, EveryControlledKindHasARule) {
    const auto &reg = qcover::RuleRegistry::standard();
    EXPECT_EQ(reg.size(), 22U);
    for (GateKind k : qcover::controlled_gate_kinds()) {
        EXPECT_NE(reg.find(k), nullptr) << qcover::gate_name(k);
    }
}

TEST(Rules, TemplatesMatchOracleAtRandomParameters) {
    std::mt19937_64 rng(3);
    for (GateKind k : qcover::controlled_gate_kinds()) {
        const auto &rule = rule_for(k);
        for (int trial = 0; trial < 25; ++trial) {
            const auto params = random_params(k, rng);
            const double d = oracle::phase_distance(oracle_template_unitary(rule, params), oracle::gate_matrix(k, params));
            EXPECT_LE(d, 1e-10) << qcover::gate_name(k);
        }
    }
}

TEST(Rules, TemplatesUseOnlyPrimitives) {
    for (GateKind k : qcover::controlled_gate_kinds()) {
        for (const auto &op : rule_for(k).ops) {
            EXPECT_TRUE(op.kind == GateKind::U || op.kind == GateKind::P || op.kind == GateKind::CX ||
                        op.kind == GateKind::Id)
                << qcover::gate_name(k);
        }
    }
}

TEST(Rules, CxCounts) {
    EXPECT_EQ(rule_for(GateKind::CX).cx_count(), 1U);
    EXPECT_EQ(rule_for(GateKind::CSwap).cx_count(), 7U);
    EXPECT_EQ(rule_for(GateKind::CCX).cx_count(), 6U);
    EXPECT_EQ(rule_for(GateKind::CCZ).cx_count(), 6U);
    EXPECT_EQ(rule_for(GateKind::RCCX).cx_count(), 3U);
    EXPECT_EQ(rule_for(GateKind::RCCCX).cx_count(), 6U);
    EXPECT_EQ(rule_for(GateKind::C3SX).cx_count(), 20U);
    EXPECT_EQ(rule_for(GateKind::DCX).cx_count(), 2U);
    EXPECT_EQ(rule_for(GateKind::ECR).cx_count(), 4U);
}

TEST(Rules, CswapMatchesQiskitOutput) {
    struct Step {
        GateKind kind;
        std::vector<std::uint8_t> operands;
    };
    const std::vector<Step> expected{
        {GateKind::U, {1}},     {GateKind::U, {2}},     {GateKind::CX, {1, 2}}, {GateKind::U, {1}},
        {GateKind::U, {2}},     {GateKind::CX, {0, 2}}, {GateKind::P, {2}},     {GateKind::CX, {1, 2}},
        {GateKind::P, {1}},     {GateKind::P, {2}},     {GateKind::CX, {0, 2}}, {GateKind::CX, {0, 1}},
        {GateKind::P, {0}},     {GateKind::P, {1}},     {GateKind::CX, {0, 1}}, {GateKind::U, {2}},
        {GateKind::CX, {2, 1}},
    };
    const auto &rule = rule_for(GateKind::CSwap);
    ASSERT_EQ(rule.ops.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(rule.ops[i].kind, expected[i].kind) << i;
        EXPECT_EQ(rule.ops[i].operands, expected[i].operands) << i;
    }
    const auto first_u = rule.ops[0].params;
    EXPECT_DOUBLE_EQ(first_u[0].constant, M_PI / 2);
    EXPECT_DOUBLE_EQ(first_u[1].constant, M_PI / 2);
    EXPECT_DOUBLE_EQ(first_u[2].constant, -M_PI / 2);
    // Qiskit prints these two angles rounded to 0.10 and 1.47
    EXPECT_NEAR(rule.ops[1].params[2].constant, 0.10, 0.005);
    EXPECT_NEAR(rule.ops[4].params[0].constant, 1.47, 0.005);
}

TEST(Rules, ToffoliAgainstTruthTable) {
    const auto m = oracle_template_unitary(rule_for(GateKind::CCX), {});
    oracle::Matrix toffoli = oracle::Matrix::Identity(8, 8);
    toffoli(3, 3) = toffoli(7, 7) = 0.0;
    toffoli(3, 7) = toffoli(7, 3) = 1.0;
    EXPECT_LE(oracle::phase_distance(m, toffoli), 1e-10);
}

TEST(Rules, CuAndC3sxAtSpecialAngles) {
    const std::vector<double> angles{0.0, M_PI, -M_PI, 2 * M_PI, M_PI / 2, 1e-9};
    for (double a : angles) {
        for (double b : angles) {
            const std::vector<double> cu{a, b, -a, b / 2};
            EXPECT_LE(oracle::phase_distance(oracle_template_unitary(rule_for(GateKind::CU), cu),
                                             oracle::gate_matrix(GateKind::CU, cu)),
                      1e-10);
            const std::vector<double> cu3{b, a, 0.3};
            EXPECT_LE(oracle::phase_distance(oracle_template_unitary(rule_for(GateKind::CU3), cu3),
                                             oracle::gate_matrix(GateKind::CU3, cu3)),
                      1e-10);
        }
    }
    // cu's extra phase is only a relative phase when controlled
    const std::vector<double> with_phase{0.3, 0.2, 0.1, 1.0};
    const std::vector<double> without_phase{0.3, 0.2, 0.1, 0.0};
    EXPECT_GT(oracle::phase_distance(oracle::gate_matrix(GateKind::CU, with_phase),
                                     oracle::gate_matrix(GateKind::CU, without_phase)),
              0.1);
    const auto c3sx = oracle_template_unitary(rule_for(GateKind::C3SX), {});
    EXPECT_LE(oracle::phase_distance(c3sx, oracle::gate_matrix(GateKind::C3SX, {})), 1e-10);
}

TEST(Registry, StandardRulesRegisterCleanly) {
    qcover::RuleRegistry reg;
    for (auto &rule : qcover::standard_decomposition_rules()) {
        EXPECT_NO_THROW(reg.register_rule(rule)) << qcover::gate_name(rule.kind);
    }
    EXPECT_EQ(reg.size(), 22U);
}

TEST(Registry, PerturbedCswapIsRejected) {
    auto rule = rule_for(GateKind::CSwap);
    rule.ops[6].params[0].constant += 0.1;
    qcover::RuleRegistry reg;
    try {
        reg.register_rule(rule);
        FAIL();
    } catch (const qcover::TranspileError &e) {
        EXPECT_NE(std::string(e.what()).find("not equivalent"), std::string::npos);
    }
    EXPECT_EQ(reg.size(), 0U);
}

TEST(Registry, DuplicateKindIsRejected) {
    auto reg = qcover::RuleRegistry::with_standard_rules();
    try {
        reg.register_rule(rule_for(GateKind::CX));
        FAIL();
    } catch (const qcover::TranspileError &e) {
        EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
    }
}

TEST(Registry, MalformedTemplatesAreRejected) {
    qcover::RuleRegistry reg;
    using qcover::AngleExpr;
    const qcover::DecompositionRule non_primitive{GateKind::CZ, {{GateKind::H, {1}, {}}, {GateKind::CX, {0, 1}, {}}}};
    EXPECT_THROW(reg.register_rule(non_primitive), qcover::TranspileError);
    const qcover::DecompositionRule bad_role{GateKind::CX, {{GateKind::CX, {0, 2}, {}}}};
    EXPECT_THROW(reg.register_rule(bad_role), qcover::TranspileError);
    const qcover::DecompositionRule bad_param{GateKind::CRZ,
                                              {{GateKind::P, {1}, {AngleExpr::param(2)}}, {GateKind::CX, {0, 1}, {}}}};
    EXPECT_THROW(reg.register_rule(bad_param), qcover::TranspileError);
    const qcover::DecompositionRule uncontrolled{GateKind::H, {{GateKind::U, {0}, {AngleExpr{}, AngleExpr{}, AngleExpr{}}}}};
    EXPECT_THROW(reg.register_rule(uncontrolled), qcover::TranspileError);
    EXPECT_THROW(reg.register_rule({GateKind::CX, {}}), qcover::TranspileError);
}

TEST(Transpile, SequentialCircuitIsUnchanged) {
    qcover::Circuit c(2);
    c.add_gate(GateKind::H, {0});
    c.add_gate(GateKind::X, {1});
    c.add_gate(GateKind::U, {0}, {0.1, 0.2, 0.3});
    const auto t = qcover::transpile(c);
    EXPECT_EQ(t.circuit, c);
    EXPECT_TRUE(t.cx_provenance.empty());
    EXPECT_TRUE(t.origins.empty());
}

TEST(Transpile, SwapTestProvenance) {
    const auto t = qcover::transpile(corpus::swap_test());
    EXPECT_EQ(t.circuit.size(), 1U + 17U + 2U);
    ASSERT_EQ(t.origins.size(), 1U);
    const auto &origin = t.origins[0];
    EXPECT_EQ(origin.id, 1U);
    EXPECT_EQ(origin.kind, GateKind::CSwap);
    EXPECT_EQ(origin.ordinal, 1U);
    EXPECT_EQ(origin.cx_ids.size(), 7U);
    EXPECT_EQ(origin.block_end, 18U);
    EXPECT_EQ(t.block_end.at(1), 18U);
    EXPECT_EQ(t.origin_controls.at(1), (std::vector<qcover::Qubit>{0}));
    for (std::uint32_t j = 1; j <= 7; ++j) {
        const auto &prov = t.cx_provenance.at(origin.cx_ids[j - 1]);
        EXPECT_EQ(prov.origin_gate_id, 1U);
        EXPECT_EQ(prov.cx_index, j);
    }
}

TEST(Transpile, BareCxIsItsOwnExpansion) {
    qcover::Circuit c(2);
    c.add_gate(GateKind::H, {1});
    c.add_gate(GateKind::CX, {1, 0});
    const auto t = qcover::transpile(c);
    EXPECT_EQ(t.circuit, c);
    ASSERT_EQ(t.cx_provenance.size(), 1U);
    EXPECT_EQ(t.cx_provenance.at(1).origin_gate_id, 1U);
    EXPECT_EQ(t.cx_provenance.at(1).cx_index, 1U);
    EXPECT_EQ(t.block_end.at(1), 2U);
}

TEST(Transpile, OrdinalsCountPerKind) {
    qcover::Circuit c(3);
    c.add_gate(GateKind::CCX, {0, 1, 2});
    c.add_gate(GateKind::CX, {0, 1});
    c.add_gate(GateKind::CCX, {2, 1, 0});
    const auto t = qcover::transpile(c);
    ASSERT_EQ(t.origins.size(), 3U);
    EXPECT_EQ(t.origins[0].ordinal, 1U);
    EXPECT_EQ(t.origins[1].ordinal, 1U);
    EXPECT_EQ(t.origins[2].ordinal, 2U);
    EXPECT_EQ(t.origins[2].controls, (std::vector<qcover::Qubit>{2, 1}));
}

TEST(Transpile, RandomCorpusPreservesUnitaryAndProvenance) {
    for (const auto &c : corpus::random_corpus(120, 21)) {
        const auto t = qcover::transpile(c);
        ASSERT_LE(oracle::phase_distance(oracle::circuit_unitary(t.circuit), oracle::circuit_unitary(c)), 1e-9);
        std::size_t anonymous_cx = 0;
        for (const auto &inst : t.circuit.instructions()) {
            const auto &g = std::get<qcover::GateInstruction>(inst);
            const auto &info = qcover::gate_info(g.kind);
            EXPECT_TRUE(!info.controlled || g.kind == GateKind::CX) << info.name;
            if (g.kind == GateKind::CX && t.cx_provenance.count(g.id) == 0U) {
                ++anonymous_cx;
            }
        }
        std::size_t expected_anonymous = 0;
        std::size_t expected_origins = 0;
        for (const auto &inst : c.instructions()) {
            const auto kind = std::get<qcover::GateInstruction>(inst).kind;
            expected_anonymous += kind == GateKind::DCX ? 2 : kind == GateKind::ECR ? 4 : 0;
            expected_origins += qcover::gate_info(kind).has_control_qubits() ? 1 : 0;
        }
        EXPECT_EQ(anonymous_cx, expected_anonymous);
        ASSERT_EQ(t.origins.size(), expected_origins);
        for (const auto &origin : t.origins) {
            EXPECT_EQ(origin.cx_ids.size(), rule_for(origin.kind).cx_count());
            for (std::size_t j = 0; j < origin.cx_ids.size(); ++j) {
                EXPECT_EQ(t.cx_provenance.at(origin.cx_ids[j]).cx_index, j + 1);
            }
        }
        EXPECT_EQ(qcover::controlled_gate_inventory(c).size(), t.origins.size());
    }
}

TEST(Transpile, Deterministic) {
    for (const auto &c : corpus::random_corpus(20, 8)) {
        const auto a = qcover::transpile(c);
        const auto b = qcover::transpile(c);
        EXPECT_EQ(a.circuit, b.circuit);
        EXPECT_EQ(a.cx_provenance, b.cx_provenance);
        EXPECT_EQ(a.origins, b.origins);
    }
}

TEST(Transpile, RejectsProbesAndMissingRules) {
    qcover::Circuit probed = corpus::swap_test();
    probed.add_probe({qcover::ProbeMode::Expectation, 0, "p", {}});
    EXPECT_THROW(qcover::transpile(probed), qcover::TranspileError);
    qcover::RuleRegistry empty;
    EXPECT_THROW(qcover::transpile(corpus::swap_test(), empty), qcover::TranspileError);
}

TEST(Transpile, ProvenanceDump) {
    const std::string dump = qcover::dump_provenance(qcover::transpile(corpus::swap_test()));
    EXPECT_NE(dump.find("// provenance:"), std::string::npos);
    EXPECT_NE(dump.find("// 1 cswap 1 [0] 7 "), std::string::npos);
}

}  // namespace
