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
#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "qcover/error.hpp"
#include "qcover/mutation.hpp"

namespace {

using qcover::GateKind;
using qcover::MutationOperator;
using qcover::VerdictStatus;

std::vector<qcover::Mutant> mutants_of(const qcover::Circuit &c, MutationOperator op) {
    const std::vector<MutationOperator> ops{op};
    return qcover::generate_mutants(c, ops);
}

qcover::Circuit single(GateKind kind) {
    qcover::Circuit c(1);
    c.add_gate(kind, {0});
    return c;
}

// Number of positions at which `a` and `b` differ after aligning the common
// prefix and suffix.
std::size_t edit_size(const qcover::Circuit &a, const qcover::Circuit &b) {
    const auto &x = a.instructions();
    const auto &y = b.instructions();
    std::size_t prefix = 0;
    while (prefix < x.size() && prefix < y.size() && x[prefix] == y[prefix]) {
        ++prefix;
    }
    std::size_t suffix = 0;
    while (suffix < x.size() - prefix && suffix < y.size() - prefix &&
           x[x.size() - 1 - suffix] == y[y.size() - 1 - suffix]) {
        ++suffix;
    }
    return std::max(x.size(), y.size()) - prefix - suffix;
}

TEST(Generate, Examples) {
    const auto qgd = mutants_of(single(GateKind::H), MutationOperator::QGD);
    ASSERT_EQ(qgd.size(), 1U);
    EXPECT_EQ(qgd[0].circuit.size(), 0U);

    const auto qgr = mutants_of(single(GateKind::H), MutationOperator::QGR);
    ASSERT_EQ(qgr.size(), 9U);
    std::set<GateKind> kinds;
    for (const auto &m : qgr) {
        kinds.insert(std::get<qcover::GateInstruction>(m.circuit.instructions()[0]).kind);
    }
    EXPECT_EQ(kinds.size(), 9U);
    EXPECT_EQ(kinds.count(GateKind::H), 0U);

    EXPECT_EQ(mutants_of(corpus::swap_test(), MutationOperator::QGD).size(), 3U);
    EXPECT_EQ(mutants_of(single(GateKind::H), MutationOperator::QGI).size(), 10U);
}

TEST(Generate, Classes) {
    for (GateKind kind : qcover::all_gate_kinds()) {
        for (GateKind other : qcover::syntactic_class(kind)) {
            const auto &a = qcover::gate_info(kind);
            const auto &b = qcover::gate_info(other);
            EXPECT_EQ(a.num_qubits, b.num_qubits);
            EXPECT_EQ(a.num_params, b.num_params);
            EXPECT_EQ(a.control_positions().size(), b.control_positions().size());
        }
    }
    EXPECT_EQ(qcover::syntactic_class(GateKind::CX).size(), 5U);
    EXPECT_EQ(qcover::syntactic_class(GateKind::CRZ).size(), 5U);
    EXPECT_EQ(qcover::syntactic_class(GateKind::RX).size(), 4U);
    EXPECT_TRUE(qcover::syntactic_class(GateKind::CCX).empty());
    EXPECT_TRUE(qcover::syntactic_class(GateKind::Measure).empty());
}

TEST(Generate, ExactlyOneEdit) {
    for (const auto &c : corpus::random_corpus(60, 21)) {
        for (const auto &m : qcover::generate_mutants(c, qcover::all_operators())) {
            EXPECT_EQ(edit_size(c, m.circuit), 1U) << m.detail;
            const long delta = static_cast<long>(m.circuit.size()) - static_cast<long>(c.size());
            EXPECT_EQ(delta, m.op == MutationOperator::QGD ? -1 : (m.op == MutationOperator::QGI ? 1 : 0));
        }
    }
}

TEST(Generate, MeasurementsAreNotSites) {
    std::mt19937_64 rng(8);
    corpus::RandomCircuitOptions opts;
    opts.measurements = true;
    const auto c = corpus::random_circuit(rng, opts);
    for (const auto &m : qcover::generate_mutants(c, qcover::all_operators())) {
        EXPECT_NE(c.find_gate(m.site)->kind, GateKind::Measure);
    }
}

TEST(Generate, InsertedGateGetsFreshId) {
    const auto m = mutants_of(single(GateKind::X), MutationOperator::QGI);
    const auto &inserted = std::get<qcover::GateInstruction>(m[0].circuit.instructions()[1]);
    EXPECT_EQ(inserted.id, 1U);
    EXPECT_EQ(inserted.qubits, std::vector<qcover::Qubit>{0});
}

TEST(Generate, BudgetIsSeededSubset) {
    std::mt19937_64 rng(3);
    const auto c = corpus::random_circuit(rng);
    const auto all = qcover::generate_mutants(c, qcover::all_operators());
    const auto a = qcover::generate_mutants(c, qcover::all_operators(), 7, 10);
    const auto b = qcover::generate_mutants(c, qcover::all_operators(), 7, 10);
    ASSERT_EQ(a.size(), std::min<std::size_t>(10, all.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, b[i].id);
        EXPECT_EQ(a[i].circuit, all[a[i].id].circuit);
        if (i > 0) {
            EXPECT_LT(a[i - 1].id, a[i].id);
        }
    }
}

TEST(Judge, Examples) {
    const auto h = single(GateKind::H);
    const auto qgr = mutants_of(h, MutationOperator::QGR);
    const auto id_mutant =
        std::find_if(qgr.begin(), qgr.end(), [](const qcover::Mutant &m) { return m.detail.find("with id") != std::string::npos; });
    ASSERT_NE(id_mutant, qgr.end());
    const auto v = qcover::judge(h, *id_mutant);
    EXPECT_EQ(v.status, VerdictStatus::Killed);
    EXPECT_NEAR(*v.fidelity, 1 / std::sqrt(2.0), 1e-12);

    const auto x = single(GateKind::X);
    const auto qgi = mutants_of(x, MutationOperator::QGI);
    const auto z_mutant =
        std::find_if(qgi.begin(), qgi.end(), [](const qcover::Mutant &m) { return m.detail.find("insert z") == 0; });
    ASSERT_NE(z_mutant, qgi.end());
    EXPECT_EQ(qcover::judge(x, *z_mutant).status, VerdictStatus::Survived);

    const auto id = single(GateKind::Id);
    EXPECT_EQ(qcover::judge(id, mutants_of(id, MutationOperator::QGD)[0]).status, VerdictStatus::Survived);
}

TEST(Judge, SwapTestHadamardDeletionKilled) {
    const auto c = corpus::swap_test();
    for (const auto &m : mutants_of(c, MutationOperator::QGD)) {
        if (c.find_gate(m.site)->kind == GateKind::H) {
            EXPECT_EQ(qcover::judge(c, m).status, VerdictStatus::Killed) << m.detail;
        }
    }
}

TEST(Judge, SelfAndSymmetry) {
    const auto corpus = corpus::random_corpus(50, 13);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto &c = corpus[i];
        const qcover::Mutant self{0, MutationOperator::QGR, 0, "self", c};
        const auto v = qcover::judge(c, self);
        EXPECT_EQ(v.status, VerdictStatus::Survived);
        EXPECT_NEAR(*v.fidelity, 1.0, 1e-12);
        for (const auto &m : qcover::generate_mutants(c, qcover::all_operators(), i, 4)) {
            const qcover::Mutant back{m.id, m.op, m.site, m.detail, c};
            const auto ab = qcover::judge(c, m);
            const auto ba = qcover::judge(m.circuit, back);
            EXPECT_EQ(ab.status, ba.status);
            EXPECT_DOUBLE_EQ(*ab.fidelity, *ba.fidelity);
        }
    }
}

TEST(Judge, EngineErrorIsSeparate) {
    qcover::Circuit c(2);
    c.add_gate(GateKind::H, {0});
    qcover::Circuit wide(3);
    wide.add_gate(GateKind::H, {0});
    qcover::JudgeOptions opts;
    opts.simulator.qubit_limit = 2;
    const auto v = qcover::judge(c, {0, MutationOperator::QGR, 0, "wide", wide}, opts);
    EXPECT_EQ(v.status, VerdictStatus::EngineError);
    EXPECT_FALSE(v.error.empty());
    EXPECT_FALSE(v.fidelity.has_value());
}

TEST(Score, Examples) {
    EXPECT_DOUBLE_EQ(qcover::mutation_score(3, 1, 0), 0.75);
    EXPECT_NEAR(qcover::mutation_score(271845, 14604, 858), 0.9462, 5e-5);
    EXPECT_EQ(qcover::mutation_score(0, 5, 0), 0.0);
    EXPECT_THROW(qcover::mutation_score(0, 0, 0), qcover::MutationError);
    EXPECT_THROW(qcover::mutation_score(std::span<const qcover::MutantVerdict>{}), qcover::MutationError);
}

TEST(Score, Monotonic) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> d(0, 20);
    for (int i = 0; i < 500; ++i) {
        const std::size_t k = d(rng);
        const std::size_t s = d(rng);
        const std::size_t t = d(rng) + 1;
        const double base = qcover::mutation_score(k, s, t);
        EXPECT_GE(qcover::mutation_score(k + 1, s, t), base);
        EXPECT_LE(qcover::mutation_score(k, s + 1, t), base);
        EXPECT_LE(qcover::mutation_score(k, s, t + 1), base);
    }
}

TEST(Score, ErrorsExcluded) {
    std::vector<qcover::MutantVerdict> v(4);
    v[0].status = VerdictStatus::Killed;
    v[1].status = VerdictStatus::Survived;
    v[2].status = VerdictStatus::EngineError;
    v[3].status = VerdictStatus::Killed;
    EXPECT_NEAR(qcover::mutation_score(v), 2.0 / 3.0, 1e-15);
    qcover::VerdictCounts counts;
    counts.add(VerdictStatus::EngineError);
    EXPECT_FALSE(counts.score().has_value());
}

TEST(Campaign, SwapTestQgd) {
    qcover::CampaignOptions opts;
    opts.operators = {MutationOperator::QGD};
    const auto r = qcover::campaign(corpus::swap_test(), "swap_test", opts);
    EXPECT_EQ(r.verdicts.size(), 3U);
    EXPECT_EQ(r.total.mutants, 3U);
    EXPECT_TRUE(r.total.score().has_value());
    // cswap acts on |00> and its deletion is equivalent
    EXPECT_EQ(r.total.killed, 2U);
    EXPECT_EQ(r.total.survived, 1U);
    EXPECT_DOUBLE_EQ(*r.total.score(), 2.0 / 3.0);
}

TEST(Campaign, EmptyCircuitHasNullScore) {
    const auto r = qcover::campaign(qcover::Circuit(2), "empty", {});
    EXPECT_TRUE(r.verdicts.empty());
    EXPECT_FALSE(r.total.score().has_value());
    EXPECT_NE(qcover::csv_rows(r).find("null"), std::string::npos);
}

TEST(Campaign, DeterministicCsv) {
    std::mt19937_64 rng(17);
    const auto c = corpus::random_circuit(rng);
    qcover::CampaignOptions opts;
    opts.seed = 4;
    opts.budget = 25;
    opts.jobs = 3;
    const auto a = qcover::csv_rows(qcover::campaign(c, "c", opts));
    const auto b = qcover::csv_rows(qcover::campaign(c, "c", opts));
    EXPECT_EQ(a, b);
    const auto header = qcover::csv_header();
    EXPECT_EQ(header.back(), '\n');
    const auto columns = std::count(header.begin(), header.end(), ',');
    std::size_t start = 0;
    while (start < a.size()) {
        const std::size_t end = a.find('\n', start);
        const std::string row = a.substr(start, end - start);
        EXPECT_EQ(std::count(row.begin(), row.end(), ','), columns) << row;
        start = end + 1;
    }
}

}  // namespace
