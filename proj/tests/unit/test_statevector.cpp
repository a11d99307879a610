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

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracle.hpp"
#include "qcover/error.hpp"
#include "qcover/instrumenter.hpp"
#include "qcover/statevector.hpp"

namespace {

using qcover::GateKind;

double expectation(const qcover::ProbeLog &log, const std::string &label) {
    return std::get<double>(log.find(label)->value);
}

std::array<double, 2> probs(const qcover::ProbeLog &log, const std::string &label) {
    return std::get<std::array<double, 2>>(log.find(label)->value);
}

bool bitwise_equal(const qcover::Statevector &a, const qcover::Statevector &b) {
    return a.dimension() == b.dimension() &&
           std::memcmp(a.amplitudes().data(), b.amplitudes().data(), a.dimension() * sizeof(qcover::Complex)) == 0;
}

TEST(Run, SwapTestTrace) {
    const auto c = qcover::instrument(qcover::transpile(corpus::swap_test()));
    const auto r = qcover::run(c);
    EXPECT_EQ(r.log.size(), 16U);
    const std::vector<double> exps{0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
    for (int j = 1; j <= 7; ++j) {
        const std::string base = "cswap_1_cx_" + std::to_string(j);
        const double e = exps[static_cast<std::size_t>(j - 1)];
        EXPECT_NEAR(expectation(r.log, base + "_value"), e, 1e-9) << j;
        const auto p = probs(r.log, base + "_probability");
        EXPECT_NEAR(p[0], (1 + e) / 2, 1e-9) << j;
        EXPECT_NEAR(p[1], (1 - e) / 2, 1e-9) << j;
    }
    EXPECT_NEAR(expectation(r.log, "cswap_1_value_1"), 0.0, 1e-9);
    EXPECT_NEAR(probs(r.log, "cswap_1_probability_1")[0], 0.5, 1e-9);
    // log keeps execution order
    EXPECT_EQ(r.log.entries().front().label, "cswap_1_cx_1_value");
    EXPECT_EQ(r.log.entries().back().label, "cswap_1_probability_1");
}

TEST(Run, ExpectationAfterX) {
    qcover::Circuit c(1);
    c.add_gate(GateKind::X, {0});
    c.add_probe({qcover::ProbeMode::Expectation, 0, "e", {}});
    c.add_probe({qcover::ProbeMode::Probabilities, 0, "p", {}});
    const auto r = qcover::run(c);
    EXPECT_DOUBLE_EQ(expectation(r.log, "e"), -1.0);
    EXPECT_EQ(probs(r.log, "p"), (std::array<double, 2>{0.0, 1.0}));
}

TEST(Run, GhzMiddleQubitAgainstOracle) {
    qcover::Circuit c(3);
    c.add_gate(GateKind::H, {0});
    c.add_gate(GateKind::CX, {0, 1});
    c.add_gate(GateKind::CX, {1, 2});
    const auto ref = oracle::marginal(oracle::final_state(c), 1);
    c.add_probe({qcover::ProbeMode::Expectation, 1, "e", {}});
    c.add_probe({qcover::ProbeMode::Probabilities, 1, "p", {}});
    const auto r = qcover::run(c);
    EXPECT_NEAR(expectation(r.log, "e"), 0.0, 1e-12);
    EXPECT_NEAR(expectation(r.log, "e"), ref[0] - ref[1], 1e-12);
    EXPECT_NEAR(probs(r.log, "p")[0], 0.5, 1e-12);
}

TEST(StatevectorOf, Examples) {
    qcover::Circuit h(1);
    h.add_gate(GateKind::H, {0});
    const auto s = qcover::statevector_of(h);
    EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s[1].real(), 1 / std::sqrt(2.0), 1e-15);

    const auto swap = qcover::statevector_of(corpus::swap_test());
    EXPECT_NEAR(swap.marginal(0)[0], 1.0, 1e-12);

    qcover::Circuit tof(3);
    tof.add_gate(GateKind::X, {0});
    tof.add_gate(GateKind::X, {1});
    tof.add_gate(GateKind::CCX, {0, 1, 2});
    EXPECT_NEAR(std::abs(qcover::statevector_of(tof)[7]), 1.0, 1e-15);
}

TEST(StatevectorOf, RejectsProbes) {
    qcover::Circuit c(1);
    c.add_probe({qcover::ProbeMode::Expectation, 0, "e", {}});
    EXPECT_THROW(qcover::statevector_of(c), qcover::SimulationError);
}

TEST(Oracle, RandomCorpusFinalStates) {
    for (const auto &c : corpus::random_corpus(200, 77)) {
        const auto mine = qcover::statevector_of(c);
        const auto ref = oracle::final_state(c);
        double worst = 0.0;
        for (std::size_t i = 0; i < mine.dimension(); ++i) {
            worst = std::max(worst, std::abs(mine[i] - ref(static_cast<Eigen::Index>(i))));
        }
        ASSERT_LE(worst, 1e-10);
        // the transpiled circuit runs on the fast kernels only
        const auto t = qcover::transpile(c);
        const auto via_primitives = qcover::run(t.circuit).final_state;
        EXPECT_NEAR(qcover::fidelity(via_primitives, mine), 1.0, 1e-10);
    }
}

TEST(Invariants, NormTransparencyConsistency) {
    for (const auto &c : corpus::random_corpus(60, 4)) {
        const auto t = qcover::transpile(c);
        const auto instrumented = qcover::instrument(t);
        // norm after every gate
        qcover::Statevector s(c.num_qubits());
        for (const auto &inst : c.instructions()) {
            const auto &g = std::get<qcover::GateInstruction>(inst);
            s.apply(g.kind, g.params, g.qubits);
            ASSERT_NEAR(s.norm(), 1.0, 1e-10);
        }
        const auto with = qcover::run(instrumented);
        const auto without = qcover::run(t.circuit);
        EXPECT_TRUE(bitwise_equal(with.final_state, without.final_state));
        const auto &entries = with.log.entries();
        for (std::size_t i = 0; i + 1 < entries.size(); i += 2) {
            const double e = std::get<double>(entries[i].value);
            const auto p = std::get<std::array<double, 2>>(entries[i + 1].value);
            EXPECT_NEAR(e, p[0] - p[1], 1e-12);
            EXPECT_NEAR(p[0] + p[1], 1.0, 1e-10);
        }
    }
}

TEST(Run, QubitLimitAndInitialState) {
    qcover::Circuit big(5);
    qcover::SimulatorOptions opts;
    opts.qubit_limit = 4;
    EXPECT_THROW(qcover::run(big, opts), qcover::SimulationError);
    EXPECT_THROW(qcover::statevector_of(big, opts), qcover::SimulationError);

    qcover::Circuit one(1);
    one.add_gate(GateKind::X, {0});
    const auto bad = qcover::Statevector::from_amplitudes({1.0, 1.0});
    EXPECT_THROW(qcover::run(one, {}, &bad), qcover::SimulationError);
    const auto plus = qcover::Statevector::from_amplitudes({1 / std::sqrt(2.0), -1 / std::sqrt(2.0)});
    const auto r = qcover::run(one, {}, &plus);
    EXPECT_NEAR(r.final_state[0].real(), -1 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(qcover::Statevector::from_amplitudes({1.0, 0.0, 0.0}), qcover::SimulationError);
}

TEST(Run, DeadlineAborts) {
    qcover::Circuit c(2);
    c.add_gate(GateKind::H, {0});
    qcover::SimulatorOptions opts;
    opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    EXPECT_THROW(qcover::run(c, opts), qcover::TimeLimitExceeded);
}

TEST(Measurement, SeededAndCollapsing) {
    qcover::Circuit c(2, 2);
    c.add_gate(GateKind::H, {0});
    c.add_gate(GateKind::CX, {0, 1});
    c.add_gate(GateKind::Measure, {0}, {}, {0});
    c.add_probe({qcover::ProbeMode::Expectation, 1, "after", {}});
    c.add_gate(GateKind::Measure, {1}, {}, {1});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        qcover::SimulatorOptions opts;
        opts.seed = seed;
        const auto a = qcover::run(c, opts);
        const auto b = qcover::run(c, opts);
        EXPECT_EQ(a.clbits, b.clbits);
        EXPECT_EQ(a.clbits[0], a.clbits[1]);
        EXPECT_DOUBLE_EQ(std::abs(expectation(a.log, "after")), 1.0);
        EXPECT_NEAR(a.final_state.norm(), 1.0, 1e-12);
    }
}

TEST(Measurement, ShotCounts) {
    qcover::Circuit c(1, 1);
    c.add_gate(GateKind::H, {0});
    c.add_gate(GateKind::Measure, {0}, {}, {0});
    const auto counts = qcover::sample_counts(c, 2000);
    EXPECT_EQ(counts.at("0") + counts.at("1"), 2000U);
    EXPECT_NEAR(static_cast<double>(counts.at("0")) / 2000.0, 0.5, 0.05);
    EXPECT_EQ(counts, qcover::sample_counts(c, 2000));
}

TEST(Dump, RoundTrip) {
    std::mt19937_64 rng(2);
    const auto c = corpus::random_circuit(rng);
    const auto s = qcover::statevector_of(c);
    const auto path = std::filesystem::temp_directory_path() / "qcover_state_test.bin";
    qcover::write_statevector(s, path);
    EXPECT_EQ(std::filesystem::file_size(path), 12 + 16 * s.dimension());
    const auto back = qcover::read_statevector(path);
    EXPECT_TRUE(bitwise_equal(s, back));
    std::filesystem::remove(path);
}

TEST(Fidelity, Symmetric) {
    auto states = corpus::random_corpus(10, 9);
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
        if (states[i].num_qubits() != states[i + 1].num_qubits()) {
            continue;
        }
        const auto a = qcover::statevector_of(states[i]);
        const auto b = qcover::statevector_of(states[i + 1]);
        EXPECT_DOUBLE_EQ(qcover::fidelity(a, b), qcover::fidelity(b, a));
    }
}

}  // namespace
