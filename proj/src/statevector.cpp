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

#include "qcover/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "qcover/error.hpp"

namespace qcover {

namespace {

constexpr std::uint32_t kDumpVersion = 1;
constexpr char kMagic[4] = {'Q', 'C', 'S', 'V'};

// Spreads the bits of `i` around zeros at the (ascending) `positions`.
std::size_t insert_zero_bits(std::size_t i, std::span<const Qubit> sorted_positions) {
    for (Qubit pos : sorted_positions) {
        const std::size_t low = i & ((std::size_t{1} << pos) - 1);
        i = ((i >> pos) << (pos + 1)) | low;
    }
    return i;
}

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_deadline(const SimulatorOptions &options) {
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
        throw TimeLimitExceeded("time limit exceeded");
    }
}

void check_qubits(std::size_t n, const SimulatorOptions &options) {
    if (n > options.qubit_limit) {
        throw SimulationError(fmt::format("circuit has {} qubits, above the qubit limit of {}", n, options.qubit_limit));
    }
}

RunResult run_with(const Circuit &circuit, const SimulatorOptions &options, const Statevector *initial,
                   std::mt19937_64 &rng) {
    check_qubits(circuit.num_qubits(), options);
    RunResult result;
    if (initial != nullptr) {
        if (initial->num_qubits() != circuit.num_qubits()) {
            throw SimulationError("initial state has the wrong number of qubits");
        }
        if (std::abs(initial->norm() - 1.0) > 1e-10) {
            throw SimulationError("initial state is not normalized");
        }
        result.final_state = *initial;
    } else {
        result.final_state = Statevector(circuit.num_qubits());
    }
    result.clbits.assign(circuit.num_clbits(), 0);
    Statevector &state = result.final_state;
    for (const auto &inst : circuit.instructions()) {
        check_deadline(options);
        if (const auto *probe = as_probe(inst)) {
            if (probe->mode == ProbeMode::Expectation) {
                result.log.record(probe->label, probe->qubit, state.expectation_z(probe->qubit));
            } else {
                result.log.record(probe->label, probe->qubit, state.marginal(probe->qubit));
            }
            continue;
        }
        const auto &gate = std::get<GateInstruction>(inst);
        if (gate.kind == GateKind::Measure) {
            result.clbits.at(gate.clbits.at(0)) = static_cast<std::uint8_t>(state.measure(gate.qubits.at(0), uniform01(rng)));
        } else {
            state.apply(gate.kind, gate.params, gate.qubits);
        }
    }
    return result;
}

void put_u32(std::ostream &out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) {
        out.put(static_cast<char>((v >> (8 * b)) & 0xFFU));
    }
}

void put_f64(std::ostream &out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int b = 0; b < 8; ++b) {
        out.put(static_cast<char>((v >> (8 * b)) & 0xFFU));
    }
}

std::uint64_t get_bytes(std::istream &in, int count) {
    std::uint64_t v = 0;
    for (int b = 0; b < count; ++b) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) {
            throw SimulationError("truncated statevector file");
        }
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
    }
    return v;
}

}  // namespace

Statevector::Statevector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amplitudes_(std::size_t{1} << num_qubits, Complex{0.0, 0.0}) {
    amplitudes_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw SimulationError("amplitude count must be a power of two");
    }
    Statevector s;
    s.num_qubits_ = static_cast<std::size_t>(std::countr_zero(dim));
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

double Statevector::norm() const {
    double sum = 0.0;
    for (const auto &a : amplitudes_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void Statevector::apply(GateKind kind, std::span<const double> params, std::span<const Qubit> qubits) {
    for (Qubit q : qubits) {
        if (q >= num_qubits_) {
            throw SimulationError(fmt::format("qubit {} out of range", q));
        }
    }
    switch (kind) {
        case GateKind::Id:
        case GateKind::Barrier:
            return;
        case GateKind::Measure:
            throw SimulationError("measurement is not a unitary");
        case GateKind::CX:
            apply_cx(qubits[0], qubits[1]);
            return;
        default:
            break;
    }
    const Matrix m = gate_unitary(kind, params);
    apply_matrix(m, qubits);
}

void Statevector::apply_matrix(const Matrix &unitary, std::span<const Qubit> qubits) {
    const std::size_t k = qubits.size();
    if (unitary.rows() != static_cast<Eigen::Index>(std::size_t{1} << k)) {
        throw SimulationError("matrix size does not match operand count");
    }
    if (k == 1) {
        const Complex m[4] = {unitary(0, 0), unitary(0, 1), unitary(1, 0), unitary(1, 1)};
        apply_1q(m, qubits[0]);
        return;
    }
    if (k == 2) {
        apply_2q(unitary, qubits[0], qubits[1]);
        return;
    }
    std::vector<Qubit> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t local_dim = std::size_t{1} << k;
    std::vector<std::size_t> offsets(local_dim, 0);
    for (std::size_t s = 0; s < local_dim; ++s) {
        for (std::size_t b = 0; b < k; ++b) {
            if ((s >> b) & 1U) {
                offsets[s] |= std::size_t{1} << qubits[b];
            }
        }
    }
    std::vector<Complex> in(local_dim);
    const std::size_t blocks = amplitudes_.size() >> k;
    for (std::size_t i = 0; i < blocks; ++i) {
        const std::size_t base = insert_zero_bits(i, sorted);
        for (std::size_t s = 0; s < local_dim; ++s) {
            in[s] = amplitudes_[base | offsets[s]];
        }
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < local_dim; ++c) {
                acc += unitary(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            amplitudes_[base | offsets[r]] = acc;
        }
    }
}

void Statevector::apply_1q(const Complex m[4], Qubit q) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t dim = amplitudes_.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amplitudes_[i];
            const Complex a1 = amplitudes_[i + stride];
            amplitudes_[i] = m[0] * a0 + m[1] * a1;
            amplitudes_[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void Statevector::apply_2q(const Matrix &m, Qubit q0, Qubit q1) {
    const Qubit sorted[2] = {std::min(q0, q1), std::max(q0, q1)};
    const std::size_t b0 = std::size_t{1} << q0;
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t offsets[4] = {0, b0, b1, b0 | b1};
    Complex u[16];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            u[r * 4 + c] = m(r, c);
        }
    }
    const std::size_t blocks = amplitudes_.size() >> 2;
    for (std::size_t i = 0; i < blocks; ++i) {
        const std::size_t base = insert_zero_bits(i, sorted);
        Complex in[4];
        for (int s = 0; s < 4; ++s) {
            in[s] = amplitudes_[base | offsets[s]];
        }
        for (int r = 0; r < 4; ++r) {
            amplitudes_[base | offsets[r]] = u[r * 4] * in[0] + u[r * 4 + 1] * in[1] + u[r * 4 + 2] * in[2] + u[r * 4 + 3] * in[3];
        }
    }
}

void Statevector::apply_cx(Qubit control, Qubit target) {
    const Qubit sorted[2] = {std::min(control, target), std::max(control, target)};
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t blocks = amplitudes_.size() >> 2;
    for (std::size_t i = 0; i < blocks; ++i) {
        const std::size_t base = insert_zero_bits(i, sorted) | cbit;
        std::swap(amplitudes_[base], amplitudes_[base | tbit]);
    }
}

std::array<double, 2> Statevector::marginal(Qubit qubit) const {
    if (qubit >= num_qubits_) {
        throw SimulationError(fmt::format("qubit {} out of range", qubit));
    }
    const std::size_t bit = std::size_t{1} << qubit;
    double p0 = 0.0;
    double p1 = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        ((i & bit) != 0U ? p1 : p0) += std::norm(amplitudes_[i]);
    }
    return {p0, p1};
}

double Statevector::expectation_z(Qubit qubit) const {
    const auto [p0, p1] = marginal(qubit);
    return p0 - p1;
}

int Statevector::measure(Qubit qubit, double uniform) {
    const auto [p0, p1] = marginal(qubit);
    const int outcome = uniform < p1 / (p0 + p1) ? 1 : 0;
    const double keep = outcome == 1 ? p1 : p0;
    const double scale = 1.0 / std::sqrt(keep);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        const bool one = (i & bit) != 0U;
        if (one == (outcome == 1)) {
            amplitudes_[i] *= scale;
        } else {
            amplitudes_[i] = 0.0;
        }
    }
    return outcome;
}

double fidelity(const Statevector &a, const Statevector &b) {
    if (a.dimension() != b.dimension()) {
        throw SimulationError("cannot compare statevectors of different sizes");
    }
    Complex inner{0.0, 0.0};
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        inner += std::conj(a[i]) * b[i];
    }
    return std::abs(inner);
}

void ProbeLog::record(std::string label, Qubit qubit, ProbeValue value) {
    if (index_.count(label) != 0U) {
        throw SimulationError("duplicate probe label " + label);
    }
    index_.emplace(label, entries_.size());
    entries_.push_back({std::move(label), qubit, value});
}

const ProbeRecord *ProbeLog::find(const std::string &label) const {
    auto it = index_.find(label);
    return it == index_.end() ? nullptr : &entries_[it->second];
}

RunResult run(const Circuit &circuit, const SimulatorOptions &options, const Statevector *initial) {
    std::mt19937_64 rng(options.seed);
    return run_with(circuit, options, initial, rng);
}

Statevector statevector_of(const Circuit &circuit, const SimulatorOptions &options) {
    check_qubits(circuit.num_qubits(), options);
    Statevector state(circuit.num_qubits());
    for (const auto &inst : circuit.instructions()) {
        check_deadline(options);
        const auto *gate = as_gate(inst);
        if (gate == nullptr) {
            throw SimulationError("statevector_of expects a probe-free circuit");
        }
        if (gate->kind != GateKind::Measure) {
            state.apply(gate->kind, gate->params, gate->qubits);
        }
    }
    return state;
}

std::map<std::string, std::size_t> sample_counts(const Circuit &circuit, std::size_t shots,
                                                 const SimulatorOptions &options) {
    std::mt19937_64 rng(options.seed);
    std::map<std::string, std::size_t> counts;
    for (std::size_t s = 0; s < shots; ++s) {
        const RunResult r = run_with(circuit, options, nullptr, rng);
        std::string key;
        for (auto it = r.clbits.rbegin(); it != r.clbits.rend(); ++it) {
            key += *it != 0U ? '1' : '0';
        }
        ++counts[key];
    }
    return counts;
}

void write_statevector(const Statevector &state, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out.write(kMagic, 4);
    put_u32(out, kDumpVersion);
    put_u32(out, static_cast<std::uint32_t>(state.num_qubits()));
    for (const auto &a : state.amplitudes()) {
        put_f64(out, a.real());
        put_f64(out, a.imag());
    }
    if (!out) {
        throw Error("failed writing " + path.string());
    }
}

Statevector read_statevector(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kMagic)) {
        throw SimulationError("not a statevector file");
    }
    if (get_bytes(in, 4) != kDumpVersion) {
        throw SimulationError("unsupported statevector file version");
    }
    const auto n = get_bytes(in, 4);
    if (n > 40) {
        throw SimulationError("statevector file declares too many qubits");
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        const double re = std::bit_cast<double>(get_bytes(in, 8));
        const double im = std::bit_cast<double>(get_bytes(in, 8));
        a = {re, im};
    }
    return Statevector::from_amplitudes(std::move(amps));
}

}  // namespace qcover
