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

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qcover/circuit.hpp"

namespace qcover {

/// Dense pure state over n qubits. Qubit 0 is the least significant bit of
/// the amplitude index.
class Statevector {
  public:
    Statevector() = default;
    /// |0...0> over `num_qubits` qubits.
    explicit Statevector(std::size_t num_qubits);
    /// Throws SimulationError unless the length is a power of two.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

    /// Applies a non-directive gate. Controlled kinds use their defining
    /// unitary directly.
    void apply(GateKind kind, std::span<const double> params, std::span<const Qubit> qubits);
    /// Applies a 2^k x 2^k unitary to `qubits` (operand 0 = least significant).
    void apply_matrix(const Matrix &unitary, std::span<const Qubit> qubits);

    /// Z-basis marginal (p0, p1) of one qubit.
    std::array<double, 2> marginal(Qubit qubit) const;
    double expectation_z(Qubit qubit) const;

    /// Projective Z measurement; `uniform` is a draw from [0, 1).
    int measure(Qubit qubit, double uniform);

    bool operator==(const Statevector &) const = default;

  private:
    void apply_1q(const Complex m[4], Qubit q);
    void apply_2q(const Matrix &m, Qubit q0, Qubit q1);
    void apply_cx(Qubit control, Qubit target);

    std::size_t num_qubits_{0};
    std::vector<Complex> amplitudes_;
};

/// |<a|b>|. Throws SimulationError on a dimension mismatch.
double fidelity(const Statevector &a, const Statevector &b);

/// Expectation value or (p0, p1) marginal.
using ProbeValue = std::variant<double, std::array<double, 2>>;

struct ProbeRecord {
    std::string label;
    Qubit qubit;
    ProbeValue value;
};

/// Probe values in execution order, addressable by label.
class ProbeLog {
  public:
    void record(std::string label, Qubit qubit, ProbeValue value);

    const std::vector<ProbeRecord> &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const ProbeRecord *find(const std::string &label) const;

  private:
    std::vector<ProbeRecord> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct SimulatorOptions {
    std::size_t qubit_limit{26};
    std::uint64_t seed{0};
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct RunResult {
    Statevector final_state;
    ProbeLog log;
    std::vector<std::uint8_t> clbits;
};

/// Executes gates, probes and measurements in order. Probes never change the
/// state. Throws SimulationError for the qubit limit or a non-normalized
/// initial state, TimeLimitExceeded past the deadline.
RunResult run(const Circuit &circuit, const SimulatorOptions &options = {},
              const Statevector *initial = nullptr);

/// Final state from |0...0> of a probe-free circuit, ignoring measurements.
Statevector statevector_of(const Circuit &circuit, const SimulatorOptions &options = {});

/// Outcome counts over `shots` independent runs, keyed by the classical
/// register as a bit string (highest clbit first).
std::map<std::string, std::size_t> sample_counts(const Circuit &circuit, std::size_t shots,
                                                 const SimulatorOptions &options = {});

/// Binary form: "QCSV", u32 version, u32 n, then 2^n (re, im) f64 pairs, all
/// little-endian.
void write_statevector(const Statevector &state, const std::filesystem::path &path);
Statevector read_statevector(const std::filesystem::path &path);

}  // namespace qcover
