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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "qcover/circuit.hpp"
#include "qcover/error.hpp"

namespace qcover::qasm {

struct SourceSpan {
    std::string file;
    std::size_t line{0};
    std::size_t column_begin{0};
    std::size_t column_end{0};

    std::string to_string() const;
};

enum class ParseErrorKind { Syntax, UnsupportedGate, Version, Semantic, Io };

/// Diagnostic raised by the parser; `what()` is `file:line:col: message`.
class ParseError : public Error {
  public:
    ParseError(ParseErrorKind kind, SourceSpan span, const std::string &message);

    ParseErrorKind kind() const { return kind_; }
    const SourceSpan &span() const { return span_; }
    const std::string &message() const { return message_; }

  private:
    ParseErrorKind kind_;
    SourceSpan span_;
    std::string message_;
};

/// Parses OpenQASM 2.0 text.
///
/// Registers are flattened into one qubit and one classical-bit index space in
/// declaration order. User `gate` definitions are inlined; parameter
/// expressions are folded to doubles. Instruction ids are dense in statement
/// order. Throws ParseError for every malformed or unsupported input.
Circuit parse(std::string_view source, std::string_view file_name = "<input>");

Circuit parse_file(const std::filesystem::path &path);

/// Emits OpenQASM 2.0 over a single `q` and `c` register, one statement per
/// line. Throws Error if the circuit contains probes.
std::string serialize(const Circuit &circuit);

/// Renders an angle, using `pi` fractions such as `-3*pi/4` when exact.
std::string format_angle(double radians);

}  // namespace qcover::qasm
