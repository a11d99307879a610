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

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "qcover/qasm.hpp"

namespace qcover::qasm {

std::string SourceSpan::to_string() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column_begin);
}

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, const std::string &message)
    : Error(span.to_string() + ": " + message), kind_(kind), span_(std::move(span)), message_(message) {}

namespace {

constexpr std::size_t kMaxRegisterSize = 1U << 16;
constexpr std::size_t kMaxTotalBits = 1U << 20;
constexpr std::size_t kMaxInstructions = 10'000'000;
constexpr int kMaxExpressionDepth = 200;

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
    Tok type{Tok::End};
    std::string text;
    std::size_t line{1};
    std::size_t column{1};
};

class Lexer {
  public:
    Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.type = Tok::Ident;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() &&
                                                                       std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                t.type = Tok::Number;
                lex_number(t);
            } else if (c == '"') {
                t.type = Tok::String;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    t.text += advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    fail(t, "unterminated string literal");
                }
                advance();
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                t.type = Tok::Symbol;
                t.text = "->";
                advance();
                advance();
            } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
                t.type = Tok::Symbol;
                t.text = "==";
                advance();
                advance();
            } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
                t.type = Tok::Symbol;
                t.text = std::string(1, advance());
            } else {
                fail(t, std::string("unexpected character '") +
                            (std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : std::string("\\x?")) + "'");
            }
            out.push_back(std::move(t));
        }
    }

  private:
    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                Token start{Tok::End, "", line_, col_};
                advance();
                advance();
                while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
                    advance();
                }
                if (pos_ + 1 >= src_.size()) {
                    fail(start, "unterminated block comment");
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    void lex_number(Token &t) {
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                t.text += advance();
            }
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            t.text += advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t save_pos = pos_;
            const std::size_t save_col = col_;
            std::string exp(1, src_[pos_]);
            ++pos_;
            ++col_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                exp += src_[pos_++];
                ++col_;
            }
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                t.text += exp;
                digits();
            } else {
                pos_ = save_pos;
                col_ = save_col;
            }
        }
    }

    [[noreturn]] void fail(const Token &at, const std::string &msg) const {
        throw ParseError(ParseErrorKind::Syntax, {file_, at.line, at.column, at.column + 1}, msg);
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_{0};
    std::size_t line_{1};
    std::size_t col_{1};
};

struct Expr {
    enum class Op { Number, Param, Neg, Add, Sub, Mul, Div, Pow, Call } op{Op::Number};
    double value{0};
    std::string name;
    std::vector<Expr> args;
    Token at;
};

struct BodyCall {
    Token name;
    std::vector<Expr> params;
    std::vector<std::string> args;
    bool barrier{false};
};

struct GateDef {
    std::vector<std::string> params;
    std::vector<std::string> qargs;
    std::vector<BodyCall> body;
};

struct Register {
    std::size_t offset;
    std::size_t size;
};

/// A resolved operand: either one bit or a whole register.
struct Operand {
    std::vector<std::uint32_t> bits;
    bool whole_register{false};
    Token at;
};

struct BuiltinGate {
    GateKind kind;
    std::size_t arity_params;
};

std::optional<BuiltinGate> builtin(std::string_view name) {
    if (name == "U" || name == "u3") {
        return BuiltinGate{GateKind::U, 3};
    }
    if (name == "u2") {
        return BuiltinGate{GateKind::U, 2};
    }
    if (name == "u1") {
        return BuiltinGate{GateKind::P, 1};
    }
    if (name == "CX") {
        return BuiltinGate{GateKind::CX, 0};
    }
    auto kind = gate_kind_from_name(name);
    if (!kind || gate_info(*kind).is_directive()) {
        return std::nullopt;
    }
    return BuiltinGate{*kind, static_cast<std::size_t>(gate_info(*kind).num_params)};
}

std::vector<double> builtin_params(std::string_view name, std::vector<double> values) {
    if (name == "u2") {
        return {std::numbers::pi / 2, values[0], values[1]};
    }
    return values;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string file) : toks_(std::move(tokens)), file_(std::move(file)) {}

    Circuit run() {
        header();
        while (peek().type != Tok::End) {
            statement();
        }
        return Circuit::from_instructions(num_qubits_, num_clbits_, std::move(instructions_));
    }

  private:
    // ---- token helpers -------------------------------------------------
    const Token &peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token &next() {
        const Token &t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) {
            ++pos_;
        }
        return t;
    }
    bool is_symbol(std::string_view s) const { return peek().type == Tok::Symbol && peek().text == s; }
    bool accept(std::string_view s) {
        if (is_symbol(s)) {
            next();
            return true;
        }
        return false;
    }
    const Token &expect(std::string_view s) {
        if (!is_symbol(s)) {
            syntax(peek(), "expected '" + std::string(s) + "' but found " + describe(peek()));
        }
        return next();
    }
    const Token &expect_ident(const char *what) {
        if (peek().type != Tok::Ident) {
            syntax(peek(), std::string("expected ") + what + " but found " + describe(peek()));
        }
        return next();
    }
    std::size_t expect_int() {
        const Token &t = peek();
        if (t.type != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
            syntax(t, "expected integer but found " + describe(t));
        }
        next();
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || value > kMaxTotalBits) {
            fail(ParseErrorKind::Semantic, t, "integer too large: " + t.text);
        }
        return value;
    }
    static std::string describe(const Token &t) {
        switch (t.type) {
        case Tok::End: return "end of input";
        case Tok::String: return "string \"" + t.text + "\"";
        default: return "'" + t.text + "'";
        }
    }

    SourceSpan span(const Token &t) const {
        return {file_, t.line, t.column, t.column + std::max<std::size_t>(t.text.size(), 1)};
    }
    [[noreturn]] void fail(ParseErrorKind kind, const Token &t, const std::string &msg) const {
        throw ParseError(kind, span(t), msg);
    }
    [[noreturn]] void syntax(const Token &t, const std::string &msg) const { fail(ParseErrorKind::Syntax, t, msg); }

    // ---- statements ----------------------------------------------------
    void header() {
        const Token &kw = peek();
        if (kw.type != Tok::Ident || kw.text != "OPENQASM") {
            syntax(kw, "expected 'OPENQASM 2.0;' header");
        }
        next();
        const Token &ver = peek();
        if (ver.type != Tok::Number) {
            syntax(ver, "expected version number");
        }
        next();
        if (ver.text != "2.0" && ver.text != "2") {
            if (!ver.text.empty() && ver.text[0] == '3') {
                fail(ParseErrorKind::Version, ver, "OpenQASM 3 is not supported; only OpenQASM 2.0 is accepted");
            }
            fail(ParseErrorKind::Version, ver, "unsupported OpenQASM version " + ver.text);
        }
        expect(";");
    }

    void statement() {
        const Token &t = peek();
        if (t.type != Tok::Ident) {
            syntax(t, "expected statement but found " + describe(t));
        }
        const std::string &w = t.text;
        if (w == "include") {
            next();
            const Token &path = peek();
            if (path.type != Tok::String) {
                syntax(path, "expected include path string");
            }
            next();
            if (path.text != "qelib1.inc") {
                fail(ParseErrorKind::Semantic, path, "only \"qelib1.inc\" can be included");
            }
            expect(";");
        } else if (w == "qreg" || w == "creg") {
            declaration(w == "qreg");
        } else if (w == "gate") {
            gate_definition();
        } else if (w == "opaque") {
            fail(ParseErrorKind::UnsupportedGate, t, "opaque gates are not supported");
        } else if (w == "measure") {
            measure();
        } else if (w == "barrier") {
            next();
            auto ops = operand_list(true);
            expect(";");
            emit_barrier(ops);
        } else if (w == "reset") {
            fail(ParseErrorKind::UnsupportedGate, t, "unsupported instruction 'reset'");
        } else if (w == "if") {
            fail(ParseErrorKind::UnsupportedGate, t, "classical control flow ('if') is not supported");
        } else {
            gate_call();
        }
    }

    void declaration(bool quantum) {
        next();
        const Token &name = expect_ident("register name");
        expect("[");
        const Token &size_tok = peek();
        const std::size_t size = expect_int();
        expect("]");
        expect(";");
        if (qregs_.count(name.text) != 0U || cregs_.count(name.text) != 0U) {
            fail(ParseErrorKind::Semantic, name, "register '" + name.text + "' already declared");
        }
        if (size == 0 || size > kMaxRegisterSize) {
            fail(ParseErrorKind::Semantic, size_tok, "invalid register size " + size_tok.text);
        }
        std::size_t &total = quantum ? num_qubits_ : num_clbits_;
        if (total + size > kMaxTotalBits) {
            fail(ParseErrorKind::Semantic, size_tok, "too many bits declared");
        }
        (quantum ? qregs_ : cregs_)[name.text] = Register{total, size};
        total += size;
    }

    Operand operand(bool quantum) {
        const Token &name = expect_ident(quantum ? "qubit argument" : "classical argument");
        const auto &regs = quantum ? qregs_ : cregs_;
        auto it = regs.find(name.text);
        if (it == regs.end()) {
            fail(ParseErrorKind::Semantic, name,
                 std::string("undeclared ") + (quantum ? "quantum" : "classical") + " register '" + name.text + "'");
        }
        Operand op;
        op.at = name;
        if (accept("[")) {
            const Token &idx_tok = peek();
            const std::size_t idx = expect_int();
            expect("]");
            if (idx >= it->second.size) {
                fail(ParseErrorKind::Semantic, idx_tok,
                     "index " + idx_tok.text + " out of range for register '" + name.text + "'");
            }
            op.bits.push_back(static_cast<std::uint32_t>(it->second.offset + idx));
        } else {
            op.whole_register = true;
            for (std::size_t i = 0; i < it->second.size; ++i) {
                op.bits.push_back(static_cast<std::uint32_t>(it->second.offset + i));
            }
        }
        return op;
    }

    std::vector<Operand> operand_list(bool quantum) {
        std::vector<Operand> out;
        out.push_back(operand(quantum));
        while (accept(",")) {
            out.push_back(operand(quantum));
        }
        return out;
    }

    /// Number of broadcast repetitions; whole registers must agree in size.
    std::size_t broadcast_width(const std::vector<Operand> &ops) const {
        std::size_t width = 1;
        bool seen = false;
        for (const auto &op : ops) {
            if (!op.whole_register) {
                continue;
            }
            if (seen && op.bits.size() != width) {
                fail(ParseErrorKind::Semantic, op.at, "register size mismatch in broadcast");
            }
            width = op.bits.size();
            seen = true;
        }
        return width;
    }

    void measure() {
        const Token &kw = next();
        Operand q = operand(true);
        expect("->");
        Operand c = operand(false);
        expect(";");
        if (q.bits.size() != c.bits.size() || q.whole_register != c.whole_register) {
            fail(ParseErrorKind::Semantic, kw, "measure operands have different sizes");
        }
        for (std::size_t i = 0; i < q.bits.size(); ++i) {
            emit(kw, GateKind::Measure, {q.bits[i]}, {}, {c.bits[i]});
        }
    }

    void emit_barrier(const std::vector<Operand> &ops) {
        std::vector<Qubit> qubits;
        for (const auto &op : ops) {
            for (auto b : op.bits) {
                if (std::find(qubits.begin(), qubits.end(), b) == qubits.end()) {
                    qubits.push_back(b);
                }
            }
        }
        emit(ops.front().at, GateKind::Barrier, std::move(qubits), {}, {});
    }

    void gate_call() {
        const Token &name = next();
        std::vector<Expr> exprs;
        if (accept("(")) {
            if (!is_symbol(")")) {
                exprs.push_back(expression(0));
                while (accept(",")) {
                    exprs.push_back(expression(0));
                }
            }
            expect(")");
        }
        auto ops = operand_list(true);
        expect(";");

        std::vector<double> values;
        values.reserve(exprs.size());
        for (const auto &e : exprs) {
            values.push_back(evaluate(e, {}));
        }
        const std::size_t width = broadcast_width(ops);
        for (std::size_t rep = 0; rep < width; ++rep) {
            std::vector<Qubit> qubits;
            for (const auto &op : ops) {
                qubits.push_back(op.whole_register ? op.bits[rep] : op.bits.front());
            }
            apply(name, values, qubits);
        }
    }

    /// Emits a standard gate or inlines a user definition.
    void apply(const Token &name, const std::vector<double> &params, const std::vector<Qubit> &qubits) {
        if (auto b = builtin(name.text)) {
            if (params.size() != b->arity_params) {
                fail(ParseErrorKind::Semantic, name,
                     "gate '" + name.text + "' expects " + std::to_string(b->arity_params) + " parameter(s), got " +
                         std::to_string(params.size()));
            }
            const int arity = gate_info(b->kind).num_qubits;
            if (qubits.size() != static_cast<std::size_t>(arity)) {
                fail(ParseErrorKind::Semantic, name,
                     "gate '" + name.text + "' expects " + std::to_string(arity) + " qubit(s), got " +
                         std::to_string(qubits.size()));
            }
            emit(name, b->kind, qubits, builtin_params(name.text, params), {});
            return;
        }
        auto it = defs_.find(name.text);
        if (it == defs_.end()) {
            fail(ParseErrorKind::UnsupportedGate, name, "unsupported gate '" + name.text + "'");
        }
        const GateDef &def = it->second;
        if (params.size() != def.params.size() || qubits.size() != def.qargs.size()) {
            fail(ParseErrorKind::Semantic, name, "wrong number of arguments for gate '" + name.text + "'");
        }
        std::map<std::string, double, std::less<>> bindings;
        for (std::size_t i = 0; i < params.size(); ++i) {
            bindings[def.params[i]] = params[i];
        }
        std::map<std::string, Qubit, std::less<>> qmap;
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            qmap[def.qargs[i]] = qubits[i];
        }
        for (const auto &call : def.body) {
            std::vector<Qubit> inner_q;
            for (const auto &a : call.args) {
                inner_q.push_back(qmap.at(a));
            }
            if (call.barrier) {
                emit(call.name, GateKind::Barrier, inner_q, {}, {});
                continue;
            }
            std::vector<double> inner_p;
            for (const auto &e : call.params) {
                inner_p.push_back(evaluate(e, bindings));
            }
            apply(call.name, inner_p, inner_q);
        }
    }

    void emit(const Token &at, GateKind kind, std::vector<Qubit> qubits, std::vector<double> params,
              std::vector<Clbit> clbits) {
        if (instructions_.size() >= kMaxInstructions) {
            fail(ParseErrorKind::Semantic, at, "program expands to too many instructions");
        }
        for (double p : params) {
            if (!std::isfinite(p)) {
                fail(ParseErrorKind::Semantic, at, "parameter does not evaluate to a finite number");
            }
        }
        GateInstruction g{kind, std::move(params), std::move(qubits), std::move(clbits), next_id_};
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            for (std::size_t j = i + 1; j < g.qubits.size(); ++j) {
                if (g.qubits[i] == g.qubits[j] && kind != GateKind::Barrier) {
                    fail(ParseErrorKind::Semantic, at, "duplicate operand in '" + std::string(gate_name(kind)) + "'");
                }
            }
        }
        ++next_id_;
        instructions_.emplace_back(std::move(g));
    }

    void gate_definition() {
        next();
        const Token &name = expect_ident("gate name");
        if (defs_.count(name.text) != 0U) {
            fail(ParseErrorKind::Semantic, name, "gate '" + name.text + "' already defined");
        }
        GateDef def;
        if (accept("(")) {
            if (!is_symbol(")")) {
                def.params.push_back(expect_ident("parameter name").text);
                while (accept(",")) {
                    def.params.push_back(expect_ident("parameter name").text);
                }
            }
            expect(")");
        }
        def.qargs.push_back(expect_ident("qubit argument").text);
        while (accept(",")) {
            def.qargs.push_back(expect_ident("qubit argument").text);
        }
        expect("{");
        formal_params_ = &def.params;
        while (!is_symbol("}")) {
            if (peek().type == Tok::End) {
                syntax(peek(), "unterminated gate body");
            }
            def.body.push_back(body_call(def));
        }
        formal_params_ = nullptr;
        expect("}");
        // Definitions of natively supported kinds are checked but the native
        // kind is kept, so `gate ecr a,b {...}` still yields an ecr instruction.
        if (!builtin(name.text)) {
            defs_[name.text] = std::move(def);
        }
    }

    BodyCall body_call(const GateDef &def) {
        BodyCall call;
        call.name = next();
        if (call.name.type != Tok::Ident) {
            syntax(call.name, "expected gate call in gate body but found " + describe(call.name));
        }
        if (call.name.text == "barrier") {
            call.barrier = true;
        } else if (call.name.text == "measure" || call.name.text == "reset" || call.name.text == "if") {
            fail(ParseErrorKind::Semantic, call.name, "'" + call.name.text + "' is not allowed in a gate body");
        } else if (!builtin(call.name.text) && defs_.count(call.name.text) == 0U) {
            fail(ParseErrorKind::UnsupportedGate, call.name, "unsupported gate '" + call.name.text + "'");
        }
        if (!call.barrier && accept("(")) {
            if (!is_symbol(")")) {
                call.params.push_back(expression(0));
                while (accept(",")) {
                    call.params.push_back(expression(0));
                }
            }
            expect(")");
        }
        auto arg = [&] {
            const Token &a = expect_ident("qubit argument");
            if (std::find(def.qargs.begin(), def.qargs.end(), a.text) == def.qargs.end()) {
                fail(ParseErrorKind::Semantic, a, "unknown qubit argument '" + a.text + "'");
            }
            if (is_symbol("[")) {
                syntax(peek(), "indexed arguments are not allowed in a gate body");
            }
            call.args.push_back(a.text);
        };
        arg();
        while (accept(",")) {
            arg();
        }
        expect(";");
        return call;
    }

    // ---- expressions ---------------------------------------------------
    Expr expression(int depth) {
        Expr lhs = term(depth);
        while (is_symbol("+") || is_symbol("-")) {
            const Token &op = next();
            Expr node;
            node.op = op.text == "+" ? Expr::Op::Add : Expr::Op::Sub;
            node.at = op;
            node.args.push_back(std::move(lhs));
            node.args.push_back(term(depth));
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr term(int depth) {
        Expr lhs = unary(depth);
        while (is_symbol("*") || is_symbol("/")) {
            const Token &op = next();
            Expr node;
            node.op = op.text == "*" ? Expr::Op::Mul : Expr::Op::Div;
            node.at = op;
            node.args.push_back(std::move(lhs));
            node.args.push_back(unary(depth));
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr unary(int depth) {
        if (depth > kMaxExpressionDepth) {
            fail(ParseErrorKind::Semantic, peek(), "expression nested too deeply");
        }
        if (is_symbol("-")) {
            Expr node;
            node.op = Expr::Op::Neg;
            node.at = next();
            node.args.push_back(unary(depth + 1));
            return node;
        }
        if (accept("+")) {
            return unary(depth + 1);
        }
        Expr base = primary(depth);
        if (is_symbol("^")) {
            Expr node;
            node.op = Expr::Op::Pow;
            node.at = next();
            node.args.push_back(std::move(base));
            node.args.push_back(unary(depth + 1));
            return node;
        }
        return base;
    }

    Expr primary(int depth) {
        const Token &t = peek();
        Expr e;
        e.at = t;
        if (t.type == Tok::Number) {
            next();
            e.op = Expr::Op::Number;
            e.value = std::strtod(t.text.c_str(), nullptr);
            return e;
        }
        if (t.type == Tok::Ident) {
            next();
            if (t.text == "pi") {
                e.op = Expr::Op::Number;
                e.value = std::numbers::pi;
                return e;
            }
            static const char *const kFunctions[] = {"sin", "cos", "tan", "exp", "ln", "sqrt"};
            for (const char *f : kFunctions) {
                if (t.text == f) {
                    expect("(");
                    e.op = Expr::Op::Call;
                    e.name = t.text;
                    e.args.push_back(expression(depth + 1));
                    expect(")");
                    return e;
                }
            }
            if (formal_params_ == nullptr ||
                std::find(formal_params_->begin(), formal_params_->end(), t.text) == formal_params_->end()) {
                fail(ParseErrorKind::Semantic, t, "unknown identifier '" + t.text + "' in expression");
            }
            e.op = Expr::Op::Param;
            e.name = t.text;
            return e;
        }
        if (accept("(")) {
            Expr inner = expression(depth + 1);
            expect(")");
            return inner;
        }
        syntax(t, "expected expression but found " + describe(t));
    }

    double evaluate(const Expr &e, const std::map<std::string, double, std::less<>> &bindings) const {
        switch (e.op) {
        case Expr::Op::Number: return e.value;
        case Expr::Op::Param: {
            auto it = bindings.find(e.name);
            if (it == bindings.end()) {
                fail(ParseErrorKind::Semantic, e.at, "unbound parameter '" + e.name + "'");
            }
            return it->second;
        }
        case Expr::Op::Neg: return -evaluate(e.args[0], bindings);
        case Expr::Op::Add: return evaluate(e.args[0], bindings) + evaluate(e.args[1], bindings);
        case Expr::Op::Sub: return evaluate(e.args[0], bindings) - evaluate(e.args[1], bindings);
        case Expr::Op::Mul: return evaluate(e.args[0], bindings) * evaluate(e.args[1], bindings);
        case Expr::Op::Div: return evaluate(e.args[0], bindings) / evaluate(e.args[1], bindings);
        case Expr::Op::Pow: return std::pow(evaluate(e.args[0], bindings), evaluate(e.args[1], bindings));
        case Expr::Op::Call: {
            const double x = evaluate(e.args[0], bindings);
            if (e.name == "sin") return std::sin(x);
            if (e.name == "cos") return std::cos(x);
            if (e.name == "tan") return std::tan(x);
            if (e.name == "exp") return std::exp(x);
            if (e.name == "ln") return std::log(x);
            return std::sqrt(x);
        }
        }
        return 0.0;
    }

    std::vector<Token> toks_;
    std::string file_;
    std::size_t pos_{0};
    std::map<std::string, Register, std::less<>> qregs_;
    std::map<std::string, Register, std::less<>> cregs_;
    std::map<std::string, GateDef, std::less<>> defs_;
    const std::vector<std::string> *formal_params_{nullptr};
    std::size_t num_qubits_{0};
    std::size_t num_clbits_{0};
    std::vector<Instruction> instructions_;
    InstructionId next_id_{0};
};

}  // namespace

Circuit parse(std::string_view source, std::string_view file_name) {
    std::string file(file_name);
    auto tokens = Lexer(source, file).run();
    return Parser(std::move(tokens), file).run();
}

Circuit parse_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(ParseErrorKind::Io, {path.string(), 0, 0, 0}, "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

}  // namespace qcover::qasm
