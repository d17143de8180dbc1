#pragma once

// OpenQASM 2.0 subset reader/writer: a single quantum register and the
// Clifford+T vocabulary of GateKind. barrier/measure/creg/include are
// accepted and dropped.

#include "lsc/circuit.hpp"
#include "lsc/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lsc {

namespace qasm_detail {

enum class Tok { Ident, Number, String, Symbol, Arrow, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            Token t{Tok::End, {}, line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
                t.type = Tok::Ident;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                while (pos_ < src_.size()) {
                    const char d = src_[pos_];
                    const bool exp_sign = (d == '+' || d == '-') && !t.text.empty() &&
                                          (t.text.back() == 'e' || t.text.back() == 'E');
                    if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || d == 'e' ||
                        d == 'E' || exp_sign) {
                        t.text += advance();
                    } else {
                        break;
                    }
                }
                t.type = Tok::Number;
            } else if (c == '"') {
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"') t.text += advance();
                if (pos_ >= src_.size()) throw SyntaxError("unterminated string", t.line, t.col);
                advance();
                t.type = Tok::String;
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                advance();
                advance();
                t.type = Tok::Arrow;
                t.text = "->";
            } else if (std::string_view("[](),;+-*/").find(c) != std::string_view::npos) {
                t.text = std::string(1, advance());
                t.type = Tok::Symbol;
            } else {
                throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
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
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> toks, std::string name) : toks_(std::move(toks)) {
        circuit_.name = std::move(name);
    }

    Circuit run() {
        while (peek().type != Tok::End) statement();
        if (!reg_) {
            const Token& t = peek();
            throw SyntaxError("missing qreg declaration", t.line, t.col);
        }
        return std::move(circuit_);
    }

private:
    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw SyntaxError(msg, t.line, t.col);
    }

    void expect_symbol(char c) {
        const Token& t = next();
        if (t.type != Tok::Symbol || t.text[0] != c) {
            fail(t, std::string("expected '") + c + "'");
        }
    }

    bool accept_symbol(char c) {
        if (peek().type == Tok::Symbol && peek().text[0] == c) {
            next();
            return true;
        }
        return false;
    }

    std::size_t expect_int() {
        const Token& t = next();
        std::size_t v = 0;
        if (t.type != Tok::Number) fail(t, "expected integer");
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || p != t.text.data() + t.text.size()) fail(t, "expected integer");
        return v;
    }

    void skip_to_semicolon() {
        while (peek().type != Tok::End && !(peek().type == Tok::Symbol && peek().text == ";")) next();
        expect_symbol(';');
    }

    void statement() {
        const Token& t = next();
        if (t.type != Tok::Ident) fail(t, "expected statement");
        const std::string& kw = t.text;
        if (kw == "OPENQASM") {
            if (next().type != Tok::Number) fail(t, "expected version");
            expect_symbol(';');
        } else if (kw == "include") {
            if (next().type != Tok::String) fail(t, "expected include path");
            expect_symbol(';');
        } else if (kw == "qreg") {
            declare_qreg(t);
        } else if (kw == "creg") {
            const Token& n = next();
            if (n.type != Tok::Ident) fail(n, "expected register name");
            expect_symbol('[');
            expect_int();
            expect_symbol(']');
            expect_symbol(';');
            cregs_.push_back(n.text);
        } else if (kw == "barrier" || kw == "measure") {
            skip_to_semicolon();
        } else if (kw == "gate" || kw == "opaque" || kw == "if") {
            fail(t, "'" + kw + "' statements are not supported");
        } else {
            gate_statement(t);
        }
    }

    void declare_qreg(const Token& at) {
        const Token& n = next();
        if (n.type != Tok::Ident) fail(n, "expected register name");
        expect_symbol('[');
        const std::size_t size = expect_int();
        expect_symbol(']');
        expect_symbol(';');
        if (reg_) throw MultiRegister("more than one qreg (second '" + n.text + "' at line " +
                                      std::to_string(at.line) + ")");
        reg_ = n.text;
        circuit_.n_qubits = size;
    }

    // Returns the qubit list of one argument (a full register expands).
    std::vector<std::size_t> argument() {
        const Token& n = next();
        if (n.type != Tok::Ident) fail(n, "expected qubit argument");
        if (!reg_ || n.text != *reg_) fail(n, "unknown quantum register '" + n.text + "'");
        if (accept_symbol('[')) {
            const Token& it = peek();
            const std::size_t idx = expect_int();
            expect_symbol(']');
            if (idx >= circuit_.n_qubits) fail(it, "qubit index out of range");
            return {idx};
        }
        std::vector<std::size_t> all(circuit_.n_qubits);
        for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
        return all;
    }

    // expr := term (('+'|'-') term)*
    double expr() {
        double v = term();
        for (;;) {
            if (accept_symbol('+')) v += term();
            else if (accept_symbol('-')) v -= term();
            else return v;
        }
    }

    double term() {
        double v = unary();
        for (;;) {
            if (accept_symbol('*')) {
                v *= unary();
            } else if (peek().type == Tok::Symbol && peek().text == "/") {
                const Token& t = next();
                const double d = unary();
                if (d == 0.0) fail(t, "division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (accept_symbol('-')) return -unary();
        if (accept_symbol('+')) return unary();
        const Token& t = next();
        if (t.type == Tok::Symbol && t.text == "(") {
            const double v = expr();
            expect_symbol(')');
            return v;
        }
        if (t.type == Tok::Ident && t.text == "pi") return std::numbers::pi;
        if (t.type == Tok::Number) {
            double v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc{} || p != t.text.data() + t.text.size()) fail(t, "malformed number");
            return v;
        }
        fail(t, "malformed expression");
    }

    void gate_statement(const Token& name_tok) {
        const auto kind = kind_from_qasm(name_tok.text);
        if (!kind) throw UnsupportedGate(name_tok.text);
        if (!reg_) fail(name_tok, "gate before qreg declaration");

        std::optional<double> angle;
        if (*kind == GateKind::RZ) {
            expect_symbol('(');
            angle = expr();
            expect_symbol(')');
            if (!std::isfinite(*angle)) fail(name_tok, "angle must be finite");
        }
        std::vector<std::vector<std::size_t>> args{argument()};
        while (accept_symbol(',')) args.push_back(argument());
        expect_symbol(';');

        const std::size_t arity = *kind == GateKind::CNOT ? 2 : 1;
        if (args.size() != arity) {
            fail(name_tok, std::string(qasm_name(*kind)) + " takes " + std::to_string(arity) +
                               " argument(s)");
        }
        if (arity == 2) {
            if (args[0].size() != 1 || args[1].size() != 1) {
                fail(name_tok, "register broadcast is only supported for single-qubit gates");
            }
            if (args[0][0] == args[1][0]) fail(name_tok, "cx operands must be distinct");
            circuit_.gates.push_back(Gate::cnot(args[0][0], args[1][0]));
            return;
        }
        for (std::size_t q : args[0]) emit_single(*kind, q, angle);
    }

    void emit_single(GateKind kind, std::size_t q, std::optional<double> angle) {
        if (kind == GateKind::RZ) {
            if (auto turns = clifford_quarter_turns(*angle)) {
                static constexpr GateKind lowered[] = {GateKind::H /*unused*/, GateKind::S, GateKind::Z,
                                                       GateKind::Sdg};
                if (*turns != 0) circuit_.gates.push_back(Gate::single(lowered[*turns], q));
                return;
            }
            circuit_.gates.push_back(Gate::rz(q, *angle));
            return;
        }
        circuit_.gates.push_back(Gate::single(kind, q));
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    Circuit circuit_;
    std::optional<std::string> reg_;
    std::vector<std::string> cregs_;
};

}  // namespace qasm_detail

/// Parses OpenQASM 2.0 text. Clifford-angle RZ rotations are lowered to
/// S/Z/Sdg (or dropped at angle 0 mod 2pi).
inline Circuit parse_qasm(std::string_view text, std::string name = "circuit") {
    qasm_detail::Lexer lexer(text);
    qasm_detail::Parser parser(lexer.run(), std::move(name));
    return parser.run();
}

inline Circuit load_qasm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    return parse_qasm(ss.str(), stem);
}

inline std::string to_qasm(const Circuit& c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.n_qubits) + "];\n";
    char buf[64];
    for (const Gate& g : c.gates) {
        out += qasm_name(g.kind);
        if (g.angle) {
            std::snprintf(buf, sizeof buf, "(%.17g)", *g.angle);
            out += buf;
        }
        out += ' ';
        for (std::size_t i = 0; i < g.operands.size(); ++i) {
            if (i) out += ',';
            out += "q[" + std::to_string(g.operands[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

}  // namespace lsc
