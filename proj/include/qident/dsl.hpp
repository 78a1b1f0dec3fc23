#pragma once

// Text syntax for product/quotient expressions over q-series leaves:
//
//   expr   := term (('*' | '/') term)*
//   term   := factor ('^' sint)?
//   factor := 'eta' '(' uint ')' | 'poch' '(' uint ',' uint ')'
//           | 'divser' '(' chi ',' uint ')' | 'lambert3' '(' chi ')'
//           | 'lambert2' '(' chi ')' | '(' expr ')' | uint
//   chi    := 'kron' '(' sint ')'
//   sint   := ['-'] uint
//
// Whitespace is insignificant. '^' does not chain: a^2^3 is rejected.

#include "qident/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qident::dsl {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
        : std::runtime_error(format(position, expected, found)), position_(position), expected_(std::move(expected)) {}

    /// Byte offset of the offending token (text length for end of input).
    std::size_t position() const { return position_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(std::size_t position, const std::vector<std::string>& expected,
                              const std::string& found) {
        std::string msg = "parse error at offset " + std::to_string(position) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
        return msg + ", found " + found;
    }

    std::size_t position_;
    std::vector<std::string> expected_;
};

namespace detail {

enum class Tok { Ident, UInt, LParen, RParen, Comma, Star, Slash, Caret, Minus, End };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t begin;
    std::size_t end;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Tok::End, {}, start, start};
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return {Tok::Ident, src_.substr(start, pos_ - start), start, pos_};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return {Tok::UInt, src_.substr(start, pos_ - start), start, pos_};
        }
        ++pos_;
        const auto one = src_.substr(start, 1);
        switch (c) {
            case '(': return {Tok::LParen, one, start, pos_};
            case ')': return {Tok::RParen, one, start, pos_};
            case ',': return {Tok::Comma, one, start, pos_};
            case '*': return {Tok::Star, one, start, pos_};
            case '/': return {Tok::Slash, one, start, pos_};
            case '^': return {Tok::Caret, one, start, pos_};
            case '-': return {Tok::Minus, one, start, pos_};
            default: throw ParseError(start, {"an expression token"}, "'" + std::string(one) + "'");
        }
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { advance(); }

    Expr parse_all() {
        Expr e = parse_expr();
        if (cur_.kind != Tok::End) fail({"'*'", "'/'", "end of input"});
        return e;
    }

private:
    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? std::string("end of input") : "'" + std::string(t.text) + "'";
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(cur_.begin, std::move(expected), describe(cur_));
    }

    void advance() { cur_ = lex_.next(); }

    Token expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail({what});
        Token t = cur_;
        advance();
        return t;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const bool mul = cur_.kind == Tok::Star;
            advance();
            Expr rhs = parse_term();
            const SourceSpan span{lhs.span().begin, rhs.span().end};
            lhs = mul ? Expr::make(node::Mul{lhs, rhs}, span) : Expr::make(node::Div{lhs, rhs}, span);
        }
        return lhs;
    }

    Expr parse_term() {
        Expr base = parse_factor();
        if (cur_.kind != Tok::Caret) return base;
        advance();
        const auto [exponent, end] = parse_sint();
        return Expr::make(node::PowInt{base, exponent}, {base.span().begin, end});
    }

    std::pair<long, std::size_t> parse_sint() {
        bool negative = false;
        if (cur_.kind == Tok::Minus) {
            negative = true;
            advance();
        }
        const Token t = cur_;
        if (t.kind != Tok::UInt) fail({"an integer"});
        long v = 0;
        const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (res.ec != std::errc{}) fail({"an integer that fits in 64 bits"});
        advance();
        return {negative ? -v : v, t.end};
    }

    std::uint64_t parse_positive() {
        const Token t = cur_;
        if (t.kind != Tok::UInt) fail({"a positive integer"});
        std::uint64_t v = 0;
        const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (res.ec != std::errc{} || v == 0) fail({"a positive integer"});
        advance();
        return v;
    }

    KroneckerChar parse_chi() {
        if (cur_.kind != Tok::Ident || cur_.text != "kron") fail({"'kron'"});
        advance();
        expect(Tok::LParen, "'('");
        const Token at = cur_;
        const auto [top, end] = parse_sint();
        if (top == 0) throw ParseError(at.begin, {"a nonzero character argument"}, "'0'");
        expect(Tok::RParen, "')'");
        return KroneckerChar(top);
    }

    Expr parse_factor() {
        const Token start = cur_;
        if (start.kind == Tok::UInt) {
            advance();
            return Expr::make(node::IntConst{BigInt(std::string(start.text))}, {start.begin, start.end});
        }
        if (start.kind == Tok::LParen) {
            advance();
            Expr inner = parse_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (start.kind != Tok::Ident) fail({"'eta'", "'poch'", "'divser'", "'lambert3'", "'lambert2'", "'('", "an integer"});

        const std::string_view name = start.text;
        auto finish = [&](auto n) {
            const Token close = expect(Tok::RParen, "')'");
            return Expr::make(std::move(n), {start.begin, close.end});
        };
        if (name == "eta") {
            advance();
            expect(Tok::LParen, "'('");
            const auto d = parse_positive();
            return finish(node::Eta{d});
        }
        if (name == "poch") {
            advance();
            expect(Tok::LParen, "'('");
            const auto c = parse_positive();
            expect(Tok::Comma, "','");
            const auto b = parse_positive();
            return finish(node::Poch{c, b});
        }
        if (name == "divser") {
            advance();
            expect(Tok::LParen, "'('");
            const KroneckerChar chi = parse_chi();
            expect(Tok::Comma, "','");
            const auto w = parse_positive();
            return finish(node::DivSer{chi, static_cast<unsigned>(w)});
        }
        if (name == "lambert3" || name == "lambert2") {
            advance();
            expect(Tok::LParen, "'('");
            const KroneckerChar chi = parse_chi();
            if (name == "lambert3") return finish(node::LambertCubic{chi});
            return finish(node::LambertSquare{chi});
        }
        fail({"'eta'", "'poch'", "'divser'", "'lambert3'", "'lambert2'", "'('", "an integer"});
    }

    Lexer lex_;
    Token cur_{Tok::End, {}, 0, 0};
};

}  // namespace detail

/// Parses a whole expression; throws ParseError on any deviation from the grammar.
inline Expr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

namespace detail {

inline bool is_product(const Expr& e) { return e.get_if<node::Mul>() || e.get_if<node::Div>(); }

inline std::optional<std::string> render_impl(const Expr& e) {
    using R = std::optional<std::string>;
    return std::visit(
        [&](const auto& n) -> R {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::Poch>) {
                return "poch(" + std::to_string(n.c) + "," + std::to_string(n.b) + ")";
            } else if constexpr (std::is_same_v<T, node::Eta>) {
                return "eta(" + std::to_string(n.period) + ")";
            } else if constexpr (std::is_same_v<T, node::DivSer>) {
                return "divser(kron(" + std::to_string(n.chi.top()) + ")," + std::to_string(n.weight) + ")";
            } else if constexpr (std::is_same_v<T, node::LambertCubic>) {
                return "lambert3(kron(" + std::to_string(n.chi.top()) + "))";
            } else if constexpr (std::is_same_v<T, node::LambertSquare>) {
                return "lambert2(kron(" + std::to_string(n.chi.top()) + "))";
            } else if constexpr (std::is_same_v<T, node::IntConst>) {
                if (n.value < 0) return std::nullopt;
                return n.value.get_str();
            } else if constexpr (std::is_same_v<T, node::Mul> || std::is_same_v<T, node::Div>) {
                const R lhs = render_impl(n.lhs);
                const R rhs = render_impl(n.rhs);
                if (!lhs || !rhs) return std::nullopt;
                const std::string right = is_product(n.rhs) ? "(" + *rhs + ")" : *rhs;
                return *lhs + (std::is_same_v<T, node::Mul> ? "*" : "/") + right;
            } else if constexpr (std::is_same_v<T, node::PowInt>) {
                const R base = render_impl(n.base);
                if (!base) return std::nullopt;
                const bool wrap = is_product(n.base) || n.base.template get_if<node::PowInt>();
                return (wrap ? "(" + *base + ")" : *base) + "^" + std::to_string(n.exponent);
            } else {
                // General Lambert specs, sums and differences have no text form.
                return std::nullopt;
            }
        },
        e.value());
}

}  // namespace detail

/// Canonical text for an expression, or nullopt when it uses nodes outside the grammar.
inline std::optional<std::string> render(const Expr& e) { return detail::render_impl(e); }

inline Series eval_expr(const Expr& ast, std::size_t order) {
    if (order == 0) throw std::invalid_argument("eval_expr: order must be >= 1");
    return evaluate(ast, order);
}

}  // namespace qident::dsl
