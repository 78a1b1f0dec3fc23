#pragma once

// Expression trees over q-series leaves, and their exact evaluation.

#include "qident/arith.hpp"
#include "qident/qforms.hpp"
#include "qident/series.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qident {

/// Byte range [begin, end) in the source text an expression was parsed from.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class Expr;

namespace node {

struct Poch {
    std::uint64_t c;
    std::uint64_t b;
    friend bool operator==(const Poch&, const Poch&) = default;
};
struct Eta {
    std::uint64_t period;
    friend bool operator==(const Eta&, const Eta&) = default;
};
struct DivSer {
    KroneckerChar chi;
    unsigned weight;
    friend bool operator==(const DivSer&, const DivSer&) = default;
};
struct LambertCubic {
    KroneckerChar chi;
    friend bool operator==(const LambertCubic&, const LambertCubic&) = default;
};
struct LambertSquare {
    KroneckerChar chi;
    friend bool operator==(const LambertSquare&, const LambertSquare&) = default;
};
struct LambertGen {
    LambertSpec spec;
    friend bool operator==(const LambertGen&, const LambertGen&) = default;
};
struct IntConst {
    BigInt value;
    friend bool operator==(const IntConst& a, const IntConst& b) { return a.value == b.value; }
};
struct Mul;
struct Div;
struct PowInt;
struct Add;
struct Sub;

}  // namespace node

/// Immutable expression handle. Structural equality ignores source spans.
class Expr {
public:
    using Variant = std::variant<node::Poch, node::Eta, node::DivSer, node::LambertCubic, node::LambertSquare,
                                 node::LambertGen, node::IntConst, node::Mul, node::Div, node::PowInt, node::Add,
                                 node::Sub>;

    template <typename Node>
    static Expr make(Node n, SourceSpan span = {});

    const Variant& value() const;
    const SourceSpan& span() const;

    template <typename Node>
    const Node* get_if() const;

    /// Leaf in the sense of product bookkeeping: anything other than Mul, Div, PowInt.
    bool is_product_atom() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Impl;
    explicit Expr(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

namespace node {

struct Mul {
    Expr lhs, rhs;
    friend bool operator==(const Mul&, const Mul&) = default;
};
struct Div {
    Expr lhs, rhs;
    friend bool operator==(const Div&, const Div&) = default;
};
struct PowInt {
    Expr base;
    long exponent;
    friend bool operator==(const PowInt&, const PowInt&) = default;
};
struct Add {
    Expr lhs, rhs;
    friend bool operator==(const Add&, const Add&) = default;
};
struct Sub {
    Expr lhs, rhs;
    friend bool operator==(const Sub&, const Sub&) = default;
};

}  // namespace node

struct Expr::Impl {
    Variant value;
    SourceSpan span;
};

template <typename Node>
Expr Expr::make(Node n, SourceSpan span) {
    return Expr(std::make_shared<const Impl>(Impl{Variant(std::move(n)), span}));
}

inline const Expr::Variant& Expr::value() const { return impl_->value; }
inline const SourceSpan& Expr::span() const { return impl_->span; }

template <typename Node>
const Node* Expr::get_if() const {
    return std::get_if<Node>(&impl_->value);
}

inline bool Expr::is_product_atom() const {
    return !std::holds_alternative<node::Mul>(value()) && !std::holds_alternative<node::Div>(value()) &&
           !std::holds_alternative<node::PowInt>(value());
}

inline bool operator==(const Expr& a, const Expr& b) { return a.impl_ == b.impl_ || a.value() == b.value(); }

// Builders.

inline Expr poch(std::uint64_t c, std::uint64_t b) { return Expr::make(node::Poch{c, b}); }
inline Expr eta(std::uint64_t period) { return Expr::make(node::Eta{period}); }
inline Expr divser(std::int64_t top, unsigned weight) { return Expr::make(node::DivSer{KroneckerChar(top), weight}); }
inline Expr lambert3(std::int64_t top) { return Expr::make(node::LambertCubic{KroneckerChar(top)}); }
inline Expr lambert2(std::int64_t top) { return Expr::make(node::LambertSquare{KroneckerChar(top)}); }
inline Expr lambert(LambertSpec spec) {
    spec.validate();
    return Expr::make(node::LambertGen{std::move(spec)});
}
inline Expr integer(BigInt v) { return Expr::make(node::IntConst{std::move(v)}); }
inline Expr operator*(Expr a, Expr b) { return Expr::make(node::Mul{std::move(a), std::move(b)}); }
inline Expr operator/(Expr a, Expr b) { return Expr::make(node::Div{std::move(a), std::move(b)}); }
inline Expr operator+(Expr a, Expr b) { return Expr::make(node::Add{std::move(a), std::move(b)}); }
inline Expr operator-(Expr a, Expr b) { return Expr::make(node::Sub{std::move(a), std::move(b)}); }
inline Expr pow(Expr base, long exponent) { return Expr::make(node::PowInt{std::move(base), exponent}); }

/// prod_d eta(d)^{r_d}, with negative exponents collected into a single denominator.
inline Expr eta_product(const EtaQuotient& exponents) {
    std::vector<Expr> num, den;
    for (const auto& [d, r] : exponents) {
        if (r == 0) continue;
        auto& side = r > 0 ? num : den;
        const long a = r > 0 ? r : -r;
        side.push_back(a == 1 ? eta(d) : pow(eta(d), a));
    }
    auto fold = [](std::vector<Expr>& xs) {
        Expr acc = xs.front();
        for (std::size_t i = 1; i < xs.size(); ++i) acc = acc * xs[i];
        return acc;
    };
    if (num.empty() && den.empty()) return integer(1);
    if (den.empty()) return fold(num);
    return (num.empty() ? integer(1) : fold(num)) / fold(den);
}

/// Evaluation failure (non-unit division, negative power of a non-unit) at a source location.
class EvalError : public std::domain_error {
public:
    EvalError(const std::string& what, SourceSpan span) : std::domain_error(what), span_(span) {}
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

enum class EvalStrategy {
    /// Division is multiplication by a series inverse, node by node.
    Direct,
    /// Flatten Mul/Div/PowInt into net integer exponents per distinct atom first.
    ExponentBookkeeping,
};

namespace detail {

inline Series eval_leaf(const Expr& e, std::size_t order);

inline Series checked_inverse(const Series& s, const SourceSpan& span, const char* what) {
    if (s.coefficient(0) == 0) throw EvalError(std::string(what) + " of a series with zero constant term", span);
    return inverse(s);
}

inline Series checked_pow(const Series& s, long e, const SourceSpan& span) {
    if (e < 0 && s.coefficient(0) == 0)
        throw EvalError("negative power of a series with zero constant term", span);
    return pow_int(s, e);
}

inline Series eval_direct(const Expr& e, std::size_t order) {
    return std::visit(
        [&](const auto& n) -> Series {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::Mul>) {
                return eval_direct(n.lhs, order) * eval_direct(n.rhs, order);
            } else if constexpr (std::is_same_v<T, node::Div>) {
                const Series den = eval_direct(n.rhs, order);
                return eval_direct(n.lhs, order) * checked_inverse(den, e.span(), "division");
            } else if constexpr (std::is_same_v<T, node::PowInt>) {
                return checked_pow(eval_direct(n.base, order), n.exponent, e.span());
            } else if constexpr (std::is_same_v<T, node::Add>) {
                return eval_direct(n.lhs, order) + eval_direct(n.rhs, order);
            } else if constexpr (std::is_same_v<T, node::Sub>) {
                return eval_direct(n.lhs, order) - eval_direct(n.rhs, order);
            } else {
                return eval_leaf(e, order);
            }
        },
        e.value());
}

inline Series eval_leaf(const Expr& e, std::size_t order) {
    return std::visit(
        [&](const auto& n) -> Series {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::Poch>) {
                return pochhammer(n.c, n.b, order);
            } else if constexpr (std::is_same_v<T, node::Eta>) {
                return pochhammer(n.period, n.period, order);
            } else if constexpr (std::is_same_v<T, node::DivSer>) {
                return divisor_series(n.chi, n.weight, order);
            } else if constexpr (std::is_same_v<T, node::LambertCubic>) {
                return lambert_cubic(n.chi, order);
            } else if constexpr (std::is_same_v<T, node::LambertSquare>) {
                return lambert_square(n.chi, order);
            } else if constexpr (std::is_same_v<T, node::LambertGen>) {
                return lambert_general(n.spec, order);
            } else if constexpr (std::is_same_v<T, node::IntConst>) {
                return Series::constant(Rational(n.value), order);
            } else {
                return eval_direct(e, order);
            }
        },
        e.value());
}

struct Factor {
    Expr atom;
    long exponent;
};

inline void flatten(const Expr& e, long multiplicity, std::vector<Factor>& out) {
    if (const auto* m = e.get_if<node::Mul>()) {
        flatten(m->lhs, multiplicity, out);
        flatten(m->rhs, multiplicity, out);
    } else if (const auto* d = e.get_if<node::Div>()) {
        flatten(d->lhs, multiplicity, out);
        flatten(d->rhs, -multiplicity, out);
    } else if (const auto* p = e.get_if<node::PowInt>()) {
        flatten(p->base, multiplicity * p->exponent, out);
    } else {
        for (auto& f : out) {
            if (f.atom == e) {
                f.exponent += multiplicity;
                return;
            }
        }
        out.push_back({e, multiplicity});
    }
}

}  // namespace detail

/// Exact evaluation to the given order.
inline Series evaluate(const Expr& e, std::size_t order, EvalStrategy strategy = EvalStrategy::Direct) {
    if (strategy == EvalStrategy::Direct) return detail::eval_direct(e, order);
    std::vector<detail::Factor> factors;
    detail::flatten(e, 1, factors);
    Series result = Series::one(order);
    for (const auto& f : factors) {
        if (f.exponent == 0) continue;
        result = result * detail::checked_pow(detail::eval_direct(f.atom, order), f.exponent, f.atom.span());
    }
    return result;
}

}  // namespace qident
