#pragma once

// Truncated formal power series in q with exact rational coefficients.
//
// A Series carries its truncation order N explicitly: it knows c_0..c_{N-1}
// and nothing beyond. Binary operations produce order min(N_a, N_b).

#include "qident/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qident {

class Series {
public:
    /// Zero series of the given order.
    explicit Series(std::size_t order) : coeffs_(checked_order(order)) {}

    explicit Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        checked_order(coeffs_.size());
    }

    /// Series with leading coefficients taken from `values` (zero-padded or truncated to `order`).
    static Series from_integers(std::span<const BigInt> values, std::size_t order) {
        Series s(order);
        const std::size_t n = std::min(order, values.size());
        for (std::size_t i = 0; i < n; ++i) s.coeffs_[i] = values[i];
        return s;
    }

    static Series from_integers(std::initializer_list<long> values, std::size_t order) {
        Series s(order);
        std::size_t i = 0;
        for (const long v : values) {
            if (i >= order) break;
            s.coeffs_[i++] = v;
        }
        return s;
    }

    static Series constant(const Rational& c, std::size_t order) {
        Series s(order);
        s.coeffs_[0] = c;
        return s;
    }

    static Series one(std::size_t order) { return constant(Rational(1), order); }

    std::size_t order() const { return coeffs_.size(); }

    const Rational& coefficient(std::size_t i) const {
        if (i >= coeffs_.size())
            throw std::out_of_range("coefficient index " + std::to_string(i) + " >= order " +
                                    std::to_string(coeffs_.size()));
        return coeffs_[i];
    }

    std::span<const Rational> coefficients() const { return coeffs_; }

    bool is_integral() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return qident::is_integral(c); });
    }

    Series truncated(std::size_t order) const {
        if (order > coeffs_.size()) throw std::invalid_argument("cannot extend a truncated series");
        return Series(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order)));
    }

    friend Series operator+(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i < r.order(); ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return r;
    }

    friend Series operator-(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i < r.order(); ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return r;
    }

    friend Series operator-(const Series& a) {
        Series r(a.order());
        for (std::size_t i = 0; i < r.order(); ++i) r.coeffs_[i] = -a.coeffs_[i];
        return r;
    }

    friend Series operator*(const Rational& k, const Series& a) {
        Series r(a.order());
        for (std::size_t i = 0; i < r.order(); ++i) r.coeffs_[i] = k * a.coeffs_[i];
        return r;
    }

    friend Series operator*(const Series& a, const Series& b);

    /// Equality of the coefficients both operands know, i.e. up to the common order.
    friend bool operator==(const Series& a, const Series& b) {
        const std::size_t n = std::min(a.order(), b.order());
        return std::equal(a.coeffs_.begin(), a.coeffs_.begin() + static_cast<std::ptrdiff_t>(n), b.coeffs_.begin());
    }

private:
    static std::size_t checked_order(std::size_t order) {
        if (order == 0) throw std::invalid_argument("series order must be positive");
        return order;
    }

    std::vector<Rational> coeffs_;
};

namespace detail {

inline std::vector<BigInt> numerators(const Series& a) {
    std::vector<BigInt> out;
    out.reserve(a.order());
    for (const auto& c : a.coefficients()) out.push_back(c.get_num());
    return out;
}

inline Series from_numerators(std::vector<BigInt>&& values) {
    std::vector<Rational> coeffs;
    coeffs.reserve(values.size());
    for (auto& v : values) coeffs.emplace_back(v);
    return Series(std::move(coeffs));
}

}  // namespace detail

inline Series operator*(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    const auto ac = a.coefficients();
    const auto bc = b.coefficients();
    if (a.is_integral() && b.is_integral()) {
        std::vector<BigInt> x = detail::numerators(a), y = detail::numerators(b);
        std::vector<BigInt> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; i + j < n; ++j) {
                if (y[j] == 0) continue;
                mpz_addmul(out[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
            }
        }
        return detail::from_numerators(std::move(out));
    }
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ac[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) out[i + j] += ac[i] * bc[j];
    }
    return Series(std::move(out));
}

/// Multiplicative inverse; requires a nonzero constant term.
inline Series inverse(const Series& a) {
    const auto ac = a.coefficients();
    const std::size_t n = a.order();
    if (ac[0] == 0) throw std::domain_error("series inverse: constant term is zero (not a unit)");
    if (a.is_integral() && (ac[0] == 1 || ac[0] == -1)) {
        const std::vector<BigInt> x = detail::numerators(a);
        const bool neg = x[0] < 0;
        std::vector<BigInt> out(n);
        out[0] = x[0];
        for (std::size_t m = 1; m < n; ++m) {
            BigInt acc = 0;
            for (std::size_t k = 1; k <= m; ++k) {
                if (x[k] == 0) continue;
                mpz_addmul(acc.get_mpz_t(), x[k].get_mpz_t(), out[m - k].get_mpz_t());
            }
            out[m] = neg ? BigInt(acc) : BigInt(-acc);
        }
        return detail::from_numerators(std::move(out));
    }
    std::vector<Rational> out(n);
    const Rational inv0 = 1 / ac[0];
    out[0] = inv0;
    for (std::size_t m = 1; m < n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= m; ++k) {
            if (ac[k] == 0) continue;
            acc += ac[k] * out[m - k];
        }
        out[m] = -acc * inv0;
    }
    return Series(std::move(out));
}

/// a^e by repeated squaring; negative e inverts a^|e|.
inline Series pow_int(const Series& a, long e) {
    if (e < 0) {
        if (a.coefficient(0) == 0) throw std::domain_error("series power: negative exponent of a non-unit");
        return inverse(pow_int(a, -e));
    }
    Series result = Series::one(a.order());
    Series base = a;
    auto k = static_cast<unsigned long>(e);
    while (k != 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k != 0) base = base * base;
    }
    return result;
}

/// a(q^j), truncated to the order of a.
inline Series substitute_power(const Series& a, std::size_t j) {
    if (j == 0) throw std::invalid_argument("substitute_power: j must be positive");
    std::vector<Rational> out(a.order());
    const auto ac = a.coefficients();
    for (std::size_t m = 0; m * j < a.order(); ++m) out[m * j] = ac[m];
    return Series(std::move(out));
}

/// First index below the common order where the coefficients differ.
inline std::optional<std::size_t> first_mismatch(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    const auto ac = a.coefficients();
    const auto bc = b.coefficients();
    for (std::size_t i = 0; i < n; ++i)
        if (ac[i] != bc[i]) return i;
    return std::nullopt;
}

}  // namespace qident
