#pragma once

// Builders for q-Pochhammer products, eta quotients and character-twisted
// Lambert series, all truncated to an explicit order.

#include "qident/arith.hpp"
#include "qident/series.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qident {

/// prod_d (q^d;q^d)_inf^{r_d}; the empty map is the constant 1.
using EtaQuotient = std::map<std::uint64_t, long>;

/// (q^c; q^b)_inf = prod_{k>=0} (1 - q^{c+kb}) to order N.
inline Series pochhammer(std::uint64_t c, std::uint64_t b, std::size_t order) {
    if (c == 0 || b == 0) throw std::invalid_argument("pochhammer: c and b must be positive");
    std::vector<BigInt> out(order);
    out[0] = 1;
    for (std::uint64_t k = c; k < order; k += b)
        for (std::size_t n = order - 1; n >= k; --n) out[n] -= out[n - k];
    return detail::from_numerators(std::move(out));
}

inline Series eta_quotient_series(const EtaQuotient& exponents, std::size_t order) {
    Series result = Series::one(order);
    for (const auto& [period, exponent] : exponents) {
        if (exponent == 0) continue;
        result = result * pow_int(pochhammer(period, period, order), exponent);
    }
    return result;
}

namespace detail {

// sum_{n>=1} chi(n) q^{n-1} sum_{k>=0} coeff(k) q^{kn}
template <typename KCoeff>
Series lambert_by_expansion(const KroneckerChar& chi, std::size_t order, KCoeff coeff) {
    std::vector<BigInt> out(order);
    for (std::size_t n = 1; n <= order; ++n) {
        const int c = chi(n);
        if (c == 0) continue;
        for (std::size_t k = 0, idx = n - 1; idx < order; ++k, idx += n) {
            if (c > 0)
                out[idx] += coeff(k);
            else
                out[idx] -= coeff(k);
        }
    }
    return from_numerators(std::move(out));
}

}  // namespace detail

/// sum_{n>=1} chi(n) q^{n-1} (1+q^n)/(1-q^n)^3, via (1+x)/(1-x)^3 = sum (k+1)^2 x^k.
inline Series lambert_cubic(const KroneckerChar& chi, std::size_t order) {
    return detail::lambert_by_expansion(chi, order, [](std::size_t k) -> BigInt { return BigInt(k + 1) * BigInt(k + 1); });
}

/// sum_{n>=1} chi(n) q^{n-1}/(1-q^n)^2, via 1/(1-x)^2 = sum (k+1) x^k.
inline Series lambert_square(const KroneckerChar& chi, std::size_t order) {
    return detail::lambert_by_expansion(chi, order, [](std::size_t k) -> BigInt { return BigInt(k + 1); });
}

/// Coefficient of q^{m-1} is sum_{d|m} chi(m/d) d^weight.
inline Series divisor_series(const KroneckerChar& chi, unsigned weight, std::size_t order) {
    std::vector<BigInt> out(order);
    for (std::size_t m = 1; m <= order; ++m) out[m - 1] = twisted_divisor_sum(m, chi, weight);
    return detail::from_numerators(std::move(out));
}

/// General Lambert-type sum
///
///   sum_{k>=0} sign(k) q^{e(k)} P(x_k) / (1 - x_k)^r,   x_k = q^{step*k + shift},
///
/// with e(k) = (quadratic*k^2 + linear*k)/2 + constant and sign(k) read
/// cyclically from `sign_pattern`.
struct LambertSpec {
    std::vector<int> sign_pattern{1};
    long quadratic = 0;
    long linear = 2;
    long constant = 0;
    std::uint64_t step = 1;
    std::uint64_t shift = 1;
    unsigned power = 1;
    std::vector<long> numerator{1};

    long exponent(long k) const { return (quadratic * k * k + linear * k) / 2 + constant; }

    /// True once e(k) is nondecreasing from k onward.
    bool exponent_increasing_from(long k) const { return quadratic * (2 * k + 1) + linear > 0; }

    int sign(std::uint64_t k) const { return sign_pattern[k % sign_pattern.size()]; }

    friend bool operator==(const LambertSpec&, const LambertSpec&) = default;

    void validate() const {
        if (sign_pattern.empty()) throw std::invalid_argument("LambertSpec: empty sign pattern");
        for (const int s : sign_pattern)
            if (s != 1 && s != -1) throw std::invalid_argument("LambertSpec: signs must be +1 or -1");
        if (step == 0 || shift == 0) throw std::invalid_argument("LambertSpec: denominator step and shift must be >= 1");
        if (power == 0) throw std::invalid_argument("LambertSpec: denominator power must be >= 1");
        if (numerator.empty() || numerator.front() == 0)
            throw std::invalid_argument("LambertSpec: numerator polynomial must have P(0) != 0");
        if (quadratic < 0 || (quadratic == 0 && linear <= 0))
            throw std::invalid_argument("LambertSpec: exponent e(k) must grow without bound");
        if ((quadratic + linear) % 2 != 0)
            throw std::invalid_argument("LambertSpec: quadratic*k^2 + linear*k must be even");
        // e is convex, so checking up to the first increasing index covers its minimum.
        for (long k = 0;; ++k) {
            if (exponent(k) < 0) throw std::invalid_argument("LambertSpec: e(k) is negative for some k");
            if (exponent_increasing_from(k)) break;
        }
    }
};

inline Series lambert_general(const LambertSpec& spec, std::size_t order) {
    spec.validate();
    const auto n = static_cast<long>(order);
    std::vector<BigInt> out(order);
    for (long k = 0;; ++k) {
        const long e = spec.exponent(k);
        if (e >= n) {
            if (spec.exponent_increasing_from(k)) break;
            continue;
        }
        const long x = static_cast<long>(spec.step) * k + static_cast<long>(spec.shift);
        const int sign = spec.sign(static_cast<std::uint64_t>(k));
        // P(x)/(1-x)^r = sum_i P_i sum_j C(j+r-1, r-1) x^{i+j}
        for (std::size_t i = 0; i < spec.numerator.size(); ++i) {
            const long p = spec.numerator[i] * sign;
            if (p == 0) continue;
            for (long j = 0;; ++j) {
                const long idx = e + x * (static_cast<long>(i) + j);
                if (idx >= n) break;
                out[idx] += p * binomial(j + spec.power - 1, spec.power - 1);
            }
        }
    }
    return detail::from_numerators(std::move(out));
}

}  // namespace qident
