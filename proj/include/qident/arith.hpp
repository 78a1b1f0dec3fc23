#pragma once

// Exact integer/rational arithmetic and the number-theoretic primitives the
// q-series identities are built from: Kronecker symbols, twisted divisor
// sums, Bernoulli and Euler numbers, and the partition function.

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qident {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Reduced rational num/den; throws on a zero denominator.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rational& r) { return mpz_divisible_p(r.get_num_mpz_t(), r.get_den_mpz_t()) != 0; }

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline std::string to_string(const Rational& r) {
    if (is_integral(r)) return r.get_num().get_str(10);
    return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

/// Real character n -> (D/n) with fixed top argument D.
class KroneckerChar {
public:
    explicit KroneckerChar(std::int64_t top) : top_(top) {
        if (top == 0) throw std::invalid_argument("Kronecker character with top argument 0");
    }

    std::int64_t top() const { return top_; }
    int operator()(std::uint64_t n) const;

    /// Period of n -> (D/n): |D| when D = 0,1 (mod 4), 4|D| when D = 2 (mod 4).
    /// For D = 3 (mod 4) the map is not periodic and this throws.
    std::uint64_t period() const {
        const std::uint64_t a = static_cast<std::uint64_t>(top_ < 0 ? -top_ : top_);
        const std::int64_t r = ((top_ % 4) + 4) % 4;
        if (r == 3) throw std::invalid_argument("(D/n) is not periodic in n for D = 3 (mod 4)");
        return (r == 0 || r == 1) ? a : 4 * a;
    }

    bool is_odd() const { return top_ < 0; }

    friend bool operator==(const KroneckerChar&, const KroneckerChar&) = default;

private:
    std::int64_t top_;
};

namespace detail {

// Jacobi symbol (a/n) for odd n > 0, by quadratic reciprocity.
inline int jacobi(std::uint64_t a, std::uint64_t n) {
    a %= n;
    int result = 1;
    while (a != 0) {
        while ((a & 1U) == 0) {
            a >>= 1;
            const std::uint64_t r = n & 7U;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3U) == 3 && (n & 3U) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
    const std::int64_t sm = static_cast<std::int64_t>(m);
    std::int64_t r = a % sm;
    if (r < 0) r += sm;
    return static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// Kronecker symbol (D/n) for D != 0 and n >= 0.
inline int kronecker(std::int64_t top, std::uint64_t n) {
    if (top == 0) throw std::invalid_argument("kronecker: top argument must be nonzero");
    if (n == 0) return (top == 1 || top == -1) ? 1 : 0;
    if ((n & 1U) == 0 && (top & 1) == 0) return 0;

    int result = 1;
    int twos = 0;
    while ((n & 1U) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos & 1) {
        // (D/2) = 0 for even D (excluded above), +1 for D = ±1 (mod 8), -1 for D = ±3 (mod 8)
        const std::uint64_t r = detail::mod_floor(top, 8);
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    return result * detail::jacobi(detail::mod_floor(top, n), n);
}

inline int KroneckerChar::operator()(std::uint64_t n) const { return kronecker(top_, n); }

/// Divisors of m in ascending order, by trial division up to sqrt(m).
inline std::vector<std::uint64_t> divisors(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("divisors: m must be positive");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        small.push_back(d);
        if (d != m / d) large.push_back(m / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Sum over d | m of chi(m/d) * d^weight.
inline BigInt twisted_divisor_sum(std::uint64_t m, const KroneckerChar& chi, unsigned weight) {
    BigInt total = 0;
    for (const std::uint64_t d : divisors(m)) {
        const int c = chi(m / d);
        if (c == 0) continue;
        BigInt term;
        mpz_ui_pow_ui(term.get_mpz_t(), d, weight);
        if (c > 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace detail {

// Grow-only memo table; values[i] is the i-th term once computed.
template <typename T>
struct MemoTable {
    std::mutex mutex;
    std::vector<T> values;
};

}  // namespace detail

/// Bernoulli number B_n with B_0 = 1 and sum_{k<=n} C(n+1,k) B_k = 0 (so B_1 = -1/2).
inline Rational bernoulli(unsigned n) {
    static detail::MemoTable<Rational> memo;
    std::lock_guard lock(memo.mutex);
    auto& b = memo.values;
    if (b.empty()) b.emplace_back(1);
    while (b.size() <= n) {
        const unsigned m = static_cast<unsigned>(b.size());
        Rational acc = 0;
        for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * b[k];
        b.push_back(-acc / (m + 1));
    }
    return b[n];
}

/// Euler number E_n with E_0 = 1 and sum over even k of C(n,k) E_{n-k} = 0.
inline BigInt euler_number(unsigned n) {
    static detail::MemoTable<BigInt> memo;
    std::lock_guard lock(memo.mutex);
    auto& e = memo.values;
    if (e.empty()) e.emplace_back(1);
    while (e.size() <= n) {
        const unsigned m = static_cast<unsigned>(e.size());
        BigInt acc = 0;
        for (unsigned k = 2; k <= m; k += 2) acc += binomial(m, k) * e[m - k];
        e.push_back(-acc);
    }
    return e[n];
}

/// Partition number p(n) via Euler's pentagonal-number recurrence.
inline BigInt partition(std::uint64_t n) {
    static detail::MemoTable<BigInt> memo;
    std::lock_guard lock(memo.mutex);
    auto& p = memo.values;
    if (p.empty()) p.emplace_back(1);
    while (p.size() <= n) {
        const std::int64_t m = static_cast<std::int64_t>(p.size());
        BigInt acc = 0;
        for (std::int64_t k = 1;; ++k) {
            const std::int64_t g1 = k * (3 * k - 1) / 2;
            if (g1 > m) break;
            const bool plus = (k & 1) != 0;
            const std::int64_t g2 = k * (3 * k + 1) / 2;
            if (plus) {
                acc += p[m - g1];
                if (g2 <= m) acc += p[m - g2];
            } else {
                acc -= p[m - g1];
                if (g2 <= m) acc -= p[m - g2];
            }
        }
        p.push_back(acc);
    }
    return p[n];
}

}  // namespace qident
