#pragma once

// Eta-quotient fitting. Logarithmic derivatives turn prod_d (q^d;q^d)^{r_d}
// into the linear combination sum_d r_d * L_d, so the exponents solve an
// exact linear system on the first few coefficients. Any solution is then
// confirmed against the full target by expanding the product.

#include "qident/arith.hpp"
#include "qident/qforms.hpp"
#include "qident/series.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qident {

/// q a'(q) / a(q) for a series with constant term 1. The result has the order of `a`
/// and a zero constant term.
inline Series log_derivative(const Series& a) {
    if (a.coefficient(0) != 1) throw std::domain_error("log_derivative: constant term must be 1");
    std::vector<Rational> d(a.order());
    for (std::size_t n = 1; n < a.order(); ++n) d[n] = a.coefficient(n) * static_cast<unsigned long>(n);
    return Series(std::move(d)) * inverse(a);
}

enum class InfeasibleReason { NoSolution, Underdetermined, VerificationFailed };

inline const char* to_string(InfeasibleReason r) {
    switch (r) {
        case InfeasibleReason::NoSolution: return "no-solution";
        case InfeasibleReason::Underdetermined: return "underdetermined";
        case InfeasibleReason::VerificationFailed: return "verification-failed";
    }
    return "unknown";
}

struct Infeasible {
    InfeasibleReason reason;
    /// First diverging coefficient when the full product check fails.
    std::optional<std::size_t> index;
    /// The unique rational solution, when it exists but is not integral (or fails verification).
    std::vector<Rational> solution;
};

struct FitResult {
    std::optional<EtaQuotient> exponents;
    std::optional<Infeasible> infeasible;
    /// Number of coefficients (from q^1) used as linear equations.
    std::size_t rows_used = 0;

    bool ok() const { return exponents.has_value(); }
};

namespace detail {

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveOutcome {
    SolveStatus status;
    std::vector<Rational> solution;
};

/// Solves A x = b for integer A (rows x cols) and b by fraction-free (Bareiss) elimination
/// on the augmented matrix, then rational back-substitution.
inline SolveOutcome solve_exact(std::vector<std::vector<BigInt>> m, std::size_t cols) {
    const std::size_t rows = m.size();
    const std::size_t width = cols + 1;
    std::vector<std::size_t> pivot_cols;
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < width && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && m[p][col] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < width; ++j) {
                BigInt v = m[r][col] * m[i][j] - m[i][col] * m[r][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
            m[i][col] = 0;
        }
        prev = m[r][col];
        pivot_cols.push_back(col);
        ++r;
    }
    if (!pivot_cols.empty() && pivot_cols.back() == cols) return {SolveStatus::Inconsistent, {}};
    if (pivot_cols.size() < cols) return {SolveStatus::Underdetermined, {}};

    std::vector<Rational> x(cols);
    for (std::size_t k = cols; k-- > 0;) {
        Rational acc(m[k][cols]);
        for (std::size_t j = k + 1; j < cols; ++j) acc -= Rational(m[k][j]) * x[j];
        x[k] = acc / Rational(m[k][k]);
    }
    return {SolveStatus::Unique, std::move(x)};
}

inline BigInt lcm_of_denominators(std::span<const Rational> values) {
    BigInt l = 1;
    for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

}  // namespace detail

/// Number of slack equations beyond one per candidate period.
inline constexpr std::size_t fit_slack_rows = 16;

/// Recovers integer exponents r_d with prod_d (q^d;q^d)^{r_d} = target to the given order.
inline FitResult fit_eta_quotient(const Series& target, std::span<const std::uint64_t> periods, std::size_t order) {
    if (target.order() < order) throw std::invalid_argument("fit_eta_quotient: target is shorter than the fit order");
    if (target.coefficient(0) != 1) throw std::invalid_argument("fit_eta_quotient: target constant term must be 1");
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (periods[i] == 0) throw std::invalid_argument("fit_eta_quotient: periods must be positive");
        if (i > 0 && periods[i] <= periods[i - 1])
            throw std::invalid_argument("fit_eta_quotient: periods must be strictly ascending");
    }

    const Series t = target.truncated(order);
    const std::size_t cols = periods.size();
    const std::size_t rows = std::min(cols + fit_slack_rows, order - 1);
    FitResult result;
    result.rows_used = rows;

    const Series b = log_derivative(t);
    std::vector<Series> columns;
    columns.reserve(cols);
    for (const auto d : periods) columns.push_back(log_derivative(pochhammer(d, d, order)));

    std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t n = i + 1;
        std::vector<Rational> row;
        for (const auto& c : columns) row.push_back(c.coefficient(n));
        row.push_back(b.coefficient(n));
        const BigInt scale = detail::lcm_of_denominators(row);
        for (std::size_t j = 0; j <= cols; ++j) m[i][j] = Rational(row[j] * Rational(scale)).get_num();
    }

    auto solved = detail::solve_exact(std::move(m), cols);
    if (solved.status == detail::SolveStatus::Inconsistent) {
        result.infeasible = Infeasible{InfeasibleReason::NoSolution, std::nullopt, {}};
        return result;
    }
    if (solved.status == detail::SolveStatus::Underdetermined) {
        result.infeasible = Infeasible{InfeasibleReason::Underdetermined, std::nullopt, {}};
        return result;
    }
    EtaQuotient exps;
    for (std::size_t j = 0; j < cols; ++j) {
        const Rational& v = solved.solution[j];
        if (!is_integral(v)) {
            result.infeasible = Infeasible{InfeasibleReason::NoSolution, std::nullopt, solved.solution};
            return result;
        }
        if (v != 0) exps[periods[j]] = v.get_num().get_si();
    }
    if (const auto i = first_mismatch(eta_quotient_series(exps, order), t)) {
        result.infeasible = Infeasible{InfeasibleReason::VerificationFailed, *i, solved.solution};
        return result;
    }
    result.exponents = std::move(exps);
    return result;
}

inline FitResult fit_eta_quotient(const Series& target, std::initializer_list<std::uint64_t> periods,
                                  std::size_t order) {
    const std::vector<std::uint64_t> p(periods);
    return fit_eta_quotient(target, std::span<const std::uint64_t>(p), order);
}

}  // namespace qident
