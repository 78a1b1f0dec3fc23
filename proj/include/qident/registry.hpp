#pragma once

// Catalog of q-series identities as pairs of independent expression trees,
// the coefficientwise verifier, and the partition congruence check.

#include "qident/arith.hpp"
#include "qident/closed_form.hpp"
#include "qident/expr.hpp"
#include "qident/qforms.hpp"
#include "qident/series.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qident {

/// q -> 1 behaviour: (1-q)^weight * value tends to `constant`.
struct LimitMeta {
    unsigned weight;
    ClosedForm constant;
};

struct IdentityEntry {
    std::string id;
    Expr lhs;
    Expr rhs;
    std::string citation;
    std::optional<LimitMeta> limit;
    /// Parametric family this entry belongs to, empty for standalone identities.
    std::string family;
};

/// Named q-series whose scaled q -> 1 limit is known, for limit tables.
struct LimitTarget {
    std::string id;
    Expr expr;
    LimitMeta meta;
};

namespace lambert_specs {

// sum (-1)^k q^{2k}(1+q^{2k+1})/(1-q^{2k+1})^3
inline LambertSpec beta3() {
    return {.sign_pattern = {1, -1}, .quadratic = 0, .linear = 4, .constant = 0,
            .step = 2, .shift = 1, .power = 3, .numerator = {1, 1}};
}

// sum q^k(1+q^{2k+1})/(1-q^{2k+1})^2
inline LambertSpec sun_zeta2() {
    return {.sign_pattern = {1}, .quadratic = 0, .linear = 2, .constant = 0,
            .step = 2, .shift = 1, .power = 2, .numerator = {1, 1}};
}

// sum q^{2k}(1+4q^{2k+1}+q^{4k+2})/(1-q^{2k+1})^4
inline LambertSpec sun_zeta4() {
    return {.sign_pattern = {1}, .quadratic = 0, .linear = 4, .constant = 0,
            .step = 2, .shift = 1, .power = 4, .numerator = {1, 4, 1}};
}

// sum (-q)^k/(1-q^{2k+1})
inline LambertSpec ramanujan_beta1() {
    return {.sign_pattern = {1, -1}, .quadratic = 0, .linear = 2, .constant = 0,
            .step = 2, .shift = 1, .power = 1, .numerator = {1}};
}

// sum (-1)^k q^{k(k+3)/2}/(1-q^{2k+1})
inline LambertSpec hks_beta1() {
    return {.sign_pattern = {1, -1}, .quadratic = 1, .linear = 3, .constant = 0,
            .step = 2, .shift = 1, .power = 1, .numerator = {1}};
}

// sum (-1)^{k(k+1)/2} q^{2k}/(1-q^{2k+1})^2
inline LambertSpec chi8_square() {
    return {.sign_pattern = {1, -1, -1, 1}, .quadratic = 0, .linear = 4, .constant = 0,
            .step = 2, .shift = 1, .power = 2, .numerator = {1}};
}

// Terms n = 6k+1 of the (12/.) square series: +1 for n = 1 (mod 12), -1 for n = 7 (mod 12).
inline LambertSpec chi12_square_residue1() {
    return {.sign_pattern = {1, -1}, .quadratic = 0, .linear = 12, .constant = 0,
            .step = 6, .shift = 1, .power = 2, .numerator = {1}};
}

// Terms n = 6k+5: -1 for n = 5 (mod 12), +1 for n = 11 (mod 12).
inline LambertSpec chi12_square_residue5() {
    return {.sign_pattern = {-1, 1}, .quadratic = 0, .linear = 12, .constant = 4,
            .step = 6, .shift = 5, .power = 2, .numerator = {1}};
}

}  // namespace lambert_specs

namespace detail {

inline ClosedForm pi_form(long num, long den, unsigned pi_power, unsigned radicand = 1) {
    return {make_rational(num, den), pi_power, radicand};
}

inline const char* char_suffix(std::int64_t top) {
    switch (top) {
        case -4: return "m4";
        case -3: return "m3";
        case 5: return "p5";
        case 8: return "p8";
        case 12: return "p12";
        default: return "x";
    }
}

}  // namespace detail

/// Characters the divisor-sum families are instantiated over.
inline const std::vector<std::int64_t>& family_characters() {
    static const std::vector<std::int64_t> tops{-4, -3, 5, 8, 12};
    return tops;
}

inline std::vector<IdentityEntry> builtin_registry() {
    using detail::pi_form;
    std::vector<IdentityEntry> r;

    const Expr beta3_poch = pow(poch(2, 4), 2) * pow(poch(4, 4), 6) / pow(poch(1, 2), 4);
    r.push_back({"beta3_q", lambert(lambert_specs::beta3()), beta3_poch,
                 "sum_{k>=0} (-1)^k q^{2k}(1+q^{2k+1})/(1-q^{2k+1})^3 = (q^2;q^4)^2 (q^4;q^4)^6 / (q;q^2)^4",
                 LimitMeta{3, pi_form(1, 16, 3)}, ""});
    r.push_back({"beta3_eta_form", beta3_poch, eta_product({{1, -4}, {2, 6}, {4, 4}}),
                 "(q^2;q^4)^2 (q^4;q^4)^6 / (q;q^2)^4 = prod (1-q^{2n})^6 (1-q^{4n})^4 / (1-q^n)^4",
                 std::nullopt, ""});
    r.push_back({"beta3_lambert_form", lambert(lambert_specs::beta3()), lambert3(-4),
                 "sum (-1)^k q^{2k}(1+q^{2k+1})/(1-q^{2k+1})^3 = sum (-4/n) q^{n-1}(1+q^n)/(1-q^n)^3",
                 std::nullopt, ""});
    r.push_back({"sun_zeta2_q", lambert(lambert_specs::sun_zeta2()), pow(poch(2, 2), 4) / pow(poch(1, 2), 4),
                 "sum q^k(1+q^{2k+1})/(1-q^{2k+1})^2 = (q^2;q^2)^4 / (q;q^2)^4", LimitMeta{2, pi_form(1, 4, 2)},
                 ""});
    r.push_back({"sun_zeta4_q", lambert(lambert_specs::sun_zeta4()), pow(poch(2, 2), 8) / pow(poch(1, 2), 8),
                 "sum q^{2k}(1+4q^{2k+1}+q^{4k+2})/(1-q^{2k+1})^4 = (q^2;q^2)^8 / (q;q^2)^8",
                 LimitMeta{4, pi_form(1, 16, 4)}, ""});
    r.push_back({"ramanujan_beta1_q", lambert(lambert_specs::ramanujan_beta1()),
                 pow(poch(4, 4), 2) / pow(poch(2, 4), 2), "sum (-q)^k/(1-q^{2k+1}) = (q^4;q^4)^2 / (q^2;q^4)^2",
                 LimitMeta{1, pi_form(1, 4, 1)}, ""});
    r.push_back({"hks_beta1_q", lambert(lambert_specs::hks_beta1()),
                 poch(2, 2) * poch(8, 8) / (poch(1, 2) * poch(4, 8)),
                 "sum (-1)^k q^{k(k+3)/2}/(1-q^{2k+1}) = (q^2;q^2)(q^8;q^8) / ((q;q^2)(q^4;q^8))",
                 LimitMeta{1, pi_form(1, 4, 1)}, ""});
    r.push_back({"chi3_cubic", lambert3(-3), eta_product({{1, -3}, {3, 9}}),
                 "sum (n/3) q^{n-1}(1+q^n)/(1-q^n)^3 = (q^3;q^3)^9 / (q;q)^3", LimitMeta{3, pi_form(8, 81, 3, 3)},
                 ""});
    r.push_back({"ramanujan_chi5", lambert2(5), eta_product({{1, -1}, {5, 5}}),
                 "sum (n/5) q^{n-1}/(1-q^n)^2 = (q^5;q^5)^5 / (q;q)", LimitMeta{2, pi_form(4, 25, 2, 5)}, ""});
    r.push_back({"chi8_square", lambert(lambert_specs::chi8_square()), eta_product({{1, -2}, {2, 3}, {4, 1}, {8, 2}}),
                 "sum (-1)^{k(k+1)/2} q^{2k}/(1-q^{2k+1})^2 = (q^2;q^2)^3 (q^4;q^4) (q^8;q^8)^2 / (q;q)^2",
                 LimitMeta{2, pi_form(1, 8, 2, 2)}, ""});
    const Expr chi12_rhs = eta_product({{1, -2}, {2, 2}, {3, 2}, {4, 1}, {12, 1}});
    r.push_back({"chi12_square", lambert2(12), chi12_rhs,
                 "sum (12/n) q^{n-1}/(1-q^n)^2 = (q^2;q^2)^2 (q^3;q^3)^2 (q^4;q^4) (q^12;q^12) / (q;q)^2",
                 LimitMeta{2, pi_form(1, 6, 2, 3)}, ""});
    r.push_back({"chi12_square_difference",
                 lambert(lambert_specs::chi12_square_residue1()) + lambert(lambert_specs::chi12_square_residue5()),
                 lambert2(12),
                 "sum over n = +-1 (mod 12) minus n = +-5 (mod 12) of q^{n-1}/(1-q^n)^2 = sum (12/n) q^{n-1}/(1-q^n)^2",
                 std::nullopt, ""});
    r.push_back({"carlitz_m4", divser(-4, 2), eta_product({{1, -4}, {2, 6}, {4, 4}}),
                 "sum_m (sum_{d|m} (-4/(m/d)) d^2) q^{m-1} = prod (1-q^{2n})^6 (1-q^{4n})^4 / (1-q^n)^4",
                 std::nullopt, ""});
    r.push_back({"carlitz_m3", divser(-3, 2), eta_product({{1, -3}, {3, 9}}),
                 "sum_m (sum_{d|m} (-3/(m/d)) d^2) q^{m-1} = prod (1-q^{3n})^9 / (1-q^n)^3", std::nullopt, ""});
    r.push_back({"ramanujan_div5", divser(5, 1), eta_product({{1, -1}, {5, 5}}),
                 "sum_m (sum_{d|m} (5/(m/d)) d) q^{m-1} = prod (1-q^{5n})^5 / (1-q^n)", std::nullopt, ""});
    r.push_back({"aaw_m8", divser(8, 1), eta_product({{1, -2}, {2, 3}, {4, 1}, {8, 2}}),
                 "sum_m (sum_{d|m} (8/(m/d)) d) q^{m-1} = prod (1-q^{2n})^3 (1-q^{4n}) (1-q^{8n})^2 / (1-q^n)^2",
                 std::nullopt, ""});
    r.push_back({"aaw_m12", divser(12, 1), chi12_rhs,
                 "sum_m (sum_{d|m} (12/(m/d)) d) q^{m-1} = "
                 "prod (1-q^{2n})^2 (1-q^{3n})^2 (1-q^{4n}) (1-q^{12n}) / (1-q^n)^2",
                 std::nullopt, ""});
    for (const auto top : family_characters()) {
        const std::string chi = "(" + std::to_string(top) + "/.)";
        r.push_back({std::string("lemma21_") + detail::char_suffix(top), lambert3(top), divser(top, 2),
                     "sum chi(n) q^{n-1}(1+q^n)/(1-q^n)^3 = sum_m (sum_{d|m} chi(m/d) d^2) q^{m-1}, chi = " + chi,
                     std::nullopt, "lemma21_family"});
    }
    for (const auto top : family_characters()) {
        const std::string chi = "(" + std::to_string(top) + "/.)";
        r.push_back({std::string("eq33_") + detail::char_suffix(top), lambert2(top), divser(top, 1),
                     "sum chi(n) q^{n-1}/(1-q^n)^2 = sum_m (sum_{d|m} chi(m/d) d) q^{m-1}, chi = " + chi,
                     std::nullopt, "eq33_family"});
    }
    return r;
}

/// Looks up an entry by id; nullopt when absent.
inline std::optional<IdentityEntry> lookup(const std::vector<IdentityEntry>& registry, const std::string& id) {
    const auto it = std::find_if(registry.begin(), registry.end(), [&](const auto& e) { return e.id == id; });
    if (it == registry.end()) return std::nullopt;
    return *it;
}

/// Entries whose id or family equals `name`.
inline std::vector<IdentityEntry> select(const std::vector<IdentityEntry>& registry, const std::string& name) {
    std::vector<IdentityEntry> out;
    for (const auto& e : registry)
        if (e.id == name || e.family == name) out.push_back(e);
    return out;
}

inline std::vector<LimitTarget> builtin_limit_targets() {
    std::vector<LimitTarget> out;
    out.push_back({"wallis_quotient", pow(poch(2, 2), 2) / pow(poch(1, 2), 2), {1, detail::pi_form(1, 2, 1)}});
    for (const auto& e : builtin_registry())
        if (e.limit) out.push_back({e.id, e.rhs, *e.limit});
    return out;
}

struct Mismatch {
    std::size_t index;
    Rational lhs;
    Rational rhs;
};

struct VerifyResult {
    std::string id;
    std::size_t order;
    std::optional<Mismatch> mismatch;
    /// Both sides came out with integer coefficients.
    bool integral = true;

    bool verified() const { return !mismatch.has_value(); }
};

/// Exact coefficientwise comparison of both sides to the given order.
inline VerifyResult verify(const IdentityEntry& entry, std::size_t order,
                           EvalStrategy strategy = EvalStrategy::Direct) {
    if (order == 0) throw std::invalid_argument("verify: order must be >= 1");
    const Series lhs = evaluate(entry.lhs, order, strategy);
    const Series rhs = evaluate(entry.rhs, order, strategy);
    VerifyResult result{entry.id, order, std::nullopt, lhs.is_integral() && rhs.is_integral()};
    if (const auto i = first_mismatch(lhs, rhs)) result.mismatch = Mismatch{*i, lhs.coefficient(*i), rhs.coefficient(*i)};
    return result;
}

struct CongruenceResult {
    std::optional<std::uint64_t> counterexample;
    bool holds() const { return !counterexample.has_value(); }
};

/// Checks p(modulus*n + residue) = 0 (mod modulus) for n = 0..count-1.
inline CongruenceResult check_partition_congruence(std::uint64_t modulus, std::uint64_t residue, std::uint64_t count) {
    if (modulus < 2) throw std::invalid_argument("congruence modulus must be >= 2");
    if (residue >= modulus) throw std::invalid_argument("congruence residue must lie in [0, modulus)");
    if (count == 0) throw std::invalid_argument("congruence count must be >= 1");
    const BigInt m(static_cast<unsigned long>(modulus));
    for (std::uint64_t n = 0; n < count; ++n) {
        const BigInt p = partition(modulus * n + residue);
        if (p % m != 0) return {n};
    }
    return {};
}

}  // namespace qident
