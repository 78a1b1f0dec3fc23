#include "qident/numerics.hpp"
#include "qident/registry.hpp"

#include <gtest/gtest.h>

#include <mpfr.h>

using namespace qident;

namespace {

constexpr mpfr_prec_t kPrec = 256;

double diff(const BigFloat& a, const BigFloat& b) { return abs(a - b).to_double(); }

BigFloat pi() { return BigFloat::pi(kPrec); }

BigFloat num(const char* text) { return BigFloat::parse(text, kPrec); }

BigFloat mpfr_zeta(unsigned long s) {
    BigFloat z(kPrec);
    mpfr_zeta_ui(z.get(), s, MPFR_RNDN);
    return z;
}

// sum_{n<=K} n^{-s} plus the first three Euler-Maclaurin tail terms; error ~ K^{-s-3}.
BigFloat zeta_by_summation(long s, long K) {
    BigFloat sum(kPrec);
    for (long n = 1; n <= K; ++n) sum += pow(BigFloat(n, kPrec), -s);
    const BigFloat k(K, kPrec);
    sum += pow(k, 1 - s) / (s - 1) - pow(k, -s) / 2L + BigFloat(s, kPrec) * pow(k, -s - 1) / 12L;
    return sum;
}

}  // namespace

TEST(ClosedForms, Zeta) {
    EXPECT_LT(diff(closed_zeta(1), pi() * pi() / 6L), 1e-70);
    EXPECT_LT(diff(closed_zeta(2), pow(pi(), 4) / 90L), 1e-70);
    for (unsigned m = 1; m <= 5; ++m) {
        EXPECT_LT(diff(closed_zeta(m), zeta_by_summation(2 * m, 20000)), 1e-20) << m;
        EXPECT_LT(diff(closed_zeta(m), mpfr_zeta(2 * m)), 1e-70) << m;
    }
    EXPECT_THROW(closed_zeta(0), std::invalid_argument);
}

TEST(ClosedForms, Beta) {
    EXPECT_LT(diff(closed_beta(0), pi() / 4L), 1e-70);
    EXPECT_LT(diff(closed_beta(1), pow(pi(), 3) / 32L), 1e-70);
    EXPECT_LT(diff(closed_beta(2), 5L * pow(pi(), 5) / 1536L), 1e-70);
}

TEST(Hurwitz, AgainstKnownValues) {
    EXPECT_LT(diff(hurwitz_zeta(2, Rational(1)), pi() * pi() / 6L), 1e-30);
    EXPECT_LT(diff(hurwitz_zeta(2, Rational(1, 2)), pi() * pi() / 2L), 1e-30);
    EXPECT_LT(diff(hurwitz_zeta(4, Rational(1)), pow(pi(), 4) / 90L), 1e-30);
    EXPECT_LT(diff(hurwitz_zeta(3, Rational(1)), mpfr_zeta(3)), 1e-60);
    EXPECT_LT(diff(hurwitz_zeta(7, Rational(1)), mpfr_zeta(7)), 1e-60);
}

TEST(Hurwitz, DistributionRelation) {
    // sum_{a=1}^{k} zeta(s, a/k) = k^s zeta(s)
    for (long k : {3L, 5L, 12L}) {
        for (long s : {2L, 3L, 6L}) {
            BigFloat sum(kPrec);
            for (long a = 1; a <= k; ++a) sum += hurwitz_zeta(s, make_rational(a, k));
            EXPECT_LT(diff(sum, pow(BigFloat(k, kPrec), s) * mpfr_zeta(static_cast<unsigned long>(s))),
                      1e-50 * pow(BigFloat(k, kPrec), s).to_double());
        }
    }
}

TEST(Hurwitz, NonIntegerExponent) {
    // zeta(5/2, 1) by direct summation with the same tail correction
    const BigFloat s = num("2.5");
    BigFloat direct(kPrec);
    const long K = 20000;
    for (long n = 1; n <= K; ++n) direct += pow(BigFloat(n, kPrec), -s);
    const BigFloat k(K, kPrec);
    direct += pow(k, 1L - s) / (s + (-1L)) - pow(k, -s) / 2L + s * pow(k, -s + (-1L)) / 12L;
    EXPECT_LT(diff(hurwitz_zeta(s, Rational(1)), direct), 1e-18);
}

TEST(Hurwitz, RejectsOutOfRange) {
    EXPECT_THROW(hurwitz_zeta(1, Rational(1)), std::invalid_argument);
    EXPECT_THROW(hurwitz_zeta(2, Rational(0)), std::invalid_argument);
    EXPECT_THROW(hurwitz_zeta(2, Rational(3, 2)), std::invalid_argument);
}

TEST(DirichletL, Examples) {
    EXPECT_LT(diff(dirichlet_L(-4, 3), pow(pi(), 3) / 32L), 1e-30);
    EXPECT_EQ(dirichlet_L(-4, 3).to_string(8), "9.6894615e-01");
    const BigFloat s3 = sqrt(BigFloat(3L, kPrec));
    const BigFloat s5 = sqrt(BigFloat(5L, kPrec));
    const BigFloat s2 = sqrt(BigFloat(2L, kPrec));
    EXPECT_LT(diff(dirichlet_L(-3, 3), 4L * pow(pi(), 3) / (81L * s3)), 1e-30);
    EXPECT_LT(diff(dirichlet_L(5, 2), 4L * pow(pi(), 2) / (25L * s5)), 1e-30);
    EXPECT_LT(diff(dirichlet_L(8, 2), pow(pi(), 2) / (8L * s2)), 1e-30);
    EXPECT_LT(diff(dirichlet_L(12, 2), pow(pi(), 2) / (6L * s3)), 1e-30);
}

TEST(DirichletL, CatalanAndPoleCancellation) {
    BigFloat catalan(kPrec);
    mpfr_const_catalan(catalan.get(), MPFR_RNDN);
    EXPECT_LT(diff(dirichlet_L(-4, 2), catalan), 1e-30);
    EXPECT_LT(diff(dirichlet_L(-3, 1), pi() / (3L * sqrt(BigFloat(3L, kPrec)))), 1e-30);
    EXPECT_LT(diff(dirichlet_L(-8, 1), pi() / (2L * sqrt(BigFloat(2L, kPrec)))), 1e-30);
}

TEST(DirichletL, TrivialCharacterIsZeta) {
    EXPECT_LT(diff(dirichlet_L(1, 3), mpfr_zeta(3)), 1e-30);
}

TEST(DirichletL, RejectsDivergentCases) {
    EXPECT_THROW(dirichlet_L(5, 1), std::invalid_argument);
    EXPECT_THROW(dirichlet_L(12, 1), std::invalid_argument);
    EXPECT_THROW(dirichlet_L(-4, 0), std::invalid_argument);
    EXPECT_THROW(dirichlet_L(0, 2), std::invalid_argument);
}

TEST(DirichletL, ClosedBetaAgreement) {
    for (unsigned n = 0; n <= 2; ++n) EXPECT_LT(diff(closed_beta(n), dirichlet_L(-4, 2 * n + 1)), 1e-25) << n;
}

TEST(DirichletL, ClosedZetaAgreement) {
    for (unsigned m = 1; m <= 5; ++m) EXPECT_LT(diff(closed_zeta(m), hurwitz_zeta(2L * m, Rational(1))), 1e-25) << m;
}

TEST(Constants, ListedClosedForms) {
    std::size_t passed = 0;
    for (const auto& c : builtin_constants()) {
        const auto r = check_constant(c, 1e-10);
        if (c.id == "chi5_s6") continue;
        EXPECT_TRUE(r.passed) << c.id;
        ASSERT_TRUE(r.detected_multiplier.has_value()) << c.id;
        EXPECT_EQ(*r.detected_multiplier, c.closed_form.multiplier) << c.id;
        ++passed;
    }
    EXPECT_EQ(passed, builtin_constants().size() - 1);
}

// The listed denominator 23475 for L(6, (5/.)) does not reproduce; the computed value
// is the rational multiple 536/234375 of pi^6/sqrt 5.
TEST(Constants, SixthPowerFiveCharacterDenominator) {
    const auto constants = builtin_constants();
    const auto it = std::find_if(constants.begin(), constants.end(), [](const auto& c) { return c.id == "chi5_s6"; });
    ASSERT_NE(it, constants.end());
    const auto r = check_constant(*it, 1e-10);
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.detected_multiplier.has_value());
    EXPECT_EQ(*r.detected_multiplier, Rational(536, 234375));
    const ClosedForm corrected{Rational(536, 234375), 6, 5};
    EXPECT_LT(diff(dirichlet_L(5, 6), corrected.value(kPrec)), 1e-30);
}

TEST(RationalDetect, Examples) {
    const BigFloat s3 = sqrt(BigFloat(3L, kPrec));
    const auto a = rational_multiple_detect(dirichlet_L(-3, 3), pow(pi(), 3) / s3, BigInt(10000));
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(*a, Rational(4, 81));
    const auto b = rational_multiple_detect(dirichlet_L(8, 2), pow(pi(), 2) / sqrt(BigFloat(2L, kPrec)), BigInt(10000));
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(*b, Rational(1, 8));
    EXPECT_EQ(rational_multiple_detect(pi(), pi(), BigInt(10)), std::optional<Rational>(Rational(1)));
    EXPECT_EQ(rational_multiple_detect(-3L * pi() / 7L, pi(), BigInt(10)), std::optional<Rational>(Rational(-3, 7)));
    EXPECT_FALSE(rational_multiple_detect(pi(), BigFloat(1L, kPrec), BigInt(1000)).has_value());
    EXPECT_THROW(rational_multiple_detect(pi(), BigFloat(kPrec), BigInt(10)), std::invalid_argument);
}

TEST(NumericSeries, LambertAgainstProducts) {
    const auto reg = builtin_registry();
    const auto beta3 = lookup(reg, "beta3_q");
    const BigFloat half = num("0.5");
    EXPECT_LT(diff(lambert_numeric(lambert_specs::beta3(), half, 1e-40), evaluate_numeric(beta3->rhs, half, 1e-40)),
              1e-25);
    const BigFloat q3 = num("0.3");
    const BigFloat prod = pow(poch_numeric(4, 4, q3, 1e-40), 2) / pow(poch_numeric(2, 4, q3, 1e-40), 2);
    EXPECT_LT(diff(lambert_numeric(lambert_specs::ramanujan_beta1(), q3, 1e-40), prod), 1e-25);
    EXPECT_LT(diff(lambert_numeric(lambert_specs::beta3(), num("1e-12"), 1e-40), BigFloat(1L, kPrec)), 1e-10);
}

TEST(NumericSeries, PochhammerMatchesFiniteProduct) {
    const BigFloat q = num("0.7");
    BigFloat prod(1L, kPrec);
    for (long k = 0; k < 2000; ++k) prod *= 1L - pow(q, 2 + 3 * k);
    EXPECT_LT(diff(poch_numeric(2, 3, q, 1e-40), prod), 1e-35);
}

TEST(NumericSeries, RejectsBadQ) {
    EXPECT_THROW(poch_numeric(1, 1, num("1"), 1e-20), std::invalid_argument);
    EXPECT_THROW(lambert_numeric(lambert_specs::beta3(), num("0"), 1e-20), std::invalid_argument);
    EXPECT_THROW(evaluate_numeric(divser(-4, 2), num("-0.5"), 1e-20), std::invalid_argument);
}

TEST(NumericSeries, EveryIdentityAgreesAtSampleQ) {
    for (const auto& e : builtin_registry()) {
        for (const char* qs : {"0.2", "0.5", "0.8"}) {
            const BigFloat q = num(qs);
            const BigFloat l = evaluate_numeric(e.lhs, q, 1e-40);
            const BigFloat r = evaluate_numeric(e.rhs, q, 1e-40);
            EXPECT_LT(diff(l, r), 1e-20 * detail::max1(r).to_double()) << e.id << " q=" << qs;
        }
    }
}

TEST(Limits, ApproachTargets) {
    const std::vector<BigFloat> qs{num("0.9"), num("0.99"), num("0.999"), num("0.9999")};
    for (const auto& t : builtin_limit_targets()) {
        if (t.id != "beta3_q" && t.id != "wallis_quotient") continue;
        const auto rows = limit_check(t.expr, t.meta, qs);
        ASSERT_EQ(rows.size(), 4u);
        for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].relative_error, rows[i - 1].relative_error);
        EXPECT_LT(rows.back().relative_error, 0.01) << t.id;
    }
    const auto beta3 = lookup(builtin_registry(), "beta3_q");
    const auto near = limit_check(*beta3, {num("0.9999")});
    EXPECT_LT(diff(near[0].target, pow(pi(), 3) / 16L), 1e-60);
    const auto far = limit_check(*beta3, {num("0.1")});
    EXPECT_GT(far[0].relative_error, 0.1);
    IdentityEntry no_limit = *lookup(builtin_registry(), "carlitz_m4");
    EXPECT_THROW(limit_check(no_limit, {num("0.5")}), std::invalid_argument);
}

TEST(Wallis, PartialProducts) {
    EXPECT_LT(diff(wallis_partial(1), BigFloat(Rational(4, 3), kPrec)), 1e-70);
    BigFloat prev = wallis_partial(1);
    for (std::uint64_t K : {2u, 10u, 100u, 1000u}) {
        const BigFloat w = wallis_partial(K);
        EXPECT_GT(w, prev);
        prev = w;
    }
    EXPECT_LT(diff(wallis_partial(100000), pi() / 2L), 5e-6);
    EXPECT_THROW(wallis_partial(0), std::invalid_argument);
}

TEST(Precision, WorkingPrecisionDoubles) {
    EXPECT_EQ(working_precision(1e-30, 256), 256);
    EXPECT_EQ(working_precision(1e-70, 256), 512);
    EXPECT_EQ(working_precision(1e-10, 64), 128);
    EXPECT_THROW(working_precision(0.0), std::invalid_argument);
}
