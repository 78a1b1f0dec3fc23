#include "qident/qforms.hpp"
#include "qident/registry.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

using namespace qident;

namespace {

const std::vector<std::int64_t> kCharacters{-4, -3, 5, 8, 12};

std::vector<long> ints(const Series& s) {
    std::vector<long> out;
    for (const auto& c : s.coefficients()) out.push_back(c.get_num().get_si());
    return out;
}

// prod (1 - q^{c+kb}) by multiplying the factors one at a time as Series.
Series poch_by_factors(std::uint64_t c, std::uint64_t b, std::size_t N) {
    Series acc = Series::one(N);
    for (std::uint64_t e = c; e < N; e += b) {
        std::vector<Rational> f(N);
        f[0] = 1;
        f[e] = -1;
        acc = acc * Series(f);
    }
    return acc;
}

Series monomial(std::size_t e, std::size_t N) {
    std::vector<Rational> c(N);
    if (e < N) c[e] = 1;
    return Series(std::move(c));
}

// Sum of the Lambert terms by explicit series division, term by term.
Series lambert_by_division(const LambertSpec& spec, std::size_t N) {
    Series acc(N);
    for (long k = 0; k < static_cast<long>(4 * N); ++k) {
        const long e = spec.exponent(k);
        if (e >= static_cast<long>(N)) continue;
        const std::size_t x = spec.step * static_cast<std::uint64_t>(k) + spec.shift;
        Series num(N);
        for (std::size_t i = 0; i < spec.numerator.size(); ++i)
            num = num + Rational(spec.numerator[i]) * monomial(x * i, N);
        const Series den = pow_int(Series::one(N) - monomial(x, N), static_cast<long>(spec.power));
        acc = acc + Rational(spec.sign(static_cast<std::uint64_t>(k))) * (monomial(static_cast<std::size_t>(e), N) *
                                                                          num * inverse(den));
    }
    return acc;
}

std::set<std::size_t> generalized_pentagonal(std::size_t N) {
    std::set<std::size_t> out;
    for (long k = -100; k <= 100; ++k) {
        const long g = k * (3 * k - 1) / 2;
        if (g < static_cast<long>(N)) out.insert(static_cast<std::size_t>(g));
    }
    return out;
}

}  // namespace

TEST(Pochhammer, EulerProductExample) {
    EXPECT_EQ(ints(pochhammer(1, 1, 13)), (std::vector<long>{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1}));
}

TEST(Pochhammer, EmptyRangeIsOne) { EXPECT_EQ(pochhammer(9, 3, 9), Series::one(9)); }

TEST(Pochhammer, InterleavedProgressions) {
    EXPECT_EQ(pochhammer(2, 4, 64) * pochhammer(4, 4, 64), pochhammer(2, 2, 64));
    EXPECT_EQ(pochhammer(1, 2, 64) * pochhammer(2, 2, 64), pochhammer(1, 1, 64));
}

TEST(Pochhammer, MatchesFactorProduct) {
    for (std::uint64_t c = 1; c <= 5; ++c)
        for (std::uint64_t b = 1; b <= 5; ++b) EXPECT_EQ(pochhammer(c, b, 60), poch_by_factors(c, b, 60));
}

TEST(Pochhammer, PentagonalSparsity) {
    const std::size_t N = 200;
    const Series s = eta_quotient_series({{1, 1}}, N);
    EXPECT_EQ(s, pochhammer(1, 1, N));
    const auto pent = generalized_pentagonal(N);
    for (long k = -20; k <= 20; ++k) {
        const long g = k * (3 * k - 1) / 2;
        if (g < static_cast<long>(N)) {
            EXPECT_EQ(s.coefficient(static_cast<std::size_t>(g)), k % 2 == 0 ? 1 : -1);
        }
    }
    for (std::size_t i = 0; i < N; ++i) {
        if (!pent.count(i)) {
            EXPECT_EQ(s.coefficient(i), 0) << i;
        }
    }
}

TEST(Pochhammer, SubstitutionAgreesWithPeriod) {
    const std::size_t N = 150;
    for (std::uint64_t d : {2u, 3u, 5u, 12u}) EXPECT_EQ(substitute_power(pochhammer(1, 1, N), d), pochhammer(d, d, N));
}

TEST(EtaQuotient, Examples) {
    const Series a = eta_quotient_series({{1, -4}, {2, 6}, {4, 4}}, 5);
    EXPECT_EQ(ints(a), (std::vector<long>{1, 4, 8, 16, 26}));
    const Series b = eta_quotient_series({{1, -3}, {3, 9}}, 4);
    EXPECT_EQ(ints(b), (std::vector<long>{1, 3, 9, 13}));
    EXPECT_EQ(eta_quotient_series({}, 7), Series::one(7));
}

TEST(LambertCubic, Examples) {
    EXPECT_EQ(ints(lambert_cubic(KroneckerChar(-4), 5)), (std::vector<long>{1, 4, 8, 16, 26}));
    EXPECT_EQ(ints(lambert_cubic(KroneckerChar(-3), 4)), (std::vector<long>{1, 3, 9, 13}));
    for (const auto D : kCharacters) EXPECT_EQ(lambert_cubic(KroneckerChar(D), 1), Series::one(1));
}

TEST(LambertSquare, Examples) {
    EXPECT_EQ(ints(lambert_square(KroneckerChar(5), 5)), (std::vector<long>{1, 1, 2, 3, 5}));
    EXPECT_EQ(lambert_square(KroneckerChar(8), 1), Series::one(1));
    EXPECT_EQ(lambert_square(KroneckerChar(8), 120), lambert_by_division(lambert_specs::chi8_square(), 120));
}

TEST(LambertFamilies, CubicEqualsWeightTwoDivisorSums) {
    for (const auto D : kCharacters)
        EXPECT_EQ(lambert_cubic(KroneckerChar(D), 300), divisor_series(KroneckerChar(D), 2, 300)) << D;
}

TEST(LambertFamilies, SquareEqualsWeightOneDivisorSums) {
    for (const auto D : kCharacters)
        EXPECT_EQ(lambert_square(KroneckerChar(D), 300), divisor_series(KroneckerChar(D), 1, 300)) << D;
}

TEST(DivisorSeries, Examples) {
    EXPECT_EQ(ints(divisor_series(KroneckerChar(-4), 2, 5)), (std::vector<long>{1, 4, 8, 16, 26}));
    EXPECT_EQ(ints(divisor_series(KroneckerChar(5), 1, 5)), (std::vector<long>{1, 1, 2, 3, 5}));
    for (const auto D : kCharacters)
        for (unsigned w = 1; w <= 3; ++w) EXPECT_EQ(divisor_series(KroneckerChar(D), w, 3).coefficient(0), 1);
}

TEST(LambertGeneral, BetaThreeSpecMatchesCubic) {
    const Series s = lambert_general(lambert_specs::beta3(), 200);
    EXPECT_EQ(ints(s.truncated(5)), (std::vector<long>{1, 4, 8, 16, 26}));
    EXPECT_EQ(s, lambert_cubic(KroneckerChar(-4), 200));
}

TEST(LambertGeneral, LeibnizSpecMatchesProduct) {
    const std::size_t N = 200;
    const Series rhs = pochhammer(2, 2, N) * pochhammer(8, 8, N) * inverse(pochhammer(1, 2, N) * pochhammer(4, 8, N));
    EXPECT_EQ(lambert_general(lambert_specs::hks_beta1(), N), rhs);
}

TEST(LambertGeneral, MatchesTermwiseDivision) {
    using namespace lambert_specs;
    for (const auto& spec : {beta3(), sun_zeta2(), sun_zeta4(), ramanujan_beta1(), hks_beta1(), chi8_square(),
                             chi12_square_residue1(), chi12_square_residue5()})
        EXPECT_EQ(lambert_general(spec, 120), lambert_by_division(spec, 120));
}

TEST(LambertGeneral, SingleTermSpec) {
    const std::size_t N = 40;
    LambertSpec spec;
    spec.linear = 2 * static_cast<long>(N);
    spec.shift = 3;
    spec.power = 2;
    const Series expected = inverse(pow_int(Series::one(N) - monomial(3, N), 2));
    EXPECT_EQ(lambert_general(spec, N), expected);
}

TEST(LambertGeneral, Validation) {
    LambertSpec bad;
    bad.sign_pattern = {};
    EXPECT_THROW(lambert_general(bad, 10), std::invalid_argument);
    bad = {};
    bad.sign_pattern = {2};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = {};
    bad.step = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = {};
    bad.power = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = {};
    bad.numerator = {0, 1};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = {};
    bad.linear = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = {};
    bad.linear = 3;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = {};
    bad.quadratic = 2;
    bad.linear = -6;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    LambertSpec dips;
    dips.quadratic = 2;
    dips.linear = -2;
    dips.constant = 1;
    EXPECT_NO_THROW(dips.validate());
}
