#include "qident/dsl.hpp"
#include "qident/registry.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qident;

namespace {

std::vector<long> ints(const Series& s) {
    std::vector<long> out;
    for (const auto& c : s.coefficients()) out.push_back(c.get_num().get_si());
    return out;
}

Expr random_leaf(std::mt19937_64& rng) {
    const std::int64_t chars[] = {-4, -3, 5, 8, 12, -7, 1};
    const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    switch (pick(6)) {
        case 0: return poch(1 + pick(5), 1 + pick(5));
        case 1: return eta(1 + pick(12));
        case 2: return divser(chars[pick(7)], 1 + pick(3));
        case 3: return lambert3(chars[pick(7)]);
        case 4: return lambert2(chars[pick(7)]);
        default: return integer(1 + pick(3));
    }
}

Expr random_expr(std::mt19937_64& rng, int depth) {
    if (depth == 0 || rng() % 3 == 0) return random_leaf(rng);
    switch (rng() % 3) {
        case 0: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
        case 1: return random_expr(rng, depth - 1) / random_expr(rng, depth - 1);
        default: return pow(random_expr(rng, depth - 1), static_cast<long>(rng() % 7) - 3);
    }
}

dsl::ParseError parse_error(const std::string& text) {
    try {
        dsl::parse(text);
    } catch (const dsl::ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for '" << text << "'";
    return dsl::ParseError(0, {}, "");
}

bool expects(const dsl::ParseError& e, const std::string& token) {
    return std::find(e.expected().begin(), e.expected().end(), token) != e.expected().end();
}

}  // namespace

TEST(Parse, ProductOfPochhammers) {
    const Expr e = dsl::parse("poch(2,4)^2 * poch(4,4)^6 / poch(1,2)^4");
    EXPECT_EQ(e, pow(poch(2, 4), 2) * pow(poch(4, 4), 6) / pow(poch(1, 2), 4));
}

TEST(Parse, EtaQuotient) {
    EXPECT_EQ(dsl::parse("eta(3)^9 / eta(1)^3"), pow(eta(3), 9) / pow(eta(1), 3));
    EXPECT_EQ(dsl::parse("  eta( 3 )^ -2"), pow(eta(3), -2));
}

TEST(Parse, CharactersAndConstants) {
    EXPECT_EQ(dsl::parse("divser(kron(-4),2)"), divser(-4, 2));
    EXPECT_EQ(dsl::parse("lambert3(kron(-3))*lambert2(kron(5))"), lambert3(-3) * lambert2(5));
    EXPECT_EQ(dsl::parse("12345678901234567890123"), integer(BigInt("12345678901234567890123")));
    EXPECT_EQ(dsl::parse("(eta(1))"), eta(1));
}

TEST(Parse, LeftAssociative) {
    EXPECT_EQ(dsl::parse("eta(1)/eta(2)*eta(3)"), (eta(1) / eta(2)) * eta(3));
    EXPECT_EQ(dsl::parse("eta(1)/(eta(2)*eta(3))"), eta(1) / (eta(2) * eta(3)));
}

TEST(Parse, SpansCoverSource) {
    const Expr e = dsl::parse("eta(1) / poch(1,2)^3");
    EXPECT_EQ(e.span(), (SourceSpan{0, 20}));
    const auto* d = e.get_if<node::Div>();
    ASSERT_NE(d, nullptr);
    EXPECT_EQ(d->rhs.span(), (SourceSpan{9, 20}));
}

TEST(ParseErrors, Positions) {
    const auto unclosed = parse_error("lambert3(kron(-4)");
    EXPECT_EQ(unclosed.position(), 17u);
    EXPECT_TRUE(expects(unclosed, "')'"));

    const auto chained = parse_error("eta(1)^2^3");
    EXPECT_EQ(chained.position(), 8u);

    EXPECT_EQ(parse_error("eta(0)").position(), 4u);
    EXPECT_EQ(parse_error("divser(kron(0),1)").position(), 12u);
    EXPECT_EQ(parse_error("divser(kron(5),0)").position(), 15u);
    EXPECT_EQ(parse_error("").position(), 0u);
    EXPECT_EQ(parse_error("foo(1)").position(), 0u);
    EXPECT_EQ(parse_error("eta(1) eta(2)").position(), 7u);
    EXPECT_EQ(parse_error("eta(1)*").position(), 7u);
    EXPECT_EQ(parse_error("eta(1) + eta(2)").position(), 7u);
    EXPECT_EQ(parse_error("poch(1;2)").position(), 6u);
    EXPECT_EQ(parse_error("divser(-4,2)").position(), 7u);
    EXPECT_EQ(parse_error("eta(1)^99999999999999999999").position(), 7u);
    EXPECT_TRUE(expects(parse_error("divser(-4,2)"), "'kron'"));
}

TEST(Render, Canonical) {
    EXPECT_EQ(dsl::render(dsl::parse("eta( 2 )^6*eta(4)^4 / eta(1)^4")), "eta(2)^6*eta(4)^4/eta(1)^4");
    EXPECT_EQ(dsl::render(eta(1) / (eta(2) * eta(3))), "eta(1)/(eta(2)*eta(3))");
    EXPECT_EQ(dsl::render(pow(pow(eta(2), 2), -3)), "(eta(2)^2)^-3");
    EXPECT_EQ(dsl::render(divser(-4, 2)), "divser(kron(-4),2)");
    EXPECT_FALSE(dsl::render(lambert(lambert_specs::beta3())).has_value());
    EXPECT_FALSE(dsl::render(eta(1) - eta(2)).has_value());
}

TEST(Render, RoundTripOnRandomTrees) {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 300; ++t) {
        const Expr e = random_expr(rng, 4);
        const auto text = dsl::render(e);
        ASSERT_TRUE(text.has_value());
        const Expr back = dsl::parse(*text);
        EXPECT_EQ(back, e) << *text;
        EXPECT_EQ(dsl::render(back), text);
    }
}

TEST(Eval, Examples) {
    EXPECT_EQ(dsl::eval_expr(dsl::parse("eta(1)"), 13), pochhammer(1, 1, 13));
    EXPECT_EQ(ints(dsl::eval_expr(dsl::parse("divser(kron(-4),2)"), 5)), (std::vector<long>{1, 4, 8, 16, 26}));
    EXPECT_EQ(dsl::eval_expr(dsl::parse("lambert3(kron(-4))"), 100),
              dsl::eval_expr(dsl::parse("poch(2,4)^2*poch(4,4)^6/poch(1,2)^4"), 100));
    EXPECT_EQ(ints(dsl::eval_expr(dsl::parse("poch(1,2)^0"), 3)), (std::vector<long>{1, 0, 0}));
    EXPECT_EQ(ints(dsl::eval_expr(dsl::parse("3*eta(1)"), 3)), (std::vector<long>{3, -3, -3}));
    EXPECT_THROW(dsl::eval_expr(dsl::parse("eta(1)"), 0), std::invalid_argument);
}

TEST(Eval, NonUnitDivisionCarriesSpan) {
    try {
        dsl::eval_expr(dsl::parse("eta(2) * (eta(1)/0)"), 10);
        FAIL() << "expected EvalError";
    } catch (const EvalError& e) {
        EXPECT_EQ(e.span(), (SourceSpan{10, 18}));
    }
    try {
        dsl::eval_expr(dsl::parse("eta(1) * 0^-1"), 10);
        FAIL() << "expected EvalError";
    } catch (const EvalError& e) {
        EXPECT_EQ(e.span(), (SourceSpan{9, 13}));
    }
}

TEST(Eval, RegistryEntriesThroughText) {
    std::size_t both_sides = 0;
    for (const auto& e : builtin_registry()) {
        const auto rhs_text = dsl::render(e.rhs);
        ASSERT_TRUE(rhs_text.has_value()) << e.id;
        EXPECT_EQ(dsl::eval_expr(dsl::parse(*rhs_text), 100), evaluate(e.rhs, 100)) << e.id;
        if (const auto lhs_text = dsl::render(e.lhs)) {
            EXPECT_EQ(dsl::eval_expr(dsl::parse(*lhs_text), 100), evaluate(e.lhs, 100)) << e.id;
            ++both_sides;
        }
    }
    EXPECT_GE(both_sides, 18u);
}
