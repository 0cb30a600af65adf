#include "oracle.hpp"

#include "pluri/enclosure.hpp"
#include "pluri/errors.hpp"
#include "pluri/parse.hpp"
#include "pluri/real_expr.hpp"

#include <gtest/gtest.h>

using namespace pluri;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

const Rational& width(int digits)
{
    static std::map<int, Rational> cache;
    auto it = cache.find(digits);
    if (it == cache.end()) {
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits));
        it = cache.emplace(digits, Rational(Integer(1), den)).first;
    }
    return it->second;
}

bool contains(const Enclosure& en, const oracle::Big& x)
{
    const oracle::Big tol = pow(oracle::Big(10), -100) * (1 + abs(x));
    return oracle::big(en.lo) - tol <= x && x <= oracle::big(en.hi) + tol;
}

} // namespace

TEST(Enclose, RationalIsPointInterval)
{
    const auto en = enclose(RealExpr(q(3, 2)), width(3));
    EXPECT_EQ(en.lo, q(3, 2));
    EXPECT_EQ(en.hi, q(3, 2));
}

TEST(Enclose, SqrtTwoAgainstOracle)
{
    const auto en = enclose(sqrt(q(2)), width(3));
    EXPECT_LE(en.width(), width(3));
    EXPECT_TRUE(contains(en, sqrt(oracle::Big(2))));
}

TEST(Enclose, CubeRootByCubingEndpoints)
{
    const auto en = enclose(root(3, q(2660)), width(6));
    EXPECT_LE(en.width(), width(6));
    EXPECT_LE(pow(en.lo, 3), q(2660));
    EXPECT_GE(pow(en.hi, 3), q(2660));
}

TEST(Enclose, NegativeExponentAndDeepTree)
{
    const RealExpr e = RealExpr::power(q(2660), q(-1, 3)) * 3 + frac(sqrt(q(5)) * 7);
    const auto en = enclose(e, width(40));
    const oracle::Big x = 3 / cbrt(oracle::Big(2660)) + (7 * sqrt(oracle::Big(5)) - 15);
    EXPECT_TRUE(contains(en, x));
}

TEST(Compare, ExponentMergeGivesEq)
{
    EXPECT_EQ(compare(sqrt(q(2)) * sqrt(q(2)), RealExpr(2)), Order::EQ);
}

TEST(Compare, CubeRootTwoAboveFiveQuarters)
{
    EXPECT_EQ(compare(root(3, q(2)), RealExpr(q(5, 4))), Order::GT);
}

TEST(Compare, TableOneRowG4N7)
{
    // (a2) at g=4, m=7 (beta = sqrt 8): between 713 and 714.
    const RealExpr b = sqrt(q(8));
    const RealExpr a2 = (3 * b + 6) / (RealExpr(q(5, 7)) * b - 2);
    EXPECT_EQ(compare(a2, RealExpr(714)), Order::LT);
    EXPECT_EQ(compare(a2, RealExpr(713)), Order::GT);
    const auto en = enclose(a2, width(9));
    EXPECT_TRUE(contains(en, (3 * sqrt(oracle::Big(8)) + 6) / (oracle::Big(5) / 7 * sqrt(oracle::Big(8)) - 2)));
}

TEST(Compare, TightestTableOneSeparation)
{
    // (17/19) sqrt 5 - 2 is about 6.9e-4.
    const RealExpr e = RealExpr(q(17, 19)) * sqrt(q(5)) - 2;
    EXPECT_EQ(sign(e), 1);
    EXPECT_EQ(compare(e, RealExpr(q(7, 10000))), Order::LT);
}

TEST(Compare, RationalizedBinomialEq)
{
    const RealExpr e = 1 / (sqrt(q(2)) - 1);
    EXPECT_EQ(compare(e, sqrt(q(2)) + 1), Order::EQ);
    EXPECT_EQ(compare(root(3, q(4)) * root(6, q(4)), RealExpr(2)), Order::EQ);
}

TEST(Floor, Examples)
{
    EXPECT_EQ(floor_of(RealExpr(q(2592, 900))), 2);
    EXPECT_EQ(floor_of(RealExpr(q(7, 2))), 3);
    const RealExpr t = 3 * (1 + sqrt(q(19, 18)));
    EXPECT_EQ(floor_of(t * t), 36);
    EXPECT_EQ(floor_of(RealExpr(q(-7, 2))), -4);
    EXPECT_EQ(ceil_of(sqrt(q(2))), 2);
}

TEST(Floor, ExactIntegerResolvedCanonically)
{
    // Any enclosure straddles 3 here; only the canonical form settles it.
    const RealExpr e = sqrt(q(3)) * sqrt(q(3));
    EXPECT_EQ(floor_of(e), 3);
    EXPECT_EQ(floor_of(sqrt(q(2)) * sqrt(q(8)) - 1), 3);
    EXPECT_EQ(floor_of(1 / (sqrt(q(2)) - 1) - sqrt(q(2))), 1);
}

TEST(Floor, UndecidableThrowsAtCap)
{
    // Differs from 2 by about 2^-300: invisible at a 128-bit cap.
    Integer big_den;
    mpz_ui_pow_ui(big_den.get_mpz_t(), 2, 300);
    const RealExpr hard = RealExpr(2) - RealExpr(Rational(Integer(1), big_den)) * sqrt(q(3));
    EXPECT_THROW((void)floor_of(hard, Precision{64, 128}), PrecisionExhausted);
    EXPECT_EQ(floor_of(hard, Precision{64, 1024}), 1);
}

TEST(Frac, Examples)
{
    EXPECT_EQ(canonicalize(frac_of(RealExpr(q(9, 2)))).rational(), q(1, 2));
    EXPECT_TRUE(canonicalize(frac_of(RealExpr(17))).is_rational());
    EXPECT_EQ(canonicalize(frac_of(RealExpr(17))).rational(), 0);
    // Pi for the 4-fold profile; its fractional part drives the 1709 constant.
    const RealExpr pi = 3 * (3 * root(3, q(2660)) + 1) * q(3, 2);
    const RealExpr f = frac_of(pi);
    EXPECT_EQ(compare(f, RealExpr(q(55, 100))), Order::GT);
    EXPECT_EQ(compare(f, RealExpr(q(56, 100))), Order::LT);
    EXPECT_EQ(floor_of(pi), 191);
}

TEST(Errors, DivisionByZero)
{
    EXPECT_THROW((void)(RealExpr(1) / RealExpr(0)), DivisionByZero);
    const RealExpr z = sqrt(q(2)) - sqrt(q(8)) / 2;
    EXPECT_THROW((void)enclose(1 / z, width(3)), DivisionByZero);
    EXPECT_THROW((void)RealExpr::power(q(-2), q(1, 2)), DomainError);
}

TEST(Properties, RationalClosure)
{
    oracle::Generator gen(7);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational exact = q(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9));
        RealExpr e(exact);
        for (int j = 0; j < 6; ++j) {
            const Rational r = q(1 + static_cast<long>(rng() % 13), 1 + static_cast<long>(rng() % 7));
            switch (rng() % 4) {
            case 0:
                e += RealExpr(r), exact += r;
                break;
            case 1:
                e -= RealExpr(r), exact -= r;
                break;
            case 2:
                e *= RealExpr(r), exact *= r;
                break;
            default:
                e /= RealExpr(r), exact /= r;
                break;
            }
        }
        const auto en = enclose(e, width(5));
        EXPECT_EQ(en.lo, exact);
        EXPECT_EQ(en.hi, exact);
    }
}

TEST(Properties, MonotoneRefinement)
{
    const std::vector<RealExpr> es = {
        sqrt(q(37)), (3 * sqrt(q(37)) + 6) / (sqrt(q(37)) / 3 - 2), root(5, q(2660)) - root(3, q(7)),
        frac(7 * sqrt(q(11))), 1 / (root(3, q(2)) - q(5, 4)),
    };
    for (const auto& e : es) {
        std::optional<Enclosure> prev;
        for (int d = 1; d <= 60; d += 3) {
            const auto en = enclose(e, width(d));
            EXPECT_LE(en.width(), width(d));
            if (prev) {
                EXPECT_TRUE(en.lo <= prev->hi && prev->lo <= en.hi) << e.to_string() << " at 1e-" << d;
            }
            prev = en;
        }
    }
}

TEST(Properties, FloorContract)
{
    oracle::Generator gen(21);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto t = gen.accepted(3);
        const RealExpr e = parse_expression(oracle::render(t));
        const Integer k = floor_of(e, Precision{64, 1024});
        const Order lo = compare(RealExpr(Rational(k)), e, Precision{64, 1024});
        EXPECT_TRUE(lo == Order::LT || lo == Order::EQ) << oracle::render(t);
        EXPECT_EQ(compare(e, RealExpr(Rational(k + 1)), Precision{64, 1024}), Order::LT) << oracle::render(t);
        ++checked;
    }
    EXPECT_EQ(checked, 300);
}

TEST(Properties, CanonicalIdempotent)
{
    oracle::Generator gen(5);
    for (int i = 0; i < 300; ++i) {
        const RealExpr e = parse_expression(oracle::render(gen.accepted(3)));
        const RealExpr once = canonicalize(e);
        EXPECT_TRUE(identical(canonicalize(once), once)) << e.to_string();
    }
    const RealExpr s = sqrt(q(2)) * sqrt(q(2));
    EXPECT_TRUE(canonicalize(s).is_rational());
    EXPECT_EQ(canonicalize(s).rational(), 2);
    EXPECT_TRUE(canonicalize(root(4, q(4)) - sqrt(q(2))).is_rational());
}

TEST(Properties, SoundAgainstOracleOnRandomExpressions)
{
    oracle::Generator gen(2024);
    int checked = 0;
    int rejected = 0;
    while (checked < 1000) {
        const auto t = gen.expr(4);
        oracle::Big x;
        try {
            x = oracle::eval(t);
        } catch (const oracle::Rejected&) {
            ++rejected;
            continue;
        }
        const std::string text = oracle::render(t);
        const RealExpr e = parse_expression(text);
        const auto en = enclose(e, width(30), Precision{64, 1024});
        ASSERT_TRUE(contains(en, x)) << text;
        ASSERT_LE(en.width(), width(30));
        ++checked;
    }
    EXPECT_LT(rejected, 300);
}

TEST(Parse, Grammar)
{
    EXPECT_EQ(parse_expression("1/2 + 3").rational(), q(7, 2));
    EXPECT_EQ(parse_expression("-1.25").rational(), q(-5, 4));
    EXPECT_EQ(compare(parse_expression("root(3, 8)"), RealExpr(2)), Order::EQ);
    EXPECT_EQ(compare(parse_expression("sqrt(19/18)"), sqrt(q(19, 18))), Order::EQ);
    EXPECT_EQ(parse_expression("floor(7/2) + frac(7/2)").rational(), q(7, 2));
    EXPECT_EQ(parse_expression("2*(3-5)/4").rational(), -1);
    EXPECT_THROW((void)parse_expression("sqrt(-2)"), DomainError);
    EXPECT_THROW((void)parse_expression("sqrt(sqrt(2))"), DomainError);
    EXPECT_THROW((void)parse_expression("1 +"), DomainError);
    EXPECT_THROW((void)parse_expression("root(0, 2)"), DomainError);
    EXPECT_THROW((void)parse_expression("2 3"), DomainError);
}

TEST(Parse, RoundTripThroughToString)
{
    oracle::Generator gen(99);
    for (int i = 0; i < 300; ++i) {
        const RealExpr e = parse_expression(oracle::render(gen.accepted(4)));
        const RealExpr back = parse_expression(e.to_string());
        EXPECT_TRUE(identical(e, back)) << e.to_string() << " vs " << back.to_string();
    }
}
