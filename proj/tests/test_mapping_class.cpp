#include <gtest/gtest.h>

#include <array>
#include <random>

#include "lspace/mapping_class.hpp"

using namespace lspace;

namespace {

// Plain 2x2 product written out entrywise.
std::array<Int, 4> mul(const std::array<Int, 4>& x, const std::array<Int, 4>& y)
{
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

std::array<Int, 4> expand(const TwistWord& w)
{
    std::array<Int, 4> m{1, 0, 0, 1};
    for (const auto& t : w)
        for (Int k = 0; k < std::llabs(t.power); ++k) {
            const Int s = t.power > 0 ? 1 : -1;
            m = mul(m, t.which == 0 ? std::array<Int, 4>{1, s, 0, 1} : std::array<Int, 4>{1, 0, s, 1});
        }
    return m;
}

} // namespace

TEST(Mat2, ProductAndDeterminant)
{
    const Mat2 x{2, 1, 1, 1}, y{1, 3, 0, 1};
    EXPECT_EQ(x * y, (Mat2{2, 7, 1, 4}));
    EXPECT_EQ((x * y).det(), 1);
    EXPECT_EQ(swap_matrix.det(), -1);
}

TEST(ParseMatrix, AcceptsAndRejects)
{
    EXPECT_EQ(parse_matrix("0,1;1,0"), swap_matrix);
    EXPECT_EQ(parse_matrix("-3,2;-2,1"), (Mat2{-3, 2, -2, 1}));
    EXPECT_THROW(parse_matrix("0,1,1,0"), Error);
    EXPECT_THROW(parse_matrix("0,1;1"), Error);
    EXPECT_THROW(parse_matrix("0,1;1,0 x"), Error);
}

TEST(ParseSlope, Examples)
{
    EXPECT_EQ(parse_slope("3,2"), Slope::make(3, 2));
    EXPECT_EQ(parse_slope("-1,0"), Slope::make(1, 0));
    EXPECT_THROW(parse_slope("0,0"), Error);
    EXPECT_THROW(parse_slope("3"), Error);
}

TEST(Sl2Word, TwistFamilyIsExact)
{
    for (Int a = -4; a <= 4; ++a)
        for (Int b = -4; b <= 4; ++b) {
            TwistWord expect;
            append_power(expect, 0, a);
            append_power(expect, 1, b);
            EXPECT_EQ(sl2_word(Mat2{1 + a * b, a, b, 1}), expect);
        }
}

TEST(Sl2Word, RandomRoundTrip)
{
    std::mt19937_64 rng(123);
    int done = 0;
    while (done < 2000) {
        const Int a = static_cast<Int>(rng() % 401) - 200, c = static_cast<Int>(rng() % 401) - 200;
        if (std::gcd(a, c) != 1) continue;
        auto [g, x, y] = ext_gcd(a, c);
        const Mat2 m{a, -y, c, x};
        ASSERT_EQ(m.det(), 1);
        const auto e = expand(sl2_word(m));
        EXPECT_EQ(e, (std::array<Int, 4>{m.a, m.b, m.c, m.d})) << m.to_string();
        EXPECT_EQ(evaluate(sl2_word(m)), m);
        ++done;
    }
}

TEST(Sl2Word, MinusIdentityAndErrors)
{
    EXPECT_EQ(evaluate(sl2_word({-1, 0, 0, -1})), (Mat2{-1, 0, 0, -1}));
    EXPECT_TRUE(sl2_word({1, 0, 0, 1}).empty());
    EXPECT_THROW(sl2_word(swap_matrix), Error);
}

TEST(WordToString, Format)
{
    EXPECT_EQ(word_to_string({}), "1");
    EXPECT_EQ(word_to_string({{0, 2}, {1, -1}}), "tau0^2 tau1^-1");
}

TEST(ExtGcd, Bezout)
{
    for (Int a = -30; a <= 30; ++a)
        for (Int b = -30; b <= 30; ++b) {
            auto [g, x, y] = ext_gcd(a, b);
            EXPECT_EQ(g, std::gcd(a, b));
            EXPECT_EQ(a * x + b * y, g);
        }
}
