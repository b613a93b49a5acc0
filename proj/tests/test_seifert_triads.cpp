#include <gtest/gtest.h>

#include "lspace/seifert_triads.hpp"

using namespace lspace;

namespace {

// Farey parents of p/q found by walking the Stern-Brocot tree.
std::pair<std::pair<Int, Int>, std::pair<Int, Int>> farey_parents(Int p, Int q)
{
    std::pair<Int, Int> lo{0, 1}, hi{1, 0};
    for (;;) {
        const std::pair<Int, Int> mid{lo.first + hi.first, lo.second + hi.second};
        if (mid.first == p && mid.second == q) return {lo, hi};
        if (p * mid.second < mid.first * q) hi = mid;
        else lo = mid;
    }
}

void check_farey(const ConeNode& n)
{
    if (n.leaf()) return;
    const auto [lo, hi] = farey_parents(n.p, n.q);
    const std::set<std::pair<Int, Int>> want{lo, hi};
    const std::set<std::pair<Int, Int>> got{{n.first->p, n.first->q}, {n.second->p, n.second->q}};
    EXPECT_EQ(got, want) << n.p << "/" << n.q;
    check_farey(*n.first);
    check_farey(*n.second);
}

} // namespace

TEST(ContinuedFraction, Examples)
{
    EXPECT_EQ(cf_expand(5, 3).terms, (std::vector<Int>{1, 1, 2}));
    EXPECT_EQ(cf_expand(7, 5).terms, (std::vector<Int>{1, 2, 2}));
    EXPECT_EQ(cf_expand(3, 1).terms, (std::vector<Int>{3}));
    EXPECT_EQ(cf_expand(1, 1).terms, (std::vector<Int>{1}));
    EXPECT_EQ(cf_expand(0, 1).terms, (std::vector<Int>{0}));
    EXPECT_EQ(cf_value({}), (std::pair<Int, Int>{1, 0}));
    EXPECT_THROW(cf_expand(4, 6), Error);
    EXPECT_THROW(cf_expand(-1, 2), Error);
    EXPECT_THROW(cf_expand(1, 0), Error);
}

TEST(ContinuedFraction, ExactRoundTrip)
{
    for (Int p = 0; p <= 80; ++p)
        for (Int q = 1; q <= 80; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const auto e = cf_expand(p, q);
            EXPECT_EQ(cf_value(e.terms), (std::pair<Int, Int>{p, q}));
            if (e.terms.size() >= 2) {
                EXPECT_GE(e.terms.back(), 2);
            }
            for (std::size_t i = 1; i < e.terms.size(); ++i) EXPECT_GE(e.terms[i], 1);
        }
}

TEST(Triads, Examples)
{
    const FillingModel m{4, {0, 1}};
    EXPECT_TRUE(is_triad(m, {1, 0}, {1, 1}));
    EXPECT_FALSE(is_triad(m, {1, 0}, {-1, 1}));
    EXPECT_THROW(is_triad(m, {1, 0}, {1, 2}), Error);
}

TEST(Cone, Leaves)
{
    const FillingModel m{4, {0, 1}};
    auto a = cone_certificate(m, {1, 0}, {1, 1}, 1, 0);
    EXPECT_TRUE(a->leaf());
    EXPECT_EQ(a->kind, "alpha");
    EXPECT_EQ(cone_certificate(m, {1, 0}, {1, 1}, 0, 1)->kind, "beta");
}

TEST(Cone, ChainFamily)
{
    const FillingModel m{8, {0, 1}};
    for (Int n = 1; n <= 12; ++n) {
        auto c = cone_certificate(m, {1, 0}, {1, 1}, n, 1);
        EXPECT_EQ(c->kind, "chain");
        EXPECT_EQ(cone_depth(*c), static_cast<std::size_t>(n));
        EXPECT_TRUE(verify_cone(m, *c).ok);
    }
}

TEST(Cone, FiveThirds)
{
    const FillingModel m{4, {0, 1}};
    auto c = cone_certificate(m, {1, 0}, {1, 1}, 5, 3);
    EXPECT_EQ(c->slope, (Vec2{8, 3}));
    EXPECT_TRUE(verify_cone(m, *c).ok);
    check_farey(*c);
}

TEST(Cone, RepeatedNodesAreShared)
{
    const FillingModel m{4, {0, 1}};
    auto c = cone_certificate(m, {1, 0}, {1, 1}, 3, 2);
    EXPECT_NE(cone_to_text(*c).find("(repeat)"), std::string::npos);
}

TEST(Cone, FareyParentsEverywhere)
{
    const FillingModel m{12, {0, 1}};
    for (Int p = 0; p <= 40; ++p)
        for (Int q = 0; q <= 40; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto c = cone_certificate(m, {2, 1}, {3, 1}, p, q);
            EXPECT_EQ(c->slope, (Vec2{2 * p + 3 * q, p + q}));
            EXPECT_TRUE(verify_cone(m, *c).ok);
            check_farey(*c);
        }
}

TEST(Cone, Errors)
{
    const FillingModel m{4, {0, 1}};
    EXPECT_THROW(cone_certificate(m, {1, 0}, {-1, 1}, 1, 1), Error);
    EXPECT_THROW(cone_certificate(m, {1, 0}, {1, 1}, 2, 4), Error);
    EXPECT_THROW(cone_certificate(m, {1, 0}, {1, 1}, -1, 1), Error);
}

TEST(P2, Examples)
{
    auto c = p2_certificate({2, 3}, {1, 0});
    EXPECT_EQ(c.model.D, 24);
    EXPECT_EQ(c.P, 1);
    EXPECT_EQ(c.Q, 0);
    EXPECT_TRUE(c.cone->leaf());

    c = p2_certificate({2, 3}, {3, 2});
    EXPECT_EQ(c.sector, 0);
    EXPECT_EQ(c.cone->slope, (Vec2{3, 2}));

    c = p2_certificate({5}, {-3, 7});
    EXPECT_EQ(c.target, (Vec2{3, -7}));
    EXPECT_EQ(c.sector, -3);
    EXPECT_EQ(c.cone->slope, (Vec2{3, -7}));
}

TEST(P2, BaseCases)
{
    EXPECT_EQ(p2_certificate({}, {1, 0}).base, "P3#P3");
    EXPECT_EQ(p2_certificate({}, {1, 3}).base, "S2(2,2,3)");
    EXPECT_EQ(p2_certificate({}, {1, -3}).base, "S2(2,2,3)");
}

TEST(P2, Errors)
{
    EXPECT_THROW(p2_certificate({1, 2}, {1, 0}), Error);
    EXPECT_THROW(p2_certificate({2}, {0, 1}), Error);
    EXPECT_THROW(p2_certificate({2}, {2, 4}), Error);
}

TEST(P2, SectorsCoverAllSlopes)
{
    for (Int r = -100; r <= 100; ++r)
        for (Int s = -100; s <= 100; ++s) {
            if (r == 0 || std::gcd(r, s) != 1) continue;
            const auto c = p2_certificate({2, 2}, {r, s});
            const Vec2 t = r > 0 ? Vec2{r, s} : Vec2{-r, -s};
            ASSERT_EQ(c.cone->slope, t) << r << "," << s;
            EXPECT_GE(c.P, 0);
            EXPECT_GE(c.Q, 0);
            EXPECT_TRUE(verify_cone(c.model, *c.cone).ok);
        }
}
