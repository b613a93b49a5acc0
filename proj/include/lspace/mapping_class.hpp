#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace lspace {

using Int = std::int64_t;

// Integer 2x2 matrix (a b; c d) acting on column vectors in the {phi0, phi1} basis.
struct Mat2 {
    Int a = 1, b = 0, c = 0, d = 1;

    constexpr Int det() const { return a * d - b * c; }
    constexpr bool operator==(const Mat2&) const = default;

    friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    constexpr Mat2 operator-() const { return {-a, -b, -c, -d}; }

    std::string to_string() const
    {
        std::ostringstream os;
        os << a << "," << b << ";" << c << "," << d;
        return os.str();
    }
};

inline constexpr Mat2 swap_matrix{0, 1, 1, 0};
inline constexpr Mat2 tau0_matrix{1, 1, 0, 1};
inline constexpr Mat2 tau1_matrix{1, 0, 1, 1};

inline Mat2 parse_matrix(const std::string& s)
{
    Mat2 m;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream is(s);
    if (!(is >> m.a >> c1 >> m.b >> c2 >> m.c >> c3 >> m.d) || c1 != ',' || c2 != ';' || c3 != ',')
        fail("SyntaxError", "matrix must look like a,b;c,d");
    std::string rest;
    if (is >> rest) fail("SyntaxError", "trailing characters after matrix");
    return m;
}

// Slope r*phi0 + s*phi1, stored with s >= 0 and r > 0 when s == 0.
struct Slope {
    Int r = 1, s = 0;

    static Slope make(Int r, Int s)
    {
        if (r == 0 && s == 0) fail("InvalidSlope", "zero vector is not a slope");
        if (std::gcd(r, s) != 1) fail("InvalidSlope", "coordinates must be coprime");
        if (s < 0 || (s == 0 && r < 0)) {
            r = -r;
            s = -s;
        }
        return {r, s};
    }

    constexpr bool operator==(const Slope&) const = default;
    std::string to_string() const { return std::to_string(r) + "," + std::to_string(s); }
};

inline Int delta(Int r1, Int s1, Int r2, Int s2) { return std::llabs(r1 * s2 - s1 * r2); }
inline Int delta(const Slope& g1, const Slope& g2) { return delta(g1.r, g1.s, g2.r, g2.s); }

inline Slope parse_slope(const std::string& s)
{
    Int r = 0, q = 0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> r >> comma >> q) || comma != ',') fail("SyntaxError", "slope must look like r,s");
    return Slope::make(r, q);
}

// Word in the Dehn twists tau0 = (1 1; 0 1) and tau1 = (1 0; 1 1), as runs of powers.
struct TwistPower {
    int which; // 0 or 1
    Int power;
    constexpr bool operator==(const TwistPower&) const = default;
};
using TwistWord = std::vector<TwistPower>;

inline Mat2 twist_power_matrix(const TwistPower& t)
{
    return t.which == 0 ? Mat2{1, t.power, 0, 1} : Mat2{1, 0, t.power, 1};
}

inline Mat2 evaluate(const TwistWord& w)
{
    Mat2 m;
    for (const auto& t : w) m = m * twist_power_matrix(t);
    return m;
}

inline void append_power(TwistWord& w, int which, Int power)
{
    if (power == 0) return;
    if (!w.empty() && w.back().which == which) {
        w.back().power += power;
        if (w.back().power == 0) w.pop_back();
    } else {
        w.push_back({which, power});
    }
}

// Exact factorization of g in SL2(Z) by Euclid on the second column: the
// family tau0^a tau1^b comes out in exactly that form.
inline TwistWord sl2_word(Mat2 g)
{
    if (g.det() != 1) fail("WrongDeterminant", "expected determinant 1, got " + std::to_string(g.det()));
    TwistWord w;
    Mat2 m = g;
    while (m.b != 0) {
        if (m.d == 0) {
            Int k = -m.b; // makes d = b^2 = 1
            m.c -= k * m.a;
            m.d -= k * m.b;
            append_power(w, 1, k);
        } else if (std::llabs(m.b) >= std::llabs(m.d)) {
            Int k = m.b / m.d;
            m.a -= k * m.c;
            m.b -= k * m.d;
            append_power(w, 0, k);
        } else {
            Int k = m.d / m.b;
            m.c -= k * m.a;
            m.d -= k * m.b;
            append_power(w, 1, k);
        }
    }
    if (m.d == 1) {
        append_power(w, 1, m.c);
    } else {
        // m = -I * tau1^(-c); -I = (tau0 tau1^-1 tau0)^2
        append_power(w, 1, -m.c);
        for (int rep = 0; rep < 2; ++rep) {
            append_power(w, 0, 1);
            append_power(w, 1, -1);
            append_power(w, 0, 1);
        }
    }
    return w;
}

inline std::string word_to_string(const TwistWord& w)
{
    if (w.empty()) return "1";
    std::string s;
    for (const auto& t : w) {
        if (!s.empty()) s += " ";
        s += "tau" + std::to_string(t.which) + "^" + std::to_string(t.power);
    }
    return s;
}

// Extended Euclid: returns (g, x, y) with a x + b y = g >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b)
{
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        std::tie(a, b) = std::make_tuple(b, a - q * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

} // namespace lspace
