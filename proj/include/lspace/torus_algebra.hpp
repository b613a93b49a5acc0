#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lspace {

// Basis of the torus algebra: two idempotents and six Reeb elements.
enum class Basis : std::uint8_t { i0, i1, r1, r2, r3, r12, r23, r123 };

inline constexpr std::array<Basis, 8> all_basis{Basis::i0, Basis::i1, Basis::r1, Basis::r2,
                                                Basis::r3, Basis::r12, Basis::r23, Basis::r123};
inline constexpr std::array<Basis, 6> reeb_basis{Basis::r1, Basis::r2, Basis::r3,
                                                 Basis::r12, Basis::r23, Basis::r123};

struct Sides {
    int left;
    int right;
    constexpr bool operator==(const Sides&) const = default;
};

constexpr Sides idempotent_sides(Basis x)
{
    switch (x) {
    case Basis::i0: return {0, 0};
    case Basis::i1: return {1, 1};
    case Basis::r1: return {0, 1};
    case Basis::r2: return {1, 0};
    case Basis::r3: return {0, 1};
    case Basis::r12: return {0, 0};
    case Basis::r23: return {1, 1};
    case Basis::r123: return {0, 1};
    }
    return {0, 0};
}

constexpr bool is_idempotent(Basis x) { return x == Basis::i0 || x == Basis::i1; }

constexpr Basis idempotent_of(int side) { return side == 0 ? Basis::i0 : Basis::i1; }

namespace detail {

// Reeb elements as intervals [lo, hi] of consecutive indices in {1,2,3}.
constexpr std::pair<int, int> interval(Basis x)
{
    switch (x) {
    case Basis::r1: return {1, 1};
    case Basis::r2: return {2, 2};
    case Basis::r3: return {3, 3};
    case Basis::r12: return {1, 2};
    case Basis::r23: return {2, 3};
    case Basis::r123: return {1, 3};
    default: return {0, 0};
    }
}

constexpr Basis from_interval(int lo, int hi)
{
    if (lo == 1 && hi == 1) return Basis::r1;
    if (lo == 2 && hi == 2) return Basis::r2;
    if (lo == 3 && hi == 3) return Basis::r3;
    if (lo == 1 && hi == 2) return Basis::r12;
    if (lo == 2 && hi == 3) return Basis::r23;
    return Basis::r123;
}

} // namespace detail

// Product of two basis elements; nullopt stands for zero.
constexpr std::optional<Basis> multiply(Basis x, Basis y)
{
    if (idempotent_sides(x).right != idempotent_sides(y).left) return std::nullopt;
    if (is_idempotent(x)) return y;
    if (is_idempotent(y)) return x;
    auto [xl, xh] = detail::interval(x);
    auto [yl, yh] = detail::interval(y);
    if (xh + 1 != yl) return std::nullopt;
    return detail::from_interval(xl, yh);
}

// Orientation-reversing symmetry: rho1 <-> rho3, rho12 <-> rho23, idempotents swapped.
// It is an anti-automorphism: mirror(xy) = mirror(y) mirror(x).
constexpr Basis mirror(Basis x)
{
    switch (x) {
    case Basis::i0: return Basis::i1;
    case Basis::i1: return Basis::i0;
    case Basis::r1: return Basis::r3;
    case Basis::r3: return Basis::r1;
    case Basis::r12: return Basis::r23;
    case Basis::r23: return Basis::r12;
    default: return x;
    }
}

constexpr std::string_view token(Basis x)
{
    constexpr std::array<std::string_view, 8> names{"i0", "i1", "r1", "r2", "r3", "r12", "r23", "r123"};
    return names[static_cast<std::size_t>(x)];
}

inline std::optional<Basis> parse_basis(std::string_view s)
{
    for (Basis b : all_basis)
        if (token(b) == s) return b;
    return std::nullopt;
}

inline Basis parse_basis_or_throw(std::string_view s)
{
    auto b = parse_basis(s);
    if (!b) fail("SyntaxError", "unknown algebra token '" + std::string(s) + "'");
    return *b;
}

// F2-linear combination of basis elements, stored as a bitmask.
class AlgebraElement {
public:
    constexpr AlgebraElement() = default;
    constexpr AlgebraElement(Basis b) : bits_(bit(b)) {}
    constexpr explicit AlgebraElement(std::optional<Basis> b) : bits_(b ? bit(*b) : 0) {}

    constexpr bool is_zero() const { return bits_ == 0; }
    constexpr bool contains(Basis b) const { return (bits_ & bit(b)) != 0; }
    constexpr std::uint8_t bits() const { return bits_; }

    std::vector<Basis> support() const
    {
        std::vector<Basis> out;
        for (Basis b : all_basis)
            if (contains(b)) out.push_back(b);
        return out;
    }

    constexpr AlgebraElement& operator+=(const AlgebraElement& o)
    {
        bits_ ^= o.bits_;
        return *this;
    }
    friend constexpr AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }

    friend constexpr AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b)
    {
        AlgebraElement out;
        for (Basis x : all_basis) {
            if (!a.contains(x)) continue;
            for (Basis y : all_basis)
                if (b.contains(y)) out += AlgebraElement(multiply(x, y));
        }
        return out;
    }

    constexpr bool operator==(const AlgebraElement&) const = default;

    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string s;
        for (Basis b : support()) {
            if (!s.empty()) s += "+";
            s += token(b);
        }
        return s;
    }

private:
    static constexpr std::uint8_t bit(Basis b) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(b)); }
    std::uint8_t bits_ = 0;
};

} // namespace lspace
