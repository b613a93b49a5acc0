#pragma once

#include <string>

#include "floer_structures.hpp"
#include "mapping_class.hpp"

namespace lspace {

// CFD of the twisted I-bundle over the Klein bottle: the u-summand carries
// the pair of rho23 arrows, the v-summand is the square.
inline const char* const klein_cfd_text = R"(# twisted I-bundle over the Klein bottle, reduced
gen u1 i1
gen u2 i1
gen v1 i0
gen v2 i1
gen v3 i1
gen v4 i0
arrow u1 r23 u2
arrow u2 r23 u1
arrow v1 r1 v2
arrow v1 r3 v3
arrow v3 r2 v4
arrow v4 r123 v2
)";

// The eight intersection-point generators before cancelling the provincial
// rectangle x1y1 -> x3y5.
inline const char* const klein_raw_cfd_text = R"(# twisted I-bundle over the Klein bottle, before edge reduction
gen x1y1 i0
gen x2y1 i0
gen x3y3 i0
gen x3y5 i0
gen x1y2 i1
gen x1y4 i1
gen x2y2 i1
gen x2y4 i1
# provincial rectangle
arrow x1y1 i0 x3y5
# domains lost in the cancellation
arrow x1y1 r1 x1y2
arrow x3y5 r123 x2y4
arrow x1y1 r123 x2y4
# surviving contributions
arrow x2y1 r1 x2y2
arrow x1y4 r2 x3y3
arrow x2y1 r3 x1y4
arrow x2y4 r23 x1y2
arrow x3y3 r123 x2y2
arrow x1y2 r23 x2y4
)";

inline TypeD klein_cfd() { return parse_typeD(klein_cfd_text); }
inline TypeD klein_raw_cfd() { return parse_typeD(klein_raw_cfd_text); }

// Dehn twist along phi0. The first seven operations are the ones visible on
// CFD(N); the last two are forced by the DA relations.
inline const char* const tau0_text = R"(gen p i0 i0
gen q i1 i1
gen r i1 i0
op p r1 r1 q
op p r123 r123 q
op p r3,r2 r3 r
op q r2 r23 r
op r - r2 p
op r r3 i1 q
op q r23 r23 q
op p r12 r123 r
op p r3,r23 r3 q
)";

inline const char* const tau0_inverse_text = R"(gen p i0 i0
gen q i1 i1
gen s i1 i0
op p - r3 s
op p r1 r1 q
op p r12 r1 s
op p r123 r123 q
op p r123,r2 r12 p
op q r2 i1 s
op q r23 r23 q
op q r23,r2 r2 p
op s r3 r23 q
op s r3,r2 r2 p
)";

enum class Twist { tau0, tau1 };

// Twists along phi1 are the orientation mirrors of twists along phi0.
inline DABimodule twist_bimodule(Twist which, int power_sign)
{
    if (power_sign != 1 && power_sign != -1) fail("InvalidPower", "power must be +1 or -1");
    DABimodule base = parse_bimodule(power_sign == 1 ? tau0_text : tau0_inverse_text);
    return which == Twist::tau0 ? base : mirror(base);
}

inline TypeD apply_twist(const TypeD& D, Twist which, int power_sign)
{
    return reduce(box_tensor_DA_D(twist_bimodule(which, power_sign), D));
}

// Applies the letters of w to D, leftmost letter first.
inline TypeD apply_word_forward(TypeD D, const TwistWord& w)
{
    const DABimodule t[2][2] = {{twist_bimodule(Twist::tau0, -1), twist_bimodule(Twist::tau0, 1)},
                                {twist_bimodule(Twist::tau1, -1), twist_bimodule(Twist::tau1, 1)}};
    for (const auto& tp : w) {
        const auto& B = t[tp.which][tp.power > 0 ? 1 : 0];
        for (Int k = 0; k < std::llabs(tp.power); ++k) D = reduce(box_tensor_DA_D(B, D));
    }
    return D;
}

inline TypeD apply_word_backward(TypeD D, const TwistWord& w)
{
    TwistWord rev(w.rbegin(), w.rend());
    return apply_word_forward(std::move(D), rev);
}

// Framing of the type A side: CFD(N) after tau1^-1 then tau0. In this frame
// pairing against a type D structure for the gluing g = f * swap reads off
// W(f), and pairing against the solid torus of slope gamma reads off N(gamma).
inline constexpr Mat2 type_a_framing{0, 1, -1, 1}; // tau0 * tau1^-1

inline TypeD klein_cfd_type_a_frame()
{
    return apply_word_forward(klein_cfd(), TwistWord{{1, -1}, {0, 1}});
}

inline TypeA cfa_of_klein() { return dual_type_a(klein_cfd_type_a_frame()); }

inline std::size_t pairing_rank(const TypeA& A, const TypeD& D) { return homology_rank(box_tensor_A_D(A, D)); }

// Solid torus whose meridian has phi-slope phi1: one generator with a rho12 loop.
inline TypeD solid_torus_phi1()
{
    TypeD D;
    D.add_generator("x", 0);
    D.toggle_arrow("x", Basis::r12, "x");
    return D;
}

// Solid torus filling N along gamma = p*phi0 + q*phi1. Twist bimodules act
// on slopes through their matrices, so the meridian phi1 is carried to the
// slope t = framing * gamma by any psi in SL2(Z) with psi(phi1) = t.
inline TypeD solid_torus_cfd(Int p, Int q)
{
    if (std::gcd(p, q) != 1) fail("InvalidSlope", "filling slope (" + std::to_string(p) + "," + std::to_string(q) + ") is not primitive");
    const Int t0 = type_a_framing.a * p + type_a_framing.b * q;
    const Int t1 = type_a_framing.c * p + type_a_framing.d * q;
    // psi = (x t0; y t1) with x t1 - y t0 = 1
    auto [g, u, v] = ext_gcd(t1, -t0);
    (void)g;
    Mat2 psi{u, t0, v, t1};
    return apply_word_backward(solid_torus_phi1(), sl2_word(psi));
}

} // namespace lspace
