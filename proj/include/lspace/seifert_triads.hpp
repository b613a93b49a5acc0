#pragma once

#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mapping_class.hpp"

namespace lspace {

// Integer vector r*x + s*y on a torus boundary (not necessarily canonical).
struct Vec2 {
    Int r = 0, s = 0;
    constexpr bool operator==(const Vec2&) const = default;
    friend constexpr Vec2 operator+(Vec2 x, Vec2 y) { return {x.r + y.r, x.s + y.s}; }
    friend constexpr Vec2 operator*(Int k, Vec2 x) { return {k * x.r, k * x.s}; }
    std::string to_string() const { return std::to_string(r) + "," + std::to_string(s); }
};

inline Int cross(Vec2 x, Vec2 y) { return x.r * y.s - x.s * y.r; }

// |H1(N(gamma))| = D * Delta(gamma, longitude).
struct FillingModel {
    Int D = 1;
    Vec2 longitude{1, 0};

    Int h(Vec2 g) const { return D * std::llabs(cross(g, longitude)); }
};

struct CFExpansion {
    Int p = 0, q = 1;
    std::vector<Int> terms;
    std::size_t depth() const { return terms.size(); }
};

// Value of [a1, ..., ar] as (numerator, denominator); the empty list is 1/0.
inline std::pair<Int, Int> cf_value(const std::vector<Int>& terms)
{
    Int num = 1, den = 0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        Int n2 = *it * num + den;
        den = num;
        num = n2;
    }
    return {num, den};
}

// Folds a trailing 1 into the previous term.
inline std::vector<Int> cf_normalize(std::vector<Int> t)
{
    while (t.size() >= 2 && t.back() == 1) {
        t.pop_back();
        t.back() += 1;
    }
    return t;
}

inline CFExpansion cf_expand(Int p, Int q)
{
    if (p < 0 || q < 1) fail("InvalidArgument", "need p >= 0 and q >= 1");
    if (std::gcd(p, q) != 1) fail("NotCoprime", std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
    CFExpansion e{p, q, {}};
    Int a = p, b = q;
    while (b != 0) {
        e.terms.push_back(a / b);
        Int r = a % b;
        a = b;
        b = r;
    }
    e.terms = cf_normalize(e.terms);
    return e;
}

inline void require_basis(Vec2 alpha, Vec2 beta)
{
    if (std::llabs(cross(alpha, beta)) != 1)
        fail("NotABasis", "Delta(" + alpha.to_string() + ", " + beta.to_string() + ") = " + std::to_string(std::llabs(cross(alpha, beta))));
}

inline bool is_triad(const FillingModel& m, Vec2 alpha, Vec2 beta)
{
    require_basis(alpha, beta);
    return m.h(alpha + beta) == m.h(alpha) + m.h(beta);
}

// Node p*alpha + q*beta of the cone induction. Internal nodes split p/q into
// the two neighbouring fractions read off the continued fraction.
struct ConeNode {
    Int p = 0, q = 0;
    Vec2 slope;
    std::string kind; // alpha, beta, chain, depth, last-term
    std::shared_ptr<const ConeNode> first, second;
    bool leaf() const { return !first; }
};
using ConePtr = std::shared_ptr<const ConeNode>;

namespace detail {

inline ConePtr cone_build(Int p, Int q, Vec2 alpha, Vec2 beta, std::map<std::pair<Int, Int>, ConePtr>& memo)
{
    if (auto it = memo.find({p, q}); it != memo.end()) return it->second;
    auto n = std::make_shared<ConeNode>();
    n->p = p;
    n->q = q;
    n->slope = p * alpha + q * beta;
    if (p == 1 && q == 0) {
        n->kind = "alpha";
    } else if (p == 0 && q == 1) {
        n->kind = "beta";
    } else {
        auto terms = cf_expand(p, q).terms;
        std::vector<Int> head(terms.begin(), terms.end() - 1);
        std::vector<Int> dec = terms;
        dec.back() -= 1;
        dec = cf_normalize(dec);
        auto [p1, q1] = cf_value(head);
        auto [p2, q2] = cf_value(dec);
        if (terms.size() == 1) n->kind = "chain";
        else if (terms.back() == 2) n->kind = "depth";
        else n->kind = "last-term";
        n->first = cone_build(p1, q1, alpha, beta, memo);
        n->second = cone_build(p2, q2, alpha, beta, memo);
    }
    memo[{p, q}] = n;
    return n;
}

} // namespace detail

inline ConePtr cone_certificate(const FillingModel& m, Vec2 alpha, Vec2 beta, Int p, Int q)
{
    if (!is_triad(m, alpha, beta)) fail("NotATriad", "(" + alpha.to_string() + ", " + beta.to_string() + ") is not a triad");
    if (p < 0 || q < 0) fail("InvalidArgument", "cone coefficients must be non-negative");
    if (std::gcd(p, q) != 1) fail("NotCoprime", std::to_string(p) + "," + std::to_string(q));
    std::map<std::pair<Int, Int>, ConePtr> memo;
    return detail::cone_build(p, q, alpha, beta, memo);
}

// Checks the convergent identity and h-additivity at every internal node.
inline Report verify_cone(const FillingModel& m, const ConeNode& n)
{
    std::set<const ConeNode*> seen;
    std::vector<const ConeNode*> stack{&n};
    while (!stack.empty()) {
        const ConeNode* x = stack.back();
        stack.pop_back();
        if (!seen.insert(x).second || x->leaf()) continue;
        const ConeNode &a = *x->first, &b = *x->second;
        const std::string at = " at " + std::to_string(x->p) + "," + std::to_string(x->q);
        if (std::llabs(a.p * b.q - b.p * a.q) != 1) return {false, "children not adjacent" + at};
        if (a.p + b.p != x->p || a.q + b.q != x->q) return {false, "children do not sum" + at};
        if (m.h(x->slope) != m.h(a.slope) + m.h(b.slope)) return {false, "h not additive" + at};
        stack.push_back(&a);
        stack.push_back(&b);
    }
    return {};
}

inline std::size_t cone_depth(const ConeNode& n)
{
    if (n.leaf()) return 0;
    return 1 + std::max(cone_depth(*n.first), cone_depth(*n.second));
}

inline std::string cone_to_text(const ConeNode& root)
{
    std::ostringstream os;
    std::set<const ConeNode*> printed;
    auto rec = [&](auto&& self, const ConeNode& n, int indent) -> void {
        os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
        os << n.kind << " p=" << n.p << " q=" << n.q << " slope=" << n.slope.to_string();
        if (n.leaf()) {
            os << "\n";
            return;
        }
        if (!printed.insert(&n).second) {
            os << " (repeat)\n";
            return;
        }
        os << "\n";
        self(self, *n.first, indent + 1);
        self(self, *n.second, indent + 1);
    };
    rec(rec, root, 0);
    return os.str();
}

// Filling of the Seifert space over P^2 with cone points of the given
// orders, along target = r*mu + s*phi0.
struct P2Certificate {
    std::vector<Int> orders;
    Vec2 target;
    Int sector = 0;
    Vec2 alpha, beta;
    Int P = 0, Q = 0;
    FillingModel model;
    ConePtr cone;
    std::string base; // set when there are no cone points
};

inline P2Certificate p2_certificate(const std::vector<Int>& orders, Vec2 target)
{
    if (orders.size() == 1) {
        if (orders[0] < 1) fail("InvalidOrders", "a single cone order must be >= 1");
    } else {
        for (Int a : orders)
            if (a < 2) fail("InvalidOrders", "cone orders must be >= 2");
    }
    if (target.r == 0) fail("LongitudeFilling", "filling along phi0 gives S1 x S2");
    if (std::gcd(target.r, target.s) != 1) fail("InvalidSlope", "target " + target.to_string() + " is not primitive");
    if (target.r < 0) target = -1 * target;

    P2Certificate c;
    c.orders = orders;
    c.target = target;
    if (orders.empty()) {
        c.base = target.s == 0 ? "P3#P3" : "S2(2,2," + std::to_string(std::llabs(target.s)) + ")";
        return c;
    }
    const Int r = target.r, s = target.s;
    Int qs = s / r;
    if (s % r != 0 && s < 0) --qs;
    c.sector = qs;
    c.alpha = {1, qs};
    c.beta = {1, qs + 1};
    const Int rem = s - qs * r;
    c.P = r - rem;
    c.Q = rem;
    Int D = 4;
    for (Int a : orders) D *= a;
    c.model = {D, {0, 1}};
    c.cone = cone_certificate(c.model, c.alpha, c.beta, c.P, c.Q);
    return c;
}

inline std::string p2_to_text(const P2Certificate& c)
{
    std::ostringstream os;
    os << "target " << c.target.to_string() << "\n";
    if (!c.base.empty()) {
        os << "base " << c.base << "\n";
        return os.str();
    }
    os << "sector " << c.sector << "\n";
    os << "alpha " << c.alpha.to_string() << "\n";
    os << "beta " << c.beta.to_string() << "\n";
    os << "cone " << c.P << "," << c.Q << "\n";
    os << "depth " << cone_depth(*c.cone) << "\n";
    os << cone_to_text(*c.cone);
    return os.str();
}

} // namespace lspace
