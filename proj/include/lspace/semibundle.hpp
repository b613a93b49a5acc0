#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "bordered_data.hpp"
#include "integer_matrix.hpp"
#include "mapping_class.hpp"

namespace lspace {

inline void require_unimodular(const Mat2& f)
{
    if (f.det() != 1 && f.det() != -1)
        fail("InvalidMatrix", "matrix " + f.to_string() + " has determinant " + std::to_string(f.det()));
}

struct Classification {
    bool seifert; // otherwise Sol
    bool qhs;

    std::string geometry() const { return seifert ? "SeifertFibred" : "Sol"; }
    std::string homology() const { return qhs ? "QHS" : "NotQHS"; }
};

inline Classification classify(const Mat2& f)
{
    require_unimodular(f);
    return {f.a == 0 || f.b == 0 || f.c == 0 || f.d == 0, f.c != 0};
}

// |H1(W(f))|, or nullopt when infinite.
inline std::optional<Int> h1_order(const Mat2& f)
{
    require_unimodular(f);
    if (f.c == 0) return std::nullopt;
    return 16 * std::llabs(f.c);
}

// Abelianized presentation of two copies of <a, b | a^2 b^2> with the
// peripheral classes phi0 = ab and phi1 = b^2 glued by f.
inline AbelianGroup h1_group(const Mat2& f)
{
    require_unimodular(f);
    IntMatrix rel{
        {2, 2, 0, 0},
        {0, 0, 2, 2},
        {1, 1, -f.a, -f.a - 2 * f.c},
        {0, 2, -f.b, -f.b - 2 * f.d},
    };
    return abelian_group(rel, 4);
}

inline Mat2 normalize(const Mat2& f, Int target_det = -1)
{
    require_unimodular(f);
    Mat2 g = f;
    if (g.c < 0) g = -g;
    if (g.det() != target_det) g = g * Mat2{1, 0, 0, -1};
    return g;
}

inline int epsilon(const Mat2& f, const Slope& gamma)
{
    require_unimodular(f);
    if (f.c == 0) fail("NotQHS", "epsilon needs c != 0");
    const Int s = gamma.s, v = f.c * gamma.r + f.d * gamma.s;
    if (s == 0) fail("DegenerateSlope", "gamma is phi0");
    if (v == 0) fail("DegenerateSlope", "f(gamma) is phi0");
    const Int sign = (f.c > 0 ? 1 : -1) * (s > 0 ? 1 : -1) * (v > 0 ? 1 : -1);
    return static_cast<int>(-sign);
}

inline Mat2 triad_surgery(const Mat2& f, const Slope& gamma, Int n)
{
    if (n < 0) fail("InvalidArgument", "n must be non-negative");
    const Int e = epsilon(f, gamma);
    const Int r = gamma.r, s = gamma.s;
    const Int u = f.a * r + f.b * s, v = f.c * r + f.d * s;
    return {f.a - n * e * s * u, f.b + n * e * r * u, f.c - n * e * s * v, f.d + n * e * r * v};
}

inline TwistWord twist_word(const Mat2& f)
{
    const Mat2 n = normalize(f, -1);
    if (n.det() != -1) fail("WrongDeterminant", "normalization did not reach determinant -1");
    TwistWord w = sl2_word(n * swap_matrix);
    if (evaluate(w) * swap_matrix != n) invariant_failure("WordMismatch", "twist word does not reproduce " + n.to_string());
    return w;
}

inline std::size_t hf_rank(const Mat2& f)
{
    static const TypeA A = cfa_of_klein();
    TypeD X = apply_word_forward(klein_cfd(), twist_word(f));
    return pairing_rank(A, X);
}

// Descent certificate: each step writes F with first column (A, C) as the
// n = 1 triad surgery on f = (a, A-2a; c, C-2c) along gamma = phi0 + phi1.
struct CertificateNode {
    Mat2 matrix;
    bool base = false;
    Int a = 0, c = 0;
    Slope gamma{1, 1};
    int eps = 0;
    Int u = 0, v = 0;
    std::unique_ptr<CertificateNode> child;
};

inline std::unique_ptr<CertificateNode> lspace_certificate(const Mat2& f)
{
    require_unimodular(f);
    if (f.c == 0) fail("NotQHS", "c = 0: W(f) is not a rational homology sphere");
    Mat2 F = f.c < 0 ? -f : f;
    auto node = std::make_unique<CertificateNode>();
    node->matrix = F;
    if (F.c == 1) {
        node->base = true;
        return node;
    }
    const Int A = F.a, C = F.c;
    // a C - c A = 1 with 0 < c < C
    auto [g, x, y] = ext_gcd(C, -A);
    (void)g;
    Int a = x, c = y;
    while (c <= 0) { a += A; c += C; }
    while (c >= C) { a -= A; c -= C; }
    const Mat2 small{a, A - 2 * a, c, C - 2 * c};
    node->a = a;
    node->c = c;
    node->eps = epsilon(small, node->gamma);
    node->u = small.a + small.b;
    node->v = small.c + small.d;
    node->child = lspace_certificate(small);
    return node;
}

inline std::size_t certificate_depth(const CertificateNode& n)
{
    return n.child ? 1 + certificate_depth(*n.child) : 1;
}

// Replays a certificate: unimodularity, leaf condition, the triad identity
// 16|C| = 16|c| + 16|s v| and the first column of the surgered matrix.
inline Report verify_certificate(const CertificateNode& n)
{
    if (n.matrix.det() != 1 && n.matrix.det() != -1) return {false, "non-unimodular node " + n.matrix.to_string()};
    if (n.base) {
        if (std::llabs(n.matrix.c) != 1) return {false, "base case with |c| != 1"};
        return {};
    }
    if (!n.child) return {false, "step without child"};
    const Mat2& f = n.child->matrix;
    if (f.det() != 1) return {false, "child not in SL2"};
    if (f.a != n.a || f.c != n.c) return {false, "child first column mismatch"};
    const Mat2 g = triad_surgery(f, n.gamma, 1);
    if (g.a != n.matrix.a || g.c != n.matrix.c) return {false, "surgery does not reach first column of " + n.matrix.to_string()};
    const Int C = std::llabs(n.matrix.c), c = std::llabs(f.c);
    if (!(0 < c && c < C)) return {false, "descent failed"};
    if (16 * C != 16 * c + 16 * std::llabs(n.gamma.s * n.v)) return {false, "triad additivity fails"};
    if (n.v != C - c) return {false, "v != C - c"};
    return verify_certificate(*n.child);
}

inline std::string certificate_to_text(const CertificateNode& n, int indent = 0)
{
    std::ostringstream os;
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    if (n.base) {
        os << "base matrix=" << n.matrix.to_string() << "\n";
        return os.str();
    }
    os << "step a=" << n.a << " c=" << n.c << " gamma=" << n.gamma.to_string() << " eps=" << n.eps
       << " matrix=" << n.matrix.to_string() << " lambda_order=" << 16 * std::llabs(n.gamma.s * n.v) << "\n";
    os << certificate_to_text(*n.child, indent + 1);
    return os.str();
}

} // namespace lspace
