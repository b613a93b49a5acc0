#pragma once

#include <cmath>
#include <cstdio>
#include <complex>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace lspace::fig8 {

using cplx = std::complex<double>;
using Mat = Eigen::Matrix2cd;

inline constexpr double pole_tol = 1e-12;
inline constexpr double residual_tol = 1e-9;

inline double kappa(double a, double b, double c) { return a * a + b * b + c * c - a * b * c - 2; }

struct CharacterPoint {
    double a, b, c;
};

inline void require_not_pole(double a)
{
    if (std::abs(a - 1) < pole_tol) fail("PoleAtOne", "a = 1 is not on the character curve");
}

inline CharacterPoint x0_point(double a)
{
    require_not_pole(a);
    return {a, a, a / (a - 1)};
}

inline double kappa_on_curve(double a)
{
    const auto p = x0_point(a);
    return kappa(p.a, p.b, p.c);
}

inline bool su2_locus(double a)
{
    require_not_pole(a);
    const double s5 = std::sqrt(5.0);
    return (-(s5 + 1) / 2 <= a && a <= (s5 - 1) / 2) || a == 2;
}

inline bool sl2r_locus(double a) { return kappa_on_curve(a) >= 2; }

// Images of x, y and the meridian t for the fibred presentation
// <x, y, t | t x t^-1 = x y x^2, t y t^-1 = x^-1>.
struct Representation {
    double a = 0;
    Mat X, Y, T;
    double residual = 0;
    bool real = false;
};

inline std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline double norm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline Mat commutator(const Mat& g, const Mat& h) { return g * h * g.inverse() * h.inverse(); }

inline Representation build_rep(double a)
{
    const auto pt = x0_point(a);
    const double c = pt.c;
    if (std::abs(kappa(pt.a, pt.b, pt.c) - 2) < 1e-9) fail("ReducibleCharacter", "kappa = 2 at a = " + num(a));

    // X = (a 1; -1 0), Y = (p q; r a-p) with tr XY = c and det Y = 1.
    double p = std::abs(a * a - 4) > 1e-12 && a * a < 4 ? a * (c - 2) / (a * a - 4) : 0.0;
    auto disc = [&](double pp) { return (c - a * pp) * (c - a * pp) + 4 * (pp * (a - pp) - 1); };
    if (a * a >= 4)
        for (int it = 0; it < 200 && disc(p) < 1; ++it) p += 1;
    const cplx q = (-(c - a * p) + std::sqrt(cplx(disc(p), 0))) / 2.0;
    const cplx r = c + q - a * p;
    Representation rep;
    rep.a = a;
    rep.X << a, 1, -1, 0;
    rep.Y << p, q, r, a - p;

    // T solves T X = (X Y X^2) T and T Y = X^-1 T; take the null vector.
    const Mat P = rep.X * rep.Y * rep.X * rep.X, Q = rep.X.inverse();
    Eigen::Matrix<cplx, 8, 4> M = Eigen::Matrix<cplx, 8, 4>::Zero();
    auto idx = [](int i, int j) { return 2 * i + j; };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                // (T X - P T)_{ij} = sum_k T_ik X_kj - P_ik T_kj
                M(idx(i, j), idx(i, k)) += rep.X(k, j);
                M(idx(i, j), idx(k, j)) -= P(i, k);
                M(4 + idx(i, j), idx(i, k)) += rep.Y(k, j);
                M(4 + idx(i, j), idx(k, j)) -= Q(i, k);
            }
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 8, 4>> svd(M, Eigen::ComputeFullV);
    const auto sv = svd.singularValues();
    if (sv(3) > 1e-8 * std::max(1.0, sv(0)) || sv(2) < 1e-8 * std::max(1.0, sv(0)))
        fail("NoSolution", "conjugating system at a = " + num(a) + " has no unique solution");
    Eigen::Vector4cd v = svd.matrixV().col(3);
    Mat T;
    T << v(0), v(1), v(2), v(3);
    T /= std::sqrt(T.determinant());
    if (T.trace().real() < 0) T = -T;
    rep.T = T;
    const Mat Ti = T.inverse();
    // relative to the size of the entries, which grow like a^4
    rep.residual = std::max(norm(T * rep.X * Ti - P) / std::max(1.0, norm(P)), norm(T * rep.Y * Ti - Q) / std::max(1.0, norm(Q)));
    if (rep.residual > residual_tol)
        fail("NoSolution", "relation residual " + num(rep.residual) + " at a = " + num(a));
    double imag = 0;
    for (const Mat* m : {&rep.X, &rep.Y, &rep.T}) imag = std::max(imag, m->imag().cwiseAbs().maxCoeff());
    rep.real = imag < 1e-9;
    return rep;
}

struct BoundaryData {
    double trace_mu = 0, trace_lambda = 0;
    double l_mu = 0, l_lambda = 0; // signed log-eigenvalues on the common eigenvector
};

inline BoundaryData boundary_data(const Representation& rep)
{
    const Mat L = commutator(rep.X, rep.Y);
    if (norm(rep.T * L - L * rep.T) > 1e-7 * std::max(1.0, norm(rep.T) * norm(L))) fail("NonPeripheralCommutation", "meridian and longitude do not commute");
    BoundaryData b;
    b.trace_mu = rep.T.trace().real();
    b.trace_lambda = L.trace().real();
    if (std::abs(L.trace() - kappa_on_curve(rep.a)) > 1e-6)
        invariant_failure("TraceMismatch", "trace of the longitude differs from kappa at a = " + num(rep.a));
    Eigen::ComplexEigenSolver<Mat> es(L);
    const int dom = std::abs(es.eigenvalues()(0)) >= std::abs(es.eigenvalues()(1)) ? 0 : 1;
    const Eigen::Vector2cd v = es.eigenvectors().col(dom);
    const Eigen::Vector2cd tv = rep.T * v;
    const int k = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
    const cplx tau = tv(k) / v(k);
    b.l_lambda = std::log(std::abs(es.eigenvalues()(dom)));
    b.l_mu = std::log(std::abs(tau));
    return b;
}

// Boundary data at the reducible endpoint a = 2, as the limit along the real curve.
inline BoundaryData boundary_limit_at_two()
{
    const double golden = (1 + std::sqrt(5.0)) / 2;
    return {std::sqrt(5.0), 2.0, -std::log(golden), 0.0};
}

inline BoundaryData boundary_at(double a)
{
    if (a == 2) return boundary_limit_at_two();
    return boundary_data(build_rep(a));
}

inline double slope_killed(const BoundaryData& b)
{
    if (std::abs(b.l_mu) < 1e-12) fail("DegenerateBoundary", "meridian has zero translation length");
    return -b.l_lambda / b.l_mu;
}

struct SweepRow {
    double a = 0;
    BoundaryData data;
    double r = 0;
    std::string error; // code when the point failed
};

inline std::vector<SweepRow> sweep(double a0, double a1, std::size_t samples, unsigned jobs = 1)
{
    if (samples == 0) fail("InvalidArgument", "need at least one sample");
    std::vector<SweepRow> rows(samples);
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < samples; i += step) {
            auto& row = rows[i];
            row.a = samples == 1 ? a0 : a0 + (a1 - a0) * static_cast<double>(i) / static_cast<double>(samples - 1);
            try {
                row.data = boundary_at(row.a);
                row.r = slope_killed(row.data);
            } catch (const Error& e) {
                row.error = e.code();
            }
        }
    };
    jobs = std::max(1u, jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    work(0, jobs);
    for (auto& t : pool) t.join();
    return rows;
}

struct Witness {
    double a = 2;
    double r = 0;       // slope realized by a (non-negative)
    bool mirrored = false; // negative target reached through the amphicheiral symmetry
    double residual = 0;   // distance of T^p L^q from +-I, when p/q was given
};

inline double slope_at(double a) { return slope_killed(boundary_at(a)); }

// Upper end of the bisection bracket; past it the conjugating system is
// too ill-conditioned for the relation residual to hold.
inline constexpr double witness_bracket_max = 1000;

// Bisection for r(a) = |target| on the real curve a >= 2. Negative slopes
// use the amphicheiral symmetry. When q != 0 the witness also reports how
// far T^|p| L^|q| is from +-I.
inline Witness surgery_witness(double target, long p = 0, long q = 0)
{
    if (!(std::abs(target) < 4)) fail("SlopeOutOfRange", "no witness for |r| >= 4");
    Witness w;
    w.mirrored = target < 0;
    const double goal = std::abs(target);
    auto r_of = [](double a) {
        try {
            return slope_at(a);
        } catch (const Error& e) {
            if (e.code() == "ReducibleCharacter") return 0.0;
            throw;
        }
    };
    if (goal > 0) {
        double lo = 2, hi = witness_bracket_max;
        if (r_of(hi) < goal) fail("SlopeOutOfRange", "slope " + num(goal) + " lies beyond the bracket");
        for (int it = 0; it < 80; ++it) {
            const double mid = (lo + hi) / 2, r = r_of(mid);
            if (std::abs(r - goal) < 1e-10) {
                lo = hi = mid;
                break;
            }
            (r < goal ? lo : hi) = mid;
        }
        w.a = (lo + hi) / 2;
        w.r = r_of(w.a);
    }
    if (q != 0 && goal > 0) {
        const auto rep = build_rep(w.a);
        const Mat L = commutator(rep.X, rep.Y);
        auto power = [](const Mat& m, long e) {
            Mat out = Mat::Identity();
            for (long i = 0; i < e; ++i) out *= m;
            return out;
        };
        const Mat A = power(rep.T, std::labs(p)), B = power(L, std::labs(q));
        const Mat g = A * B;
        w.residual = std::min(norm(g - Mat::Identity()), norm(g + Mat::Identity())) / std::max(1.0, norm(A) * norm(B));
    }
    return w;
}

} // namespace lspace::fig8
