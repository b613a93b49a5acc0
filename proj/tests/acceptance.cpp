// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "lspace/bordered_data.hpp"
#include "lspace/fig8_characters.hpp"
#include "lspace/link_diagrams.hpp"
#include "lspace/seifert_triads.hpp"
#include "lspace/semibundle.hpp"

using namespace lspace;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome failed(const std::string& why) { return {false, why}; }

Mat2 random_unimodular(std::mt19937_64& rng, Int cmin, Int cmax)
{
    for (;;) {
        Int c = cmin + static_cast<Int>(rng() % static_cast<std::uint64_t>(cmax - cmin + 1));
        if (rng() % 2) c = -c;
        const Int a = static_cast<Int>(rng() % 41) - 20;
        if (std::gcd(a, c) != 1) continue;
        auto [g, x, y] = ext_gcd(a, c);
        Mat2 f{a, -y, c, x};
        f = f * Mat2{1, static_cast<Int>(rng() % 7) - 3, 0, 1};
        if (rng() % 2) f = f * Mat2{1, 0, 0, -1};
        return f;
    }
}

std::vector<Mat2> criterion5_matrices()
{
    std::mt19937_64 rng(20240501);
    std::vector<Mat2> out;
    for (int i = 0; i < 50; ++i) out.push_back(random_unimodular(rng, 1, 8));
    return out;
}

Diagram load_link(const std::string& name)
{
    std::ifstream in(std::string(LSPACE_FIXTURES_DIR) + "/links/" + name + ".pd");
    if (!in) invariant_failure("MissingFixture", name);
    std::stringstream ss;
    ss << in.rdbuf();
    return build_diagram(parse_pd(ss.str()));
}

Outcome c1()
{
    const TypeD D = klein_cfd();
    if (auto r = validate_typeD(D); !r.ok) return failed(r.detail);
    std::size_t i0 = 0;
    for (const auto& [g, i] : D.generators()) i0 += i == 0;
    if (D.size() != 6 || i0 != 2) return failed("wrong generator count or idempotents");
    const std::set<Arrow> want{{"u1", Basis::r23, "u2"}, {"u2", Basis::r23, "u1"}, {"v1", Basis::r1, "v2"},
                               {"v1", Basis::r3, "v3"},  {"v3", Basis::r2, "v4"},  {"v4", Basis::r123, "v2"}};
    if (D.arrows() != want) return failed("arrow set differs");
    return {true, "6 generators, 6 arrows, d^2 = 0"};
}

Outcome c2()
{
    const TypeD raw = klein_raw_cfd();
    auto [R, trace] = edge_reduce(raw);
    if (trace.size() != 1) return failed(std::to_string(trace.size()) + " cancellations");
    if (trace[0].lost.size() != 3) return failed(std::to_string(trace[0].lost.size()) + " lost arrows");
    if (!graphs_isomorphic(R, klein_cfd())) return failed("reduced graph is not the shipped structure");
    return {true, "1 cancellation, 3 lost contributions"};
}

Outcome c3()
{
    const TypeD D = klein_cfd();
    for (int n = -3; n <= 3; ++n) {
        TypeD X = D;
        for (int k = 0; k < std::abs(n); ++k) X = apply_twist(X, Twist::tau0, n > 0 ? 1 : -1);
        if (!graphs_isomorphic(X, D)) return failed("n = " + std::to_string(n));
    }
    return {true, "n = -3..3"};
}

Outcome c4()
{
    for (Int a = -3; a <= 3; ++a)
        for (Int b = -3; b <= 3; ++b) {
            const Mat2 f{a, a * b + 1, 1, b};
            if (hf_rank(f) != 16) return failed("rank " + std::to_string(hf_rank(f)) + " at " + f.to_string());
        }
    return {true, "49 cases"};
}

Outcome c5()
{
    for (const Mat2& f : criterion5_matrices()) {
        const std::size_t r = hf_rank(f);
        if (static_cast<Int>(r) != 16 * std::llabs(f.c)) return failed("rank " + std::to_string(r) + " at " + f.to_string());
    }
    return {true, "50 matrices"};
}

Outcome c6()
{
    if (h1_group(swap_matrix).factors() != std::vector<Int>{4, 4}) return failed("swap gives " + h1_group(swap_matrix).to_string());
    for (const Mat2& f : criterion5_matrices())
        if (h1_group(f).order() != 16 * std::llabs(f.c)) return failed("order mismatch at " + f.to_string());
    return {true, "Z/4 + Z/4 and 50 orders"};
}

Outcome c7()
{
    std::mt19937_64 rng(777);
    for (int i = 0; i < 100; ++i) {
        const Mat2 f = random_unimodular(rng, 2, 50);
        const auto cert = lspace_certificate(f);
        if (auto r = verify_certificate(*cert); !r.ok) return failed(f.to_string() + ": " + r.detail);
    }
    return {true, "100 certificates replayed"};
}

Outcome c8()
{
    const std::vector<std::pair<Int, Int>> fracs{{5, 3}, {7, 5}, {8, 3}, {13, 8}, {21, 13}};
    const FillingModel m{4, {0, 1}};
    for (auto [p, q] : fracs) {
        const auto cone = cone_certificate(m, {1, 0}, {1, 1}, p, q);
        if (auto r = verify_cone(m, *cone); !r.ok) return failed(std::to_string(p) + "/" + std::to_string(q) + ": " + r.detail);
        if (cone->slope != Vec2{p + q, q}) return failed("root slope");
    }
    return {true, "5 trees"};
}

Outcome c9()
{
    const std::vector<std::pair<std::string, Int>> table{{"3_1", 3}, {"4_1", 5}, {"5_1", 5},  {"5_2", 7},  {"6_1", 9},
                                                         {"6_2", 11}, {"6_3", 13}, {"7_4", 15}, {"8_18", 45}, {"hopf", 2}};
    for (const auto& [name, det] : table) {
        const Diagram d = load_link(name);
        if (strict_order_search(d).sat) return failed(name + " is SAT");
        if (alternating_collapse_certificate(d).final_classes != 1) return failed(name + " does not collapse");
        const auto g = abelianization(wada(d));
        Int order = 1;
        for (Int t : g.torsion) order *= t;
        const Int gd = std::llabs(goeritz_determinant(d));
        if (order != gd || gd != det)
            return failed(name + ": torsion " + std::to_string(order) + ", Goeritz " + std::to_string(gd));
    }
    return {true, "10 fixtures"};
}

Outcome c10()
{
    for (const std::string name : {"3_1", "3_1_mirror", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_4", "8_18", "nonalt5", "nonalt_sat", "unknot"}) {
        const Diagram d = load_link(name);
        if (d.components != 1) return failed(name + " is not a knot");
        const auto g = abelianization(wada(d));
        if (g.free_rank != 1) return failed(name + " has free rank " + std::to_string(g.free_rank));
    }
    if (abelianization(wada(load_link("unlink2"))).free_rank != 2) return failed("unlink free rank");
    return {true, "13 knots and the unlink"};
}

Outcome c11()
{
    using namespace lspace::fig8;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-50, 50);
    for (int i = 0; i < 10000; ++i) {
        const double a = U(rng);
        if (std::abs(a - 1) < 1e-3) continue;
        const double t = a - 1, k = t * t + t - 2 + 1 / t + 1 / (t * t);
        if (std::abs(kappa_on_curve(a) - k) > 1e-12 * std::abs(k)) return failed("kappa identity at a = " + num(a));
    }
    for (double a : {(std::sqrt(5.0) - 1) / 2, -(std::sqrt(5.0) + 1) / 2}) {
        const double m = std::max(std::abs(a), std::abs(kappa_on_curve(a)));
        if (std::abs(m - 2) > 1e-9) return failed("SU(2) boundary at a = " + num(a) + " gives " + num(m));
    }
    for (int i = 0; i < 16; ++i) {
        const double r = 0.25 * i;
        const auto w = surgery_witness(r);
        if (std::abs(slope_at(w.a) - r) > 1e-6) return failed("slope " + num(r) + " missed");
    }
    const auto w = surgery_witness(1, 1, 1);
    if (!(w.residual <= 1e-6)) return failed("rho(mu lambda) residual " + num(w.residual));
    return {true, "identity, boundary, 16 slopes, witness residual " + num(w.residual)};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"cfd-validity", c1},     {"table-replay", c2},  {"twist-invariance", c3}, {"rank-16-family", c4},
        {"rank-16c-random", c5},  {"h1-cross-check", c6}, {"descent-certificates", c7}, {"cone-engine", c8},
        {"alternating-obstruction", c9}, {"wada-free-rank", c10}, {"figure-eight-numerics", c11},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const Error& e) {
            o = failed("error " + e.code() + " " + e.what());
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " (" << fig8::num(ms) << " ms) "
                  << o.detail << "\n";
    }
    return failures == 0 ? 0 : 1;
}
