#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lspace/bordered_data.hpp"
#include "lspace/fig8_characters.hpp"
#include "lspace/link_diagrams.hpp"
#include "lspace/semibundle.hpp"
#include "lspace/seifert_triads.hpp"

#ifndef LSPACE_FIXTURES_DIR
#define LSPACE_FIXTURES_DIR "fixtures"
#endif

using namespace lspace;

namespace {

bool tsv = false;

void kv(const std::string& key, const std::string& value) { std::cout << key << (tsv ? '\t' : ' ') << value << "\n"; }
void kv(const std::string& key, Int value) { kv(key, std::to_string(value)); }
void kv(const std::string& key, bool value) { kv(key, std::string(value ? "true" : "false")); }
void kv_num(const std::string& key, double value) { kv(key, fig8::num(value)); }

std::filesystem::path fixtures_dir()
{
    if (const char* env = std::getenv("FLOER_FIXTURES")) return env;
    return LSPACE_FIXTURES_DIR;
}

std::string read_file(const std::string& name)
{
    std::filesystem::path p(name);
    if (!std::filesystem::exists(p) && p.is_relative()) p = fixtures_dir() / name;
    std::ifstream in(p);
    if (!in) fail("FileNotFound", "cannot open " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<Int, Int> parse_fraction(const std::string& s)
{
    Int p = 0, q = 1;
    char slash = '/';
    std::istringstream is(s);
    if (!(is >> p)) fail("SyntaxError", "fraction must look like p/q");
    if (is >> slash) {
        if (slash != '/' || !(is >> q)) fail("SyntaxError", "fraction must look like p/q");
    }
    std::string rest;
    if (is >> rest) fail("SyntaxError", "trailing characters after fraction");
    if (q == 0) fail("SyntaxError", "zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

std::vector<Int> parse_list(const std::string& s)
{
    std::vector<Int> out;
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            fail("SyntaxError", "bad integer '" + tok + "'");
        }
    }
    return out;
}

void semibundle(const std::string& action, const std::string& matrix)
{
    const Mat2 f = parse_matrix(matrix);
    if (action == "classify") {
        const auto c = classify(f);
        kv("geometry", c.geometry());
        kv("homology", c.homology());
    } else if (action == "h1") {
        const auto order = h1_order(f);
        const auto group = h1_group(f);
        if ((order ? *order : 0) != group.order())
            invariant_failure("OrderMismatch", "closed-form order disagrees with the Smith normal form");
        if (order) kv("h1", *order);
        else kv("h1", std::string("infinite"));
        kv("group", group.to_string());
    } else if (action == "rank") {
        const auto order = h1_order(f);
        if (!order) fail("NotQHS", "c = 0: W(f) is not a rational homology sphere");
        const std::size_t r = hf_rank(f);
        kv("word", word_to_string(twist_word(f)));
        kv("rank", static_cast<Int>(r));
        if (static_cast<Int>(r) != *order)
            invariant_failure("RankMismatch", "rank " + std::to_string(r) + " differs from |H1| = " + std::to_string(*order));
        kv("lspace", true);
    } else if (action == "cert") {
        auto cert = lspace_certificate(f);
        const auto rep = verify_certificate(*cert);
        if (!rep.ok) invariant_failure("CertificateInvalid", rep.detail);
        kv("depth", static_cast<Int>(certificate_depth(*cert)));
        std::cout << certificate_to_text(*cert);
        kv("verified", true);
    }
}

void floer(const std::string& action, const std::string& in, const std::string& in2)
{
    const TypeD D = parse_typeD(read_file(in));
    if (action == "validate") {
        const auto r = validate_typeD(D);
        kv("generators", static_cast<Int>(D.generators().size()));
        kv("valid", r.ok);
        if (!r.ok) invariant_failure("NotATypeD", r.detail);
    } else if (action == "reduce") {
        const auto r = validate_typeD(D);
        if (!r.ok) invariant_failure("NotATypeD", r.detail);
        const TypeD red = reduce(D);
        std::cout << to_text(red);
    } else if (action == "pair") {
        if (in2.empty()) fail("MissingArgument", "pair needs --in2");
        const TypeD E = parse_typeD(read_file(in2));
        for (const TypeD* x : {&D, &E})
            if (auto r = validate_typeD(*x); !r.ok) invariant_failure("NotATypeD", r.detail);
        kv("rank", static_cast<Int>(pairing_rank(dual_type_a(D), E)));
    }
}

void data(const std::string& action, const std::string& which, int power, bool raw)
{
    if (action == "klein-cfd") {
        std::cout << (raw ? klein_raw_cfd_text : klein_cfd_text);
    } else {
        if (which != "tau0" && which != "tau1") fail("InvalidArgument", "--which must be tau0 or tau1");
        const auto B = twist_bimodule(which == "tau0" ? Twist::tau0 : Twist::tau1, power);
        if (auto r = check_da_relations(B); !r.ok) invariant_failure("NotADA", r.detail);
        std::cout << to_text(B);
    }
}

void seifert(const std::string& action, const std::string& frac, const std::string& orders, const std::string& slope)
{
    if (action == "cf") {
        const auto [p, q] = parse_fraction(frac);
        const auto e = cf_expand(p, q);
        std::string terms;
        for (Int t : e.terms) terms += (terms.empty() ? "" : " ") + std::to_string(t);
        kv("terms", terms);
        kv("depth", static_cast<Int>(e.depth()));
    } else {
        const auto v = parse_list(slope);
        if (v.size() != 2) fail("SyntaxError", "slope must look like r,s");
        const auto c = p2_certificate(parse_list(orders), {v[0], v[1]});
        if (c.cone) {
            if (auto r = verify_cone(c.model, *c.cone); !r.ok) invariant_failure("CertificateInvalid", r.detail);
        }
        std::cout << p2_to_text(c);
        kv("lspace", true);
    }
}

void link(const std::string& action, const std::string& pd_text, std::size_t bound)
{
    const Diagram d = build_diagram(parse_pd(pd_text));
    kv("crossings", static_cast<Int>(d.crossings.size()));
    kv("arcs", static_cast<Int>(d.arcs));
    kv("components", static_cast<Int>(d.components));
    kv("alternating", d.alternating);
    if (action == "wada" || action == "wirtinger") {
        const auto p = action == "wada" ? wada(d) : wirtinger(d);
        std::cout << to_text(p);
        kv("abelianization", abelianization(p).to_string());
    } else if (action == "det") {
        kv("det", goeritz_determinant(d));
    } else if (action == "search") {
        const auto r = strict_order_search(d, bound);
        kv("nodes", static_cast<Int>(r.nodes));
        if (!r.sat) {
            kv("result", std::string("UNSAT"));
        } else {
            kv("result", std::string("SAT"));
            std::string a;
            for (auto t : r.assignment) a += (a.empty() ? "" : " ") + std::string(to_string(t));
            kv("assignment", a);
            kv("verdict", std::string("inconclusive"));
        }
    } else if (action == "cert") {
        const auto c = alternating_collapse_certificate(d);
        std::cout << to_text(c);
        kv("abelian", true);
    }
}

void fig8cmd(const std::string& action, double a, double amin, double amax, std::size_t samples, unsigned jobs,
             const std::string& slope)
{
    using namespace fig8;
    if (action == "kappa") {
        const auto p = x0_point(a);
        kv_num("kappa", kappa(p.a, p.b, p.c));
    } else if (action == "locus") {
        kv("su2", su2_locus(a));
        kv("sl2r", sl2r_locus(a));
    } else if (action == "rep") {
        const auto rep = build_rep(a);
        const auto b = boundary_data(rep);
        auto mat = [](const Mat& m) {
            std::string s;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const auto z = m(i, j);
                    s += (s.empty() ? "" : ",") + num(z.real());
                    if (std::abs(z.imag()) > 1e-12) s += (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i";
                }
            return s;
        };
        kv("X", mat(rep.X));
        kv("Y", mat(rep.Y));
        kv("T", mat(rep.T));
        kv_num("residual", rep.residual);
        kv("real", rep.real);
        kv_num("trace_mu", b.trace_mu);
        kv_num("trace_lambda", b.trace_lambda);
        kv_num("l_mu", b.l_mu);
        kv_num("l_lambda", b.l_lambda);
        try {
            kv_num("r", slope_killed(b));
        } catch (const Error& e) {
            kv("r", std::string("undefined"));
        }
    } else if (action == "sweep") {
        const auto rows = sweep(amin, amax, samples, jobs);
        std::cout << "a\ttrace_mu\ttrace_lambda\tl_mu\tl_lambda\tr\n";
        for (const auto& r : rows) {
            std::cout << num(r.a);
            if (!r.error.empty()) {
                std::cout << "\t" << r.error << "\n";
                continue;
            }
            for (double v : {r.data.trace_mu, r.data.trace_lambda, r.data.l_mu, r.data.l_lambda, r.r}) std::cout << "\t" << num(v);
            std::cout << "\n";
        }
    } else if (action == "witness") {
        const auto [p, q] = parse_fraction(slope);
        const auto w = surgery_witness(static_cast<double>(p) / static_cast<double>(q), static_cast<long>(p), static_cast<long>(q));
        kv_num("a", w.a);
        kv_num("r", w.mirrored ? -w.r : w.r);
        kv("mirrored", w.mirrored);
        kv_num("residual", w.residual);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Computations for L-spaces, Heegaard Floer pairings and orderability"};
    app.require_subcommand(1);
    std::string format = "kv";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"kv", "tsv"}));

    std::string matrix, in, in2, which = "tau0", frac, orders, slope, pd, pd_file;
    int power = 1;
    bool raw = false;
    double a = 0, amin = 2, amax = 10;
    std::size_t samples = 50, bound = 20;
    unsigned jobs = 1;

    auto* sb = app.add_subcommand("semibundle", "Graph manifolds W(f) glued from two twisted I-bundles");
    sb->require_subcommand(1);
    for (const char* name : {"classify", "h1", "rank", "cert"}) {
        auto* s = sb->add_subcommand(name);
        s->add_option("--matrix", matrix, "Gluing matrix a,b;c,d")->required();
    }

    auto* fl = app.add_subcommand("floer", "Type D structures from text files");
    fl->require_subcommand(1);
    for (const char* name : {"reduce", "validate", "pair"}) {
        auto* s = fl->add_subcommand(name);
        s->add_option("--in", in, "Type D file (paired through its dual type A)")->required();
        s->add_option("--in2", in2, "Second type D file");
    }

    auto* da = app.add_subcommand("data", "Built-in bordered data");
    da->require_subcommand(1);
    da->add_subcommand("klein-cfd")->add_flag("--raw", raw, "Unreduced generators");
    auto* tw = da->add_subcommand("twist");
    tw->add_option("--which", which)->check(CLI::IsMember({"tau0", "tau1"}));
    tw->add_option("--power", power)->check(CLI::IsMember({-1, 1}));

    auto* se = app.add_subcommand("seifert", "Continued fractions and Seifert certificates");
    se->require_subcommand(1);
    se->add_subcommand("cf")->add_option("--frac", frac, "p/q")->required();
    auto* p2 = se->add_subcommand("p2cert");
    p2->add_option("--orders", orders, "Cone point orders, comma separated");
    p2->add_option("--slope", slope, "Target r,s in (mu, phi0) coordinates")->required();

    auto* li = app.add_subcommand("link", "Link diagrams from PD codes");
    li->require_subcommand(1);
    for (const char* name : {"wada", "wirtinger", "det", "search", "cert"}) {
        auto* s = li->add_subcommand(name);
        auto* o1 = s->add_option("--pd", pd, "PD code");
        auto* o2 = s->add_option("--pd-file", pd_file, "File holding a PD code");
        o1->excludes(o2);
        s->add_option("--bound", bound, "Crossing bound for the search");
    }

    auto* f8 = app.add_subcommand("fig8", "Characters of the figure-eight knot group");
    f8->require_subcommand(1);
    for (const char* name : {"kappa", "locus", "rep"}) f8->add_subcommand(name)->add_option("--a", a)->required();
    auto* sw = f8->add_subcommand("sweep");
    sw->add_option("--min", amin);
    sw->add_option("--max", amax);
    sw->add_option("--samples", samples);
    sw->add_option("--jobs", jobs);
    f8->add_subcommand("witness")->add_option("--slope", slope, "p/q")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cout << "error UsageError " << e.what() << "\n";
        return 1;
    }
    tsv = format == "tsv";

    try {
        auto leaf = [](CLI::App* parent) { return parent->get_subcommands().front()->get_name(); };
        if (sb->parsed()) semibundle(leaf(sb), matrix);
        else if (fl->parsed()) floer(leaf(fl), in, in2);
        else if (da->parsed()) data(leaf(da), which, power, raw);
        else if (se->parsed()) seifert(leaf(se), frac, orders, slope);
        else if (li->parsed()) {
            if (pd.empty() && pd_file.empty()) fail("MissingArgument", "need --pd or --pd-file");
            link(leaf(li), pd.empty() ? read_file(pd_file) : pd, bound);
        } else if (f8->parsed()) fig8cmd(leaf(f8), a, amin, amax, samples, jobs, slope);
    } catch (const Error& e) {
        std::cout << "error " << e.code() << " " << e.what() << "\n";
        return e.internal() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cout << "error Internal " << e.what() << "\n";
        return 2;
    }
    return 0;
}
