#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integer_matrix.hpp"

namespace lspace {

// Planar diagram code. Each crossing lists its four edge labels
// counterclockwise starting from the incoming under-strand; `free_loops`
// counts crossingless unknotted components (token `O`).
struct PDCode {
    std::vector<std::array<Int, 4>> crossings;
    std::size_t free_loops = 0;
    bool operator==(const PDCode&) const = default;
};

inline std::string to_text(const PDCode& pd)
{
    std::string s;
    for (const auto& x : pd.crossings) {
        if (!s.empty()) s += " ";
        s += "X(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
             std::to_string(x[3]) + ")";
    }
    for (std::size_t i = 0; i < pd.free_loops; ++i) s += s.empty() ? "O" : " O";
    return s;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t x, std::size_t y)
    {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        parent_[std::max(x, y)] = std::min(x, y);
        return true;
    }
    std::size_t classes()
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) n += find(i) == i;
        return n;
    }

private:
    std::vector<std::size_t> parent_;
};

struct Corner {
    std::size_t crossing;
    int slot; // region between slot and slot+1
    bool operator<(const Corner& o) const { return std::tie(crossing, slot) < std::tie(o.crossing, o.slot); }
    bool operator==(const Corner&) const = default;
};

namespace detail {

struct PDGraph {
    std::vector<std::array<std::size_t, 4>> edge; // crossing, slot -> edge index
    std::vector<std::array<Corner, 2>> ends;       // edge -> its two (crossing, slot) occurrences

    Corner other_end(Corner c) const
    {
        const auto& e = ends[edge[c.crossing][static_cast<std::size_t>(c.slot)]];
        return e[0] == c ? e[1] : e[0];
    }
};

inline PDGraph pd_graph(const PDCode& pd)
{
    PDGraph g;
    std::map<Int, std::vector<Corner>> seen;
    for (std::size_t x = 0; x < pd.crossings.size(); ++x)
        for (int s = 0; s < 4; ++s) seen[pd.crossings[x][static_cast<std::size_t>(s)]].push_back({x, s});
    std::map<Int, std::size_t> index;
    for (const auto& [label, occ] : seen) {
        if (occ.size() != 2)
            fail("EdgeCountError", "edge " + std::to_string(label) + " occurs " + std::to_string(occ.size()) + " times");
        index[label] = g.ends.size();
        g.ends.push_back({occ[0], occ[1]});
    }
    g.edge.resize(pd.crossings.size());
    for (std::size_t x = 0; x < pd.crossings.size(); ++x)
        for (std::size_t s = 0; s < 4; ++s) g.edge[x][s] = index[pd.crossings[x][s]];
    return g;
}

// Faces as cycles of corners: leave corner (X,s) along the edge at slot s+1,
// arrive at (Y,t); the face continues with corner (Y,t).
inline std::vector<std::vector<Corner>> trace_faces(const PDGraph& g, std::size_t ncross)
{
    std::map<Corner, bool> used;
    std::vector<std::vector<Corner>> faces;
    for (std::size_t x = 0; x < ncross; ++x)
        for (int s = 0; s < 4; ++s) {
            if (used[{x, s}]) continue;
            std::vector<Corner> face;
            Corner c{x, s};
            while (!used[c]) {
                used[c] = true;
                face.push_back(c);
                c = g.other_end({c.crossing, (c.slot + 1) % 4});
            }
            if (!(c == Corner{x, s})) invariant_failure("FaceTrace", "face walk did not close");
            faces.push_back(face);
        }
    return faces;
}

} // namespace detail

inline PDCode parse_pd(const std::string& text)
{
    PDCode pd;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (text[i] == 'O') {
            ++pd.free_loops;
            ++i;
        } else if (text[i] == 'X' && i + 1 < text.size() && (text[i + 1] == '(' || text[i + 1] == '[')) {
            const char close = text[i + 1] == '(' ? ')' : ']';
            std::size_t end = text.find(close, i);
            if (end == std::string::npos) fail("SyntaxError", "unterminated crossing at offset " + std::to_string(i));
            std::string body = text.substr(i + 2, end - i - 2);
            std::replace(body.begin(), body.end(), ',', ' ');
            std::istringstream is(body);
            std::array<Int, 4> x{};
            for (auto& v : x)
                if (!(is >> v)) fail("SyntaxError", "crossing needs four integer labels: " + text.substr(i, end - i + 1));
            std::string rest;
            if (is >> rest) fail("SyntaxError", "crossing has extra labels: " + text.substr(i, end - i + 1));
            pd.crossings.push_back(x);
            i = end + 1;
        } else {
            fail("SyntaxError", std::string("unexpected character '") + text[i] + "'");
        }
        skip();
    }
    if (pd.crossings.empty() && pd.free_loops == 0) fail("SyntaxError", "empty diagram");
    auto g = detail::pd_graph(pd);
    // Euler characteristic of each connected piece of the 4-valent graph.
    DisjointSets comp(pd.crossings.size());
    for (const auto& e : g.ends) comp.unite(e[0].crossing, e[1].crossing);
    auto faces = detail::trace_faces(g, pd.crossings.size());
    std::map<std::size_t, Int> chi;
    for (std::size_t x = 0; x < pd.crossings.size(); ++x) chi[comp.find(x)] += 1 - 2;
    for (const auto& f : faces) chi[comp.find(f[0].crossing)] += 1;
    for (const auto& [root, c] : chi)
        if (c != 2) fail("NonPlanar", "component containing crossing " + std::to_string(root + 1) + " has Euler characteristic " + std::to_string(c));
    return pd;
}

struct Face {
    std::vector<Corner> corners;
    bool black = false;
    std::size_t piece = 0; // connected piece of the diagram
};

struct CrossingData {
    std::size_t i = 0, j = 0, k = 0; // arcs: incoming under, over, outgoing under
    int sign = 0;                    // +1 when the over strand runs from slot 3 to slot 1
    bool conforming = false;         // corners (1,2) and (3,0) are black
};

struct Diagram {
    PDCode pd;
    std::size_t arcs = 0;
    std::size_t components = 0; // link components
    std::size_t pieces = 0;     // connected pieces of the projection
    std::vector<CrossingData> crossings;
    std::vector<Face> faces;
    bool alternating = true;
    std::vector<std::size_t> nugatory;
};

inline Diagram build_diagram(const PDCode& pd)
{
    Diagram d;
    d.pd = pd;
    const std::size_t n = pd.crossings.size();
    const auto g = detail::pd_graph(pd);

    // Walk each strand component: enter at slot s, leave at slot s+2.
    std::vector<std::array<bool, 4>> visited(n, {false, false, false, false});
    std::vector<std::array<bool, 4>> entering(n, {false, false, false, false});
    std::vector<std::vector<Corner>> strands; // (crossing, entry slot)
    for (std::size_t x = 0; x < n; ++x)
        for (int s0 = 0; s0 < 4; ++s0) {
            if (visited[x][static_cast<std::size_t>(s0)]) continue;
            std::vector<Corner> walk;
            Corner c{x, s0};
            do {
                walk.push_back(c);
                visited[c.crossing][static_cast<std::size_t>(c.slot)] = true;
                visited[c.crossing][static_cast<std::size_t>((c.slot + 2) % 4)] = true;
                c = g.other_end({c.crossing, (c.slot + 2) % 4});
            } while (!(c == walk.front()));
            int forward = 0, backward = 0;
            for (const auto& w : walk) {
                if (w.slot == 0) ++forward;
                if (w.slot == 2) ++backward;
            }
            if (forward && backward) fail("OrientationError", "under-strands along one component disagree on direction");
            if (backward) {
                // reverse: entering at the opposite slots, in reverse order
                std::vector<Corner> rev;
                for (auto it = walk.rbegin(); it != walk.rend(); ++it) rev.push_back({it->crossing, (it->slot + 2) % 4});
                walk = rev;
            }
            for (const auto& w : walk) entering[w.crossing][static_cast<std::size_t>(w.slot)] = true;
            strands.push_back(walk);
        }
    d.components = strands.size() + pd.free_loops;

    for (const auto& w : strands)
        for (std::size_t t = 0; t < w.size() && w.size() > 1; ++t)
            if ((w[t].slot % 2) == (w[(t + 1) % w.size()].slot % 2)) d.alternating = false;

    // Arcs: the over strand is unbroken at a crossing.
    DisjointSets arc(g.ends.size());
    for (std::size_t x = 0; x < n; ++x) arc.unite(g.edge[x][1], g.edge[x][3]);
    std::map<std::size_t, std::size_t> arc_index;
    for (std::size_t e = 0; e < g.ends.size(); ++e)
        if (!arc_index.count(arc.find(e))) arc_index.emplace(arc.find(e), arc_index.size());
    d.arcs = arc_index.size() + pd.free_loops;

    d.crossings.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto& c = d.crossings[x];
        c.i = arc_index[arc.find(g.edge[x][0])];
        c.j = arc_index[arc.find(g.edge[x][1])];
        c.k = arc_index[arc.find(g.edge[x][2])];
        c.sign = entering[x][3] ? 1 : -1;
    }

    // Faces and checkerboard colouring, seeded per piece with corner (1,2)
    // of its first crossing black.
    auto traced = detail::trace_faces(g, n);
    std::map<Corner, std::size_t> face_of;
    for (std::size_t f = 0; f < traced.size(); ++f)
        for (const auto& c : traced[f]) face_of[c] = f;
    DisjointSets piece(n);
    for (const auto& e : g.ends) piece.unite(e[0].crossing, e[1].crossing);
    std::vector<int> colour(traced.size(), -1);
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t seed = face_of[{x, 1}];
        if (colour[seed] != -1) continue;
        colour[seed] = 1;
        std::vector<std::size_t> stack{seed};
        while (!stack.empty()) {
            std::size_t f = stack.back();
            stack.pop_back();
            for (const auto& c : traced[f]) {
                // across the edge at slot c.slot lies corner (c.slot-1, c.slot)
                const std::size_t nb = face_of[{c.crossing, (c.slot + 3) % 4}];
                if (colour[nb] == -1) {
                    colour[nb] = 1 - colour[f];
                    stack.push_back(nb);
                } else if (colour[nb] == colour[f]) {
                    invariant_failure("Checkerboard", "faces are not two-colourable");
                }
            }
        }
    }
    std::map<std::size_t, std::size_t> piece_index;
    for (std::size_t x = 0; x < n; ++x)
        if (!piece_index.count(piece.find(x))) piece_index.emplace(piece.find(x), piece_index.size());
    for (std::size_t f = 0; f < traced.size(); ++f)
        d.faces.push_back({traced[f], colour[f] == 1, piece_index[piece.find(traced[f][0].crossing)]});
    // Each free loop bounds one black and one white disc.
    for (std::size_t l = 0; l < pd.free_loops; ++l) {
        d.faces.push_back({{}, true, piece_index.size() + l});
        d.faces.push_back({{}, false, piece_index.size() + l});
    }
    d.pieces = piece_index.size() + pd.free_loops;

    for (std::size_t x = 0; x < n; ++x) {
        d.crossings[x].conforming = colour[face_of[{x, 1}]] == 1;
        if (face_of[{x, 0}] == face_of[{x, 2}] || face_of[{x, 1}] == face_of[{x, 3}]) d.nugatory.push_back(x);
    }
    return d;
}

// Words use signed 1-based generator indices.
struct GroupPresentation {
    std::size_t generators = 0;
    std::vector<std::vector<int>> relators;
    bool operator==(const GroupPresentation&) const = default;
};

inline std::string to_text(const GroupPresentation& p)
{
    std::ostringstream os;
    os << "generators " << p.generators << "\n";
    for (const auto& r : p.relators) {
        os << "relator";
        for (int l : r) os << " " << l;
        os << "\n";
    }
    return os.str();
}

inline GroupPresentation parse_presentation(const std::string& text)
{
    GroupPresentation p;
    std::istringstream in(text);
    std::string line;
    bool have_count = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "generators") {
            if (!(ls >> p.generators)) fail("SyntaxError", "bad generator count");
            have_count = true;
        } else if (key == "relator") {
            std::vector<int> w;
            int l = 0;
            while (ls >> l) {
                if (l == 0 || static_cast<std::size_t>(std::abs(l)) > p.generators) fail("SyntaxError", "generator index out of range");
                w.push_back(l);
            }
            p.relators.push_back(w);
        } else {
            fail("SyntaxError", "unknown record '" + key + "'");
        }
    }
    if (!have_count) fail("SyntaxError", "missing generator count");
    return p;
}

inline int gen(std::size_t arc) { return static_cast<int>(arc) + 1; }

inline GroupPresentation wada(const Diagram& d)
{
    GroupPresentation p{d.arcs, {}};
    for (const auto& c : d.crossings) p.relators.push_back({gen(c.k), -gen(c.j), gen(c.i), -gen(c.j)});
    return p;
}

inline GroupPresentation wirtinger(const Diagram& d)
{
    GroupPresentation p{d.arcs, {}};
    for (const auto& c : d.crossings) {
        const auto [i, k] = c.sign > 0 ? std::pair{c.i, c.k} : std::pair{c.k, c.i};
        p.relators.push_back({-gen(k), gen(c.j), gen(i), -gen(c.j)});
    }
    return p;
}

inline AbelianGroup abelianization(const GroupPresentation& p)
{
    IntMatrix m;
    for (const auto& r : p.relators) {
        std::vector<Int> row(p.generators, 0);
        for (int l : r) row[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
        m.push_back(row);
    }
    return abelian_group(m, p.generators);
}

// |det| of the reduced Goeritz matrix on the white regions.
inline Int goeritz_determinant(const Diagram& d)
{
    if (d.pieces != 1) return 0;
    if (d.crossings.empty()) return 1;
    std::map<Corner, std::size_t> white_of;
    std::vector<std::size_t> white;
    for (std::size_t f = 0; f < d.faces.size(); ++f)
        if (!d.faces[f].black) {
            for (const auto& c : d.faces[f].corners) white_of[c] = white.size();
            white.push_back(f);
        }
    const std::size_t m = white.size();
    IntMatrix G(m, std::vector<Int>(m, 0));
    for (std::size_t x = 0; x < d.crossings.size(); ++x) {
        const auto& c = d.crossings[x];
        const int s = c.conforming ? 0 : 1;
        const std::size_t u = white_of.at({x, s}), v = white_of.at({x, s + 2});
        if (u == v) continue;
        const Int eta = c.conforming ? 1 : -1;
        G[u][v] -= eta;
        G[v][u] -= eta;
        G[u][u] += eta;
        G[v][v] += eta;
    }
    if (m <= 1) return 1;
    IntMatrix R(m - 1, std::vector<Int>(m - 1));
    for (std::size_t r = 1; r < m; ++r)
        for (std::size_t s = 1; s < m; ++s) R[r - 1][s - 1] = G[r][s];
    return std::llabs(determinant(R));
}

// Vertices are black faces, edges are crossings joining the black faces at
// their two black corners.
struct GammaGraph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // indexed by crossing
    bool connected = false;
};

inline GammaGraph gamma_graph(const Diagram& d)
{
    GammaGraph G;
    std::map<Corner, std::size_t> black_of;
    for (const auto& f : d.faces)
        if (f.black) {
            for (const auto& c : f.corners) black_of[c] = G.vertices;
            ++G.vertices;
        }
    DisjointSets ds(G.vertices);
    for (std::size_t x = 0; x < d.crossings.size(); ++x) {
        const int s = d.crossings[x].conforming ? 1 : 0;
        const std::size_t u = black_of.at({x, s}), v = black_of.at({x, s + 2});
        G.edges.push_back({u, v});
        ds.unite(u, v);
    }
    G.connected = G.vertices > 0 && ds.classes() == 1;
    return G;
}

enum class Trichotomy { less, greater, equal };

inline const char* to_string(Trichotomy t)
{
    switch (t) {
    case Trichotomy::less: return "LESS";
    case Trichotomy::greater: return "GREATER";
    default: return "EQUAL";
    }
}

struct SearchResult {
    bool sat = false;
    std::vector<Trichotomy> assignment; // when sat
    std::size_t nodes = 0;              // search nodes visited
};

namespace detail {

struct OrderState {
    std::vector<std::size_t> cls; // arc -> class representative
    std::vector<std::pair<std::size_t, std::size_t>> strict; // arc a < arc b

    std::size_t find(std::size_t x) const
    {
        while (cls[x] != x) x = cls[x];
        return x;
    }

    // No self-loop and no cycle among classes.
    bool consistent() const
    {
        const std::size_t n = cls.size();
        std::vector<std::vector<std::size_t>> adj(n);
        std::vector<int> indeg(n, 0);
        for (auto [a, b] : strict) {
            std::size_t u = find(a), v = find(b);
            if (u == v) return false;
            adj[u].push_back(v);
            ++indeg[v];
        }
        std::vector<std::size_t> q;
        std::size_t roots = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (find(v) == v) {
                ++roots;
                if (indeg[v] == 0) q.push_back(v);
            }
        std::size_t seen = 0;
        while (!q.empty()) {
            std::size_t u = q.back();
            q.pop_back();
            ++seen;
            for (std::size_t v : adj[u])
                if (--indeg[v] == 0) q.push_back(v);
        }
        return seen == roots;
    }
};

inline bool order_dfs(const Diagram& d, std::size_t x, OrderState& st, std::vector<Trichotomy>& cur, bool any_strict,
                      SearchResult& out)
{
    ++out.nodes;
    if (!st.consistent()) return false;
    if (x == d.crossings.size()) {
        if (!any_strict) return false;
        out.sat = true;
        out.assignment = cur;
        return true;
    }
    const auto& c = d.crossings[x];
    for (Trichotomy t : {Trichotomy::less, Trichotomy::greater, Trichotomy::equal}) {
        OrderState next = st;
        if (t == Trichotomy::equal) {
            auto merge = [&](std::size_t a, std::size_t b) {
                a = next.find(a);
                b = next.find(b);
                if (a != b) next.cls[std::max(a, b)] = std::min(a, b);
            };
            merge(c.i, c.j);
            merge(c.j, c.k);
        } else if (t == Trichotomy::less) {
            next.strict.push_back({c.i, c.j});
            next.strict.push_back({c.j, c.k});
        } else {
            next.strict.push_back({c.j, c.i});
            next.strict.push_back({c.k, c.j});
        }
        cur.push_back(t);
        if (order_dfs(d, x + 1, next, cur, any_strict || t != Trichotomy::equal, out)) return true;
        cur.pop_back();
    }
    return false;
}

} // namespace detail

// Searches for a consistent choice at every crossing of a_i < a_j < a_k,
// a_i > a_j > a_k or a_i = a_j = a_k with at least one strict crossing.
inline SearchResult strict_order_search(const Diagram& d, std::size_t bound = 20)
{
    if (d.crossings.size() > bound)
        fail("BoundExceeded", std::to_string(d.crossings.size()) + " crossings exceed the search bound " + std::to_string(bound));
    SearchResult out;
    detail::OrderState st;
    st.cls.resize(d.arcs);
    std::iota(st.cls.begin(), st.cls.end(), 0);
    std::vector<Trichotomy> cur;
    detail::order_dfs(d, 0, st, cur, false, out);
    return out;
}

struct MergeStep {
    std::size_t crossing;
    std::size_t i, j, k;
    std::size_t classes; // after this crossing
};

struct CollapseCertificate {
    bool gamma_connected = false;
    std::size_t black_regions = 0, white_regions = 0;
    std::vector<std::vector<std::size_t>> white_cycles; // crossings around each white region
    std::vector<std::vector<std::size_t>> black_chains; // crossings around each black region
    std::vector<MergeStep> merges;
    std::size_t final_classes = 0;
};

inline CollapseCertificate alternating_collapse_certificate(const Diagram& d)
{
    if (!d.alternating) fail("NotAlternating", "diagram is not alternating");
    if (d.pieces != 1) fail("Disconnected", "diagram has " + std::to_string(d.pieces) + " pieces");
    CollapseCertificate cert;
    const auto G = gamma_graph(d);
    cert.gamma_connected = G.connected;
    if (!G.connected) fail("Disconnected", "checkerboard graph is disconnected");
    for (const auto& f : d.faces) {
        std::vector<std::size_t> around;
        for (const auto& c : f.corners) around.push_back(c.crossing);
        if (f.black) {
            ++cert.black_regions;
            cert.black_chains.push_back(around);
        } else {
            ++cert.white_regions;
            cert.white_cycles.push_back(around);
        }
    }
    DisjointSets ds(d.arcs);
    std::size_t classes = d.arcs;
    for (std::size_t x = 0; x < d.crossings.size(); ++x) {
        const auto& c = d.crossings[x];
        classes -= ds.unite(c.i, c.j);
        classes -= ds.unite(c.j, c.k);
        cert.merges.push_back({x, c.i, c.j, c.k, classes});
    }
    cert.final_classes = classes;
    if (classes != 1) invariant_failure("CollapseIncomplete", std::to_string(classes) + " classes remain in a connected diagram");
    return cert;
}

inline std::string to_text(const CollapseCertificate& c)
{
    std::ostringstream os;
    auto list = [&](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x + 1);
        return s;
    };
    os << "gamma_connected " << (c.gamma_connected ? "true" : "false") << "\n";
    os << "black_regions " << c.black_regions << "\n";
    os << "white_regions " << c.white_regions << "\n";
    for (const auto& w : c.white_cycles) os << "white_cycle " << list(w) << "\n";
    for (const auto& b : c.black_chains) os << "black_chain " << list(b) << "\n";
    for (const auto& m : c.merges)
        os << "merge crossing=" << m.crossing + 1 << " i=" << m.i + 1 << " j=" << m.j + 1 << " k=" << m.k + 1
           << " classes=" << m.classes << "\n";
    os << "classes " << c.final_classes << "\n";
    return os.str();
}

} // namespace lspace
