#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "torus_algebra.hpp"

namespace lspace {

struct Arrow {
    std::string src;
    Basis label;
    std::string dst;

    // Sorted by source name, then label token, then target name.
    friend bool operator<(const Arrow& a, const Arrow& b)
    {
        return std::forward_as_tuple(a.src, token(a.label), a.dst) <
               std::forward_as_tuple(b.src, token(b.label), b.dst);
    }
    friend bool operator==(const Arrow& a, const Arrow& b)
    {
        return a.src == b.src && a.label == b.label && a.dst == b.dst;
    }
};

// Left type D structure over the torus algebra, stored as a labeled digraph.
// Arrows form an F2 set: adding an arrow twice removes it.
class TypeD {
public:
    void add_generator(const std::string& name, int idem)
    {
        if (name.empty() || name.find_first_of(" \t\n#") != std::string::npos)
            fail("SyntaxError", "bad generator name '" + name + "'");
        if (idem != 0 && idem != 1) fail("SyntaxError", "idempotent must be 0 or 1");
        if (!gens_.emplace(name, idem).second) fail("DuplicateGenerator", name);
    }

    void toggle_arrow(const std::string& src, Basis label, const std::string& dst)
    {
        auto s = sides(label);
        if (idempotent(src) != s.left || idempotent(dst) != s.right)
            fail("TypingError", "arrow " + src + " " + std::string(token(label)) + " " + dst +
                                    " violates idempotent typing");
        Arrow a{src, label, dst};
        auto it = arrows_.find(a);
        if (it == arrows_.end())
            arrows_.insert(std::move(a));
        else
            arrows_.erase(it);
    }

    void remove_generator(const std::string& name)
    {
        for (auto it = arrows_.begin(); it != arrows_.end();) {
            if (it->src == name || it->dst == name)
                it = arrows_.erase(it);
            else
                ++it;
        }
        gens_.erase(name);
    }

    bool has_generator(const std::string& name) const { return gens_.count(name) != 0; }

    int idempotent(const std::string& name) const
    {
        auto it = gens_.find(name);
        if (it == gens_.end()) fail("UnknownGenerator", name);
        return it->second;
    }

    const std::map<std::string, int>& generators() const { return gens_; }
    const std::set<Arrow>& arrows() const { return arrows_; }
    std::size_t size() const { return gens_.size(); }

    std::map<std::string, std::vector<std::pair<Basis, std::string>>> out_adjacency() const
    {
        std::map<std::string, std::vector<std::pair<Basis, std::string>>> adj;
        for (const auto& a : arrows_) adj[a.src].emplace_back(a.label, a.dst);
        return adj;
    }

    bool operator==(const TypeD& o) const { return gens_ == o.gens_ && arrows_ == o.arrows_; }

private:
    static Sides sides(Basis b) { return idempotent_sides(b); }

    std::map<std::string, int> gens_;
    std::set<Arrow> arrows_;
};

inline Report validate_typeD(const TypeD& D)
{
    std::map<std::pair<std::string, std::string>, AlgebraElement> sq;
    auto adj = D.out_adjacency();
    for (const auto& a : D.arrows()) {
        auto it = adj.find(a.dst);
        if (it == adj.end()) continue;
        for (const auto& [lab, z] : it->second)
            sq[{a.src, z}] += AlgebraElement(multiply(a.label, lab));
    }
    for (const auto& [key, val] : sq)
        if (!val.is_zero())
            return {false, "d^2 nonzero from " + key.first + " to " + key.second + ": " + val.to_string()};
    return {};
}

// One cancellation of an idempotent arrow x -> y.
struct ReductionStep {
    Arrow cancelled;
    std::vector<Arrow> lost;  // other arrows incident to x or y, dropped with them
    std::vector<Arrow> added; // zig-zag replacements a -> b (toggled mod 2)
};

inline std::pair<TypeD, std::vector<ReductionStep>> edge_reduce(TypeD D)
{
    std::vector<ReductionStep> trace;
    for (;;) {
        const Arrow* pick = nullptr;
        for (const auto& a : D.arrows()) {
            if (!is_idempotent(a.label)) continue;
            if (a.src == a.dst) fail("SelfIdempotentArrow", "idempotent self-arrow at " + a.src);
            pick = &a;
            break;
        }
        if (!pick) break;
        ReductionStep step;
        step.cancelled = *pick;
        const std::string x = pick->src, y = pick->dst;
        std::vector<std::pair<std::string, Basis>> into_y;
        std::vector<std::pair<Basis, std::string>> out_of_x;
        for (const auto& a : D.arrows()) {
            bool touches = a.src == x || a.src == y || a.dst == x || a.dst == y;
            if (!touches || a == step.cancelled) continue;
            step.lost.push_back(a);
            if (a.dst == y && a.src != x && a.src != y) into_y.emplace_back(a.src, a.label);
            if (a.src == x && a.dst != x && a.dst != y) out_of_x.emplace_back(a.label, a.dst);
        }
        D.remove_generator(x);
        D.remove_generator(y);
        for (const auto& [a, alpha] : into_y)
            for (const auto& [beta, b] : out_of_x) {
                auto p = multiply(alpha, beta);
                if (!p) continue;
                D.toggle_arrow(a, *p, b);
                step.added.push_back({a, *p, b});
            }
        trace.push_back(std::move(step));
    }
    return {std::move(D), std::move(trace)};
}

inline TypeD reduce(const TypeD& D) { return edge_reduce(D).first; }

// Labeled-graph isomorphism preserving idempotents and arrows; returns the
// generator bijection D1 -> D2 when one exists.
inline std::optional<std::map<std::string, std::string>> graphs_isomorphic(const TypeD& D1, const TypeD& D2)
{
    if (D1.size() != D2.size() || D1.arrows().size() != D2.arrows().size()) return std::nullopt;
    const std::size_t n = D1.size();
    std::vector<std::string> n1, n2;
    std::map<std::string, std::size_t> i1, i2;
    for (const auto& [g, _] : D1.generators()) { i1[g] = n1.size(); n1.push_back(g); }
    for (const auto& [g, _] : D2.generators()) { i2[g] = n2.size(); n2.push_back(g); }
    auto matrix = [n](const TypeD& D, const std::map<std::string, std::size_t>& idx) {
        std::vector<std::vector<std::uint8_t>> m(n, std::vector<std::uint8_t>(n, 0));
        for (const auto& a : D.arrows())
            m[idx.at(a.src)][idx.at(a.dst)] |= AlgebraElement(a.label).bits();
        return m;
    };
    auto m1 = matrix(D1, i1), m2 = matrix(D2, i2);
    auto signature = [n](const TypeD& D, const std::vector<std::string>& names,
                         const std::vector<std::vector<std::uint8_t>>& m) {
        std::vector<std::vector<int>> sig(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> s{D.idempotent(names[i])};
            std::vector<int> out, in;
            for (std::size_t j = 0; j < n; ++j) {
                out.push_back(m[i][j]);
                in.push_back(m[j][i]);
            }
            std::sort(out.begin(), out.end());
            std::sort(in.begin(), in.end());
            s.insert(s.end(), out.begin(), out.end());
            s.push_back(-1);
            s.insert(s.end(), in.begin(), in.end());
            s.push_back(m[i][i]);
            sig[i] = std::move(s);
        }
        return sig;
    };
    auto s1 = signature(D1, n1, m1), s2 = signature(D2, n2, m2);
    {
        auto a = s1, b = s2;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || s1[i] != s2[j]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) {
                auto mk = static_cast<std::size_t>(map[k]);
                ok = m1[i][k] == m2[j][mk] && m1[k][i] == m2[mk][j];
            }
            if (!ok) continue;
            map[i] = static_cast<int>(j);
            used[j] = true;
            if (extend(i + 1)) return true;
            used[j] = false;
            map[i] = -1;
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;
    std::map<std::string, std::string> witness;
    for (std::size_t i = 0; i < n; ++i) witness[n1[i]] = n2[static_cast<std::size_t>(map[i])];
    return witness;
}

// Paths in D starting at `from` whose labels spell `word`; calls f(endpoint).
template <class F>
void for_each_path(const std::map<std::string, std::vector<std::pair<Basis, std::string>>>& adj,
                   const std::string& from, const std::vector<Basis>& word, F&& f)
{
    std::function<void(const std::string&, std::size_t)> walk = [&](const std::string& at, std::size_t k) {
        if (k == word.size()) {
            f(at);
            return;
        }
        auto it = adj.find(at);
        if (it == adj.end()) return;
        for (const auto& [lab, nxt] : it->second)
            if (lab == word[k]) walk(nxt, k + 1);
    };
    walk(from, 0);
}

// ---------------------------------------------------------------------------
// Chain complexes over F2

class ChainComplexF2 {
public:
    std::size_t add_generator(const std::string& name)
    {
        auto [it, fresh] = index_.emplace(name, names_.size());
        if (fresh) {
            names_.push_back(name);
            rows_.emplace_back();
        }
        return it->second;
    }

    void toggle(std::size_t from, std::size_t to)
    {
        auto& r = rows_[from];
        auto it = std::lower_bound(r.begin(), r.end(), to);
        if (it != r.end() && *it == to)
            r.erase(it);
        else
            r.insert(it, to);
    }

    void toggle(const std::string& from, const std::string& to) { toggle(index_.at(from), index_.at(to)); }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::size_t>& boundary(std::size_t i) const { return rows_[i]; }

    bool squares_to_zero() const
    {
        for (std::size_t i = 0; i < size(); ++i) {
            std::vector<std::size_t> acc;
            for (std::size_t j : rows_[i])
                for (std::size_t k : rows_[j]) acc.push_back(k);
            std::sort(acc.begin(), acc.end());
            for (std::size_t p = 0; p < acc.size();) {
                std::size_t q = p;
                while (q < acc.size() && acc[q] == acc[p]) ++q;
                if ((q - p) % 2) return false;
                p = q;
            }
        }
        return true;
    }

    // Rank of the differential over F2 via bit-packed elimination.
    std::size_t differential_rank() const
    {
        const std::size_t n = size(), words = (n + 63) / 64;
        std::vector<std::vector<std::uint64_t>> pivots(n);
        std::size_t rank = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint64_t> row(words, 0);
            for (std::size_t j : rows_[i]) row[j / 64] ^= std::uint64_t{1} << (j % 64);
            for (std::size_t w = words; w-- > 0;) {
                while (row[w]) {
                    std::size_t bit = 63 - static_cast<std::size_t>(__builtin_clzll(row[w]));
                    std::size_t col = w * 64 + bit;
                    if (pivots[col].empty()) {
                        pivots[col] = row;
                        ++rank;
                        goto next_row;
                    }
                    for (std::size_t u = 0; u <= w; ++u) row[u] ^= pivots[col][u];
                }
            }
        next_row:;
        }
        return rank;
    }

    std::string to_text() const
    {
        std::ostringstream os;
        for (const auto& g : names_) os << "gen " << g << "\n";
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j : rows_[i]) os << "d " << names_[i] << " " << names_[j] << "\n";
        return os.str();
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> rows_;
};

inline std::size_t homology_rank(const ChainComplexF2& C)
{
    if (!C.squares_to_zero()) invariant_failure("NotAComplex", "differential does not square to zero");
    return C.size() - 2 * C.differential_rank();
}

// ---------------------------------------------------------------------------
// Bounded right type A structures

struct TypeAKey {
    std::string src;
    std::vector<Basis> inputs;
    friend bool operator<(const TypeAKey& a, const TypeAKey& b)
    {
        return std::tie(a.src, a.inputs) < std::tie(b.src, b.inputs);
    }
};

class TypeA {
public:
    void add_generator(const std::string& name, int idem)
    {
        if (!gens_.emplace(name, idem).second) fail("DuplicateGenerator", name);
    }

    // m_{k+1}(src, inputs) gains (mod 2) the term dst.
    void toggle_op(const std::string& src, const std::vector<Basis>& inputs, const std::string& dst)
    {
        int at = idempotent(src);
        for (Basis b : inputs) {
            if (is_idempotent(b)) fail("TypingError", "type A inputs must be Reeb elements");
            if (idempotent_sides(b).left != at) fail("TypingError", "input sequence does not compose");
            at = idempotent_sides(b).right;
        }
        if (idempotent(dst) != at) fail("TypingError", "output idempotent mismatch at " + dst);
        auto& out = ops_[TypeAKey{src, inputs}];
        if (!out.erase(dst)) out.insert(dst);
        max_len_ = std::max(max_len_, inputs.size());
    }

    int idempotent(const std::string& name) const
    {
        auto it = gens_.find(name);
        if (it == gens_.end()) fail("UnknownGenerator", name);
        return it->second;
    }

    const std::map<std::string, int>& generators() const { return gens_; }
    const std::map<TypeAKey, std::set<std::string>>& operations() const { return ops_; }
    std::size_t max_input_length() const { return max_len_; }

    const std::set<std::string>& apply(const std::string& src, const std::vector<Basis>& inputs) const
    {
        static const std::set<std::string> none;
        auto it = ops_.find(TypeAKey{src, inputs});
        return it == ops_.end() ? none : it->second;
    }

private:
    std::map<std::string, int> gens_;
    std::map<TypeAKey, std::set<std::string>> ops_;
    std::size_t max_len_ = 0;
};

namespace detail {

// All composable Reeb sequences of length n starting at idempotent `start`.
inline void reeb_sequences(int start, std::size_t n, std::vector<Basis>& cur,
                           const std::function<void(const std::vector<Basis>&)>& f)
{
    if (cur.size() == n) {
        f(cur);
        return;
    }
    for (Basis b : reeb_basis) {
        if (idempotent_sides(b).left != start) continue;
        cur.push_back(b);
        reeb_sequences(idempotent_sides(b).right, n, cur, f);
        cur.pop_back();
    }
}

inline void toggle_in(std::set<std::string>& s, const std::string& x)
{
    if (!s.erase(x)) s.insert(x);
}

} // namespace detail

// A-infinity relations, checked exhaustively up to the length where the
// finite table can still contribute.
inline Report check_a_infinity(const TypeA& A)
{
    const std::size_t L = A.max_input_length();
    const std::size_t limit = std::max<std::size_t>(2 * L, L + 1);
    for (const auto& [x, idem] : A.generators()) {
        for (std::size_t n = 0; n <= limit; ++n) {
            std::vector<Basis> cur;
            Report bad;
            detail::reeb_sequences(idem, n, cur, [&](const std::vector<Basis>& seq) {
                if (!bad.ok) return;
                std::set<std::string> acc;
                for (std::size_t j = 0; j <= n; ++j) {
                    std::vector<Basis> head(seq.begin(), seq.begin() + static_cast<long>(j));
                    std::vector<Basis> tail(seq.begin() + static_cast<long>(j), seq.end());
                    for (const auto& y : A.apply(x, head))
                        for (const auto& z : A.apply(y, tail)) detail::toggle_in(acc, z);
                }
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    auto m = multiply(seq[i], seq[i + 1]);
                    if (!m) continue;
                    std::vector<Basis> merged(seq.begin(), seq.begin() + static_cast<long>(i));
                    merged.push_back(*m);
                    merged.insert(merged.end(), seq.begin() + static_cast<long>(i) + 2, seq.end());
                    for (const auto& z : A.apply(x, merged)) detail::toggle_in(acc, z);
                }
                if (!acc.empty()) {
                    std::string s;
                    for (Basis b : seq) s += " " + std::string(token(b));
                    bad = {false, "A-infinity relation fails at " + x + " with inputs" + s};
                }
            });
            if (!bad.ok) return bad;
        }
    }
    return {};
}

inline ChainComplexF2 box_tensor_A_D(const TypeA& A, const TypeD& D)
{
    ChainComplexF2 C;
    auto name = [](const std::string& x, const std::string& y) { return x + "*" + y; };
    for (const auto& [x, ix] : A.generators())
        for (const auto& [y, iy] : D.generators())
            if (ix == iy) C.add_generator(name(x, y));
    auto adj = D.out_adjacency();
    for (const auto& [key, outs] : A.operations()) {
        const int ix = A.idempotent(key.src);
        for (const auto& [y, iy] : D.generators()) {
            if (iy != ix) continue;
            for_each_path(adj, y, key.inputs, [&](const std::string& end) {
                for (const auto& x2 : outs) C.toggle(name(key.src, y), name(x2, end));
            });
        }
    }
    // idempotent arrows of D act through the strict unit m2(x, i) = x
    for (const auto& a : D.arrows()) {
        if (!is_idempotent(a.label)) continue;
        for (const auto& [x, ix] : A.generators())
            if (ix == D.idempotent(a.src)) C.toggle(name(x, a.src), name(x, a.dst));
    }
    return C;
}

// The dual of a type D structure P as a type A structure: generators are
// pairs (x, b) with b an algebra basis element leaving idem(x); m1 pulls
// back along arrows of P and m2 multiplies on the right. Pairing it with Q
// computes the morphism complex from P to Q.
inline TypeA dual_type_a(const TypeD& P)
{
    TypeA A;
    auto name = [](const std::string& x, Basis b) { return x + "~" + std::string(token(b)); };
    for (const auto& [x, ix] : P.generators())
        for (Basis b : all_basis)
            if (idempotent_sides(b).left == ix) A.add_generator(name(x, b), idempotent_sides(b).right);
    for (const auto& [x, ix] : P.generators()) {
        for (Basis b : all_basis) {
            if (idempotent_sides(b).left != ix) continue;
            for (const auto& a : P.arrows()) {
                if (a.dst != x) continue;
                if (auto ab = multiply(a.label, b)) A.toggle_op(name(x, b), {}, name(a.src, *ab));
            }
            for (Basis c : reeb_basis)
                if (auto bc = multiply(b, c)) A.toggle_op(name(x, b), {c}, name(x, *bc));
        }
    }
    return A;
}

// Direct construction of the morphism complex, used as an independent check
// on the dual/box-tensor route.
inline ChainComplexF2 morphism_complex(const TypeD& P, const TypeD& Q)
{
    ChainComplexF2 C;
    auto name = [](const std::string& x, Basis b, const std::string& z) {
        return x + "~" + std::string(token(b)) + "~" + z;
    };
    for (const auto& [x, ix] : P.generators())
        for (const auto& [z, iz] : Q.generators())
            for (Basis b : all_basis)
                if (idempotent_sides(b) == Sides{ix, iz}) C.add_generator(name(x, b, z));
    for (const auto& [x, ix] : P.generators())
        for (const auto& [z, iz] : Q.generators())
            for (Basis b : all_basis) {
                if (idempotent_sides(b) != Sides{ix, iz}) continue;
                for (const auto& c : Q.arrows())
                    if (c.src == z)
                        if (auto p = multiply(b, c.label)) C.toggle(name(x, b, z), name(x, *p, c.dst));
                for (const auto& a : P.arrows())
                    if (a.dst == x)
                        if (auto p = multiply(a.label, b)) C.toggle(name(x, b, z), name(a.src, *p, z));
            }
    return C;
}

// ---------------------------------------------------------------------------
// Type DA bimodules

struct DAOp {
    std::string src;
    std::vector<Basis> inputs;
    Basis output;
    std::string dst;

    friend bool operator<(const DAOp& a, const DAOp& b)
    {
        return std::tie(a.src, a.inputs, a.output, a.dst) < std::tie(b.src, b.inputs, b.output, b.dst);
    }
    friend bool operator==(const DAOp& a, const DAOp& b)
    {
        return std::tie(a.src, a.inputs, a.output, a.dst) == std::tie(b.src, b.inputs, b.output, b.dst);
    }
};

class DABimodule {
public:
    void add_generator(const std::string& name, int left, int right)
    {
        if (!gens_.emplace(name, Sides{left, right}).second) fail("DuplicateGenerator", name);
    }

    void toggle_op(const std::string& src, const std::vector<Basis>& inputs, Basis output,
                   const std::string& dst)
    {
        Sides s = sides(src), t = sides(dst);
        int at = s.right;
        for (Basis b : inputs) {
            if (is_idempotent(b)) fail("TypingError", "bimodule inputs must be Reeb elements");
            if (idempotent_sides(b).left != at) fail("TypingError", "input sequence does not compose");
            at = idempotent_sides(b).right;
        }
        if (at != t.right || idempotent_sides(output) != Sides{s.left, t.left})
            fail("TypingError", "operation from " + src + " to " + dst + " violates idempotent typing");
        DAOp op{src, inputs, output, dst};
        if (!ops_.erase(op)) ops_.insert(op);
    }

    Sides sides(const std::string& name) const
    {
        auto it = gens_.find(name);
        if (it == gens_.end()) fail("UnknownGenerator", name);
        return it->second;
    }

    const std::map<std::string, Sides>& generators() const { return gens_; }
    const std::set<DAOp>& operations() const { return ops_; }

    std::size_t max_input_length() const
    {
        std::size_t m = 0;
        for (const auto& op : ops_) m = std::max(m, op.inputs.size());
        return m;
    }

    bool operator==(const DABimodule& o) const { return gens_ == o.gens_ && ops_ == o.ops_; }

private:
    std::map<std::string, Sides> gens_;
    std::set<DAOp> ops_;
};

// DA structure relations: for every generator and composable input word,
// sum_j mu(delta(x; a1..aj), delta(y; a_{j+1}..an)) + sum_i delta(x; .., a_i a_{i+1}, ..) = 0.
inline Report check_da_relations(const DABimodule& B)
{
    std::map<std::pair<std::string, std::vector<Basis>>, std::vector<std::pair<Basis, std::string>>> table;
    for (const auto& op : B.operations()) table[{op.src, op.inputs}].emplace_back(op.output, op.dst);
    auto delta = [&](const std::string& x, const std::vector<Basis>& in) {
        static const std::vector<std::pair<Basis, std::string>> none;
        auto it = table.find({x, in});
        return it == table.end() ? none : it->second;
    };
    const std::size_t L = B.max_input_length();
    const std::size_t limit = std::max<std::size_t>(2 * L, L + 1);
    for (const auto& [x, s] : B.generators()) {
        for (std::size_t n = 0; n <= limit; ++n) {
            std::vector<Basis> cur;
            Report bad;
            detail::reeb_sequences(s.right, n, cur, [&](const std::vector<Basis>& seq) {
                if (!bad.ok) return;
                std::map<std::pair<Basis, std::string>, int> acc;
                for (std::size_t j = 0; j <= n; ++j) {
                    std::vector<Basis> head(seq.begin(), seq.begin() + static_cast<long>(j));
                    std::vector<Basis> tail(seq.begin() + static_cast<long>(j), seq.end());
                    for (const auto& [o1, y] : delta(x, head))
                        for (const auto& [o2, z] : delta(y, tail))
                            if (auto p = multiply(o1, o2)) acc[{*p, z}] ^= 1;
                }
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    auto m = multiply(seq[i], seq[i + 1]);
                    if (!m) continue;
                    std::vector<Basis> merged(seq.begin(), seq.begin() + static_cast<long>(i));
                    merged.push_back(*m);
                    merged.insert(merged.end(), seq.begin() + static_cast<long>(i) + 2, seq.end());
                    for (const auto& [o, z] : delta(x, merged)) acc[{o, z}] ^= 1;
                }
                for (const auto& [k, v] : acc)
                    if (v) {
                        std::string w;
                        for (Basis b : seq) w += " " + std::string(token(b));
                        bad = {false, "DA relation fails at " + x + " with inputs" + w};
                        return;
                    }
            });
            if (!bad.ok) return bad;
        }
    }
    return {};
}

inline TypeD box_tensor_DA_D(const DABimodule& B, const TypeD& D, std::size_t arrow_budget = 10'000'000)
{
    TypeD out;
    auto name = [](const std::string& p, const std::string& x) { return p + "." + x; };
    for (const auto& [p, s] : B.generators())
        for (const auto& [x, ix] : D.generators())
            if (s.right == ix) out.add_generator(name(p, x), s.left);
    auto adj = D.out_adjacency();
    std::size_t emitted = 0;
    for (const auto& op : B.operations()) {
        const int need = B.sides(op.src).right;
        for (const auto& [x, ix] : D.generators()) {
            if (ix != need) continue;
            for_each_path(adj, x, op.inputs, [&](const std::string& end) {
                if (++emitted > arrow_budget) fail("NonTerminating", "box tensor product exceeded arrow budget");
                out.toggle_arrow(name(op.src, x), op.output, name(op.dst, end));
            });
        }
    }
    for (const auto& a : D.arrows()) {
        if (!is_idempotent(a.label)) continue;
        for (const auto& [p, s] : B.generators())
            if (s.right == D.idempotent(a.src))
                out.toggle_arrow(name(p, a.src), s.left == 0 ? Basis::i0 : Basis::i1, name(p, a.dst));
    }
    return out;
}

inline TypeD mirror(const TypeD& D)
{
    TypeD out;
    for (const auto& [g, i] : D.generators()) out.add_generator(g, 1 - i);
    for (const auto& a : D.arrows()) out.toggle_arrow(a.dst, mirror(a.label), a.src);
    return out;
}

inline DABimodule mirror(const DABimodule& B)
{
    DABimodule out;
    for (const auto& [g, s] : B.generators()) out.add_generator(g, 1 - s.left, 1 - s.right);
    for (const auto& op : B.operations()) {
        std::vector<Basis> in;
        for (auto it = op.inputs.rbegin(); it != op.inputs.rend(); ++it) in.push_back(mirror(*it));
        out.toggle_op(op.dst, in, mirror(op.output), op.src);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

inline std::string to_text(const TypeD& D)
{
    std::ostringstream os;
    for (const auto& [g, i] : D.generators()) os << "gen " << g << " " << token(idempotent_of(i)) << "\n";
    for (const auto& a : D.arrows()) os << "arrow " << a.src << " " << token(a.label) << " " << a.dst << "\n";
    return os.str();
}

namespace detail {

inline std::vector<std::vector<std::string>> records(const std::string& text)
{
    std::vector<std::vector<std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> f;
        for (std::string w; ls >> w;) f.push_back(w);
        if (!f.empty()) out.push_back(std::move(f));
    }
    return out;
}

inline int parse_idem(const std::string& s)
{
    if (s == "i0") return 0;
    if (s == "i1") return 1;
    fail("SyntaxError", "expected i0 or i1, got '" + s + "'");
}

} // namespace detail

inline TypeD parse_typeD(const std::string& text)
{
    TypeD D;
    std::vector<std::vector<std::string>> pending;
    for (auto& f : detail::records(text)) {
        if (f[0] == "gen" && f.size() == 3)
            D.add_generator(f[1], detail::parse_idem(f[2]));
        else if (f[0] == "arrow" && f.size() == 4)
            pending.push_back(std::move(f));
        else
            fail("SyntaxError", "unrecognized record '" + f[0] + "'");
    }
    for (const auto& f : pending) {
        if (!D.has_generator(f[1]) || !D.has_generator(f[3]))
            fail("UnknownGenerator", "arrow refers to undeclared generator");
        D.toggle_arrow(f[1], parse_basis_or_throw(f[2]), f[3]);
    }
    return D;
}

inline std::string to_text(const DABimodule& B)
{
    std::ostringstream os;
    for (const auto& [g, s] : B.generators())
        os << "gen " << g << " " << token(idempotent_of(s.left)) << " " << token(idempotent_of(s.right)) << "\n";
    for (const auto& op : B.operations()) {
        os << "op " << op.src << " ";
        if (op.inputs.empty()) os << "-";
        for (std::size_t i = 0; i < op.inputs.size(); ++i) os << (i ? "," : "") << token(op.inputs[i]);
        os << " " << token(op.output) << " " << op.dst << "\n";
    }
    return os.str();
}

inline DABimodule parse_bimodule(const std::string& text)
{
    DABimodule B;
    std::vector<std::vector<std::string>> pending;
    for (auto& f : detail::records(text)) {
        if (f[0] == "gen" && f.size() == 4)
            B.add_generator(f[1], detail::parse_idem(f[2]), detail::parse_idem(f[3]));
        else if (f[0] == "op" && f.size() == 5)
            pending.push_back(std::move(f));
        else
            fail("SyntaxError", "unrecognized record '" + f[0] + "'");
    }
    for (const auto& f : pending) {
        std::vector<Basis> in;
        if (f[2] != "-") {
            std::istringstream ss(f[2]);
            for (std::string t; std::getline(ss, t, ',');) in.push_back(parse_basis_or_throw(t));
        }
        B.toggle_op(f[1], in, parse_basis_or_throw(f[3]), f[4]);
    }
    return B;
}

} // namespace lspace
