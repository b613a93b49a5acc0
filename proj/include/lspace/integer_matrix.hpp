#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "mapping_class.hpp"

namespace lspace {

using IntMatrix = std::vector<std::vector<Int>>;

struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion; // invariant factors > 1, each dividing the next

    // Order of the group, or 0 when infinite.
    Int order() const
    {
        if (free_rank) return 0;
        Int o = 1;
        for (Int t : torsion) o *= t;
        return o;
    }

    // Invariant factors with 0 standing for a copy of Z.
    std::vector<Int> factors() const
    {
        std::vector<Int> f = torsion;
        f.insert(f.end(), free_rank, 0);
        return f;
    }

    std::string to_string() const
    {
        std::string s;
        for (Int t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
        for (std::size_t i = 0; i < free_rank; ++i) s += (s.empty() ? "" : " + ") + std::string("Z");
        return s.empty() ? "0" : s;
    }
};

namespace detail {

inline Int checked(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) fail("Overflow", "integer overflow in Smith normal form");
    return static_cast<Int>(v);
}

} // namespace detail

// Smith normal form diagonal of an integer matrix (rows are relations).
inline std::vector<Int> smith_diagonal(IntMatrix m)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<Int> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        std::size_t pr = rows, pc = cols;
        Int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    m[i][j] = detail::checked(static_cast<__int128>(m[i][j]) - static_cast<__int128>(q) * m[t][j]);
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    m[i][j] = detail::checked(static_cast<__int128>(m[i][j]) - static_cast<__int128>(q) * m[i][t]);
                if (m[t][j] != 0) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility: fold any entry not divisible by the pivot into row t
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (std::size_t k = t; k < cols; ++k)
                                m[t][k] = detail::checked(static_cast<__int128>(m[t][k]) + m[i][k]);
                            clean = false;
                        }
            }
        }
        diag.push_back(std::llabs(m[t][t]));
        ++t;
    }
    return diag;
}

inline AbelianGroup abelian_group(const IntMatrix& relations, std::size_t generators)
{
    AbelianGroup g;
    auto diag = relations.empty() ? std::vector<Int>{} : smith_diagonal(relations);
    g.free_rank = generators - diag.size();
    for (Int d : diag)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

// Exact determinant by fraction-free Bareiss elimination.
inline Int determinant(IntMatrix m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = detail::checked(
                    (static_cast<__int128>(m[i][j]) * m[k][k] - static_cast<__int128>(m[i][k]) * m[k][j]) / prev);
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace lspace
