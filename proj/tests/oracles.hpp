#pragma once

// Independent reference computations used only by the tests.

#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "bipcomb/core.hpp"

namespace oracle {

using bipcomb::Bipartition;
using bipcomb::Params;
using Cell = std::tuple<int, int, int>;  // row, col, comp

inline std::set<Cell> cells(const Bipartition& b)
{
    std::set<Cell> out;
    for (int a = 1; a <= 2; ++a)
        for (int r = 1; r <= b.component(a).length(); ++r)
            for (int c = 1; c <= b.component(a)[r]; ++c)
                out.insert({r, c, a});
    return out;
}

// Concatenate both components padded to n rows and compare all prefix sums.
inline bool dominates(const Bipartition& x, const Bipartition& y)
{
    int n = x.size();
    auto seq = [n](const Bipartition& b) {
        std::vector<int> s;
        for (int a = 1; a <= 2; ++a)
            for (int r = 1; r <= n + 1; ++r)
                s.push_back(b.component(a)[r]);
        return s;
    };
    auto sx = seq(x), sy = seq(y);
    int px = 0, py = 0;
    for (std::size_t t = 0; t < sx.size(); ++t) {
        px += sx[t];
        py += sy[t];
        if (px < py)
            return false;
    }
    return true;
}

inline std::set<Cell> addable(const Bipartition& b)
{
    auto in = cells(b);
    std::set<Cell> out;
    for (int a = 1; a <= 2; ++a)
        for (int r = 1; r <= b.size() + 1; ++r)
            for (int c = 1; c <= b.size() + 1; ++c) {
                if (in.count({r, c, a}))
                    continue;
                bool up = r == 1 || in.count({r - 1, c, a});
                bool left = c == 1 || in.count({r, c - 1, a});
                if (up && left)
                    out.insert({r, c, a});
            }
    return out;
}

inline std::set<Cell> removable(const Bipartition& b)
{
    auto in = cells(b);
    std::set<Cell> out;
    for (auto [r, c, a] : in)
        if (!in.count({r + 1, c, a}) && !in.count({r, c + 1, a}))
            out.insert({r, c, a});
    return out;
}

inline bipcomb::Partition random_partition(std::mt19937& rng, int n)
{
    std::vector<int> parts;
    while (n > 0) {
        int maxp = parts.empty() ? n : std::min(n, parts.back());
        int p = std::uniform_int_distribution<int>(1, maxp)(rng);
        parts.push_back(p);
        n -= p;
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return bipcomb::Partition(parts);
}

inline Bipartition random_bipartition(std::mt19937& rng, int maxn)
{
    int n = std::uniform_int_distribution<int>(0, maxn)(rng);
    int m = std::uniform_int_distribution<int>(0, n)(rng);
    return {random_partition(rng, m), random_partition(rng, n - m)};
}

// Weight from the residue content alone.
inline int weight(const Bipartition& b, const Params& p)
{
    std::vector<long long> c(p.e, 0);
    for (auto [r, col, a] : cells(b))
        ++c[bipcomb::mod(col - r + p.kappa_of(a), p.e)];
    long long w = c[p.kappa[0]] + c[p.kappa[1]];
    for (int i = 0; i < p.e; ++i)
        w -= c[i] * c[i] - c[i] * c[(i + 1) % p.e];
    return static_cast<int>(w);
}

}  // namespace oracle
