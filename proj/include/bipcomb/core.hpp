#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bipcomb {

// Bad input, or a question outside what the engine answers.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed quantity contradicts a structural invariant; indicates a bug.
class invariant_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline int mod(long long a, int e)
{
    long long r = a % e;
    return static_cast<int>(r < 0 ? r + e : r);
}

inline bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

struct Params {
    int e = 2;
    std::array<int, 2> kappa{0, 0};
    int charp = 0;

    Params() = default;
    Params(int e_, int k1, int k2, int charp_ = 0) : e(e_), charp(charp_)
    {
        if (e < 2)
            throw domain_error("e must be at least 2");
        if (charp != 0 && (!is_prime(charp) || e % charp == 0))
            throw domain_error("charp must be 0 or a prime not dividing e");
        kappa = {mod(k1, e), mod(k2, e)};
    }

    int kappa_of(int comp) const { return kappa[comp - 1]; }
    Params swapped() const { return Params(e, kappa[1], kappa[0], charp); }

    bool operator==(const Params&) const = default;
};

class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        while (!parts_.empty() && parts_.back() == 0)
            parts_.pop_back();
        for (std::size_t r = 0; r < parts_.size(); ++r) {
            if (parts_[r] <= 0)
                throw domain_error("partition parts must be positive");
            if (r > 0 && parts_[r] > parts_[r - 1])
                throw domain_error("partition parts must be weakly decreasing");
        }
    }

    // rows are numbered from 1; rows past the end have length 0
    int operator[](int r) const { return r >= 1 && r <= length() ? parts_[r - 1] : 0; }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    bool empty() const { return parts_.empty(); }
    const std::vector<int>& parts() const { return parts_; }

    Partition conjugate() const
    {
        std::vector<int> c(parts_.empty() ? 0 : parts_.front(), 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j)
                ++c[j];
        return Partition(std::move(c));
    }

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

struct Bipartition {
    Partition comp1;
    Partition comp2;

    const Partition& component(int a) const { return a == 1 ? comp1 : comp2; }
    Partition& component(int a) { return a == 1 ? comp1 : comp2; }
    int size() const { return comp1.size() + comp2.size(); }
    bool empty() const { return comp1.empty() && comp2.empty(); }
    Bipartition swapped() const { return {comp2, comp1}; }

    bool operator==(const Bipartition&) const = default;
    auto operator<=>(const Bipartition&) const = default;
};

struct Node {
    int row = 1;
    int col = 1;
    int comp = 1;

    bool operator==(const Node&) const = default;
};

// Reading order used by signatures: component 1 above component 2, then by row.
inline bool higher(const Node& a, const Node& b)
{
    if (a.comp != b.comp)
        return a.comp < b.comp;
    if (a.row != b.row)
        return a.row < b.row;
    return a.col > b.col;
}

inline int residue(const Node& n, const Params& p)
{
    return mod(static_cast<long long>(n.col) - n.row + p.kappa_of(n.comp), p.e);
}

inline std::string to_string(const Partition& p)
{
    if (p.empty())
        return "\xE2\x88\x85";
    std::string s = "(";
    const auto& v = p.parts();
    for (std::size_t r = 0; r < v.size();) {
        std::size_t t = r;
        while (t < v.size() && v[t] == v[r])
            ++t;
        if (r > 0)
            s += ",";
        s += std::to_string(v[r]);
        if (t - r > 1)
            s += "^" + std::to_string(t - r);
        r = t;
    }
    return s + ")";
}

inline std::string to_string(const Bipartition& b)
{
    return "(" + to_string(b.comp1) + "|" + to_string(b.comp2) + ")";
}

inline std::string to_string(const Node& n)
{
    return "(" + std::to_string(n.row) + "," + std::to_string(n.col) + "," + std::to_string(n.comp) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const Bipartition& b) { return os << to_string(b); }
inline std::ostream& operator<<(std::ostream& os, const Node& n) { return os << to_string(n); }

inline Bipartition conjugate(const Bipartition& b)
{
    return {b.comp2.conjugate(), b.comp1.conjugate()};
}

inline bool contains(const Bipartition& b, const Node& n)
{
    return n.row >= 1 && n.col >= 1 && n.col <= b.component(n.comp)[n.row];
}

struct BoundaryNode {
    Node node;
    int residue = 0;
};

struct Boundary {
    std::vector<BoundaryNode> addable;
    std::vector<BoundaryNode> removable;

    int add(int i) const
    {
        return static_cast<int>(std::count_if(addable.begin(), addable.end(),
                                              [i](const BoundaryNode& n) { return n.residue == i; }));
    }
    int rem(int i) const
    {
        return static_cast<int>(std::count_if(removable.begin(), removable.end(),
                                              [i](const BoundaryNode& n) { return n.residue == i; }));
    }
};

inline Boundary boundary_nodes(const Bipartition& b, const Params& p)
{
    Boundary out;
    for (int a = 1; a <= 2; ++a) {
        const Partition& lam = b.component(a);
        for (int r = 1; r <= lam.length() + 1; ++r) {
            if (r == 1 || lam[r - 1] > lam[r]) {
                Node n{r, lam[r] + 1, a};
                out.addable.push_back({n, residue(n, p)});
            }
            if (lam[r] > 0 && lam[r] > lam[r + 1]) {
                Node n{r, lam[r], a};
                out.removable.push_back({n, residue(n, p)});
            }
        }
    }
    return out;
}

inline Bipartition add_node(const Bipartition& b, const Node& n)
{
    const Partition& lam = b.component(n.comp);
    if (n.row < 1 || n.col != lam[n.row] + 1 || (n.row > 1 && lam[n.row - 1] < n.col))
        throw domain_error("node " + to_string(n) + " is not addable");
    std::vector<int> parts = lam.parts();
    if (n.row > lam.length())
        parts.push_back(1);
    else
        ++parts[n.row - 1];
    Bipartition out = b;
    out.component(n.comp) = Partition(std::move(parts));
    return out;
}

inline Bipartition remove_node(const Bipartition& b, const Node& n)
{
    const Partition& lam = b.component(n.comp);
    if (n.row < 1 || n.col < 1 || n.col != lam[n.row] || lam[n.row + 1] >= n.col)
        throw domain_error("node " + to_string(n) + " is not removable");
    std::vector<int> parts = lam.parts();
    --parts[n.row - 1];
    Bipartition out = b;
    out.component(n.comp) = Partition(std::move(parts));
    return out;
}

struct RimHook {
    std::vector<Node> nodes;  // top row first
    Node hand;
    int leg_length = 0;

    int length() const { return static_cast<int>(nodes.size()); }
    int comp() const { return hand.comp; }
};

// The rim hook attached to cell (r, c): the rim segment from the end of row r
// down to the bottom of column c.
inline RimHook rim_hook_at(const Partition& lam, int r, int c, int comp)
{
    Partition conj = lam.conjugate();
    int bottom = conj[c];
    RimHook h;
    h.hand = {r, lam[r], comp};
    h.leg_length = bottom - r;
    for (int s = r; s <= bottom; ++s)
        for (int t = lam[s]; t >= std::max(c, lam[s + 1]); --t)
            h.nodes.push_back({s, t, comp});
    return h;
}

inline std::vector<RimHook> rim_hooks(const Bipartition& b, std::optional<int> length = std::nullopt)
{
    std::vector<RimHook> out;
    for (int a = 1; a <= 2; ++a) {
        const Partition& lam = b.component(a);
        Partition conj = lam.conjugate();
        for (int r = 1; r <= lam.length(); ++r)
            for (int c = 1; c <= lam[r]; ++c) {
                int h = lam[r] - c + conj[c] - r + 1;
                if (!length || *length == h)
                    out.push_back(rim_hook_at(lam, r, c, a));
            }
    }
    std::stable_sort(out.begin(), out.end(), [](const RimHook& x, const RimHook& y) {
        if (x.comp() != y.comp())
            return x.comp() < y.comp();
        if (x.length() != y.length())
            return x.length() < y.length();
        return x.hand.row > y.hand.row;
    });
    return out;
}

inline Bipartition remove_rim_hook(const Bipartition& b, const RimHook& h)
{
    std::vector<int> parts = b.component(h.comp()).parts();
    for (const Node& n : h.nodes) {
        if (n.comp != h.comp() || n.row < 1 || n.row > static_cast<int>(parts.size()))
            throw domain_error("rim hook does not fit the bipartition");
        --parts[n.row - 1];
    }
    std::vector<int> sorted = parts;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (sorted != parts)
        throw domain_error("removing the rim hook leaves no diagram");
    Bipartition out = b;
    out.component(h.comp()) = Partition(std::move(parts));
    return out;
}

inline bool is_e_restricted(const Partition& lam, int e)
{
    for (int r = 1; r <= lam.length(); ++r)
        if (lam[r] - lam[r + 1] >= e)
            return false;
    return true;
}

// Partial sums (P1_1, P2_1, ..., P1_len, P2_len) where P2 is offset by |comp1|.
inline std::vector<int> dominance_key(const Bipartition& b, int len)
{
    std::vector<int> key;
    key.reserve(2 * len);
    int s1 = 0, s2 = b.comp1.size();
    for (int r = 1; r <= len; ++r) {
        s1 += b.comp1[r];
        s2 += b.comp2[r];
        key.push_back(s1);
        key.push_back(s2);
    }
    return key;
}

inline bool dominates(const Bipartition& a, const Bipartition& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dominance compares bipartitions of different sizes");
    int len = std::max({a.comp1.length(), a.comp2.length(), b.comp1.length(), b.comp2.length(), 1});
    auto ka = dominance_key(a, len), kb = dominance_key(b, len);
    for (std::size_t t = 0; t < ka.size(); ++t)
        if (ka[t] < kb[t])
            return false;
    return true;
}

inline bool strictly_dominates(const Bipartition& a, const Bipartition& b)
{
    return a != b && dominates(a, b);
}

// Canonical total order on bipartitions of one size: descending lexicographic
// order of the interleaved partial sums. Refines dominance (dominant first).
inline bool canonical_before(const Bipartition& a, const Bipartition& b)
{
    int len = std::max({a.size(), b.size(), 1});
    return dominance_key(a, len) > dominance_key(b, len);
}

inline void canonical_sort(std::vector<Bipartition>& v)
{
    std::sort(v.begin(), v.end(), canonical_before);
}

// Partitions of n in descending lexicographic order.
inline std::vector<Partition> partitions_of(int n)
{
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxp) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(left, maxp); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// All bipartitions of n in canonical order.
inline std::vector<Bipartition> bipartitions_of(int n)
{
    std::vector<std::vector<Partition>> parts(n + 1);
    for (int m = 0; m <= n; ++m)
        parts[m] = partitions_of(m);
    std::vector<Bipartition> out;
    for (int m = n; m >= 0; --m)
        for (const auto& a : parts[m])
            for (const auto& b : parts[n - m])
                out.push_back({a, b});
    canonical_sort(out);
    return out;
}

struct BipartitionHash {
    std::size_t operator()(const Bipartition& b) const
    {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](int v) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (int v : b.comp1.parts())
            mix(v);
        mix(-1);
        for (int v : b.comp2.parts())
            mix(v);
        return h;
    }
};

}  // namespace bipcomb

template <>
struct std::hash<bipcomb::Bipartition> : bipcomb::BipartitionHash {};
