#pragma once

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "blocks.hpp"
#include "core.hpp"
#include "crystal.hpp"

namespace bipcomb {

struct HookPair {
    RimHook L;  // removed from the dominating bipartition
    RimHook N;
    int epsilon = 1;
    int valuation = 0;       // of the factor before the sign is applied
    bool beyond_rules = false;  // same-component offset of 2e or more
};

struct Valuation {
    int value = 0;
    bool beyond_rules = false;
    bool char_dependent = false;  // charp changed the value
    std::vector<HookPair> pairs;
};

namespace detail {

inline int content_of(const Node& n) { return n.col - n.row; }

// Valuation at q of the factor attached to a pair of hand nodes.
inline std::pair<int, bool> pair_valuation(const Node& hl, const Node& hn, const Params& p, int& char0)
{
    if (hl.comp != hn.comp) {
        char0 = residue(hl, p) == residue(hn, p) ? 1 : 0;
        return {char0, false};
    }
    int m = content_of(hl) - content_of(hn);
    if (m == 0)
        throw invariant_error("hook pair with equal hand contents in one component");
    if (mod(m, p.e) != 0) {
        char0 = 0;
        return {0, false};
    }
    int k = std::abs(m) / p.e;
    char0 = 1;
    if (k == 1)
        return {1, false};
    int v = 1;
    if (p.charp > 0)
        while (k % p.charp == 0) {
            k /= p.charp;
            v *= p.charp;
        }
    return {v, true};
}

using HookIndex = std::unordered_map<Bipartition, std::vector<RimHook>>;

inline HookIndex index_hooks(const Bipartition& b)
{
    HookIndex idx;
    for (auto& h : rim_hooks(b))
        idx[remove_rim_hook(b, h)].push_back(h);
    return idx;
}

inline Valuation valuation_from(const HookIndex& lamHooks, const HookIndex& nuHooks, const Params& p, bool keepPairs)
{
    Valuation v;
    int char0Total = 0;
    for (const auto& [rest, hooksL] : lamHooks) {
        auto it = nuHooks.find(rest);
        if (it == nuHooks.end())
            continue;
        for (const auto& L : hooksL)
            for (const auto& N : it->second) {
                if (residue(L.hand, p) != residue(N.hand, p))
                    continue;
                HookPair hp;
                hp.L = L;
                hp.N = N;
                hp.epsilon = (L.leg_length - N.leg_length) % 2 == 0 ? 1 : -1;
                int c0 = 0;
                auto [val, beyond] = pair_valuation(L.hand, N.hand, p, c0);
                hp.valuation = val;
                hp.beyond_rules = beyond;
                v.value += hp.epsilon * val;
                char0Total += hp.epsilon * c0;
                v.beyond_rules = v.beyond_rules || beyond;
                if (keepPairs)
                    v.pairs.push_back(std::move(hp));
            }
    }
    v.char_dependent = v.value != char0Total;
    return v;
}

}  // namespace detail

// All (L, N) with equal complements and equal hand residues.
inline std::vector<HookPair> hook_pairs(const Bipartition& lam, const Bipartition& nu, const Params& p)
{
    if (lam.size() != nu.size())
        throw domain_error("hook pairs need bipartitions of the same size");
    return detail::valuation_from(detail::index_hooks(lam), detail::index_hooks(nu), p, true).pairs;
}

inline Valuation js_valuation_detail(const Bipartition& lam, const Bipartition& nu, const Params& p)
{
    if (!strictly_dominates(lam, nu))
        throw domain_error(to_string(lam) + " does not strictly dominate " + to_string(nu));
    return detail::valuation_from(detail::index_hooks(lam), detail::index_hooks(nu), p, true);
}

inline int js_valuation(const Bipartition& lam, const Bipartition& nu, const Params& p)
{
    return js_valuation_detail(lam, nu, p).value;
}

// Pairwise valuations over a list of members, indexed like the list.
struct ValuationTable {
    std::vector<Bipartition> members;
    std::vector<std::vector<int>> val;  // val[a][b], zero unless a strictly dominates b
    std::vector<std::string> warnings;

    ValuationTable() = default;
    ValuationTable(std::vector<Bipartition> ms, const Params& p) : members(std::move(ms))
    {
        std::size_t n = members.size();
        std::vector<detail::HookIndex> idx;
        idx.reserve(n);
        for (const auto& m : members)
            idx.push_back(detail::index_hooks(m));
        val.assign(n, std::vector<int>(n, 0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b || !strictly_dominates(members[a], members[b]))
                    continue;
                auto v = detail::valuation_from(idx[a], idx[b], p, false);
                val[a][b] = v.value;
                if (v.char_dependent)
                    warnings.push_back("valuation(" + to_string(members[a]) + ", " + to_string(members[b]) +
                                       ") depends on the characteristic");
            }
    }
};

struct JsOrder {
    std::vector<Bipartition> members;
    std::vector<std::vector<char>> geq;  // geq[a][b]: a is above or equal to b
    std::vector<std::pair<int, int>> covers;

    int index_of(const Bipartition& b) const
    {
        auto it = std::find(members.begin(), members.end(), b);
        if (it == members.end())
            throw domain_error(to_string(b) + " is not in this block");
        return static_cast<int>(it - members.begin());
    }
    bool above(const Bipartition& a, const Bipartition& b) const { return geq[index_of(a)][index_of(b)]; }
};

inline JsOrder js_order_from(const ValuationTable& t)
{
    JsOrder o;
    o.members = t.members;
    std::size_t n = t.members.size();
    o.geq.assign(n, std::vector<char>(n, 0));
    // members come in canonical order, so single steps go from lower to higher index
    for (std::size_t a = n; a-- > 0;) {
        o.geq[a][a] = 1;
        for (std::size_t b = a + 1; b < n; ++b)
            if (t.val[a][b] != 0)
                for (std::size_t c = 0; c < n; ++c)
                    o.geq[a][c] = o.geq[a][c] || o.geq[b][c];
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || !o.geq[a][b])
                continue;
            if (o.geq[b][a])
                throw invariant_error("JS order has a cycle");
            bool cover = true;
            for (std::size_t c = 0; c < n && cover; ++c)
                if (c != a && c != b && o.geq[a][c] && o.geq[c][b])
                    cover = false;
            if (cover)
                o.covers.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    return o;
}

inline JsOrder js_order(const BlockKey& key, const Params& p)
{
    return js_order_from(ValuationTable(enumerate_block(key, p), p));
}

// Bipartitions left after deleting r of the removable i-nodes, one per subset.
inline std::vector<Bipartition> branch_labels(const Bipartition& b, int i, int r, const Params& p)
{
    std::vector<Node> rem;
    for (const auto& n : boundary_nodes(b, p).removable)
        if (n.residue == mod(i, p.e))
            rem.push_back(n.node);
    if (r < 0 || r > static_cast<int>(rem.size()))
        throw domain_error("cannot remove " + std::to_string(r) + " removable " + std::to_string(mod(i, p.e)) +
                           "-nodes from " + to_string(b) + " (it has " + std::to_string(rem.size()) + ")");
    std::vector<Bipartition> out;
    std::vector<char> pick(rem.size(), 0);
    std::fill(pick.begin(), pick.begin() + r, 1);
    do {
        Bipartition c = b;
        for (std::size_t s = 0; s < rem.size(); ++s)
            if (pick[s])
                c = remove_node(c, rem[s]);
        out.push_back(c);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

inline int epsilon_i(const Bipartition& b, int i, const Params& p)
{
    return boundary_nodes(b, p).rem(mod(i, p.e));
}

struct DecompMatrix {
    BlockKey block;
    std::vector<Bipartition> rows;
    std::vector<Bipartition> cols;
    std::vector<std::vector<int>> entries;
    std::vector<std::vector<int>> jBounds;
    std::vector<std::vector<std::string>> flags;
    std::vector<std::string> warnings;

    int row_index(const Bipartition& b) const
    {
        auto it = std::find(rows.begin(), rows.end(), b);
        if (it == rows.end())
            throw domain_error(to_string(b) + " is not a row");
        return static_cast<int>(it - rows.begin());
    }
    int col_index(const Bipartition& b) const
    {
        auto it = std::find(cols.begin(), cols.end(), b);
        if (it == cols.end())
            throw domain_error(to_string(b) + " is not a column");
        return static_cast<int>(it - cols.begin());
    }
    int dn(const Bipartition& lam, const Bipartition& mu) const { return entries[row_index(lam)][col_index(mu)]; }
    int J(const Bipartition& lam, const Bipartition& mu) const { return jBounds[row_index(lam)][col_index(mu)]; }

    bool operator==(const DecompMatrix&) const = default;
};

// threads = 0 picks the hardware concurrency.
inline DecompMatrix decomposition_matrix(const BlockKey& key, const Params& p, unsigned threads = 0)
{
    auto an = analyze_block(key, p);
    if (an.desc.weight >= 4)
        throw domain_error("unsupported weight " + std::to_string(an.desc.weight) + ": the solver handles weight <= 3");
    DecompMatrix m;
    m.block = key;
    ValuationTable t(enumerate_block(key, p), p);
    m.rows = t.members;
    m.warnings = t.warnings;
    std::vector<int> colRow;
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        if (is_restricted(m.rows[r], p).first) {
            m.cols.push_back(m.rows[r]);
            colRow.push_back(static_cast<int>(r));
        }
    std::size_t R = m.rows.size(), C = m.cols.size();
    m.entries.assign(R, std::vector<int>(C, 0));
    m.jBounds.assign(R, std::vector<int>(C, 0));
    m.flags.assign(R, std::vector<std::string>(C, "direct"));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failMu;
    auto work = [&]() {
        for (std::size_t c; (c = next++) < C;) {
            try {
                std::size_t self = colRow[c];
                // rows are in canonical order, which refines dominance; go from the bottom up
                for (std::size_t r = R; r-- > 0;) {
                    if (r == self) {
                        m.entries[r][c] = 1;
                        m.jBounds[r][c] = 1;
                        continue;
                    }
                    long long J = 0;
                    for (std::size_t v = r + 1; v < R; ++v)
                        if (t.val[r][v] != 0 && m.entries[v][c] != 0)
                            J += static_cast<long long>(t.val[r][v]) * m.entries[v][c];
                    if (J < 0)
                        throw invariant_error("negative J bound at (" + to_string(m.rows[r]) + ", " +
                                              to_string(m.cols[c]) + ")");
                    m.jBounds[r][c] = static_cast<int>(J);
                    m.entries[r][c] = J > 0 ? 1 : 0;
                    if (J >= 2)
                        m.flags[r][c] = "clamped";
                }
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(failMu);
                if (!failed.exchange(true))
                    failure = ex.what();
                return;
            }
        }
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(C, 1)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    if (failed)
        throw invariant_error(failure);
    return m;
}

}  // namespace bipcomb
