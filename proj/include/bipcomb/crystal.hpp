#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "core.hpp"

namespace bipcomb {

struct SignEntry {
    char sign;  // '+' addable, '-' removable
    Node node;
};

struct SignatureReport {
    int residue = 0;
    std::vector<SignEntry> raw;  // highest node first
    std::vector<SignEntry> reduced;
    std::vector<SignEntry> antireduced;
    std::vector<Node> normal, conormal, antinormal, anticonormal;
    std::optional<Node> good, cogood, antigood, anticogood;

    static std::string signs(const std::vector<SignEntry>& s)
    {
        std::string out;
        for (const auto& x : s)
            out += x.sign;
        return out;
    }
};

namespace detail {

// Cancels adjacent pairs `first second` until none is left.
inline std::vector<SignEntry> cancel_pairs(const std::vector<SignEntry>& raw, char first, char second)
{
    std::vector<SignEntry> st;
    for (const auto& x : raw) {
        if (!st.empty() && st.back().sign == first && x.sign == second)
            st.pop_back();
        else
            st.push_back(x);
    }
    return st;
}

}  // namespace detail

inline SignatureReport signature(const Bipartition& b, int i, const Params& p)
{
    SignatureReport r;
    r.residue = mod(i, p.e);
    Boundary bd = boundary_nodes(b, p);
    for (const auto& n : bd.addable)
        if (n.residue == r.residue)
            r.raw.push_back({'+', n.node});
    for (const auto& n : bd.removable)
        if (n.residue == r.residue)
            r.raw.push_back({'-', n.node});
    std::sort(r.raw.begin(), r.raw.end(), [](const SignEntry& a, const SignEntry& c) { return higher(a.node, c.node); });

    r.reduced = detail::cancel_pairs(r.raw, '-', '+');
    r.antireduced = detail::cancel_pairs(r.raw, '+', '-');
    for (const auto& x : r.reduced)
        (x.sign == '-' ? r.normal : r.conormal).push_back(x.node);
    for (const auto& x : r.antireduced)
        (x.sign == '-' ? r.antinormal : r.anticonormal).push_back(x.node);
    if (!r.normal.empty())
        r.good = r.normal.front();
    if (!r.conormal.empty())
        r.cogood = r.conormal.back();
    if (!r.antinormal.empty())
        r.antigood = r.antinormal.back();
    if (!r.anticonormal.empty())
        r.anticogood = r.anticonormal.front();
    return r;
}

inline int normal_count(const Bipartition& b, int i, const Params& p)
{
    return static_cast<int>(signature(b, i, p).normal.size());
}

struct StripTrace {
    std::vector<int> residues;
    Bipartition terminal;
};

namespace detail {

template <class Pick>
StripTrace strip(Bipartition b, const Params& p, Pick pick, const std::function<bool(const Bipartition&)>& stop)
{
    StripTrace t;
    while (!stop(b)) {
        bool moved = false;
        for (int i = 0; i < p.e && !moved; ++i) {
            auto s = signature(b, i, p);
            if (auto n = pick(s)) {
                b = remove_node(b, *n);
                t.residues.push_back(i);
                moved = true;
            }
        }
        if (!moved)
            break;
    }
    t.terminal = b;
    return t;
}

inline bool is_empty(const Bipartition& b) { return b.size() == 0; }

}  // namespace detail

inline std::pair<bool, StripTrace> is_restricted(const Bipartition& b, const Params& p)
{
    auto t = detail::strip(b, p, [](const SignatureReport& s) { return s.good; }, detail::is_empty);
    return {t.terminal.size() == 0, t};
}

inline std::pair<bool, StripTrace> regular_strip(const Bipartition& b, const Params& p)
{
    auto t = detail::strip(b, p, [](const SignatureReport& s) { return s.antigood; }, detail::is_empty);
    return {t.terminal.size() == 0, t};
}

inline bool is_regular(const Bipartition& b, const Params& p)
{
    return regular_strip(b, p).first;
}

// Base of the diamond map on a block of weight at most 1.
inline Bipartition diamond_base(const Bipartition& xi, const Params& p)
{
    int w = weight(xi, p);
    if (w == 0)
        return xi;
    if (w != 1)
        throw invariant_error("diamond base needs weight at most 1");
    auto members = enumerate_block(block_key(xi, p).first, p);
    std::vector<Bipartition> above;
    for (const auto& m : members)
        if (strictly_dominates(m, xi))
            above.push_back(m);
    std::vector<Bipartition> minimal;
    for (const auto& m : above) {
        bool isMin = std::none_of(above.begin(), above.end(),
                                  [&](const Bipartition& o) { return strictly_dominates(m, o); });
        if (isMin)
            minimal.push_back(m);
    }
    if (minimal.size() != 1)
        throw invariant_error("weight-1 base " + to_string(xi) + " has " + std::to_string(minimal.size()) +
                              " minimal dominating members");
    return minimal.front();
}

// Bijection from restricted to regular bipartitions.
inline Bipartition mu_diamond(const Bipartition& mu, const Params& p)
{
    if (!is_restricted(mu, p).first)
        throw domain_error(to_string(mu) + " is not restricted");
    auto t = detail::strip(mu, p, [](const SignatureReport& s) { return s.good; },
                           [&p](const Bipartition& b) { return weight(b, p) <= 1; });
    if (weight(t.terminal, p) > 1)
        throw invariant_error("good-node stripping stalled above weight 1");
    Bipartition b = diamond_base(t.terminal, p);
    for (auto it = t.residues.rbegin(); it != t.residues.rend(); ++it) {
        auto s = signature(b, *it, p);
        if (!s.anticogood)
            throw invariant_error("no anticogood " + std::to_string(*it) + "-node on " + to_string(b));
        b = add_node(b, *s.anticogood);
    }
    return b;
}

}  // namespace bipcomb
