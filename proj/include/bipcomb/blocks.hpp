#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "abacus.hpp"
#include "core.hpp"

namespace bipcomb {

struct BlockKey {
    int n = 0;
    std::vector<int> content;  // nodes per residue

    bool operator==(const BlockKey&) const = default;
    auto operator<=>(const BlockKey&) const = default;
};

struct DeltaVector {
    std::vector<int> delta;  // removable minus addable nodes per residue

    int operator[](int i) const { return delta[i]; }
    bool operator==(const DeltaVector&) const = default;
};

inline std::vector<int> content_counts(const Bipartition& b, const Params& p)
{
    std::vector<int> c(p.e, 0);
    for (int a = 1; a <= 2; ++a) {
        const Partition& lam = b.component(a);
        for (int r = 1; r <= lam.length(); ++r)
            for (int col = 1; col <= lam[r]; ++col)
                ++c[residue({r, col, a}, p)];
    }
    return c;
}

inline DeltaVector delta_vector(const Bipartition& b, const Params& p)
{
    Boundary bd = boundary_nodes(b, p);
    DeltaVector d{std::vector<int>(p.e, 0)};
    for (const auto& n : bd.removable)
        ++d.delta[n.residue];
    for (const auto& n : bd.addable)
        --d.delta[n.residue];
    return d;
}

inline std::pair<BlockKey, DeltaVector> block_key(const Bipartition& b, const Params& p)
{
    return {BlockKey{b.size(), content_counts(b, p)}, delta_vector(b, p)};
}

inline bool same_block(const Bipartition& a, const Bipartition& b, const Params& p)
{
    return a.size() == b.size() && content_counts(a, p) == content_counts(b, p);
}

inline void check_key(const BlockKey& key, const Params& p)
{
    if (static_cast<int>(key.content.size()) != p.e)
        throw domain_error("block content must have e entries");
    int sum = 0;
    for (int c : key.content) {
        if (c < 0)
            throw domain_error("block content entries must be non-negative");
        sum += c;
    }
    if (sum != key.n)
        throw domain_error("block content does not sum to n");
}

// ---- weight -------------------------------------------------------------

struct WeightStep {
    enum class Kind { slide, swap };
    Kind kind = Kind::slide;
    int x = -1;  // runners of a swap step
    int y = -1;
    int hooks = 0;  // rim e-hooks removed by a slide step
    int added = 0;  // contribution to the weight
    Bipartition result;
};

struct WeightTrace {
    Bipartition start;
    std::vector<WeightStep> steps;
    Bipartition bicore;
    std::vector<int> X, Y;
    int weight = 0;

    bool reduced() const { return !steps.empty(); }
};

struct SwapCandidate {
    int x, y, gap;
};

// Default phase-2 rule: largest gap, ties to the largest (x, y). Candidates
// arrive in increasing (x, y) order.
struct LargestGapSwap {
    std::size_t operator()(const std::vector<SwapCandidate>& c) const
    {
        std::size_t best = 0;
        for (std::size_t t = 1; t < c.size(); ++t)
            if (c[t].gap >= c[best].gap)
                best = t;
        return best;
    }
};

template <class Chooser = LargestGapSwap>
WeightTrace weight_trace(const Bipartition& b, const Params& p, Chooser choose = {})
{
    WeightTrace t;
    t.start = b;
    AbacusDisplay d = to_display(b, p);
    SlideResult s = slide_up(d);
    if (s.hooks > 0) {
        d = s.display;
        t.steps.push_back({WeightStep::Kind::slide, -1, -1, s.hooks, 2 * s.hooks, from_display(d)});
    }
    while (true) {
        auto g = gamma_vector(d);
        std::vector<SwapCandidate> cand;
        for (int x = 0; x < p.e; ++x)
            for (int y = 0; y < p.e; ++y)
                if (g[x] - g[y] >= 3)
                    cand.push_back({x, y, g[x] - g[y]});
        if (cand.empty())
            break;
        const SwapCandidate c = cand.at(choose(cand));
        d = s_move(d, c.x, c.y);
        t.steps.push_back({WeightStep::Kind::swap, c.x, c.y, 0, 2 * (c.gap - 2), from_display(d)});
    }
    t.bicore = from_display(d);
    auto g = gamma_vector(d);
    for (int x = 0; x < p.e; ++x) {
        bool inx = false, iny = false;
        for (int y = 0; y < p.e; ++y) {
            inx = inx || g[x] - g[y] == 2;
            iny = iny || g[y] - g[x] == 2;
        }
        if (inx)
            t.X.push_back(x);
        if (iny)
            t.Y.push_back(x);
    }
    t.weight = static_cast<int>(std::min(t.X.size(), t.Y.size()));
    for (const auto& st : t.steps)
        t.weight += st.added;
    return t;
}

inline int weight(const Bipartition& b, const Params& p)
{
    return weight_trace(b, p).weight;
}

// ---- members by content ---------------------------------------------------

// Removable minus addable nodes per residue, read off the content alone.
inline DeltaVector delta_from_content(const std::vector<int>& c, const Params& p)
{
    int e = p.e;
    DeltaVector d{std::vector<int>(e, 0)};
    for (int i = 0; i < e; ++i)
        d.delta[i] = 2 * c[i] - c[mod(i - 1, e)] - c[mod(i + 1, e)] - (p.kappa[0] == i) - (p.kappa[1] == i);
    return d;
}

// One bipartition with the given content, or nothing when the block is empty.
// The content fixes the combined bead count M_x on each runner (delta_i is
// M_i - M_{i-1}); splitting M as evenly as possible between the components
// gives the smallest pair of cores, and the rest is e-hooks on the first row.
inline std::optional<Bipartition> find_member(const BlockKey& key, const Params& p)
{
    check_key(key, p);
    int e = p.e;
    Bicharge ch = canonical_bicharge(key.n, p);
    DeltaVector d = delta_from_content(key.content, p);
    std::vector<long long> M(e, 0);
    long long total = 0;
    for (int i = 1; i < e; ++i) {
        M[i] = M[i - 1] + d[i];
        total += M[i];
    }
    long long rest = ch.k1 + ch.k2 - total;
    if (rest % e != 0)
        return std::nullopt;
    for (auto& m : M) {
        m += rest / e;
        if (m < 0)
            return std::nullopt;
    }
    std::vector<long long> N1(e, 0);
    for (int u = 0; u < ch.k1; ++u) {
        int best = -1;
        for (int x = 0; x < e; ++x)
            if (N1[x] < M[x] && (best < 0 || 2 * N1[x] - M[x] < 2 * N1[best] - M[best]))
                best = x;
        if (best < 0)
            return std::nullopt;
        ++N1[best];
    }
    std::vector<int> beads1, beads2;
    for (int x = 0; x < e; ++x)
        for (long long j = 0; j < M[x]; ++j) {
            if (j < N1[x])
                beads1.push_back(static_cast<int>(x + j * e));
            else
                beads2.push_back(static_cast<int>(x + (j - N1[x]) * e));
        }
    AbacusDisplay disp(p, ch, beads1, beads2);
    Bipartition core = from_display(disp);
    int spare = key.n - core.size();
    if (spare < 0 || spare % e != 0)
        return std::nullopt;
    for (int h = 0; h < spare / e; ++h) {
        int top = disp.beads(1).front();
        disp = apply_move(disp, 1, top, top + e);
    }
    Bipartition out = from_display(disp);
    if (content_counts(out, p) != key.content)
        throw invariant_error("member construction missed the block content");
    return out;
}

inline std::vector<Bipartition> brute_force_block(const BlockKey& key, const Params& p)
{
    check_key(key, p);
    std::vector<Bipartition> out;
    for (auto& b : bipartitions_of(key.n))
        if (content_counts(b, p) == key.content)
            out.push_back(std::move(b));
    return out;
}

// Grows diagrams node by node, never exceeding the target content.
inline std::vector<Bipartition> search_block(const BlockKey& key, const Params& p)
{
    check_key(key, p);
    std::unordered_map<Bipartition, std::vector<int>> level{{Bipartition{}, std::vector<int>(p.e, 0)}};
    for (int m = 0; m < key.n; ++m) {
        std::unordered_map<Bipartition, std::vector<int>> next;
        for (const auto& [b, c] : level) {
            for (const auto& a : boundary_nodes(b, p).addable) {
                if (c[a.residue] >= key.content[a.residue])
                    continue;
                auto c2 = c;
                ++c2[a.residue];
                next.emplace(add_node(b, a.node), std::move(c2));
            }
        }
        level = std::move(next);
    }
    std::vector<Bipartition> out;
    for (auto& kv : level)
        out.push_back(kv.first);
    canonical_sort(out);
    return out;
}

// ---- nucleus and member labels -------------------------------------------

struct NuLabel {
    int z = 0;
    bool operator==(const NuLabel&) const = default;
};

// the lowest bead on runner x of component `comp` moved down after shifting z
struct HookLabel {
    int z = 0;
    int x = 0;
    int comp = 1;
    bool operator==(const HookLabel&) const = default;
};

struct DownLabel {
    int x = 0;
    bool operator==(const DownLabel&) const = default;
};

struct DownDownUpLabel {
    int w = 0;
    int z = 0;
    int y = 0;
    bool operator==(const DownDownUpLabel&) const = default;
};

using MemberLabel = std::variant<NuLabel, HookLabel, DownLabel, DownDownUpLabel>;

inline std::string to_string(const MemberLabel& l)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NuLabel>)
                return "Nu(" + std::to_string(v.z) + ")";
            else if constexpr (std::is_same_v<T, HookLabel>)
                return "Hook(" + std::to_string(v.z) + "," + std::to_string(v.x) + "," + std::to_string(v.comp) + ")";
            else if constexpr (std::is_same_v<T, DownLabel>)
                return "Down(" + std::to_string(v.x) + ")";
            else
                return "DownDownUp(" + std::to_string(v.w) + "," + std::to_string(v.z) + "," + std::to_string(v.y) + ")";
        },
        l);
}

struct Nucleus {
    bool swapped = false;  // built with the components of every member exchanged
    Params world;          // parameters of that world, before the bead shift
    AbacusDisplay display; // bicharge (k1 + 1, k2 - 1)
    Bipartition nucleus;   // in the world's component order
    std::vector<int> z;
    int y = 0;
    int weight = 0;

    bool in_z(int x) const { return std::binary_search(z.begin(), z.end(), mod(x, world.e)); }
    std::vector<int> complement() const
    {
        std::vector<int> c;
        for (int x = 0; x < world.e; ++x)
            if (!in_z(x))
                c.push_back(x);
        return c;
    }
};

// Reduces a member to the underlying weight-1 block and shifts one bead on the
// unique Y runner. Returns nothing when |Y| != 1 in this world or when the
// member cannot be reduced.
inline std::optional<Nucleus> nucleus_in_world(const Bipartition& member, const Params& world, int w, bool swapped)
{
    AbacusDisplay d = to_display(member, world);
    if (w == 3) {
        bool done = false;
        for (int a = 1; a <= 2 && !done; ++a)
            for (int x : d.beads(a))
                if (x >= world.e && !d.has_bead(a, x - world.e)) {
                    d = apply_move(d, a, x, x - world.e);
                    done = true;
                    break;
                }
        if (!done) {
            auto g = gamma_vector(d);
            for (int x = 0; x < world.e && !done; ++x)
                for (int y = 0; y < world.e && !done; ++y)
                    if (g[x] - g[y] == 3) {
                        d = s_move(d, x, y);
                        done = true;
                    }
        }
        if (!done)
            return std::nullopt;
    } else if (w != 1) {
        return std::nullopt;
    }
    auto g = gamma_vector(d);
    std::vector<int> X, Y;
    for (int x = 0; x < world.e; ++x) {
        bool inx = false, iny = false;
        for (int y = 0; y < world.e; ++y) {
            if (g[x] - g[y] > 2)
                throw invariant_error("reduced member is not of weight 1");
            inx = inx || g[x] - g[y] == 2;
            iny = iny || g[y] - g[x] == 2;
        }
        if (inx)
            X.push_back(x);
        if (iny)
            Y.push_back(x);
    }
    if (std::min(X.size(), Y.size()) != 1)
        throw invariant_error("reduced member is not of weight 1");
    if (Y.size() != 1)
        return std::nullopt;
    Nucleus nu;
    nu.swapped = swapped;
    nu.world = world;
    nu.y = Y.front();
    nu.display = transfer_bead(d, nu.y, 2);
    nu.nucleus = from_display(nu.display);
    nu.z = X;
    nu.z.push_back(nu.y);
    std::sort(nu.z.begin(), nu.z.end());
    nu.weight = w;
    return nu;
}

inline Bipartition realize(const Nucleus& nu, const MemberLabel& label)
{
    int e = nu.world.e;
    auto need_z = [&](int x) {
        if (!nu.in_z(x))
            throw domain_error("runner " + std::to_string(mod(x, e)) + " is not in Z");
    };
    auto need_c = [&](int x) {
        if (nu.in_z(x))
            throw domain_error("runner " + std::to_string(mod(x, e)) + " lies in Z");
    };
    AbacusDisplay d = nu.display;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NuLabel>) {
                need_z(v.z);
                d = transfer_bead(d, mod(v.z, e), 1);
            } else {
                if (nu.weight != 3)
                    throw domain_error("label families need a weight-3 block");
                if constexpr (std::is_same_v<T, HookLabel>) {
                    need_z(v.z);
                    if (v.comp != 1 && v.comp != 2)
                        throw domain_error("component must be 1 or 2");
                    d = transfer_bead(d, mod(v.z, e), 1);
                    int pos = d.lowest_on_runner(v.comp, mod(v.x, e));
                    d = apply_move(d, v.comp, pos, pos + e);
                } else if constexpr (std::is_same_v<T, DownLabel>) {
                    need_c(v.x);
                    d = transfer_bead(d, mod(v.x, e), 1);
                } else {
                    need_z(v.w);
                    need_z(v.z);
                    need_c(v.y);
                    if (mod(v.w, e) == mod(v.z, e))
                        throw domain_error("DownDownUp needs two different runners of Z");
                    d = transfer_bead(d, mod(v.w, e), 1);
                    d = transfer_bead(d, mod(v.z, e), 1);
                    d = transfer_bead(d, mod(v.y, e), 2);
                }
            }
        },
        label);
    Bipartition b = from_display(d);
    return nu.swapped ? b.swapped() : b;
}

inline MemberLabel normalize(const MemberLabel& l, int e)
{
    return std::visit(
        [e](const auto& v) -> MemberLabel {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NuLabel>)
                return NuLabel{mod(v.z, e)};
            else if constexpr (std::is_same_v<T, HookLabel>)
                return HookLabel{mod(v.z, e), mod(v.x, e), v.comp};
            else if constexpr (std::is_same_v<T, DownLabel>)
                return DownLabel{mod(v.x, e)};
            else
                return DownDownUpLabel{std::min(mod(v.w, e), mod(v.z, e)), std::max(mod(v.w, e), mod(v.z, e)),
                                       mod(v.y, e)};
        },
        l);
}

struct Member {
    Bipartition bip;
    std::optional<MemberLabel> label;
};

inline std::vector<Member> label_members(const Nucleus& nu)
{
    std::vector<MemberLabel> labels;
    int e = nu.world.e;
    if (nu.weight == 1) {
        for (int z : nu.z)
            labels.push_back(NuLabel{z});
    } else {
        auto c = nu.complement();
        for (int z : nu.z)
            for (int x = 0; x < e; ++x)
                for (int a = 1; a <= 2; ++a)
                    labels.push_back(HookLabel{z, x, a});
        for (int x : c)
            labels.push_back(DownLabel{x});
        for (std::size_t s = 0; s < nu.z.size(); ++s)
            for (std::size_t t = s + 1; t < nu.z.size(); ++t)
                for (int y : c)
                    labels.push_back(DownDownUpLabel{nu.z[s], nu.z[t], y});
    }
    std::vector<Member> out;
    for (const auto& l : labels)
        out.push_back({realize(nu, l), l});
    return out;
}

// ---- block types ----------------------------------------------------------

enum class BlockType { I, II, III, IV, other };

inline std::string to_string(BlockType t)
{
    switch (t) {
    case BlockType::I: return "I";
    case BlockType::II: return "II";
    case BlockType::III: return "III";
    case BlockType::IV: return "IV";
    default: return "other";
    }
}

// Residues i singled out by the delta vector (type III may give two for e = 2).
inline std::pair<BlockType, std::vector<int>> classify_delta(const DeltaVector& d)
{
    int e = static_cast<int>(d.delta.size());
    std::vector<int> pos;
    for (int i = 0; i < e; ++i)
        if (d[i] >= 1)
            pos.push_back(i);
    if (pos.empty())
        return {BlockType::I, {}};
    if (pos.size() == 1 && d[pos[0]] == 1)
        return {BlockType::II, pos};
    if (pos.size() == 1 && d[pos[0]] == 2)
        return {BlockType::IV, pos};
    if (pos.size() == 2 && d[pos[0]] == 1 && d[pos[1]] == 1) {
        std::vector<int> is;
        for (int i : pos)
            if (d[mod(i + 1, e)] == 1 && mod(i + 1, e) != i)
                is.push_back(i);
        if (!is.empty())
            return {BlockType::III, is};
    }
    return {BlockType::other, {}};
}

struct TypeParams {
    int i = 0;
    int j = 0;
    int k = 0;
    int l = 0;
    std::optional<int> m;

    bool operator==(const TypeParams&) const = default;
};

inline std::vector<int> residue_range(int from, int to, int e)
{
    std::vector<int> out;
    for (int x = from; x <= to; ++x)
        out.push_back(mod(x, e));
    return out;
}

inline std::vector<int> expected_z(BlockType t, const TypeParams& tp, int e)
{
    std::vector<int> z;
    auto add = [&](int a, int b) {
        auto r = residue_range(a, b, e);
        z.insert(z.end(), r.begin(), r.end());
    };
    if (t == BlockType::II) {
        add(tp.i, tp.j);
        add(tp.k + 1, tp.l);
    } else if (t == BlockType::III) {
        add(tp.i + 1, tp.j);
        add(tp.k + 1, tp.l);
        add(*tp.m + 1, tp.i + e - 1);
    } else if (t == BlockType::IV) {
        add(tp.i, tp.j);
        add(tp.k + 1, tp.l);
        add(*tp.m + 1, tp.i + e - 1);
    }
    std::sort(z.begin(), z.end());
    return z;
}

// Reads the type parameters off the nucleus display. Fails when the nucleus is
// not in the orientation the closed forms assume.
inline std::optional<TypeParams> extract_type_params(const Nucleus& nu, BlockType t, const std::vector<int>& is)
{
    if (nu.weight != 3)
        return std::nullopt;
    const Params& sp = nu.display.params();
    int e = sp.e;
    Boundary bd = boundary_nodes(nu.nucleus, sp);
    std::vector<int> rem1, rem2, add1, add2;
    for (const auto& n : bd.removable)
        (n.node.comp == 1 ? rem1 : rem2).push_back(n.residue);
    for (const auto& n : bd.addable)
        (n.node.comp == 1 ? add1 : add2).push_back(n.residue);
    for (int i : is) {
        auto rep = [&](int r) { return i + mod(r - i, e); };
        std::vector<int> a1, a2;
        for (int r : add1)
            a1.push_back(rep(r));
        for (int r : add2)
            a2.push_back(rep(r));
        std::sort(a1.begin(), a1.end());
        std::sort(a2.begin(), a2.end());
        TypeParams tp;
        tp.i = i;
        bool ok = false;
        if (t == BlockType::II) {
            ok = rem1 == std::vector<int>{i} && rem2.empty() && a1.size() == 2 && a2.size() == 1;
            if (ok) {
                tp.j = a1[0] - 1;
                tp.l = a1[1] - 1;
                tp.k = a2[0] - 1;
                ok = i <= tp.j && tp.j <= tp.k && tp.k <= tp.l && tp.l <= e + i - 2;
            }
        } else if (t == BlockType::III) {
            ok = rem1 == std::vector<int>{mod(i + 1, e)} && rem2 == std::vector<int>{i} && a1.size() == 2 &&
                 a2.size() == 2;
            if (ok) {
                tp.j = a1[0] - 1;
                tp.l = a1[1] - 1;
                tp.k = a2[0] - 1;
                tp.m = a2[1] - 1;
                ok = i + 1 <= tp.j && tp.j <= tp.k && tp.k <= tp.l && tp.l <= *tp.m && *tp.m <= e + i - 2;
            }
        } else if (t == BlockType::IV) {
            ok = rem1 == std::vector<int>{i} && rem2 == std::vector<int>{i} && a1.size() == 2 && a2.size() == 2;
            if (ok) {
                tp.j = a1[0] - 1;
                tp.l = a1[1] - 1;
                tp.k = a2[0] - 1;
                tp.m = a2[1] - 1;
                ok = i <= tp.j && tp.j <= tp.k && tp.k <= tp.l && tp.l <= *tp.m && *tp.m <= e + i - 2;
            }
        }
        if (!ok)
            continue;
        if (expected_z(t, tp, e) != nu.z)
            throw invariant_error("Z does not match the type parameters");
        return tp;
    }
    return std::nullopt;
}

struct NucleusChoice {
    Nucleus nucleus;
    std::optional<TypeParams> params;
    bool nonstandard = false;  // no world meets the orientation the closed forms assume
};

inline std::optional<NucleusChoice> choose_nucleus(const Bipartition& member, const Params& p, int w, bool core)
{
    if (!(w == 1 || (w == 3 && !core)))
        return std::nullopt;
    auto [t, is] = classify_delta(delta_vector(member, p));
    std::optional<Nucleus> first;
    for (int s = 0; s < 2; ++s) {
        bool sw = s == 1;
        auto nu = nucleus_in_world(sw ? member.swapped() : member, sw ? p.swapped() : p, w, sw);
        if (!nu)
            continue;
        if (!first)
            first = nu;
        if (w == 1 || t == BlockType::I || t == BlockType::other)
            return NucleusChoice{*nu, std::nullopt, false};
        if (auto tp = extract_type_params(*nu, t, is))
            return NucleusChoice{*nu, tp, false};
    }
    if (!first)
        throw invariant_error("no world admits a nucleus");
    return NucleusChoice{*first, std::nullopt, true};
}

struct BlockDescriptor {
    BlockKey key;
    int weight = 0;
    DeltaVector delta;
    bool is_core = false;
    BlockType btype = BlockType::other;
    std::optional<Bipartition> nucleus;
    std::optional<std::vector<int>> z_set;
    std::optional<TypeParams> type_params;
    bool swapped = false;
    bool nonstandard = false;

    bool operator==(const BlockDescriptor&) const = default;
};

struct BlockAnalysis {
    BlockDescriptor desc;
    Bipartition member;
    std::optional<NucleusChoice> choice;
};

inline BlockAnalysis analyze_block(const BlockKey& key, const Params& p)
{
    auto member = find_member(key, p);
    if (!member)
        throw domain_error("no bipartition has this content");
    BlockAnalysis an;
    an.member = *member;
    auto& d = an.desc;
    d.key = key;
    WeightTrace tr = weight_trace(*member, p);
    d.weight = tr.weight;
    d.delta = delta_vector(*member, p);
    d.is_core = !tr.reduced();
    d.btype = classify_delta(d.delta).first;
    an.choice = choose_nucleus(*member, p, d.weight, d.is_core);
    if (an.choice) {
        d.nucleus = an.choice->nucleus.nucleus;
        d.z_set = an.choice->nucleus.z;
        d.type_params = an.choice->params;
        d.swapped = an.choice->nucleus.swapped;
        d.nonstandard = an.choice->nonstandard;
    }
    return an;
}

inline BlockDescriptor classify_type(const BlockKey& key, const Params& p)
{
    return analyze_block(key, p).desc;
}

inline Nucleus nucleus_and_Z(const BlockKey& key, const Params& p)
{
    auto an = analyze_block(key, p);
    if (!an.choice)
        throw domain_error("no nucleus: block of weight " + std::to_string(an.desc.weight) +
                           (an.desc.is_core ? " (core)" : ""));
    return an.choice->nucleus;
}

// ---- enumeration ----------------------------------------------------------

inline std::vector<Bipartition> constructive_block(const Nucleus& nu)
{
    std::vector<Bipartition> out;
    for (auto& m : label_members(nu))
        out.push_back(std::move(m.bip));
    canonical_sort(out);
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw invariant_error("two labels denote the same bipartition");
    return out;
}

inline std::vector<Bipartition> enumerate_block(const BlockKey& key, const Params& p)
{
    using MemoKey = std::tuple<int, int, int, BlockKey>;
    static std::mutex mu;
    static std::map<MemoKey, std::vector<Bipartition>> memo;
    MemoKey mk{p.e, p.kappa[0], p.kappa[1], key};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(mk);
        if (it != memo.end())
            return it->second;
    }
    std::vector<Bipartition> out;
    check_key(key, p);
    if (auto member = find_member(key, p)) {
        WeightTrace tr = weight_trace(*member, p);
        if (auto ch = choose_nucleus(*member, p, tr.weight, !tr.reduced()))
            out = constructive_block(ch->nucleus);
        else if (key.n <= 20)
            out = brute_force_block(key, p);
        else
            out = search_block(key, p);
    }
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(mk, out);
    return out;
}

// Members with an addable i-node for every residue i with delta_i >= 1.
inline std::vector<Member> exceptional_bips(const BlockKey& key, const Params& p)
{
    auto an = analyze_block(key, p);
    if (an.desc.weight != 3)
        throw domain_error("exceptional bipartitions are defined for weight-3 blocks");
    std::vector<int> pos;
    for (int i = 0; i < p.e; ++i)
        if (an.desc.delta[i] >= 1)
            pos.push_back(i);
    std::vector<Member> out;
    if (pos.empty())
        return out;
    std::vector<Member> all;
    if (an.choice)
        all = label_members(an.choice->nucleus);
    else
        for (auto& b : enumerate_block(key, p))
            all.push_back({b, std::nullopt});
    for (auto& m : all) {
        Boundary bd = boundary_nodes(m.bip, p);
        bool ok = std::all_of(pos.begin(), pos.end(), [&](int i) { return bd.add(i) > 0; });
        if (ok)
            out.push_back(m);
    }
    std::sort(out.begin(), out.end(), [](const Member& a, const Member& b) { return canonical_before(a.bip, b.bip); });
    return out;
}

// Closed-form exceptional labels for a block with type parameters.
inline std::vector<std::pair<std::string, MemberLabel>> closed_form_exceptional(BlockType t, const TypeParams& tp,
                                                                                const std::vector<int>& z, int e)
{
    std::vector<std::pair<std::string, MemberLabel>> out;
    int i = tp.i;
    if (t == BlockType::II) {
        for (int x : z) {
            std::string s = std::to_string(x);
            if (x == mod(i, e)) {
                out.push_back({"alpha_" + s, DownLabel{mod(i - 1, e)}});
                out.push_back({"beta_" + s, HookLabel{x, x, 1}});
                out.push_back({"gamma_" + s, HookLabel{x, mod(i - 1, e), 1}});
            } else {
                out.push_back({"alpha_" + s, HookLabel{x, mod(i, e), 2}});
                out.push_back({"beta_" + s, HookLabel{x, mod(i - 1, e), 2}});
                out.push_back({"gamma_" + s, DownDownUpLabel{std::min(mod(i, e), x), std::max(mod(i, e), x), mod(i - 1, e)}});
            }
        }
    } else if (t == BlockType::III) {
        out.push_back({"alphabeta", HookLabel{mod(i - 1, e), mod(i, e), 2}});
        out.push_back({"alphagamma", normalize(DownDownUpLabel{i - 1, i + 1, i}, e)});
        out.push_back({"gammaalpha", DownLabel{mod(i, e)}});
        out.push_back({"betagamma", HookLabel{mod(i + 1, e), mod(i, e), 1}});
    } else if (t == BlockType::IV) {
        out.push_back({"beta1", HookLabel{mod(i, e), mod(i - 1, e), 1}});
        out.push_back({"beta2", HookLabel{mod(i, e), mod(i, e), 1}});
        out.push_back({"beta3", HookLabel{mod(i - 1, e), mod(i - 1, e), 2}});
        out.push_back({"beta4", HookLabel{mod(i - 1, e), mod(i, e), 2}});
    }
    return out;
}

}  // namespace bipcomb
