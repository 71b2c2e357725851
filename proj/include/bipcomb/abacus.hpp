#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"

namespace bipcomb {

struct Bicharge {
    int k1 = 0;
    int k2 = 0;

    int operator[](int a) const { return a == 1 ? k1 : k2; }
    bool operator==(const Bicharge&) const = default;
};

// Both components get at least n + e beads, so every bead can slide and no
// partition of size <= n runs out of beads.
inline Bicharge canonical_bicharge(int n, const Params& p)
{
    int shift = p.e * ((n + 2 * p.e - 1) / p.e);
    return {p.kappa[0] + shift, p.kappa[1] + shift};
}

class AbacusDisplay {
public:
    AbacusDisplay() = default;
    AbacusDisplay(const Params& p, Bicharge ch, std::vector<int> beads1, std::vector<int> beads2)
        : params_(p), charge_(ch), beads_{std::move(beads1), std::move(beads2)}
    {
        for (int a = 1; a <= 2; ++a) {
            auto& v = beads_[a - 1];
            std::sort(v.begin(), v.end(), std::greater<>());
            if (std::adjacent_find(v.begin(), v.end()) != v.end())
                throw domain_error("repeated bead position");
            if (!v.empty() && v.back() < 0)
                throw domain_error("negative bead position");
            if (static_cast<int>(v.size()) != ch[a])
                throw domain_error("bead count differs from the charge");
            if (mod(ch[a], p.e) != p.kappa_of(a))
                throw domain_error("charge not congruent to kappa");
        }
    }

    const Params& params() const { return params_; }
    const Bicharge& charge() const { return charge_; }
    int e() const { return params_.e; }

    // positions in descending order
    const std::vector<int>& beads(int comp) const { return beads_[comp - 1]; }

    bool has_bead(int comp, int pos) const
    {
        if (pos < 0)
            return true;
        const auto& v = beads_[comp - 1];
        return std::binary_search(v.begin(), v.end(), pos, std::greater<>());
    }

    int runner_count(int comp, int runner) const
    {
        int c = 0;
        for (int x : beads_[comp - 1])
            if (mod(x, e()) == runner)
                ++c;
        return c;
    }

    // lowest bead on a runner, or -1
    int lowest_on_runner(int comp, int runner) const
    {
        for (int x : beads_[comp - 1])
            if (mod(x, e()) == runner)
                return x;
        return -1;
    }

    int first_gap_on_runner(int comp, int runner) const
    {
        int x = runner;
        while (has_bead(comp, x))
            x += e();
        return x;
    }

    bool operator==(const AbacusDisplay&) const = default;

private:
    Params params_;
    Bicharge charge_;
    std::array<std::vector<int>, 2> beads_;
};

inline std::vector<int> beta_set(const Partition& lam, int k)
{
    if (k < lam.length())
        throw domain_error("charge below partition length");
    std::vector<int> out;
    for (int r = 1; r <= k; ++r)
        out.push_back(lam[r] + k - r);
    return out;
}

inline AbacusDisplay to_display(const Bipartition& b, const Params& p, Bicharge ch)
{
    return AbacusDisplay(p, ch, beta_set(b.comp1, ch.k1), beta_set(b.comp2, ch.k2));
}

inline AbacusDisplay to_display(const Bipartition& b, const Params& p)
{
    return to_display(b, p, canonical_bicharge(b.size(), p));
}

inline Partition partition_from_beads(const std::vector<int>& desc)
{
    int k = static_cast<int>(desc.size());
    std::vector<int> parts;
    for (int r = 1; r <= k; ++r)
        parts.push_back(desc[r - 1] - (k - r));
    return Partition(std::move(parts));
}

inline Bipartition from_display(const AbacusDisplay& d)
{
    return {partition_from_beads(d.beads(1)), partition_from_beads(d.beads(2))};
}

// Beads on each runner in component 1 minus those in component 2.
inline std::vector<int> gamma_vector(const AbacusDisplay& d)
{
    std::vector<int> g(d.e(), 0);
    for (int x : d.beads(1))
        ++g[mod(x, d.e())];
    for (int x : d.beads(2))
        --g[mod(x, d.e())];
    return g;
}

inline AbacusDisplay apply_move(const AbacusDisplay& d, int comp, int from, int to)
{
    if (comp != 1 && comp != 2)
        throw domain_error("component must be 1 or 2");
    if (from < 0 || !d.has_bead(comp, from))
        throw domain_error("no bead at position " + std::to_string(from));
    if (to < 0 || d.has_bead(comp, to))
        throw domain_error("position " + std::to_string(to) + " is occupied");
    std::array<std::vector<int>, 2> b{d.beads(1), d.beads(2)};
    auto& v = b[comp - 1];
    *std::find(v.begin(), v.end(), from) = to;
    return AbacusDisplay(d.params(), d.charge(), b[0], b[1]);
}

// Moves the lowest bead of `runner` in component `from_comp` to the first free
// position of that runner in the other component. The charge and the
// multicharge shift accordingly.
inline AbacusDisplay transfer_bead(const AbacusDisplay& d, int runner, int from_comp)
{
    int to_comp = 3 - from_comp;
    int src = d.lowest_on_runner(from_comp, runner);
    if (src < 0)
        throw domain_error("no bead on runner " + std::to_string(runner));
    int dst = d.first_gap_on_runner(to_comp, runner);
    std::array<std::vector<int>, 2> b{d.beads(1), d.beads(2)};
    auto& sv = b[from_comp - 1];
    sv.erase(std::find(sv.begin(), sv.end(), src));
    b[to_comp - 1].push_back(dst);
    int shift = from_comp == 1 ? -1 : 1;
    Bicharge ch{d.charge().k1 + shift, d.charge().k2 - shift};
    Params p(d.e(), d.params().kappa[0] + shift, d.params().kappa[1] - shift, d.params().charp);
    return AbacusDisplay(p, ch, b[0], b[1]);
}

// s_xy: a bead from component 1 to 2 on runner x, and from 2 to 1 on runner y.
inline AbacusDisplay s_move(const AbacusDisplay& d, int x, int y)
{
    return transfer_bead(transfer_bead(d, x, 1), y, 2);
}

struct SlideResult {
    AbacusDisplay display;
    int hooks = 0;  // number of rim e-hooks removed
};

inline SlideResult slide_up(const AbacusDisplay& d)
{
    int e = d.e();
    std::array<std::vector<int>, 2> b;
    int hooks = 0;
    for (int a = 1; a <= 2; ++a) {
        for (int x = 0; x < e; ++x) {
            int level = 0;
            std::vector<int> on;
            for (int pos : d.beads(a))
                if (mod(pos, e) == x)
                    on.push_back(pos);
            std::sort(on.begin(), on.end());
            for (int pos : on) {
                int target = x + e * level++;
                hooks += (pos - target) / e;
                b[a - 1].push_back(target);
            }
        }
    }
    return {AbacusDisplay(d.params(), d.charge(), b[0], b[1]), hooks};
}

struct BeadHook {
    int comp = 1;
    int from = 0;
    int to = 0;
    int leg_length = 0;
    int hand_residue = 0;

    int length() const { return from - to; }
};

// Rim hooks as bead moves from -> to (to < from, empty target) in one component.
inline std::vector<BeadHook> bead_hooks(const AbacusDisplay& d, std::optional<int> length = std::nullopt)
{
    std::vector<BeadHook> out;
    for (int a = 1; a <= 2; ++a) {
        const auto& v = d.beads(a);
        for (int x : v)
            for (int y = x - 1; y >= 0; --y) {
                if (d.has_bead(a, y))
                    continue;
                if (length && x - y != *length)
                    continue;
                int between = 0;
                for (int z : v)
                    if (z > y && z < x)
                        ++between;
                out.push_back({a, x, y, between, mod(x, d.e())});
            }
    }
    return out;
}

// Removable nodes read off the display: a bead at x with no bead at x - 1.
inline std::vector<int> removable_residues(const AbacusDisplay& d)
{
    std::vector<int> out;
    for (int a = 1; a <= 2; ++a)
        for (int x : d.beads(a))
            if (!d.has_bead(a, x - 1))
                out.push_back(mod(x, d.e()));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> addable_residues(const AbacusDisplay& d)
{
    std::vector<int> out;
    for (int a = 1; a <= 2; ++a)
        for (int x : d.beads(a))
            if (!d.has_bead(a, x + 1))
                out.push_back(mod(x + 1, d.e()));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace bipcomb
