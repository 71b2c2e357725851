#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "bipcomb/blocks.hpp"
#include "oracles.hpp"

using namespace bipcomb;

namespace {

// Builds a member of the weight-3 block around a given nucleus by the
// Hook(z, x, comp) recipe, starting from the shifted display.
Bipartition hook_member(const Bipartition& xi, const Params& p, int z, int x, int comp)
{
    Params shifted(p.e, p.kappa[0] + 1, p.kappa[1] - 1);
    auto d = to_display(xi, shifted, canonical_bicharge(xi.size() + 3 * p.e, shifted));
    d = transfer_bead(d, z, 1);
    int pos = d.lowest_on_runner(comp, x);
    return from_display(apply_move(d, comp, pos, pos + p.e));
}

std::map<std::vector<int>, std::vector<Bipartition>> blocks_of(int n, const Params& p)
{
    std::map<std::vector<int>, std::vector<Bipartition>> out;
    for (auto& b : bipartitions_of(n))
        out[content_counts(b, p)].push_back(b);
    return out;
}

}  // namespace

TEST(BlockKey, EmptyBipartition)
{
    auto [key, delta] = block_key(Bipartition{}, Params(4, 1, 3));
    EXPECT_EQ(key.content, (std::vector<int>{0, 0, 0, 0}));
    EXPECT_EQ(delta.delta, (std::vector<int>{0, -1, 0, -1}));
    auto [k2, d2] = block_key(Bipartition{}, Params(4, 2, 2));
    EXPECT_EQ(d2.delta, (std::vector<int>{0, 0, -2, 0}));
}

TEST(BlockKey, ResidueDiagramExample)
{
    auto [key, delta] = block_key(Bipartition{{3, 2, 1, 1}, {2, 2, 2}}, Params(3, 0, 1));
    // component 1 residues: 0 1 2 / 2 0 / 1 / 0 ; component 2: 1 2 / 0 1 / 2 0
    EXPECT_EQ(key.content, (std::vector<int>{5, 4, 4}));
    EXPECT_EQ(key.n, 13);
}

TEST(SameBlock, Examples)
{
    Params p(4, 0, 3);
    Bipartition a{{4}, {4, 1, 1}}, b{{3, 3, 1, 1}, {1, 1}};
    EXPECT_TRUE(same_block(a, a, p));
    EXPECT_TRUE(same_block(a, b, p));
    EXPECT_EQ(block_key(a, p), block_key(b, p));
    EXPECT_FALSE(same_block(Bipartition{{1}, {}}, Bipartition{{}, {1}}, p));
}

TEST(SameBlock, DeltaAndSizeDetermineContent)
{
    for (int e = 2; e <= 4; ++e)
        for (int n = 0; n <= 8; ++n) {
            Params p(e, 0, e - 1);
            std::map<std::vector<int>, std::vector<int>> deltaOf;
            for (auto& b : bipartitions_of(n)) {
                auto [key, delta] = block_key(b, p);
                auto [it, fresh] = deltaOf.emplace(delta.delta, key.content);
                EXPECT_EQ(it->second, key.content);
            }
        }
}

TEST(Weight, WorkedExampleTrace)
{
    Params p(5, 4, 4);
    auto t = weight_trace(Bipartition{{5, 3}, {6, 4, 3}}, p);
    EXPECT_EQ(t.weight, 7);
    ASSERT_EQ(t.steps.size(), 2u);
    EXPECT_EQ(t.steps[0].kind, WeightStep::Kind::slide);
    EXPECT_EQ(t.steps[0].added, 4);
    EXPECT_EQ(t.steps[0].result, (Bipartition{{2, 1}, {6, 2}}));
    EXPECT_EQ(t.steps[1].kind, WeightStep::Kind::swap);
    EXPECT_EQ(t.steps[1].x, 3);
    EXPECT_EQ(t.steps[1].y, 4);
    EXPECT_EQ(t.steps[1].added, 2);
    EXPECT_EQ(t.steps[1].result, (Bipartition{{2, 2}, {1, 1}}));
    EXPECT_EQ(t.X, std::vector<int>{0});
    EXPECT_EQ(t.Y, std::vector<int>{3});
}

TEST(Weight, Examples)
{
    EXPECT_EQ(weight(Bipartition{}, Params(3, 1, 2)), 0);
    EXPECT_EQ(weight(Bipartition{{4}, {4, 1, 1}}, Params(4, 0, 3)), 3);
}

TEST(Weight, AgreesWithContentFormula)
{
    for (int e = 2; e <= 5; ++e)
        for (int k1 = 0; k1 < e; ++k1)
            for (int k2 = 0; k2 < e; ++k2) {
                Params p(e, k1, k2);
                for (int n = 0; n <= 8; ++n)
                    for (auto& b : bipartitions_of(n))
                        ASSERT_EQ(weight(b, p), oracle::weight(b, p)) << b << " e=" << e;
            }
}

TEST(Weight, SwapOrderDoesNotMatter)
{
    std::mt19937 rng(17);
    for (int t = 0; t < 2000; ++t) {
        Bipartition b = oracle::random_bipartition(rng, 22);
        Params p(2 + t % 5, t % 3, t % 4);
        auto randomChoice = [&rng](const std::vector<SwapCandidate>& c) {
            return std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng);
        };
        EXPECT_EQ(weight_trace(b, p, randomChoice).weight, weight(b, p));
    }
}

TEST(Weight, InvariantOnBlocksAndUnderConjugation)
{
    for (int e = 2; e <= 4; ++e)
        for (int k1 = 0; k1 < e; ++k1)
            for (int k2 = 0; k2 < e; ++k2) {
                Params p(e, k1, k2);
                Params pc(e, -k2, -k1);
                for (int n = 0; n <= 7; ++n)
                    for (auto& [key, members] : blocks_of(n, p)) {
                        int w = weight(members.front(), p);
                        for (auto& b : members) {
                            EXPECT_EQ(weight(b, p), w);
                            EXPECT_EQ(weight(conjugate(b), pc), w);
                        }
                    }
            }
}

TEST(Weight, NodeRemovalIdentity)
{
    std::mt19937 rng(23);
    int checked = 0;
    while (checked < 10000) {
        Bipartition b = oracle::random_bipartition(rng, 20);
        Params p(2 + checked % 5, checked % 4, checked % 3);
        int i = std::uniform_int_distribution<int>(0, p.e - 1)(rng);
        auto bd = boundary_nodes(b, p);
        std::vector<Node> rem;
        for (auto& n : bd.removable)
            if (n.residue == i)
                rem.push_back(n.node);
        std::shuffle(rem.begin(), rem.end(), rng);
        int u = std::uniform_int_distribution<int>(0, static_cast<int>(rem.size()))(rng);
        Bipartition c = b;
        for (int s = 0; s < u; ++s)
            c = remove_node(c, rem[s]);
        int d = delta_vector(b, p)[i];
        ASSERT_EQ(weight(c, p), weight(b, p) + u * (d - u));
        ++checked;
    }
}

TEST(Enumerate, WorkedWeightThreeBlock)
{
    Params p(4, 0, 3);
    Bipartition lam{{4}, {4, 1, 1}};
    auto key = block_key(lam, p).first;
    auto members = enumerate_block(key, p);
    EXPECT_EQ(members.size(), 28u);
    EXPECT_EQ(members, brute_force_block(key, p));
    EXPECT_EQ(members, search_block(key, p));

    auto nu = nucleus_and_Z(key, p);
    EXPECT_FALSE(nu.swapped);
    EXPECT_EQ(nu.nucleus, (Bipartition{{2}, {1, 1}}));
    EXPECT_EQ(nu.z, (std::vector<int>{0, 2, 3}));
    EXPECT_EQ(realize(nu, DownDownUpLabel{0, 3, 1}), (Bipartition{{3, 3, 1, 1}, {1, 1}}));
    EXPECT_EQ(realize(nu, HookLabel{2, 3, 1}), lam);
    EXPECT_THROW(realize(nu, DownLabel{0}), domain_error);
    EXPECT_THROW(realize(nu, DownDownUpLabel{0, 0, 1}), domain_error);

    auto g = gamma_vector(nu.display);
    for (int z : {0, 2, 3})
        EXPECT_EQ(g[z] - g[1], 1);
}

TEST(Enumerate, UnderlyingWeightOneBlock)
{
    Params p(4, 0, 3);
    Bipartition nu{{3}, {1, 1, 1}};
    auto key = block_key(nu, p).first;
    EXPECT_EQ(weight(nu, p), 1);
    auto members = enumerate_block(key, p);
    std::set<Bipartition> got(members.begin(), members.end());
    std::set<Bipartition> want{{{3, 1, 1, 1}, {}}, {{3}, {1, 1, 1}}, {{}, {4, 1, 1}}};
    EXPECT_EQ(got, want);
    auto n = nucleus_and_Z(key, p);
    EXPECT_EQ(n.nucleus, (Bipartition{{2}, {1, 1}}));
}

TEST(Enumerate, EmptyBlock)
{
    Params p(3, 0, 0);
    auto key = block_key(Bipartition{}, p).first;
    EXPECT_EQ(enumerate_block(key, p), std::vector<Bipartition>{Bipartition{}});
    EXPECT_THROW(nucleus_and_Z(key, p), domain_error);
    EXPECT_TRUE(enumerate_block(BlockKey{2, {0, 2, 0}}, p).empty());
    EXPECT_THROW(enumerate_block(BlockKey{2, {1, 0, 0}}, p), domain_error);
}

TEST(Classify, TypeTwoExample)
{
    Params p(11, 0, 7);
    Bipartition xi{{3, 3, 3}, {}};
    auto lam = hook_member(xi, p, 1, 1, 1);
    auto key = block_key(lam, p).first;
    auto d = classify_type(key, p);
    EXPECT_EQ(d.weight, 3);
    EXPECT_FALSE(d.is_core);
    EXPECT_EQ(d.btype, BlockType::II);
    EXPECT_EQ(d.nucleus, xi);
    EXPECT_EQ(d.z_set, (std::vector<int>{1, 2, 3, 6, 7, 8}));
    ASSERT_TRUE(d.type_params);
    EXPECT_EQ(*d.type_params, (TypeParams{1, 3, 5, 8, std::nullopt}));
    EXPECT_EQ(exceptional_bips(key, p).size(), 18u);
}

TEST(Classify, TypeThreeExample)
{
    Params p(14, 10, 5);
    Bipartition xi{{7, 7}, {3, 3, 3, 3, 3, 3}};
    auto key = block_key(hook_member(xi, p, 0, 5, 2), p).first;
    auto d = classify_type(key, p);
    EXPECT_EQ(d.btype, BlockType::III);
    EXPECT_EQ(d.nucleus, xi);
    EXPECT_EQ(d.z_set, (std::vector<int>{0, 2, 3, 7, 8, 12, 13}));
    ASSERT_TRUE(d.type_params);
    EXPECT_EQ(*d.type_params, (TypeParams{1, 3, 6, 8, 11}));
    EXPECT_EQ(exceptional_bips(key, p).size(), 4u);
}

TEST(Classify, TypeFourExample)
{
    Params p(17, 14, 5);
    Bipartition xi{{7, 7, 7, 7}, {4, 4, 4, 4, 4, 4, 4}};
    auto key = block_key(hook_member(xi, p, 2, 2, 1), p).first;
    auto d = classify_type(key, p);
    EXPECT_EQ(d.btype, BlockType::IV);
    ASSERT_TRUE(d.type_params);
    EXPECT_EQ(*d.type_params, (TypeParams{1, 4, 7, 10, 13}));
    EXPECT_EQ(d.z_set, (std::vector<int>{0, 1, 2, 3, 4, 8, 9, 10, 14, 15, 16}));
}

TEST(Classify, SmallestTypeFourBlock)
{
    Params p(2, 1, 1);
    Bipartition mu{{}, {2, 1, 1, 1}};
    auto key = block_key(mu, p).first;
    auto d = classify_type(key, p);
    EXPECT_EQ(d.btype, BlockType::IV);
    ASSERT_TRUE(d.type_params);
    EXPECT_EQ(*d.type_params, (TypeParams{0, 0, 0, 0, 0}));
    auto members = enumerate_block(key, p);
    EXPECT_EQ(members.size(), 8u);
    std::set<Bipartition> exc;
    for (auto& m : exceptional_bips(key, p))
        exc.insert(m.bip);
    std::set<Bipartition> want{{{1, 1}, {2, 1}}, {{2}, {2, 1}}, {{2, 1}, {1, 1}}, {{2, 1}, {2}}};
    EXPECT_EQ(exc, want);
}

TEST(Classify, TypeOneHasNoExceptional)
{
    int found = 0;
    for (int e = 2; e <= 4; ++e) {
        Params p(e, 0, 1);
        for (int n = 3; n <= 9; ++n)
            for (auto& [content, members] : blocks_of(n, p)) {
                BlockKey key{n, content};
                auto d = classify_type(key, p);
                if (d.weight == 3 && d.btype == BlockType::I) {
                    EXPECT_TRUE(exceptional_bips(key, p).empty());
                    ++found;
                }
            }
    }
    EXPECT_GT(found, 0);
}

TEST(Classify, WeightTwoAndCoreBlocksHaveNoNucleus)
{
    Params p(3, 0, 0);
    for (int n = 0; n <= 8; ++n)
        for (auto& [content, members] : blocks_of(n, p)) {
            BlockKey key{n, content};
            auto d = classify_type(key, p);
            bool expectNucleus = d.weight == 1 || (d.weight == 3 && !d.is_core);
            EXPECT_EQ(d.nucleus.has_value(), expectNucleus);
            if (!expectNucleus)
                EXPECT_THROW(nucleus_and_Z(key, p), domain_error);
            if (d.weight != 3)
                EXPECT_THROW(exceptional_bips(key, p), domain_error);
        }
}

TEST(Blocks, ExhaustiveStructure)
{
    for (int e = 2; e <= 4; ++e)
        for (int k1 = 0; k1 < e; ++k1)
            for (int k2 = 0; k2 < e; ++k2) {
                Params p(e, k1, k2);
                for (int n = 0; n <= 10; ++n)
                    for (auto& [content, members] : blocks_of(n, p)) {
                        BlockKey key{n, content};
                        auto an = analyze_block(key, p);
                        auto& d = an.desc;
                        // core-ness is a block property
                        for (auto& b : members)
                            ASSERT_EQ(weight_trace(b, p).reduced(), !d.is_core) << b;
                        ASSERT_EQ(enumerate_block(key, p), members);
                        if (d.weight == 1) {
                            ASSERT_EQ(members.size(), d.z_set->size());
                        }
                        if (d.weight != 3)
                            continue;
                        std::vector<int> pos;
                        for (int i = 0; i < e; ++i)
                            if (d.delta[i] >= 1)
                                pos.push_back(i);
                        bool big = false, far = false, mixed = false;
                        for (int i : pos) {
                            big = big || d.delta[i] >= 3;
                            for (int j : pos) {
                                if (i == j)
                                    continue;
                                if (j != mod(i + 1, e) && j != mod(i - 1, e))
                                    far = true;
                                if (d.delta[j] >= 2)
                                    mixed = true;
                            }
                        }
                        auto exc = exceptional_bips(key, p);
                        if ((d.is_core && !pos.empty()) || big || far || mixed)
                            ASSERT_TRUE(exc.empty()) << "n=" << n << " e=" << e;
                        if (!d.is_core) {
                            std::size_t z = d.z_set->size(), c = e - z;
                            ASSERT_EQ(members.size(), 2 * e * z + c + z * (z - 1) / 2 * c);
                        }
                        if (d.type_params) {
                            auto closed = closed_form_exceptional(d.btype, *d.type_params, *d.z_set, e);
                            std::set<Bipartition> want, got;
                            for (auto& [name, l] : closed)
                                want.insert(realize(an.choice->nucleus, l));
                            for (auto& m : exc)
                                got.insert(m.bip);
                            ASSERT_EQ(got, want) << "n=" << n << " e=" << e << " type " << to_string(d.btype);
                        }
                    }
            }
}

TEST(FindMember, DeltaFromContent)
{
    std::mt19937 rng(29);
    for (int t = 0; t < 2000; ++t) {
        Bipartition b = oracle::random_bipartition(rng, 25);
        Params p(2 + t % 6, t % 5, t % 7);
        EXPECT_EQ(delta_from_content(content_counts(b, p), p), delta_vector(b, p));
    }
}

TEST(FindMember, ExistenceMatchesExhaustiveSearch)
{
    for (int e = 2; e <= 4; ++e)
        for (int k1 = 0; k1 < e; ++k1)
            for (int k2 = 0; k2 < e; ++k2) {
                Params p(e, k1, k2);
                for (int n = 0; n <= 8; ++n) {
                    auto blocks = blocks_of(n, p);
                    std::vector<int> c(e, 0);
                    // every composition of n into e parts
                    std::function<void(int, int)> rec = [&](int i, int left) {
                        if (i == e - 1) {
                            c[i] = left;
                            auto m = find_member(BlockKey{n, c}, p);
                            ASSERT_EQ(m.has_value(), blocks.count(c) > 0);
                            if (m)
                                ASSERT_EQ(content_counts(*m, p), c);
                            return;
                        }
                        for (int v = 0; v <= left; ++v) {
                            c[i] = v;
                            rec(i + 1, left - v);
                        }
                    };
                    rec(0, n);
                }
            }
}
