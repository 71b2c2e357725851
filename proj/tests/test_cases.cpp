#include <gtest/gtest.h>

#include <random>

#include "bipcomb/cases.hpp"

using namespace bipcomb;

namespace {

std::string failures(const VerifyReport& r)
{
    std::string out;
    for (const auto& c : r.checks)
        if (!c.pass)
            out += "  " + c.name + ": expected " + c.expected + ", got " + c.actual + "\n";
    return out;
}

Instance random_instance(BlockType t, std::mt19937& rng)
{
    for (;;) {
        int e = std::uniform_int_distribution<int>(3, 8)(rng);
        int i = std::uniform_int_distribution<int>(0, e - 1)(rng);
        auto pick = [&](int lo) { return std::uniform_int_distribution<int>(lo, e + i - 2)(rng); };
        int lo = t == BlockType::III ? i + 1 : i;
        if (lo > e + i - 2)
            continue;
        Instance in{e, i, 0, 0, 0, std::nullopt};
        in.j = pick(lo);
        in.k = pick(in.j);
        in.l = pick(in.k);
        if (t != BlockType::II)
            in.m = pick(in.l);
        if (t == BlockType::II && in.i == in.j && in.k == in.l)
            continue;
        return in;
    }
}

}  // namespace

class BuiltinCase : public ::testing::TestWithParam<std::size_t> {};

TEST_P(BuiltinCase, AllChecksPass)
{
    static const auto cases = builtin_cases();
    const auto& spec = cases.at(GetParam());
    auto r = verify_case(spec);
    EXPECT_TRUE(r.overall) << spec.caseId << " " << to_string(spec.inst) << "\n" << failures(r);
    EXPECT_FALSE(r.checks.empty());
}

INSTANTIATE_TEST_SUITE_P(Cases, BuiltinCase, ::testing::Range<std::size_t>(0, builtin_cases().size()),
                         [](const auto& info) {
                             auto spec = builtin_cases().at(info.param);
                             std::string n = spec.caseId + "_" + std::to_string(info.param);
                             for (auto& c : n)
                                 if (!std::isalnum(static_cast<unsigned char>(c)))
                                     c = '_';
                             return n;
                         });

TEST(Fixtures, EveryValueNamesItsSource)
{
    for (const auto& spec : builtin_cases())
        for (const auto& fx : spec.expected)
            EXPECT_FALSE(fx.source.empty()) << spec.caseId << ": " << fx.query;
}

TEST(Fixtures, MissingSourceFails)
{
    auto spec = make_case("III-10");
    spec.expected.push_back({"type", "III", ""});
    auto r = verify_case(spec);
    EXPECT_FALSE(r.overall);
    EXPECT_FALSE(r.checks.back().pass);
    EXPECT_EQ(r.checks.back().actual, "fixture value has no provenance note");
}

TEST(Fixtures, WrongValueFails)
{
    auto spec = make_case("IV-9");
    spec.expected.push_back({"type", "II", "synthetic"});
    auto r = verify_case(spec);
    EXPECT_FALSE(r.overall);
    EXPECT_EQ(r.checks.back().actual, "IV");
}

TEST(Fixtures, BadQueryReportsError)
{
    auto spec = make_case("IV-9");
    spec.expected.push_back({"no-such-query(x)", "1", "synthetic"});
    auto r = verify_case(spec);
    EXPECT_FALSE(r.overall);
    EXPECT_EQ(r.checks.back().actual.rfind("error: ", 0), 0u);
}

TEST(Instances, ConditionViolationNamesTheLink)
{
    // III-8 needs j<k=l
    try {
        validate_instance("III-8", Instance{6, 0, 3, 3, 4, 4});
        FAIL() << "no exception";
    } catch (const domain_error& ex) {
        std::string msg = ex.what();
        EXPECT_NE(msg.find("III-8"), std::string::npos) << msg;
        EXPECT_NE(msg.find("k=l"), std::string::npos) << msg;
        EXPECT_NE(msg.find("j<k"), std::string::npos) << msg;
    }
    EXPECT_THROW(make_case("III-8", Instance{6, 0, 3, 3, 4, 4}), domain_error);
}

TEST(Instances, TypeRangesAreChecked)
{
    EXPECT_THROW(validate_instance("III-5", Instance{4, 0, 0, 1, 1, 1}), domain_error);  // j = i
    EXPECT_THROW(validate_instance("IV-1", Instance{4, 0, 0, 1, 2, 3}), domain_error);   // m > e+i-2
    EXPECT_THROW(validate_instance("II-main", Instance{5, 0, 1, 2, 3, 3}), domain_error);
    EXPECT_THROW(validate_instance("IV-1", Instance{5, 0, 0, 1, 2, std::nullopt}), domain_error);
    EXPECT_THROW(validate_instance("IV-99", Instance{5, 0, 0, 1, 2, 3}), domain_error);
    EXPECT_THROW(validate_instance("V-1", Instance{5, 0, 0, 1, 2, 3}), domain_error);
    EXPECT_NO_THROW(validate_instance("IV-1", Instance{5, 0, 0, 1, 2, 3}));
}

TEST(Instances, DegenerateTablesAreRefused)
{
    try {
        validate_instance("III-8", Instance{6, 0, 1, 3, 3, 3});
        FAIL() << "no exception";
    } catch (const domain_error& ex) {
        EXPECT_NE(std::string(ex.what()).find("table labels collide"), std::string::npos) << ex.what();
    }
    EXPECT_THROW(validate_instance("IV-11", Instance{6, 1, 1, 1, 1, 3}), domain_error);
    EXPECT_THROW(validate_instance("II-main", Instance{5, 1, 1, 2, 2, std::nullopt}), domain_error);
    EXPECT_NO_THROW(validate_instance("II-main", Instance{5, 1, 1, 2, 3, std::nullopt}));
}

TEST(Instances, DefaultsAreValid)
{
    for (const auto& id : case_ids())
        EXPECT_NO_THROW(validate_instance(id, default_instance(id))) << id;
}

TEST(Conditions, Chains)
{
    Instance in{7, 1, 2, 4, 4, 6};
    EXPECT_TRUE(detail::holds("i+1<=j<=k, k=l", in));
    EXPECT_TRUE(detail::holds("", in));
    EXPECT_TRUE(detail::holds("m<=e+i-2", in));
    auto v = detail::violations("j<k<l<m, m<e+i-2", in);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0], "k<l (k=4, l=4)");
    EXPECT_EQ(v[1], "m<e+i-2 (m=6, e+i-2=6)");
}

TEST(Conditions, Expressions)
{
    Instance in{5, 2, 3, 4, 4, std::nullopt};
    EXPECT_EQ(detail::eval_expr("e+i-2", in), 5);
    EXPECT_EQ(detail::eval_expr("-i+10", in), 8);
    EXPECT_THROW(detail::eval_expr("m+1", in), domain_error);
    EXPECT_THROW(detail::eval_expr("x", in), domain_error);
    EXPECT_THROW(detail::eval_expr("", in), domain_error);
}

TEST(Labels, TemplatesReduceModE)
{
    Instance in{5, 0, 1, 2, 3, 4};
    EXPECT_EQ(label_string("Hook(i-1,i+1,1)", in), "Hook(4,1,1)");
    EXPECT_EQ(label_string("DownDownUp(i-1,i-2,k+1)", in), to_string(normalize(DownDownUpLabel{4, 3, 3}, 5)));
    EXPECT_THROW(label_from_template("Hook(1,2)", in), domain_error);
    EXPECT_THROW(label_from_template("Loop(1)", in), domain_error);
    EXPECT_THROW(label_from_template("Hook", in), domain_error);
}

TEST(Labels, SetStringSortsAndDedupes)
{
    EXPECT_EQ(set_string({"b", "a", "b"}), "{a, b}");
    EXPECT_EQ(set_string({}), "{}");
}

// The instance block is built from parameters; classification must read them back.
TEST(Instances, RandomRoundTripThroughClassification)
{
    std::mt19937 rng(20261016);
    for (BlockType t : {BlockType::II, BlockType::III, BlockType::IV})
        for (int rep = 0; rep < 25; ++rep) {
            Instance in = random_instance(t, rng);
            Params p = instance_params(t, in);
            auto an = analyze_block(instance_block(t, in), p);
            SCOPED_TRACE(to_string(in));
            EXPECT_EQ(an.desc.btype, t);
            EXPECT_EQ(an.desc.weight, 3);
            ASSERT_TRUE(an.desc.type_params.has_value());
            EXPECT_FALSE(an.desc.swapped);
            EXPECT_EQ(params_string(*an.desc.type_params), params_string(in.i, in.j, in.k, in.l, in.m));
            ASSERT_TRUE(an.choice.has_value());
            EXPECT_EQ(an.choice->nucleus.nucleus, instance_nucleus(t, in));
        }
}

TEST(Cases, DiamondSurvivorsAtRandomInstances)
{
    // mu-diamond rows hold at any valid instance, not only the defaults
    std::mt19937 rng(7);
    for (const auto& id : case_ids()) {
        if (id == "IV-e2-H5" || id == "II-main")
            continue;
        BlockType t = case_type(id);
        int found = 0;
        for (int tries = 0; tries < 400 && found < 2; ++tries) {
            Instance in = random_instance(t, rng);
            try {
                validate_instance(id, in);
            } catch (const domain_error&) {
                continue;
            }
            ++found;
            auto r = verify_case(make_case(id, in));
            EXPECT_TRUE(r.overall) << id << " " << to_string(in) << "\n" << failures(r);
        }
    }
}
