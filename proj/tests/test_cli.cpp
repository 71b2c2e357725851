#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "bipcomb/io.hpp"

using namespace bipcomb;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch()
{
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("bipcomb-cli-" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string quote(const std::string& s)
{
    std::string out = "'";
    for (char c : s)
        out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

// env is a prefix such as "BIPCOMB_CACHE_DIR=/x"; the cache is off unless asked for.
Run run(const std::vector<std::string>& args, const std::string& env = "")
{
    fs::path out = scratch() / "out", err = scratch() / "err";
    std::string cmd = "env -u BIPCOMB_CACHE_DIR " + env + " " + quote(BIPCOMB_CLI);
    for (const auto& a : args)
        cmd += " " + quote(a);
    cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
    int st = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST(Cli, SignatureExample)
{
    auto r = run({"bip", "restricted", "--e", "3", "--kappa", "0,1", "--bip", "((3,2,1,1)|(2,2,2))", "--i", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = parse_json(r.out);
    ASSERT_EQ(j["signatures"].size(), 1u);
    const json& s = j["signatures"][0];
    EXPECT_EQ(s["raw"], "+--+-");
    EXPECT_EQ(s["reduced"], "+--");
    EXPECT_EQ(s["good"].dump(), R"({"row":2,"col":2,"comp":1})");
    EXPECT_EQ(s["cogood"].dump(), R"({"row":1,"col":4,"comp":1})");
}

TEST(Cli, WeightTraceInTable)
{
    auto r = run({"bip", "info", "--e", "5", "--kappa", "4,4", "--bip", "((5,3)|(6,4,3))", "--format", "table"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("weight:       7"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("-> ((2,1)|(6,2))"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("s_34 (+2) -> ((2^2)|(1^2))"), std::string::npos) << r.out;
}

TEST(Cli, DocumentsLiteralsAndFiles)
{
    auto a = run({"block", "info", "--bip", R"({"e":4,"kappa":[0,3],"comp1":[4],"comp2":[4,1,1]})"});
    auto b = run({"block", "info", "--e", "4", "--kappa", "0,3", "--block", "((4)|(4,1,1))"});
    fs::path f = scratch() / "doc.json";
    std::ofstream(f) << R"({"e":4,"kappa":[0,3],"n":10,"content":[2,3,3,2]})";
    auto c = run({"block", "info", "--block", "@" + f.string()});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    json j = parse_json(a.out);
    EXPECT_EQ(j["memberCount"], 28);
    EXPECT_EQ(j["descriptor"]["nucleus"].dump(), R"({"comp1":[2],"comp2":[1,1]})");
    EXPECT_EQ(j["descriptor"]["z"].dump(), "[0,2,3]");
}

TEST(Cli, EnumerateListsLabels)
{
    auto r = run({"block", "enumerate", "--e", "4", "--kappa", "0,3", "--bip", "((4)|(4,1,1))"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = parse_json(r.out);
    ASSERT_EQ(j["members"].size(), 28u);
    bool found = false;
    for (const auto& m : j["members"])
        if (m.value("label", "") == "DownDownUp(0,3,1)") {
            found = true;
            EXPECT_EQ(m["bip"].dump(), R"({"comp1":[3,3,1,1],"comp2":[1,1]})");
        }
    EXPECT_TRUE(found);
}

TEST(Cli, JsValuationExample)
{
    auto r = run({"js", "val", "--e", "6", "--kappa", "5,4", "--bip", "((2,1^4)|(4))", "--other", "((2)|(4,2,1,1))"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = parse_json(r.out);
    EXPECT_EQ(j["pairs"].size(), 1u);
    EXPECT_NE(j["valuation"], 0);
    auto bad = run({"js", "val", "--e", "6", "--kappa", "5,4", "--bip", "((2)|(4,2,1,1))", "--other", "((2,1^4)|(4))"});
    EXPECT_EQ(bad.code, 1);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bip"}).code, 2);
    EXPECT_EQ(run({"bip", "info", "--bip", "((1)|())"}).code, 2);  // no e
    EXPECT_EQ(run({"bip", "info", "--e", "3", "--kappa", "0,1", "--bip", "((1)|())", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"bip", "info", "--e", "3", "--kappa", "0", "--bip", "((1)|())"}).code, 2);
    EXPECT_EQ(run({"bip", "info", "--e", "3", "--kappa", "0,1", "--bip", "{\"comp1\":[1,2],\"comp2\":[]}"}).code, 2);
    EXPECT_EQ(run({"bip", "info", "--e", "3", "--kappa", "0,1", "--bip", R"({"e":4,"comp1":[],"comp2":[]})"}).code, 2);
    EXPECT_EQ(run({"bip", "info", "--e", "1", "--kappa", "0,0", "--bip", "((1)|())"}).code, 1);
    EXPECT_EQ(run({"bip", "diamond", "--e", "3", "--kappa", "0,0", "--bip", "((2)|(1))"}).code, 1);
    auto w4 = run({"decomp", "--e", "2", "--kappa", "0,1", "--bip", "((3,1)|(1))"});
    EXPECT_EQ(w4.code, 1);
    EXPECT_NE(w4.err.find("unsupported weight 4"), std::string::npos) << w4.err;
    auto bad = run({"bip", "info", "--e", "3", "--kappa", "0,1", "--bip", "{\"comp1\":[1,}"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("line 1, column"), std::string::npos) << bad.err;
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DeterministicAndCacheTransparent)
{
    std::vector<std::string> args{"decomp", "--e", "4", "--kappa", "0,3", "--bip", "((4)|(4,1,1))"};
    fs::path cache = scratch() / "cache";
    auto plain = run(args);
    auto again = run(args);
    auto cold = run(args, "BIPCOMB_CACHE_DIR=" + cache.string());
    ASSERT_TRUE(fs::exists(cache));
    ASSERT_EQ(std::distance(fs::directory_iterator(cache), fs::directory_iterator()), 1);
    auto warm = run(args, "BIPCOMB_CACHE_DIR=" + cache.string());
    auto off = args;
    off.push_back("--no-cache");
    auto skipped = run(off, "BIPCOMB_CACHE_DIR=" + cache.string());
    ASSERT_EQ(plain.code, 0) << plain.err;
    EXPECT_EQ(plain.out, again.out);
    EXPECT_EQ(plain.out, cold.out);
    EXPECT_EQ(plain.out, warm.out);
    EXPECT_EQ(plain.out, skipped.out);
    // a warm hit really is read from disk: a doctored entry shows through
    fs::path entry = fs::directory_iterator(cache)->path();
    json j = parse_json(slurp(entry));
    j["matrix"]["warnings"].push_back("from cache");
    std::ofstream(entry) << j.dump();
    EXPECT_NE(run(args, "BIPCOMB_CACHE_DIR=" + cache.string()).out.find("from cache"), std::string::npos);
    EXPECT_EQ(run(off, "BIPCOMB_CACHE_DIR=" + cache.string()).out, plain.out);
    auto threads1 = args;
    threads1.insert(threads1.end(), {"--threads", "1"});
    EXPECT_EQ(run(threads1).out, plain.out);
}

TEST(Cli, MatrixTable)
{
    auto r = run({"decomp", "--e", "2", "--kappa", "1,1", "--bip", "(-|(2,1^3))", "--format", "table"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    std::vector<std::string> lines;
    for (std::string l; std::getline(is, l);)
        lines.push_back(l);
    ASSERT_GE(lines.size(), 10u);
    EXPECT_EQ(lines[1].find_first_not_of("- "), std::string::npos);
    auto j = parse_json(run({"decomp", "--e", "2", "--kappa", "1,1", "--bip", "(-|(2,1^3))"}).out);
    EXPECT_EQ(j["rows"].size(), 8u);
    EXPECT_EQ(j["cols"].size(), 2u);
}

TEST(Cli, VerifyCases)
{
    auto one = run({"verify", "--case", "IV-e2-H5"});
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(parse_json(one.out)["overall"], true);

    auto inst = run({"verify", "--case", "III-10", "--e", "6", "--i", "1", "--j", "3", "--k", "3", "--l", "3", "--m", "5",
                     "--format", "table"});
    EXPECT_EQ(inst.code, 0) << inst.err << inst.out;
    EXPECT_NE(inst.out.find("PASS III-10"), std::string::npos);

    auto bad = run({"verify", "--case", "III-8", "--e", "6", "--i", "0", "--j", "3", "--k", "3", "--l", "4", "--m", "4"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("k=l"), std::string::npos) << bad.err;

    EXPECT_EQ(run({"verify", "--case", "III-99"}).code, 1);
    EXPECT_EQ(run({"verify"}).code, 2);
    EXPECT_EQ(run({"verify", "--case", "III-8", "--e", "6"}).code, 2);
    EXPECT_EQ(run({"verify", "--list"}).code, 0);

    auto all = run({"verify", "--all"});
    ASSERT_EQ(all.code, 0) << all.err;
    json j = parse_json(all.out);
    EXPECT_EQ(j["overall"], true);
    EXPECT_EQ(j["reports"].size(), 35u);
}
