#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "blocks.hpp"
#include "cases.hpp"
#include "core.hpp"
#include "js.hpp"

namespace bipcomb {

// Field order is insertion order, which makes every document canonical.
using json = nlohmann::ordered_json;

// Malformed or schema-violating document; the message starts with the position.
struct parse_error : domain_error {
    using domain_error::domain_error;
};

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte)
{
    int line = 1, col = 1;
    for (std::size_t p = 0; p < byte && p < text.size(); ++p) {
        if (text[p] == '\n') {
            ++line;
            col = 1;
        } else if ((static_cast<unsigned char>(text[p]) & 0xC0) != 0x80) {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what)
{
    throw parse_error("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

inline const json& field(const json& j, const std::string& path, const char* name)
{
    if (!j.is_object())
        schema_fail(path, "expected an object");
    auto it = j.find(name);
    if (it == j.end())
        schema_fail(path, std::string("missing field \"") + name + "\"");
    return *it;
}

inline int as_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        schema_fail(path, "expected an integer");
    auto v = j.get<long long>();
    if (v < -1000000000LL || v > 1000000000LL)
        schema_fail(path, "integer out of range");
    return static_cast<int>(v);
}

inline bool as_bool(const json& j, const std::string& path)
{
    if (!j.is_boolean())
        schema_fail(path, "expected true or false");
    return j.get<bool>();
}

inline std::string as_string(const json& j, const std::string& path)
{
    if (!j.is_string())
        schema_fail(path, "expected a string");
    return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& path)
{
    if (!j.is_array())
        schema_fail(path, "expected an array");
    return j;
}

inline std::vector<int> int_list(const json& j, const std::string& path)
{
    std::vector<int> out;
    for (std::size_t t = 0; t < as_array(j, path).size(); ++t)
        out.push_back(as_int(j[t], path + "/" + std::to_string(t)));
    return out;
}

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> known)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || it.key() == k;
        if (!ok)
            schema_fail(path, "unknown field \"" + it.key() + "\"");
    }
}

}  // namespace detail

inline json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        std::string msg = ex.what();
        // drop the library prefix up to "syntax error"
        if (auto p = msg.find("syntax error"); p != std::string::npos)
            msg = msg.substr(p);
        throw parse_error(detail::line_col(text, ex.byte == 0 ? 0 : ex.byte - 1) + ": " + msg);
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- bipartitions ----------------------------------------------------------

inline json to_json(const Partition& p) { return json(p.parts()); }

inline json to_json(const Bipartition& b)
{
    json j = json::object();
    j["comp1"] = to_json(b.comp1);
    j["comp2"] = to_json(b.comp2);
    return j;
}

inline Partition partition_from_json(const json& j, const std::string& path)
{
    auto parts = detail::int_list(j, path);
    for (std::size_t r = 0; r < parts.size(); ++r) {
        if (parts[r] <= 0)
            detail::schema_fail(path + "/" + std::to_string(r), "parts must be positive");
        if (r > 0 && parts[r] > parts[r - 1])
            detail::schema_fail(path + "/" + std::to_string(r), "parts must be weakly decreasing");
    }
    return Partition(parts);
}

inline Bipartition bipartition_from_json(const json& j, const std::string& path = "")
{
    return {partition_from_json(detail::field(j, path, "comp1"), path + "/comp1"),
            partition_from_json(detail::field(j, path, "comp2"), path + "/comp2")};
}

namespace detail {

inline Partition partition_literal(std::string s, const std::string& whole)
{
    if (s == "\xE2\x88\x85" || s == "-" || s.empty())
        return {};
    if (s.front() == '(' && s.back() == ')')
        s = s.substr(1, s.size() - 2);
    if (s.empty())
        return {};
    std::vector<int> parts;
    for (const auto& item : split_top(s, ',')) {
        auto caret = item.find('^');
        try {
            std::size_t used = 0;
            int v = std::stoi(item.substr(0, caret), &used);
            if (used != item.substr(0, caret).size())
                throw std::invalid_argument(item);
            int times = 1;
            if (caret != std::string::npos) {
                std::string e = item.substr(caret + 1);
                times = std::stoi(e, &used);
                if (used != e.size() || times < 1)
                    throw std::invalid_argument(item);
            }
            parts.insert(parts.end(), times, v);
        } catch (const std::logic_error&) {
            throw parse_error("cannot read part \"" + item + "\" in " + whole);
        }
    }
    try {
        return Partition(parts);
    } catch (const domain_error& ex) {
        throw parse_error(std::string(ex.what()) + " in " + whole);
    }
}

}  // namespace detail

// Reads "((2,1^3)|(4))", "(2,1,1,1|4)", "((3)|∅)" and the like.
inline Bipartition parse_bipartition_literal(const std::string& text)
{
    std::string s = detail::strip_spaces(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        // strip the outer pair only if it encloses the whole literal
        int depth = 0;
        bool outer = true;
        for (std::size_t p = 0; p + 1 < s.size(); ++p) {
            depth += s[p] == '(' ? 1 : s[p] == ')' ? -1 : 0;
            if (depth == 0) {
                outer = false;
                break;
            }
        }
        if (outer)
            s = s.substr(1, s.size() - 2);
    }
    auto halves = detail::split_top(s, '|');
    if (halves.size() != 2)
        throw parse_error("a bipartition literal needs exactly one '|': " + text);
    return {detail::partition_literal(halves[0], text), detail::partition_literal(halves[1], text)};
}

// ---- input documents --------------------------------------------------------

struct InputDoc {
    std::optional<int> e;
    std::optional<std::array<int, 2>> kappa;
    std::optional<int> charp;
    std::optional<Bipartition> bip;
    std::optional<BlockKey> block;  // {"n", "content"} in place of a member

    bool operator==(const InputDoc&) const = default;
};

inline InputDoc input_from_json(const json& j)
{
    if (!j.is_object())
        detail::schema_fail("", "expected an object");
    detail::reject_unknown(j, "", {"e", "kappa", "charp", "comp1", "comp2", "n", "content"});
    InputDoc d;
    if (j.contains("e"))
        d.e = detail::as_int(j["e"], "/e");
    if (j.contains("kappa")) {
        auto k = detail::int_list(j["kappa"], "/kappa");
        if (k.size() != 2)
            detail::schema_fail("/kappa", "expected two integers");
        d.kappa = std::array<int, 2>{k[0], k[1]};
    }
    if (j.contains("charp"))
        d.charp = detail::as_int(j["charp"], "/charp");
    bool hasBip = j.contains("comp1") || j.contains("comp2");
    bool hasKey = j.contains("n") || j.contains("content");
    if (hasBip && hasKey)
        detail::schema_fail("", "give either comp1/comp2 or n/content, not both");
    if (hasBip)
        d.bip = bipartition_from_json(j);
    if (hasKey) {
        BlockKey k;
        k.n = detail::as_int(detail::field(j, "", "n"), "/n");
        k.content = detail::int_list(detail::field(j, "", "content"), "/content");
        d.block = k;
    }
    return d;
}

inline InputDoc parse_input(const std::string& text) { return input_from_json(parse_json(text)); }

inline json to_json(const InputDoc& d)
{
    json j = json::object();
    if (d.e)
        j["e"] = *d.e;
    if (d.kappa)
        j["kappa"] = *d.kappa;
    if (d.charp)
        j["charp"] = *d.charp;
    if (d.bip) {
        j["comp1"] = to_json(d.bip->comp1);
        j["comp2"] = to_json(d.bip->comp2);
    }
    if (d.block) {
        j["n"] = d.block->n;
        j["content"] = d.block->content;
    }
    return j;
}

inline json to_json(const Params& p)
{
    json j = json::object();
    j["e"] = p.e;
    j["kappa"] = p.kappa;
    j["charp"] = p.charp;
    return j;
}

// ---- blocks -------------------------------------------------------------------

inline json to_json(const BlockKey& k)
{
    json j = json::object();
    j["n"] = k.n;
    j["content"] = k.content;
    return j;
}

inline BlockKey block_key_from_json(const json& j, const std::string& path = "")
{
    detail::reject_unknown(j, path, {"n", "content"});
    return {detail::as_int(detail::field(j, path, "n"), path + "/n"),
            detail::int_list(detail::field(j, path, "content"), path + "/content")};
}

namespace detail {

inline BlockType block_type_from(const std::string& s, const std::string& path)
{
    for (BlockType t : {BlockType::I, BlockType::II, BlockType::III, BlockType::IV, BlockType::other})
        if (to_string(t) == s)
            return t;
    schema_fail(path, "unknown block type \"" + s + "\"");
}

}  // namespace detail

inline json to_json(const TypeParams& tp)
{
    json j = json::object();
    j["i"] = tp.i;
    j["j"] = tp.j;
    j["k"] = tp.k;
    j["l"] = tp.l;
    if (tp.m)
        j["m"] = *tp.m;
    return j;
}

inline json to_json(const BlockDescriptor& d)
{
    json j = json::object();
    j["block"] = to_json(d.key);
    j["weight"] = d.weight;
    j["delta"] = d.delta.delta;
    j["isCore"] = d.is_core;
    j["type"] = to_string(d.btype);
    if (d.nucleus)
        j["nucleus"] = to_json(*d.nucleus);
    if (d.z_set)
        j["z"] = *d.z_set;
    if (d.type_params)
        j["typeParams"] = to_json(*d.type_params);
    j["swapped"] = d.swapped;
    j["orientation"] = d.nonstandard ? "nonstandard" : "standard";
    return j;
}

inline BlockDescriptor descriptor_from_json(const json& j)
{
    detail::reject_unknown(j, "", {"block", "weight", "delta", "isCore", "type", "nucleus", "z", "typeParams",
                                   "swapped", "orientation"});
    BlockDescriptor d;
    d.key = block_key_from_json(detail::field(j, "", "block"), "/block");
    d.weight = detail::as_int(detail::field(j, "", "weight"), "/weight");
    d.delta.delta = detail::int_list(detail::field(j, "", "delta"), "/delta");
    d.is_core = detail::as_bool(detail::field(j, "", "isCore"), "/isCore");
    d.btype = detail::block_type_from(detail::as_string(detail::field(j, "", "type"), "/type"), "/type");
    if (j.contains("nucleus"))
        d.nucleus = bipartition_from_json(j["nucleus"], "/nucleus");
    if (j.contains("z"))
        d.z_set = detail::int_list(j["z"], "/z");
    if (j.contains("typeParams")) {
        const json& t = j["typeParams"];
        detail::reject_unknown(t, "/typeParams", {"i", "j", "k", "l", "m"});
        TypeParams tp;
        tp.i = detail::as_int(detail::field(t, "/typeParams", "i"), "/typeParams/i");
        tp.j = detail::as_int(detail::field(t, "/typeParams", "j"), "/typeParams/j");
        tp.k = detail::as_int(detail::field(t, "/typeParams", "k"), "/typeParams/k");
        tp.l = detail::as_int(detail::field(t, "/typeParams", "l"), "/typeParams/l");
        if (t.contains("m"))
            tp.m = detail::as_int(t["m"], "/typeParams/m");
        d.type_params = tp;
    }
    d.swapped = detail::as_bool(detail::field(j, "", "swapped"), "/swapped");
    std::string o = detail::as_string(detail::field(j, "", "orientation"), "/orientation");
    if (o != "standard" && o != "nonstandard")
        detail::schema_fail("/orientation", "expected \"standard\" or \"nonstandard\"");
    d.nonstandard = o == "nonstandard";
    return d;
}

// ---- decomposition matrices -----------------------------------------------

inline json to_json(const DecompMatrix& m)
{
    json j = json::object();
    j["block"] = to_json(m.block);
    j["rows"] = json::array();
    for (const auto& r : m.rows)
        j["rows"].push_back(to_json(r));
    j["cols"] = json::array();
    for (const auto& c : m.cols)
        j["cols"].push_back(to_json(c));
    j["entries"] = m.entries;
    j["jBounds"] = m.jBounds;
    j["flags"] = m.flags;
    j["warnings"] = m.warnings;
    return j;
}

inline DecompMatrix matrix_from_json(const json& j)
{
    detail::reject_unknown(j, "", {"block", "rows", "cols", "entries", "jBounds", "flags", "warnings"});
    DecompMatrix m;
    m.block = block_key_from_json(detail::field(j, "", "block"), "/block");
    auto bips = [&](const char* name) {
        std::vector<Bipartition> out;
        const json& a = detail::as_array(detail::field(j, "", name), std::string("/") + name);
        for (std::size_t t = 0; t < a.size(); ++t)
            out.push_back(bipartition_from_json(a[t], std::string("/") + name + "/" + std::to_string(t)));
        return out;
    };
    m.rows = bips("rows");
    m.cols = bips("cols");
    auto grid = [&](const char* name, auto cell) {
        using T = decltype(cell(json(), std::string()));
        std::vector<std::vector<T>> out;
        std::string path = std::string("/") + name;
        const json& a = detail::as_array(detail::field(j, "", name), path);
        if (a.size() != m.rows.size())
            detail::schema_fail(path, "expected " + std::to_string(m.rows.size()) + " rows");
        for (std::size_t r = 0; r < a.size(); ++r) {
            std::string rp = path + "/" + std::to_string(r);
            const json& row = detail::as_array(a[r], rp);
            if (row.size() != m.cols.size())
                detail::schema_fail(rp, "expected " + std::to_string(m.cols.size()) + " entries");
            std::vector<T> vals;
            for (std::size_t c = 0; c < row.size(); ++c)
                vals.push_back(cell(row[c], rp + "/" + std::to_string(c)));
            out.push_back(std::move(vals));
        }
        return out;
    };
    m.entries = grid("entries", [](const json& x, const std::string& p) {
        int v = detail::as_int(x, p);
        if (v != 0 && v != 1)
            detail::schema_fail(p, "entries must be 0 or 1");
        return v;
    });
    m.jBounds = grid("jBounds", [](const json& x, const std::string& p) { return detail::as_int(x, p); });
    m.flags = grid("flags", [](const json& x, const std::string& p) {
        std::string s = detail::as_string(x, p);
        if (s != "direct" && s != "clamped")
            detail::schema_fail(p, "flags must be \"direct\" or \"clamped\"");
        return s;
    });
    if (j.contains("warnings"))
        for (std::size_t t = 0; t < detail::as_array(j["warnings"], "/warnings").size(); ++t)
            m.warnings.push_back(detail::as_string(j["warnings"][t], "/warnings/" + std::to_string(t)));
    return m;
}

// ---- verification reports ---------------------------------------------------

inline json to_json(const Instance& in)
{
    json j = json::object();
    j["e"] = in.e;
    j["i"] = in.i;
    j["j"] = in.j;
    j["k"] = in.k;
    j["l"] = in.l;
    if (in.m)
        j["m"] = *in.m;
    return j;
}

inline Instance instance_from_json(const json& j, const std::string& path)
{
    detail::reject_unknown(j, path, {"e", "i", "j", "k", "l", "m"});
    Instance in;
    in.e = detail::as_int(detail::field(j, path, "e"), path + "/e");
    in.i = detail::as_int(detail::field(j, path, "i"), path + "/i");
    in.j = detail::as_int(detail::field(j, path, "j"), path + "/j");
    in.k = detail::as_int(detail::field(j, path, "k"), path + "/k");
    in.l = detail::as_int(detail::field(j, path, "l"), path + "/l");
    if (j.contains("m"))
        in.m = detail::as_int(j["m"], path + "/m");
    return in;
}

inline json to_json(const VerifyReport& r)
{
    json j = json::object();
    j["caseId"] = r.caseId;
    j["instance"] = to_json(r.inst);
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json cj = json::object();
        cj["name"] = c.name;
        cj["expected"] = c.expected;
        cj["actual"] = c.actual;
        cj["pass"] = c.pass;
        cj["source"] = c.source;
        j["checks"].push_back(cj);
    }
    j["overall"] = r.overall;
    return j;
}

inline VerifyReport report_from_json(const json& j)
{
    detail::reject_unknown(j, "", {"caseId", "instance", "checks", "overall"});
    VerifyReport r;
    r.caseId = detail::as_string(detail::field(j, "", "caseId"), "/caseId");
    r.inst = instance_from_json(detail::field(j, "", "instance"), "/instance");
    const json& cs = detail::as_array(detail::field(j, "", "checks"), "/checks");
    for (std::size_t t = 0; t < cs.size(); ++t) {
        std::string p = "/checks/" + std::to_string(t);
        detail::reject_unknown(cs[t], p, {"name", "expected", "actual", "pass", "source"});
        Check c;
        c.name = detail::as_string(detail::field(cs[t], p, "name"), p + "/name");
        c.expected = detail::as_string(detail::field(cs[t], p, "expected"), p + "/expected");
        c.actual = detail::as_string(detail::field(cs[t], p, "actual"), p + "/actual");
        c.pass = detail::as_bool(detail::field(cs[t], p, "pass"), p + "/pass");
        c.source = detail::as_string(detail::field(cs[t], p, "source"), p + "/source");
        r.checks.push_back(std::move(c));
    }
    r.overall = detail::as_bool(detail::field(j, "", "overall"), "/overall");
    bool all = !r.checks.empty() &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
    if (r.overall != all)
        detail::schema_fail("/overall", "does not match the checks");
    return r;
}

}  // namespace bipcomb
