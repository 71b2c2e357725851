#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bipcomb/cache.hpp"
#include "bipcomb/cases.hpp"
#include "bipcomb/crystal.hpp"
#include "bipcomb/io.hpp"
#include "bipcomb/js.hpp"
#include "bipcomb/render.hpp"

using namespace bipcomb;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::optional<int> e;
    std::string kappa;
    std::optional<int> charp;
    std::string bip;
    std::string block;
    std::string format = "json";
};

void add_common(CLI::App* sub, Common& c, bool wantBip, bool wantBlock)
{
    sub->add_option("--e", c.e, "quantum characteristic e >= 2");
    sub->add_option("--kappa", c.kappa, "charge A,B");
    sub->add_option("--charp", c.charp, "characteristic of the field (0 or a prime)");
    if (wantBip)
        sub->add_option("--bip", c.bip, "bipartition: JSON document, @file, or literal like ((2,1)|(3))");
    if (wantBlock)
        sub->add_option("--block", c.block, "block: any member (document, @file or literal) or {\"n\",\"content\"}");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "table"}));
}

InputDoc read_doc(const std::string& arg, const char* flag)
{
    if (arg.empty())
        throw usage_error(std::string(flag) + " is required");
    std::string text = arg;
    if (arg.front() == '@') {
        std::ifstream in(arg.substr(1), std::ios::binary);
        if (!in)
            throw usage_error("cannot read " + arg.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return parse_input(text);
    InputDoc d;
    d.bip = parse_bipartition_literal(text);
    return d;
}

Params resolve_params(const Common& c, const InputDoc& d)
{
    std::optional<std::array<int, 2>> kappa;
    if (!c.kappa.empty()) {
        auto parts = detail::split_top(detail::strip_spaces(c.kappa), ',');
        try {
            if (parts.size() != 2)
                throw std::invalid_argument(c.kappa);
            kappa = std::array<int, 2>{std::stoi(parts[0]), std::stoi(parts[1])};
        } catch (const std::logic_error&) {
            throw usage_error("--kappa expects A,B (got " + c.kappa + ")");
        }
    }
    auto merge = [](auto flag, auto doc, const char* name) {
        if (flag && doc && *flag != *doc)
            throw usage_error(std::string("--") + name + " disagrees with the input document");
        return flag ? flag : doc;
    };
    auto e = merge(c.e, d.e, "e");
    kappa = merge(kappa, d.kappa, "kappa");
    auto charp = merge(c.charp, d.charp, "charp");
    if (!e)
        throw usage_error("e is required (--e or \"e\" in the document)");
    if (!kappa)
        throw usage_error("kappa is required (--kappa or \"kappa\" in the document)");
    return Params(*e, (*kappa)[0], (*kappa)[1], charp.value_or(0));
}

std::pair<Bipartition, Params> bip_input(const Common& c)
{
    InputDoc d = read_doc(c.bip, "--bip");
    if (!d.bip)
        throw usage_error("--bip needs comp1 and comp2");
    return {*d.bip, resolve_params(c, d)};
}

std::pair<BlockKey, Params> block_input(const Common& c)
{
    InputDoc d = read_doc(c.block.empty() ? c.bip : c.block, "--block");
    Params p = resolve_params(c, d);
    if (d.block) {
        check_key(*d.block, p);
        if (!find_member(*d.block, p))
            throw domain_error("no bipartition has this content");
        return {*d.block, p};
    }
    return {block_key(*d.bip, p).first, p};
}

json node_json(const Node& n)
{
    json j = json::object();
    j["row"] = n.row;
    j["col"] = n.col;
    j["comp"] = n.comp;
    return j;
}

json opt_node(const std::optional<Node>& n) { return n ? node_json(*n) : json(nullptr); }

json nodes_json(const std::vector<Node>& ns)
{
    json a = json::array();
    for (const auto& n : ns)
        a.push_back(node_json(n));
    return a;
}

std::string opt_node_str(const std::optional<Node>& n) { return n ? to_string(*n) : "-"; }

std::string list_str(const std::vector<int>& v)
{
    std::string s = "[";
    for (std::size_t t = 0; t < v.size(); ++t)
        s += (t ? "," : "") + std::to_string(v[t]);
    return s + "]";
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void emit(const Common& c, const json& j, const std::function<std::string()>& table)
{
    if (c.format == "table")
        std::cout << table();
    else
        std::cout << dump(j);
}

// ---- verbs -------------------------------------------------------------------

void bip_info(const Common& c)
{
    auto [b, p] = bip_input(c);
    auto [key, delta] = block_key(b, p);
    WeightTrace tr = weight_trace(b, p);
    Boundary bd = boundary_nodes(b, p);
    bool restricted = is_restricted(b, p).first, regular = is_regular(b, p);

    json j = json::object();
    j["params"] = to_json(p);
    j["bip"] = to_json(b);
    j["size"] = b.size();
    j["block"] = to_json(key);
    j["delta"] = delta.delta;
    j["weight"] = tr.weight;
    json steps = json::array();
    for (const auto& s : tr.steps) {
        json sj = json::object();
        if (s.kind == WeightStep::Kind::slide) {
            sj["kind"] = "slide";
            sj["hooks"] = s.hooks;
        } else {
            sj["kind"] = "swap";
            sj["x"] = s.x;
            sj["y"] = s.y;
        }
        sj["added"] = s.added;
        sj["result"] = to_json(s.result);
        steps.push_back(sj);
    }
    j["weightTrace"] = {{"steps", steps}, {"bicore", to_json(tr.bicore)}, {"X", tr.X}, {"Y", tr.Y}};
    j["restricted"] = restricted;
    j["regular"] = regular;
    j["conjugate"] = to_json(conjugate(b));
    auto bnodes = [](const std::vector<BoundaryNode>& v) {
        json a = json::array();
        for (const auto& n : v) {
            json nj = node_json(n.node);
            nj["residue"] = n.residue;
            a.push_back(nj);
        }
        return a;
    };
    j["addable"] = bnodes(bd.addable);
    j["removable"] = bnodes(bd.removable);

    emit(c, j, [&] {
        std::vector<std::pair<std::string, std::string>> kv{
            {"bipartition", to_string(b)},
            {"size", std::to_string(b.size())},
            {"content", list_str(key.content)},
            {"delta", list_str(delta.delta)},
            {"weight", std::to_string(tr.weight)},
        };
        for (const auto& s : tr.steps) {
            std::string what = s.kind == WeightStep::Kind::slide
                                   ? "slide, " + std::to_string(s.hooks) + " e-hooks"
                                   : "s_" + std::to_string(s.x) + std::to_string(s.y);
            kv.push_back({"  step", what + " (+" + std::to_string(s.added) + ") -> " + to_string(s.result)});
        }
        kv.push_back({"  bicore", to_string(tr.bicore) + " X=" + list_str(tr.X) + " Y=" + list_str(tr.Y)});
        kv.push_back({"restricted", yes(restricted)});
        kv.push_back({"regular", yes(regular)});
        kv.push_back({"conjugate", to_string(conjugate(b))});
        std::string add, rem;
        for (const auto& n : bd.addable)
            add += (add.empty() ? "" : " ") + to_string(n.node) + ":" + std::to_string(n.residue);
        for (const auto& n : bd.removable)
            rem += (rem.empty() ? "" : " ") + to_string(n.node) + ":" + std::to_string(n.residue);
        kv.push_back({"addable", add.empty() ? "-" : add});
        kv.push_back({"removable", rem.empty() ? "-" : rem});
        return render_pairs(kv);
    });
}

void bip_restricted(const Common& c, std::optional<int> onlyResidue)
{
    auto [b, p] = bip_input(c);
    auto [ok, trace] = is_restricted(b, p);
    std::vector<SignatureReport> sigs;
    for (int i = 0; i < p.e; ++i)
        if (!onlyResidue || mod(*onlyResidue, p.e) == i)
            sigs.push_back(signature(b, i, p));

    json j = json::object();
    j["params"] = to_json(p);
    j["bip"] = to_json(b);
    j["restricted"] = ok;
    j["goodPath"] = trace.residues;
    j["terminal"] = to_json(trace.terminal);
    json sj = json::array();
    for (const auto& s : sigs) {
        json x = json::object();
        x["residue"] = s.residue;
        x["raw"] = SignatureReport::signs(s.raw);
        x["reduced"] = SignatureReport::signs(s.reduced);
        x["antireduced"] = SignatureReport::signs(s.antireduced);
        x["normal"] = nodes_json(s.normal);
        x["conormal"] = nodes_json(s.conormal);
        x["antinormal"] = nodes_json(s.antinormal);
        x["anticonormal"] = nodes_json(s.anticonormal);
        x["good"] = opt_node(s.good);
        x["cogood"] = opt_node(s.cogood);
        x["antigood"] = opt_node(s.antigood);
        x["anticogood"] = opt_node(s.anticogood);
        sj.push_back(x);
    }
    j["signatures"] = sj;

    emit(c, j, [&] {
        std::string out = render_pairs({{"bipartition", to_string(b)},
                                        {"restricted", yes(ok)},
                                        {"good path", list_str(trace.residues)},
                                        {"terminal", to_string(trace.terminal)}});
        TextTable t;
        t.header = {"i", "raw", "reduced", "antireduced", "good", "cogood", "antigood", "anticogood"};
        for (const auto& s : sigs)
            t.rows.push_back({std::to_string(s.residue), SignatureReport::signs(s.raw),
                              SignatureReport::signs(s.reduced), SignatureReport::signs(s.antireduced),
                              opt_node_str(s.good), opt_node_str(s.cogood), opt_node_str(s.antigood),
                              opt_node_str(s.anticogood)});
        return out + "\n" + t.str();
    });
}

void bip_diamond(const Common& c)
{
    auto [b, p] = bip_input(c);
    Bipartition d = mu_diamond(b, p);
    json j = json::object();
    j["params"] = to_json(p);
    j["bip"] = to_json(b);
    j["diamond"] = to_json(d);
    emit(c, j, [&] { return render_pairs({{"mu", to_string(b)}, {"mu-diamond", to_string(d)}}); });
}

json members_json(const std::vector<Member>& ms, int e)
{
    json a = json::array();
    for (const auto& m : ms) {
        json x = json::object();
        x["bip"] = to_json(m.bip);
        if (m.label)
            x["label"] = to_string(normalize(*m.label, e));
        a.push_back(x);
    }
    return a;
}

void block_info(const Common& c)
{
    auto [key, p] = block_input(c);
    BlockDescriptor d = classify_type(key, p);
    auto n = enumerate_block(key, p).size();
    json j = json::object();
    j["params"] = to_json(p);
    j["descriptor"] = to_json(d);
    j["memberCount"] = n;
    emit(c, j, [&] {
        std::vector<std::pair<std::string, std::string>> kv{
            {"n", std::to_string(key.n)},
            {"content", list_str(key.content)},
            {"weight", std::to_string(d.weight)},
            {"delta", list_str(d.delta.delta)},
            {"core", yes(d.is_core)},
            {"type", to_string(d.btype)},
            {"members", std::to_string(n)},
        };
        if (d.nucleus)
            kv.push_back({"nucleus", to_string(*d.nucleus) + (d.swapped ? " (swapped world)" : "")});
        if (d.z_set)
            kv.push_back({"Z", list_str(*d.z_set)});
        if (d.type_params)
            kv.push_back({"parameters", params_string(*d.type_params)});
        if (d.nonstandard)
            kv.push_back({"orientation", "nonstandard"});
        return render_pairs(kv);
    });
}

std::vector<Member> labelled(const std::vector<Bipartition>& bs, const Params& p, const BlockKey& key)
{
    std::map<Bipartition, MemberLabel> raw;
    auto an = analyze_block(key, p);
    if (an.choice)
        for (const auto& m : label_members(an.choice->nucleus))
            if (m.label)
                raw[m.bip] = *m.label;
    std::vector<Member> out;
    for (const auto& b : bs) {
        auto it = raw.find(b);
        out.push_back({b, it == raw.end() ? std::nullopt : std::optional<MemberLabel>(it->second)});
    }
    return out;
}

void block_enumerate(const Common& c)
{
    auto [key, p] = block_input(c);
    auto ms = labelled(enumerate_block(key, p), p, key);
    json j = json::object();
    j["params"] = to_json(p);
    j["block"] = to_json(key);
    j["members"] = members_json(ms, p.e);
    emit(c, j, [&] {
        TextTable t;
        t.header = {"#", "bipartition", "label", "restricted", "regular"};
        for (std::size_t r = 0; r < ms.size(); ++r)
            t.rows.push_back({std::to_string(r + 1), to_string(ms[r].bip),
                              ms[r].label ? to_string(normalize(*ms[r].label, p.e)) : "",
                              yes(is_restricted(ms[r].bip, p).first), yes(is_regular(ms[r].bip, p))});
        return t.str();
    });
}

void block_exceptional(const Common& c)
{
    auto [key, p] = block_input(c);
    auto ex = exceptional_bips(key, p);
    auto d = classify_type(key, p);
    json j = json::object();
    j["params"] = to_json(p);
    j["block"] = to_json(key);
    j["exceptional"] = members_json(ex, p.e);
    std::vector<std::pair<std::string, MemberLabel>> closed;
    if (d.type_params && d.z_set && d.weight == 3) {
        closed = closed_form_exceptional(d.btype, *d.type_params, *d.z_set, p.e);
        json cf = json::array();
        for (const auto& [name, lab] : closed)
            cf.push_back({{"name", name}, {"label", to_string(normalize(lab, p.e))}});
        j["closedForm"] = cf;
    }
    emit(c, j, [&] {
        TextTable t;
        t.header = {"bipartition", "label"};
        for (const auto& m : ex)
            t.rows.push_back({to_string(m.bip), m.label ? to_string(normalize(*m.label, p.e)) : ""});
        std::string out = std::to_string(ex.size()) + " exceptional\n" + t.str();
        if (!closed.empty()) {
            TextTable cf;
            cf.header = {"closed form", "label"};
            for (const auto& [name, lab] : closed)
                cf.rows.push_back({name, to_string(normalize(lab, p.e))});
            out += "\n" + cf.str();
        }
        return out;
    });
}

json hook_json(const RimHook& h)
{
    json j = json::object();
    j["comp"] = h.comp();
    j["length"] = h.length();
    j["leg"] = h.leg_length;
    j["hand"] = node_json(h.hand);
    return j;
}

void js_val(const Common& c, const std::string& otherArg)
{
    auto [lam, p] = bip_input(c);
    InputDoc od = read_doc(otherArg, "--other");
    if (!od.bip)
        throw usage_error("--other needs comp1 and comp2");
    if (od.e || od.kappa || od.charp)
        if (resolve_params(c, od) != p)
            throw usage_error("--other was given different parameters");
    Bipartition nu = *od.bip;
    Valuation v = js_valuation_detail(lam, nu, p);
    json j = json::object();
    j["params"] = to_json(p);
    j["lambda"] = to_json(lam);
    j["nu"] = to_json(nu);
    j["valuation"] = v.value;
    j["charDependent"] = v.char_dependent;
    j["beyondRules"] = v.beyond_rules;
    json pairs = json::array();
    for (const auto& hp : v.pairs)
        pairs.push_back({{"L", hook_json(hp.L)}, {"N", hook_json(hp.N)}, {"epsilon", hp.epsilon}, {"valuation", hp.valuation}});
    j["pairs"] = pairs;
    emit(c, j, [&] {
        std::string out = render_pairs({{"lambda", to_string(lam)}, {"nu", to_string(nu)},
                                        {"valuation", std::to_string(v.value)},
                                        {"char-dependent", yes(v.char_dependent)}});
        TextTable t;
        t.header = {"L hand", "L len", "L leg", "N hand", "N len", "N leg", "sign", "val"};
        for (const auto& hp : v.pairs)
            t.rows.push_back({to_string(hp.L.hand), std::to_string(hp.L.length()), std::to_string(hp.L.leg_length),
                              to_string(hp.N.hand), std::to_string(hp.N.length()), std::to_string(hp.N.leg_length),
                              hp.epsilon > 0 ? "+" : "-", std::to_string(hp.valuation)});
        return out + "\n" + std::to_string(v.pairs.size()) + " hook pairs\n" + t.str();
    });
}

void js_order_verb(const Common& c)
{
    auto [key, p] = block_input(c);
    JsOrder o = js_order(key, p);
    auto labels = member_labels(key, p);
    json j = json::object();
    j["params"] = to_json(p);
    j["block"] = to_json(key);
    json ms = json::array();
    for (const auto& m : o.members)
        ms.push_back(to_json(m));
    j["members"] = ms;
    json cov = json::array();
    for (auto [hi, lo] : o.covers)
        cov.push_back({hi, lo});
    j["covers"] = cov;
    emit(c, j, [&] {
        auto name = [&](const Bipartition& b) {
            auto it = labels.find(b);
            return to_string(b) + (it == labels.end() ? "" : " " + it->second);
        };
        TextTable t;
        t.header = {"above", "below"};
        for (auto [hi, lo] : o.covers)
            t.rows.push_back({name(o.members[hi]), name(o.members[lo])});
        return std::to_string(o.members.size()) + " members, " + std::to_string(o.covers.size()) + " covers\n" +
               t.str();
    });
}

void decomp(const Common& c, bool noCache, const std::string& cacheDir, unsigned threads, bool showJ)
{
    auto [key, p] = block_input(c);
    std::optional<MatrixCache> cache;
    if (!noCache) {
        if (!cacheDir.empty())
            cache.emplace(cacheDir);
        else if (auto d = cache_dir_from_env())
            cache.emplace(*d);
    }
    DecompMatrix m = cached_decomposition_matrix(key, p, cache ? &*cache : nullptr, threads);
    emit(c, to_json(m), [&] { return render_matrix(m, member_labels(key, p), showJ); });
}

int verify(const Common& c, const std::string& caseId, bool all, bool list, const std::array<std::optional<int>, 5>& ijklm)
{
    if (list) {
        for (const auto& id : case_ids())
            std::cout << id << "  " << to_string(default_instance(id)) << "  " << case_condition(id) << "\n";
        return 0;
    }
    bool anyParam = c.e.has_value();
    for (const auto& v : ijklm)
        anyParam = anyParam || v.has_value();
    std::vector<CaseSpec> specs;
    if (all) {
        if (!caseId.empty() || anyParam)
            throw usage_error("--all takes no case or instance");
        specs = builtin_cases();
    } else {
        if (caseId.empty())
            throw usage_error("give --case ID, --all or --list");
        if (!anyParam) {
            specs.push_back(make_case(caseId));
        } else {
            if (!c.e || !ijklm[0] || !ijklm[1] || !ijklm[2] || !ijklm[3])
                throw usage_error("an instance needs --e, --i, --j, --k and --l (and --m for types III and IV)");
            Instance in{*c.e, *ijklm[0], *ijklm[1], *ijklm[2], *ijklm[3], ijklm[4]};
            specs.push_back(make_case(caseId, in));
        }
    }
    std::vector<VerifyReport> reports;
    bool overall = true;
    for (const auto& s : specs) {
        reports.push_back(verify_case(s));
        overall = overall && reports.back().overall;
    }
    json j;
    if (all) {
        j = json::object();
        j["reports"] = json::array();
        for (const auto& r : reports)
            j["reports"].push_back(to_json(r));
        j["overall"] = overall;
    } else {
        j = to_json(reports.front());
    }
    emit(c, j, [&] {
        std::string out;
        for (const auto& r : reports)
            out += render_report(r) + (all ? "\n" : "");
        if (all)
            out += std::string(overall ? "PASS" : "FAIL") + " all " + std::to_string(reports.size()) + " cases\n";
        return out;
    });
    return overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Blocks, crystals and decomposition numbers for bipartitions"};
    app.require_subcommand(1);

    Common c;
    auto* bip = app.add_subcommand("bip", "questions about one bipartition")->require_subcommand(1);
    auto* bipInfo = bip->add_subcommand("info", "block, weight trace and boundary nodes");
    auto* bipRestricted = bip->add_subcommand("restricted", "restrictedness and i-signatures");
    auto* bipDiamond = bip->add_subcommand("diamond", "the regular partner of a restricted bipartition");
    std::optional<int> residue;
    for (auto* s : {bipInfo, bipRestricted, bipDiamond})
        add_common(s, c, true, false);
    bipRestricted->add_option("--i", residue, "only this residue's signature");

    auto* block = app.add_subcommand("block", "questions about a block")->require_subcommand(1);
    auto* blockInfo = block->add_subcommand("info", "weight, type, nucleus and parameters");
    auto* blockEnum = block->add_subcommand("enumerate", "all members in canonical order");
    auto* blockEx = block->add_subcommand("exceptional", "exceptional members");
    for (auto* s : {blockInfo, blockEnum, blockEx})
        add_common(s, c, true, true);

    auto* js = app.add_subcommand("js", "Jantzen-Schaper valuations")->require_subcommand(1);
    auto* jsVal = js->add_subcommand("val", "valuation of a pair lambda > nu");
    auto* jsOrder = js->add_subcommand("order", "covering relations of the JS order");
    std::string other;
    add_common(jsVal, c, true, false);
    jsVal->add_option("--other", other, "the dominated bipartition nu")->required();
    add_common(jsOrder, c, true, true);

    auto* dec = app.add_subcommand("decomp", "decomposition matrix of a block of weight <= 3");
    add_common(dec, c, true, true);
    bool noCache = false, showJ = false;
    std::string cacheDir;
    unsigned threads = 0;
    dec->add_flag("--no-cache", noCache, "neither read nor write the matrix cache");
    dec->add_option("--cache-dir", cacheDir, std::string("cache directory (default: $") + kCacheEnv + ")");
    dec->add_option("--threads", threads, "worker threads for the columns (0 = all cores)");
    dec->add_flag("--show-j", showJ, "table format shows J bounds instead of entries");

    auto* ver = app.add_subcommand("verify", "recompute a case of the classification and diff it against its fixture");
    std::string caseId;
    bool all = false, list = false;
    std::array<std::optional<int>, 5> ijklm;
    ver->add_option("--case", caseId, "case id, e.g. III-8");
    ver->add_flag("--all", all, "every built-in case");
    ver->add_flag("--list", list, "list case ids with default instances");
    ver->add_option("--e", c.e, "instance e");
    ver->add_option("--i", ijklm[0]);
    ver->add_option("--j", ijklm[1]);
    ver->add_option("--k", ijklm[2]);
    ver->add_option("--l", ijklm[3]);
    ver->add_option("--m", ijklm[4]);
    ver->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bipInfo->parsed())
            bip_info(c);
        else if (bipRestricted->parsed())
            bip_restricted(c, residue);
        else if (bipDiamond->parsed())
            bip_diamond(c);
        else if (blockInfo->parsed())
            block_info(c);
        else if (blockEnum->parsed())
            block_enumerate(c);
        else if (blockEx->parsed())
            block_exceptional(c);
        else if (jsVal->parsed())
            js_val(c, other);
        else if (jsOrder->parsed())
            js_order_verb(c);
        else if (dec->parsed())
            decomp(c, noCache, cacheDir, threads, showJ);
        else if (ver->parsed())
            return verify(c, caseId, all, list, ijklm);
        return 0;
    } catch (const usage_error& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const parse_error& ex) {
        std::cerr << "input error: " << ex.what() << "\n";
        return 2;
    } catch (const invariant_error& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
