#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "core.hpp"
#include "crystal.hpp"
#include "js.hpp"

namespace bipcomb {

// Parameters (i, j, k, l, m) of a block of type II, III or IV, with e.
struct Instance {
    int e = 2;
    int i = 0;
    int j = 0;
    int k = 0;
    int l = 0;
    std::optional<int> m;

    bool operator==(const Instance&) const = default;
};

inline std::string params_string(int i, int j, int k, int l, std::optional<int> m)
{
    std::string s = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," +
                    std::to_string(l);
    if (m)
        s += "," + std::to_string(*m);
    return s + ")";
}

inline std::string params_string(const TypeParams& tp) { return params_string(tp.i, tp.j, tp.k, tp.l, tp.m); }

inline std::string to_string(const Instance& in)
{
    return "e=" + std::to_string(in.e) + " " + params_string(in.i, in.j, in.k, in.l, in.m);
}

namespace detail {

inline std::string strip_spaces(const std::string& s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    return out;
}

// Splits on `sep` outside parentheses.
inline std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Sums and differences of integers and the letters e, i, j, k, l, m.
inline int eval_expr(const std::string& s, const Instance& in)
{
    if (s.empty())
        throw domain_error("empty expression");
    int total = 0, sign = 1;
    std::size_t pos = 0;
    while (pos < s.size()) {
        char c = s[pos];
        if (c == '+' || c == '-') {
            sign = c == '+' ? 1 : -1;
            ++pos;
            continue;
        }
        int v = 0;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
                ++end;
            v = std::stoi(s.substr(pos, end - pos));
            pos = end;
        } else {
            switch (c) {
            case 'e': v = in.e; break;
            case 'i': v = in.i; break;
            case 'j': v = in.j; break;
            case 'k': v = in.k; break;
            case 'l': v = in.l; break;
            case 'm':
                if (!in.m)
                    throw domain_error("expression " + s + " uses m, which this block type lacks");
                v = *in.m;
                break;
            default: throw domain_error("cannot read expression " + s);
            }
            ++pos;
        }
        total += sign * v;
        sign = 1;
    }
    return total;
}

// Chains such as "i+1<=j<=k, m<e+i-2". Returns the failing links.
inline std::vector<std::string> violations(const std::string& cond, const Instance& in)
{
    std::vector<std::string> out;
    if (strip_spaces(cond).empty())
        return out;
    for (const auto& chain : split_top(strip_spaces(cond), ',')) {
        std::vector<std::string> exprs, ops;
        std::string cur;
        for (std::size_t p = 0; p < chain.size(); ++p) {
            char c = chain[p];
            if (c == '<' || c == '=') {
                std::string op(1, c);
                if (c == '<' && p + 1 < chain.size() && chain[p + 1] == '=') {
                    op = "<=";
                    ++p;
                }
                exprs.push_back(cur);
                ops.push_back(op);
                cur.clear();
            } else {
                cur += c;
            }
        }
        exprs.push_back(cur);
        for (std::size_t t = 0; t < ops.size(); ++t) {
            int a = eval_expr(exprs[t], in), b = eval_expr(exprs[t + 1], in);
            bool ok = ops[t] == "<" ? a < b : ops[t] == "<=" ? a <= b : a == b;
            if (!ok)
                out.push_back(exprs[t] + ops[t] + exprs[t + 1] + " (" + exprs[t] + "=" + std::to_string(a) + ", " +
                              exprs[t + 1] + "=" + std::to_string(b) + ")");
        }
    }
    return out;
}

inline bool holds(const std::string& cond, const Instance& in) { return violations(cond, in).empty(); }

}  // namespace detail

// Reads "Hook(i+1,i-1,2)", "Down(k)", "DownDownUp(i-1,i+1,i)" or "Nu(z)" with
// arguments evaluated on the instance; plain numbers work with any instance.
inline MemberLabel label_from_template(const std::string& tpl, const Instance& in)
{
    std::string s = detail::strip_spaces(tpl);
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw domain_error("cannot read label " + tpl);
    std::string name = s.substr(0, open);
    auto args = detail::split_top(s.substr(open + 1, s.size() - open - 2), ',');
    std::vector<int> v;
    for (const auto& a : args)
        v.push_back(detail::eval_expr(a, in));
    auto need = [&](std::size_t n) {
        if (v.size() != n)
            throw domain_error("label " + tpl + " needs " + std::to_string(n) + " arguments");
    };
    MemberLabel out;
    if (name == "Hook") {
        need(3);
        out = HookLabel{v[0], v[1], v[2]};
    } else if (name == "Down") {
        need(1);
        out = DownLabel{v[0]};
    } else if (name == "DownDownUp") {
        need(3);
        out = DownDownUpLabel{v[0], v[1], v[2]};
    } else if (name == "Nu") {
        need(1);
        out = NuLabel{v[0]};
    } else {
        throw domain_error("unknown label family " + name);
    }
    return normalize(out, in.e);
}

inline std::string label_string(const std::string& tpl, const Instance& in)
{
    return to_string(label_from_template(tpl, in));
}

// ---- instances ------------------------------------------------------------

inline BlockType case_type(const std::string& caseId)
{
    if (caseId == "II-main")
        return BlockType::II;
    if (caseId.rfind("III-", 0) == 0)
        return BlockType::III;
    if (caseId.rfind("IV-", 0) == 0)
        return BlockType::IV;
    throw domain_error("unknown case " + caseId);
}

inline std::string type_constraints(BlockType t)
{
    switch (t) {
    case BlockType::II: return "0<=i<e, i<=j<=k<=l<=e+i-2";
    case BlockType::III: return "0<=i<e, i+1<=j<=k<=l<=m<=e+i-2";
    case BlockType::IV: return "0<=i<e, i<=j<=k<=l<=m<=e+i-2";
    default: throw domain_error("no instances for this block type");
    }
}

inline Params instance_params(BlockType t, const Instance& in)
{
    int i = in.i, j = in.j, k = in.k, l = in.l;
    if (t == BlockType::II)
        return Params(in.e, j + l + 1 - i, k + 2);
    int m = *in.m;
    if (t == BlockType::III)
        return Params(in.e, j + l - i, k + m + 3 - i);
    return Params(in.e, j + l + 1 - i, k + m + 3 - i);
}

// Nucleus in the shifted world: one rectangle per component.
inline Bipartition instance_nucleus(BlockType t, const Instance& in)
{
    auto rect = [](int cols, int rows) { return Partition(std::vector<int>(std::max(rows, 0), cols)); };
    int e = in.e, i = in.i;
    if (t == BlockType::II)
        return {rect(e + i - in.l - 1, in.j + 1 - i), Partition{}};
    int m = *in.m;
    if (t == BlockType::III)
        return {rect(e + i - in.l, in.j - i), rect(e + i - m - 1, in.k + 1 - i)};
    return {rect(e + i - in.l - 1, in.j + 1 - i), rect(e + i - m - 1, in.k + 1 - i)};
}

inline BlockKey instance_block(BlockType t, const Instance& in)
{
    Params p = instance_params(t, in);
    Bipartition xi = instance_nucleus(t, in);
    Params shifted(p.e, p.kappa[0] + 1, p.kappa[1] - 1);
    auto d = to_display(xi, shifted, canonical_bicharge(xi.size() + 3 * p.e, shifted));
    int z = expected_z(t, TypeParams{in.i, in.j, in.k, in.l, in.m}, p.e).front();
    d = transfer_bead(d, z, 1);
    int pos = d.lowest_on_runner(1, z);
    return block_key(from_display(apply_move(d, 1, pos, pos + p.e)), p).first;
}

// ---- case tables ----------------------------------------------------------

struct CaseRow {
    int no;
    const char* mu;
    const char* cond;
    const char* diamond;
};

struct CandidateRow {
    const char* mu;
    const char* cond;
};

inline const std::vector<CaseRow>& type3_cases()
{
    static const std::vector<CaseRow> rows{
        {1, "Hook(i+1,i-1,2)", "k<l<m", "Hook(i-1,l+1,2)"},
        {2, "Hook(i+1,i-1,2)", "k<l=m", "Hook(i-1,i-1,2)"},
        {3, "Hook(i+1,i-1,2)", "k=l<m<e+i-2", "DownDownUp(i-1,i-2,k+1)"},
        {4, "Hook(i+1,i-1,2)", "k=l<m=e+i-2", "Hook(i-1,k+1,1)"},
        {5, "Hook(i+1,i-1,2)", "k=l=m", "Hook(i-1,i,1)"},
        {6, "Hook(i+1,i,2)", "j<k<l-1", "DownDownUp(l-1,l,j+1)"},
        {7, "Hook(i+1,i,2)", "j<k=l-1", "Hook(k+1,j+1,1)"},
        {8, "Hook(i+1,i,2)", "j<k=l", "Hook(i-1,j+1,1)"},
        {9, "Hook(i+1,i,2)", "j=k<l", "Hook(l,i+1,1)"},
        {10, "Hook(i+1,i,2)", "j=k=l", "Hook(i-1,i+1,1)"},
        {11, "Hook(i+1,l,2)", "k<l-1, l=m", "DownDownUp(l-1,l,i)"},
        {12, "Hook(i+1,l,2)", "k=l-1, l=m", "Hook(k+1,i,1)"},
        {13, "Hook(i+1,m,2)", "k<l-1, l<m", "DownDownUp(l-1,l,i)"},
        {14, "Hook(i+1,m,2)", "k=l-1, l<m", "Hook(k+1,i,1)"},
        {15, "Hook(i+1,m,2)", "k=l<m", "Hook(i-1,i,1)"},
        {16, "DownDownUp(i+1,i+2,m)", "i+1<j, k<l<m", "Hook(l,i,2)"},
        {17, "DownDownUp(i+1,i+2,m)", "i+1<j, k=l<m", "Hook(i-1,i-1,2)"},
        {18, "DownDownUp(i+1,k+1,m)", "k<l<m", "Hook(i-1,i-1,2)"},
    };
    return rows;
}

inline const std::vector<CaseRow>& type4_cases()
{
    static const std::vector<CaseRow> rows{
        {1, "Hook(i,i-1,2)", "k<l<m", "Hook(i-1,l+1,2)"},
        {2, "Hook(i,i-1,2)", "k<l=m", "Hook(i-1,i-1,2)"},
        {3, "Hook(i,i-1,2)", "k=l<m<e+i-2", "DownDownUp(i-1,i-2,k+1)"},
        {4, "Hook(i,i-1,2)", "k=l<m=e+i-2", "Hook(i-1,k+1,1)"},
        {5, "Hook(i,i-1,2)", "j<k=l=m", "Hook(i-1,j+1,1)"},
        {6, "Hook(i,i-1,2)", "j=k=l=m", "Hook(i-1,i,1)"},
        {7, "Hook(i,m,2)", "j<k<l-1, l<m", "DownDownUp(l-1,l,j+1)"},
        {8, "Hook(i,m,2)", "j<k=l-1, l<m", "Hook(k+1,j+1,1)"},
        {9, "Hook(i,m,2)", "j<k=l<m", "Hook(i-1,j+1,1)"},
        {10, "Hook(i,m,2)", "j=k<l<m", "Hook(l,i,1)"},
        {11, "Hook(i,m,2)", "j=k=l<m", "Hook(i-1,i,1)"},
        {12, "DownDownUp(i,i+1,m)", "i<j, k<l<m", "Hook(l,i,2)"},
        {13, "DownDownUp(i,i+1,m)", "i<j, k=l<m", "Hook(i-1,i-1,2)"},
        {14, "DownDownUp(i,k+1,m)", "k<l<m", "Hook(i-1,i-1,2)"},
    };
    return rows;
}

inline const std::vector<CandidateRow>& type3_candidates()
{
    static const std::vector<CandidateRow> rows{
        {"Hook(i+1,m,1)", "l<m"},
        {"Hook(i+1,i-1,2)", ""},
        {"Hook(i+1,i,2)", ""},
        {"Hook(i+1,l,2)", "k<l=m"},
        {"Hook(i+1,m,2)", "l<m"},
        {"DownDownUp(i+1,i+2,m)", "i+1<j, l<m"},
        {"DownDownUp(i+1,k+1,m)", "k<l<m"},
    };
    return rows;
}

inline const std::vector<CandidateRow>& type4_candidates()
{
    static const std::vector<CandidateRow> rows{
        {"Hook(i,m,1)", "l<m"},
        {"Hook(i,i-1,2)", ""},
        {"Hook(i,m,2)", "l<m"},
        {"DownDownUp(i,i+1,m)", "i<j, l<m"},
        {"DownDownUp(i,k+1,m)", "k<l<m"},
    };
    return rows;
}

inline const std::vector<int>& type3_survivors()
{
    static const std::vector<int> s{5, 8, 10, 15};
    return s;
}

inline const std::vector<int>& type4_survivors()
{
    static const std::vector<int> s{5, 6, 9, 11};
    return s;
}

inline std::vector<std::string> case_ids()
{
    std::vector<std::string> ids{"II-main"};
    for (const auto& r : type3_cases())
        ids.push_back("III-" + std::to_string(r.no));
    for (const auto& r : type4_cases())
        ids.push_back("IV-" + std::to_string(r.no));
    ids.push_back("IV-e2-H5");
    return ids;
}

inline const CaseRow& case_row(const std::string& caseId)
{
    BlockType t = case_type(caseId);
    if (t == BlockType::II || caseId == "IV-e2-H5")
        throw domain_error(caseId + " has no row in a case table");
    int no = 0;
    try {
        no = std::stoi(caseId.substr(caseId.find('-') + 1));
    } catch (const std::exception&) {
        throw domain_error("unknown case " + caseId);
    }
    const auto& rows = t == BlockType::III ? type3_cases() : type4_cases();
    for (const auto& r : rows)
        if (r.no == no)
            return r;
    throw domain_error("unknown case " + caseId);
}

inline std::string case_condition(const std::string& caseId)
{
    if (caseId == "II-main")
        return "";
    if (caseId == "IV-e2-H5")
        return "e=2, i=0";
    return case_row(caseId).cond;
}

// The detailed tables assume their labels are pairwise distinct members;
// these links fail exactly where two labels collide.
inline std::string table_genericity(const std::string& caseId)
{
    if (caseId == "III-8" || caseId == "III-10")
        return "i+2<=j";
    if (caseId == "IV-5" || caseId == "IV-6" || caseId == "IV-11")
        return "i<j";
    return "";
}

inline void validate_instance(const std::string& caseId, const Instance& in)
{
    BlockType t = case_type(caseId);
    if (in.e < 2)
        throw domain_error(caseId + ": e must be at least 2");
    if ((t == BlockType::II) == in.m.has_value())
        throw domain_error(caseId + (t == BlockType::II ? ": type II takes no m" : ": this case needs m"));
    auto bad = detail::violations(type_constraints(t), in);
    auto more = detail::violations(case_condition(caseId), in);
    bad.insert(bad.end(), more.begin(), more.end());
    if (bad.empty()) {
        more = detail::violations(table_genericity(caseId), in);
        for (auto& v : more)
            bad.push_back(v + " (table labels collide)");
        // i = j with k = l puts the removable node of the nucleus in component 2
        if (t == BlockType::II && in.i == in.j && in.k == in.l)
            bad.push_back("i<j or k<l (the block has nonstandard orientation)");
    }
    if (!bad.empty()) {
        std::string msg = caseId + ": instance " + to_string(in) + " violates ";
        for (std::size_t s = 0; s < bad.size(); ++s)
            msg += (s ? "; " : "") + bad[s];
        throw domain_error(msg);
    }
}

// Hand-picked instances where every row family of a table is non-empty;
// elsewhere the first valid instance with i = 0 and e as small as possible.
inline Instance default_instance(const std::string& caseId)
{
    static const std::map<std::string, Instance> picked{
        {"II-main", {7, 0, 1, 2, 5, std::nullopt}},
        {"III-8", {6, 0, 3, 4, 4, 4}},
        {"III-10", {5, 0, 3, 3, 3, 3}},
        {"IV-5", {6, 0, 2, 4, 4, 4}},
        {"IV-6", {6, 0, 2, 2, 2, 2}},
        {"IV-9", {7, 0, 2, 3, 3, 4}},
        {"IV-11", {8, 0, 3, 3, 3, 4}},
        {"IV-e2-H5", {2, 0, 0, 0, 0, 0}},
    };
    if (auto it = picked.find(caseId); it != picked.end())
        return it->second;
    BlockType t = case_type(caseId);
    std::string cond = case_condition(caseId);
    for (int e = 2; e <= 20; ++e) {
        int top = e - 2;
        for (int j = 0; j <= top; ++j)
            for (int k = j; k <= top; ++k)
                for (int l = k; l <= top; ++l)
                    for (int m = l; m <= top; ++m) {
                        Instance in{e, 0, j, k, l, m};
                        if (detail::holds(type_constraints(t), in) && detail::holds(cond, in))
                            return in;
                    }
    }
    throw domain_error("no instance found for " + caseId);
}

// ---- fixtures -------------------------------------------------------------

struct FixtureValue {
    std::string query;
    std::string expected;
    std::string source;  // where the value is stated
};

struct CaseSpec {
    std::string caseId;
    Instance inst;
    std::vector<FixtureValue> expected;
};

inline std::string set_string(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::string s = "{";
    for (std::size_t t = 0; t < v.size(); ++t)
        s += (t ? ", " : "") + v[t];
    return s + "}";
}

namespace detail {

struct FixtureBuilder {
    Instance in;
    std::vector<FixtureValue> out;

    std::string hook(int z, int x, int c) const { return to_string(normalize(HookLabel{z, x, c}, in.e)); }
    std::string down(int x) const { return to_string(normalize(DownLabel{x}, in.e)); }
    std::string ddu(int w, int z, int y) const { return to_string(normalize(DownDownUpLabel{w, z, y}, in.e)); }
    std::string tpl(const std::string& s) const { return label_string(s, in); }

    void add(std::string q, std::string expected, std::string source)
    {
        out.push_back({std::move(q), std::move(expected), std::move(source)});
    }
    static std::string sign(int exponent) { return exponent % 2 == 0 ? "1" : "-1"; }
    static std::string b(bool v) { return v ? "true" : "false"; }
    static std::string join(const std::vector<std::string>& v, char sep = ',')
    {
        std::string s;
        for (std::size_t t = 0; t < v.size(); ++t)
            s += (t ? std::string(1, sep) : "") + v[t];
        return s;
    }
    static std::string covers(const std::vector<std::pair<std::string, std::string>>& c)
    {
        std::vector<std::string> v;
        for (const auto& [lo, hi] : c)
            v.push_back(lo + "<" + hi);
        return set_string(v);
    }
    static void chain(std::vector<std::pair<std::string, std::string>>& c, const std::vector<std::string>& up)
    {
        for (std::size_t t = 0; t + 1 < up.size(); ++t)
            c.push_back({up[t], up[t + 1]});
    }
};

inline int z_size(BlockType t, const Instance& in)
{
    int i = in.i;
    if (t == BlockType::II)
        return (in.j - i + 1) + (in.l - in.k);
    if (t == BlockType::III)
        return (in.j - i) + (in.l - in.k) + (in.e + i - 1 - *in.m);
    return (in.j - i + 1) + (in.l - in.k) + (in.e + i - 1 - *in.m);
}

inline void common_fixture(FixtureBuilder& f, BlockType t, const std::string& tag)
{
    const Instance& in = f.in;
    int i = in.i, e = in.e;
    f.add("type", to_string(t), tag + ".abacus");
    f.add("params", params_string(in.i, in.j, in.k, in.l, in.m), tag + ".abacus");
    int z = z_size(t, in), c = e - z;
    f.add("members", std::to_string(2 * e * z + c + z * (z - 1) / 2 * c), "blockmembers.label-families");
    std::vector<std::string> exc;
    if (t == BlockType::II) {
        std::vector<int> zs;
        for (int x = i; x <= in.j; ++x)
            zs.push_back(x);
        for (int x = in.k + 1; x <= in.l; ++x)
            zs.push_back(x);
        for (int x : zs) {
            if (x == i) {
                exc.push_back(f.down(i - 1));
                exc.push_back(f.hook(i, i, 1));
                exc.push_back(f.hook(i, i - 1, 1));
            } else {
                exc.push_back(f.hook(x, i, 2));
                exc.push_back(f.hook(x, i - 1, 2));
                exc.push_back(f.ddu(i, x, i - 1));
            }
        }
    } else if (t == BlockType::III) {
        exc = {f.hook(i - 1, i, 2), f.ddu(i - 1, i + 1, i), f.down(i), f.hook(i + 1, i, 1)};
    } else {
        exc = {f.hook(i, i - 1, 1), f.hook(i, i, 1), f.hook(i - 1, i - 1, 2), f.hook(i - 1, i, 2)};
    }
    f.add("exceptional", set_string(exc), tag + ".tricky");
}

inline void type2_fixture(FixtureBuilder& f)
{
    const Instance& in = f.in;
    int i = in.i, k = in.k, l = in.l;
    std::string mu = f.hook(i, i - 1, 2);
    // the listed pair also contains Hook(i,i,2), which only ordinary dominance puts below gamma_i
    f.add("candidates", set_string({mu}), "typeII.conditions");
    f.add("dom-candidates", set_string({mu, f.hook(i, i, 2), f.hook(i, k, 2)}), "typeII.conditions.dominance-note");
    f.add("restricted-candidates", k < l ? set_string({mu}) : set_string({}), "typeII.restrictedness");
    f.add("restricted(" + mu + ")", f.b(k < l), "typeII.restrictedness");
    f.add("restricted(" + f.hook(i, i, 2) + ")", "false", "typeII.restrictedness");
    if (k == l)
        return;
    auto gamma = [&](int x) { return x == i ? f.hook(i, i - 1, 1) : f.ddu(i, x, i - 1); };
    std::string beta_l = f.hook(l, i - 1, 2), gamma_l = gamma(l);
    std::vector<std::string> tops{beta_l, gamma(i)};
    for (int x = k + 1; x <= l; ++x) {
        tops.push_back(gamma(x));
        f.add("val(" + gamma(x) + "," + mu + ")", f.sign(l - x), "typeII.js-coefficients");
    }
    f.add("val(" + gamma(i) + "," + mu + ")", f.sign(l - k), "typeII.js-coefficients");
    f.add("val(" + beta_l + "," + mu + ")", "-1", "typeII.js-coefficients");
    for (int x = k + 1; x < l; ++x)
        f.add("val(" + gamma(x) + "," + gamma_l + ")", f.sign(l - x + 1), "typeII.js-coefficients");
    f.add("val(" + gamma(i) + "," + gamma_l + ")", f.sign(l - k + 1), "typeII.js-coefficients");
    f.add("val(" + beta_l + "," + gamma_l + ")", "1", "typeII.js-coefficients");
    std::string tops_s = f.join(tops);
    auto d = tops;
    d.push_back(mu);
    f.add("interval(" + mu + ";" + tops_s + ")", set_string(d), "typeII.js-interval");
    std::vector<std::pair<std::string, std::string>> cov{{mu, gamma_l}, {gamma_l, beta_l}};
    std::vector<std::string> up{gamma_l};
    for (int x = l - 1; x > k; --x)
        up.push_back(gamma(x));
    up.push_back(gamma(i));
    f.chain(cov, up);
    f.add("covers(" + mu + ";" + tops_s + ")", f.covers(cov), "typeII.js-interval-diagram");
    f.add("dn(" + gamma(i) + "," + mu + ")", "0", "typeII.conclusion");
    for (int x = k + 1; x <= l; ++x)
        f.add("dn(" + gamma(x) + "," + mu + ")", x == l ? "1" : "0", "typeII.conclusion");
    f.add("dn(" + beta_l + "," + mu + ")", "0", "typeII.conclusion");
}

inline void table_candidates(FixtureBuilder& f, const std::vector<CandidateRow>& cands,
                             const std::vector<CaseRow>& rows, const std::string& tag)
{
    std::vector<std::string> all, restricted;
    for (const auto& c : cands)
        if (holds(c.cond, f.in))
            all.push_back(f.tpl(c.mu));
    for (const auto& r : rows)
        if (holds(r.cond, f.in))
            restricted.push_back(f.tpl(r.mu));
    f.add("candidates", set_string(all), tag + ".candidate-table");
    f.add("restricted-candidates", set_string(restricted), tag + ".diamond-table");
}

// Rows of a JS table: row label, entries by column, J and dn.
struct TableRow {
    std::string row;
    std::vector<std::pair<std::string, int>> entries;
    int J;
    int dn;
};

inline void add_table(FixtureBuilder& f, const std::string& mu, const std::vector<TableRow>& rows,
                      const std::string& source)
{
    for (const auto& r : rows) {
        for (const auto& [col, v] : r.entries)
            f.add("val(" + r.row + "," + col + ")", std::to_string(v), source);
        f.add("J(" + r.row + "," + mu + ")", std::to_string(r.J), source);
        f.add("dn(" + r.row + "," + mu + ")", std::to_string(r.dn), source);
    }
}

// Shared by the two type III cases with k = l and mu = Hook(i+1,i,2).
inline void type3_table_fixture(FixtureBuilder& f)
{
    const Instance& in = f.in;
    int i = in.i, j = in.j, k = in.k;
    std::string mu = f.hook(i + 1, i, 2), bg = f.hook(i + 1, i, 1), ag = f.ddu(i - 1, i + 1, i), ga = f.down(i);
    std::string c3 = f.hook(i + 1, i + 2, 2), c4 = f.hook(i + 2, i + 2, 1), c5 = f.hook(i + 1, i + 1, 1);
    std::vector<TableRow> rows;
    rows.push_back({bg, {{mu, 1}}, 1, 1});
    rows.push_back({ag, {{mu, -1}, {bg, 1}}, 0, 0});
    rows.push_back({c3, {{mu, 1}}, 1, 1});
    for (int x = i + 3; x <= k; ++x)
        rows.push_back({f.hook(i + 1, x, 2), {{mu, (x - i) % 2 ? -1 : 1}, {c3, (x - i + 1) % 2 ? -1 : 1}}, 0, 0});
    rows.push_back({f.hook(i + 1, i + 1, 2), {{mu, (k - i + 1) % 2 ? -1 : 1}, {c3, (k - i) % 2 ? -1 : 1}}, 0, 0});
    for (int x = k; x >= j + 1; --x)
        rows.push_back({f.down(x), {{mu, 0}, {c3, 0}}, 0, 0});
    for (int x = j; x >= i + 3; --x)
        rows.push_back({f.hook(x, x, 1), {{mu, 0}, {c3, 0}}, 0, 0});
    rows.push_back({c4, {{mu, 0}, {c3, 1}}, 1, 1});
    rows.push_back({c5, {{mu, 0}, {bg, 1}, {c3, 0}, {c4, 1}}, 2, 1});
    rows.push_back({ga, {{mu, -1}, {bg, 1}, {c3, 0}, {c4, -1}, {c5, 1}}, 0, 0});
    add_table(f, mu, rows, "typeIII.js-table");
    f.add("flag(" + c5 + "," + mu + ")", "clamped", "typeIII.js-table.J2-row");

    std::vector<std::string> d{bg, ag, ga};
    for (int x = i; x <= k; ++x)
        d.push_back(f.hook(i + 1, x, 2));
    for (int x = j + 1; x <= k; ++x)
        d.push_back(f.down(x));
    for (int x = i + 1; x <= j; ++x)
        d.push_back(f.hook(x, x, 1));
    std::string q = mu + ";" + ag + "," + ga;
    f.add("interval(" + q + ")", set_string(d), "typeIII.js-interval");
    std::vector<std::pair<std::string, std::string>> cov{{mu, bg}, {bg, ag}, {bg, c5}};
    std::vector<std::string> up{mu};
    for (int x = i + 2; x <= k; ++x)
        up.push_back(f.hook(i + 1, x, 2));
    up.push_back(f.hook(i + 1, i + 1, 2));
    for (int x = k; x >= j + 1; --x)
        up.push_back(f.down(x));
    for (int x = j; x >= i + 2; --x)
        up.push_back(f.hook(x, x, 1));
    up.push_back(c5);
    up.push_back(ga);
    f.chain(cov, up);
    f.add("covers(" + q + ")", f.covers(cov), "typeIII.js-interval-diagram");
    f.add("dn-ones(" + q + ")", set_string({mu, bg, c3, c4, c5}), "typeIII.js-table.conclusion");
}

// Parameters of the conjugate block, from the conjugation map of the type III proof.
inline void type3_conjugation_fixture(FixtureBuilder& f, const std::string& mu)
{
    const Instance& in = f.in;
    Params p = instance_params(BlockType::III, in);
    int e = in.e, s = p.kappa[0] + p.kappa[1];
    int i2 = mod(s - in.i - 1, e);
    auto rep = [&](int x) { return i2 + mod(x - i2, e); };
    // residues r -> s - r; the printed map omits the -2 on j', k', l', m'
    int j2 = rep(s + e - *in.m - 2), k2 = rep(s + e - in.l - 2), l2 = rep(s + e - in.k - 2), m2 = rep(s + e - in.j - 2);
    f.add("conj-params(diamond(" + mu + "))", params_string(i2, j2, k2, l2, m2), "typeIII.conjugation-map");
    f.add("conj-label(diamond(" + mu + "))", to_string(normalize(HookLabel{i2 + 1, i2, 2}, e)),
          "typeIII.conjugation-map");
    f.add("duality(" + mu + ")", "ok", "conjugation-duality");
}

inline void type3_conjugation_target(FixtureBuilder& f, const std::string& mu, int targetCase)
{
    f.add("conj-case(diamond(" + mu + "))", "III-" + std::to_string(targetCase), "typeIII.conjugation-argument");
}

inline void type3_fixture(FixtureBuilder& f, const CaseRow& row)
{
    std::string mu = f.tpl(row.mu);
    int i = f.in.i;
    table_candidates(f, type3_candidates(), type3_cases(), "typeIII");
    std::string tag = "typeIII.diamond-table.case" + std::to_string(row.no);
    f.add("restricted(" + mu + ")", "true", tag);
    f.add("label(diamond(" + mu + "))", f.tpl(row.diamond), tag);
    const auto& surv = type3_survivors();
    bool survives = std::find(surv.begin(), surv.end(), row.no) != surv.end();
    std::string tops = f.ddu(i - 1, i + 1, i) + "," + f.down(i);
    f.add("js-above(diamond(" + mu + ");" + tops + ")", f.b(survives), "typeIII.surviving-cases");
    if (row.no == 4)
        f.add("dom-above(diamond(" + mu + ");" + tops + ")", "true", "typeIII.diamond-table.case4-note");
    if (row.no == 8 || row.no == 10)
        type3_table_fixture(f);
    if (row.no == 5 || row.no == 15) {
        type3_conjugation_fixture(f, mu);
        type3_conjugation_target(f, mu, row.no == 5 ? 10 : 8);
    }
}

inline std::string jn(const std::vector<std::pair<std::string, int>>& v)
{
    std::vector<std::string> s;
    for (const auto& [a, x] : v)
        s.push_back(a + ":" + std::to_string(x));
    return set_string(s);
}

inline void type4_betas(FixtureBuilder& f, const std::string& mu, const std::string& source)
{
    int i = f.in.i;
    std::vector<std::string> be{f.hook(i, i - 1, 1), f.hook(i, i, 1), f.hook(i - 1, i - 1, 2), f.hook(i - 1, i, 2)};
    for (const auto& b : be)
        f.add("dn(" + b + "," + mu + ")", "1", source);
}

inline void type4_fixture(FixtureBuilder& f, const CaseRow& row)
{
    const Instance& in = f.in;
    int e = in.e, i = in.i, j = in.j, k = in.k;
    std::string mu = f.tpl(row.mu);
    table_candidates(f, type4_candidates(), type4_cases(), "typeIV");
    std::string tag = "typeIV.diamond-table.case" + std::to_string(row.no);
    f.add("restricted(" + mu + ")", "true", tag);
    f.add("label(diamond(" + mu + "))", f.tpl(row.diamond), tag);
    const auto& surv = type4_survivors();
    bool survives = std::find(surv.begin(), surv.end(), row.no) != surv.end();
    std::string b1 = f.hook(i, i - 1, 1), b2 = f.hook(i, i, 1), b3 = f.hook(i - 1, i - 1, 2), b4 = f.hook(i - 1, i, 2);
    f.add("js-above(diamond(" + mu + ");" + b4 + ")", f.b(survives), "typeIV.surviving-cases");
    if (row.no == 4)
        f.add("dom-above(diamond(" + mu + ");" + b4 + ")", "true", "typeIV.diamond-table.case4-note");
    f.add("js-chain(" + b4 + "," + b3 + "," + b2 + "," + b1 + ")", "true", "typeIV.tricky.order");
    if (!survives)
        return;

    std::string A = f.hook(i, i + 1, 2), Bc = f.hook(i + 1, i + 1, 1), tau = f.hook(i - 1, i + 1, 2);
    int m = *in.m;
    if (row.no == 11) {
        std::string C = f.ddu(i, i - 1, m);
        std::vector<TableRow> rows;
        rows.push_back({A, {{mu, 1}}, 1, 1});
        for (int x = i + 2; x <= j; ++x)
            rows.push_back({f.hook(i, x, 2), {{mu, (x - i + 1) % 2 ? -1 : 1}, {A, (x - i) % 2 ? -1 : 1}}, 0, 0});
        rows.push_back({f.hook(i, i, 2), {{mu, (j - i) % 2 ? -1 : 1}, {A, (j - i + 1) % 2 ? -1 : 1}}, 0, 0});
        for (int x = j; x >= i + 2; --x)
            rows.push_back({f.hook(x, x, 1), {{mu, 0}, {A, 0}}, 0, 0});
        rows.push_back({Bc, {{mu, 0}, {A, 1}}, 1, 1});
        rows.push_back({C, {{mu, 1}}, 1, 1});
        rows.push_back({f.hook(i - 1, m, 2), {{mu, -1}, {C, 1}}, 0, 0});
        for (int x = e + i - 2; x >= m + 1; --x)
            rows.push_back({f.ddu(i, x, m), {{mu, (e + x - i + 1) % 2 ? -1 : 1}, {C, (e + x - i) % 2 ? -1 : 1}}, 0, 0});
        rows.push_back({f.hook(i, m, 1), {{mu, (e + m - i + 1) % 2 ? -1 : 1}, {C, (e + m - i) % 2 ? -1 : 1}}, 0, 0});
        for (int x = m + 1; x <= e + i - 2; ++x)
            rows.push_back({f.hook(i, x, 1), {{mu, 0}, {C, 0}}, 0, 0});
        rows.push_back({b1, {{mu, 0}, {C, 1}}, 1, 1});
        add_table(f, mu, rows, "typeIV.js-table-324");
        f.add("val(" + b2 + "," + mu + ")", "0", "typeIV.js-table-324");
        f.add("val(" + b2 + "," + A + ")", "0", "typeIV.js-table-324");
        f.add("val(" + b2 + "," + Bc + ")", "1", "typeIV.js-table-324");
        f.add("val(" + b2 + "," + C + ")", "0", "typeIV.js-table-324");
        f.add("val(" + b2 + "," + b1 + ")", "1", "typeIV.js-table-324");
        f.add("J(" + b2 + "," + mu + ")", "2", "typeIV.js-table-324");
        f.add("flag(" + b2 + "," + mu + ")", "clamped", "typeIV.js-table-324");
        f.add("val(" + b3 + "," + Bc + ")", "-1", "typeIV.js-table-324");
        f.add("val(" + b3 + "," + b1 + ")", "1", "typeIV.js-table-324");
        f.add("val(" + b3 + "," + b2 + ")", "1", "typeIV.js-table-324");
        f.add("J(" + b3 + "," + mu + ")", "1", "typeIV.js-table-324 (J = dn(beta2,mu))");
        std::vector<std::string> d{mu, f.hook(i - 1, m, 2), C, b1, b2, b3};
        for (int x = i; x <= j; ++x)
            d.push_back(f.hook(i, x, 2));
        for (int x = i + 1; x <= j; ++x)
            d.push_back(f.hook(x, x, 1));
        for (int x = m + 1; x <= e + i - 2; ++x)
            d.push_back(f.ddu(i, x, m));
        for (int x = m; x <= e + i - 2; ++x)
            d.push_back(f.hook(i, x, 1));
        f.add("interval(" + mu + ";" + b3 + ")", set_string(d), "typeIV.js-interval-324");
        std::vector<std::pair<std::string, std::string>> cov{{C, f.hook(i - 1, m, 2)}, {f.hook(i - 1, m, 2), b3}};
        std::vector<std::string> left{mu};
        for (int x = i + 1; x <= j; ++x)
            left.push_back(f.hook(i, x, 2));
        left.push_back(f.hook(i, i, 2));
        for (int x = j; x >= i + 1; --x)
            left.push_back(f.hook(x, x, 1));
        left.push_back(b2);
        f.chain(cov, left);
        std::vector<std::string> right{mu, C};
        for (int x = e + i - 2; x >= m + 1; --x)
            right.push_back(f.ddu(i, x, m));
        for (int x = m; x <= e + i - 2; ++x)
            right.push_back(f.hook(i, x, 1));
        right.push_back(b1);
        right.push_back(b2);
        right.push_back(b3);
        f.chain(cov, right);
        f.add("covers(" + mu + ";" + b3 + ")", f.covers(cov), "typeIV.js-interval-324-diagram");
        f.add("J-nonzero(" + mu + ";" + b3 + ")", jn({{A, 1}, {Bc, 1}, {C, 1}, {b1, 1}, {b2, 2}, {b3, 1}}),
              "typeIV.js-table-324");
        type4_betas(f, mu, "typeIV.js-table-324.duality-with-iv12");
    } else if (row.no == 5) {
        std::vector<TableRow> rows;
        rows.push_back({A, {{mu, 1}}, 1, 1});
        for (int x = i + 2; x <= k; ++x)
            rows.push_back({f.hook(i, x, 2), {{mu, (x - i + 1) % 2 ? -1 : 1}, {A, (x - i) % 2 ? -1 : 1}}, 0, 0});
        rows.push_back({f.hook(i, i, 2), {{mu, (k - i) % 2 ? -1 : 1}, {A, (k - i + 1) % 2 ? -1 : 1}}, 0, 0});
        for (int x = k; x >= j + 1; --x)
            rows.push_back({f.down(x), {{mu, 0}, {A, 0}}, 0, 0});
        for (int x = j; x >= i + 2; --x)
            rows.push_back({f.hook(x, x, 1), {{mu, 0}, {A, 0}}, 0, 0});
        rows.push_back({Bc, {{mu, 0}, {A, 1}}, 1, 1});
        rows.push_back({b1, {{mu, 1}}, 1, 1});
        add_table(f, mu, rows, "typeIV.js-table-12");
        std::vector<std::string> d{b1, b2, b3, b4, tau};
        for (int x = i - 1; x <= k; ++x)
            d.push_back(f.hook(i, x, 2));
        for (int x = j + 1; x <= k; ++x)
            d.push_back(f.down(x));
        for (int x = i + 1; x <= j; ++x)
            d.push_back(f.hook(x, x, 1));
        f.add("interval(" + mu + ";" + tau + ")", set_string(d), "typeIV.js-interval-12");
        std::vector<std::pair<std::string, std::string>> cov;
        std::vector<std::string> up{mu};
        for (int x = i + 1; x <= k; ++x)
            up.push_back(f.hook(i, x, 2));
        up.push_back(f.hook(i, i, 2));
        for (int x = k; x >= j + 1; --x)
            up.push_back(f.down(x));
        for (int x = j; x >= i + 1; --x)
            up.push_back(f.hook(x, x, 1));
        up.push_back(b2);
        f.chain(cov, up);
        f.chain(cov, {mu, b1, b2, b3, b4, tau});
        f.add("covers(" + mu + ";" + tau + ")", f.covers(cov), "typeIV.js-interval-12-diagram");
        f.add("Jterms(" + tau + "," + mu + ")", jn({{A, -1}, {Bc, 1}, {b3, -1}, {b4, 1}}), "typeIV.tau-row");
        f.add("J(" + tau + "," + mu + ")", "0", "typeIV.tau-row (1 - dn(beta3,mu))");
        type4_betas(f, mu, "typeIV.iv12.conclusion");
    } else if (row.no == 9) {
        std::string C = f.ddu(i, i - 1, m);
        std::string second = i == j ? f.down(i + 1) : Bc;
        f.add("J-nonzero(" + mu + ";" + b3 + ")", jn({{A, 1}, {second, 1}, {C, 1}, {b1, 1}, {b2, 2}, {b3, 1}}),
              "typeIV.iv31.J-values");
        f.add("J(" + tau + "," + mu + ")", "0", "typeIV.iv31.tau-row (1 - dn(beta3,mu))");
        type4_betas(f, mu, "typeIV.iv31.conclusion");
    } else if (row.no == 6) {
        f.add("J-nonzero(" + mu + ";" + b3 + ")", jn({{A, 1}, {Bc, 1}, {b1, 1}, {b2, 2}, {b3, 1}}),
              "typeIV.iv13.J-values");
        std::vector<std::string> d{mu, b1, b2, b3};
        for (int x = i; x <= j; ++x)
            d.push_back(f.hook(i, x, 2));
        for (int x = i + 1; x <= j; ++x)
            d.push_back(f.hook(x, x, 1));
        std::vector<std::pair<std::string, std::string>> cov;
        std::vector<std::string> up{mu};
        for (int x = i + 1; x <= j; ++x)
            up.push_back(f.hook(i, x, 2));
        up.push_back(f.hook(i, i, 2));
        for (int x = j; x >= i + 1; --x)
            up.push_back(f.hook(x, x, 1));
        up.push_back(b2);
        f.chain(cov, up);
        f.chain(cov, {mu, b1, b2, b3});
        f.add("interval(" + mu + ";" + b3 + ")", set_string(d), "typeIV.js-interval-13");
        f.add("covers(" + mu + ";" + b3 + ")", f.covers(cov), "typeIV.js-interval-13-diagram");
        if (j < e + i - 2) {
            std::string t13 = f.hook(i - 2, i, 2), r1 = f.hook(i - 2, i - 1, 2), r2 = f.hook(i - 2, i - 2, 2);
            auto dt = d;
            dt.insert(dt.end(), {r1, r2, b4, t13});
            f.chain(cov, {mu, r1, r2, t13});
            f.chain(cov, {b3, r2});
            f.chain(cov, {b3, b4, t13});
            f.add("interval(" + mu + ";" + t13 + ")", set_string(dt), "typeIV.js-interval-13-extended");
            f.add("covers(" + mu + ";" + t13 + ")", f.covers(cov), "typeIV.js-interval-13-extended-diagram");
            f.add("J(" + t13 + "," + mu + ")", "0", "typeIV.iv13.tau-row (1 - dn(beta3,mu))");
        }
        type4_betas(f, mu, "typeIV.iv13.conclusion");
    }
}

inline void h5_fixture(FixtureBuilder& f)
{
    const std::string src = "typeIV.terminal-block";
    f.add("type", "IV", src);
    f.add("params", "(0,0,0,0,0)", src);
    f.add("members", "8", src + ".eight-specht-modules");
    std::string mu = f.hook(0, 1, 2), b1 = f.hook(0, 1, 1), b2 = f.hook(0, 0, 1), b3 = f.hook(1, 1, 2),
                b4 = f.hook(1, 0, 2);
    f.add("bip(" + mu + ")", "(\xE2\x88\x85|(2,1^3))", src + ".display");
    f.add("bip(" + f.hook(0, 0, 2) + ")", "(\xE2\x88\x85|(4,1))", src + ".display");
    f.add("bip(" + b1 + ")", "((1^2)|(2,1))", src + ".display");
    f.add("bip(" + b2 + ")", "((2)|(2,1))", src + ".display");
    f.add("bip(" + b3 + ")", "((2,1)|(1^2))", src + ".display");
    f.add("bip(" + b4 + ")", "((2,1)|(2))", src + ".display");
    f.add("bip(" + f.hook(1, 1, 1) + ")", "((2,1^3)|\xE2\x88\x85)", src + ".display");
    f.add("bip(diamond(" + mu + "))", "((4,1)|\xE2\x88\x85)", src + ".display");
    f.add("cols", set_string({mu, b1}), src + ".two-simples");
    f.add("rows", "8", src + ".eight-specht-modules");
    for (const auto& b : {b1, b2, b3, b4})
        f.add("dn(" + b + "," + mu + ")", "1", src + ".conclusion");
    f.add("dn(" + mu + "," + mu + ")", "1", src + ".conclusion");
    f.add("dn(" + b1 + "," + b1 + ")", "1", src + ".dimension-argument");
    f.add("dn(" + b2 + "," + b1 + ")", "1", src + ".dimension-argument");
    f.add("max-dn", "1", "main-theorem");
    f.add("js-chain(" + b4 + "," + b3 + "," + b2 + "," + b1 + ")", "true", "typeIV.tricky.order");
    f.add("dom-chain(" + b4 + "," + b3 + "," + b2 + "," + b1 + ")", "true", "typeIV.tricky.order");
}

}  // namespace detail

inline CaseSpec make_case(const std::string& caseId, const Instance& in)
{
    validate_instance(caseId, in);
    detail::FixtureBuilder f{in, {}};
    BlockType t = case_type(caseId);
    if (caseId == "IV-e2-H5") {
        detail::h5_fixture(f);
    } else if (t == BlockType::II) {
        detail::common_fixture(f, t, "typeII");
        detail::type2_fixture(f);
    } else if (t == BlockType::III) {
        detail::common_fixture(f, t, "typeIII");
        detail::type3_fixture(f, case_row(caseId));
    } else {
        detail::common_fixture(f, t, "typeIV");
        detail::type4_fixture(f, case_row(caseId));
    }
    return {caseId, in, std::move(f.out)};
}

inline CaseSpec make_case(const std::string& caseId) { return make_case(caseId, default_instance(caseId)); }

// Every case at its default instance, plus the non-restricted branch k = l of type II.
inline std::vector<CaseSpec> builtin_cases()
{
    std::vector<CaseSpec> out;
    for (const auto& id : case_ids())
        out.push_back(make_case(id));
    out.push_back(make_case("II-main", Instance{5, 0, 1, 3, 3, std::nullopt}));
    return out;
}

// ---- evaluation -----------------------------------------------------------

// Answers fixture queries about one block, computing everything from scratch.
class CaseContext {
public:
    CaseContext(const Params& p, const BlockKey& key) : p_(p), key_(key)
    {
        an_ = analyze_block(key, p);
        members_ = enumerate_block(key, p);
        table_ = ValuationTable(members_, p);
        order_ = js_order_from(table_);
        if (an_.choice)
            for (const auto& m : label_members(an_.choice->nucleus))
                label_of_[m.bip] = to_string(normalize(*m.label, p.e));
    }

    const Params& params() const { return p_; }
    const BlockKey& key() const { return key_; }

    std::string label_of(const Bipartition& b) const
    {
        auto it = label_of_.find(b);
        return it == label_of_.end() ? to_string(b) : it->second;
    }

    Bipartition term(const std::string& s) const
    {
        auto [head, args] = split_call(s);
        if (head == "diamond")
            return mu_diamond(term(args), p_);
        if (head == "conj")
            return conjugate(term(args));
        if (head == "label")
            return term(args);
        if (!an_.choice)
            throw domain_error("labels need a block with a nucleus");
        return realize(an_.choice->nucleus, label_from_template(s, Instance{p_.e, 0, 0, 0, 0, std::nullopt}));
    }

    std::string eval(const std::string& query)
    {
        std::string q = detail::strip_spaces(query);
        auto [head, args] = split_call(q);
        auto groups = detail::split_top(args, ';');
        auto terms = [&](std::size_t g) {
            std::vector<Bipartition> out;
            if (g >= groups.size())
                throw domain_error("query " + q + " is missing arguments");
            for (const auto& t : detail::split_top(groups[g], ','))
                out.push_back(term(t));
            return out;
        };
        if (head == "type")
            return to_string(an_.desc.btype);
        if (head == "params") {
            if (!an_.desc.type_params)
                return an_.desc.nonstandard ? "nonstandard" : "none";
            return params_string(*an_.desc.type_params) + (an_.desc.swapped ? " swapped" : "");
        }
        if (head == "members")
            return std::to_string(members_.size());
        if (head == "exceptional") {
            std::vector<std::string> v;
            for (const auto& m : exceptional_bips(key_, p_))
                v.push_back(label_of(m.bip));
            return set_string(v);
        }
        if (head == "candidates" || head == "restricted-candidates" || head == "dom-candidates")
            return candidates(head == "restricted-candidates", head == "dom-candidates");
        if (head == "restricted")
            return is_restricted(terms(0).at(0), p_).first ? "true" : "false";
        if (head == "bip")
            return to_string(terms(0).at(0));
        if (head == "label")
            return label_of(term(args));
        if (head == "val") {
            auto t = terms(0);
            return std::to_string(table_.val[idx(t.at(0))][idx(t.at(1))]);
        }
        if (head == "J" || head == "dn" || head == "flag") {
            auto t = terms(0);
            const auto& dm = matrix();
            int r = dm.row_index(t.at(0)), c = dm.col_index(t.at(1));
            if (head == "flag")
                return dm.flags[r][c];
            return std::to_string(head == "J" ? dm.jBounds[r][c] : dm.entries[r][c]);
        }
        if (head == "interval" || head == "covers" || head == "dn-ones" || head == "J-nonzero") {
            Bipartition bottom = terms(0).at(0);
            auto in = interval(idx(bottom), terms(1));
            std::vector<std::string> v;
            if (head == "interval") {
                for (int a : in)
                    v.push_back(label_of(members_[a]));
            } else if (head == "covers") {
                std::set<int> s(in.begin(), in.end());
                for (const auto& [hi, lo] : order_.covers)
                    if (s.count(hi) && s.count(lo))
                        v.push_back(label_of(members_[lo]) + "<" + label_of(members_[hi]));
            } else {
                const auto& dm = matrix();
                int c = dm.col_index(bottom);
                for (int a : in) {
                    int r = dm.row_index(members_[a]);
                    if (head == "dn-ones" && dm.entries[r][c] == 1)
                        v.push_back(label_of(members_[a]));
                    if (head == "J-nonzero" && members_[a] != bottom && dm.jBounds[r][c] != 0)
                        v.push_back(label_of(members_[a]) + ":" + std::to_string(dm.jBounds[r][c]));
                }
            }
            return set_string(v);
        }
        if (head == "Jterms") {
            auto t = terms(0);
            const auto& dm = matrix();
            int a = idx(t.at(0)), c = dm.col_index(t.at(1));
            std::vector<std::string> v;
            for (std::size_t b = 0; b < members_.size(); ++b) {
                int val = table_.val[a][b];
                int d = dm.entries[dm.row_index(members_[b])][c];
                if (val != 0 && d != 0)
                    v.push_back(label_of(members_[b]) + ":" + std::to_string(val * d));
            }
            return set_string(v);
        }
        if (head == "js-above" || head == "dom-above") {
            Bipartition a = terms(0).at(0);
            bool ok = true;
            for (const auto& b : terms(1))
                ok = ok && (head == "js-above" ? order_.geq[idx(a)][idx(b)] != 0 : dominates(a, b));
            return ok ? "true" : "false";
        }
        if (head == "js-chain" || head == "dom-chain") {
            auto t = terms(0);
            bool ok = true;
            for (std::size_t s = 0; s + 1 < t.size(); ++s)
                ok = ok && t[s] != t[s + 1] &&
                     (head == "js-chain" ? order_.geq[idx(t[s])][idx(t[s + 1])] != 0 : dominates(t[s], t[s + 1]));
            return ok ? "true" : "false";
        }
        if (head == "cols") {
            std::vector<std::string> v;
            for (const auto& c : matrix().cols)
                v.push_back(label_of(c));
            return set_string(v);
        }
        if (head == "rows")
            return std::to_string(matrix().rows.size());
        if (head == "max-dn") {
            int mx = 0;
            for (const auto& row : matrix().entries)
                for (int x : row)
                    mx = std::max(mx, x);
            return std::to_string(mx);
        }
        if (head == "conj-params" || head == "conj-label") {
            Bipartition c = conjugate(terms(0).at(0));
            BlockKey k2 = block_key(c, p_).first;
            if (head == "conj-params") {
                auto d = classify_type(k2, p_);
                if (!d.type_params)
                    return d.nonstandard ? "nonstandard" : "none";
                return params_string(*d.type_params) + (d.swapped ? " swapped" : "");
            }
            CaseContext other(p_, k2);
            return other.label_of(c);
        }
        if (head == "conj-case") {
            Bipartition c = conjugate(terms(0).at(0));
            CaseContext other(p_, block_key(c, p_).first);
            return other.case_of(c);
        }
        if (head == "duality")
            return duality(terms(0).at(0));
        throw domain_error("unknown query " + q);
    }

    // The case-table row whose mu denotes b and whose condition holds here.
    std::string case_of(const Bipartition& b) const
    {
        const auto& tp = an_.desc.type_params;
        if (!tp || an_.desc.swapped)
            return "none";
        BlockType t = an_.desc.btype;
        if (t != BlockType::III && t != BlockType::IV)
            return "none";
        Instance in{p_.e, tp->i, tp->j, tp->k, tp->l, tp->m};
        std::string want = label_of(b);
        for (const auto& r : t == BlockType::III ? type3_cases() : type4_cases())
            if (detail::holds(r.cond, in) && label_string(r.mu, in) == want)
                return (t == BlockType::III ? "III-" : "IV-") + std::to_string(r.no);
        return "none";
    }

private:
    Params p_;
    BlockKey key_;
    BlockAnalysis an_;
    std::vector<Bipartition> members_;
    ValuationTable table_;
    JsOrder order_;
    std::map<Bipartition, std::string> label_of_;
    std::optional<DecompMatrix> dm_;

    static std::pair<std::string, std::string> split_call(const std::string& s)
    {
        auto open = s.find('(');
        if (open == std::string::npos)
            return {s, ""};
        if (s.back() != ')')
            throw domain_error("unbalanced parentheses in " + s);
        return {s.substr(0, open), s.substr(open + 1, s.size() - open - 2)};
    }

    int idx(const Bipartition& b) const { return order_.index_of(b); }

    const DecompMatrix& matrix()
    {
        if (!dm_)
            dm_ = decomposition_matrix(key_, p_);
        return *dm_;
    }

    // Members between `bottom` and at least one of `tops` in the JS order.
    std::vector<int> interval(int bottom, const std::vector<Bipartition>& tops) const
    {
        std::vector<int> out;
        for (std::size_t a = 0; a < members_.size(); ++a) {
            if (!order_.geq[a][bottom])
                continue;
            bool below = false;
            for (const auto& t : tops)
                below = below || order_.geq[idx(t)][a];
            if (below)
                out.push_back(static_cast<int>(a));
        }
        return out;
    }

    // Members meeting the normal-node and dominance conditions of the block type.
    std::string candidates(bool restrictedOnly, bool ordinary) const
    {
        const auto& tp = an_.desc.type_params;
        if (!tp || an_.desc.swapped)
            throw domain_error("candidate lists need type parameters in the standard orientation");
        int e = p_.e, i = tp->i;
        std::vector<Bipartition> tops;
        std::vector<int> normals(e, 0);
        BlockType t = an_.desc.btype;
        if (t == BlockType::II) {
            tops.push_back(term(to_string(normalize(HookLabel{i, i - 1, 1}, e))));
            normals[i] = 1;
        } else if (t == BlockType::III) {
            tops.push_back(term(to_string(normalize(DownDownUpLabel{i - 1, i + 1, i}, e))));
            tops.push_back(term(to_string(normalize(DownLabel{i}, e))));
            normals[i] = 1;
            normals[mod(i + 1, e)] = 1;
        } else {
            tops.push_back(term(to_string(normalize(HookLabel{i, i - 1, 1}, e))));
            normals[i] = 2;
        }
        std::vector<std::string> v;
        for (std::size_t a = 0; a < members_.size(); ++a) {
            const auto& mu = members_[a];
            bool ok = true;
            for (const auto& top : tops)
                ok = ok && (ordinary ? dominates(top, mu) : order_.geq[idx(top)][a] != 0);
            for (int r = 0; r < e && ok; ++r)
                ok = normal_count(mu, r, p_) == normals[r];
            if (ok && t == BlockType::IV)
                ok = is_e_restricted(mu.comp1, e) && is_e_restricted(mu.comp2, e);
            if (ok && restrictedOnly)
                ok = is_restricted(mu, p_).first;
            if (ok)
                v.push_back(label_of(mu));
        }
        return set_string(v);
    }

    // dn(lambda, mu) = dn(lambda', (mu diamond)') with the conjugate block solved on its own.
    std::string duality(const Bipartition& mu)
    {
        Bipartition target = conjugate(mu_diamond(mu, p_));
        DecompMatrix other = decomposition_matrix(block_key(target, p_).first, p_);
        const auto& dm = matrix();
        int c = dm.col_index(mu), c2 = other.col_index(target);
        for (std::size_t r = 0; r < dm.rows.size(); ++r) {
            int a = dm.entries[r][c], b = other.entries[other.row_index(conjugate(dm.rows[r]))][c2];
            if (a != b)
                return "mismatch at " + label_of(dm.rows[r]) + ": " + std::to_string(a) + " vs " + std::to_string(b);
        }
        return "ok";
    }
};

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
    std::string source;

    bool operator==(const Check&) const = default;
};

struct VerifyReport {
    std::string caseId;
    Instance inst;
    std::vector<Check> checks;
    bool overall = false;

    bool operator==(const VerifyReport&) const = default;
};

inline VerifyReport verify_case(const CaseSpec& spec)
{
    validate_instance(spec.caseId, spec.inst);
    BlockType t = case_type(spec.caseId);
    Params p = instance_params(t, spec.inst);
    CaseContext ctx(p, instance_block(t, spec.inst));
    VerifyReport rep;
    rep.caseId = spec.caseId;
    rep.inst = spec.inst;
    for (const auto& fx : spec.expected) {
        Check c{fx.query, fx.expected, "", false, fx.source};
        if (fx.source.empty()) {
            c.actual = "fixture value has no provenance note";
        } else {
            try {
                c.actual = ctx.eval(fx.query);
                c.pass = c.actual == fx.expected;
            } catch (const std::exception& ex) {
                c.actual = std::string("error: ") + ex.what();
            }
        }
        rep.checks.push_back(std::move(c));
    }
    rep.overall = !rep.checks.empty() &&
                  std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.pass; });
    return rep;
}

}  // namespace bipcomb
