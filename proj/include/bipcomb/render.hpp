#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "cases.hpp"
#include "js.hpp"

namespace bipcomb {

// Columns in a terminal: one per code point (the empty-set sign is three bytes).
inline std::size_t display_width(const std::string& s)
{
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80)
            ++w;
    return w;
}

struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const
    {
        std::vector<std::size_t> width(header.size(), 0);
        auto widen = [&](const std::vector<std::string>& r) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (c >= width.size())
                    width.resize(c + 1, 0);
                width[c] = std::max(width[c], display_width(r[c]));
            }
        };
        widen(header);
        for (const auto& r : rows)
            widen(r);
        std::ostringstream os;
        auto line = [&](const std::vector<std::string>& r) {
            std::string out;
            for (std::size_t c = 0; c < r.size(); ++c) {
                out += r[c];
                if (c + 1 < r.size())
                    out += std::string(width[c] - display_width(r[c]) + 2, ' ');
            }
            os << out << "\n";
        };
        if (!header.empty()) {
            line(header);
            std::vector<std::string> rule;
            for (std::size_t c = 0; c < header.size(); ++c)
                rule.push_back(std::string(width[c], '-'));
            line(rule);
        }
        for (const auto& r : rows)
            line(r);
        return os.str();
    }
};

inline std::string render_pairs(const std::vector<std::pair<std::string, std::string>>& kv)
{
    TextTable t;
    for (const auto& [k, v] : kv)
        t.rows.push_back({k + ":", v});
    return t.str();
}

// Labels of the member families when the block has a nucleus, else nothing.
inline std::map<Bipartition, std::string> member_labels(const BlockKey& key, const Params& p)
{
    std::map<Bipartition, std::string> out;
    auto an = analyze_block(key, p);
    if (an.choice)
        for (const auto& m : label_members(an.choice->nucleus))
            if (m.label)
                out[m.bip] = to_string(normalize(*m.label, p.e));
    return out;
}

// Rows top to bottom in canonical order (most dominant first), one column per
// restricted mu. A clamped entry (J >= 2) carries a star.
inline std::string render_matrix(const DecompMatrix& m, const std::map<Bipartition, std::string>& labels = {},
                                 bool showJ = false)
{
    auto name = [&](const Bipartition& b) {
        auto it = labels.find(b);
        return it == labels.end() ? to_string(b) : it->second;
    };
    TextTable t;
    t.header.push_back("");
    if (!labels.empty())
        t.header.push_back("");
    for (const auto& c : m.cols)
        t.header.push_back(name(c));
    bool anyClamp = false;
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        std::vector<std::string> row{to_string(m.rows[r])};
        if (!labels.empty()) {
            auto it = labels.find(m.rows[r]);
            row.push_back(it == labels.end() ? "" : it->second);
        }
        for (std::size_t c = 0; c < m.cols.size(); ++c) {
            std::string cell = std::to_string(showJ ? m.jBounds[r][c] : m.entries[r][c]);
            if (m.flags[r][c] == "clamped") {
                cell += "*";
                anyClamp = true;
            }
            row.push_back(cell);
        }
        t.rows.push_back(std::move(row));
    }
    std::string out = t.str();
    if (anyClamp)
        out += "* J >= 2, entry clamped to 1\n";
    for (const auto& w : m.warnings)
        out += "warning: " + w + "\n";
    return out;
}

inline std::string render_report(const VerifyReport& r)
{
    TextTable t;
    t.header = {"check", "expected", "actual", "", "source"};
    for (const auto& c : r.checks)
        t.rows.push_back({c.name, c.expected, c.actual, c.pass ? "ok" : "FAIL", c.source});
    std::size_t passed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
    return r.caseId + " " + to_string(r.inst) + "\n" + t.str() + (r.overall ? "PASS " : "FAIL ") + r.caseId + " " +
           std::to_string(passed) + "/" + std::to_string(r.checks.size()) + "\n";
}

}  // namespace bipcomb
