#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liepower/report.hpp"

namespace liepower {

struct CaseRow {
    std::string label;
    SimpleCaseDescriptor descriptor;
};

struct CaseTable {
    std::vector<CaseRow> rows;
    std::vector<std::string> notes;  // cases skipped for lack of n
};

inline bool case_needs_n(CaseTag t) { return t == CaseTag::Case2a || t == CaseTag::Case2b || t == CaseTag::Case5; }

inline std::vector<CaseRow> case_rows(CaseTag tag, std::optional<std::int64_t> n) {
    if (case_needs_n(tag) && !n) throw Error(ErrorKind::InvalidCase, "case " + to_string(tag) + " requires --n");
    std::vector<CaseRow> out;
    auto add = [&](const std::string& label, SimpleCaseDescriptor d) {
        d.validate();
        out.push_back({label, std::move(d)});
    };
    switch (tag) {
        case CaseTag::Case1:
            for (const char* l : {"A_n I (n≥2)", "B_n I", "E_6^6 I", "E_8^8 VIII", "F_4^4 I", "G_2^2 I", "C_n II",
                                  "E_7^{-5} VI", "E_8^{-24} IX", "F_4^{-22} II"})
                add(l, case_descriptor(CaseTag::Case1));
            break;
        case CaseTag::Case2a:
            for (const char* l : {"E_7^{-25} VII", "A_1 I"}) add(l, case_descriptor(CaseTag::Case2a, n));
            break;
        case CaseTag::Case2b:
            for (const char* l : {"A_1 I", "C_n I (n≥3)", "D_n III (n≥4 even)"})
                add(l, case_descriptor(CaseTag::Case2b, n));
            break;
        case CaseTag::Case3:
            add("E_6^2 II", case_descriptor(CaseTag::Case3));
            break;
        case CaseTag::Case4: {
            add("D_n I (n≥4 odd)", case_descriptor(CaseTag::Case4));
            SimpleCaseDescriptor even = case_descriptor(CaseTag::Case4);
            even.fundamental_group = FGAbelian::cyclic(8);
            add("D_n I (n≥4 even)", even);
            break;
        }
        case CaseTag::Case5:
            if (*n < 1) throw Error(ErrorKind::InvalidCase, "case 5: requires n >= 1");
            add("split, F nontrivial", split_case_descriptor(FGAbelian::cyclic(0), {{*n}}, 1));
            add("split, F trivial", split_case_descriptor(FGAbelian::cyclic(0), {{*n}}, 0));
            break;
    }
    return out;
}

/// `which` is a case tag or "all"; with "all", cases needing n are skipped (with a note) when n is absent.
inline CaseTable case_table(const std::string& which, std::optional<std::int64_t> n) {
    CaseTable t;
    if (which != "all") {
        t.rows = case_rows(parse_case_tag(which), n);
        return t;
    }
    for (CaseTag tag : {CaseTag::Case1, CaseTag::Case2a, CaseTag::Case2b, CaseTag::Case3, CaseTag::Case4,
                        CaseTag::Case5}) {
        if (case_needs_n(tag) && !n) {
            t.notes.push_back("case " + to_string(tag) + " skipped: needs --n");
            continue;
        }
        for (auto& r : case_rows(tag, n)) t.rows.push_back(std::move(r));
    }
    return t;
}

inline std::string render_case_table_human(const CaseTable& t, const std::vector<std::int64_t>& ks) {
    // labels contain multibyte characters; pad by code points
    auto width_of = [](const std::string& s) {
        std::size_t cps = 0;
        for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
        return cps;
    };
    auto pad = [&](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, width_of(s)), ' '); };
    std::size_t label_w = 5;
    for (const auto& r : t.rows) label_w = std::max(label_w, width_of(r.label));
    constexpr std::size_t cell_w = 10;
    std::ostringstream o;
    o << pad("case", 6) << pad("label", label_w + 2);
    for (auto k : ks) o << pad("k=" + std::to_string(k), cell_w);
    o << "\n";
    for (const auto& r : t.rows) {
        o << pad(to_string(r.descriptor.tag), 6) << pad(r.label, label_w + 2);
        for (auto k : ks) o << pad(to_string(simple_case_verdict(r.descriptor, k).status), cell_w);
        o << "\n";
    }
    for (const auto& n : t.notes) o << n << "\n";
    return o.str();
}

inline std::string render_case_table_machine(const CaseTable& t, const std::vector<std::int64_t>& ks) {
    std::string out = "schema=1\n";
    for (const auto& r : t.rows)
        for (auto k : ks) {
            const auto v = simple_case_verdict(r.descriptor, k);
            std::map<std::string, std::string> f{{"case", to_string(r.descriptor.tag)},
                                                 {"k", std::to_string(k)},
                                                 {"label", r.label},
                                                 {"reason", v.reason},
                                                 {"record", "case"},
                                                 {"rule", v.rule},
                                                 {"status", to_string(v.status)},
                                                 {"witness", v.witness ? v.witness->summary() : ""}};
            if (r.descriptor.n) f["n"] = std::to_string(*r.descriptor.n);
            out += detail::record(f);
        }
    for (const auto& n : t.notes) out += detail::record({{"note", n}, {"record", "note"}});
    return out;
}

}  // namespace liepower
