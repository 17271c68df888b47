#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "liepower/roots.hpp"

namespace liepower {

struct VerdictRow {
    std::int64_t k = 0;
    std::string status;
    std::string rule;
    std::string witness;
    std::string reason;

    friend bool operator==(const VerdictRow&, const VerdictRow&) = default;
};

struct ClassRow {
    std::string name;
    std::string signature;
    std::string component_group;

    friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

struct MonteCarloRow {
    int k = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double rootless = 0.0;
    double found = 0.0;
    double inconclusive = 0.0;
    bool consistent = true;

    friend bool operator==(const MonteCarloRow&, const MonteCarloRow&) = default;
};

struct AnalysisReport {
    std::string group;
    std::vector<std::int64_t> k_range;
    std::vector<VerdictRow> verdicts;
    std::vector<ClassRow> cartan_classes;
    bool weak_exponential = false;
    std::vector<MonteCarloRow> monte_carlo;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

struct AnalyzeOptions {
    bool verify = false;
    int samples = 1000;
    std::uint64_t seed = 1;
};

inline AnalysisReport analyze(const GroupDescriptor& g, const std::vector<std::int64_t>& ks, const AnalyzeOptions& opts = {}) {
    AnalysisReport r;
    r.group = render(g);
    r.k_range = ks;
    for (auto k : ks) {
        const DensityVerdict v = density_verdict(g, k);
        r.verdicts.push_back({k, to_string(v.status), v.rule, v.witness ? v.witness->summary() : "", v.reason});
    }
    for (const auto& s : component_summaries(levi_reduce(g)))
        r.cartan_classes.push_back({s.name, s.signature.to_string(), s.component_group.to_string()});
    r.weak_exponential = weakly_exponential(g).value;
    if (opts.verify) {
        if (g.kind == GroupDescriptor::Kind::Cover)
            throw Error(ErrorKind::NoMatrixModel, r.group + " is symbolic; --verify needs a matrix model");
        const MatrixGroup G = matrix_group(levi_reduce(g).matrix);
        for (auto k : ks) {
            const auto mc = monte_carlo_density(G, static_cast<int>(k), opts.samples, opts.seed);
            const auto status = density_verdict(g, k).status;
            r.monte_carlo.push_back({static_cast<int>(k), opts.samples, opts.seed, mc.certified_rootless_fraction,
                                     mc.root_found_fraction, mc.inconclusive_fraction,
                                     monte_carlo_consistent(status, mc)});
        }
    }
    return r;
}

inline bool monte_carlo_consistent(const AnalysisReport& r) {
    for (const auto& m : r.monte_carlo)
        if (!m.consistent) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Machine format: "schema=1", then one record per line of space-separated key=value
// pairs with sorted keys. Values percent-encode '%', '=', space and line breaks.

namespace detail {

inline std::string encode(const std::string& v) {
    std::string out;
    for (unsigned char c : v) {
        if (c == '%' || c == '=' || c == ' ' || c == '\n' || c == '\r' || c == '\t') {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%%%02X", c);
            out += buf;
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

inline std::string decode(const std::string& v, std::size_t line) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != '%') {
            out += v[i];
            continue;
        }
        if (i + 2 >= v.size()) throw ParseError(line, "truncated escape");
        out += static_cast<char>(std::stoi(v.substr(i + 1, 2), nullptr, 16));
        i += 2;
    }
    return out;
}

inline std::string shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, std::size_t line) {
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError(line, "bad number '" + s + "'");
    return x;
}

inline std::string record(const std::map<std::string, std::string>& fields) {
    std::string line;
    for (const auto& [k, v] : fields) {
        if (!line.empty()) line += ' ';
        line += k + "=" + encode(v);
    }
    return line + "\n";
}

inline std::string join_ints(const std::vector<std::int64_t>& ks) {
    std::string s;
    for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + std::to_string(ks[i]);
    return s;
}

}  // namespace detail

inline std::string render_machine(const AnalysisReport& r) {
    using detail::record;
    std::string out = "schema=1\n";
    out += record({{"group", r.group},
                   {"k_range", detail::join_ints(r.k_range)},
                   {"record", "report"},
                   {"weak_exponential", r.weak_exponential ? "true" : "false"}});
    for (const auto& c : r.cartan_classes)
        out += record({{"class", c.name}, {"component_group", c.component_group}, {"group", r.group},
                       {"record", "cartan"}, {"signature", c.signature}});
    for (const auto& v : r.verdicts)
        out += record({{"group", r.group}, {"k", std::to_string(v.k)}, {"reason", v.reason}, {"record", "verdict"},
                       {"rule", v.rule}, {"status", v.status}, {"witness", v.witness}});
    for (const auto& m : r.monte_carlo)
        out += record({{"consistent", m.consistent ? "true" : "false"},
                       {"group", r.group},
                       {"inconclusive_fraction", detail::shortest(m.inconclusive)},
                       {"k", std::to_string(m.k)},
                       {"record", "montecarlo"},
                       {"root_found_fraction", detail::shortest(m.found)},
                       {"rootless_fraction", detail::shortest(m.rootless)},
                       {"samples", std::to_string(m.samples)},
                       {"seed", std::to_string(m.seed)}});
    return out;
}

inline AnalysisReport parse_machine(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    AnalysisReport r;
    bool header = false, report = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!header) {
            if (line != "schema=1") throw ParseError(lineno, "expected schema=1 header");
            header = true;
            continue;
        }
        std::map<std::string, std::string> f;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, "field without '='");
            f[tok.substr(0, eq)] = detail::decode(tok.substr(eq + 1), lineno);
        }
        auto get = [&](const std::string& key) {
            auto it = f.find(key);
            if (it == f.end()) throw ParseError(lineno, "missing field '" + key + "'");
            return it->second;
        };
        const std::string kind = get("record");
        if (kind == "report") {
            r.group = get("group");
            r.weak_exponential = get("weak_exponential") == "true";
            r.k_range.clear();
            std::istringstream ks(get("k_range"));
            std::string k;
            while (std::getline(ks, k, ','))
                if (!k.empty()) r.k_range.push_back(std::stoll(k));
            report = true;
        } else if (kind == "cartan") {
            r.cartan_classes.push_back({get("class"), get("signature"), get("component_group")});
        } else if (kind == "verdict") {
            r.verdicts.push_back({std::stoll(get("k")), get("status"), get("rule"), get("witness"), get("reason")});
        } else if (kind == "montecarlo") {
            r.monte_carlo.push_back({std::stoi(get("k")), std::stoi(get("samples")),
                                     static_cast<std::uint64_t>(std::stoull(get("seed"))),
                                     detail::parse_double(get("rootless_fraction"), lineno),
                                     detail::parse_double(get("root_found_fraction"), lineno),
                                     detail::parse_double(get("inconclusive_fraction"), lineno),
                                     get("consistent") == "true"});
        } else {
            throw ParseError(lineno, "unknown record '" + kind + "'");
        }
    }
    if (!header || !report) throw ParseError(lineno, "missing schema header or report record");
    return r;
}

inline std::string render_human(const AnalysisReport& r) {
    std::ostringstream o;
    o << "group: " << r.group << "\n";
    o << "weakly exponential: " << (r.weak_exponential ? "yes" : "no") << "\n";
    o << "Cartan classes:\n";
    if (r.cartan_classes.empty()) o << "  (no component data; verdicts come from the case rules)\n";
    for (const auto& c : r.cartan_classes)
        o << "  " << c.name << "  signature " << c.signature << "  C/C* = " << c.component_group << "\n";
    o << "verdicts:\n";
    for (const auto& v : r.verdicts) {
        o << "  k=" << v.k << "  " << v.status << "  [" << v.rule << "]";
        if (!v.witness.empty()) o << "  witness: " << v.witness;
        if (!v.reason.empty()) o << "  reason: " << v.reason;
        o << "\n";
    }
    if (!r.monte_carlo.empty()) {
        o << "monte carlo:\n";
        for (const auto& m : r.monte_carlo)
            o << "  k=" << m.k << "  samples=" << m.samples << "  seed=" << m.seed << "  rootless=" << m.rootless
              << "  roots=" << m.found << "  inconclusive=" << m.inconclusive
              << (m.consistent ? "  consistent" : "  INCONSISTENT") << "\n";
    }
    return o.str();
}

}  // namespace liepower
