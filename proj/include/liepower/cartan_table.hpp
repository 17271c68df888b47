#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "liepower/fg_abelian.hpp"
#include "liepower/groups.hpp"

namespace liepower {

struct CartanSignature {
    int compact_dim = 0;
    int split_dim = 0;
    int complex_pairs = 0;

    friend bool operator==(const CartanSignature&, const CartanSignature&) = default;

    std::string to_string() const {
        return "(" + std::to_string(compact_dim) + "," + std::to_string(split_dim) + "," +
               std::to_string(complex_pairs) + ")";
    }
};

/// One line of the shipped Cartan class table.
struct CartanTableRecord {
    MatrixParams group;
    std::string name;
    CartanSignature signature;
    FGAbelian component_group;
    CMatrix seed;
    int line = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

/// "a" or "a/b" with integer a, b.
inline double parse_rational(const std::string& s, int line) {
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = static_cast<double>(std::stoll(s, &used));
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        const long long a = std::stoll(num, &used);
        if (used != num.size()) throw std::invalid_argument(s);
        const long long b = std::stoll(den, &used);
        if (used != den.size() || b == 0) throw std::invalid_argument(s);
        return static_cast<double>(a) / static_cast<double>(b);
    } catch (const std::logic_error&) {
        throw ParseError(static_cast<std::size_t>(line), "cartan table line " + std::to_string(line) +
                                                             ": bad rational '" + s + "'");
    }
}

/// "re" or "re:im".
inline cplx parse_entry(const std::string& s, int line) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return {parse_rational(s, line), 0.0};
    return {parse_rational(s.substr(0, colon), line), parse_rational(s.substr(colon + 1), line)};
}

}  // namespace detail

/// Record format, one per line, '#' starts a comment:
///   descriptor | class name | compact split complex | component group | row ; row ; ...
inline std::vector<CartanTableRecord> parse_cartan_table(const std::string& text) {
    std::vector<CartanTableRecord> out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string body = detail::trim(raw.substr(0, raw.find('#')));
        if (body.empty()) continue;
        const auto fields = detail::split(body, '|');
        auto fail = [&](const std::string& what) {
            throw ParseError(static_cast<std::size_t>(line),
                             "cartan table line " + std::to_string(line) + ": " + what);
        };
        if (fields.size() != 5) fail("expected 5 fields");
        CartanTableRecord r;
        r.line = line;
        const GroupDescriptor d = parse_descriptor(fields[0]);
        if (d.kind != GroupDescriptor::Kind::Matrix) fail("descriptor must be a matrix group");
        r.group = d.matrix;
        r.name = fields[1];
        std::istringstream sig(fields[2]);
        if (!(sig >> r.signature.compact_dim >> r.signature.split_dim >> r.signature.complex_pairs))
            fail("bad signature");
        r.component_group = parse_fg_abelian(fields[3]);
        const auto rows = detail::split(fields[4], ';');
        const int n = r.group.matrix_size();
        if (static_cast<int>(rows.size()) != n) fail("seed has wrong number of rows");
        r.seed = CMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            std::istringstream rs(rows[static_cast<std::size_t>(i)]);
            std::string tok;
            int j = 0;
            while (rs >> tok) {
                if (j >= n) fail("seed row too long");
                r.seed(i, j++) = detail::parse_entry(tok, line);
            }
            if (j != n) fail("seed row too short");
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace liepower
