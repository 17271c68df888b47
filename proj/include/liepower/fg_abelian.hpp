#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "liepower/errors.hpp"

namespace liepower {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

namespace detail {

/// Diagonal of the Smith normal form of an integer matrix (rows = relations).
/// Returns min(rows, cols) entries, non-negative, each dividing the next nonzero one.
inline std::vector<std::int64_t> smith_diagonal(IntMatrix a, std::size_t cols) {
    const std::size_t rows = a.size();
    for (auto& r : a)
        if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged relation matrix");
    const std::size_t steps = std::min(rows, cols);
    auto abs64 = [](std::int64_t v) { return v < 0 ? -v : v; };
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pr == rows || abs64(a[i][j]) < abs64(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) return [&] {
                std::vector<std::int64_t> d(steps, 0);
                for (std::size_t i = 0; i < t; ++i) d[i] = abs64(a[i][i]);
                return d;
            }();
            std::swap(a[t], a[pr]);
            for (auto& r : a) std::swap(r[t], r[pc]);
            bool clean = true;
            const std::int64_t p = a[t][t];
            for (std::size_t i = t + 1; i < rows; ++i) {
                const std::int64_t q = a[i][t] / p;
                if (q != 0)
                    for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                const std::int64_t q = a[t][j] / p;
                if (q != 0)
                    for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility: fold any offending row into the pivot row and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % p != 0) {
                        for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
    std::vector<std::int64_t> d(steps);
    for (std::size_t i = 0; i < steps; ++i) d[i] = abs64(a[i][i]);
    return d;
}

}  // namespace detail

/// Finitely generated abelian group Z^r + Z/n_1 + ... + Z/n_m in invariant-factor form
/// (n_i >= 2, n_i | n_{i+1}). Elements are coordinate vectors: free coordinates first.
class FGAbelian {
public:
    FGAbelian() = default;

    /// Canonicalizes through the Smith normal form; `torsion` may be any list of orders.
    FGAbelian(int free_rank, std::vector<std::int64_t> orders) {
        if (free_rank < 0) throw Error(ErrorKind::InvalidArgument, "negative free rank");
        IntMatrix rel;
        const std::size_t gens = orders.size();
        for (std::size_t i = 0; i < gens; ++i) {
            if (orders[i] < 0) throw Error(ErrorKind::InvalidArgument, "negative cyclic order");
            std::vector<std::int64_t> row(gens, 0);
            row[i] = orders[i];
            rel.push_back(row);
        }
        *this = from_presentation(static_cast<std::size_t>(free_rank) + gens, [&] {
            IntMatrix full;
            for (auto& r : rel) {
                std::vector<std::int64_t> row(static_cast<std::size_t>(free_rank), 0);
                row.insert(row.end(), r.begin(), r.end());
                full.push_back(row);
            }
            return full;
        }());
    }

    /// Z^generators / (row span of relations).
    static FGAbelian from_presentation(std::size_t generators, const IntMatrix& relations) {
        const auto diag = detail::smith_diagonal(relations, generators);
        FGAbelian g;
        std::size_t nonzero = 0;
        for (auto d : diag) {
            if (d != 0) ++nonzero;
            if (d > 1) g.torsion_.push_back(d);
        }
        g.free_rank_ = static_cast<int>(generators - nonzero);
        return g;
    }

    /// Z/n; n = 0 gives Z, n = 1 the trivial group.
    static FGAbelian cyclic(std::int64_t n) { return n == 0 ? FGAbelian(1, {}) : FGAbelian(0, {n}); }

    static FGAbelian trivial() { return FGAbelian(); }

    int free_rank() const { return free_rank_; }
    const std::vector<std::int64_t>& torsion() const { return torsion_; }
    std::size_t coordinate_count() const { return static_cast<std::size_t>(free_rank_) + torsion_.size(); }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }

    std::optional<std::int64_t> order() const {
        if (!is_finite()) return std::nullopt;
        std::int64_t o = 1;
        for (auto n : torsion_) o *= n;
        return o;
    }

    FGAbelian direct_sum(const FGAbelian& other) const {
        std::vector<std::int64_t> t = torsion_;
        t.insert(t.end(), other.torsion_.begin(), other.torsion_.end());
        return FGAbelian(free_rank_ + other.free_rank_, t);
    }

    /// Quotient by the subgroup generated by `generators` (element coordinates).
    FGAbelian quotient(const std::vector<std::vector<std::int64_t>>& generators) const {
        IntMatrix rel;
        const std::size_t m = coordinate_count();
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            std::vector<std::int64_t> row(m, 0);
            row[static_cast<std::size_t>(free_rank_) + i] = torsion_[i];
            rel.push_back(row);
        }
        for (const auto& g : generators) {
            check_element(g);
            rel.push_back(g);
        }
        return from_presentation(m, rel);
    }

    /// Reduces torsion coordinates into [0, n_i).
    std::vector<std::int64_t> normalize(std::vector<std::int64_t> x) const {
        check_element(x);
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            auto& c = x[static_cast<std::size_t>(free_rank_) + i];
            c %= torsion_[i];
            if (c < 0) c += torsion_[i];
        }
        return x;
    }

    std::vector<std::int64_t> multiply(std::int64_t k, std::vector<std::int64_t> x) const {
        for (auto& c : x) c *= k;
        return normalize(std::move(x));
    }

    /// All elements of a finite group in lexicographic order.
    std::vector<std::vector<std::int64_t>> elements() const {
        if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "cannot enumerate an infinite group");
        std::vector<std::vector<std::int64_t>> out;
        std::vector<std::int64_t> x(torsion_.size(), 0);
        for (;;) {
            out.push_back(x);
            std::size_t i = x.size();
            while (i > 0) {
                --i;
                if (++x[i] < torsion_[i]) break;
                x[i] = 0;
                if (i == 0) return out;
            }
            if (x.empty()) return out;
        }
    }

    void check_element(const std::vector<std::int64_t>& x) const {
        if (x.size() != coordinate_count())
            throw Error(ErrorKind::DimensionMismatch, "element has " + std::to_string(x.size()) +
                                                          " coordinates, group has " +
                                                          std::to_string(coordinate_count()));
    }

    /// "1", "Z", "Z/2", "Z^2 x Z/2 x Z/4".
    std::string to_string() const {
        if (is_trivial()) return "1";
        std::string s;
        if (free_rank_ == 1) s = "Z";
        else if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
        for (auto n : torsion_) {
            if (!s.empty()) s += " x ";
            s += "Z/" + std::to_string(n);
        }
        return s;
    }

    friend bool operator==(const FGAbelian& a, const FGAbelian& b) {
        return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
    }

private:
    int free_rank_ = 0;
    std::vector<std::int64_t> torsion_;
};

/// Inverse of FGAbelian::to_string.
inline FGAbelian parse_fg_abelian(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s == "1" || s.empty()) return FGAbelian::trivial();
    int free = 0;
    std::vector<std::int64_t> tors;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('x', pos);
        if (end == std::string::npos) end = s.size();
        const std::string tok = s.substr(pos, end - pos);
        if (tok == "Z") {
            free += 1;
        } else if (tok.rfind("Z^", 0) == 0) {
            free += std::stoi(tok.substr(2));
        } else if (tok.rfind("Z/", 0) == 0) {
            tors.push_back(std::stoll(tok.substr(2)));
        } else {
            throw ParseError(pos, "bad abelian group factor '" + tok + "'");
        }
        pos = end + 1;
    }
    return FGAbelian(free, tors);
}

}  // namespace liepower
