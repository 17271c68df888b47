#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "liepower/fg_abelian.hpp"
#include "liepower/liealg.hpp"

namespace liepower {

enum class Family { SLR, SLC, SU, SOPlus, SpR };

/// A classical matrix group: n for SL/Sp (matrix size), (p, q) for SU/SO+.
struct MatrixParams {
    Family family = Family::SLR;
    int n = 2;
    int p = 0;
    int q = 0;

    int matrix_size() const { return (family == Family::SU || family == Family::SOPlus) ? p + q : n; }

    friend bool operator==(const MatrixParams& a, const MatrixParams& b) {
        if (a.family != b.family) return false;
        if (a.family == Family::SU || a.family == Family::SOPlus) return a.p == b.p && a.q == b.q;
        return a.n == b.n;
    }
};

/// Base groups a symbolic cover may be built on.
enum class CoverBase {
    PSL2R,   // universal cover has infinite cyclic center
    SLnR,    // n >= 3: adjoint group with finite fundamental group
};

/// Concrete group: a catalog matrix group, a symbolic cover/quotient of a simple
/// adjoint group, or a semisimple matrix group extended by a vector-group radical.
struct GroupDescriptor {
    enum class Kind { Matrix, Cover, Extension };

    Kind kind = Kind::Matrix;
    MatrixParams matrix;  // Matrix, and the semisimple part of Extension

    // Cover data
    CoverBase cover_base = CoverBase::PSL2R;
    int cover_n = 2;                    // matrix size of the base algebra
    FGAbelian fundamental_group;        // of the adjoint base group
    std::vector<std::vector<std::int64_t>> kernel_generators;  // D inside the fundamental group
    bool is_quotient = false;           // rendered as quotient(universal(..), m)
    std::int64_t quotient_m = 0;

    int radical_dim = 0;  // Extension

    bool has_matrix_model() const { return kind == Kind::Matrix; }

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::Matrix: return a.matrix == b.matrix;
            case Kind::Extension: return a.matrix == b.matrix && a.radical_dim == b.radical_dim;
            case Kind::Cover:
                return a.cover_base == b.cover_base && a.cover_n == b.cover_n &&
                       a.fundamental_group == b.fundamental_group && a.is_quotient == b.is_quotient &&
                       a.quotient_m == b.quotient_m;
        }
        return false;
    }
};

inline std::string render(const MatrixParams& m) {
    switch (m.family) {
        case Family::SLR: return "SL(" + std::to_string(m.n) + ",R)";
        case Family::SLC: return "SL(" + std::to_string(m.n) + ",C)";
        case Family::SU: return "SU(" + std::to_string(m.p) + "," + std::to_string(m.q) + ")";
        case Family::SOPlus: return "SO+(" + std::to_string(m.p) + "," + std::to_string(m.q) + ")";
        case Family::SpR: return "Sp(" + std::to_string(m.n) + ",R)";
    }
    return "?";
}

inline std::string render(const GroupDescriptor& g) {
    switch (g.kind) {
        case GroupDescriptor::Kind::Matrix: return render(g.matrix);
        case GroupDescriptor::Kind::Extension:
            return "extension(" + render(g.matrix) + ", " + std::to_string(g.radical_dim) + ")";
        case GroupDescriptor::Kind::Cover: {
            const std::string base =
                g.cover_base == CoverBase::PSL2R ? "PSL(2,R)" : "SL(" + std::to_string(g.cover_n) + ",R)";
            if (g.is_quotient) return "quotient(universal(" + base + "), " + std::to_string(g.quotient_m) + ")";
            return "universal(" + base + ")";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Catalog

inline void check_catalog(const MatrixParams& m) {
    auto fail = [&] { throw Error(ErrorKind::UnsupportedFamily, render(m) + " is outside the catalog"); };
    switch (m.family) {
        case Family::SLR:
            if (m.n < 2 || m.n > 4) fail();
            break;
        case Family::SLC:
            if (m.n < 2 || m.n > 3) fail();
            break;
        case Family::SU:
            if (m.p < 0 || m.q < 0 || m.p + m.q < 2 || m.p + m.q > 3) fail();
            break;
        case Family::SOPlus:
            if (m.p < 0 || m.q < 0 || m.p + m.q < 2 || m.p + m.q > 5) fail();
            break;
        case Family::SpR:
            if (m.n != 2) fail();
            break;
    }
}

inline GroupDescriptor matrix_descriptor(MatrixParams m) {
    check_catalog(m);
    GroupDescriptor g;
    g.kind = GroupDescriptor::Kind::Matrix;
    g.matrix = m;
    return g;
}

inline GroupDescriptor universal_cover_psl2() {
    GroupDescriptor g;
    g.kind = GroupDescriptor::Kind::Cover;
    g.cover_base = CoverBase::PSL2R;
    g.cover_n = 2;
    g.fundamental_group = FGAbelian::cyclic(0);
    return g;
}

/// universal(PSL(2,R)) modulo the subgroup m*Z of its infinite cyclic center.
inline GroupDescriptor psl2_quotient(std::int64_t m) {
    if (m < 1) throw Error(ErrorKind::UnsupportedGroup, "quotient generator must be a positive integer");
    GroupDescriptor g = universal_cover_psl2();
    g.is_quotient = true;
    g.quotient_m = m;
    g.kernel_generators = {{m}};
    return g;
}

inline GroupDescriptor universal_cover_slnr(int n) {
    if (n < 3 || n > 4) throw Error(ErrorKind::UnsupportedGroup, "universal(SL(n,R)) supported for n = 3, 4");
    GroupDescriptor g;
    g.kind = GroupDescriptor::Kind::Cover;
    g.cover_base = CoverBase::SLnR;
    g.cover_n = n;
    // Fundamental group of the adjoint group PSL(n,R)^0.
    g.fundamental_group = n == 3 ? FGAbelian(0, {2}) : FGAbelian(0, {2, 2});
    return g;
}

/// Every descriptor the tool accepts, in a fixed order.
inline std::vector<GroupDescriptor> catalog() {
    std::vector<GroupDescriptor> out;
    for (int n = 2; n <= 4; ++n) out.push_back(matrix_descriptor({Family::SLR, n, 0, 0}));
    for (int n = 2; n <= 3; ++n) out.push_back(matrix_descriptor({Family::SLC, n, 0, 0}));
    for (int s = 2; s <= 3; ++s)
        for (int p = s; p >= 0; --p) out.push_back(matrix_descriptor({Family::SU, 0, p, s - p}));
    for (int s = 2; s <= 5; ++s)
        for (int p = s; p >= 0; --p) out.push_back(matrix_descriptor({Family::SOPlus, 0, p, s - p}));
    out.push_back(matrix_descriptor({Family::SpR, 2, 0, 0}));
    out.push_back(universal_cover_psl2());
    out.push_back(universal_cover_slnr(3));
    out.push_back(universal_cover_slnr(4));
    for (std::int64_t m : {1, 2, 3, 4, 6}) out.push_back(psl2_quotient(m));
    return out;
}

/// Matrix descriptors of the catalog with p >= q (one per isomorphism type of signature).
inline std::vector<GroupDescriptor> matrix_catalog() {
    std::vector<GroupDescriptor> out;
    for (const auto& g : catalog())
        if (g.kind == GroupDescriptor::Kind::Matrix && g.matrix.p >= g.matrix.q) out.push_back(g);
    return out;
}

// ---------------------------------------------------------------------------
// Grammar

namespace detail {

class DescriptorParser {
public:
    explicit DescriptorParser(const std::string& text) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
            s_ += text[i];
            origin_.push_back(i);
        }
        origin_.push_back(text.size());
    }

    GroupDescriptor parse() {
        GroupDescriptor g = descriptor(/*inside_universal=*/false);
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(origin_[std::min(pos_, s_.size())], what); }

    bool accept(const std::string& lit) {
        if (s_.compare(pos_, lit.size(), lit) == 0) {
            pos_ += lit.size();
            return true;
        }
        return false;
    }

    void expect(const std::string& lit) {
        if (!accept(lit)) fail("expected '" + lit + "'");
    }

    std::int64_t integer() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        if (pos_ - start > 9) fail("integer too large");
        return std::stoll(s_.substr(start, pos_ - start));
    }

    int small_int() { return static_cast<int>(integer()); }

    /// Parses a family expression; PSL is only meaningful as the base of a cover.
    GroupDescriptor descriptor(bool inside_universal) {
        const std::size_t start = pos_;
        if (accept("universal(")) {
            GroupDescriptor g = cover_of(descriptor(true), start);
            expect(")");
            return g;
        }
        if (accept("quotient(")) {
            const std::size_t inner = pos_;
            if (!accept("universal(")) fail("quotient expects universal(<desc>) as first argument");
            GroupDescriptor base = cover_of(descriptor(true), inner);
            expect(")");
            expect(",");
            const std::int64_t m = integer();
            expect(")");
            if (base.cover_base != CoverBase::PSL2R)
                throw Error(ErrorKind::UnsupportedGroup,
                            "quotient(...) needs an infinite cyclic fundamental group; base has finite pi_1");
            return psl2_quotient(m);
        }
        if (accept("extension(")) {
            GroupDescriptor semisimple = descriptor(false);
            if (semisimple.kind != GroupDescriptor::Kind::Matrix)
                throw Error(ErrorKind::UnsupportedGroup, "extension(...) needs a matrix group as semisimple part");
            expect(",");
            const int d = small_int();
            expect(")");
            GroupDescriptor g = semisimple;
            g.kind = GroupDescriptor::Kind::Extension;
            g.radical_dim = d;
            return g;
        }
        if (accept("PSL(")) {
            const int n = small_int();
            expect(",R)");
            if (!inside_universal || n != 2)
                throw Error(ErrorKind::UnsupportedFamily, "PSL(" + std::to_string(n) + ",R) is only supported as universal(PSL(2,R))");
            GroupDescriptor g;
            g.kind = GroupDescriptor::Kind::Cover;
            g.cover_base = CoverBase::PSL2R;
            g.cover_n = 2;
            return g;  // marker; cover_of() builds the real descriptor
        }
        MatrixParams m;
        if (accept("SL(")) {
            m.n = small_int();
            expect(",");
            if (accept("R")) m.family = Family::SLR;
            else if (accept("C")) m.family = Family::SLC;
            else fail("expected R or C");
            expect(")");
        } else if (accept("SU(")) {
            m.family = Family::SU;
            m.p = small_int();
            expect(",");
            m.q = small_int();
            expect(")");
        } else if (accept("SO+(")) {
            m.family = Family::SOPlus;
            m.p = small_int();
            expect(",");
            m.q = small_int();
            expect(")");
        } else if (accept("Sp(")) {
            m.family = Family::SpR;
            m.n = small_int();
            expect(",R)");
        } else {
            std::size_t end = pos_;
            while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
            if (end > pos_ && end < s_.size() && s_[end] == '(')
                throw Error(ErrorKind::UnsupportedFamily, "family '" + s_.substr(pos_, end - pos_) + "' is not supported");
            fail("expected a group descriptor");
        }
        if (inside_universal) {
            GroupDescriptor g;
            g.kind = GroupDescriptor::Kind::Matrix;
            g.matrix = m;  // validated by cover_of
            return g;
        }
        return matrix_descriptor(m);
    }

    /// Covers exist for groups whose algebra is sl(2,R) (all share PSL(2,R) as adjoint
    /// group) and for SL(3,R), SL(4,R).
    static GroupDescriptor cover_of(const GroupDescriptor& base, std::size_t) {
        if (base.kind == GroupDescriptor::Kind::Cover && base.cover_base == CoverBase::PSL2R)
            return universal_cover_psl2();
        if (base.kind == GroupDescriptor::Kind::Matrix) {
            const MatrixParams& m = base.matrix;
            const bool sl2_type = (m.family == Family::SLR && m.n == 2) || (m.family == Family::SpR && m.n == 2) ||
                                  (m.family == Family::SU && m.p == 1 && m.q == 1) ||
                                  (m.family == Family::SOPlus && ((m.p == 2 && m.q == 1) || (m.p == 1 && m.q == 2)));
            if (sl2_type) return universal_cover_psl2();
            if (m.family == Family::SLR && (m.n == 3 || m.n == 4)) return universal_cover_slnr(m.n);
        }
        throw Error(ErrorKind::UnsupportedGroup, "universal cover of " + render(base.matrix) + " is not supported");
    }

    std::string s_;
    std::vector<std::size_t> origin_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar: SL(n,R) | SL(n,C) | SU(p,q) | SO+(p,q) | Sp(2n,R) | universal(<desc>)
///        | quotient(universal(<desc>), m) | extension(<desc>, d); whitespace-insensitive.
inline GroupDescriptor parse_descriptor(const std::string& text) { return detail::DescriptorParser(text).parse(); }

// ---------------------------------------------------------------------------
// Matrix models

/// Defining form preserved by the group: g^T J g = J (bilinear) or g^* J g = J (hermitian).
struct FormSpec {
    enum class Type { None, Bilinear, Hermitian };
    Type type = Type::None;
    CMatrix J;
};

/// A connected matrix group realized concretely: defining constraints, Lie algebra, rank.
/// Catalog groups and the shipped full-rank subgroups are both expressed this way.
struct MatrixGroup {
    std::string name;
    int n = 0;
    bool real_entries = true;
    FormSpec form;
    /// Entries allowed to be nonzero (block subgroups); empty means unrestricted.
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> support;
    /// Selects the identity component among solutions of the algebraic constraints.
    std::function<bool(const CMatrix&)> identity_component;
    LieAlgebraBasis algebra;
    int rank = 0;
    /// Explicit regular seeds, one per Cartan class; empty for catalog groups.
    std::vector<std::pair<std::string, CMatrix>> cartan_seeds;
};

/// Largest violation of the algebraic constraints (det, reality, form, support).
inline double constraint_residual(const CMatrix& g, const MatrixGroup& G) {
    if (g.rows() != G.n || g.cols() != G.n) throw Error(ErrorKind::DimensionMismatch, "element size");
    double r = std::abs(g.determinant() - cplx(1.0, 0.0));
    if (G.real_entries) r = std::max(r, g.imag().cwiseAbs().maxCoeff());
    if (G.form.type == FormSpec::Type::Bilinear)
        r = std::max(r, max_abs(g.transpose() * G.form.J * g - G.form.J));
    else if (G.form.type == FormSpec::Type::Hermitian)
        r = std::max(r, max_abs(g.adjoint() * G.form.J * g - G.form.J));
    if (G.support.size() > 0)
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j)
                if (!G.support(i, j)) r = std::max(r, std::abs(g(i, j)));
    return r;
}

/// 0 for members; otherwise the largest constraint violation (1 if only the component is wrong).
inline double membership_residual(const CMatrix& g, const MatrixGroup& G) {
    double r = constraint_residual(g, G);
    if (r < kMembershipTol && G.identity_component && !G.identity_component(g)) r = std::max(r, 1.0);
    return r;
}

namespace detail {

inline CMatrix unit(int n, int i, int j) {
    CMatrix m = CMatrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

inline std::vector<CMatrix> sl_real_basis(int n) {
    std::vector<CMatrix> b;
    for (int i = 0; i + 1 < n; ++i) b.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) b.push_back(unit(n, i, j));
    return b;
}

inline CMatrix signature_form(int p, int q) {
    CMatrix J = CMatrix::Zero(p + q, p + q);
    for (int i = 0; i < p + q; ++i) J(i, i) = i < p ? 1.0 : -1.0;
    return J;
}

inline std::vector<CMatrix> su_basis(int p, int q) {
    const int n = p + q;
    const cplx I(0.0, 1.0);
    std::vector<CMatrix> b;
    for (int i = 0; i + 1 < n; ++i) b.push_back(I * (unit(n, i, i) - unit(n, i + 1, i + 1)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool same = (i < p) == (j < p);
            if (same) {
                b.push_back(unit(n, i, j) - unit(n, j, i));
                b.push_back(I * (unit(n, i, j) + unit(n, j, i)));
            } else {
                b.push_back(unit(n, i, j) + unit(n, j, i));
                b.push_back(I * (unit(n, i, j) - unit(n, j, i)));
            }
        }
    return b;
}

inline std::vector<CMatrix> so_basis(int p, int q) {
    const int n = p + q;
    std::vector<CMatrix> b;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool same = (i < p) == (j < p);
            b.push_back(same ? CMatrix(unit(n, i, j) - unit(n, j, i)) : CMatrix(unit(n, i, j) + unit(n, j, i)));
        }
    return b;
}

}  // namespace detail

/// Leading p x p and trailing q x q blocks both have positive determinant.
inline bool so_plus_component(const CMatrix& g, int p, int q) {
    if (p == 0 || q == 0) return true;
    const double a = g.topLeftCorner(p, p).real().determinant();
    const double d = g.bottomRightCorner(q, q).real().determinant();
    return a > 0.0 && d > 0.0;
}

inline constexpr int kRankTrials = 5;
inline constexpr std::uint64_t kRankSeed = 0x5eed;

inline MatrixGroup matrix_group(const MatrixParams& m) {
    check_catalog(m);
    MatrixGroup G;
    G.name = render(m);
    G.n = m.matrix_size();
    const cplx I(0.0, 1.0);
    switch (m.family) {
        case Family::SLR:
            G.algebra = LieAlgebraBasis(detail::sl_real_basis(m.n));
            break;
        case Family::SLC: {
            auto b = detail::sl_real_basis(m.n);
            const std::size_t half = b.size();
            for (std::size_t i = 0; i < half; ++i) b.push_back(I * b[i]);
            G.real_entries = false;
            G.algebra = LieAlgebraBasis(std::move(b));
            break;
        }
        case Family::SU:
            G.real_entries = false;
            G.form = {FormSpec::Type::Hermitian, detail::signature_form(m.p, m.q)};
            G.algebra = LieAlgebraBasis(detail::su_basis(m.p, m.q));
            break;
        case Family::SOPlus: {
            G.form = {FormSpec::Type::Bilinear, detail::signature_form(m.p, m.q)};
            G.algebra = LieAlgebraBasis(detail::so_basis(m.p, m.q));
            const int p = m.p, q = m.q;
            G.identity_component = [p, q](const CMatrix& g) { return so_plus_component(g, p, q); };
            break;
        }
        case Family::SpR: {
            CMatrix omega = CMatrix::Zero(2, 2);
            omega(0, 1) = 1.0;
            omega(1, 0) = -1.0;
            G.form = {FormSpec::Type::Bilinear, omega};
            G.algebra = LieAlgebraBasis(detail::sl_real_basis(2));
            break;
        }
    }
    G.rank = algebra_rank(G.algebra, kRankTrials, kRankSeed);
    return G;
}

inline MatrixGroup matrix_group(const GroupDescriptor& g) {
    if (g.kind == GroupDescriptor::Kind::Cover)
        throw Error(ErrorKind::NoMatrixModel, render(g) + " is symbolic and has no matrix model");
    return matrix_group(g.matrix);
}

/// An element together with the group it belongs to.
struct GroupElement {
    CMatrix matrix;
    std::shared_ptr<const MatrixGroup> group;
};

/// exp(X1) exp(X2) with X1, X2 independent Gaussian algebra elements; a single exponential
/// would only reach exp(g).
inline CMatrix sample_matrix(const MatrixGroup& G, std::uint64_t seed, double sigma = 1.0) {
    std::mt19937_64 rng(seed);
    const RVector x1 = G.algebra.random_element(rng, sigma);
    const RVector x2 = G.algebra.random_element(rng, sigma);
    CMatrix g = matrix_exp(G.algebra.to_matrix(x1)) * matrix_exp(G.algebra.to_matrix(x2));
    if (G.real_entries) g = CMatrix(g.real().cast<cplx>());
    return g;
}

inline GroupElement sample_element(const GroupDescriptor& d, std::uint64_t seed) {
    if (d.kind != GroupDescriptor::Kind::Matrix)
        throw Error(ErrorKind::NoMatrixModel, render(d) + " has no matrix model to sample from");
    auto G = std::make_shared<const MatrixGroup>(matrix_group(d));
    return {sample_matrix(*G, seed), G};
}

inline GroupElement sample_element(std::shared_ptr<const MatrixGroup> G, std::uint64_t seed) {
    CMatrix m = sample_matrix(*G, seed);
    return {std::move(m), std::move(G)};
}

}  // namespace liepower
