#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "liepower/cartan_table.hpp"
#include "liepower/cartan_table_data.hpp"
#include "liepower/regularity.hpp"

namespace liepower {

/// One conjugacy class of Cartan subgroups C = Z_G(c) of a matrix group.
///
/// All computations happen in an eigenframe of a generic element of c: every element of C
/// is diagonal there, the 2-torsion of C is diag(+-1), and a component of C is named by the
/// signs of the eigenvalues that are real on all of C.
struct CartanClass {
    enum class Source { Computed, CatalogTable };

    std::string name;
    std::string group_name;
    Source source = Source::Computed;
    CMatrix seed;

    RMatrix coordinates;  // columns: algebra coordinates of an orthonormal basis of c
    std::vector<CMatrix> subalgebra_basis;

    bool completed = false;
    CartanSignature signature;
    FGAbelian component_group;
    std::vector<CMatrix> component_reps;  // component_reps[0] lies in C*
    std::vector<std::vector<int>> component_signs;

    CMatrix frame, frame_inv;
    std::vector<int> real_characters;
    CMatrix generic;  // generic element of c used for the frame

    int dimension() const { return static_cast<int>(subalgebra_basis.size()); }

    /// Sign vector of c on the real characters; empty optional-like result if c is not
    /// diagonal in the frame.
    bool signs_of(const CMatrix& c, std::vector<int>& signs) const {
        const CMatrix d = frame_inv * c * frame;
        const double scale = std::max(1.0, max_abs(d));
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            for (Eigen::Index j = 0; j < d.cols(); ++j)
                if (i != j && std::abs(d(i, j)) > 1e-7 * scale) return false;
        signs.clear();
        for (int j : real_characters) {
            const cplx z = d(j, j);
            if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) return false;
            signs.push_back(z.real() > 0 ? 1 : -1);
        }
        return true;
    }

    /// Index into component_reps of the component containing c, or -1.
    int component_of(const CMatrix& c) const {
        std::vector<int> s;
        if (!signs_of(c, s)) return -1;
        for (std::size_t i = 0; i < component_signs.size(); ++i)
            if (component_signs[i] == s) return static_cast<int>(i);
        return -1;
    }

    /// Label of the product of two components (sign vectors multiply).
    int multiply_labels(int a, int b) const {
        std::vector<int> s(real_characters.size());
        for (std::size_t j = 0; j < s.size(); ++j)
            s[j] = component_signs[static_cast<std::size_t>(a)][j] * component_signs[static_cast<std::size_t>(b)][j];
        for (std::size_t i = 0; i < component_signs.size(); ++i)
            if (component_signs[i] == s) return static_cast<int>(i);
        throw Error(ErrorKind::InternalConsistency, "component labels are not closed under multiplication");
    }
};

inline std::string to_string(CartanClass::Source s) {
    return s == CartanClass::Source::Computed ? "Computed" : "CatalogTable";
}

/// The Cartan subalgebra through a regular element: the nilspace of Ad_g - 1.
inline CartanClass cartan_subalgebra_from_regular(const CMatrix& g, const MatrixGroup& G) {
    const RMatrix ad = G.algebra.Ad_matrix(g).matrix;
    const double scale = Eigen::JacobiSVD<RMatrix>(ad).singularValues()(0);
    const Nilspace ns = nilspace(ad - RMatrix::Identity(ad.rows(), ad.cols()), global_tolerance(), scale);
    if (ns.dimension != G.rank)
        throw Error(ErrorKind::NotRegular, "nilspace of Ad_g - 1 has dimension " + std::to_string(ns.dimension) +
                                               ", rank is " + std::to_string(G.rank));
    CartanClass c;
    c.group_name = G.name;
    c.seed = g;
    c.coordinates = ns.basis;
    for (Eigen::Index j = 0; j < ns.basis.cols(); ++j) c.subalgebra_basis.push_back(G.algebra.to_matrix(ns.basis.col(j)));
    double worst = 0.0;
    for (std::size_t a = 0; a < c.subalgebra_basis.size(); ++a)
        for (std::size_t b = a + 1; b < c.subalgebra_basis.size(); ++b)
            worst = std::max(worst, max_abs(CMatrix(c.subalgebra_basis[a] * c.subalgebra_basis[b] -
                                                    c.subalgebra_basis[b] * c.subalgebra_basis[a])));
    if (worst > 1e-7)
        throw Error(ErrorKind::NonAbelianNilspace,
                    "brackets inside the nilspace reach " + std::to_string(worst));
    return c;
}

inline CartanClass cartan_subalgebra_from_regular(const GroupElement& g) {
    return cartan_subalgebra_from_regular(g.matrix, *g.group);
}

namespace detail {

inline constexpr std::uint64_t kCartanFrameSeed = 0xca27a;

/// Bitmask of coordinates with odd entries.
inline unsigned parity_mask(const std::vector<int>& m) {
    unsigned mask = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j] % 2 != 0) mask |= 1u << j;
    return mask;
}

/// Span over F2 of a set of bitmasks, as a reduced basis keyed by leading bit.
struct F2Span {
    std::map<int, unsigned> pivots;

    unsigned reduce(unsigned v) const {
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it)
            if (v >> it->first & 1u) v ^= it->second;
        return v;
    }
    bool insert(unsigned v) {
        v = reduce(v);
        if (v == 0) return false;
        int top = 31;
        while (!(v >> top & 1u)) --top;
        for (auto& [bit, w] : pivots)
            if (w >> top & 1u) w ^= v;
        pivots[top] = v;
        return true;
    }
    bool contains(unsigned v) const { return reduce(v) == 0; }
    int dimension() const { return static_cast<int>(pivots.size()); }
};

inline CMatrix sign_matrix(const CartanClass& c, unsigned mask) {
    const Eigen::Index n = c.frame.rows();
    CVector d(n);
    for (Eigen::Index j = 0; j < n; ++j) d(j) = (mask >> j & 1u) ? -1.0 : 1.0;
    CMatrix g = c.frame * d.asDiagonal() * c.frame_inv;
    return g;
}

}  // namespace detail

/// Completes a class: C = Z_G(c), its 2-torsion, the component group C/C* and one
/// representative per component.
inline CartanClass centralizer_components(CartanClass c, const MatrixGroup& G) {
    const int r = c.dimension();
    const int n = G.n;
    if (r == 0) throw Error(ErrorKind::InvalidArgument, "empty Cartan subalgebra");

    std::mt19937_64 rng(detail::kCartanFrameSeed);
    std::normal_distribution<double> normal;
    RVector w(r);
    for (int b = 0; b < r; ++b) w(b) = normal(rng);
    CMatrix x = CMatrix::Zero(n, n);
    for (int b = 0; b < r; ++b) x += w(b) * c.subalgebra_basis[static_cast<std::size_t>(b)];
    x /= std::max(max_abs(x), 1e-300);
    c.generic = x;

    Eigen::ComplexEigenSolver<CMatrix> es(x);
    const CVector lam = es.eigenvalues();
    const double spread = std::max(1.0, lam.cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(lam(i) - lam(j)) < 1e-6 * spread)
                throw Error(ErrorKind::UnsupportedShape,
                            "generic Cartan element has a repeated eigenvalue; Z_G(c) has a block of size >= 2");
    c.frame = es.eigenvectors();
    c.frame_inv = c.frame.inverse();

    // Eigenvalue functionals lambda_j on c, as rows of an n x r complex matrix.
    CMatrix A(n, r);
    for (int b = 0; b < r; ++b) {
        const CMatrix d = c.frame_inv * c.subalgebra_basis[static_cast<std::size_t>(b)] * c.frame;
        const double off = max_abs(d - CMatrix(d.diagonal().asDiagonal()));
        if (off > 1e-7 * std::max(1.0, max_abs(d)))
            throw Error(ErrorKind::NonAbelianNilspace, "Cartan basis is not simultaneously diagonalizable");
        A.col(b) = d.diagonal();
    }
    const RMatrix re = A.real(), im = A.imag();
    const double a_scale = A.cwiseAbs().maxCoeff();
    const RMatrix compact = null_space(re, 1e-9, a_scale);  // elliptic part t
    const RMatrix split = null_space(im, 1e-9, a_scale);    // hyperbolic part a

    c.real_characters.clear();
    for (int j = 0; j < n; ++j)
        if (im.row(j).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, A.cwiseAbs().maxCoeff())) c.real_characters.push_back(j);

    c.signature.compact_dim = static_cast<int>(compact.cols());
    c.signature.split_dim = static_cast<int>(split.cols());
    c.signature.complex_pairs = 0;
    {
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        const double tol = 1e-9 * std::max(1.0, A.cwiseAbs().maxCoeff());
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            if (re.row(i).cwiseAbs().maxCoeff() < tol || im.row(i).cwiseAbs().maxCoeff() < tol) continue;
            for (int j = i + 1; j < n; ++j)
                if (!used[static_cast<std::size_t>(j)] && max_abs(A.row(i).conjugate() - A.row(j)) < tol) {
                    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
                    ++c.signature.complex_pairs;
                    break;
                }
        }
    }

    // 2-torsion of C: frame-diagonal sign matrices that satisfy the group constraints.
    std::vector<unsigned> two_torsion;
    detail::F2Span s_span;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const CMatrix g = detail::sign_matrix(c, mask);
        if (membership_residual(g, G) < kMembershipTol) {
            two_torsion.push_back(mask);
            s_span.insert(mask);
        }
    }
    if (two_torsion.empty() || two_torsion.front() != 0u)
        throw Error(ErrorKind::InternalConsistency, "identity fails the membership test");

    // 2-torsion of C*: exp(X) with X in t and lambda(X) in i*pi*Z^n. Lattice points of the
    // column space of Im(lambda)|_t / pi in a small box; their parities span C*[2].
    detail::F2Span s0_span;
    if (compact.cols() > 0) {
        const RMatrix M = im * compact / std::numbers::pi;
        Eigen::JacobiSVD<RMatrix> svd(M, Eigen::ComputeThinU);
        const RVector sv = svd.singularValues();
        Eigen::Index rk = 0;
        while (rk < sv.size() && sv(rk) > 1e-9 * std::max(1.0, sv(0))) ++rk;
        const RMatrix Q = svd.matrixU().leftCols(rk);
        const int box = 3;
        std::vector<int> m(static_cast<std::size_t>(n), -box);
        for (;;) {
            RVector v(n);
            for (int j = 0; j < n; ++j) v(j) = m[static_cast<std::size_t>(j)];
            if ((v - Q * (Q.transpose() * v)).norm() < 1e-7) s0_span.insert(detail::parity_mask(m));
            int j = 0;
            while (j < n && ++m[static_cast<std::size_t>(j)] > box) m[static_cast<std::size_t>(j++)] = -box;
            if (j == n) break;
        }
    }
    for (const auto& [bit, v] : s0_span.pivots)
        if (!s_span.contains(v) || membership_residual(detail::sign_matrix(c, v), G) >= kMembershipTol)
            throw Error(ErrorKind::InternalConsistency, "torsion of the identity component is not in the group");

    // Components are cosets of C*[2] in C[2]; the sign vector on real characters must
    // separate exactly those cosets.
    std::map<std::vector<int>, unsigned> by_signs;
    for (unsigned mask : two_torsion) {
        std::vector<int> s;
        if (!c.signs_of(detail::sign_matrix(c, mask), s))
            throw Error(ErrorKind::InternalConsistency, "sign matrix is not diagonal in its own frame");
        const bool trivial_signs = std::all_of(s.begin(), s.end(), [](int v) { return v > 0; });
        if (trivial_signs != s0_span.contains(mask))
            throw Error(ErrorKind::UnsupportedShape,
                        "real-character signs do not separate the components of " + G.name);
        by_signs.emplace(s, mask);
    }
    const int comp_dim = s_span.dimension() - s0_span.dimension();
    if (static_cast<std::size_t>(1) << comp_dim != by_signs.size())
        throw Error(ErrorKind::InternalConsistency, "component count disagrees with the 2-torsion quotient");
    c.component_group = FGAbelian(0, std::vector<std::int64_t>(static_cast<std::size_t>(comp_dim), 2));

    const CMatrix drift = matrix_exp(CMatrix(0.3 * x));
    c.component_reps.clear();
    c.component_signs.clear();
    std::vector<std::pair<std::vector<int>, unsigned>> ordered(by_signs.begin(), by_signs.end());
    // Identity component first, then by sign vector.
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        const int na = static_cast<int>(std::count(a.first.begin(), a.first.end(), -1));
        const int nb = static_cast<int>(std::count(b.first.begin(), b.first.end(), -1));
        return na < nb;
    });
    for (const auto& [signs, mask] : ordered) {
        CMatrix rep = detail::sign_matrix(c, mask) * drift;
        if (G.real_entries) rep = CMatrix(rep.real().cast<cplx>());
        c.component_reps.push_back(rep);
        c.component_signs.push_back(signs);
    }
    c.completed = true;
    return c;
}

/// Component labels hit by P_k on C; the union-of-components property is self-checked on
/// sampled elements of every component.
struct PkImage {
    std::set<int> labels;
    bool is_union_of_components = true;
    int samples_checked = 0;
};

inline PkImage pk_image_components(const CartanClass& c, int k, int samples = 200, std::uint64_t seed = 7) {
    if (!c.completed) throw Error(ErrorKind::InvalidArgument, "Cartan class is not completed");
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
    if (!c.component_group.is_finite())
        throw Error(ErrorKind::InvalidArgument, "component group must be finite");
    const int count = static_cast<int>(c.component_reps.size());
    // Multiplication by k on an elementary abelian 2-group.
    std::vector<int> image_of(static_cast<std::size_t>(count));
    PkImage out;
    for (int a = 0; a < count; ++a) {
        int p = 0;
        for (int i = 0; i < k; ++i) p = c.multiply_labels(p, a);
        image_of[static_cast<std::size_t>(a)] = p;
        out.labels.insert(p);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.25);
    const Eigen::Index n = c.frame.rows();
    for (int s = 0; s < samples; ++s) {
        const int a = s % count;
        CMatrix x = CMatrix::Zero(n, n);
        for (const auto& b : c.subalgebra_basis) x += normal(rng) * b;
        const CMatrix elem = c.component_reps[static_cast<std::size_t>(a)] * matrix_exp(x);
        const int label = c.component_of(matrix_power(elem, k));
        ++out.samples_checked;
        if (label < 0 || label != image_of[static_cast<std::size_t>(a)] || !out.labels.count(label)) {
            out.is_union_of_components = false;
            throw Error(ErrorKind::InternalConsistency,
                        "k-th power of a sample of component " + std::to_string(a) + " landed in " +
                            (label < 0 ? std::string("no labeled component") : "component " + std::to_string(label)) +
                            " (k=" + std::to_string(k) + ", class " + c.name + ")");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

inline const std::vector<CartanTableRecord>& cartan_table() {
    static const std::vector<CartanTableRecord> table = parse_cartan_table(kCartanTableText);
    return table;
}

/// exp of a block-diagonal traceless matrix with m rotation-scaling blocks.
inline CMatrix slnr_seed(int n, int m) {
    static const double a[] = {0.31, -0.23};
    static const double b[] = {0.71, 1.13};
    static const double d[] = {0.47, -0.39, 0.83, -0.61};
    RMatrix x = RMatrix::Zero(n, n);
    int pos = 0;
    for (int i = 0; i < m; ++i, pos += 2) {
        x(pos, pos) = x(pos + 1, pos + 1) = a[i];
        x(pos, pos + 1) = -b[i];
        x(pos + 1, pos) = b[i];
    }
    for (int j = 0; pos < n; ++pos, ++j) x(pos, pos) = d[j];
    x(n - 1, n - 1) -= x.trace();
    return matrix_exp(x).cast<cplx>();
}

inline CMatrix slnc_seed(int n) {
    static const cplx z[] = {{0.41, 0.29}, {-0.17, 0.83}, {0.23, -0.52}};
    CMatrix x = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) x(j, j) = z[j];
    x(n - 1, n - 1) -= x.trace();
    return matrix_exp(x);
}

/// Seed for signature (q,p) from one for (p,q): the first p coordinates of the stored
/// frame become the last ones. The form changes sign, which preserves the group.
inline CMatrix swap_signature(const CMatrix& g, int p) {
    const int n = static_cast<int>(g.rows());
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = g((i + p) % n, (j + p) % n);
    return out;
}

struct Seed {
    std::string name;
    CMatrix matrix;
    CartanClass::Source source;
    const CartanTableRecord* record = nullptr;
};

inline std::vector<Seed> catalog_seeds(const MatrixParams& m) {
    std::vector<Seed> out;
    switch (m.family) {
        case Family::SLR:
            for (int k = 0; 2 * k <= m.n; ++k)
                out.push_back({"m=" + std::to_string(k), slnr_seed(m.n, k), CartanClass::Source::Computed});
            return out;
        case Family::SLC:
            out.push_back({"diagonal", slnc_seed(m.n), CartanClass::Source::Computed});
            return out;
        default:
            break;
    }
    MatrixParams key = m;
    const bool swapped = (m.family == Family::SU || m.family == Family::SOPlus) && m.p < m.q;
    if (swapped) std::swap(key.p, key.q);
    for (const auto& r : cartan_table())
        if (r.group == key)
            out.push_back({r.name, swapped ? swap_signature(r.seed, key.p) : r.seed,
                           CartanClass::Source::CatalogTable, &r});
    if (out.empty()) throw Error(ErrorKind::UnsupportedFamily, "no Cartan table entries for " + render(m));
    return out;
}

}  // namespace detail

/// Builds a completed class from a regular seed element.
inline CartanClass cartan_class_from_seed(const CMatrix& seed, const MatrixGroup& G, const std::string& name,
                                          CartanClass::Source source = CartanClass::Source::Computed) {
    if (membership_residual(seed, G) >= kMembershipTol)
        throw Error(ErrorKind::InternalConsistency, "Cartan seed '" + name + "' is not in " + G.name);
    CartanClass c = cartan_subalgebra_from_regular(seed, G);
    c.name = name;
    c.source = source;
    return centralizer_components(std::move(c), G);
}

/// One class per conjugacy class. Groups with explicit seeds (full-rank subgroups) use them.
inline std::vector<CartanClass> enumerate_cartan_classes(const MatrixGroup& G) {
    if (G.cartan_seeds.empty())
        throw Error(ErrorKind::UnsupportedFamily, G.name + " carries no Cartan seeds");
    std::vector<CartanClass> out;
    for (const auto& [name, seed] : G.cartan_seeds) out.push_back(cartan_class_from_seed(seed, G, name));
    return out;
}

inline std::vector<CartanClass> enumerate_cartan_classes(const MatrixParams& m, const MatrixGroup& G) {
    std::vector<CartanClass> out;
    for (const auto& s : detail::catalog_seeds(m)) {
        CartanClass c = cartan_class_from_seed(s.matrix, G, s.name, s.source);
        if (s.record) {
            if (!(c.signature == s.record->signature) || !(c.component_group == s.record->component_group))
                throw Error(ErrorKind::InternalConsistency,
                            "Cartan table line " + std::to_string(s.record->line) + " (" + render(m) + " " + s.name +
                                ") stores " + s.record->signature.to_string() + " / " +
                                s.record->component_group.to_string() + ", computed " + c.signature.to_string() +
                                " / " + c.component_group.to_string());
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<CartanClass> enumerate_cartan_classes(const GroupDescriptor& d) {
    if (d.kind != GroupDescriptor::Kind::Matrix)
        throw Error(ErrorKind::NoMatrixModel, render(d) + " has no matrix model to enumerate Cartan classes in");
    return enumerate_cartan_classes(d.matrix, matrix_group(d.matrix));
}

}  // namespace liepower
