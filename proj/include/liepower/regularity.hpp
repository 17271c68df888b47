#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "liepower/groups.hpp"

namespace liepower {

struct RegularityReport {
    int nilspace_dim = 0;
    int rank = 0;
    bool is_regular = false;
    std::vector<cplx> eigenvalues_of_Ad;
};

inline std::vector<cplx> eigenvalues(const RMatrix& m) {
    Eigen::EigenSolver<RMatrix> es(m, /*computeEigenvectors=*/false);
    std::vector<cplx> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

/// g is regular when the nilspace of Ad_g - 1 has the minimal possible dimension,
/// which is the rank of the algebra.
inline RegularityReport is_regular(const CMatrix& g, const MatrixGroup& G) {
    const RMatrix ad = G.algebra.Ad_matrix(g).matrix;
    RegularityReport rep;
    rep.rank = G.rank;
    const double scale = ad.size() ? Eigen::JacobiSVD<RMatrix>(ad).singularValues()(0) : 0.0;
    const double cutoff = global_tolerance() * scale;
    if (cutoff > kMaxRegularityCutoff) {
        // A large Ad_g coarsens the relative cutoff; refuse if it would swallow an O(1) direction.
        const RVector sv = Eigen::JacobiSVD<RMatrix>(ad - RMatrix::Identity(ad.rows(), ad.cols())).singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) <= cutoff && sv(i) >= kMaxRegularityCutoff)
                throw Error(ErrorKind::IllConditioned, "Ad_g has norm " + std::to_string(scale) +
                                                           "; eigenvalue 1 cannot be resolved at the current tolerance");
    }
    rep.nilspace_dim = nilspace(ad - RMatrix::Identity(ad.rows(), ad.cols()), global_tolerance(), scale).dimension;
    rep.is_regular = rep.nilspace_dim == rep.rank;
    rep.eigenvalues_of_Ad = eigenvalues(ad);
    return rep;
}

inline RegularityReport is_regular(const GroupElement& g) { return is_regular(g.matrix, *g.group); }

/// dP_k is nonsingular at g iff no eigenvalue a != 1 of Ad_g has a^k = 1.
/// Eigenvalues within 1e-8 of a nontrivial k-th root of unity that do not match it to
/// 1e-12 raise BoundaryAmbiguity instead of guessing.
inline bool is_pk_regular(const std::vector<cplx>& ad_eigenvalues, int k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
    if (k == 1) return true;
    bool regular = true;
    for (const cplx& a : ad_eigenvalues) {
        if (std::abs(a - 1.0) < kUnitRootWindow) continue;
        // Nearest nontrivial k-th root of unity.
        const double turn = std::arg(a) * k / (2.0 * std::numbers::pi);
        long m = std::lround(turn);
        m = ((m % k) + k) % k;
        double dist = 1e300;
        for (long c : {m - 1, m, m + 1}) {
            const long r = ((c % k) + k) % k;
            if (r == 0) continue;
            const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / k);
            dist = std::min(dist, std::abs(a - w));
        }
        if (dist < kUnitRootExact) {
            regular = false;
        } else if (dist < kUnitRootWindow || std::abs(std::pow(a, k) - 1.0) < kUnitRootWindow) {
            throw Error(ErrorKind::BoundaryAmbiguity,
                        "Ad eigenvalue within 1e-8 of a nontrivial root of unity of order dividing " +
                            std::to_string(k));
        }
    }
    return regular;
}

inline bool is_pk_regular(const CMatrix& g, const MatrixGroup& G, int k) {
    if (k == 1) return true;
    return is_pk_regular(eigenvalues(G.algebra.Ad_matrix(g).matrix), k);
}

inline bool is_pk_regular(const GroupElement& g, int k) { return is_pk_regular(g.matrix, *g.group, k); }

/// Checks that regularity of g = h^k matches (h regular and P_k-regular).
/// Numerical abstentions propagate as IllConditioned / BoundaryAmbiguity.
inline bool check_root_regularity_equivalence(const CMatrix& h, const MatrixGroup& G, int k) {
    const CMatrix g = matrix_power(h, k);
    const bool lhs = is_regular(g, G).is_regular;
    const RegularityReport hr = is_regular(h, G);
    const bool rhs = hr.is_regular && is_pk_regular(hr.eigenvalues_of_Ad, k);
    return lhs == rhs;
}

inline bool check_root_regularity_equivalence(const GroupElement& h, int k) {
    return check_root_regularity_equivalence(h.matrix, *h.group, k);
}

}  // namespace liepower
