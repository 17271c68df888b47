#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "liepower/errors.hpp"
#include "liepower/tolerance.hpp"

namespace liepower {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Stacks real parts then imaginary parts, column-major, into one real vector.
inline RVector realify(const CMatrix& m) {
    const Eigen::Index n = m.size();
    RVector v(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = m.data()[i].real();
        v(n + i) = m.data()[i].imag();
    }
    return v;
}

inline CMatrix matrix_exp(const CMatrix& x) { return x.exp(); }

inline RMatrix matrix_exp(const RMatrix& x) { return x.exp(); }

template <typename Derived>
typename Derived::PlainObject matrix_power(const Eigen::MatrixBase<Derived>& m, int k) {
    using Plain = typename Derived::PlainObject;
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative matrix power");
    Plain result = Plain::Identity(m.rows(), m.cols());
    Plain base = m;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// Generalized kernel of a square operator.
struct Nilspace {
    int dimension = 0;
    RMatrix basis;  // columns, orthonormal
};

/// Orthonormal kernel of `m` under a fixed absolute cutoff, with the gap check.
/// Returns the right singular vectors for the dropped singular values.
inline RMatrix thresholded_kernel(const RMatrix& m, double cutoff) {
    Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    const Eigen::Index n = m.cols();
    // Columns beyond the row count are kernel directions with implicit zero singular value.
    std::vector<double> sv(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < s.size(); ++i) sv[static_cast<std::size_t>(i)] = s(i);
    Eigen::Index kept = 0;
    while (kept < n && sv[static_cast<std::size_t>(kept)] > cutoff) ++kept;
    if (kept > 0 && kept < n) {
        const double last_kept = sv[static_cast<std::size_t>(kept - 1)];
        const double first_dropped = sv[static_cast<std::size_t>(kept)];
        if (first_dropped > 0.0 && last_kept / first_dropped < kNilspaceGapRatio) {
            throw Error(ErrorKind::IllConditioned,
                        "singular values cluster at the rank threshold (gap ratio " +
                            std::to_string(last_kept / first_dropped) + ")");
        }
    }
    return svd.matrixV().rightCols(n - kept);
}

/// N(T) = ker(T^dim), built as the stable end of the chain ker T ⊂ ker T^2 ⊂ ...
/// Each link is one SVD of (I - P_K) T with P_K the projector on the previous link,
/// so the conditioning never degrades to that of a high matrix power.
/// The cutoff is tol * max(sigma_max(T), scale); `scale` lets callers with T = A - I
/// measure against |A| so that rounding noise in an almost-zero T is not mistaken for rank.
inline Nilspace nilspace(const RMatrix& t, double tol = global_tolerance(), double scale = 0.0) {
    if (t.rows() != t.cols()) throw Error(ErrorKind::DimensionMismatch, "nilspace of non-square operator");
    const Eigen::Index n = t.rows();
    Nilspace out;
    if (n == 0) return out;
    const double sigma_max = std::max(Eigen::JacobiSVD<RMatrix>(t).singularValues()(0), scale);
    if (sigma_max == 0.0) {
        out.dimension = static_cast<int>(n);
        out.basis = RMatrix::Identity(n, n);
        return out;
    }
    const double cutoff = tol * sigma_max;
    RMatrix basis(n, 0);
    for (Eigen::Index step = 0; step < n; ++step) {
        const RMatrix proj = RMatrix::Identity(n, n) - basis * basis.transpose();
        RMatrix next = thresholded_kernel(proj * t, cutoff);
        if (next.cols() <= basis.cols()) break;
        basis = std::move(next);
        if (basis.cols() == n) break;
    }
    out.dimension = static_cast<int>(basis.cols());
    out.basis = basis;
    return out;
}

/// Least-squares coordinates with respect to a fixed set of column vectors.
class ColumnProjector {
public:
    ColumnProjector() = default;
    explicit ColumnProjector(const RMatrix& columns) : columns_(columns), qr_(columns) {}

    RVector coefficients(const RVector& v) const { return qr_.solve(v); }

    /// Residual of the projection relative to max(1, |v|).
    double relative_residual(const RVector& v, const RVector& coeffs) const {
        return (columns_ * coeffs - v).norm() / std::max(1.0, v.norm());
    }

    Eigen::Index rank() const { return qr_.rank(); }
    const RMatrix& columns() const { return columns_; }

private:
    RMatrix columns_;
    Eigen::ColPivHouseholderQR<RMatrix> qr_;
};

/// Orthonormal basis of the null space of `m` (cutoff rel_tol * max(sigma_max, scale), no gap check).
inline RMatrix null_space(const RMatrix& m, double rel_tol = 1e-10, double scale = 0.0) {
    if (m.rows() == 0) return RMatrix::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    const double smax = std::max(s.size() > 0 ? s(0) : 0.0, scale);
    Eigen::Index kept = 0;
    while (kept < s.size() && s(kept) > rel_tol * std::max(smax, 1e-300)) ++kept;
    if (smax == 0.0) kept = 0;
    return svd.matrixV().rightCols(m.cols() - kept);
}

}  // namespace liepower
