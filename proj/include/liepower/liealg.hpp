#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "liepower/linalg.hpp"

namespace liepower {

/// Matrix of Ad_g or ad_X in the coordinates of a LieAlgebraBasis.
struct AdjointOperator {
    enum class Source { GroupElement, AlgebraElement };
    RMatrix matrix;
    Source source = Source::AlgebraElement;
};

/// A real matrix Lie algebra: a list of linearly independent (possibly complex)
/// matrices closed under the commutator, viewed as a real vector space.
///
/// Structure constants are derived once at construction:
///   [X_i, X_j] = sum_l c(i, j, l) X_l.
class LieAlgebraBasis {
public:
    LieAlgebraBasis() = default;

    explicit LieAlgebraBasis(std::vector<CMatrix> basis, double tol = 1e-9) : basis_(std::move(basis)) {
        if (basis_.empty()) {
            n_ = 0;
            return;
        }
        n_ = basis_.front().rows();
        RMatrix cols(2 * n_ * n_, static_cast<Eigen::Index>(basis_.size()));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i].rows() != n_ || basis_[i].cols() != n_)
                throw Error(ErrorKind::DimensionMismatch, "basis matrices differ in size");
            cols.col(static_cast<Eigen::Index>(i)) = realify(basis_[i]);
        }
        projector_ = ColumnProjector(cols);
        if (projector_.rank() != cols.cols())
            throw Error(ErrorKind::InvalidArgument, "basis matrices are linearly dependent");
        const int d = dim();
        structure_.assign(static_cast<std::size_t>(d * d * d), 0.0);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const CMatrix comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
                const RVector v = realify(comm);
                const RVector c = projector_.coefficients(v);
                if (projector_.relative_residual(v, c) > tol)
                    throw Error(ErrorKind::InvalidArgument, "span is not closed under the commutator");
                for (int l = 0; l < d; ++l) structure_[index(i, j, l)] = c(l);
            }
        }
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    Eigen::Index matrix_size() const { return n_; }
    const std::vector<CMatrix>& basis() const { return basis_; }
    const CMatrix& basis(int i) const { return basis_.at(static_cast<std::size_t>(i)); }

    double structure_constant(int i, int j, int l) const { return structure_[index(i, j, l)]; }

    CMatrix to_matrix(const RVector& coeffs) const {
        check_length(coeffs);
        CMatrix m = CMatrix::Zero(n_, n_);
        for (int i = 0; i < dim(); ++i) m += coeffs(i) * basis_[i];
        return m;
    }

    /// Coordinates of a matrix in the span; `residual` receives the relative projection error.
    RVector coordinates(const CMatrix& m, double* residual = nullptr) const {
        const RVector v = realify(m);
        RVector c = projector_.coefficients(v);
        if (residual) *residual = projector_.relative_residual(v, c);
        return c;
    }

    RVector bracket(const RVector& x, const RVector& y) const {
        check_length(x);
        check_length(y);
        const int d = dim();
        RVector out = RVector::Zero(d);
        for (int i = 0; i < d; ++i) {
            if (x(i) == 0.0) continue;
            for (int j = 0; j < d; ++j) {
                const double w = x(i) * y(j);
                if (w == 0.0) continue;
                for (int l = 0; l < d; ++l) out(l) += structure_[index(i, j, l)] * w;
            }
        }
        return out;
    }

    /// Column j holds the coordinates of [X, basis_j].
    AdjointOperator ad_matrix(const RVector& x) const {
        check_length(x);
        const int d = dim();
        AdjointOperator op;
        op.source = AdjointOperator::Source::AlgebraElement;
        op.matrix = RMatrix::Zero(d, d);
        for (int j = 0; j < d; ++j) op.matrix.col(j) = bracket(x, RVector::Unit(d, j));
        return op;
    }

    /// Column j holds the coordinates of g basis_j g^-1.
    AdjointOperator Ad_matrix(const CMatrix& g, double tol = 1e-8) const {
        if (g.rows() != n_ || g.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "group element size");
        Eigen::PartialPivLU<CMatrix> lu(g);
        if (std::abs(lu.determinant()) == 0.0) throw Error(ErrorKind::InvalidArgument, "singular group element");
        const CMatrix ginv = lu.inverse();
        const int d = dim();
        AdjointOperator op;
        op.source = AdjointOperator::Source::GroupElement;
        op.matrix.resize(d, d);
        const double scale = std::max(1.0, max_abs(g) * max_abs(ginv));
        for (int j = 0; j < d; ++j) {
            const CMatrix conj = g * basis_[j] * ginv;
            const RVector v = realify(conj);
            const RVector c = projector_.coefficients(v);
            if (projector_.relative_residual(v, c) > tol * scale)
                throw Error(ErrorKind::ConjugationEscapesAlgebra,
                            "g X g^-1 leaves the span for basis element " + std::to_string(j));
            op.matrix.col(j) = c;
        }
        return op;
    }

    /// max |c(i,j,l) + c(j,i,l)|
    double antisymmetry_residual() const {
        double r = 0.0;
        const int d = dim();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l)
                    r = std::max(r, std::abs(structure_[index(i, j, l)] + structure_[index(j, i, l)]));
        return r;
    }

    /// max over basis triples of |[X_i,[X_j,X_k]] + cyclic| in coordinates.
    double jacobi_residual() const {
        double r = 0.0;
        const int d = dim();
        for (int i = 0; i < d; ++i) {
            const RVector xi = RVector::Unit(d, i);
            for (int j = 0; j < d; ++j) {
                const RVector xj = RVector::Unit(d, j);
                for (int k = 0; k < d; ++k) {
                    const RVector xk = RVector::Unit(d, k);
                    const RVector s = bracket(xi, bracket(xj, xk)) + bracket(xj, bracket(xk, xi)) +
                                      bracket(xk, bracket(xi, xj));
                    r = std::max(r, s.cwiseAbs().maxCoeff());
                }
            }
        }
        return r;
    }

    /// Independent standard Gaussian coefficients.
    template <typename Rng>
    RVector random_element(Rng& rng, double sigma = 1.0) const {
        std::normal_distribution<double> normal(0.0, sigma);
        RVector x(dim());
        for (int i = 0; i < dim(); ++i) x(i) = normal(rng);
        return x;
    }

    /// Subalgebra spanned by the given coefficient columns.
    LieAlgebraBasis subalgebra(const RMatrix& coeff_columns) const {
        std::vector<CMatrix> mats;
        for (Eigen::Index c = 0; c < coeff_columns.cols(); ++c) mats.push_back(to_matrix(coeff_columns.col(c)));
        return LieAlgebraBasis(std::move(mats));
    }

private:
    std::size_t index(int i, int j, int l) const {
        const auto d = static_cast<std::size_t>(dim());
        return (static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(l);
    }

    void check_length(const RVector& v) const {
        if (v.size() != dim())
            throw Error(ErrorKind::DimensionMismatch,
                        "coefficient vector of length " + std::to_string(v.size()) + " for algebra of dim " +
                            std::to_string(dim()));
    }

    std::vector<CMatrix> basis_;
    Eigen::Index n_ = 0;
    ColumnProjector projector_;
    std::vector<double> structure_;
};

/// Minimum nilspace dimension of ad_X over `trials` Gaussian samples.
/// Generic elements attain the rank, so the result is an upper bound that is exact
/// with probability tending to one.
inline int algebra_rank(const LieAlgebraBasis& algebra, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "algebra_rank needs at least one trial");
    std::mt19937_64 rng(seed);
    int best = algebra.dim();
    for (int t = 0; t < trials; ++t) {
        const RVector x = algebra.random_element(rng);
        try {
            best = std::min(best, nilspace(algebra.ad_matrix(x).matrix).dimension);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::IllConditioned) throw;
        }
    }
    return best;
}

}  // namespace liepower
