#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "liepower/density.hpp"

namespace liepower {

struct RootCertificate {
    enum class Outcome { RootsFound, NoRoot, Inconclusive };

    Outcome outcome = Outcome::Inconclusive;
    std::vector<CMatrix> roots;
    std::string obstruction;  // NoRoot: why no eigenvalue assignment survives
    std::string note;         // Inconclusive: what went wrong numerically
};

inline std::string to_string(RootCertificate::Outcome o) {
    switch (o) {
        case RootCertificate::Outcome::RootsFound: return "RootsFound";
        case RootCertificate::Outcome::NoRoot: return "NoRoot";
        case RootCertificate::Outcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct RootOptions {
    std::size_t max_roots = std::numeric_limits<std::size_t>::max();
    double residual_tol = 1e-8;
};

namespace detail {

/// Pairwise separation relative to the pair's own size, with a floor tied to the largest
/// eigenvalue (the absolute accuracy of the eigensolver).
inline bool eigenvalues_separated(const CVector& d) {
    const double top = std::max(1.0, d.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < d.size(); ++i)
        for (Eigen::Index j = i + 1; j < d.size(); ++j)
            if (std::abs(d(i) - d(j)) < 1e-6 * std::max(std::abs(d(i)), std::abs(d(j))) + 1e-10 * top) return false;
    return true;
}

inline std::string format_cplx(cplx z) {
    char buf[64];
    if (std::abs(z.imag()) < 1e-12 * std::max(1.0, std::abs(z)))
        std::snprintf(buf, sizeof buf, "%.6g", z.real());
    else
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

/// Backtracking over k-th root assignments mu_j of the eigenvalues d_j.
struct RootSearch {
    const MatrixGroup& G;
    const CMatrix& g;
    int k;
    RootOptions opts;
    CVector d;
    CMatrix V, Vinv;
    std::vector<std::vector<cplx>> candidates;
    std::vector<int> conj_partner;  // real groups: index of conj(d_j)
    std::vector<int> form_partner;  // index paired with j by the invariant form, or -1
    std::vector<cplx> mu;
    std::vector<bool> assigned;

    RootCertificate cert;
    int tried = 0, rejected_det = 0, rejected_component = 0, numerical = 0;

    // Root-of-unity index of a ratio whose k-th power is 1 up to eigensolver error.
    // nullopt when the ratio is not clearly near one (the numerics cannot decide).
    std::optional<int> unity_index(cplx z) const {
        if (!(std::abs(z) > 0.0) || std::abs(std::abs(z) - 1.0) > 1e-3) return std::nullopt;
        const double t = std::arg(z) * k / (2.0 * std::numbers::pi);
        const double m = std::round(t);
        if (std::abs(t - m) > 0.05) return std::nullopt;
        return ((static_cast<int>(m) % k) + k) % k;
    }

    // 1: consistent, 0: excluded, -1: undecidable
    int consistent(int j) const {
        const cplx m = mu[static_cast<std::size_t>(j)];
        auto judge = [&](cplx ratio) {
            const auto idx = unity_index(ratio);
            return !idx ? -1 : (*idx == 0 ? 1 : 0);
        };
        if (G.real_entries) {
            const int c = conj_partner[static_cast<std::size_t>(j)];
            if (assigned[static_cast<std::size_t>(c)]) {
                const int v = judge(mu[static_cast<std::size_t>(c)] / std::conj(m));
                if (v != 1) return v;
            }
        }
        const int f = form_partner[static_cast<std::size_t>(j)];
        if (f >= 0 && assigned[static_cast<std::size_t>(f)]) {
            const cplx other = mu[static_cast<std::size_t>(f)];
            const int v = judge(G.form.type == FormSpec::Type::Hermitian ? std::conj(m) * other : m * other);
            if (v != 1) return v;
        }
        return 1;
    }

    // Rebuild small eigenvalues from large partners; small ones carry the eigensolver's
    // absolute error, relatively amplified.
    std::vector<cplx> refined() const {
        std::vector<cplx> r = mu;
        const std::size_t n = r.size();
        const bool herm = G.form.type == FormSpec::Type::Hermitian;
        for (std::size_t j = 0; j < n; ++j) {
            const int f = form_partner[j];
            if (f < 0) continue;
            const auto fi = static_cast<std::size_t>(f);
            if (fi == j) {
                r[j] = herm ? r[j] / std::abs(r[j]) : cplx(r[j].real() > 0 ? 1.0 : -1.0, 0.0);
            } else if (std::abs(r[j]) >= std::abs(r[fi])) {
                r[fi] = herm ? 1.0 / std::conj(r[j]) : 1.0 / r[j];
            }
        }
        if (G.real_entries)
            for (std::size_t j = 0; j < n; ++j) {
                const auto c = static_cast<std::size_t>(conj_partner[j]);
                if (c == j) r[j] = cplx(r[j].real(), 0.0);
                else if (j < c) r[c] = std::conj(r[j]);
            }
        cplx det = 1.0;
        for (const auto& m : r) det *= m;
        if (G.form.type != FormSpec::Type::None) {
            // pairing fixed |det|; spread the remaining phase, which keeps the pairing
            const cplx unit = std::pow(det / std::abs(det), -1.0 / static_cast<double>(n));
            if (!G.real_entries)
                for (auto& m : r) m *= unit;
        } else {
            std::size_t s = 0;
            for (std::size_t j = 1; j < n; ++j)
                if (std::abs(r[j]) < std::abs(r[s])) s = j;
            const std::size_t c = G.real_entries ? static_cast<std::size_t>(conj_partner[s]) : s;
            if (c == s) {
                r[s] /= det;
            } else {
                const double fix = std::sqrt(std::abs(det));
                r[s] /= fix;
                r[c] /= fix;
            }
        }
        return r;
    }

    void finish() {
        ++tried;
        cplx det = 1.0;
        for (const auto& m : mu) det *= m;
        const auto idx = unity_index(det);
        if (!idx) {
            ++numerical;
            return;
        }
        if (*idx != 0) {
            ++rejected_det;
            return;
        }
        const std::vector<cplx> r = refined();
        CVector dm(static_cast<Eigen::Index>(r.size()));
        for (std::size_t j = 0; j < r.size(); ++j) dm(static_cast<Eigen::Index>(j)) = r[j];
        CMatrix h = V * dm.asDiagonal() * Vinv;
        if (G.real_entries) {
            if (max_abs(h.imag()) > 1e-7 * std::max(1.0, max_abs(h))) {
                ++numerical;
                return;
            }
            h = CMatrix(h.real().cast<cplx>());
        }
        const double power_res = max_abs(CMatrix(matrix_power(h, k) - g)) / std::max(1.0, max_abs(g));
        if (power_res > opts.residual_tol || constraint_residual(h, G) > kMembershipTol) {
            ++numerical;
            return;
        }
        if (G.identity_component && !G.identity_component(h)) {
            ++rejected_component;
            return;
        }
        cert.roots.push_back(h);
    }

    void recurse(int j) {
        if (cert.roots.size() >= opts.max_roots) return;
        const int n = static_cast<int>(d.size());
        if (j == n) {
            finish();
            return;
        }
        for (const cplx& c : candidates[static_cast<std::size_t>(j)]) {
            mu[static_cast<std::size_t>(j)] = c;
            assigned[static_cast<std::size_t>(j)] = true;
            const int ok = consistent(j);
            if (ok == 1) recurse(j + 1);
            if (ok < 0) ++numerical;
            assigned[static_cast<std::size_t>(j)] = false;
            if (cert.roots.size() >= opts.max_roots) return;
        }
    }
};

}  // namespace detail

/// All k-th roots of g in G, certified for regular semisimple g (distinct eigenvalues).
/// A root commutes with g, so it is diagonal in g's eigenbasis; the search over eigenvalue
/// root assignments is therefore exhaustive.
inline RootCertificate kth_roots(const CMatrix& g, const MatrixGroup& G, int k, RootOptions opts = {}) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
    if (g.rows() != G.n || g.cols() != G.n) throw Error(ErrorKind::DimensionMismatch, "element size");
    RootCertificate cert;
    const int n = G.n;

    Eigen::ComplexEigenSolver<CMatrix> es(g);
    const CVector d = es.eigenvalues();
    if (!detail::eigenvalues_separated(d)) {
        cert.note = "eigenvalues are not distinct; only regular semisimple inputs are certified";
        return cert;
    }
    const CMatrix V = es.eigenvectors();
    Eigen::JacobiSVD<CMatrix> svd(V);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (!std::isfinite(cond) || cond > 1e8) {
        cert.note = "eigenbasis condition number " + std::to_string(cond) + " is too large";
        return cert;
    }

    detail::RootSearch s{G, g, k, opts};
    s.d = d;
    s.V = V;
    s.Vinv = V.inverse();
    s.conj_partner.assign(static_cast<std::size_t>(n), -1);
    s.form_partner.assign(static_cast<std::size_t>(n), -1);
    const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
    if (G.real_entries)
        for (int i = 0; i < n; ++i) {
            int best = -1;
            double best_dist = 1e300;
            for (int j = 0; j < n; ++j) {
                const double dist = std::abs(d(j) - std::conj(d(i)));
                if (dist < best_dist) best = j, best_dist = dist;
            }
            if (best_dist > 1e-6 * std::abs(d(i)) + 1e-10 * scale) {
                cert.note = "spectrum of a real matrix is not closed under conjugation";
                return cert;
            }
            s.conj_partner[static_cast<std::size_t>(i)] = best;
        }
    if (G.form.type != FormSpec::Type::None) {
        // Eigenvectors pair through the form exactly when their eigenvalues pair.
        const CMatrix gram = G.form.type == FormSpec::Type::Hermitian ? CMatrix(V.adjoint() * G.form.J * V)
                                                                       : CMatrix(V.transpose() * G.form.J * V);
        const double gscale = max_abs(gram);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(gram(i, j)) > 1e-6 * gscale) {
                    if (s.form_partner[static_cast<std::size_t>(i)] >= 0) {
                        cert.note = "form pairing of eigenvectors is not a matching";
                        return cert;
                    }
                    s.form_partner[static_cast<std::size_t>(i)] = j;
                }
        for (int i = 0; i < n; ++i)
            if (s.form_partner[static_cast<std::size_t>(i)] < 0) {
                cert.note = "eigenvector is isotropic for the whole space";
                return cert;
            }
    }

    s.candidates.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double mod = std::pow(std::abs(d(j)), 1.0 / k);
        const double arg = std::arg(d(j));
        for (int m = 0; m < k; ++m) {
            cplx mu = std::polar(mod, (arg + 2.0 * std::numbers::pi * m) / k);
            // Snap roots that should be real so that conjugation pairing is exact.
            if (std::abs(mu.imag()) < 1e-12 * mod) mu = cplx(mu.real(), 0.0);
            s.candidates[static_cast<std::size_t>(j)].push_back(mu);
        }
    }
    s.mu.assign(static_cast<std::size_t>(n), 0.0);
    s.assigned.assign(static_cast<std::size_t>(n), false);
    s.recurse(0);

    cert = std::move(s.cert);
    if (!cert.roots.empty()) {
        cert.outcome = RootCertificate::Outcome::RootsFound;
        return cert;
    }
    if (s.numerical > 0) {
        cert.note = std::to_string(s.numerical) + " assignments failed numerical verification";
        return cert;
    }
    cert.outcome = RootCertificate::Outcome::NoRoot;
    std::string why;
    if (G.real_entries)
        for (int j = 0; j < n; ++j)
            if (s.conj_partner[static_cast<std::size_t>(j)] == j && d(j).real() < 0 && k % 2 == 0) {
                why = "real eigenvalue " + detail::format_cplx(d(j)) +
                      " is negative and has no conjugate partner; an even root of it is never real";
                break;
            }
    if (why.empty()) {
        why = std::to_string(s.tried) + " assignments respect conjugation and the form; " +
              std::to_string(s.rejected_det) + " fail det = 1, " + std::to_string(s.rejected_component) +
              " leave the identity component";
    }
    std::string spec;
    for (int j = 0; j < n; ++j) spec += (j ? ", " : "") + detail::format_cplx(d(j));
    cert.obstruction = "eigenvalues {" + spec + "}, k = " + std::to_string(k) + ": " + why;
    return cert;
}

inline RootCertificate kth_roots(const GroupElement& g, int k, RootOptions opts = {}) {
    return kth_roots(g.matrix, *g.group, k, opts);
}

/// True when all eigenvalues of g are distinct (relative gap 1e-6).
inline bool regular_semisimple_matrix(const CMatrix& g) {
    return detail::eigenvalues_separated(Eigen::ComplexEigenSolver<CMatrix>(g, false).eigenvalues());
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct MonteCarloReport {
    int k = 0;
    int samples = 0;
    int resampled = 0;
    double certified_rootless_fraction = 0.0;
    double root_found_fraction = 0.0;
    double inconclusive_fraction = 0.0;
};

inline constexpr int kMaxResamplePerDraw = 50;

/// Draws regular semisimple elements with the Gaussian-product sampler and asks whether
/// each has a k-th root.
/// `observe` (optional) sees every certified draw with its outcome.
using MonteCarloObserver = std::function<void(const CMatrix&, RootCertificate::Outcome)>;

inline MonteCarloReport monte_carlo_density(const MatrixGroup& G, int k, int samples, std::uint64_t seed,
                                            const MonteCarloObserver& observe = nullptr) {
    if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
    MonteCarloReport r;
    r.k = k;
    r.samples = samples;
    int rootless = 0, found = 0, inconclusive = 0;
    std::uint64_t stream = seed * 0x9E3779B97F4A7C15ull;
    for (int s = 0; s < samples; ++s) {
        CMatrix g;
        bool ok = false;
        for (int attempt = 0; attempt < kMaxResamplePerDraw && !ok; ++attempt) {
            g = sample_matrix(G, stream++);
            try {
                ok = regular_semisimple_matrix(g) && is_regular(g, G).is_regular;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::IllConditioned) throw;
            }
            if (!ok) ++r.resampled;
        }
        if (!ok) {
            ++inconclusive;
            continue;
        }
        RootOptions opts;
        opts.max_roots = 1;
        const auto outcome = kth_roots(g, G, k, opts).outcome;
        if (observe) observe(g, outcome);
        switch (outcome) {
            case RootCertificate::Outcome::RootsFound: ++found; break;
            case RootCertificate::Outcome::NoRoot: ++rootless; break;
            case RootCertificate::Outcome::Inconclusive: ++inconclusive; break;
        }
    }
    r.certified_rootless_fraction = static_cast<double>(rootless) / samples;
    r.root_found_fraction = static_cast<double>(found) / samples;
    r.inconclusive_fraction = static_cast<double>(inconclusive) / samples;
    return r;
}

inline MonteCarloReport monte_carlo_density(const GroupDescriptor& d, int k, int samples, std::uint64_t seed) {
    if (d.kind == GroupDescriptor::Kind::Cover)
        throw Error(ErrorKind::NoMatrixModel, render(d) + " is symbolic; Monte Carlo needs a matrix model");
    return monte_carlo_density(matrix_group(levi_reduce(d).matrix), k, samples, seed);
}

/// Checks a Monte Carlo report against a verdict: Dense forbids certified rootless samples,
/// NotDense requires some. Undecided verdicts constrain nothing.
inline bool monte_carlo_consistent(DensityStatus status, const MonteCarloReport& r) {
    if (status == DensityStatus::Dense) return r.certified_rootless_fraction == 0.0;
    if (status == DensityStatus::NotDense) return r.certified_rootless_fraction > 0.0;
    return true;
}

// ---------------------------------------------------------------------------
// Independent root search

/// Damped Gauss-Newton on h = h0 exp(sum c_i X_i) minimizing |h^k - g|, from random starts.
/// Knows nothing about eigenvalues; used to challenge NoRoot certificates.
inline std::optional<CMatrix> restart_root_search(const CMatrix& g, const MatrixGroup& G, int k, int restarts,
                                                  std::uint64_t seed, int iterations = 40) {
    const int dim = G.algebra.dim();
    const double gscale = std::max(1.0, max_abs(g));
    auto residual = [&](const CMatrix& h) { return realify(CMatrix((matrix_power(h, k) - g) / gscale)); };
    std::mt19937_64 rng(seed);
    for (int r = 0; r < restarts; ++r) {
        CMatrix h = sample_matrix(G, rng(), 0.7);
        RVector f = residual(h);
        double lambda = 1e-2;
        for (int it = 0; it < iterations && f.norm() > 1e-12; ++it) {
            RMatrix J(f.size(), dim);
            const double eps = 1e-7;
            for (int i = 0; i < dim; ++i) {
                RVector step = RVector::Zero(dim);
                step(i) = eps;
                J.col(i) = (residual(h * matrix_exp(G.algebra.to_matrix(step))) - f) / eps;
            }
            const RMatrix JtJ = J.transpose() * J;
            const RVector rhs = -J.transpose() * f;
            bool improved = false;
            for (int tries = 0; tries < 8 && !improved; ++tries) {
                const RMatrix M = JtJ + lambda * RMatrix::Identity(dim, dim);
                const RVector c = M.ldlt().solve(rhs);
                CMatrix trial = h * matrix_exp(G.algebra.to_matrix(c));
                if (G.real_entries) trial = CMatrix(trial.real().cast<cplx>());
                const RVector ft = residual(trial);
                if (ft.norm() < f.norm()) {
                    h = trial;
                    f = ft;
                    lambda = std::max(lambda / 3.0, 1e-12);
                    improved = true;
                } else {
                    lambda *= 10.0;
                }
            }
            if (!improved) break;
        }
        if (f.norm() < 1e-9 && membership_residual(h, G) < kMembershipTol) return h;
    }
    return std::nullopt;
}

}  // namespace liepower
