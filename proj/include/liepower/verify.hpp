#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "liepower/report.hpp"

namespace liepower {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string first_failure;
    std::vector<std::string> lines;

    void fail(const std::string& what) {
        if (passed) first_failure = what;
        passed = false;
        lines.push_back("FAIL " + what);
    }
    void note(const std::string& what) { lines.push_back(what); }
};

struct VerifyOptions {
    int samples = 200;
    std::uint64_t seed = 7;
};

inline constexpr double kLemmaSamplingSigma = 0.5;
inline constexpr double kMaxDiscardRate = 0.05;

/// Counts for the equivalence "h^k regular <=> h regular and P_k-regular".
struct EquivalenceTally {
    int agree = 0;
    int disagree = 0;
    int discarded = 0;
};

inline EquivalenceTally root_regularity_batch(const MatrixGroup& G, int k, int samples, std::uint64_t seed) {
    EquivalenceTally t;
    for (int s = 0; s < samples; ++s) {
        const CMatrix h = sample_matrix(G, seed * 1000003ull + static_cast<std::uint64_t>(1000 * k + s), kLemmaSamplingSigma);
        try {
            (check_root_regularity_equivalence(h, G, k) ? t.agree : t.disagree)++;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::IllConditioned && e.kind() != ErrorKind::BoundaryAmbiguity) throw;
            ++t.discarded;
        }
    }
    return t;
}

/// All abelian groups of order at most `max_order`, by invariant factors.
inline std::vector<FGAbelian> abelian_groups_up_to(std::int64_t max_order) {
    std::vector<FGAbelian> out;
    std::function<void(std::vector<std::int64_t>&, std::int64_t)> grow = [&](std::vector<std::int64_t>& f,
                                                                             std::int64_t order) {
        out.push_back(FGAbelian(0, f));
        const std::int64_t last = f.empty() ? 1 : f.back();
        for (std::int64_t next = std::max<std::int64_t>(2, last); order * next <= max_order; next += last) {
            if (next % last != 0) continue;
            f.push_back(next);
            grow(f, order * next);
            f.pop_back();
        }
    };
    std::vector<std::int64_t> f;
    grow(f, 1);
    return out;
}

/// Multiplication by k is onto iff its image has |A| elements.
inline bool brute_force_surjective(const FGAbelian& A, std::int64_t k) {
    std::set<std::vector<std::int64_t>> image;
    for (const auto& x : A.elements()) image.insert(A.multiply(k, x));
    return static_cast<std::int64_t>(image.size()) == *A.order();
}

namespace suites {

inline SuiteResult liealg(const VerifyOptions& opts) {
    SuiteResult r{"liealg"};
    for (const auto& d : matrix_catalog()) {
        const MatrixGroup G = matrix_group(d.matrix);
        const double anti = G.algebra.antisymmetry_residual(), jac = G.algebra.jacobi_residual();
        if (anti > 1e-12 || jac > 1e-12) r.fail(G.name + " structure constants (antisymmetry " + std::to_string(anti) +
                                                ", Jacobi " + std::to_string(jac) + ")");
        int bad = 0;
        for (int s = 0; s < 20; ++s) {
            const CMatrix g = sample_matrix(G, opts.seed + 2 * s, kLemmaSamplingSigma);
            const CMatrix h = sample_matrix(G, opts.seed + 2 * s + 1, kLemmaSamplingSigma);
            const RMatrix lhs = G.algebra.Ad_matrix(g * h).matrix;
            const RMatrix rhs = G.algebra.Ad_matrix(g).matrix * G.algebra.Ad_matrix(h).matrix;
            if ((lhs - rhs).norm() > 1e-8 * std::max(1.0, lhs.norm())) ++bad;
        }
        if (bad) r.fail(G.name + " Ad is not multiplicative on " + std::to_string(bad) + " of 20 pairs");
    }
    r.note(std::to_string(matrix_catalog().size()) + " algebras: brackets antisymmetric, Jacobi, Ad multiplicative");
    return r;
}

inline SuiteResult regularity(const VerifyOptions& opts) {
    SuiteResult r{"regularity"};
    for (const char* name : {"SL(2,R)", "SL(3,R)", "SU(2,1)"}) {
        const MatrixGroup G = matrix_group(parse_descriptor(name).matrix);
        for (int k = 2; k <= 4; ++k) {
            const auto t = root_regularity_batch(G, k, opts.samples, opts.seed);
            const double discard = static_cast<double>(t.discarded) / opts.samples;
            r.note(std::string(name) + " k=" + std::to_string(k) + " agree=" + std::to_string(t.agree) +
                   " disagree=" + std::to_string(t.disagree) + " discarded=" + std::to_string(t.discarded));
            if (t.disagree > 0) r.fail(std::string("root regularity equivalence on ") + name + " k=" + std::to_string(k));
            if (discard >= kMaxDiscardRate) r.fail(std::string("discard rate on ") + name + " k=" + std::to_string(k));
        }
    }
    return r;
}

inline SuiteResult cartan(const VerifyOptions& opts) {
    SuiteResult r{"cartan"};
    int classes = 0, checked = 0;
    for (const auto& d : matrix_catalog()) {
        const MatrixGroup G = matrix_group(d.matrix);
        for (const auto& c : enumerate_cartan_classes(d.matrix, G)) {
            ++classes;
            if (c.dimension() != G.rank) r.fail(G.name + " " + c.name + " has dim != rank");
            if (static_cast<std::int64_t>(c.component_reps.size()) != *c.component_group.order())
                r.fail(G.name + " " + c.name + " rep count != |C/C*|");
            for (std::size_t i = 0; i < c.component_reps.size(); ++i) {
                const CMatrix& rep = c.component_reps[i];
                if (membership_residual(rep, G) >= kMembershipTol) r.fail(G.name + " " + c.name + " rep not in G");
                if (c.component_of(rep) != static_cast<int>(i)) r.fail(G.name + " " + c.name + " rep mislabeled");
                if (!is_regular(rep, G).is_regular) r.fail(G.name + " " + c.name + " rep not regular");
            }
            for (int k = 1; k <= 12; ++k) {
                try {
                    const auto img = pk_image_components(c, k, opts.samples, opts.seed + static_cast<std::uint64_t>(k));
                    checked += img.samples_checked;
                } catch (const Error& e) {
                    r.fail(G.name + " " + c.name + " k=" + std::to_string(k) + ": " + e.what());
                }
            }
        }
    }
    r.note(std::to_string(classes) + " classes, " + std::to_string(checked) +
           " sampled powers landed in predicted components");
    return r;
}

inline SuiteResult density(const VerifyOptions&) {
    SuiteResult r{"density"};
    int pairs = 0, disagreements = 0;
    for (const auto& A : abelian_groups_up_to(24))
        for (std::int64_t k = 1; k <= 12; ++k) {
            ++pairs;
            if (pk_surjective_on_fg_abelian(A, k) != brute_force_surjective(A, k)) {
                ++disagreements;
                r.fail("abelian oracle on " + A.to_string() + " k=" + std::to_string(k));
            }
        }
    r.note("abelian oracle: " + std::to_string(pairs) + " (group, k) pairs, " + std::to_string(disagreements) +
           " disagreements");
    int verdicts = 0;
    for (const auto& g : catalog())
        for (std::int64_t k = 1; k <= 12; ++k) {
            const auto v = density_verdict(g, k);
            ++verdicts;
            if (v.status == DensityStatus::NotDense && (!v.witness || !witness_has_no_preimage(*v.witness, k)))
                r.fail("witness for " + render(g) + " k=" + std::to_string(k));
            if (v.status == DensityStatus::Dense)
                for (std::int64_t m = 2; m <= k; ++m)
                    if (k % m == 0 && density_verdict(g, m).status != DensityStatus::Dense)
                        r.fail("divisor closure for " + render(g) + " k=" + std::to_string(k));
        }
    for (const auto& g : catalog()) {
        if (g.kind == GroupDescriptor::Kind::Matrix) {
            if (linear_weakexp_via_p2(g) != weakly_exponential(g).value) r.fail("P_2 criterion on " + render(g));
        } else {
            try {
                linear_weakexp_via_p2(g);
                r.fail("NotLinear not raised for " + render(g));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NotLinear) throw;
            }
        }
    }
    for (const auto& p : full_rank_pairs())
        for (std::int64_t k = 1; k <= 12; ++k)
            if (!full_rank_inheritance_check(p, k).holds) r.fail("full-rank inheritance for " + p.name);
    r.note("catalog verdicts: " + std::to_string(verdicts) + " with verified witnesses and divisor closure");
    r.note("full-rank pairs: " + std::to_string(full_rank_pairs().size()) + " checked for k=1..12");
    return r;
}

inline SuiteResult roots(const VerifyOptions& opts) {
    SuiteResult r{"roots"};
    for (const auto& d : matrix_catalog()) {
        const MatrixGroup G = matrix_group(d.matrix);
        std::string row = G.name + " rootless:";
        for (int k = 2; k <= 8; ++k) {
            const auto mc = monte_carlo_density(G, k, opts.samples, opts.seed + static_cast<std::uint64_t>(k));
            const auto status = density_verdict(d, k).status;
            row += " " + detail::shortest(mc.certified_rootless_fraction);
            if (!monte_carlo_consistent(status, mc))
                r.fail("Monte Carlo disagrees with " + to_string(status) + " for " + G.name + " k=" + std::to_string(k));
        }
        r.note(row);
    }
    return r;
}

}  // namespace suites

inline std::vector<std::string> suite_names() { return {"liealg", "regularity", "cartan", "density", "roots"}; }

inline SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "liealg") return suites::liealg(opts);
    if (name == "regularity") return suites::regularity(opts);
    if (name == "cartan") return suites::cartan(opts);
    if (name == "density") return suites::density(opts);
    if (name == "roots") return suites::roots(opts);
    throw Error(ErrorKind::InvalidArgument, "unknown module '" + name + "'");
}

}  // namespace liepower
