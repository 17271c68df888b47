#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "liepower/cartan.hpp"

namespace liepower {

/// Multiplication by k is onto A iff A is finite and k is prime to every invariant factor.
inline bool pk_surjective_on_fg_abelian(const FGAbelian& A, std::int64_t k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
    if (k == 1) return true;
    if (A.free_rank() > 0) return false;
    for (auto n : A.torsion())
        if (std::gcd(k, n) != 1) return false;
    return true;
}

/// An element of a component group outside the image of multiplication by k.
struct DensityWitness {
    std::string cartan_class;
    FGAbelian component_group;
    std::vector<std::int64_t> element;
    std::optional<CMatrix> representative;  // a matrix in the missed component, when one exists

    std::string summary() const {
        std::string e;
        for (std::size_t i = 0; i < element.size(); ++i) e += (i ? "," : "") + std::to_string(element[i]);
        return cartan_class + " C/C*=" + component_group.to_string() + " element=(" + e + ")";
    }
};

/// True when no x in the group has k*x = element. The free part is decided coordinatewise,
/// the torsion part by enumerating it.
inline bool witness_has_no_preimage(const DensityWitness& w, std::int64_t k) {
    const FGAbelian& A = w.component_group;
    A.check_element(w.element);
    for (int i = 0; i < A.free_rank(); ++i)
        if (w.element[static_cast<std::size_t>(i)] % k != 0) return true;
    const FGAbelian torsion(0, A.torsion());
    const std::vector<std::int64_t> target(w.element.begin() + A.free_rank(), w.element.end());
    const auto goal = torsion.normalize(target);
    for (const auto& x : torsion.elements())
        if (torsion.multiply(k, x) == goal) return false;
    return true;
}

/// First generator that multiplication by k misses; requires pk_surjective_on_fg_abelian false.
inline std::vector<std::int64_t> missed_generator(const FGAbelian& A, std::int64_t k) {
    std::vector<std::int64_t> e(A.coordinate_count(), 0);
    if (A.free_rank() > 0) {
        e[0] = 1;
        return e;
    }
    for (std::size_t i = 0; i < A.torsion().size(); ++i)
        if (std::gcd(k, A.torsion()[i]) != 1) {
            e[i] = 1;
            return e;
        }
    throw Error(ErrorKind::InvalidArgument, "multiplication by k is onto " + A.to_string());
}

enum class DensityStatus { Dense, NotDense, Undecided };

inline std::string to_string(DensityStatus s) {
    switch (s) {
        case DensityStatus::Dense: return "Dense";
        case DensityStatus::NotDense: return "NotDense";
        case DensityStatus::Undecided: return "Undecided";
    }
    return "?";
}

namespace rule {
inline constexpr const char* kCartanComponents = "cartan-components";
inline constexpr const char* kCase1 = "case-1";
inline constexpr const char* kCase2a = "case-2a";
inline constexpr const char* kCase2b = "case-2b";
inline constexpr const char* kCase3 = "case-3";
inline constexpr const char* kCase4 = "case-4";
inline constexpr const char* kCase5 = "case-5";
inline constexpr const char* kFreeCenterCover = "free-center-cover";
inline constexpr const char* kLeviReduction = "levi-reduction";
inline constexpr const char* kWeakExp = "weak-exp";
}  // namespace rule

struct DensityVerdict {
    DensityStatus status = DensityStatus::Dense;
    std::string rule;
    std::optional<DensityWitness> witness;
    std::string reason;
};

inline DensityVerdict not_dense(std::string rule_id, std::string cls, const FGAbelian& A, std::int64_t k,
                                std::optional<CMatrix> rep = std::nullopt) {
    DensityVerdict v;
    v.status = DensityStatus::NotDense;
    v.rule = std::move(rule_id);
    v.witness = DensityWitness{std::move(cls), A, missed_generator(A, k), std::move(rep)};
    if (!witness_has_no_preimage(*v.witness, k))
        throw Error(ErrorKind::InternalConsistency, "witness " + v.witness->summary() + " has a k-th preimage");
    return v;
}

// ---------------------------------------------------------------------------
// Simple groups given by their case data

enum class CaseTag { Case1, Case2a, Case2b, Case3, Case4, Case5 };

inline std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::Case1: return "1";
        case CaseTag::Case2a: return "2a";
        case CaseTag::Case2b: return "2b";
        case CaseTag::Case3: return "3";
        case CaseTag::Case4: return "4";
        case CaseTag::Case5: return "5";
    }
    return "?";
}

inline CaseTag parse_case_tag(const std::string& s) {
    if (s == "1") return CaseTag::Case1;
    if (s == "2a") return CaseTag::Case2a;
    if (s == "2b") return CaseTag::Case2b;
    if (s == "3") return CaseTag::Case3;
    if (s == "4") return CaseTag::Case4;
    if (s == "5") return CaseTag::Case5;
    throw Error(ErrorKind::InvalidCase, "unknown case tag '" + s + "'");
}

/// Universal cover of a simple adjoint group (or, for Case 5, a quotient of it), described by
/// the data the case rules need.
struct SimpleCaseDescriptor {
    CaseTag tag = CaseTag::Case1;
    std::optional<std::int64_t> n;  // Cases 2a, 2b
    FGAbelian fundamental_group;    // pi_1 of the adjoint group
    std::vector<std::vector<std::int64_t>> kernel;  // Case 5: generators of D inside pi_1
    FGAbelian f_group;  // Case 5: the 2-torsion factor F of the split Cartan C = A x F

    void validate() const {
        auto bad = [&](const std::string& why) {
            throw Error(ErrorKind::InvalidCase, "case " + to_string(tag) + ": " + why);
        };
        switch (tag) {
            case CaseTag::Case1:
                if (!(fundamental_group == FGAbelian(0, {2})) && !(fundamental_group == FGAbelian(0, {2, 2})))
                    bad("fundamental group must be Z/2 or Z/2 x Z/2, got " + fundamental_group.to_string());
                break;
            case CaseTag::Case2a:
            case CaseTag::Case2b:
                if (!n || *n < 1) bad("requires n >= 1");
                if (!(fundamental_group == FGAbelian::cyclic(0)))
                    bad("fundamental group must be Z, got " + fundamental_group.to_string());
                break;
            case CaseTag::Case3:
                if (!(fundamental_group == FGAbelian::cyclic(6)))
                    bad("fundamental group must be Z/6, got " + fundamental_group.to_string());
                break;
            case CaseTag::Case4:
                if (!(fundamental_group == FGAbelian::cyclic(4)) && !(fundamental_group == FGAbelian::cyclic(8)))
                    bad("fundamental group must be Z/4 or Z/8, got " + fundamental_group.to_string());
                break;
            case CaseTag::Case5:
                if (f_group.free_rank() != 0) bad("F must be finite");
                for (auto t : f_group.torsion())
                    if (t != 2) bad("F must be a Z/2 vector space, got " + f_group.to_string());
                for (const auto& g : kernel) fundamental_group.check_element(g);
                break;
        }
    }

    FGAbelian center_quotient() const { return fundamental_group.quotient(kernel); }
};

inline SimpleCaseDescriptor case_descriptor(CaseTag tag, std::optional<std::int64_t> n = std::nullopt) {
    SimpleCaseDescriptor d;
    d.tag = tag;
    d.n = n;
    switch (tag) {
        case CaseTag::Case1: d.fundamental_group = FGAbelian::cyclic(2); break;
        case CaseTag::Case2a:
        case CaseTag::Case2b: d.fundamental_group = FGAbelian::cyclic(0); break;
        case CaseTag::Case3: d.fundamental_group = FGAbelian::cyclic(6); break;
        case CaseTag::Case4: d.fundamental_group = FGAbelian::cyclic(4); break;
        case CaseTag::Case5: d.fundamental_group = FGAbelian::cyclic(0); break;
    }
    return d;
}

inline SimpleCaseDescriptor split_case_descriptor(const FGAbelian& pi1, std::vector<std::vector<std::int64_t>> kernel,
                                                  int f_rank) {
    SimpleCaseDescriptor d;
    d.tag = CaseTag::Case5;
    d.fundamental_group = pi1;
    d.kernel = std::move(kernel);
    d.f_group = FGAbelian(0, std::vector<std::int64_t>(static_cast<std::size_t>(f_rank), 2));
    return d;
}

inline DensityVerdict simple_case_verdict(const SimpleCaseDescriptor& d, std::int64_t k) {
    d.validate();
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
    const bool odd = k % 2 != 0;
    const FGAbelian z2 = FGAbelian::cyclic(2);
    DensityVerdict v;
    switch (d.tag) {
        case CaseTag::Case1:
            if (!odd) return not_dense(rule::kCase1, "Cartan subgroup of C(G) with even-order components", z2, k);
            v.rule = rule::kCase1;
            return v;
        case CaseTag::Case2a: {
            const FGAbelian A = FGAbelian::cyclic(*d.n);
            if (!pk_surjective_on_fg_abelian(A, k)) return not_dense(rule::kCase2a, "lifted Cartan subgroup", A, k);
            v.rule = rule::kCase2a;
            return v;
        }
        case CaseTag::Case2b: {
            if (!odd) return not_dense(rule::kCase2b, "disconnected Cartan subgroup of the adjoint group", z2, k);
            const FGAbelian D = FGAbelian::cyclic(*d.n);
            if (!pk_surjective_on_fg_abelian(D, k))
                return not_dense(rule::kCase2b, "kernel of the lifted component map", D, k);
            v.rule = rule::kCase2b;
            return v;
        }
        case CaseTag::Case3:
            if (!odd) return not_dense(rule::kCase3, "disconnected Cartan subgroup of the adjoint group", z2, k);
            v.rule = rule::kCase3;
            if (k % 3 == 0) {
                v.status = DensityStatus::Undecided;
                v.reason = "k is odd and divisible by 3: the number of components of the Cartan subgroups of "
                           "the cover is not known, so no verdict follows";
            }
            return v;
        case CaseTag::Case4:
            if (!odd) return not_dense(rule::kCase4, "disconnected Cartan subgroup of the adjoint group", z2, k);
            v.rule = rule::kCase4;
            return v;
        case CaseTag::Case5: {
            if (!odd && !d.f_group.is_trivial())
                return not_dense(rule::kCase5, "split Cartan subgroup, 2-torsion factor F", d.f_group, k);
            const FGAbelian zd = d.center_quotient();
            if (!pk_surjective_on_fg_abelian(zd, k))
                return not_dense(rule::kCase5, "split Cartan subgroup, center quotient Z/D", zd, k);
            v.rule = rule::kCase5;
            return v;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Concrete groups

/// Cartan classes with the component group only; symbolic covers have no matrices.
struct ComponentSummary {
    std::string name;
    CartanSignature signature;
    FGAbelian component_group;
};

namespace detail {

inline const std::vector<CartanClass>& cached_classes(const MatrixParams& m) {
    static std::mutex mu;
    static std::map<std::string, std::vector<CartanClass>> cache;
    const std::string key = render(m);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_cartan_classes(m, matrix_group(m))).first;
    return it->second;
}

inline void require_supported(const GroupDescriptor& g) {
    if (g.kind == GroupDescriptor::Kind::Cover) {
        if (g.cover_base == CoverBase::PSL2R) return;
        if (g.cover_base == CoverBase::SLnR && !g.is_quotient && (g.cover_n == 3 || g.cover_n == 4)) return;
        throw Error(ErrorKind::UnsupportedGroup, render(g) + " is not a supported cover");
    }
    check_catalog(g.matrix);
}

}  // namespace detail

/// Case data for a symbolic cover.
inline SimpleCaseDescriptor cover_case(const GroupDescriptor& g) {
    if (g.kind != GroupDescriptor::Kind::Cover) throw Error(ErrorKind::InvalidArgument, "not a cover descriptor");
    if (g.cover_base == CoverBase::SLnR) {
        SimpleCaseDescriptor d = case_descriptor(CaseTag::Case1);
        d.fundamental_group = g.fundamental_group;
        return d;
    }
    // Split real form of rank one: the split Cartan of PSL(2,R) is connected, so F is trivial.
    return split_case_descriptor(g.fundamental_group, g.kernel_generators, 0);
}

inline std::vector<ComponentSummary> component_summaries(const GroupDescriptor& g) {
    detail::require_supported(g);
    std::vector<ComponentSummary> out;
    if (g.kind == GroupDescriptor::Kind::Cover) {
        if (g.cover_base == CoverBase::PSL2R) {
            // The center of the universal cover lies in the lifted split Cartan subgroup.
            out.push_back({"split", {0, 1, 0}, g.fundamental_group.quotient(g.kernel_generators)});
            out.push_back({"compact", {1, 0, 0}, FGAbelian::trivial()});
        }
        return out;
    }
    for (const auto& c : detail::cached_classes(g.matrix)) out.push_back({c.name, c.signature, c.component_group});
    return out;
}

inline GroupDescriptor levi_reduce(const GroupDescriptor& g) {
    if (g.kind != GroupDescriptor::Kind::Extension) return g;
    return matrix_descriptor(g.matrix);
}

inline DensityVerdict density_verdict(const GroupDescriptor& g, std::int64_t k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
    detail::require_supported(g);
    switch (g.kind) {
        case GroupDescriptor::Kind::Extension: {
            DensityVerdict v = density_verdict(levi_reduce(g), k);
            v.rule = std::string(rule::kLeviReduction) + "/" + v.rule;
            return v;
        }
        case GroupDescriptor::Kind::Cover: {
            if (g.cover_base == CoverBase::PSL2R && !g.is_quotient) {
                if (k == 1) return {DensityStatus::Dense, rule::kFreeCenterCover, std::nullopt, {}};
                return not_dense(rule::kFreeCenterCover, "lifted split Cartan subgroup", g.fundamental_group, k);
            }
            return simple_case_verdict(cover_case(g), k);
        }
        case GroupDescriptor::Kind::Matrix: break;
    }
    for (const auto& c : detail::cached_classes(g.matrix))
        if (!pk_surjective_on_fg_abelian(c.component_group, k)) {
            std::optional<CMatrix> rep;
            if (c.component_reps.size() > 1) rep = c.component_reps.back();
            return not_dense(rule::kCartanComponents, c.name, c.component_group, k, rep);
        }
    return {DensityStatus::Dense, rule::kCartanComponents, std::nullopt, {}};
}

inline DensityVerdict density_verdict(const std::string& descriptor, std::int64_t k) {
    return density_verdict(parse_descriptor(descriptor), k);
}

struct WeakExpResult {
    bool value = false;
    std::string rule;
    std::vector<std::string> trace;
};

inline constexpr int kWeakExpProbeMax = 12;

/// Weakly exponential iff every Cartan subgroup is connected. Probed against the density
/// verdicts for k <= 12: a weakly exponential group must be dense for every k.
inline WeakExpResult weakly_exponential(const GroupDescriptor& g) {
    detail::require_supported(g);
    WeakExpResult r;
    r.rule = rule::kWeakExp;
    const GroupDescriptor base = levi_reduce(g);
    if (g.kind == GroupDescriptor::Kind::Extension) r.trace.push_back(std::string(rule::kLeviReduction) + ": " + render(base));
    if (base.kind == GroupDescriptor::Kind::Cover && base.cover_base == CoverBase::SLnR) {
        // Case 1 groups are never weakly exponential.
        r.value = false;
        r.trace.push_back(std::string(rule::kCase1) + ": fundamental group " + base.fundamental_group.to_string());
    } else {
        r.value = true;
        for (const auto& s : component_summaries(base)) {
            r.trace.push_back(s.name + ": C/C*=" + s.component_group.to_string());
            if (!s.component_group.is_trivial()) r.value = false;
        }
    }
    if (r.value)
        for (int k = 2; k <= kWeakExpProbeMax; ++k)
            if (density_verdict(g, k).status != DensityStatus::Dense)
                throw Error(ErrorKind::InternalConsistency,
                            render(g) + " has connected Cartan subgroups but P_" + std::to_string(k) + " is not dense");
    return r;
}

inline bool linear_weakexp_via_p2(const GroupDescriptor& g) {
    if (g.kind == GroupDescriptor::Kind::Cover)
        throw Error(ErrorKind::NotLinear,
                    render(g) + " is not a linear group; density of P_2 does not decide weak exponentiality there: "
                                "quotient(universal(PSL(2,R)), 3) has dense P_2 but is not weakly exponential");
    const bool dense2 = density_verdict(g, 2).status == DensityStatus::Dense;
    if (dense2 != weakly_exponential(g).value)
        throw Error(ErrorKind::InternalConsistency,
                    render(g) + ": density of P_2 disagrees with connectedness of the Cartan subgroups");
    return dense2;
}

// ---------------------------------------------------------------------------
// Full-rank subgroups

struct FullRankPair {
    std::string name;
    GroupDescriptor ambient;
    std::function<MatrixGroup()> subgroup;
    bool centralizer = false;  // A = Z_G(t) for a semisimple t; density is then equivalent
};

namespace detail {

inline MatrixGroup restricted_subgroup(const MatrixParams& ambient, const std::string& name,
                                       const std::vector<std::vector<int>>& blocks,
                                       std::function<bool(const CMatrix&)> component,
                                       std::vector<std::pair<std::string, CMatrix>> seeds) {
    MatrixGroup G = matrix_group(ambient);
    MatrixGroup A;
    A.name = name;
    A.n = G.n;
    A.real_entries = G.real_entries;
    A.form = G.form;
    A.support = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(G.n, G.n, false);
    for (const auto& b : blocks)
        for (int i : b)
            for (int j : b) A.support(i, j) = true;
    A.identity_component = [component, outer = G.identity_component](const CMatrix& g) {
        return (!component || component(g)) && (!outer || outer(g));
    };
    // Algebra: the part of the ambient algebra supported on the blocks.
    const int d = G.algebra.dim();
    RMatrix constraints(0, d);
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j)
            if (!A.support(i, j)) {
                RMatrix rows(2, d);
                for (int b = 0; b < d; ++b) {
                    rows(0, b) = G.algebra.basis(b)(i, j).real();
                    rows(1, b) = G.algebra.basis(b)(i, j).imag();
                }
                constraints.conservativeResize(constraints.rows() + 2, d);
                constraints.bottomRows(2) = rows;
            }
    const RMatrix kernel = null_space(constraints, 1e-10, 1.0);
    std::vector<CMatrix> basis;
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        CMatrix m = G.algebra.to_matrix(kernel.col(c));
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j)
                if (!A.support(i, j)) m(i, j) = 0.0;
        basis.push_back(m);
    }
    A.algebra = LieAlgebraBasis(std::move(basis));
    A.rank = algebra_rank(A.algebra, kRankTrials, kRankSeed);
    A.cartan_seeds = std::move(seeds);
    return A;
}

inline CMatrix diag_matrix(std::initializer_list<cplx> d) {
    CVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (const auto& x : d) v(i++) = x;
    return v.asDiagonal();
}

inline CMatrix rotation_scaling(double r, double c, double s) {
    CMatrix m(2, 2);
    m << r * c, -r * s, r * s, r * c;
    return m;
}

}  // namespace detail

/// The shipped pairs (G, A) with A a connected full-rank subgroup of G.
inline std::vector<FullRankPair> full_rank_pairs() {
    using detail::diag_matrix;
    std::vector<FullRankPair> out;
    const MatrixParams sl3{Family::SLR, 3, 0, 0}, sl4{Family::SLR, 4, 0, 0}, sl2c{Family::SLC, 2, 0, 0};
    const MatrixParams su21{Family::SU, 0, 2, 1}, so31{Family::SOPlus, 0, 3, 1};

    out.push_back({"S(GL(1)xGL(2))+ in SL(3,R)", matrix_descriptor(sl3), [sl3] {
                       CMatrix compact = CMatrix::Zero(3, 3);
                       compact(0, 0) = 4.0;
                       compact.bottomRightCorner(2, 2) = detail::rotation_scaling(0.5, 0.6, 0.8);
                       return detail::restricted_subgroup(
                           sl3, "S(GL(1)xGL(2))+", {{0}, {1, 2}},
                           [](const CMatrix& g) { return g(0, 0).real() > 0.0; },
                           {{"split", diag_matrix({2.0, 3.0, 1.0 / 6.0})}, {"complex", compact}});
                   }});
    out.push_back({"S(GL(2)xGL(2))+ in SL(4,R)", matrix_descriptor(sl4), [sl4] {
                       CMatrix sc = CMatrix::Zero(4, 4), cs = CMatrix::Zero(4, 4), cc = CMatrix::Zero(4, 4);
                       sc.topLeftCorner(2, 2) = diag_matrix({2.0, 3.0});
                       sc.bottomRightCorner(2, 2) = detail::rotation_scaling(1.0 / std::sqrt(6.0), 0.6, 0.8);
                       cs.topLeftCorner(2, 2) = detail::rotation_scaling(1.0 / std::sqrt(6.0), 0.6, 0.8);
                       cs.bottomRightCorner(2, 2) = diag_matrix({2.0, 3.0});
                       cc.topLeftCorner(2, 2) = detail::rotation_scaling(2.0, 0.6, 0.8);
                       cc.bottomRightCorner(2, 2) = detail::rotation_scaling(0.5, 5.0 / 13.0, 12.0 / 13.0);
                       return detail::restricted_subgroup(
                           sl4, "S(GL(2)xGL(2))+", {{0, 1}, {2, 3}},
                           [](const CMatrix& g) { return g.topLeftCorner(2, 2).real().determinant() > 0.0; },
                           {{"split-split", diag_matrix({2.0, 3.0, 0.25, 2.0 / 3.0})},
                            {"split-complex", sc},
                            {"complex-split", cs},
                            {"complex-complex", cc}});
                   }});
    out.push_back({"diagonal torus in SL(2,C)", matrix_descriptor(sl2c), [sl2c] {
                       const cplx z(1.2, 0.7);
                       return detail::restricted_subgroup(sl2c, "diagonal torus", {{0}, {1}}, nullptr,
                                                          {{"torus", diag_matrix({z, 1.0 / z})}});
                   }});
    out.push_back({"Z(t) = S(U(1,1)xU(1)) in SU(2,1), t = i diag(1,-2,1)", matrix_descriptor(su21), [su21] {
                       const auto& table = detail::cartan_table();
                       std::vector<std::pair<std::string, CMatrix>> seeds;
                       for (const auto& r : table)
                           if (r.group == su21) seeds.push_back({r.name, r.seed});
                       return detail::restricted_subgroup(su21, "S(U(1,1)xU(1))", {{0, 2}, {1}}, nullptr, seeds);
                   }, true});
    out.push_back({"Z(t) = SO(2)xSO+(1,1) in SO+(3,1), t = rotation of the (1,2) plane", matrix_descriptor(so31), [so31] {
                       std::vector<std::pair<std::string, CMatrix>> seeds;
                       for (const auto& r : detail::cartan_table())
                           if (r.group == so31) seeds.push_back({r.name, r.seed});
                       return detail::restricted_subgroup(so31, "SO(2)xSO+(1,1)", {{0, 3}, {1, 2}}, nullptr, seeds);
                   }, true});
    out.push_back({"SL(3,R) in SL(3,R)", matrix_descriptor(sl3), [sl3] {
                       MatrixGroup A = matrix_group(sl3);
                       for (const auto& s : detail::catalog_seeds(sl3)) A.cartan_seeds.push_back({s.name, s.matrix});
                       return A;
                   }});
    return out;
}

/// Cartan classes of an arbitrary matrix group: its own seeds, else the catalog entry of its name.
inline std::vector<CartanClass> cartan_classes_of(const MatrixGroup& A) {
    if (!A.cartan_seeds.empty()) return enumerate_cartan_classes(A);
    const GroupDescriptor d = parse_descriptor(A.name);
    if (d.kind != GroupDescriptor::Kind::Matrix)
        throw Error(ErrorKind::UnsupportedGroup, A.name + " has no Cartan data");
    return enumerate_cartan_classes(d.matrix, A);
}

inline DensityStatus matrix_density(const std::vector<CartanClass>& classes, std::int64_t k) {
    for (const auto& c : classes)
        if (!pk_surjective_on_fg_abelian(c.component_group, k)) return DensityStatus::NotDense;
    return DensityStatus::Dense;
}

/// Throws NotFullRank unless A's algebra lies in G's and contains a Cartan subalgebra of it.
inline std::vector<CartanClass> require_full_rank(const MatrixGroup& G, const MatrixGroup& A) {
    if (A.n != G.n) throw Error(ErrorKind::NotFullRank, A.name + " does not act on the same space as " + G.name);
    for (int b = 0; b < A.algebra.dim(); ++b) {
        double residual = 0.0;
        G.algebra.coordinates(A.algebra.basis(b), &residual);
        if (residual > 1e-8) throw Error(ErrorKind::NotFullRank, A.name + " is not a subalgebra of " + G.name);
    }
    if (A.rank != G.rank)
        throw Error(ErrorKind::NotFullRank, A.name + " has rank " + std::to_string(A.rank) + ", " + G.name +
                                                " has rank " + std::to_string(G.rank));
    std::vector<CartanClass> classes = cartan_classes_of(A);
    for (const auto& c : classes) {
        const RVector x = G.algebra.coordinates(c.generic);
        const int dim = nilspace(G.algebra.ad_matrix(x).matrix).dimension;
        if (dim != G.rank)
            throw Error(ErrorKind::NotFullRank, "Cartan subalgebra '" + c.name + "' of " + A.name +
                                                    " is not a Cartan subalgebra of " + G.name);
    }
    return classes;
}

struct InheritanceResult {
    DensityStatus ambient = DensityStatus::Dense;
    DensityStatus subgroup = DensityStatus::Dense;
    bool holds = true;
};

/// Dense(G,k) => Dense(A,k); for centralizer pairs the converse is also required.
inline InheritanceResult full_rank_inheritance_check(const GroupDescriptor& G, const MatrixGroup& A, std::int64_t k,
                                                     bool centralizer = false) {
    if (G.kind != GroupDescriptor::Kind::Matrix)
        throw Error(ErrorKind::NoMatrixModel, render(G) + " has no matrix model");
    const auto classes = require_full_rank(matrix_group(G.matrix), A);
    InheritanceResult r;
    r.ambient = density_verdict(G, k).status;
    r.subgroup = matrix_density(classes, k);
    const bool forward = r.ambient != DensityStatus::Dense || r.subgroup == DensityStatus::Dense;
    const bool backward = !centralizer || r.subgroup != DensityStatus::Dense || r.ambient == DensityStatus::Dense;
    r.holds = forward && backward;
    return r;
}

inline InheritanceResult full_rank_inheritance_check(const FullRankPair& p, std::int64_t k) {
    return full_rank_inheritance_check(p.ambient, p.subgroup(), k, p.centralizer);
}

}  // namespace liepower
