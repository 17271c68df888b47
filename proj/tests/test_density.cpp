#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "liepower/liepower.hpp"

using namespace liepower;

namespace {

MatrixGroup group(const std::string& desc) { return matrix_group(parse_descriptor(desc).matrix); }

CMatrix cdiag(std::initializer_list<cplx> d) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (cplx x : d) m(i, i) = x, ++i;
    return m;
}

DensityStatus status(const std::string& desc, std::int64_t k) { return density_verdict(desc, k).status; }

// Surjectivity of x -> kx on Z/n1 x ... x Z/nr by listing the image.
bool image_is_everything(const std::vector<std::int64_t>& orders, std::int64_t k) {
    std::int64_t total = 1;
    for (auto n : orders) total *= n;
    std::set<std::vector<std::int64_t>> image;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::vector<std::int64_t> y;
        std::int64_t rest = idx;
        for (auto n : orders) {
            y.push_back((k * (rest % n)) % n);
            rest /= n;
        }
        image.insert(y);
    }
    return static_cast<std::int64_t>(image.size()) == total;
}

}  // namespace

// ---------------------------------------------------------------- abelian

TEST(Abelian, SurjectivityAgreesWithEnumeration) {
    for (std::int64_t a = 1; a <= 12; ++a)
        for (std::int64_t b = 1; a * b <= 24; ++b)
            for (std::int64_t k = 1; k <= 12; ++k)
                EXPECT_EQ(pk_surjective_on_fg_abelian(FGAbelian(0, {a, b}), k), image_is_everything({a, b}, k))
                    << a << "x" << b << " k=" << k;
}

TEST(Abelian, FreePartIsNeverKDivisible) {
    EXPECT_TRUE(pk_surjective_on_fg_abelian(FGAbelian(1, {}), 1));
    for (std::int64_t k = 2; k <= 6; ++k) EXPECT_FALSE(pk_surjective_on_fg_abelian(FGAbelian(1, {}), k));
}

TEST(Abelian, MissedGeneratorHasNoPreimage) {
    const FGAbelian A(0, {2, 6});
    for (std::int64_t k = 2; k <= 6; ++k) {
        if (pk_surjective_on_fg_abelian(A, k)) continue;
        const auto e = missed_generator(A, k);
        for (const auto& x : A.elements()) EXPECT_NE(A.multiply(k, x), A.normalize(e));
    }
}

// ---------------------------------------------------------------- density verdicts

TEST(Density, SLnRParity) {
    for (const char* g : {"SL(2,R)", "SL(3,R)", "SL(4,R)", "Sp(2,R)", "SU(1,1)", "SO+(2,2)", "SO+(3,2)", "SO+(2,3)"})
        for (std::int64_t k = 1; k <= 12; ++k)
            EXPECT_EQ(status(g, k), k % 2 ? DensityStatus::Dense : DensityStatus::NotDense) << g << " k=" << k;
}

TEST(Density, ConnectedCartanGroupsAlwaysDense) {
    for (const char* g : {"SL(2,C)", "SL(3,C)", "SU(2,0)", "SU(3,0)", "SU(2,1)", "SO+(3,0)", "SO+(3,1)", "SO+(4,1)",
                          "SO+(1,1)", "SO+(2,1)"})
        for (std::int64_t k = 1; k <= 12; ++k) EXPECT_EQ(status(g, k), DensityStatus::Dense) << g << " k=" << k;
}

TEST(Density, NotDenseVerdictsCarryCheckedWitnesses) {
    for (const auto& g : catalog())
        for (std::int64_t k = 2; k <= 8; ++k) {
            const auto v = density_verdict(g, k);
            if (v.status != DensityStatus::NotDense) continue;
            ASSERT_TRUE(v.witness) << render(g);
            EXPECT_TRUE(witness_has_no_preimage(*v.witness, k));
            EXPECT_FALSE(v.rule.empty());
        }
}

TEST(Density, WitnessRepresentativeLiesInItsComponent) {
    const auto v = density_verdict("SL(3,R)", 2);
    ASSERT_TRUE(v.witness && v.witness->representative);
    const CMatrix& r = *v.witness->representative;
    const MatrixGroup G = group("SL(3,R)");
    EXPECT_LT(membership_residual(r, G), 1e-8);
    // r is not a square: with kth_roots rejecting it
    EXPECT_EQ(kth_roots(r, G, 2).outcome, RootCertificate::Outcome::NoRoot);
}

TEST(Density, UniversalCoverOfPSL2) {
    for (std::int64_t k = 2; k <= 12; ++k) {
        const auto v = density_verdict("universal(PSL(2,R))", k);
        EXPECT_EQ(v.status, DensityStatus::NotDense);
        EXPECT_EQ(v.rule, rule::kFreeCenterCover);
        ASSERT_TRUE(v.witness);
        EXPECT_EQ(v.witness->component_group.free_rank(), 1);
    }
    EXPECT_EQ(status("universal(PSL(2,R))", 1), DensityStatus::Dense);
}

TEST(Density, QuotientsOfTheCover) {
    for (std::int64_t m : {1, 2, 3, 4, 6})
        for (std::int64_t k = 1; k <= 12; ++k) {
            const auto d = "quotient(universal(PSL(2,R)), " + std::to_string(m) + ")";
            EXPECT_EQ(status(d, k), std::gcd(k, m) == 1 ? DensityStatus::Dense : DensityStatus::NotDense)
                << d << " k=" << k;
        }
    EXPECT_FALSE(weakly_exponential(parse_descriptor("quotient(universal(PSL(2,R)), 3)")).value);
}

TEST(Density, CoversOfSLnR) {
    for (const char* d : {"universal(SL(3,R))", "universal(SL(4,R))"})
        for (std::int64_t k = 1; k <= 8; ++k)
            EXPECT_EQ(status(d, k), k % 2 ? DensityStatus::Dense : DensityStatus::NotDense) << d;
    EXPECT_THROW(parse_descriptor("universal(SL(5,R))"), Error);
}

TEST(Density, ExtensionsReduceToTheLeviFactor) {
    for (std::int64_t k = 1; k <= 6; ++k) {
        const auto v = density_verdict("extension(SL(2,R), 3)", k);
        EXPECT_EQ(v.status, status("SL(2,R)", k));
        EXPECT_EQ(v.rule.rfind(rule::kLeviReduction, 0), 0u) << v.rule;
    }
}

TEST(Density, DivisorsOfDenseExponentsAreDense) {
    for (const auto& g : catalog())
        for (std::int64_t k = 2; k <= 12; ++k) {
            if (density_verdict(g, k).status != DensityStatus::Dense) continue;
            for (std::int64_t m = 2; m < k; ++m)
                if (k % m == 0) EXPECT_EQ(density_verdict(g, m).status, DensityStatus::Dense) << render(g);
        }
}

TEST(Density, WeakExponentialityVersusSquares) {
    for (const auto& g : catalog()) {
        if (g.kind != GroupDescriptor::Kind::Matrix) {
            try {
                linear_weakexp_via_p2(g);
                ADD_FAILURE() << render(g);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::NotLinear);
                EXPECT_NE(std::string(e.what()).find("quotient(universal(PSL(2,R)), 3)"), std::string::npos);
            }
            continue;
        }
        bool connected = true;
        for (const auto& c : enumerate_cartan_classes(g)) connected = connected && c.component_group.is_trivial();
        EXPECT_EQ(weakly_exponential(g).value, connected) << render(g);
        EXPECT_EQ(linear_weakexp_via_p2(g), connected) << render(g);
    }
}

TEST(Density, FullRankInheritance) {
    for (const auto& p : full_rank_pairs())
        for (std::int64_t k = 1; k <= 6; ++k) EXPECT_TRUE(full_rank_inheritance_check(p, k).holds) << p.name;
    try {
        full_rank_inheritance_check(parse_descriptor("SL(3,R)"), group("SO+(3,0)"), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFullRank);
    }
}

// ---------------------------------------------------------------- case rules

TEST(Cases, RulesMatchArithmetic) {
    for (std::int64_t k = 1; k <= 24; ++k) {
        const bool odd = k % 2;
        auto st = [&](CaseTag t, std::optional<std::int64_t> n = std::nullopt) {
            return simple_case_verdict(case_descriptor(t, n), k).status;
        };
        auto dense_if = [](bool b) { return b ? DensityStatus::Dense : DensityStatus::NotDense; };
        EXPECT_EQ(st(CaseTag::Case1), dense_if(odd));
        EXPECT_EQ(st(CaseTag::Case4), dense_if(odd));
        for (std::int64_t n : {1, 2, 3, 4, 6}) {
            EXPECT_EQ(st(CaseTag::Case2a, n), dense_if(std::gcd(k, n) == 1));
            EXPECT_EQ(st(CaseTag::Case2b, n), dense_if(odd && std::gcd(k, n) == 1));
        }
        EXPECT_EQ(st(CaseTag::Case3), !odd ? DensityStatus::NotDense
                                           : (k % 3 == 0 ? DensityStatus::Undecided : DensityStatus::Dense));
    }
}

TEST(Cases, SplitCase) {
    for (std::int64_t n : {1, 2, 3, 5})
        for (std::int64_t k = 1; k <= 12; ++k) {
            const auto trivial_f = simple_case_verdict(split_case_descriptor(FGAbelian::cyclic(0), {{n}}, 0), k);
            const auto with_f = simple_case_verdict(split_case_descriptor(FGAbelian::cyclic(0), {{n}}, 1), k);
            const bool coprime = std::gcd(k, n) == 1;
            EXPECT_EQ(trivial_f.status == DensityStatus::Dense, coprime);
            EXPECT_EQ(with_f.status == DensityStatus::Dense, coprime && k % 2 == 1);
        }
}

TEST(Cases, InvalidDescriptors) {
    EXPECT_THROW(parse_case_tag("6"), Error);
    EXPECT_THROW(simple_case_verdict(case_descriptor(CaseTag::Case2a), 2), Error);
    auto bad = case_descriptor(CaseTag::Case3);
    bad.fundamental_group = FGAbelian::cyclic(2);
    EXPECT_THROW(simple_case_verdict(bad, 2), Error);
}

TEST(Cases, TableRowsAndNotes) {
    const auto t1 = case_table("1", std::nullopt);
    EXPECT_EQ(t1.rows.size(), 10u);
    EXPECT_EQ(t1.rows.front().label, "A_n I (n≥2)");
    const auto all = case_table("all", std::nullopt);
    EXPECT_EQ(all.notes.size(), 3u);
    EXPECT_EQ(case_table("all", 4).notes.size(), 0u);
    EXPECT_THROW(case_table("2b", std::nullopt), Error);
    const std::string h = render_case_table_human(case_table("3", std::nullopt), {3, 9});
    EXPECT_NE(h.find("E_6^2 II"), std::string::npos);
    EXPECT_NE(h.find("Undecided"), std::string::npos);
}

// ---------------------------------------------------------------- roots

TEST(Roots, PositiveDiagonalHasTwoSquareRoots) {
    const MatrixGroup G = group("SL(2,R)");
    const CMatrix g = cdiag({4, 0.25});
    const auto c = kth_roots(g, G, 2);
    ASSERT_EQ(c.outcome, RootCertificate::Outcome::RootsFound);
    EXPECT_EQ(c.roots.size(), 2u);
    for (const auto& h : c.roots) {
        EXPECT_LT((h * h - g).norm(), 1e-10);
        EXPECT_LT(membership_residual(h, G), 1e-8);
    }
}

TEST(Roots, NegativeDiagonalHasNoSquareRootButACubeRoot) {
    const MatrixGroup G = group("SL(2,R)");
    const CMatrix g = cdiag({-2, -0.5});
    const auto c2 = kth_roots(g, G, 2);
    EXPECT_EQ(c2.outcome, RootCertificate::Outcome::NoRoot);
    EXPECT_FALSE(c2.obstruction.empty());
    EXPECT_FALSE(restart_root_search(g, G, 2, 30, 1).has_value());
    const auto c3 = kth_roots(g, G, 3);
    ASSERT_EQ(c3.outcome, RootCertificate::Outcome::RootsFound);
    EXPECT_NEAR(c3.roots[0](0, 0).real(), -std::cbrt(2.0), 1e-10);
}

TEST(Roots, RotationsHaveRootsInCompactGroups) {
    const MatrixGroup G = group("SO+(2,0)");
    CMatrix r(2, 2);
    r << 0.6, -0.8, 0.8, 0.6;
    for (int k = 2; k <= 5; ++k) {
        const auto c = kth_roots(r, G, k);
        ASSERT_EQ(c.outcome, RootCertificate::Outcome::RootsFound);
        for (const auto& h : c.roots) EXPECT_LT((matrix_power(h, k) - r).norm(), 1e-9);
    }
}

TEST(Roots, RestartSearchFindsRootsWhereTheyExist) {
    const MatrixGroup G = group("SL(2,R)");
    const CMatrix g = cdiag({4, 0.25});
    const auto h = restart_root_search(g, G, 2, 20, 3);
    ASSERT_TRUE(h.has_value());
    EXPECT_LT((*h * *h - g).norm(), 1e-8);
}

TEST(Roots, RoundTripOnSampledElements) {
    for (const char* name : {"SL(3,R)", "SU(2,1)", "SO+(3,1)", "Sp(2,R)", "SL(2,C)"}) {
        const MatrixGroup G = group(name);
        int checked = 0;
        for (std::uint64_t s = 0; s < 40; ++s) {
            const CMatrix h = sample_matrix(G, 500 + s, 0.5);
            if (!regular_semisimple_matrix(h)) continue;
            for (int k = 2; k <= 3; ++k) {
                const CMatrix g = matrix_power(h, k);
                const auto c = kth_roots(g, G, k);
                ASSERT_EQ(c.outcome, RootCertificate::Outcome::RootsFound) << name;
                double best = 1e300;
                for (const auto& r : c.roots) best = std::min(best, (r - h).norm() / h.norm());
                EXPECT_LT(best, 1e-6) << name << " seed " << s << " k=" << k;
                ++checked;
            }
        }
        EXPECT_GT(checked, 60) << name;
    }
}

TEST(Roots, MonteCarloRootlessSetIsTheTraceBelowMinusTwo) {
    // In SL(2,R), tr(h^2) = tr(h)^2 - 2 >= -2, and hyperbolic elements with negative
    // eigenvalues are exactly those with trace < -2.
    const MatrixGroup G = group("SL(2,R)");
    for (int k : {2, 3, 4}) {
        int mismatches = 0, rootless = 0;
        const auto r = monte_carlo_density(G, k, 400, 9, [&](const CMatrix& g, RootCertificate::Outcome o) {
            const bool no_root = o == RootCertificate::Outcome::NoRoot;
            rootless += no_root;
            mismatches += no_root != (k % 2 == 0 && g.trace().real() < -2.0);
        });
        EXPECT_EQ(mismatches, 0) << "k=" << k;
        EXPECT_EQ(r.inconclusive_fraction, 0.0);
        EXPECT_DOUBLE_EQ(r.certified_rootless_fraction, rootless / 400.0);
        EXPECT_TRUE(monte_carlo_consistent(density_verdict("SL(2,R)", k).status, r));
    }
}

TEST(Roots, CoversHaveNoSampler) {
    try {
        monte_carlo_density(parse_descriptor("universal(PSL(2,R))"), 2, 10, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoMatrixModel);
    }
}

// ---------------------------------------------------------------- reports

TEST(Report, MachineFormatRoundTrips) {
    for (const char* d : {"SL(2,R)", "quotient(universal(PSL(2,R)), 3)", "universal(SL(4,R))", "extension(SU(2,1), 2)"}) {
        const auto r = analyze(parse_descriptor(d), {1, 2, 3, 4, 9});
        const std::string text = render_machine(r);
        EXPECT_EQ(text.rfind("schema=1\n", 0), 0u);
        EXPECT_EQ(parse_machine(text), r) << d;
        EXPECT_EQ(render_machine(parse_machine(text)), text);
    }
    const auto v = analyze(parse_descriptor("SL(2,R)"), {2, 3}, {true, 200, 4});
    EXPECT_EQ(parse_machine(render_machine(v)), v);
}

TEST(Report, MachineKeysAreSorted) {
    const auto text = render_machine(analyze(parse_descriptor("SL(3,R)"), {2}, {true, 100, 2}));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok, prev;
        while (ls >> tok) {
            const auto key = tok.substr(0, tok.find('='));
            EXPECT_LT(prev, key) << line;
            prev = key;
        }
    }
}

TEST(Report, HumanAndMachineAgreeOnVerdicts) {
    const auto r = analyze(parse_descriptor("SL(4,R)"), {1, 2, 3, 4, 5, 6});
    std::multiset<std::string> machine, human;
    std::istringstream m(render_machine(r));
    std::string line;
    while (std::getline(m, line))
        if (line.find("record=verdict") != std::string::npos) {
            const auto s = line.find("status=");
            machine.insert(line.substr(s + 7, line.find(' ', s) - s - 7));
        }
    std::istringstream h(render_human(r));
    while (std::getline(h, line))
        if (line.rfind("  k=", 0) == 0) {
            std::istringstream ls(line);
            std::string k, st;
            ls >> k >> st;
            human.insert(st);
        }
    EXPECT_EQ(machine, human);
    EXPECT_EQ(machine.count("NotDense"), 3u);
}

TEST(Report, MalformedMachineInput) {
    EXPECT_THROW(parse_machine("schema=2\n"), ParseError);
    EXPECT_THROW(parse_machine("schema=1\nrecord=verdict k=2\n"), ParseError);
    EXPECT_THROW(parse_machine("schema=1\n"), ParseError);
}

TEST(Report, VerifyOnCoverNeedsMatrixModel) {
    try {
        analyze(parse_descriptor("universal(PSL(2,R))"), {2}, {true, 10, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoMatrixModel);
    }
}
