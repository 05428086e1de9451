#include <random>

#include <gtest/gtest.h>

#include <filtgr/bimodule.hpp>
#include <filtgr/workbench.hpp>

using namespace filtgr;
using P = Poly<Rational>;
using M = PolyMatrix<Rational>;

namespace {

M unit_x(int n, int i, int j, int k) { return M::unit(n, 1, i, j, P::monomial(1, k)); }

BimoduleSpec<Rational> n_over_a(int degcap = 18)
{
    auto r = make_example<Rational>("R_2x2", degcap);
    return make_bimodule("N over R/N", r.algebra, r.ideal("N"), {}, r.ideal("N"));
}

BimoduleSpec<Rational> r_over_c(int degcap = 18)
{
    auto r = make_example<Rational>("R_2x2", degcap);
    auto c = make_example<Rational>("C_diag", degcap);
    return module_over_subalgebra("R over C", r.algebra, c.algebra);
}

/// k[x] acting by scalars on an n x n ambient; `killed` entries (i, j, from)
/// are cut down to x^from by quotienting the ambient.
BimoduleSpec<Rational> scalar_fixture(int n, int degcap, const std::vector<std::tuple<int, int, int>>& killed,
                                      const std::vector<M>& carrier_gens)
{
    auto base = Ambient<Rational>::make({n, 1, degcap, false});
    Echelon<Rational> mod(base->ncols());
    for (const auto& [i, j, from] : killed)
        for (int k = from; k <= degcap; ++k) mod.insert(base->encode(unit_x(n, i, j, k)));
    auto q = base->quotient(mod);
    std::vector<P> d(static_cast<std::size_t>(n), P::monomial(1, 1));
    AlgebraPresentation<Rational> a{q, {M::diag(d)}, true};
    return {"fixture", q, algebra_closure(a).space, Subspace<Rational>(q), span(carrier_gens, q)};
}

M scalar_x(int n, int k)
{
    std::vector<P> d(static_cast<std::size_t>(n), P::monomial(1, k));
    return M::diag(d);
}

} // namespace

TEST(FreeRank, NLeftIsOneWithBasisE12)
{
    auto m = n_over_a();
    auto [res, basis] = free_rank(m, Side::left, 8);
    EXPECT_EQ(res.outcome, FreeOutcome::free);
    ASSERT_EQ(res.rank(), 1);
    EXPECT_EQ(basis[0], M::unit(2, 1, 0, 1));
}

TEST(FreeRank, NRightIsTwoWithBasisE12XE12)
{
    auto m = n_over_a();
    auto [res, basis] = free_rank(m, Side::right, 8);
    EXPECT_EQ(res.outcome, FreeOutcome::free);
    ASSERT_EQ(res.rank(), 2);
    EXPECT_EQ(basis[0], M::unit(2, 1, 0, 1));
    EXPECT_EQ(basis[1], unit_x(2, 0, 1, 1));
}

TEST(FreeRank, ROverCLeftTwoRightThree)
{
    auto m = r_over_c();
    auto [l, lb] = free_rank(m, Side::left, 8);
    auto [r, rb] = free_rank(m, Side::right, 8);
    EXPECT_EQ(l.outcome, FreeOutcome::free);
    EXPECT_EQ(r.outcome, FreeOutcome::free);
    EXPECT_EQ(l.rank(), 2);
    EXPECT_EQ(r.rank(), 3);
    EXPECT_EQ(lb, (std::vector<M>{M::identity(2, 1), M::unit(2, 1, 0, 1)}));
    EXPECT_EQ(rb, (std::vector<M>{M::identity(2, 1), M::unit(2, 1, 0, 1), unit_x(2, 0, 1, 1)}));
}

TEST(FreeRank, DependentCandidateReportsRelation)
{
    auto m = n_over_a();
    auto [res, basis] = free_rank(m, Side::left, 8, std::vector<M>{M::unit(2, 1, 0, 1), unit_x(2, 0, 1, 1)});
    EXPECT_EQ(res.outcome, FreeOutcome::relation_found);
    EXPECT_TRUE(res.relation.has_value());
}

TEST(FreeRank, NonSpanningCandidateIsInconclusiveNotNonFree)
{
    auto m = n_over_a();
    auto [res, basis] = free_rank(m, Side::left, 8, std::vector<M>{unit_x(2, 0, 1, 1)});
    EXPECT_EQ(res.outcome, FreeOutcome::inconclusive);
}

TEST(FreeRank, ShallowTruncationIsInconclusive)
{
    // acting degree too small to reach x^8 e12 from e12 on the left
    auto m = n_over_a(10);
    auto res = verify_free_basis(m, Side::left, {M::unit(2, 1, 0, 1)}, 8);
    EXPECT_EQ(res.outcome, FreeOutcome::inconclusive);
}

TEST(FreeRank, CertificateReverifiesAndTamperFails)
{
    auto m = n_over_a();
    auto [res, basis] = free_rank(m, Side::right, 8);
    ASSERT_EQ(res.outcome, FreeOutcome::free);
    EXPECT_EQ(verify_free_basis(m, Side::right, basis, 8).outcome, FreeOutcome::free);
    basis.pop_back();
    EXPECT_NE(verify_free_basis(m, Side::right, basis, 8).outcome, FreeOutcome::free);
}

TEST(Bimodule, AnnihilatorIsChecked)
{
    auto r = make_example<Rational>("R_2x2", 10);
    // R/0 acting on N: the zero ideal is fine; N acting on R is not an annihilator
    EXPECT_NO_THROW(make_bimodule("N over R", r.algebra, {}, {}, r.ideal("N")));
    EXPECT_THROW(make_bimodule("R over R/N", r.algebra, r.ideal("N"), {}, {r.element("one")}), BimoduleError);
}

TEST(GoldieRank, NLeftOneRightTwo)
{
    auto m = n_over_a();
    auto [l, lf] = goldie_rank(m, Side::left, 8);
    auto [r, rf] = goldie_rank(m, Side::right, 8);
    EXPECT_EQ(l.rank, 1);
    EXPECT_EQ(r.rank, 2);
    EXPECT_TRUE(l.stabilized);
    EXPECT_TRUE(r.stabilized);
}

TEST(GoldieRank, TorsionModuleHasRankZero)
{
    auto m = scalar_fixture(2, 8, {{0, 1, 1}}, {M::unit(2, 1, 0, 1)});
    EXPECT_EQ(goldie_rank(m, Side::left, 4).first.rank, 0);
}

TEST(GoldieRank, NonDomainRejected)
{
    auto r = make_example<Rational>("R_2x2", 10);
    auto m = make_bimodule("N over R", r.algebra, {}, {}, r.ideal("N"));
    EXPECT_THROW(goldie_rank(m, Side::left, 4), NotADomain);
}

TEST(GoldieRank, EqualsFreeRankOnExamples)
{
    for (auto m : {n_over_a(), r_over_c()}) {
        for (Side s : {Side::left, Side::right}) {
            auto f = free_rank(m, s, 8).first;
            ASSERT_EQ(f.outcome, FreeOutcome::free);
            EXPECT_EQ(goldie_rank(m, s, 8).first.rank, f.rank()) << m.name << " " << to_string(s);
        }
    }
}

TEST(Torsion, NHasNoTorsion)
{
    auto m = n_over_a();
    auto r = make_example<Rational>("R_2x2", 18);
    EXPECT_TRUE(torsion_part(m, Side::left, {r.element("alpha")}, 8).is_zero());
    EXPECT_TRUE(torsion_part(m, Side::right, {r.element("alpha")}, 8).is_zero());
}

TEST(Torsion, ModuloASquaredIsAllTorsion)
{
    auto m = scalar_fixture(2, 8, {{0, 1, 2}}, {M::unit(2, 1, 0, 1), unit_x(2, 0, 1, 1)});
    auto t = torsion_part(m, Side::left, {scalar_x(2, 1)}, 4);
    EXPECT_EQ(t.dim(), 2);
    EXPECT_TRUE(t.contains(m.carrier));
}

TEST(Torsion, FreePlusTorsionDetectsSummand)
{
    std::vector<M> gens{M::unit(3, 1, 0, 2)};
    for (int k = 0; k <= 6; ++k) gens.push_back(unit_x(3, 0, 1, k));
    auto m = scalar_fixture(3, 12, {{0, 2, 1}}, gens);
    auto t = torsion_part(m, Side::left, {scalar_x(3, 1)}, 6);
    EXPECT_EQ(t.dim(), 1);
    EXPECT_TRUE(t.member(M::unit(3, 1, 0, 2)));
}

TEST(Torsion, ZeroDivisorTestElementRejected)
{
    auto m = n_over_a();
    EXPECT_THROW(torsion_part(m, Side::left, {M::unit(2, 1, 0, 1)}, 4), BimoduleError);
}

TEST(RankReport, CentralExampleStrictInequality)
{
    auto m = n_over_a();
    auto r = make_example<Rational>("R_2x2", 18);
    auto rep = rank_report(m, 8, {r.element("alpha")});
    ASSERT_TRUE(rep.left_free_rank() && rep.right_free_rank());
    EXPECT_EQ(*rep.left_free_rank(), 1);
    EXPECT_EQ(*rep.right_free_rank(), 2);
    EXPECT_LT(*rep.left_free_rank(), *rep.right_free_rank());
    EXPECT_EQ(rep.left_goldie, 1);
    EXPECT_EQ(rep.right_goldie, 2);
    EXPECT_EQ(rep.left_torsion_dim, 0);
}

// --- randomized property ---------------------------------------------------
//
// C = {diag(f(x), f(x^p), f(x^q))} acting on a span of upper matrix-unit
// lines k[x] e_ij. Left action on line (i, j) is through the i-th twist,
// right action through the j-th, so the free rank on a side is the sum of
// the twists that side sees.

TEST(BimoduleProperty, TwistedDiagonalRanksAndCertificates)
{
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> tw(1, 3), coin(0, 1);
    const int d = 3;
    for (int trial = 0; trial < 100; ++trial) {
        const int p = tw(rng), q = tw(rng);
        const int twist[3] = {1, p, q};
        const int degcap = 3 * (d + 3);
        auto amb = Ambient<Rational>::make({3, 1, degcap, false});
        AlgebraPresentation<Rational> c{amb, {M::diag({P::monomial(1, 1), P::monomial(1, p), P::monomial(1, q)})}, true};
        std::vector<std::pair<int, int>> lines;
        for (auto e : {std::make_pair(0, 1), std::make_pair(0, 2), std::make_pair(1, 2)})
            if (coin(rng)) lines.push_back(e);
        if (lines.empty()) lines.emplace_back(0, 1);
        Subspace<Rational> carrier(amb);
        int left_expected = 0, right_expected = 0;
        for (const auto& [i, j] : lines) {
            for (int k = 0; k <= degcap; ++k) carrier.add(unit_x(3, i, j, k));
            left_expected += twist[i];
            right_expected += twist[j];
        }
        BimoduleSpec<Rational> m{"twisted", amb, algebra_closure(c).space, Subspace<Rational>(amb), carrier};
        auto [l, lb] = free_rank(m, Side::left, d);
        auto [r, rb] = free_rank(m, Side::right, d);
        ASSERT_EQ(l.outcome, FreeOutcome::free) << trial;
        ASSERT_EQ(r.outcome, FreeOutcome::free) << trial;
        EXPECT_EQ(l.rank(), left_expected) << trial;
        EXPECT_EQ(r.rank(), right_expected) << trial;
        // certificates re-verify from the basis alone
        EXPECT_EQ(verify_free_basis(m, Side::left, lb, d).outcome, FreeOutcome::free) << trial;
        EXPECT_EQ(verify_free_basis(m, Side::right, rb, d).outcome, FreeOutcome::free) << trial;
        // a duplicated basis element is always caught as a relation
        auto dup = lb;
        dup.push_back(lb.front());
        EXPECT_EQ(verify_free_basis(m, Side::left, dup, d).outcome, FreeOutcome::relation_found) << trial;
        EXPECT_EQ(goldie_rank(m, Side::right, d).first.rank, right_expected) << trial;
    }
}
