#include <random>

#include <gtest/gtest.h>

#include <filtgr/dualizing.hpp>

#include "oracle.hpp"

using namespace filtgr;
using P = Poly<Rational>;
using M = PolyMatrix<Rational>;

namespace {

M xe12(int k) { return M::unit(2, 1, 0, 1, P::monomial(1, k)); }
M cdiag(int k) { return M::diag({P::monomial(1, k), P::monomial(1, 2 * k)}); }

struct Fixture {
    CenteredRing<Rational> cr;
    AlgebraPresentation<Rational> c;
    explicit Fixture(int d, bool perturbed = false) : Fixture(dualizing_fixture<Rational>(d, perturbed)) {}
    explicit Fixture(std::pair<CenteredRing<Rational>, AlgebraPresentation<Rational>> p)
        : cr(std::move(p.first)), c(std::move(p.second))
    {
    }
};

} // namespace

TEST(FreeCoords, RightCoordinatesOfR)
{
    Fixture f(4);
    FreeCoords<Rational> rc(f.cr.ambient(), f.cr.gamma, {M::identity(2, 1), xe12(0), xe12(1)}, Side::right);
    // x^5 e12 = (x e12) diag(x^2, x^4): third coordinate x^2
    auto c = rc.coords(xe12(5));
    EXPECT_TRUE(c[0].is_zero_poly());
    EXPECT_TRUE(c[1].is_zero_poly());
    EXPECT_EQ(c[2], P::monomial(1, 2));
    // diag(x^3, x^6) + x^4 e12 = 1 * gamma^3 + e12 * gamma^2
    auto d = rc.coords(cdiag(3) + xe12(4));
    EXPECT_EQ(d[0], P::monomial(1, 3));
    EXPECT_EQ(d[1], P::monomial(1, 2));
    EXPECT_TRUE(d[2].is_zero_poly());
}

TEST(FreeCoords, DependentBasisRejected)
{
    Fixture f(2);
    EXPECT_THROW(FreeCoords<Rational>(f.cr.ambient(), f.cr.gamma, {xe12(0), xe12(2)}, Side::right), FreenessMissing);
}

TEST(HomOverCenter, RightDualIsRModuloE12R)
{
    Fixture f(10);
    auto h = hom_over_center(f.cr, f.c, Side::right, 10);
    EXPECT_EQ(h.rank, 3);
    EXPECT_EQ(h.dims, h.free_prediction);
    EXPECT_TRUE(h.presentation_ok);
    EXPECT_NE(h.presentation.find("R/aR"), std::string::npos);
}

TEST(HomOverCenter, LeftDualHasTwoGenerators)
{
    Fixture f(10);
    auto h = hom_over_center(f.cr, f.c, Side::left, 10);
    EXPECT_EQ(h.rank, 2);
    EXPECT_EQ(h.dims, h.free_prediction);
    EXPECT_TRUE(h.presentation_ok);
}

TEST(HomOverCenter, COverItselfIsC)
{
    auto c = make_example<Rational>("C_diag", 20);
    auto cr = centered_ring("C", c.algebra, c.element("alpha"));
    for (Side s : {Side::left, Side::right}) {
        auto h = hom_over_center(cr, c.algebra, s, 4);
        EXPECT_EQ(h.rank, 1);
        EXPECT_EQ(h.presentation, "R");
        EXPECT_TRUE(h.presentation_ok);
    }
}

TEST(Idealizer, OfE12IsDisplayedShape)
{
    Fixture f(6);
    for (int top : {4, 9, 13}) {
        auto ip = idealizer(f.cr, xe12(0), top);
        EXPECT_EQ(ip.idealizer, displayed_idealizer(f.cr.ambient(), top)) << top;
        EXPECT_TRUE(ip.multiplicatively_closed);
        EXPECT_TRUE(ip.ideal_two_sided);
        // oracle: f(x^2) diagonal count + all x^j e12
        EXPECT_EQ(ip.idealizer.dim(), top / 4 + 1 + top + 1);
    }
}

TEST(Idealizer, OfOneAndZeroIsR)
{
    Fixture f(4);
    const int top = 8;
    auto r_top = f.cr.closure.truncated_to_degree(top);
    EXPECT_EQ(idealizer(f.cr, M::identity(2, 1), top).idealizer, r_top);
    EXPECT_EQ(idealizer(f.cr, M::zero(2, 1), top).idealizer, r_top);
}

TEST(DoublingMap, Examples)
{
    EXPECT_EQ(doubling_map(M::identity(2, 1)), M::identity(2, 1));
    EXPECT_EQ(doubling_map(cdiag(1)), M::diag({P::monomial(1, 2), P::monomial(1, 4)}));
    EXPECT_EQ(doubling_map(xe12(3)), xe12(7));
}

TEST(VerifyDualizing, AllStagesPassAtDepthTen)
{
    auto rep = verify_dualizing<Rational>(10);
    ASSERT_EQ(rep.stages.size(), 4u);
    for (const auto& st : rep.stages) {
        EXPECT_EQ(st.status, StageStatus::pass) << st.name << ": " << st.detail;
        for (const auto& [name, ok] : st.checks) EXPECT_TRUE(ok) << st.name << " / " << name;
    }
    EXPECT_EQ(rep.overall, StageStatus::pass);
    EXPECT_EQ(rep.left_rank, 2);
    EXPECT_EQ(rep.right_rank, 3);
    EXPECT_EQ(rep.a, xe12(0).str());
    EXPECT_EQ(rep.idealizer_depth, 21);
    // oracle: dim R_{<=e} = floor(e/2)+1 + e+1, dim e12R_{<=e} = floor(e/2)+1
    for (const auto& row : rep.d2_dims) {
        const int e = row[0];
        EXPECT_EQ(row[1], r2x2_dim_upto(e));
        EXPECT_EQ(row[2], e / 2 + 1);
        EXPECT_EQ(row[3], e + 1);
        EXPECT_EQ(row[4], e + 1);
    }
}

TEST(VerifyDualizing, PerturbedGeneratorFailsEndStage)
{
    auto rep = verify_dualizing<Rational>(10, true);
    EXPECT_EQ(rep.stages[0].status, StageStatus::pass);
    EXPECT_EQ(rep.stages[1].status, StageStatus::pass);
    EXPECT_EQ(rep.stages[2].status, StageStatus::fail);
    EXPECT_EQ(rep.stages[3].status, StageStatus::not_run);
    EXPECT_EQ(rep.overall, StageStatus::fail);
    EXPECT_EQ(rep.a, xe12(1).str());
}

TEST(VerifyDualizing, ShallowDepthNeverFails)
{
    for (int d : {0, 1, 2, 3}) {
        auto rep = verify_dualizing<Rational>(d);
        EXPECT_NE(rep.overall, StageStatus::fail) << d;
        for (const auto& st : rep.stages) EXPECT_NE(st.status, StageStatus::fail) << d << " " << st.name;
    }
}

TEST(VerifyDualizing, CapTooSmallIsInconclusive)
{
    auto rep = verify_dualizing<Rational>(6, false, 14);
    EXPECT_EQ(rep.overall, StageStatus::inconclusive);
}

// --- randomized property -----------------------------------------------------

TEST(DualizingProperty, DoublingMapIsARingMapIntoTheIdealizer)
{
    Fixture f(6);
    const auto aR = one_sided_multiples(f.cr, xe12(0), Side::right);
    const auto shape = displayed_idealizer(f.cr.ambient(), f.cr.cap());
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random_poly = [&](int deg) {
        std::vector<Rational> c;
        for (int i = 0; i <= deg; ++i) c.push_back(Rational(coef(rng)));
        return P::from_coeffs(c);
    };
    // diag(f, f(x^2)) + g e12 with deg f, deg g <= 2
    auto random_element = [&]() {
        P fp = random_poly(2);
        return M(M::diag({fp, substitute_x_power(fp, 2)}) + M::unit(2, 1, 0, 1, random_poly(2)));
    };
    for (int trial = 0; trial < 100; ++trial) {
        M u = random_element(), v = random_element();
        ASSERT_TRUE(f.cr.closure.member(u)) << trial;
        EXPECT_EQ(doubling_map(M(u * v)), doubling_map(u) * doubling_map(v)) << trial;
        EXPECT_TRUE(shape.member(doubling_map(u))) << trial;
        // on diagonal data the map is f(x) -> f(x^2)
        M diag_u = M::diag({u.at(0, 0), u.at(1, 1)});
        EXPECT_EQ(doubling_map(diag_u), diag_u.map_entries([](const P& p) { return substitute_x_power(p, 2); }));
        // a nonzero odd upper part never lands in e12 k[x^2]
        if (!u.at(0, 1).is_zero_poly()) {
            EXPECT_FALSE(aR.member(doubling_map(M::unit(2, 1, 0, 1, u.at(0, 1))))) << trial;
        }
    }
}
