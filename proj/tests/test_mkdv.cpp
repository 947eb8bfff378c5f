#include <doctest.h>

#include "soliton/mkdv.hpp"

using namespace soliton;

namespace {

DiffPoly u(int der = 0) { return DiffPoly::variable(1, 1, der); }

LoopElement q_sl2(const Algebra &a, int j)
{
    DiffPoly one = DiffPoly::constant(a.rank(), 1);
    LoopElement e(a.N, a.rank());
    e.add(1, 2, j, one);
    e.add(2, 1, j + 1, -one);
    return e;
}

LoopElement r_sl2(const Algebra &a, int j)
{
    DiffPoly one = DiffPoly::constant(a.rank(), 1);
    LoopElement e(a.N, a.rank());
    e.add(1, 1, j, one);
    e.add(2, 2, j, -one);
    return e;
}

} // namespace

TEST_SUITE_BEGIN("mkdv");

TEST_CASE("canonical solution for sl2, n = 3: all four intermediate coefficients")
{
    Algebra sl2 = make_sl(2);
    ZeroCurvatureSolution sol = solve_canonical(sl2, 3, 1);

    REQUIRE(sol.components.at(-3) == p_element(sl2, -3));

    // V_{-2} = R_{-2} r_{-2} with R_{-2} = u/2
    CHECK(sol.components.at(-2) == r_sl2(sl2, -1).scale(u() * Rational(1, 2)));

    // V_{-1} = P_{-1} p_{-1} + Q_{-1} q_{-1}; the pairings (x, p_1) = 2,
    // (x, q_{-1}-dual) recover the coefficients
    LoopElement v1 = sol.components.at(-1);
    DiffPoly p_coeff = inner_product(v1, p_element(sl2, 1)) * Rational(1, 2);
    DiffPoly q_coeff = inner_product(v1, q_sl2(sl2, 0)) * Rational(-1, 2);
    CHECK(p_coeff == u() * u() * Rational(-1, 8));
    CHECK(q_coeff == u(1) * Rational(1, 4));

    // V_0 = R_0 r_0 with R_0 = -u^3/16 + u''/8
    DiffPoly r_coeff = inner_product(sol.components.at(0), r_sl2(sl2, 0)) * Rational(1, 2);
    CHECK(r_coeff == u() * u() * u() * Rational(-1, 16) + u(2) * Rational(1, 8));
}

TEST_CASE("minus part of the first flow is p_{-1} + u")
{
    for (int n : {2, 3}) {
        Algebra alg = make_sl(n);
        ZeroCurvatureSolution sol = solve_canonical(alg, 1, 1);
        CHECK(sol.minus_part() == p_element(alg, -1) + u_element(alg));
    }
}

TEST_CASE("flow indices outside I are rejected")
{
    Algebra sl2 = make_sl(2);
    CHECK_THROWS_AS(solve_canonical(sl2, 2, 1), FlowIndexError);
    CHECK_THROWS_AS(mkdv_flow(make_sl(3), 3), FlowIndexError);
}

TEST_CASE("mkdv flows for sl2")
{
    Algebra sl2 = make_sl(2);
    MkdvFlow f1 = mkdv_flow(sl2, 1);
    CHECK(f1.derivation.images[0] == u(1));

    MkdvFlow f3 = mkdv_flow(sl2, 3);
    CHECK(f3.derivation.images[0] ==
          u() * u() * u(1) * Rational(3, 8) - u(3) * Rational(1, 4));
}

TEST_CASE("flow images are weighted homogeneous of degree n + 1")
{
    Algebra sl3 = make_sl(3);
    for (int n : {1, 2, 4}) {
        MkdvFlow f = mkdv_flow(sl3, n);
        for (const auto &im : f.derivation.images) {
            REQUIRE(!im.is_zero());
            CHECK(im.is_homogeneous());
            CHECK(im.degree() == n + 1);
        }
    }
    MkdvFlow f5 = mkdv_flow(make_sl(2), 5);
    CHECK(f5.derivation.images[0].is_homogeneous());
    CHECK(f5.derivation.images[0].degree() == 6);
}

TEST_CASE("canonicity: pairings against degree-m basis elements are homogeneous of degree n - m")
{
    for (auto [n, flow] : {std::pair{2, 1}, std::pair{2, 3}, std::pair{3, 2}}) {
        Algebra alg = make_sl(n);
        ZeroCurvatureSolution sol = solve_canonical(alg, flow, 1);
        LoopElement v = sol.sum();
        for (int m = -1; m <= flow; ++m) {
            for (const auto &b : degree_basis(alg, m)) {
                DiffPoly f = inner_product(b, v); // picks the degree -m component
                if (f.is_zero())
                    continue;
                CHECK(f.is_homogeneous());
                CHECK(f.degree() == flow - m);
            }
        }
    }
}

TEST_CASE("commutation residual vanishes strictly below the cutoff")
{
    for (auto [n, flow, cutoff] :
         {std::tuple{2, 3, 1}, std::tuple{2, 1, 3}, std::tuple{3, 2, 2}}) {
        Algebra alg = make_sl(n);
        ZeroCurvatureSolution sol = solve_canonical(alg, flow, cutoff);
        CHECK(commutation_residual(alg, sol).is_zero());
    }
}

TEST_CASE("zero curvature residuals vanish")
{
    Algebra sl2 = make_sl(2);
    MkdvFlow f1 = mkdv_flow(sl2, 1);
    MkdvFlow f3 = mkdv_flow(sl2, 3);
    MkdvFlow f5 = mkdv_flow(sl2, 5);
    CHECK(zero_curvature_residual(sl2, f1, f3).is_zero());
    CHECK(zero_curvature_residual(sl2, f3, f3).is_zero());
    CHECK(zero_curvature_residual(sl2, f3, f5).is_zero());
}

TEST_CASE("pairwise commutativity of the flow derivations")
{
    Algebra sl2 = make_sl(2);
    CHECK(commutator(mkdv_flow(sl2, 1).derivation, mkdv_flow(sl2, 3).derivation).is_zero());
    CHECK(commutator(mkdv_flow(sl2, 3).derivation, mkdv_flow(sl2, 5).derivation).is_zero());

    Algebra sl3 = make_sl(3);
    CHECK(commutator(mkdv_flow(sl3, 1).derivation, mkdv_flow(sl3, 2).derivation).is_zero());
    CHECK(commutator(mkdv_flow(sl3, 2).derivation, mkdv_flow(sl3, 4).derivation).is_zero());

    Algebra sl4 = make_sl(4);
    CHECK(commutator(mkdv_flow(sl4, 2).derivation, mkdv_flow(sl4, 3).derivation).is_zero());
}

TEST_SUITE_END();
