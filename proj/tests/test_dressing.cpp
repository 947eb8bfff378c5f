#include <doctest.h>

#include "soliton/dressing.hpp"
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

} // namespace

TEST_SUITE_BEGIN("dressing");

TEST_CASE("first log component solves [p_{-1}, m_1] + u = 0")
{
    for (int n : {2, 3}) {
        Algebra alg = make_sl(n);
        DressingOperator d = dressing_operator(alg, 2);
        CHECK(bracket(p_element(alg, -1), d.log_parts[0]) == -u_element(alg));
        CHECK(split(alg, d.log_parts[0]).ab_part.is_zero());
    }
    // for sl2 the closed form is m_1 = u q_1 / 4
    Algebra sl2 = make_sl(2);
    DressingOperator d = dressing_operator(sl2, 1);
    CHECK(d.log_parts[0] == q_sl2(sl2, 0).scale(u() * Rational(1, 4)));
}

TEST_CASE("every log component stays in the image of ad p_{-1}")
{
    Algebra sl3 = make_sl(3);
    DressingOperator d = dressing_operator(sl3, 4);
    for (const auto &part : d.log_parts)
        CHECK(split(sl3, part).ab_part.is_zero());
}

TEST_CASE("first density for sl2 is u^2/8")
{
    Algebra sl2 = make_sl(2);
    DressingOperator d = dressing_operator(sl2, 3);
    CHECK(d.h_densities.at(1) == u() * u() * Rational(1, 8));
    CHECK(d.h_densities.count(2) == 0);
}

TEST_CASE("conjugation identity holds on all reliable degrees")
{
    for (int n : {2, 3}) {
        Algebra alg = make_sl(n);
        DressingOperator d = dressing_operator(alg, 4);
        CHECK(dressing_residual(alg, d, 3).is_zero());
    }
}

TEST_CASE("truncated exponential is invertible up to the cutoff")
{
    Algebra sl3 = make_sl(3);
    DressingOperator d = dressing_operator(sl3, 3);
    LoopElement m = d.log_m();
    LoopElement prod = matmul(exp_truncated(sl3, m, 3), exp_truncated(sl3, -m, 3))
                           .truncate_degrees(0, 3);
    LoopElement identity(sl3.N, sl3.rank());
    for (int i = 1; i <= sl3.N; ++i)
        identity.add(i, i, 0, DiffPoly::constant(sl3.rank(), 1));
    CHECK(prod == identity);
}

TEST_CASE("minus part of the conjugated generator at n = 1 is p_{-1} + u")
{
    for (int n : {2, 3, 4}) {
        Algebra alg = make_sl(n);
        DressingOperator d = dressing_operator(alg, 2);
        LoopElement conj = conjugated_generator(alg, d, 1);
        CHECK(conj.truncate_degrees(-1, 0) == p_element(alg, -1) + u_element(alg));
    }
}

TEST_CASE("dressing and recursion produce the same conjugated generators")
{
    // the central two-implementations cross-check
    for (auto [n, flows] : {std::pair{2, std::vector{1, 3}}, std::pair{3, std::vector{1, 2}}}) {
        Algebra alg = make_sl(n);
        for (int flow : flows) {
            DressingOperator d = dressing_operator(alg, flow + 1);
            LoopElement conj = conjugated_generator(alg, d, flow);
            ZeroCurvatureSolution sol = solve_canonical(alg, flow, 1);
            for (int deg = -flow; deg <= std::min(1, d.cutoff - flow); ++deg) {
                CAPTURE(n);
                CAPTURE(flow);
                CAPTURE(deg);
                CHECK(conj.component(deg) == sol.components.at(deg));
            }
        }
    }
}

TEST_CASE("fifth sl2 generator agrees between the two constructions")
{
    // independent oracle for the fifth flow
    Algebra sl2 = make_sl(2);
    DressingOperator d = dressing_operator(sl2, 6);
    LoopElement conj = conjugated_generator(sl2, d, 5);
    ZeroCurvatureSolution sol = solve_canonical(sl2, 5, 1);
    for (int deg = -5; deg <= 1; ++deg)
        CHECK(conj.component(deg) == sol.components.at(deg));
}

TEST_CASE("cutoff guard")
{
    Algebra sl2 = make_sl(2);
    DressingOperator d = dressing_operator(sl2, 2);
    CHECK_THROWS_AS(conjugated_generator(sl2, d, 3), CutoffTooSmall);
    CHECK_THROWS_AS(kdv_variable(sl2, dressing_operator(sl2, 1), 1), CutoffTooSmall);
}

TEST_CASE("sl2 KdV variable")
{
    Algebra sl2 = make_sl(2);
    DressingOperator d = dressing_operator(sl2, 2);
    CHECK(kdv_variable(sl2, d, 1) == u() * u() * Rational(1, 4) + u(1) * Rational(1, 2));
}

TEST_CASE("sl3 KdV variables are weighted homogeneous of degree d_i + 1")
{
    Algebra sl3 = make_sl(3);
    DressingOperator d = dressing_operator(sl3, 3);
    for (int i = 1; i <= 2; ++i) {
        DiffPoly v = kdv_variable(sl3, d, i);
        REQUIRE(!v.is_zero());
        CHECK(v.is_homogeneous());
        CHECK(v.degree() == i + 1);
    }
}

TEST_SUITE_END();
