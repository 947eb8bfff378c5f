#include <doctest.h>

#include <random>

#include "soliton/diffpoly.hpp"
#include "soliton/loop.hpp"
#include "soliton/mkdv.hpp"

using namespace soliton;

namespace {

DiffPoly u(int der = 0) { return DiffPoly::variable(1, 1, der); }

} // namespace

TEST_SUITE_BEGIN("formats");

TEST_CASE("JSON round trip is bit exact")
{
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> coeff(-20, 20);
    std::uniform_int_distribution<int> den(1, 12);
    for (int it = 0; it < 50; ++it) {
        int rank = 1 + (it % 3);
        DiffPoly p(rank);
        for (int t = 0; t < 5; ++t) {
            auto monos = monomials_of_degree(rank, 1 + (t + it) % 6);
            std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
            p.add_term(monos[pick(rng)], Rational(coeff(rng), den(rng)));
        }
        DiffPoly q = DiffPoly::from_json(p.to_json(), rank);
        CHECK(q == p);
        CHECK(q.to_json() == p.to_json());
    }
}

TEST_CASE("JSON parser rejects malformed input")
{
    CHECK_THROWS_AS(DiffPoly::from_json("{\"not\":\"a list\"}", 1), std::invalid_argument);
    CHECK_THROWS_AS(DiffPoly::from_json("[{\"coeff\":\"1\",\"monomial\":[[2,0,1]]}]", 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiffPoly::from_json("[{\"coeff\":\"1/0\",\"monomial\":[]}]", 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiffPoly::from_json("not json at all", 1), std::invalid_argument);
    CHECK_THROWS_AS(DiffPoly::from_json("[{\"coeff\":\"1\"}]", 1), std::invalid_argument);
}

TEST_CASE("text rendering")
{
    DiffPoly mkdv = u() * u() * u(1) * Rational(3, 8) - u(3) * Rational(1, 4);
    CHECK(mkdv.to_text() == "3/8 u^2 u' - 1/4 u'''");
    CHECK(DiffPoly::zero(1).to_text() == "0");
    CHECK(DiffPoly::constant(1, Rational(-7, 2)).to_text() == "-7/2");
    DiffPoly two_var = DiffPoly::variable(2, 1) * DiffPoly::variable(2, 2, 1);
    CHECK(two_var.to_text() == "u_1 u_2'");
    CHECK(u(4).to_text() == "u^(4)");
}

TEST_CASE("latex rendering collapses the zeroth derivative")
{
    DiffPoly p = u() * u() * u(1) * Rational(3, 8);
    CHECK(p.to_latex() == "\\frac{3}{8} \\, u^{2} u^{(1)}");
    DiffPoly q = DiffPoly::variable(2, 2, 2) * DiffPoly::variable(2, 2, 2);
    CHECK(q.to_latex() == "(u_2^{(2)})^{2}");
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("3/8") == Rational(3, 8));
    CHECK(parse_rational("-12") == Rational(-12));
    CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
    CHECK_THROWS_AS(parse_rational("x/y"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("output is deterministic across construction orders")
{
    DiffPoly a = u() * u(1) + u(2) * Rational(1, 2) + u() * u() * u();
    DiffPoly b = u() * u() * u() + u(2) * Rational(1, 2) + u() * u(1);
    CHECK(a.to_text() == b.to_text());
    CHECK(a.to_json() == b.to_json());
    // loop elements print deterministically too
    Algebra sl2 = make_sl(2);
    std::string dump = (p_element(sl2, -1) + u_element(sl2)).to_json();
    std::string dump2 = (u_element(sl2) + p_element(sl2, -1)).to_json();
    CHECK(dump == dump2);
}

TEST_SUITE_END();
