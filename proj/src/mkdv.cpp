#include "soliton/mkdv.hpp"

#include <cassert>

namespace soliton {

LoopElement ZeroCurvatureSolution::sum() const
{
    LoopElement s;
    bool first = true;
    for (const auto &[m, v] : components) {
        s = first ? v : s + v;
        first = false;
    }
    return s;
}

LoopElement ZeroCurvatureSolution::minus_part() const
{
    LoopElement s;
    bool first = true;
    for (const auto &[m, v] : components) {
        if (m > 0)
            continue;
        s = first ? v : s + v;
        first = false;
    }
    return s;
}

ZeroCurvatureSolution solve_canonical(const Algebra &alg, int n, int cutoff)
{
    if (n < 1 || n % alg.N == 0)
        throw FlowIndexError("flow index " + std::to_string(n) + " is not an exponent of " +
                             alg.cartan.name() + " mod its Coxeter number");
    if (cutoff < 1)
        throw std::invalid_argument("cutoff must be >= 1");

    LoopElement u = u_element(alg);
    ZeroCurvatureSolution sol;
    sol.flow_index = n;
    sol.cutoff = cutoff;

    LoopElement perp = LoopElement::zero(alg); // perpendicular part in degree m
    for (int m = -n; m <= cutoff; ++m) {
        LoopElement ab = LoopElement::zero(alg);
        if (m == -n) {
            ab = p_element(alg, -n);
        } else if (m % alg.N != 0) {
            // d_z of the abelian coefficient equals minus the p_m-component
            // of [u, perp]; the canonical solution takes the antiderivative
            // with zero constant term.
            LoopElement bu = bracket(u, perp);
            DiffPoly coeff = inner_product(bu, p_element(alg, -m)) * Rational(1, alg.N);
            auto q = antiderivative(-coeff);
            if (!q)
                throw AntiderivativeObstruction(
                    "recursion residual is not a total derivative in degree " +
                    std::to_string(m) + ": " + coeff.to_text());
            if (!q->is_zero())
                ab = p_element(alg, m).scale(*q);
        }
        LoopElement vm = ab + perp;
        sol.components.emplace(m, vm);
        if (m < cutoff) {
            LoopElement rhs = -(perp.d_z()) - split(alg, bracket(u, vm)).perp_part;
            perp = inv_ad_pm1(alg, rhs);
        }
    }
    return sol;
}

MkdvFlow mkdv_flow(const Algebra &alg, int n, int cutoff)
{
    ZeroCurvatureSolution sol = solve_canonical(alg, n, std::max(cutoff, 1));
    // Orientation of the n-th time: the flow is generated by eps_n p_{-n},
    // which gives the n-th equation its classical form (the sl_2 dispersive
    // coefficients follow (-1/4)^((n-1)/2), so d_3 u = 3/8 u^2 u' - 1/4 u''').
    Rational eps = ((n - 1) / 2) % 2 == 0 ? 1 : -1;
    LoopElement minus = sol.minus_part().scale(eps);
    LoopElement u = u_element(alg);
    LoopElement rhs = minus.d_z() + bracket(p_element(alg, -1) + u, minus);

    for (int d : rhs.principal_degrees())
        if (d != 0 && !rhs.component(d).is_zero())
            throw NonCartanResidual("flow right-hand side has a component in degree " +
                                    std::to_string(d));

    MkdvFlow flow;
    flow.flow_index = n;
    flow.minus_part = minus;
    for (int i = 1; i <= alg.rank(); ++i) {
        // (alpha_i, rhs) with alpha_i realized as E_ii - E_{i+1,i+1}
        DiffPoly one = DiffPoly::constant(alg.rank(), 1);
        LoopElement alpha(alg.N, alg.rank());
        alpha.add(i, i, 0, one);
        alpha.add(i + 1, i + 1, 0, -one);
        flow.derivation.images.push_back(inner_product(alpha, rhs));
    }
    return flow;
}

LoopElement zero_curvature_residual(const Algebra &alg, const MkdvFlow &flow_m,
                                    const MkdvFlow &flow_n)
{
    (void)alg;
    return flow_n.minus_part.apply(flow_m.derivation) -
           flow_m.minus_part.apply(flow_n.derivation) +
           bracket(flow_m.minus_part, flow_n.minus_part);
}

LoopElement commutation_residual(const Algebra &alg, const ZeroCurvatureSolution &sol)
{
    LoopElement v = sol.sum();
    LoopElement u = u_element(alg);
    LoopElement res = v.d_z() + bracket(p_element(alg, -1) + u, v);
    return res.truncate_degrees(-sol.flow_index - 1, sol.cutoff - 1);
}

} // namespace soliton
