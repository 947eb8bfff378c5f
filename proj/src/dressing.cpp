#include "soliton/dressing.hpp"

namespace soliton {

namespace {

// e^{-ad m}(p_{-1} + u) + sum_k (-1)^k (ad m)^k (d_z m) / (k+1)!,
// the conjugate of d_z + p_{-1} + u by exp(m), minus d_z.
// Exact on principal degrees <= max_degree when m is complete up to
// degree max_degree + 1.
LoopElement conjugated_connection(const Algebra &alg, const LoopElement &m, int max_degree)
{
    LoopElement a = p_element(alg, -1) + u_element(alg);
    LoopElement sum = a;
    LoopElement term = a;
    Rational coeff = 1;
    for (int k = 1; k - 1 <= max_degree + 1; ++k) {
        term = bracket(m, term).truncate_degrees(-1, max_degree);
        if (term.is_zero())
            break;
        coeff /= k;
        sum = sum + term.scale(k % 2 == 0 ? coeff : -coeff);
    }

    LoopElement dm = m.d_z().truncate_degrees(1, max_degree);
    sum = sum + dm;
    term = dm;
    coeff = 1;
    for (int k = 1; k + 1 <= max_degree; ++k) {
        term = bracket(m, term).truncate_degrees(1, max_degree);
        if (term.is_zero())
            break;
        coeff /= (k + 1);
        sum = sum + term.scale(k % 2 == 0 ? coeff : -coeff);
    }
    return sum.truncate_degrees(-1, max_degree);
}

} // namespace

LoopElement DressingOperator::log_m() const
{
    LoopElement m;
    bool first = true;
    for (const auto &part : log_parts) {
        m = first ? part : m + part;
        first = false;
    }
    return m;
}

DressingOperator dressing_operator(const Algebra &alg, int cutoff)
{
    if (cutoff < 1)
        throw std::invalid_argument("cutoff must be >= 1");
    DressingOperator d;
    d.cutoff = cutoff;
    LoopElement m = LoopElement::zero(alg);
    for (int deg = 0; deg <= cutoff; ++deg) {
        LoopElement residual = conjugated_connection(alg, m, deg).component(deg);
        Splitting s = split(alg, residual);
        if (deg >= 1 && deg % alg.N != 0) {
            DiffPoly h = inner_product(s.ab_part, p_element(alg, -deg)) * Rational(1, alg.N);
            d.h_densities.emplace(deg, h);
        }
        if (deg < cutoff) {
            LoopElement next = inv_ad_pm1(alg, -s.perp_part);
            d.log_parts.push_back(next);
            m = m + next;
        }
    }
    return d;
}

LoopElement exp_truncated(const Algebra &alg, const LoopElement &x, int max_degree)
{
    DiffPoly one = DiffPoly::constant(alg.rank(), 1);
    LoopElement sum(alg.N, alg.rank());
    for (int i = 1; i <= alg.N; ++i)
        sum.add(i, i, 0, one);
    LoopElement term = sum;
    Rational coeff = 1;
    for (int k = 1; k <= max_degree; ++k) {
        term = matmul(term, x).truncate_degrees(0, max_degree);
        if (term.is_zero())
            break;
        coeff /= k;
        sum = sum + term.scale(coeff);
    }
    return sum;
}

LoopElement conjugated_generator(const Algebra &alg, const DressingOperator &d, int n)
{
    if (n < 1 || n % alg.N == 0)
        throw std::invalid_argument("generator index must be a positive non-multiple of N");
    if (n > d.cutoff - 1)
        throw CutoffTooSmall("conjugated generator for n = " + std::to_string(n) +
                             " needs cutoff >= " + std::to_string(n + 1));
    int max_degree = d.cutoff - n;
    LoopElement m = d.log_m();
    LoopElement term = p_element(alg, -n);
    LoopElement sum = term;
    Rational coeff = 1;
    for (int k = 1; k <= max_degree + n; ++k) {
        term = bracket(m, term).truncate_degrees(-n, max_degree);
        if (term.is_zero())
            break;
        coeff /= k;
        sum = sum + term.scale(coeff);
    }
    return sum.truncate_degrees(-n, max_degree);
}

DiffPoly kdv_variable(const Algebra &alg, const DressingOperator &d, int i)
{
    if (i < 1 || i > alg.rank())
        throw std::out_of_range("KdV variable index out of range");
    LoopElement conj = conjugated_generator(alg, d, i);
    return inner_product(f0_element(alg), conj) * Rational(-2);
}

LoopElement dressing_residual(const Algebra &alg, const DressingOperator &d, int max_degree)
{
    if (max_degree > d.cutoff - 1)
        throw CutoffTooSmall("residual reliable only up to cutoff - 1");
    LoopElement conj = conjugated_connection(alg, d.log_m(), max_degree);
    LoopElement target = p_element(alg, -1);
    for (const auto &[n, h] : d.h_densities)
        if (n <= max_degree)
            target = target + p_element(alg, n).scale(h);
    return (conj - target).truncate_degrees(-1, max_degree);
}

} // namespace soliton
