#ifndef SOLITON_DRESSING_HPP
#define SOLITON_DRESSING_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "soliton/loop.hpp"

namespace soliton {

struct CutoffTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unipotent dressing operator exp(m), m = m_1 + ... + m_cutoff with m_j
// homogeneous of principal degree j and lying in Im(ad p_{-1}); conjugating
// d_z + p_{-1} + u by exp(m) leaves d_z + p_{-1} + sum h_n p_n.
struct DressingOperator {
    int cutoff = 0;
    std::vector<LoopElement> log_parts;  // m_1 .. m_cutoff
    std::map<int, DiffPoly> h_densities; // n in I, n <= cutoff

    LoopElement log_m() const;
};

DressingOperator dressing_operator(const Algebra &alg, int cutoff);

// exp(x) truncated to principal degrees <= max_degree; x must have strictly
// positive degrees so the series is finite per degree.
LoopElement exp_truncated(const Algebra &alg, const LoopElement &x, int max_degree);

// exp(m) p_{-n} exp(-m), exact on principal degrees <= cutoff - n. Requires
// n <= cutoff - 1 so that at least the minus part and the degree-1 component
// are reliable.
LoopElement conjugated_generator(const Algebra &alg, const DressingOperator &d, int n);

// KdV variable v_i = scale * (f_0, exp(m) p_{-d_i} exp(-m)); the global
// rational scale -2 is pinned by the sl_2 value 1/4 u^2 + 1/2 u'.
DiffPoly kdv_variable(const Algebra &alg, const DressingOperator &d, int i);

// Residual of the defining conjugation identity, reliable on principal
// degrees <= max_degree; zero for a correct operator.
LoopElement dressing_residual(const Algebra &alg, const DressingOperator &d, int max_degree);

} // namespace soliton

#endif
