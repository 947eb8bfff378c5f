#ifndef SOLITON_MKDV_HPP
#define SOLITON_MKDV_HPP

#include <map>
#include <stdexcept>

#include "soliton/loop.hpp"

namespace soliton {

// Signals a residual that failed to integrate during the recursion; the
// theory guarantees every residual is a total derivative, so this indicates
// an internal bug and carries the offending polynomial for diagnosis.
struct AntiderivativeObstruction : std::logic_error {
    using std::logic_error::logic_error;
};

// Signals a flow right-hand side with components outside the Cartan
// subalgebra; same nature as above.
struct NonCartanResidual : std::logic_error {
    using std::logic_error::logic_error;
};

struct FlowIndexError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The canonical conjugated generator, homogeneous component by component:
// components[m] has principal degree m, m runs over [-n, cutoff], and
// components[-n] is exactly p_{-n}.
struct ZeroCurvatureSolution {
    int flow_index = 0;
    int cutoff = 1;
    std::map<int, LoopElement> components;

    LoopElement sum() const;
    LoopElement minus_part() const; // degrees -n..0
};

ZeroCurvatureSolution solve_canonical(const Algebra &alg, int n, int cutoff);

struct MkdvFlow {
    int flow_index = 0;
    EvolutionaryDerivation derivation; // images of the u_i
    LoopElement minus_part;
};

MkdvFlow mkdv_flow(const Algebra &alg, int n, int cutoff = 1);

// d_m applied to the minus part of flow n, minus d_n applied to the minus
// part of flow m, plus the bracket of the minus parts; identically zero.
LoopElement zero_curvature_residual(const Algebra &alg, const MkdvFlow &flow_m,
                                    const MkdvFlow &flow_n);

// [d_z + p_{-1} + u, V] restricted to the degrees the cutoff makes reliable
// (strictly below the cutoff); identically zero for canonical solutions.
LoopElement commutation_residual(const Algebra &alg, const ZeroCurvatureSolution &sol);

} // namespace soliton

#endif
