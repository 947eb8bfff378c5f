#ifndef SOLITON_REDUCTION_HPP
#define SOLITON_REDUCTION_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "soliton/diffpoly.hpp"
#include "soliton/loop.hpp"

namespace soliton {

struct ClosureFailure : std::logic_error {
    using std::logic_error::logic_error;
};

// Plain N x N matrix over DiffPoly (the finite part of the loop algebra).
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int n, int poly_rank)
        : n_(n), rank_(poly_rank), a_(static_cast<std::size_t>(n) * n, DiffPoly(poly_rank)) {}

    static PolyMatrix zero(const Algebra &alg) { return PolyMatrix(alg.N, alg.rank()); }
    static PolyMatrix identity(const Algebra &alg);

    int size() const { return n_; }
    DiffPoly &at(int row, int col) { return a_[(row - 1) * n_ + (col - 1)]; } // 1-based
    const DiffPoly &at(int row, int col) const { return a_[(row - 1) * n_ + (col - 1)]; }

    bool is_zero() const;
    bool operator==(const PolyMatrix &o) const;
    PolyMatrix operator+(const PolyMatrix &o) const;
    PolyMatrix operator-(const PolyMatrix &o) const;
    PolyMatrix operator-() const;
    PolyMatrix scale(const Rational &c) const;
    PolyMatrix d_z() const;
    PolyMatrix component(int degree) const; // deg E_{jk} = k - j

private:
    int n_ = 0;
    int rank_ = 0;
    std::vector<DiffPoly> a_;
};

PolyMatrix matmul(const PolyMatrix &x, const PolyMatrix &y);
PolyMatrix bracket(const PolyMatrix &x, const PolyMatrix &y);

// Subdiagonal of ones: the finite part of p_{-1} for sl_N.
PolyMatrix pbar_minus1(const Algebra &alg);

// First-order operator d_z + pbar + q with q in the finite Borel.
struct BorelOperator {
    std::vector<DiffPoly> cartan_part; // q_i, i = 1..rank
    PolyMatrix nilpotent_part;         // strictly upper triangular

    PolyMatrix matrix(const Algebra &alg) const; // the full q
};

// Canonical slice operator: q0 = sum_i s_i E_{1, 1+d_i} (first-row form).
struct CanonicalOper {
    std::vector<DiffPoly> s; // s_i, weighted degree d_i + 1
    PolyMatrix matrix(const Algebra &alg) const;
};

// Gauge action of exp(U) (U strictly upper) on d_z + pbar + q; exact, the
// series terminate by nilpotency.
PolyMatrix gauge_transform(const Algebra &alg, const PolyMatrix &u, const PolyMatrix &q);

// Inverts the gauge action onto the canonical slice; the pair (U, s) is
// unique and exp(ad U) applied to the canonical operator reproduces the
// input exactly.
std::pair<PolyMatrix, CanonicalOper> gauge_to_canonical(const Algebra &alg,
                                                        const BorelOperator &op);

// Per-degree transversality of the first-row slice to [pbar, borel]; exact
// rank computation, throws on failure.
void verify_slice(const Algebra &alg);

// KdV variables of the diagonal embedding q_i = u_i: the generalized Miura
// transformation.
std::vector<DiffPoly> miura(const Algebra &alg);

// n-th KdV flow as a derivation of C[s_i^(m)] (variable j of the result is
// s_j, of weighted degree d_j + 1 + m).
EvolutionaryDerivation kdv_flow(const Algebra &alg, int n);

// s-variable base weights: d_j + 1
std::vector<int> kdv_weights(const Algebra &alg);

// Substitute s_j^(m) -> d_z^m(values[j-1]) into a polynomial in the s-variables.
DiffPoly substitute_jets(const DiffPoly &p, const std::vector<DiffPoly> &values);

// Coefficients B_i^(n) of the screening vector field
// e_i^L = -sum_n B_i^(n) paired-d/du^(n), B_i^(0) = 1,
// B_i^(n) = -u_i B_i^(n-1) + d_z B_i^(n-1); index 0 uses
// u_0 = -(1/a_0) sum a_i u_i.
struct ScreeningField {
    int index = 0;
    std::vector<DiffPoly> coefficients; // B_i^(0) .. B_i^(order)
};

ScreeningField screening_field(const Algebra &alg, int i, int order);

DiffPoly u_zero(const Algebra &alg);

// e_i^L applied to p (finite sum, bounded by the top derivative in p).
DiffPoly apply_screening(const Algebra &alg, int i, const DiffPoly &p);

// Checks e_i^L v_j = 0 for the finite screenings i = 1..rank and all Miura
// images v_j together with their derivatives up to order 3. Returns the list
// of violations (empty = pass).
std::vector<std::string> verify_invariance(const Algebra &alg);

} // namespace soliton

#endif
