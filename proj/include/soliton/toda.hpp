#ifndef SOLITON_TODA_HPP
#define SOLITON_TODA_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "soliton/diffpoly.hpp"
#include "soliton/loop.hpp"

namespace soliton {

struct NoIntegralFound : std::logic_error {
    using std::logic_error::logic_error;
};

struct UnexpectedDimension : std::logic_error {
    using std::logic_error::logic_error;
};

struct NotProportional : std::logic_error {
    using std::logic_error::logic_error;
};

// Lattice weight lambda = sum lam[i] alpha_i, i = 0..rank.
struct Weight {
    std::vector<int> lam;

    static Weight zero(const Algebra &alg) { return {std::vector<int>(alg.N, 0)}; }
    static Weight minus_alpha(const Algebra &alg, int i);
    bool is_zero() const;
    int degree_shift() const; // (rho_vee, lambda) = sum lam[i]
    bool operator==(const Weight &o) const { return lam == o.lam; }
};

// Element P otimes e^{lambda-bar} of pi_lambda.
struct TodaElement {
    Weight weight;
    DiffPoly poly;

    bool is_zero() const { return poly.is_zero(); }
    int degree() const { return weight.degree_shift() + poly.degree(); }
};

// (alpha_i, lambda) with alpha_0 = -theta folded in.
Rational weight_pairing(const Algebra &alg, int i, const Weight &w);

// d_z on pi_lambda: (d_z P + sum lam_i u_i P) e^{lambda-bar}, with
// u_0 = -(1/a_0) sum a_i u_i substituted.
TodaElement toda_dz(const Algebra &alg, const TodaElement &x);
TodaElement toda_dz(const Algebra &alg, const TodaElement &x, int times);

// The screening operator pi_0 -> pi_{-alpha_i}: sum_n (d_z^n e^{-phi_i})
// times the paired derivative of order n. The coefficients are generated by
// iterating toda_dz on 1 otimes e^{-phi_i}.
TodaElement screening_apply(const Algebra &alg, int i, const DiffPoly &p);

// Solves toda_dz(X) = y exactly (per graded component); at most one solution
// exists for nonzero weight, and the zero-weight case delegates to the jet
// ring antiderivative.
std::optional<TodaElement> toda_antiderivative(const Algebra &alg, const TodaElement &y);
bool is_total_derivative(const Algebra &alg, const TodaElement &y);

// Equivalence class modulo Im d_z (and constants at weight zero), stored by
// its canonical representative (exact reduction against a per-degree basis
// of the image).
struct LocalFunctional {
    Weight weight;
    DiffPoly representative;

    bool is_zero() const { return representative.is_zero(); }
    // grading drops by one relative to the density
    int degree() const { return weight.degree_shift() + representative.degree() - 1; }
    bool operator==(const LocalFunctional &o) const
    {
        return weight == o.weight && representative == o.representative;
    }
};

DiffPoly reduce_mod_derivatives(const Algebra &alg, const Weight &w, const DiffPoly &p);
LocalFunctional functional(const Algebra &alg, const TodaElement &x);
LocalFunctional functional0(const Algebra &alg, const DiffPoly &p);

// Hamiltonian vector field of a weight-zero functional: u_i -> d_z(delta_i P).
EvolutionaryDerivation xi_field(const Algebra &alg, const DiffPoly &p);

// The weighted analogue: a linear operator pi_0 -> pi_lambda commuting with
// d_z, determined by its images on the u_i.
struct WeightedXi {
    Weight weight;
    std::vector<TodaElement> images;
};

WeightedXi xi_field_weighted(const Algebra &alg, const TodaElement &r);
TodaElement apply_weighted(const Algebra &alg, const WeightedXi &x, const DiffPoly &p);

LocalFunctional poisson_bracket(const Algebra &alg, const LocalFunctional &f,
                                const LocalFunctional &g);

struct ConservedDensity {
    int degree = 0;        // m
    DiffPoly density;      // H_m, leading coefficient 1
    LocalFunctional functional;
};

// Kernel of all screenings in the degree-(m+1) component of the local
// functionals; one-dimensional for A-type, normalized to leading
// coefficient 1.
ConservedDensity find_integrals(const Algebra &alg, int m);

// The scalar c with xi_{H_m} = c * d_m; throws NotProportional if none fits.
Rational verify_hamiltonian(const Algebra &alg, int m);

} // namespace soliton

#endif
