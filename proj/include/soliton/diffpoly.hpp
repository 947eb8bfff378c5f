#ifndef SOLITON_DIFFPOLY_HPP
#define SOLITON_DIFFPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soliton/linalg.hpp"
#include "soliton/rational.hpp"

namespace soliton {

// One variable u_i^(n) raised to a power. Variables are indexed from 1.
struct VarPower {
    int var;   // i, 1 <= i <= rank
    int der;   // n >= 0
    int power; // > 0

    friend auto operator<=>(const VarPower &, const VarPower &) = default;
};

// Product of VarPowers, sorted by (var, der). The empty monomial is 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<VarPower> factors);

    const std::vector<VarPower> &factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    // Total weight with deg u_i^(n) = w_i + n; the default weights w_i = 1
    // give the jet-space gradation.
    int degree() const;
    int degree(const std::vector<int> &base_weights) const;

    int max_der(int var) const;
    Monomial times(const VarPower &vp) const;

    bool operator==(const Monomial &o) const { return factors_ == o.factors_; }

    // Graded lexicographic: first by (weight-1) degree, then variables with
    // smaller (var, der) count as larger, so e.g. u^4 is the leading monomial
    // of u^4 + (u')^2.
    bool operator<(const Monomial &o) const;

private:
    std::vector<VarPower> factors_;
};

// Element of the graded differential polynomial ring C[u_i^(n)] with exact
// rational coefficients. Values are immutable in spirit: every operation
// returns a fresh polynomial, no term is ever stored with coefficient zero.
class DiffPoly {
public:
    DiffPoly() = default;
    explicit DiffPoly(int rank) : rank_(rank) {}

    static DiffPoly zero(int rank) { return DiffPoly(rank); }
    static DiffPoly constant(int rank, const Rational &c);
    static DiffPoly variable(int rank, int var, int der = 0);

    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    const std::map<Monomial, Rational> &terms() const { return terms_; }

    Rational coefficient(const Monomial &m) const;
    void add_term(const Monomial &m, const Rational &c);

    DiffPoly operator-() const;
    DiffPoly operator+(const DiffPoly &o) const;
    DiffPoly operator-(const DiffPoly &o) const;
    DiffPoly operator*(const DiffPoly &o) const;
    DiffPoly operator*(const Rational &c) const;
    DiffPoly &operator+=(const DiffPoly &o);
    DiffPoly &operator-=(const DiffPoly &o);
    bool operator==(const DiffPoly &o) const;

    // d/du_i^(n)
    DiffPoly partial(int var, int der) const;

    int max_der(int var) const;
    int degree() const; // max weighted degree of any term; -1 for zero
    bool is_homogeneous() const;
    std::map<int, DiffPoly> homogeneous_components() const;
    std::map<int, DiffPoly> homogeneous_components(const std::vector<int> &base_weights) const;

    // Leading (largest) monomial in the canonical order; requires non-zero.
    const Monomial &leading_monomial() const;

    std::string to_text(const std::string &letter = "u") const;
    std::string to_latex(const std::string &letter = "u") const;
    std::string to_json() const;
    static DiffPoly from_json(const std::string &json_text, int rank);

private:
    int rank_ = 0;
    std::map<Monomial, Rational> terms_;
};

inline DiffPoly operator*(const Rational &c, const DiffPoly &p) { return p * c; }

// The derivation with d_z u_i^(n) = u_i^(n+1), extended by Leibniz. Raises
// the weighted degree of every homogeneous component by one.
DiffPoly d_z(const DiffPoly &p);
DiffPoly d_z(const DiffPoly &p, int times);

// Exact antiderivative with zero constant term: returns q with d_z(q) = p,
// or nullopt when p is not a total derivative. Computed by an exact linear
// solve per homogeneous component.
std::optional<DiffPoly> antiderivative(const DiffPoly &p);

// Plain Euler operators sum_n (-d_z)^n d/du_j^(n); all of them vanish exactly
// when p is a total derivative plus a constant. Independent of the solver
// above, used as its cross-check.
std::vector<DiffPoly> euler_obstruction(const DiffPoly &p);

// Variational derivative with the root pairing built in:
// delta_i p = sum_{n,j} (alpha_i, alpha_j) (-d_z)^n dp/du_j^(n).
DiffPoly variational_derivative(const DiffPoly &p, int i,
                                const std::vector<std::vector<Rational>> &gram);

// Derivation commuting with d_z, determined by its images on the u_i.
struct EvolutionaryDerivation {
    std::vector<DiffPoly> images; // images[i-1] = D(u_i)

    int rank() const { return static_cast<int>(images.size()); }
    DiffPoly apply(const DiffPoly &p) const;
    bool is_zero() const;
    bool operator==(const EvolutionaryDerivation &o) const { return images == o.images; }
};

EvolutionaryDerivation commutator(const EvolutionaryDerivation &d1,
                                  const EvolutionaryDerivation &d2);

// All monomials of the given weighted degree, deg u_i^(n) = base_weights[i-1] + n.
std::vector<Monomial> monomials_of_degree(int rank, int degree);
std::vector<Monomial> monomials_of_degree(int rank, int degree,
                                          const std::vector<int> &base_weights);

} // namespace soliton

#endif
