#ifndef SOLITON_LOOP_HPP
#define SOLITON_LOOP_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "soliton/cartan.hpp"
#include "soliton/diffpoly.hpp"

namespace soliton {

struct NotInImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Computational context for sl_N: the A_{N-1}^(1) table row plus derived
// pairing data in the defining representation (trace form, so that
// (alpha_i, alpha_i) = 2 and p_{-1} carries unit coefficients).
struct Algebra {
    int N = 0;
    CartanData cartan;
    std::vector<std::vector<Rational>> gram_inv; // inverse of sym_cartan
    std::vector<std::vector<Rational>> coweight; // coweight[i-1][j-1]: j-th diagonal of omega_i

    int rank() const { return N - 1; }
    const std::vector<std::vector<Rational>> &gram() const { return cartan.sym_cartan; }
    // (alpha_i, alpha_j) extended to i, j = 0..rank with alpha_0 = -theta
    Rational root_pairing(int i, int j) const;
};

// Throws UnsupportedAlgebra for anything but A-type twist 1.
Algebra make_algebra(const CartanData &data);
Algebra make_sl(int N);

// Traceless N x N matrix with Laurent-polynomial-in-t entries over DiffPoly.
// Principal degree of the basis entry E_{jk} t^m is (k - j) + m N.
class LoopElement {
public:
    LoopElement() = default;
    LoopElement(int n, int poly_rank);

    static LoopElement zero(const Algebra &alg) { return LoopElement(alg.N, alg.rank()); }
    // E_{row,col} * t^tpow * value (indices 1-based)
    static LoopElement unit(const Algebra &alg, int row, int col, int tpow,
                            const DiffPoly &value);

    int size() const { return n_; }
    int poly_rank() const { return rank_; }
    bool is_zero() const;
    bool operator==(const LoopElement &o) const;

    DiffPoly entry(int row, int col, int tpow) const; // 1-based
    void add(int row, int col, int tpow, const DiffPoly &value);

    LoopElement operator+(const LoopElement &o) const;
    LoopElement operator-(const LoopElement &o) const;
    LoopElement operator-() const;
    LoopElement scale(const Rational &c) const;
    LoopElement scale(const DiffPoly &p) const;

    // t-power window of the stored entries (derived, not stored)
    std::pair<int, int> t_window() const;
    // principal degrees with a nonzero component, sorted
    std::vector<int> principal_degrees() const;
    LoopElement component(int degree) const;
    LoopElement truncate_degrees(int min_degree, int max_degree) const;
    bool is_homogeneous(int degree) const;

    LoopElement d_z() const; // entrywise
    LoopElement apply(const EvolutionaryDerivation &d) const;

    DiffPoly trace_constant_term(const LoopElement &o) const;

    std::string pretty() const; // aligned matrix of Laurent entries
    std::string to_json() const;

    template <class F> void for_each(F &&f) const // f(row, col, tpow, poly), 1-based
    {
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                for (const auto &[t, p] : entries_[r * n_ + c])
                    f(r + 1, c + 1, t, p);
    }

private:
    int n_ = 0;
    int rank_ = 0;
    std::vector<std::map<int, DiffPoly>> entries_;
};

LoopElement matmul(const LoopElement &x, const LoopElement &y);
LoopElement bracket(const LoopElement &x, const LoopElement &y);

// Constant-t term of trace(x y); pairs principal degree m with -m only.
DiffPoly inner_product(const LoopElement &x, const LoopElement &y);

// Generator of the principal abelian subalgebra in degree m: (p_1)^m with
// negative powers via p_1^{-1}. Rejects m divisible by N.
LoopElement p_element(const Algebra &alg, int m);

// f_0 = e_max t^{-1}, the lowering generator attached to the affine node.
LoopElement f0_element(const Algebra &alg);

// sum_i omega_i^vee q_i as a diagonal matrix
LoopElement cartan_element(const Algebra &alg, const std::vector<DiffPoly> &q);
// u = sum_i omega_i^vee u_i
LoopElement u_element(const Algebra &alg);

struct Splitting {
    LoopElement ab_part;   // in span{p_m}
    LoopElement perp_part; // in Im(ad p_{-1})
};

Splitting split(const Algebra &alg, const LoopElement &x);

// Unique preimage under ad p_{-1} with zero abelian part. Throws NotInImage
// when the argument has a nonzero component along the p_m.
LoopElement inv_ad_pm1(const Algebra &alg, const LoopElement &y);

// Basis of the homogeneous component of the loop algebra in the given
// principal degree, as unit LoopElements (used by dimension checks).
std::vector<LoopElement> degree_basis(const Algebra &alg, int degree);

// gamma_i = (ad p_{-1})^{h - d_i - 1} [f_0, p_{-d_i}], plus the rank of their
// coefficient matrix over the alpha_j^vee t^{-1} basis.
std::pair<std::vector<LoopElement>, int> gamma_vectors(const Algebra &alg);

} // namespace soliton

#endif
