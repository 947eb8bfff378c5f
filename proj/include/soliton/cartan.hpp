#ifndef SOLITON_CARTAN_HPP
#define SOLITON_CARTAN_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "soliton/linalg.hpp"
#include "soliton/rational.hpp"

namespace soliton {

struct UnknownAlgebra : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedAlgebra : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

// One row of the affine table: X_N^(r). `rank` is N, the rank of the
// underlying finite algebra, which equals the number of exponents counted
// with multiplicity. `labels` are the marks a_i over the affine diagram
// nodes; the Coxeter number satisfies h = r * sum(a_i).
struct CartanData {
    Family family;
    int twist = 1; // r in X_N^(r)
    int rank = 0;  // N
    int coxeter_number = 0;
    std::vector<int> exponents;                    // sorted, with multiplicity
    std::vector<int> labels;                       // a_0 .. a_k over diagram nodes
    std::vector<std::vector<Rational>> sym_cartan; // (alpha_i, alpha_j), finite X_N

    std::string name() const; // e.g. "A2^(1)"
    bool is_type_a() const { return family == Family::A && twist == 1; }
    bool is_exponent(int m) const; // m > 0 and m mod h is an exponent
    int exponent_multiplicity(int m) const;
};

// Looks up a table row; throws UnknownAlgebra for illegal (family, twist, rank).
CartanData cartan_data(Family family, int rank, int twist = 1);

// Parses names like "A3", "E6", "D4^3", "A4^2", "sl3" (= A2^(1)).
CartanData cartan_data(const std::string &name);

// All positive integers <= bound congruent to an exponent mod h, sorted,
// with multiplicity.
std::vector<int> exponent_sequence(const CartanData &data, int bound);

// Every legal table row at the given rank bound (used for table-wide checks).
std::vector<CartanData> cartan_table(int max_rank = 8);

std::string cartan_to_json(const CartanData &data);

} // namespace soliton

#endif
