#include "soliton/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace soliton {

namespace {

std::vector<int> odd_up_to(int top)
{
    std::vector<int> v;
    for (int m = 1; m <= top; m += 2)
        v.push_back(m);
    return v;
}

// Symmetrized Cartan matrix of the finite algebra, normalized so that long
// roots have squared length 2. Edges lists (i, j, value) for i < j.
std::vector<std::vector<Rational>>
sym_cartan_matrix(int n, const std::vector<Rational> &diag,
                  const std::vector<std::tuple<int, int, Rational>> &edges)
{
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        g[i][i] = diag[i];
    for (auto &[i, j, v] : edges) {
        g[i][j] = v;
        g[j][i] = v;
    }
    return g;
}

std::vector<std::vector<Rational>> chain_cartan(int n, const Rational &diag,
                                                const Rational &off)
{
    std::vector<Rational> d(n, diag);
    std::vector<std::tuple<int, int, Rational>> e;
    for (int i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1, off);
    return sym_cartan_matrix(n, d, e);
}

std::vector<std::vector<Rational>> finite_sym_cartan(Family family, int n)
{
    using T = std::tuple<int, int, Rational>;
    switch (family) {
    case Family::A:
        return chain_cartan(n, 2, -1);
    case Family::B: {
        std::vector<Rational> d(n, 2);
        d[n - 1] = 1; // short last root
        std::vector<T> e;
        for (int i = 0; i + 1 < n; ++i)
            e.emplace_back(i, i + 1, -1);
        return sym_cartan_matrix(n, d, e);
    }
    case Family::C: {
        std::vector<Rational> d(n, 1);
        d[n - 1] = 2; // long last root
        std::vector<T> e;
        for (int i = 0; i + 2 < n; ++i)
            e.emplace_back(i, i + 1, Rational(-1, 2));
        if (n >= 2)
            e.emplace_back(n - 2, n - 1, -1);
        return sym_cartan_matrix(n, d, e);
    }
    case Family::D: {
        std::vector<Rational> d(n, 2);
        std::vector<T> e;
        for (int i = 0; i + 2 < n; ++i)
            e.emplace_back(i, i + 1, -1);
        if (n >= 3)
            e.emplace_back(n - 3, n - 1, -1);
        return sym_cartan_matrix(n, d, e);
    }
    case Family::E: {
        // Bourbaki numbering: chain 1-3-4-5-6(-7-8), node 2 attached to 4.
        std::vector<Rational> d(n, 2);
        std::vector<T> e;
        e.emplace_back(0, 2, -1);
        e.emplace_back(1, 3, -1);
        for (int i = 2; i + 1 < n; ++i)
            e.emplace_back(i, i + 1, -1);
        return sym_cartan_matrix(n, d, e);
    }
    case Family::F: {
        std::vector<Rational> d = {2, 2, 1, 1};
        std::vector<T> e = {{0, 1, -1}, {1, 2, -1}, {2, 3, Rational(-1, 2)}};
        return sym_cartan_matrix(4, d, e);
    }
    case Family::G: {
        std::vector<Rational> d = {2, Rational(2, 3)};
        std::vector<T> e = {{0, 1, -1}};
        return sym_cartan_matrix(2, d, e);
    }
    }
    throw UnknownAlgebra("bad family");
}

std::vector<int> marks(Family family, int twist, int n)
{
    auto ones = [](int k) { return std::vector<int>(k, 1); };
    if (twist == 1) {
        switch (family) {
        case Family::A:
            return ones(n + 1);
        case Family::B: {
            std::vector<int> a(n + 1, 2);
            a[0] = a[1] = 1;
            return a;
        }
        case Family::C: {
            std::vector<int> a(n + 1, 2);
            a[0] = a[n] = 1;
            return a;
        }
        case Family::D: {
            std::vector<int> a(n + 1, 2);
            a[0] = a[1] = a[n - 1] = a[n] = 1;
            return a;
        }
        case Family::E:
            if (n == 6)
                return {1, 1, 2, 2, 3, 2, 1};
            if (n == 7)
                return {1, 2, 2, 3, 4, 3, 2, 1};
            return {1, 2, 3, 4, 6, 5, 4, 3, 2};
        case Family::F:
            return {1, 2, 3, 4, 2};
        case Family::G:
            return {1, 2, 3};
        }
    }
    if (twist == 2) {
        switch (family) {
        case Family::A:
            if (n % 2 == 0) { // A_{2m}^(2)
                std::vector<int> a(n / 2 + 1, 2);
                a[n / 2] = 1;
                return a;
            } else { // A_{2m-1}^(2)
                int m = (n + 1) / 2;
                std::vector<int> a(m + 1, 2);
                a[0] = a[1] = a[m] = 1;
                return a;
            }
        case Family::D:
            return ones(n); // D_{m+1}^(2) has m+1 nodes, all marks 1
        case Family::E:
            return {1, 2, 3, 2, 1};
        default:
            break;
        }
    }
    if (twist == 3 && family == Family::D && n == 4)
        return {1, 2, 1};
    throw UnknownAlgebra("no marks for this type");
}

} // namespace

std::string CartanData::name() const
{
    std::ostringstream os;
    os << static_cast<char>(family) << rank << "^(" << twist << ")";
    return os.str();
}

bool CartanData::is_exponent(int m) const { return exponent_multiplicity(m) > 0; }

int CartanData::exponent_multiplicity(int m) const
{
    if (m <= 0)
        return 0;
    int r = m % coxeter_number;
    int count = 0;
    for (int d : exponents)
        if (d % coxeter_number == r)
            ++count;
    return count;
}

CartanData cartan_data(Family family, int rank, int twist)
{
    CartanData data;
    data.family = family;
    data.twist = twist;
    data.rank = rank;

    auto fail = [&] {
        std::ostringstream os;
        os << "unknown affine type " << static_cast<char>(family) << rank << "^(" << twist << ")";
        throw UnknownAlgebra(os.str());
    };

    if (twist == 1) {
        switch (family) {
        case Family::A:
            if (rank < 1)
                fail();
            data.coxeter_number = rank + 1;
            for (int m = 1; m <= rank; ++m)
                data.exponents.push_back(m);
            break;
        case Family::B:
            if (rank < 3)
                fail();
            data.coxeter_number = 2 * rank;
            data.exponents = odd_up_to(2 * rank - 1);
            break;
        case Family::C:
            if (rank < 2)
                fail();
            data.coxeter_number = 2 * rank;
            data.exponents = odd_up_to(2 * rank - 1);
            break;
        case Family::D:
            if (rank < 4)
                fail();
            data.coxeter_number = 2 * rank - 2;
            data.exponents = odd_up_to(2 * rank - 3);
            data.exponents.push_back(rank - 1); // doubles 2m-1 when rank = 2m
            break;
        case Family::E:
            if (rank == 6)
                data.exponents = {1, 4, 5, 7, 8, 11}, data.coxeter_number = 12;
            else if (rank == 7)
                data.exponents = {1, 5, 7, 9, 11, 13, 17}, data.coxeter_number = 18;
            else if (rank == 8)
                data.exponents = {1, 7, 11, 13, 17, 19, 23, 29}, data.coxeter_number = 30;
            else
                fail();
            break;
        case Family::F:
            if (rank != 4)
                fail();
            data.coxeter_number = 12;
            data.exponents = {1, 5, 7, 11};
            break;
        case Family::G:
            if (rank != 2)
                fail();
            data.coxeter_number = 6;
            data.exponents = {1, 5};
            break;
        }
    } else if (twist == 2) {
        switch (family) {
        case Family::A:
            if (rank < 2)
                fail();
            if (rank % 2 == 0) { // A_{2m}^(2): h = 2*rank + 2
                int m = rank / 2;
                data.coxeter_number = 4 * m + 2;
                data.exponents = odd_up_to(2 * m - 1);
                for (int k = 2 * m + 3; k <= 4 * m + 1; k += 2)
                    data.exponents.push_back(k);
            } else { // A_{2m-1}^(2): h = 2*rank
                data.coxeter_number = 2 * rank;
                data.exponents = odd_up_to(2 * rank - 1);
            }
            break;
        case Family::D:
            if (rank < 3)
                fail();
            data.coxeter_number = 2 * rank; // D_{m+1}^(2) with m = rank-1
            data.exponents = odd_up_to(2 * rank - 1);
            break;
        case Family::E:
            if (rank != 6)
                fail();
            data.coxeter_number = 18;
            data.exponents = {1, 5, 7, 11, 13, 17};
            break;
        default:
            fail();
        }
    } else if (twist == 3) {
        if (family != Family::D || rank != 4)
            fail();
        data.coxeter_number = 12;
        data.exponents = {1, 5, 7, 11};
    } else {
        fail();
    }

    std::sort(data.exponents.begin(), data.exponents.end());
    data.labels = marks(family, twist, rank);
    data.sym_cartan = finite_sym_cartan(family, rank);
    return data;
}

CartanData cartan_data(const std::string &name)
{
    std::string s = name;
    if (s.rfind("sl", 0) == 0) {
        int n = std::stoi(s.substr(2));
        if (n < 2)
            throw UnknownAlgebra("sl" + s.substr(2) + " is not a valid algebra");
        return cartan_data(Family::A, n - 1, 1);
    }
    if (s.empty() || s[0] < 'A' || s[0] > 'G')
        throw UnknownAlgebra("cannot parse algebra name '" + name + "'");
    Family family = static_cast<Family>(s[0]);
    std::size_t i = 1;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    if (i == 1)
        throw UnknownAlgebra("cannot parse algebra name '" + name + "'");
    int rank = std::stoi(s.substr(1, i - 1));
    int twist = 1;
    if (i < s.size()) {
        std::string rest = s.substr(i);
        if (rest.size() >= 2 && rest[0] == '^')
            twist = std::stoi(rest.substr(1));
        else if (rest.size() >= 3 && rest.front() == '(' && rest.back() == ')')
            twist = std::stoi(rest.substr(1, rest.size() - 2));
        else
            throw UnknownAlgebra("cannot parse algebra name '" + name + "'");
    }
    return cartan_data(family, rank, twist);
}

std::vector<int> exponent_sequence(const CartanData &data, int bound)
{
    std::vector<int> out;
    if (bound < 1)
        return out;
    for (int m = 1; m <= bound; ++m)
        for (int k = 0; k < data.exponent_multiplicity(m); ++k)
            out.push_back(m);
    return out;
}

std::vector<CartanData> cartan_table(int max_rank)
{
    std::vector<CartanData> rows;
    for (int n = 1; n <= max_rank; ++n)
        rows.push_back(cartan_data(Family::A, n, 1));
    for (int n = 3; n <= max_rank; ++n)
        rows.push_back(cartan_data(Family::B, n, 1));
    for (int n = 2; n <= max_rank; ++n)
        rows.push_back(cartan_data(Family::C, n, 1));
    for (int n = 4; n <= max_rank; ++n)
        rows.push_back(cartan_data(Family::D, n, 1));
    for (int n = 2; n <= max_rank; ++n)
        rows.push_back(cartan_data(Family::A, n, 2));
    for (int n = 3; n <= max_rank; ++n)
        rows.push_back(cartan_data(Family::D, n, 2));
    for (int n : {6, 7, 8})
        if (n <= max_rank)
            rows.push_back(cartan_data(Family::E, n, 1));
    if (6 <= max_rank)
        rows.push_back(cartan_data(Family::E, 6, 2));
    if (4 <= max_rank)
        rows.push_back(cartan_data(Family::F, 4, 1));
    if (2 <= max_rank)
        rows.push_back(cartan_data(Family::G, 2, 1));
    if (4 <= max_rank)
        rows.push_back(cartan_data(Family::D, 4, 3));
    return rows;
}

std::string cartan_to_json(const CartanData &data)
{
    nlohmann::json j;
    std::string type{static_cast<char>(data.family)};
    type += std::to_string(data.rank);
    if (data.twist != 1)
        type += "^" + std::to_string(data.twist);
    j["type"] = type;
    j["twist"] = data.twist;
    j["h"] = data.coxeter_number;
    j["exponents"] = data.exponents;
    j["labels"] = data.labels;
    nlohmann::json cart = nlohmann::json::array();
    for (const auto &row : data.sym_cartan) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto &v : row) {
            if (denominator(v) == 1)
                r.push_back(static_cast<long long>(numerator(v)));
            else
                r.push_back(rational_to_string(v)); // exact fractions stay exact
        }
        cart.push_back(r);
    }
    j["cartan"] = cart;
    return j.dump();
}

} // namespace soliton
