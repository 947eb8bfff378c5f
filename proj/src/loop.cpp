#include "soliton/loop.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include <json.hpp>

namespace soliton {

Rational Algebra::root_pairing(int i, int j) const
{
    auto one = [&](int k, int l) -> Rational {
        // alpha_0 = -theta = -sum alpha_m (all marks are 1 in type A)
        if (k >= 1 && l >= 1)
            return gram()[k - 1][l - 1];
        if (k == 0 && l == 0) {
            Rational s = 0;
            for (int a = 1; a <= rank(); ++a)
                for (int b = 1; b <= rank(); ++b)
                    s += gram()[a - 1][b - 1];
            return s;
        }
        int m = std::max(k, l); // the nonzero one
        Rational s = 0;
        for (int a = 1; a <= rank(); ++a)
            s -= gram()[a - 1][m - 1];
        return s;
    };
    return one(i, j);
}

Algebra make_algebra(const CartanData &data)
{
    if (!data.is_type_a())
        throw UnsupportedAlgebra(data.name() +
                                 " is table data only; matrix computations support A-type "
                                 "(sl_N) algebras");
    Algebra alg;
    alg.N = data.rank + 1;
    alg.cartan = data;

    int l = data.rank;
    RatMatrix aug(l, 2 * static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j)
            aug.at(i, j) = data.sym_cartan[i][j];
        aug.at(i, l + i) = 1;
    }
    row_echelon(aug);
    alg.gram_inv.assign(l, std::vector<Rational>(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            alg.gram_inv[i][j] = aug.at(i, l + j);

    alg.coweight.assign(l, std::vector<Rational>(alg.N));
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= alg.N; ++j)
            alg.coweight[i - 1][j - 1] =
                (j <= i ? Rational(1) : Rational(0)) - Rational(i, alg.N);
    return alg;
}

Algebra make_sl(int N)
{
    if (N < 2)
        throw UnsupportedAlgebra("sl_N needs N >= 2");
    return make_algebra(cartan_data(Family::A, N - 1, 1));
}

LoopElement::LoopElement(int n, int poly_rank)
    : n_(n), rank_(poly_rank), entries_(static_cast<std::size_t>(n) * n) {}

LoopElement LoopElement::unit(const Algebra &alg, int row, int col, int tpow,
                              const DiffPoly &value)
{
    LoopElement e(alg.N, alg.rank());
    e.add(row, col, tpow, value);
    return e;
}

bool LoopElement::is_zero() const
{
    for (const auto &cell : entries_)
        for (const auto &[t, p] : cell)
            if (!p.is_zero())
                return false;
    return true;
}

bool LoopElement::operator==(const LoopElement &o) const
{
    assert(n_ == o.n_);
    return (*this - o).is_zero();
}

DiffPoly LoopElement::entry(int row, int col, int tpow) const
{
    const auto &cell = entries_[(row - 1) * n_ + (col - 1)];
    auto it = cell.find(tpow);
    return it == cell.end() ? DiffPoly(rank_) : it->second;
}

void LoopElement::add(int row, int col, int tpow, const DiffPoly &value)
{
    if (value.is_zero())
        return;
    auto &cell = entries_[(row - 1) * n_ + (col - 1)];
    auto [it, inserted] = cell.emplace(tpow, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero())
            cell.erase(it);
    }
}

LoopElement LoopElement::operator+(const LoopElement &o) const
{
    assert(n_ == o.n_);
    LoopElement r = *this;
    o.for_each([&](int row, int col, int t, const DiffPoly &p) { r.add(row, col, t, p); });
    return r;
}

LoopElement LoopElement::operator-(const LoopElement &o) const
{
    assert(n_ == o.n_);
    LoopElement r = *this;
    o.for_each([&](int row, int col, int t, const DiffPoly &p) { r.add(row, col, t, -p); });
    return r;
}

LoopElement LoopElement::operator-() const
{
    LoopElement r(n_, rank_);
    for_each([&](int row, int col, int t, const DiffPoly &p) { r.add(row, col, t, -p); });
    return r;
}

LoopElement LoopElement::scale(const Rational &c) const
{
    LoopElement r(n_, rank_);
    if (c == 0)
        return r;
    for_each([&](int row, int col, int t, const DiffPoly &p) { r.add(row, col, t, p * c); });
    return r;
}

LoopElement LoopElement::scale(const DiffPoly &q) const
{
    LoopElement r(n_, rank_);
    for_each([&](int row, int col, int t, const DiffPoly &p) { r.add(row, col, t, p * q); });
    return r;
}

std::pair<int, int> LoopElement::t_window() const
{
    int lo = 0, hi = 0;
    bool seen = false;
    for (const auto &cell : entries_)
        for (const auto &[t, p] : cell) {
            if (!seen) {
                lo = hi = t;
                seen = true;
            }
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    return {lo, hi};
}

std::vector<int> LoopElement::principal_degrees() const
{
    std::set<int> degs;
    for_each([&](int row, int col, int t, const DiffPoly &p) {
        (void)p;
        degs.insert((col - row) + t * n_);
    });
    return {degs.begin(), degs.end()};
}

LoopElement LoopElement::component(int degree) const
{
    LoopElement r(n_, rank_);
    for_each([&](int row, int col, int t, const DiffPoly &p) {
        if ((col - row) + t * n_ == degree)
            r.add(row, col, t, p);
    });
    return r;
}

LoopElement LoopElement::truncate_degrees(int min_degree, int max_degree) const
{
    LoopElement r(n_, rank_);
    for_each([&](int row, int col, int t, const DiffPoly &p) {
        int d = (col - row) + t * n_;
        if (d >= min_degree && d <= max_degree)
            r.add(row, col, t, p);
    });
    return r;
}

bool LoopElement::is_homogeneous(int degree) const
{
    bool ok = true;
    for_each([&](int row, int col, int t, const DiffPoly &p) {
        if (!p.is_zero() && (col - row) + t * n_ != degree)
            ok = false;
    });
    return ok;
}

LoopElement LoopElement::d_z() const
{
    LoopElement r(n_, rank_);
    for_each([&](int row, int col, int t, const DiffPoly &p) {
        r.add(row, col, t, soliton::d_z(p));
    });
    return r;
}

LoopElement LoopElement::apply(const EvolutionaryDerivation &d) const
{
    LoopElement r(n_, rank_);
    for_each([&](int row, int col, int t, const DiffPoly &p) { r.add(row, col, t, d.apply(p)); });
    return r;
}

DiffPoly LoopElement::trace_constant_term(const LoopElement &o) const
{
    assert(n_ == o.n_);
    DiffPoly s(std::max(rank_, o.rank_));
    for (int r = 1; r <= n_; ++r)
        for (int c = 1; c <= n_; ++c) {
            const auto &cell = entries_[(r - 1) * n_ + (c - 1)];
            for (const auto &[t, p] : cell) {
                DiffPoly q = o.entry(c, r, -t);
                if (!q.is_zero())
                    s += p * q;
            }
        }
    return s;
}

std::string LoopElement::pretty() const
{
    std::vector<std::string> cells(static_cast<std::size_t>(n_) * n_);
    std::vector<std::size_t> width(n_, 1);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            std::ostringstream os;
            bool first = true;
            for (const auto &[t, p] : entries_[r * n_ + c]) {
                if (!first)
                    os << " + ";
                first = false;
                bool wrap = p.terms().size() > 1 && (t != 0 || entries_[r * n_ + c].size() > 1);
                os << (wrap ? "(" : "") << p.to_text() << (wrap ? ")" : "");
                if (t != 0) {
                    os << " t";
                    if (t != 1)
                        os << "^" << t;
                }
            }
            cells[r * n_ + c] = first ? "0" : os.str();
            width[c] = std::max(width[c], cells[r * n_ + c].size());
        }
    std::ostringstream out;
    for (int r = 0; r < n_; ++r) {
        out << "[ ";
        for (int c = 0; c < n_; ++c) {
            out << cells[r * n_ + c];
            out << std::string(width[c] - cells[r * n_ + c].size(), ' ');
            out << (c + 1 == n_ ? " ]" : "  ");
        }
        out << "\n";
    }
    return out.str();
}

std::string LoopElement::to_json() const
{
    nlohmann::json j;
    j["size"] = n_;
    nlohmann::json ent = nlohmann::json::array();
    for_each([&](int row, int col, int t, const DiffPoly &p) {
        nlohmann::json e;
        e["row"] = row;
        e["col"] = col;
        e["t"] = t;
        e["poly"] = nlohmann::json::parse(p.to_json());
        ent.push_back(e);
    });
    j["entries"] = ent;
    return j.dump();
}

LoopElement matmul(const LoopElement &x, const LoopElement &y)
{
    if (x.size() != y.size())
        throw DimensionMismatch("loop matrix sizes differ");
    LoopElement r(x.size(), std::max(x.poly_rank(), y.poly_rank()));
    x.for_each([&](int row, int k, int t1, const DiffPoly &p) {
        y.for_each([&](int k2, int col, int t2, const DiffPoly &q) {
            if (k == k2)
                r.add(row, col, t1 + t2, p * q);
        });
    });
    return r;
}

LoopElement bracket(const LoopElement &x, const LoopElement &y)
{
    return matmul(x, y) - matmul(y, x);
}

DiffPoly inner_product(const LoopElement &x, const LoopElement &y)
{
    if (x.size() != y.size())
        throw DimensionMismatch("loop matrix sizes differ");
    return x.trace_constant_term(y);
}

LoopElement p_element(const Algebra &alg, int m)
{
    if (m % alg.N == 0)
        throw std::invalid_argument("p_m requires m not divisible by N");
    DiffPoly one = DiffPoly::constant(alg.rank(), 1);
    LoopElement step(alg.N, alg.rank());
    if (m > 0) {
        for (int j = 1; j < alg.N; ++j)
            step.add(j, j + 1, 0, one);
        step.add(alg.N, 1, 1, one);
    } else {
        for (int j = 1; j < alg.N; ++j)
            step.add(j + 1, j, 0, one);
        step.add(1, alg.N, -1, one);
    }
    LoopElement r = step;
    for (int k = 1; k < std::abs(m); ++k)
        r = matmul(r, step);
    return r;
}

LoopElement f0_element(const Algebra &alg)
{
    return LoopElement::unit(alg, 1, alg.N, -1, DiffPoly::constant(alg.rank(), 1));
}

LoopElement cartan_element(const Algebra &alg, const std::vector<DiffPoly> &q)
{
    assert(static_cast<int>(q.size()) == alg.rank());
    LoopElement r(alg.N, alg.rank());
    for (int i = 1; i <= alg.rank(); ++i)
        for (int j = 1; j <= alg.N; ++j)
            r.add(j, j, 0, q[i - 1] * alg.coweight[i - 1][j - 1]);
    return r;
}

LoopElement u_element(const Algebra &alg)
{
    std::vector<DiffPoly> u;
    for (int i = 1; i <= alg.rank(); ++i)
        u.push_back(DiffPoly::variable(alg.rank(), i));
    return cartan_element(alg, u);
}

Splitting split(const Algebra &alg, const LoopElement &x)
{
    Splitting s{LoopElement::zero(alg), LoopElement::zero(alg)};
    for (int m : x.principal_degrees()) {
        if (m % alg.N == 0)
            continue;
        DiffPoly c = inner_product(x, p_element(alg, -m)) * Rational(1, alg.N);
        if (!c.is_zero())
            s.ab_part = s.ab_part + p_element(alg, m).scale(c);
    }
    s.perp_part = x - s.ab_part;
    return s;
}

std::vector<LoopElement> degree_basis(const Algebra &alg, int degree)
{
    std::vector<LoopElement> basis;
    DiffPoly one = DiffPoly::constant(alg.rank(), 1);
    if (degree % alg.N != 0) {
        for (int row = 1; row <= alg.N; ++row) {
            int shift = ((degree % alg.N) + alg.N) % alg.N;
            int col = (row - 1 + shift) % alg.N + 1;
            int tpow = (degree - (col - row)) / alg.N;
            basis.push_back(LoopElement::unit(alg, row, col, tpow, one));
        }
    } else {
        // diagonal component: traceless, so E_jj - E_{j+1,j+1} only
        int tpow = degree / alg.N;
        for (int j = 1; j < alg.N; ++j) {
            LoopElement e(alg.N, alg.rank());
            e.add(j, j, tpow, one);
            e.add(j + 1, j + 1, tpow, -one);
            basis.push_back(e);
        }
    }
    return basis;
}

LoopElement inv_ad_pm1(const Algebra &alg, const LoopElement &y)
{
    Splitting s = split(alg, y);
    if (!s.ab_part.is_zero())
        throw NotInImage("inv_ad_pm1: argument has a nonzero abelian component");

    LoopElement pm1 = p_element(alg, -1);
    LoopElement result = LoopElement::zero(alg);
    DiffPoly zero(alg.rank());

    for (int m : y.principal_degrees()) {
        LoopElement ym = y.component(m);
        auto target_basis = degree_basis(alg, m + 1);
        auto source_basis = degree_basis(alg, m);

        // coordinates of the degree-m component in the source basis
        auto coords = [&](const LoopElement &v) {
            std::vector<DiffPoly> out;
            if (m % alg.N != 0) {
                for (const auto &b : source_basis) {
                    DiffPoly c(alg.rank());
                    bool taken = false;
                    b.for_each([&](int row, int col, int t, const DiffPoly &p) {
                        (void)p;
                        if (!taken) {
                            c = v.entry(row, col, t);
                            taken = true;
                        }
                    });
                    out.push_back(c);
                }
            } else {
                // diagonal: coordinates over E_jj - E_{j+1,j+1} are the
                // partial sums of the diagonal entries
                int tpow = m / alg.N;
                DiffPoly acc(alg.rank());
                for (int j = 1; j < alg.N; ++j) {
                    acc += v.entry(j, j, tpow);
                    out.push_back(acc);
                }
            }
            return out;
        };

        std::vector<DiffPoly> rhs = coords(ym);
        std::size_t rows = rhs.size() + 1;
        RatMatrix a(rows, target_basis.size());
        for (std::size_t j = 0; j < target_basis.size(); ++j) {
            LoopElement img = bracket(pm1, target_basis[j]);
            auto col = coords(img);
            for (std::size_t r = 0; r < col.size(); ++r)
                a.at(r, j) = col[r].constant_term();
        }
        // pin the solution: no component along p_{m+1} (or trace handled by basis)
        rhs.push_back(zero);
        if ((m + 1) % alg.N != 0) {
            LoopElement pdual = p_element(alg, -(m + 1));
            for (std::size_t j = 0; j < target_basis.size(); ++j)
                a.at(rows - 1, j) = inner_product(target_basis[j], pdual).constant_term();
        }

        auto x = solve_with_rhs<DiffPoly>(a, rhs, zero);
        if (!x)
            throw NotInImage("inv_ad_pm1: inconsistent system in degree " + std::to_string(m));
        for (std::size_t j = 0; j < target_basis.size(); ++j)
            result = result + target_basis[j].scale((*x)[j]);
    }
    return result;
}

std::pair<std::vector<LoopElement>, int> gamma_vectors(const Algebra &alg)
{
    LoopElement pm1 = p_element(alg, -1);
    LoopElement f0 = f0_element(alg);
    std::vector<LoopElement> gammas;
    int h = alg.cartan.coxeter_number;
    for (int i = 1; i <= alg.rank(); ++i) {
        LoopElement g = bracket(f0, p_element(alg, -i));
        for (int k = 0; k < h - i - 1; ++k)
            g = bracket(pm1, g);
        gammas.push_back(g);
    }
    RatMatrix coeff(alg.rank(), alg.rank());
    for (int i = 0; i < alg.rank(); ++i) {
        Rational acc = 0;
        for (int j = 1; j <= alg.rank(); ++j) {
            acc += gammas[i].entry(j, j, -1).constant_term();
            coeff.at(i, j - 1) = acc;
        }
    }
    return {gammas, static_cast<int>(rank(coeff))};
}

} // namespace soliton
