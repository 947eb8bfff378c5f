#include "soliton/reduction.hpp"

#include <cassert>
#include <map>

#include "soliton/mkdv.hpp"

namespace soliton {

PolyMatrix PolyMatrix::identity(const Algebra &alg)
{
    PolyMatrix m(alg.N, alg.rank());
    for (int i = 1; i <= alg.N; ++i)
        m.at(i, i) = DiffPoly::constant(alg.rank(), 1);
    return m;
}

bool PolyMatrix::is_zero() const
{
    for (const auto &p : a_)
        if (!p.is_zero())
            return false;
    return true;
}

bool PolyMatrix::operator==(const PolyMatrix &o) const
{
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!(a_[k] == o.a_[k]))
            return false;
    return true;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix &o) const
{
    assert(n_ == o.n_);
    PolyMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k)
        r.a_[k] += o.a_[k];
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix &o) const
{
    assert(n_ == o.n_);
    PolyMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k)
        r.a_[k] -= o.a_[k];
    return r;
}

PolyMatrix PolyMatrix::operator-() const
{
    PolyMatrix r = *this;
    for (auto &p : r.a_)
        p = -p;
    return r;
}

PolyMatrix PolyMatrix::scale(const Rational &c) const
{
    PolyMatrix r = *this;
    for (auto &p : r.a_)
        p = p * c;
    return r;
}

PolyMatrix PolyMatrix::d_z() const
{
    PolyMatrix r = *this;
    for (auto &p : r.a_)
        p = soliton::d_z(p);
    return r;
}

PolyMatrix PolyMatrix::component(int degree) const
{
    PolyMatrix r(n_, rank_);
    for (int row = 1; row <= n_; ++row)
        for (int col = 1; col <= n_; ++col)
            if (col - row == degree)
                r.at(row, col) = at(row, col);
    return r;
}

PolyMatrix matmul(const PolyMatrix &x, const PolyMatrix &y)
{
    assert(x.size() == y.size());
    int n = x.size();
    PolyMatrix r(n, 0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            DiffPoly s;
            for (int k = 1; k <= n; ++k)
                s += x.at(i, k) * y.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

PolyMatrix bracket(const PolyMatrix &x, const PolyMatrix &y)
{
    return matmul(x, y) - matmul(y, x);
}

PolyMatrix pbar_minus1(const Algebra &alg)
{
    PolyMatrix m(alg.N, alg.rank());
    for (int j = 1; j < alg.N; ++j)
        m.at(j + 1, j) = DiffPoly::constant(alg.rank(), 1);
    return m;
}

PolyMatrix BorelOperator::matrix(const Algebra &alg) const
{
    PolyMatrix q = nilpotent_part.size() == alg.N ? nilpotent_part : PolyMatrix::zero(alg);
    for (int i = 1; i <= alg.rank(); ++i)
        for (int j = 1; j <= alg.N; ++j)
            q.at(j, j) += cartan_part[i - 1] * alg.coweight[i - 1][j - 1];
    return q;
}

PolyMatrix CanonicalOper::matrix(const Algebra &alg) const
{
    PolyMatrix q = PolyMatrix::zero(alg);
    for (int i = 1; i <= alg.rank(); ++i)
        q.at(1, 1 + i) = s[i - 1];
    return q;
}

PolyMatrix gauge_transform(const Algebra &alg, const PolyMatrix &u, const PolyMatrix &q)
{
    PolyMatrix a = pbar_minus1(alg) + q;
    PolyMatrix sum = a;
    PolyMatrix term = a;
    Rational coeff = 1;
    for (int k = 1;; ++k) {
        term = bracket(u, term);
        if (term.is_zero())
            break;
        coeff /= k;
        sum = sum + term.scale(coeff);
    }
    PolyMatrix du = u.d_z();
    sum = sum - du;
    term = du;
    coeff = 1;
    for (int k = 1;; ++k) {
        term = bracket(u, term);
        if (term.is_zero())
            break;
        coeff /= (k + 1);
        sum = sum - term.scale(coeff);
    }
    return sum - pbar_minus1(alg);
}

namespace {

// positions of the degree-d component of the finite Borel, 1-based
std::vector<std::pair<int, int>> borel_positions(int n, int d)
{
    std::vector<std::pair<int, int>> pos;
    for (int row = 1; row + d <= n; ++row)
        if (d >= 0)
            pos.emplace_back(row, row + d);
    return pos;
}

std::vector<DiffPoly> matrix_coords(const PolyMatrix &m,
                                    const std::vector<std::pair<int, int>> &pos)
{
    std::vector<DiffPoly> out;
    out.reserve(pos.size());
    for (auto [r, c] : pos)
        out.push_back(m.at(r, c));
    return out;
}

} // namespace

void verify_slice(const Algebra &alg)
{
    PolyMatrix pbar = pbar_minus1(alg);
    for (int d = 1; d < alg.N; ++d) {
        auto rows = borel_positions(alg.N, d);
        auto cols = borel_positions(alg.N, d + 1);
        RatMatrix m(rows.size(), cols.size() + 1);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            PolyMatrix e = PolyMatrix::zero(alg);
            e.at(cols[j].first, cols[j].second) = DiffPoly::constant(alg.rank(), 1);
            PolyMatrix img = bracket(pbar, e);
            auto co = matrix_coords(img, rows);
            for (std::size_t r = 0; r < rows.size(); ++r)
                m.at(r, j) = co[r].constant_term();
        }
        // slice direction E_{1, 1+d}
        m.at(0, cols.size()) = 1;
        if (rank(m) != rows.size())
            throw std::logic_error("canonical slice is not transversal in degree " +
                                   std::to_string(d));
    }
}

std::pair<PolyMatrix, CanonicalOper> gauge_to_canonical(const Algebra &alg,
                                                        const BorelOperator &op)
{
    verify_slice(alg);
    PolyMatrix q_given = op.matrix(alg);
    PolyMatrix pbar = pbar_minus1(alg);
    PolyMatrix u = PolyMatrix::zero(alg);
    CanonicalOper canon;
    canon.s.assign(alg.rank(), DiffPoly(alg.rank()));
    DiffPoly zero(alg.rank());

    for (int d = 0; d < alg.N; ++d) {
        PolyMatrix mismatch = q_given - gauge_transform(alg, u, canon.matrix(alg));
        // solve s_d * E_{1,1+d} + [U_{d+1}, pbar] = mismatch_d
        std::vector<std::pair<int, int>> rows;
        if (d == 0)
            for (int j = 1; j <= alg.N; ++j)
                rows.emplace_back(j, j);
        else
            rows = borel_positions(alg.N, d);
        auto ucols = borel_positions(alg.N, d + 1);
        bool has_slice = d >= 1;
        std::size_t ncols = ucols.size() + (has_slice ? 1 : 0);

        RatMatrix a(rows.size(), ncols);
        for (std::size_t j = 0; j < ucols.size(); ++j) {
            PolyMatrix e = PolyMatrix::zero(alg);
            e.at(ucols[j].first, ucols[j].second) = DiffPoly::constant(alg.rank(), 1);
            PolyMatrix img = bracket(e, pbar);
            auto co = matrix_coords(img, rows);
            for (std::size_t r = 0; r < rows.size(); ++r)
                a.at(r, j) = co[r].constant_term();
        }
        if (has_slice) {
            for (std::size_t r = 0; r < rows.size(); ++r)
                a.at(r, ucols.size()) = (rows[r] == std::pair(1, 1 + d)) ? 1 : 0;
        }
        auto rhs = matrix_coords(mismatch.component(d), rows);
        auto x = solve_with_rhs<DiffPoly>(a, rhs, zero);
        if (!x)
            throw std::logic_error("gauge normalization failed in degree " + std::to_string(d));
        for (std::size_t j = 0; j < ucols.size(); ++j)
            u.at(ucols[j].first, ucols[j].second) += (*x)[j];
        if (has_slice)
            canon.s[d - 1] += (*x)[ucols.size()];
    }

    if (!(gauge_transform(alg, u, canon.matrix(alg)) == q_given))
        throw std::logic_error("gauge round trip failed to reproduce the operator");
    return {u, canon};
}

std::vector<DiffPoly> miura(const Algebra &alg)
{
    BorelOperator op;
    for (int i = 1; i <= alg.rank(); ++i)
        op.cartan_part.push_back(DiffPoly::variable(alg.rank(), i));
    op.nilpotent_part = PolyMatrix::zero(alg);
    return gauge_to_canonical(alg, op).second.s;
}

std::vector<int> kdv_weights(const Algebra &alg)
{
    std::vector<int> w;
    for (int d : alg.cartan.exponents)
        w.push_back(d + 1);
    return w;
}

DiffPoly substitute_jets(const DiffPoly &p, const std::vector<DiffPoly> &values)
{
    int rank = values.empty() ? 0 : values.front().rank();
    DiffPoly out(rank);
    for (const auto &[mono, c] : p.terms()) {
        DiffPoly t = DiffPoly::constant(rank, c);
        for (const auto &f : mono.factors()) {
            DiffPoly base = d_z(values[f.var - 1], f.der);
            for (int k = 0; k < f.power; ++k)
                t = t * base;
        }
        out += t;
    }
    return out;
}

EvolutionaryDerivation kdv_flow(const Algebra &alg, int n)
{
    std::vector<DiffPoly> v = miura(alg);
    EvolutionaryDerivation mkdv = mkdv_flow(alg, n).derivation;
    std::vector<int> weights = kdv_weights(alg);

    EvolutionaryDerivation der;
    for (int i = 1; i <= alg.rank(); ++i) {
        // d_n v_i as a differential polynomial in the u_j, to be re-expressed
        // in the s-variables; closure is guaranteed by the reduction.
        DiffPoly target = mkdv.apply(v[i - 1]);
        int degree = weights[i - 1] + n;
        auto candidates = monomials_of_degree(alg.rank(), degree, weights);

        std::map<Monomial, std::size_t> row_index;
        auto row_of = [&](const Monomial &m) {
            return row_index.emplace(m, row_index.size()).first->second;
        };
        std::vector<DiffPoly> images;
        images.reserve(candidates.size());
        for (const auto &cand : candidates) {
            DiffPoly mono(alg.rank());
            mono.add_term(cand, 1);
            images.push_back(substitute_jets(mono, v));
            for (const auto &[m, c] : images.back().terms())
                row_of(m);
        }
        for (const auto &[m, c] : target.terms())
            row_of(m);

        RatMatrix a(row_index.size(), candidates.size());
        for (std::size_t j = 0; j < candidates.size(); ++j)
            for (const auto &[m, c] : images[j].terms())
                a.at(row_of(m), j) = c;
        RatVec rhs(row_index.size());
        for (const auto &[m, c] : target.terms())
            rhs[row_of(m)] = c;

        auto x = solve(a, rhs);
        if (!x)
            throw ClosureFailure("flow of v_" + std::to_string(i) +
                                 " does not close on the s-variables");
        DiffPoly image(alg.rank());
        for (std::size_t j = 0; j < candidates.size(); ++j)
            image.add_term(candidates[j], (*x)[j]);
        der.images.push_back(image);
    }
    return der;
}

ScreeningField screening_field(const Algebra &alg, int i, int order)
{
    if (i < 0 || i > alg.rank())
        throw std::out_of_range("screening index out of range");
    DiffPoly ui = i == 0 ? u_zero(alg) : DiffPoly::variable(alg.rank(), i);
    ScreeningField f;
    f.index = i;
    f.coefficients.push_back(DiffPoly::constant(alg.rank(), 1));
    for (int k = 1; k <= order; ++k) {
        const DiffPoly &prev = f.coefficients.back();
        f.coefficients.push_back(-(ui * prev) + d_z(prev));
    }
    return f;
}

DiffPoly u_zero(const Algebra &alg)
{
    const auto &a = alg.cartan.labels;
    DiffPoly s(alg.rank());
    for (int i = 1; i <= alg.rank(); ++i)
        s += DiffPoly::variable(alg.rank(), i) * Rational(-a[i], a[0]);
    return s;
}

DiffPoly apply_screening(const Algebra &alg, int i, const DiffPoly &p)
{
    if (i < 0 || i > alg.rank())
        throw std::out_of_range("screening index out of range");
    int order = -1;
    for (int j = 1; j <= alg.rank(); ++j)
        order = std::max(order, p.max_der(j));
    if (order < 0)
        return DiffPoly(alg.rank());
    ScreeningField f = screening_field(alg, i, order);
    DiffPoly out(alg.rank());
    for (int nn = 0; nn <= order; ++nn) {
        DiffPoly paired(alg.rank());
        for (int j = 1; j <= alg.rank(); ++j) {
            Rational pr = alg.root_pairing(i, j);
            if (pr != 0)
                paired += p.partial(j, nn) * pr;
        }
        out -= f.coefficients[nn] * paired;
    }
    return out;
}

std::vector<std::string> verify_invariance(const Algebra &alg)
{
    std::vector<std::string> violations;
    std::vector<DiffPoly> v = miura(alg);
    for (int i = 1; i <= alg.rank(); ++i) {
        for (int j = 0; j < alg.rank(); ++j) {
            DiffPoly w = v[j];
            for (int k = 0; k <= 3; ++k) {
                DiffPoly r = apply_screening(alg, i, w);
                if (!r.is_zero())
                    violations.push_back("e_" + std::to_string(i) + " on d_z^" +
                                         std::to_string(k) + " v_" + std::to_string(j + 1) +
                                         " = " + r.to_text());
                w = d_z(w);
            }
        }
    }
    return violations;
}

} // namespace soliton
