#include "soliton/toda.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "soliton/mkdv.hpp"
#include "soliton/reduction.hpp"

namespace soliton {

Weight Weight::minus_alpha(const Algebra &alg, int i)
{
    Weight w = Weight::zero(alg);
    w.lam[i] = -1;
    return w;
}

bool Weight::is_zero() const
{
    return std::all_of(lam.begin(), lam.end(), [](int x) { return x == 0; });
}

int Weight::degree_shift() const
{
    int s = 0;
    for (int x : lam)
        s += x;
    return s;
}

Rational weight_pairing(const Algebra &alg, int i, const Weight &w)
{
    Rational s = 0;
    for (int j = 0; j <= alg.rank(); ++j)
        if (w.lam[j] != 0)
            s += Rational(w.lam[j]) * alg.root_pairing(i, j);
    return s;
}

TodaElement toda_dz(const Algebra &alg, const TodaElement &x)
{
    DiffPoly factor(alg.rank());
    for (int i = 0; i <= alg.rank(); ++i) {
        if (x.weight.lam[i] == 0)
            continue;
        DiffPoly ui = i == 0 ? u_zero(alg) : DiffPoly::variable(alg.rank(), i);
        factor += ui * Rational(x.weight.lam[i]);
    }
    return {x.weight, d_z(x.poly) + factor * x.poly};
}

TodaElement toda_dz(const Algebra &alg, const TodaElement &x, int times)
{
    TodaElement r = x;
    for (int k = 0; k < times; ++k)
        r = toda_dz(alg, r);
    return r;
}

TodaElement screening_apply(const Algebra &alg, int i, const DiffPoly &p)
{
    if (i < 0 || i > alg.rank())
        throw std::out_of_range("screening index out of range");
    Weight w = Weight::minus_alpha(alg, i);
    int order = -1;
    for (int j = 1; j <= alg.rank(); ++j)
        order = std::max(order, p.max_der(j));

    TodaElement result{w, DiffPoly(alg.rank())};
    TodaElement power{w, DiffPoly::constant(alg.rank(), 1)}; // d_z^n (1 e^{-phi_i})
    for (int n = 0; n <= order; ++n) {
        DiffPoly paired(alg.rank());
        for (int j = 1; j <= alg.rank(); ++j) {
            Rational pr = alg.root_pairing(i, j);
            if (pr != 0)
                paired += p.partial(j, n) * pr;
        }
        result.poly += power.poly * paired;
        if (n < order)
            power = toda_dz(alg, power);
    }
    return result;
}

namespace {

// Canonical-order monomial coordinates: largest monomial first, so reduction
// eliminates leading terms the way the printed form suggests.
std::vector<Monomial> sorted_desc(std::vector<Monomial> v)
{
    std::sort(v.begin(), v.end(), [](const Monomial &a, const Monomial &b) { return b < a; });
    return v;
}

} // namespace

DiffPoly reduce_mod_derivatives(const Algebra &alg, const Weight &w, const DiffPoly &p)
{
    DiffPoly out(alg.rank());
    for (const auto &[deg, comp] : p.homogeneous_components()) {
        if (w.is_zero() && deg == 0)
            continue; // constants are dropped at weight zero
        auto rows = sorted_desc(monomials_of_degree(alg.rank(), deg));
        std::map<Monomial, std::size_t> row_of;
        for (std::size_t r = 0; r < rows.size(); ++r)
            row_of.emplace(rows[r], r);

        auto sources = monomials_of_degree(alg.rank(), deg - 1);
        if (w.is_zero())
            std::erase_if(sources, [](const Monomial &m) { return m.is_one(); });

        RatMatrix images(sources.size(), rows.size());
        for (std::size_t j = 0; j < sources.size(); ++j) {
            DiffPoly mono(alg.rank());
            mono.add_term(sources[j], 1);
            TodaElement img = toda_dz(alg, {w, mono});
            for (const auto &[m, c] : img.poly.terms())
                images.at(j, row_of.at(m)) = c;
        }
        row_echelon(images);

        RatVec target(rows.size());
        for (const auto &[m, c] : comp.terms())
            target[row_of.at(m)] = c;
        for (std::size_t r = 0; r < sources.size(); ++r) {
            std::size_t pivot = rows.size();
            for (std::size_t c = 0; c < rows.size(); ++c)
                if (images.at(r, c) != 0) {
                    pivot = c;
                    break;
                }
            if (pivot == rows.size())
                continue;
            Rational f = target[pivot]; // pivot entry is 1 after echelon
            if (f == 0)
                continue;
            for (std::size_t c = pivot; c < rows.size(); ++c)
                target[c] -= f * images.at(r, c);
        }
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (target[r] != 0)
                out.add_term(rows[r], target[r]);
    }
    return out;
}

LocalFunctional functional(const Algebra &alg, const TodaElement &x)
{
    return {x.weight, reduce_mod_derivatives(alg, x.weight, x.poly)};
}

LocalFunctional functional0(const Algebra &alg, const DiffPoly &p)
{
    Weight w = Weight::zero(alg);
    return {w, reduce_mod_derivatives(alg, w, p)};
}

std::optional<TodaElement> toda_antiderivative(const Algebra &alg, const TodaElement &y)
{
    if (y.weight.is_zero()) {
        auto q = antiderivative(y.poly);
        if (!q)
            return std::nullopt;
        return TodaElement{y.weight, *q};
    }
    TodaElement out{y.weight, DiffPoly(alg.rank())};
    for (const auto &[deg, comp] : y.poly.homogeneous_components()) {
        auto sources = monomials_of_degree(alg.rank(), deg - 1);
        std::map<Monomial, std::size_t> row_index;
        auto row_of = [&](const Monomial &m) {
            return row_index.emplace(m, row_index.size()).first->second;
        };
        std::vector<DiffPoly> images;
        for (const auto &s : sources) {
            DiffPoly mono(alg.rank());
            mono.add_term(s, 1);
            images.push_back(toda_dz(alg, {y.weight, mono}).poly);
            for (const auto &[m, c] : images.back().terms())
                row_of(m);
        }
        for (const auto &[m, c] : comp.terms())
            row_of(m);

        RatMatrix a(row_index.size(), sources.size());
        for (std::size_t j = 0; j < sources.size(); ++j)
            for (const auto &[m, c] : images[j].terms())
                a.at(row_of(m), j) = c;
        RatVec rhs(row_index.size());
        for (const auto &[m, c] : comp.terms())
            rhs[row_of(m)] = c;

        auto x = solve(a, rhs);
        if (!x)
            return std::nullopt;
        for (std::size_t j = 0; j < sources.size(); ++j)
            out.poly.add_term(sources[j], (*x)[j]);
    }
    return out;
}

bool is_total_derivative(const Algebra &alg, const TodaElement &y)
{
    if (y.weight.is_zero())
        return antiderivative(y.poly).has_value();
    return toda_antiderivative(alg, y).has_value();
}

EvolutionaryDerivation xi_field(const Algebra &alg, const DiffPoly &p)
{
    EvolutionaryDerivation d;
    for (int i = 1; i <= alg.rank(); ++i)
        d.images.push_back(d_z(variational_derivative(p, i, alg.gram())));
    return d;
}

namespace {

// Variational derivative taken inside pi_lambda: the parts integrate by
// parts against toda_dz, so (-d_z)^n is the twisted derivative. At weight
// zero this is the plain paired variational derivative.
TodaElement twisted_variational(const Algebra &alg, const TodaElement &r, int i)
{
    TodaElement out{r.weight, DiffPoly(alg.rank())};
    for (int j = 1; j <= alg.rank(); ++j) {
        const Rational &pair = alg.gram()[i - 1][j - 1];
        if (pair == 0)
            continue;
        int top = r.poly.max_der(j);
        for (int n = 0; n <= top; ++n) {
            TodaElement term{r.weight, r.poly.partial(j, n)};
            term = toda_dz(alg, term, n);
            out.poly += term.poly * (n % 2 == 0 ? pair : -pair);
        }
    }
    return out;
}

} // namespace

WeightedXi xi_field_weighted(const Algebra &alg, const TodaElement &r)
{
    WeightedXi x;
    x.weight = r.weight;
    for (int i = 1; i <= alg.rank(); ++i) {
        TodaElement image = toda_dz(alg, twisted_variational(alg, r, i));
        image.poly -= r.poly * weight_pairing(alg, i, r.weight);
        x.images.push_back(image);
    }
    return x;
}

TodaElement apply_weighted(const Algebra &alg, const WeightedXi &x, const DiffPoly &p)
{
    TodaElement out{x.weight, DiffPoly(alg.rank())};
    for (int i = 1; i <= alg.rank(); ++i) {
        int top = p.max_der(i);
        TodaElement image = x.images[i - 1];
        for (int n = 0; n <= top; ++n) {
            out.poly += image.poly * p.partial(i, n);
            if (n < top)
                image = toda_dz(alg, image);
        }
    }
    return out;
}

LocalFunctional poisson_bracket(const Algebra &alg, const LocalFunctional &f,
                                const LocalFunctional &g)
{
    if (!f.weight.is_zero() || !g.weight.is_zero())
        throw std::invalid_argument("poisson bracket needs weight-zero functionals");
    DiffPoly xi_f_g = xi_field(alg, f.representative).apply(g.representative);
    return functional0(alg, xi_f_g);
}

ConservedDensity find_integrals(const Algebra &alg, int m)
{
    if (m < 1 || m % alg.N == 0)
        throw FlowIndexError("degree " + std::to_string(m) + " is not an exponent of " +
                             alg.cartan.name() + " mod its Coxeter number");
    int degree = m + 1;

    // coordinates on the degree-(m+1) component of the local functionals
    auto all_monos = sorted_desc(monomials_of_degree(alg.rank(), degree));
    std::vector<Monomial> basis;
    for (const auto &mono : all_monos) {
        DiffPoly p(alg.rank());
        p.add_term(mono, 1);
        DiffPoly red = reduce_mod_derivatives(alg, Weight::zero(alg), p);
        if (!red.is_zero() && red.leading_monomial() == mono)
            basis.push_back(mono);
    }
    if (basis.empty())
        throw NoIntegralFound("no local functionals in degree " + std::to_string(degree));

    // linear conditions: each screening image must be a total derivative
    std::vector<RatVec> condition_rows;
    for (int i = 0; i <= alg.rank(); ++i) {
        Weight w = Weight::minus_alpha(alg, i);
        std::map<Monomial, std::size_t> coord;
        std::vector<DiffPoly> residuals;
        for (const auto &mono : basis) {
            DiffPoly p(alg.rank());
            p.add_term(mono, 1);
            TodaElement img = screening_apply(alg, i, p);
            DiffPoly red = reduce_mod_derivatives(alg, w, img.poly);
            residuals.push_back(red);
            for (const auto &[mm, cc] : red.terms())
                coord.emplace(mm, coord.size());
        }
        for (const auto &[mm, idx] : coord) {
            RatVec row(basis.size());
            for (std::size_t j = 0; j < basis.size(); ++j)
                row[j] = residuals[j].coefficient(mm);
            condition_rows.push_back(std::move(row));
        }
    }

    RatMatrix a(condition_rows.size(), basis.size());
    for (std::size_t r = 0; r < condition_rows.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c)
            a.at(r, c) = condition_rows[r][c];
    auto null_basis = kernel(a);

    int expected = alg.cartan.exponent_multiplicity(m);
    if (null_basis.empty())
        throw NoIntegralFound("no Toda integral in degree " + std::to_string(m));
    if (static_cast<int>(null_basis.size()) != expected)
        throw UnexpectedDimension("integral space in degree " + std::to_string(m) + " has dim " +
                                  std::to_string(null_basis.size()) + ", expected " +
                                  std::to_string(expected));

    DiffPoly density(alg.rank());
    for (std::size_t j = 0; j < basis.size(); ++j)
        density.add_term(basis[j], null_basis[0][j]);
    Rational lead = density.coefficient(density.leading_monomial());
    density = density * (Rational(1) / lead);

    ConservedDensity out;
    out.degree = m;
    out.density = density;
    out.functional = functional0(alg, density);
    return out;
}

Rational verify_hamiltonian(const Algebra &alg, int m)
{
    ConservedDensity cd = find_integrals(alg, m);
    EvolutionaryDerivation xi = xi_field(alg, cd.density);
    EvolutionaryDerivation flow = mkdv_flow(alg, m).derivation;

    Rational c = 0;
    for (int i = 0; i < alg.rank() && c == 0; ++i) {
        if (flow.images[i].is_zero())
            continue;
        const auto &[mono, coeff] = *flow.images[i].terms().begin();
        Rational num = xi.images[i].coefficient(mono);
        if (num != 0)
            c = num / coeff;
    }
    if (c == 0)
        throw NotProportional("xi_{H_m} vanishes against the flow");
    for (int i = 0; i < alg.rank(); ++i)
        if (!(xi.images[i] == flow.images[i] * c))
            throw NotProportional("xi_{H_m} is not proportional to the mKdV flow");
    return c;
}

} // namespace soliton
