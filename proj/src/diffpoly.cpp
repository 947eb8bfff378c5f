#include "soliton/diffpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace soliton {

Monomial::Monomial(std::vector<VarPower> factors) : factors_(std::move(factors))
{
    std::sort(factors_.begin(), factors_.end(),
              [](const VarPower &a, const VarPower &b) {
                  return std::pair(a.var, a.der) < std::pair(b.var, b.der);
              });
    std::vector<VarPower> merged;
    for (const auto &f : factors_) {
        assert(f.var >= 1 && f.der >= 0);
        if (f.power == 0)
            continue;
        if (!merged.empty() && merged.back().var == f.var && merged.back().der == f.der)
            merged.back().power += f.power;
        else
            merged.push_back(f);
    }
    factors_ = std::move(merged);
}

int Monomial::degree() const
{
    int d = 0;
    for (const auto &f : factors_)
        d += (f.der + 1) * f.power;
    return d;
}

int Monomial::degree(const std::vector<int> &base_weights) const
{
    int d = 0;
    for (const auto &f : factors_) {
        assert(f.var <= static_cast<int>(base_weights.size()));
        d += (base_weights[f.var - 1] + f.der) * f.power;
    }
    return d;
}

int Monomial::max_der(int var) const
{
    int m = -1;
    for (const auto &f : factors_)
        if (f.var == var)
            m = std::max(m, f.der);
    return m;
}

Monomial Monomial::times(const VarPower &vp) const
{
    auto f = factors_;
    f.push_back(vp);
    return Monomial(std::move(f));
}

bool Monomial::operator<(const Monomial &o) const
{
    int da = degree(), db = o.degree();
    if (da != db)
        return da < db;
    std::size_t n = std::min(factors_.size(), o.factors_.size());
    for (std::size_t k = 0; k < n; ++k) {
        auto va = std::pair(factors_[k].var, factors_[k].der);
        auto vb = std::pair(o.factors_[k].var, o.factors_[k].der);
        if (va != vb)
            return va > vb; // smaller variable index ranks higher
        if (factors_[k].power != o.factors_[k].power)
            return factors_[k].power < o.factors_[k].power;
    }
    return factors_.size() < o.factors_.size();
}

DiffPoly DiffPoly::constant(int rank, const Rational &c)
{
    DiffPoly p(rank);
    if (c != 0)
        p.terms_.emplace(Monomial{}, c);
    return p;
}

DiffPoly DiffPoly::variable(int rank, int var, int der)
{
    assert(var >= 1 && var <= rank && der >= 0);
    DiffPoly p(rank);
    p.terms_.emplace(Monomial({{var, der, 1}}), Rational(1));
    return p;
}

bool DiffPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational DiffPoly::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational DiffPoly::coefficient(const Monomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Monomial &m, const Rational &c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator-() const
{
    DiffPoly r(rank_);
    for (const auto &[m, c] : terms_)
        r.terms_.emplace(m, -c);
    return r;
}

DiffPoly DiffPoly::operator+(const DiffPoly &o) const
{
    DiffPoly r(std::max(rank_, o.rank_));
    r.terms_ = terms_;
    for (const auto &[m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly &o) const
{
    DiffPoly r(std::max(rank_, o.rank_));
    r.terms_ = terms_;
    for (const auto &[m, c] : o.terms_)
        r.add_term(m, -c);
    return r;
}

DiffPoly &DiffPoly::operator+=(const DiffPoly &o)
{
    rank_ = std::max(rank_, o.rank_);
    for (const auto &[m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

DiffPoly &DiffPoly::operator-=(const DiffPoly &o)
{
    rank_ = std::max(rank_, o.rank_);
    for (const auto &[m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

DiffPoly DiffPoly::operator*(const DiffPoly &o) const
{
    DiffPoly r(std::max(rank_, o.rank_));
    for (const auto &[ma, ca] : terms_) {
        for (const auto &[mb, cb] : o.terms_) {
            auto f = ma.factors();
            const auto &g = mb.factors();
            f.insert(f.end(), g.begin(), g.end());
            r.add_term(Monomial(std::move(f)), ca * cb);
        }
    }
    return r;
}

DiffPoly DiffPoly::operator*(const Rational &c) const
{
    DiffPoly r(rank_);
    if (c == 0)
        return r;
    for (const auto &[m, k] : terms_)
        r.terms_.emplace(m, k * c);
    return r;
}

bool DiffPoly::operator==(const DiffPoly &o) const { return terms_ == o.terms_; }

DiffPoly DiffPoly::partial(int var, int der) const
{
    DiffPoly r(rank_);
    for (const auto &[m, c] : terms_) {
        const auto &fs = m.factors();
        for (std::size_t k = 0; k < fs.size(); ++k) {
            if (fs[k].var != var || fs[k].der != der)
                continue;
            auto f = fs;
            int p = f[k].power;
            f[k].power -= 1;
            r.add_term(Monomial(std::move(f)), c * p);
        }
    }
    return r;
}

int DiffPoly::max_der(int var) const
{
    int m = -1;
    for (const auto &[mono, c] : terms_)
        m = std::max(m, mono.max_der(var));
    return m;
}

int DiffPoly::degree() const
{
    int d = -1;
    for (const auto &[m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

bool DiffPoly::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    int d = terms_.begin()->first.degree();
    for (const auto &[m, c] : terms_)
        if (m.degree() != d)
            return false;
    return true;
}

std::map<int, DiffPoly> DiffPoly::homogeneous_components() const
{
    std::map<int, DiffPoly> comps;
    for (const auto &[m, c] : terms_) {
        auto [it, ins] = comps.emplace(m.degree(), DiffPoly(rank_));
        it->second.add_term(m, c);
    }
    return comps;
}

std::map<int, DiffPoly>
DiffPoly::homogeneous_components(const std::vector<int> &base_weights) const
{
    std::map<int, DiffPoly> comps;
    for (const auto &[m, c] : terms_) {
        auto [it, ins] = comps.emplace(m.degree(base_weights), DiffPoly(rank_));
        it->second.add_term(m, c);
    }
    return comps;
}

const Monomial &DiffPoly::leading_monomial() const
{
    assert(!terms_.empty());
    return terms_.rbegin()->first;
}

namespace {

std::string var_text(const std::string &letter, int rank, int var, int der, int power)
{
    std::ostringstream os;
    os << letter;
    if (rank > 1)
        os << "_" << var;
    if (der >= 1 && der <= 3)
        os << std::string(der, '\'');
    else if (der > 3)
        os << "^(" << der << ")";
    if (power > 1)
        os << "^" << power;
    return os.str();
}

std::string var_latex(const std::string &letter, int rank, int var, int der, int power)
{
    std::ostringstream os;
    std::string base = letter;
    if (rank > 1)
        base += "_" + std::to_string(var);
    if (der > 0)
        base += "^{(" + std::to_string(der) + ")}";
    if (power > 1) {
        if (der > 0)
            os << "(" << base << ")^{" << power << "}";
        else
            os << base << "^{" << power << "}";
    } else {
        os << base;
    }
    return os.str();
}

std::string coeff_latex(const Rational &q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    std::string sign = q < 0 ? "-" : "";
    Rational a = q < 0 ? Rational(-q) : q;
    return sign + "\\frac{" + numerator(a).str() + "}{" + denominator(a).str() + "}";
}

} // namespace

std::string DiffPoly::to_text(const std::string &letter) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[m, c] = *it;
        Rational a = c < 0 ? Rational(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool need_coeff = (a != 1) || m.is_one();
        if (need_coeff)
            os << rational_to_string(a);
        bool sep = need_coeff;
        for (const auto &f : m.factors()) {
            if (sep)
                os << " ";
            os << var_text(letter, rank_, f.var, f.der, f.power);
            sep = true;
        }
    }
    return os.str();
}

std::string DiffPoly::to_latex(const std::string &letter) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[m, c] = *it;
        Rational a = c < 0 ? Rational(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (a != 1 || m.is_one())
            os << coeff_latex(a) << (m.is_one() ? "" : " \\, ");
        bool sep = false;
        for (const auto &f : m.factors()) {
            if (sep)
                os << " ";
            os << var_latex(letter, rank_, f.var, f.der, f.power);
            sep = true;
        }
    }
    return os.str();
}

std::string DiffPoly::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &[m, c] : terms_) {
        nlohmann::json t;
        t["coeff"] = rational_to_string(c);
        nlohmann::json mono = nlohmann::json::array();
        for (const auto &f : m.factors())
            mono.push_back({f.var, f.der, f.power});
        t["monomial"] = mono;
        arr.push_back(t);
    }
    return arr.dump();
}

DiffPoly DiffPoly::from_json(const std::string &json_text, int rank)
{
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed DiffPoly JSON: ") + e.what());
    }
    if (!arr.is_array())
        throw std::invalid_argument("DiffPoly JSON must be an array of terms");
    DiffPoly p(rank);
    try {
        for (const auto &t : arr) {
            Rational c = parse_rational(t.at("coeff").get<std::string>());
            std::vector<VarPower> f;
            for (const auto &vp : t.at("monomial")) {
                int var = vp.at(0).get<int>();
                int der = vp.at(1).get<int>();
                int power = vp.at(2).get<int>();
                if (var < 1 || var > rank || der < 0 || power < 1)
                    throw std::invalid_argument("DiffPoly JSON variable out of range");
                f.push_back({var, der, power});
            }
            p.add_term(Monomial(std::move(f)), c);
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed DiffPoly JSON: ") + e.what());
    }
    return p;
}

DiffPoly d_z(const DiffPoly &p)
{
    DiffPoly r(p.rank());
    for (const auto &[m, c] : p.terms()) {
        const auto &fs = m.factors();
        for (std::size_t k = 0; k < fs.size(); ++k) {
            auto f = fs;
            int power = f[k].power;
            f[k].power -= 1;
            Monomial reduced(std::move(f));
            r.add_term(reduced.times({fs[k].var, fs[k].der + 1, 1}), c * power);
        }
    }
    return r;
}

DiffPoly d_z(const DiffPoly &p, int times)
{
    DiffPoly r = p;
    for (int k = 0; k < times; ++k)
        r = d_z(r);
    return r;
}

namespace {

void enumerate_monomials(int rank, const std::vector<int> &weights, int var, int der,
                         int remaining, std::vector<VarPower> &current,
                         std::vector<Monomial> &out)
{
    if (remaining == 0) {
        out.push_back(Monomial(current));
        return;
    }
    if (var > rank)
        return;
    int w = weights[var - 1] + der;
    if (w > remaining) {
        // no deeper derivative of this variable fits either
        enumerate_monomials(rank, weights, var + 1, 0, remaining, current, out);
        return;
    }
    // skip this variable entirely
    enumerate_monomials(rank, weights, var, der + 1, remaining, current, out);
    for (int p = 1; p * w <= remaining; ++p) {
        current.push_back({var, der, p});
        enumerate_monomials(rank, weights, var, der + 1, remaining - p * w, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Monomial> monomials_of_degree(int rank, int degree,
                                          const std::vector<int> &base_weights)
{
    std::vector<Monomial> out;
    if (degree < 0)
        return out;
    std::vector<VarPower> current;
    enumerate_monomials(rank, base_weights, 1, 0, degree, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> monomials_of_degree(int rank, int degree)
{
    return monomials_of_degree(rank, degree, std::vector<int>(rank, 1));
}

std::optional<DiffPoly> antiderivative(const DiffPoly &p)
{
    DiffPoly result(p.rank());
    for (const auto &[d, comp] : p.homogeneous_components()) {
        if (d == 0)
            return std::nullopt; // constants are never total derivatives
        std::vector<Monomial> basis = monomials_of_degree(p.rank(), d - 1);
        // drop the constant monomial: d_z kills it, and we normalize to a
        // zero constant term anyway
        std::erase_if(basis, [](const Monomial &m) { return m.is_one(); });

        std::map<Monomial, std::size_t> row_index;
        auto row_of = [&](const Monomial &m) {
            return row_index.emplace(m, row_index.size()).first->second;
        };
        std::vector<DiffPoly> images;
        images.reserve(basis.size());
        for (const auto &b : basis) {
            DiffPoly mono(p.rank());
            mono.add_term(b, 1);
            images.push_back(d_z(mono));
            for (const auto &[m, c] : images.back().terms())
                row_of(m);
        }
        for (const auto &[m, c] : comp.terms())
            row_of(m);

        RatMatrix a(row_index.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (const auto &[m, c] : images[j].terms())
                a.at(row_of(m), j) = c;
        RatVec rhs(row_index.size());
        for (const auto &[m, c] : comp.terms())
            rhs[row_of(m)] = c;

        auto x = solve(a, rhs);
        if (!x)
            return std::nullopt;
        for (std::size_t j = 0; j < basis.size(); ++j)
            result.add_term(basis[j], (*x)[j]);
    }
    return result;
}

std::vector<DiffPoly> euler_obstruction(const DiffPoly &p)
{
    std::vector<DiffPoly> out;
    for (int j = 1; j <= p.rank(); ++j) {
        DiffPoly e(p.rank());
        int top = p.max_der(j);
        for (int n = 0; n <= top; ++n) {
            DiffPoly term = d_z(p.partial(j, n), n);
            e += (n % 2 == 0) ? term : -term;
        }
        out.push_back(e);
    }
    return out;
}

DiffPoly variational_derivative(const DiffPoly &p, int i,
                                const std::vector<std::vector<Rational>> &gram)
{
    if (i < 1 || i > p.rank())
        throw std::out_of_range("variational derivative index out of range");
    assert(static_cast<int>(gram.size()) >= p.rank());
    DiffPoly r(p.rank());
    for (int j = 1; j <= p.rank(); ++j) {
        const Rational &pair = gram[i - 1][j - 1];
        if (pair == 0)
            continue;
        int top = p.max_der(j);
        for (int n = 0; n <= top; ++n) {
            DiffPoly term = d_z(p.partial(j, n), n) * pair;
            r += (n % 2 == 0) ? term : -term;
        }
    }
    return r;
}

DiffPoly EvolutionaryDerivation::apply(const DiffPoly &p) const
{
    assert(p.rank() <= rank());
    DiffPoly r(p.rank());
    for (int i = 1; i <= p.rank(); ++i) {
        int top = p.max_der(i);
        DiffPoly image = images[i - 1];
        for (int n = 0; n <= top; ++n) {
            r += image * p.partial(i, n);
            if (n < top)
                image = d_z(image);
        }
    }
    return r;
}

bool EvolutionaryDerivation::is_zero() const
{
    for (const auto &im : images)
        if (!im.is_zero())
            return false;
    return true;
}

EvolutionaryDerivation commutator(const EvolutionaryDerivation &d1,
                                  const EvolutionaryDerivation &d2)
{
    assert(d1.rank() == d2.rank());
    EvolutionaryDerivation r;
    for (int i = 0; i < d1.rank(); ++i)
        r.images.push_back(d1.apply(d2.images[i]) - d2.apply(d1.images[i]));
    return r;
}

} // namespace soliton
