#ifndef SOLITON_RATIONAL_HPP
#define SOLITON_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace soliton {

// Exact arbitrary-precision rationals. All coefficient arithmetic in the
// library goes through this type; no floating point anywhere.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational &q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "n" or "n/d"; throws on malformed input or zero denominator.
inline Rational parse_rational(std::string_view s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos)
            return Rational(Integer(std::string(s)));
        Integer num{std::string(s.substr(0, slash))};
        Integer den{std::string(s.substr(slash + 1))};
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception &) {
        throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
    }
}

} // namespace soliton

#endif
