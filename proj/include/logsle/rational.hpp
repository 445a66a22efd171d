#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace logsle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "p", "-p" or "p/q" with integer p, q. Throws on anything else.
inline Rational parse_rational(const std::string& text)
{
    const auto bad = [&] {
        return std::invalid_argument("malformed rational '" + text + "', expected p or p/q");
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

/// Exact square root when the argument is a perfect rational square.
inline std::optional<Rational> rational_sqrt(const Rational& r)
{
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    const BigInt sn = boost::multiprecision::sqrt(num);
    const BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

} // namespace logsle
