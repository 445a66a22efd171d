#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <type_traits>

#include "logsle/rational.hpp"

namespace logsle {

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

/// Dual scalar a + theta*b over a commutative base field, with theta^2 = 0.
/// Multiplication drops the theta^2 term, so the slope carries a first
/// derivative through any composition of these operations.
template <class F>
struct Dual {
    F body{};
    F slope{};

    constexpr Dual() = default;
    constexpr Dual(F b) : body(std::move(b)) {}
    constexpr Dual(F b, F s) : body(std::move(b)), slope(std::move(s)) {}

    /// The nilpotent unit theta itself.
    static constexpr Dual nil() { return Dual(F(0), F(1)); }

    friend Dual operator+(const Dual& x, const Dual& y) { return {x.body + y.body, x.slope + y.slope}; }
    friend Dual operator-(const Dual& x, const Dual& y) { return {x.body - y.body, x.slope - y.slope}; }
    friend Dual operator-(const Dual& x) { return {-x.body, -x.slope}; }
    friend Dual operator*(const Dual& x, const Dual& y)
    {
        return {x.body * y.body, x.body * y.slope + x.slope * y.body};
    }
    friend Dual operator/(const Dual& x, const Dual& y) { return x * inverse(y); }

    Dual& operator+=(const Dual& y) { return *this = *this + y; }
    Dual& operator-=(const Dual& y) { return *this = *this - y; }
    Dual& operator*=(const Dual& y) { return *this = *this * y; }
    Dual& operator/=(const Dual& y) { return *this = *this / y; }

    friend bool operator==(const Dual& x, const Dual& y) { return x.body == y.body && x.slope == y.slope; }
    friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }

    bool is_zero() const { return body == F(0) && slope == F(0); }

    friend Dual inverse(const Dual& x)
    {
        if (x.body == F(0)) throw std::domain_error("non-invertible dual scalar (zero body)");
        const F inv = F(1) / x.body;
        return {inv, -x.slope * inv * inv};
    }

    friend std::ostream& operator<<(std::ostream& os, const Dual& x)
    {
        return os << "(" << x.body << ") + theta*(" << x.slope << ")";
    }
};

using DualRational = Dual<Rational>;
using DualReal = Dual<double>;
using DualComplex = Dual<std::complex<double>>;

/// Integer power, exact over any base field.
template <class F>
Dual<F> pow_int(Dual<F> x, long long e)
{
    if (e < 0) return pow_int(inverse(x), -e);
    Dual<F> result(F(1));
    while (e > 0) {
        if (e & 1) result *= x;
        x *= x;
        e >>= 1;
    }
    return result;
}

/// log(a + theta*b) = log(a) + theta*b/a. Real mode needs a > 0; complex
/// mode uses the principal branch and needs a != 0.
template <class F>
Dual<F> log(const Dual<F>& x)
{
    static_assert(std::is_floating_point_v<F> || is_complex_v<F>,
                  "logarithm requires a floating base field");
    if constexpr (is_complex_v<F>) {
        if (x.body == F(0)) throw std::domain_error("dual logarithm of zero body");
    } else {
        if (!(x.body > F(0))) throw std::domain_error("dual logarithm off the positive branch");
    }
    using std::log;
    return {log(x.body), x.slope / x.body};
}

template <class F>
Dual<F> exp(const Dual<F>& x)
{
    static_assert(std::is_floating_point_v<F> || is_complex_v<F>);
    using std::exp;
    const F e = exp(x.body);
    return {e, e * x.slope};
}

/// x^e = exp(e * log x) for dual base and dual exponent; exact in the
/// nilpotent direction, so a body-only base with exponent d + theta gives
/// x^d * (1 + theta*log x).
template <class F>
Dual<F> pow(const Dual<F>& x, const Dual<F>& e)
{
    return exp(e * log(x));
}

template <class F>
Dual<F> sqrt(const Dual<F>& x)
{
    static_assert(std::is_floating_point_v<F> || is_complex_v<F>);
    if constexpr (is_complex_v<F>) {
        if (x.body == F(0)) throw std::domain_error("dual sqrt of zero body");
    } else {
        if (!(x.body > F(0))) throw std::domain_error("dual sqrt off the positive branch");
    }
    using std::sqrt;
    const F r = sqrt(x.body);
    return {r, x.slope / (F(2) * r)};
}

/// Exact square root of a dual rational whose body is a perfect rational
/// square: sqrt(a + theta*b) = sqrt(a) + theta*b/(2 sqrt(a)).
inline std::optional<DualRational> sqrt_exact(const DualRational& x)
{
    if (x.body == 0) {
        if (x.slope == 0) return DualRational(Rational(0));
        return std::nullopt;
    }
    const auto root = rational_sqrt(x.body);
    if (!root) return std::nullopt;
    return DualRational(*root, x.slope / (2 * *root));
}

inline DualReal to_real(const DualRational& x) { return {to_double(x.body), to_double(x.slope)}; }

inline DualComplex to_complex(const DualReal& x) { return {x.body, x.slope}; }

} // namespace logsle
