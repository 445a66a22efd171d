#pragma once

#include <map>
#include <ostream>
#include <stdexcept>

namespace logsle {

template <class C>
bool poly_coeff_zero(const C& c)
{
    if constexpr (requires { c.is_zero(); })
        return c.is_zero();
    else
        return c == C(0);
}

/// Finite Laurent polynomial in one formal variable: exponent -> coefficient,
/// exponents may be negative, no stored zero coefficients.
template <class C>
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(int exponent, C c)
    {
        LaurentPoly p;
        p.set(exponent, std::move(c));
        return p;
    }
    static LaurentPoly constant(C c) { return monomial(0, std::move(c)); }

    const std::map<int, C>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    C coeff(int exponent) const
    {
        const auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? C() : it->second;
    }

    void set(int exponent, C c)
    {
        if (poly_coeff_zero(c))
            coeffs_.erase(exponent);
        else
            coeffs_[exponent] = std::move(c);
    }

    void add(int exponent, const C& c)
    {
        auto [it, inserted] = coeffs_.try_emplace(exponent, c);
        if (!inserted) {
            it->second = it->second + c;
            if (poly_coeff_zero(it->second)) coeffs_.erase(it);
        }
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b)
    {
        for (const auto& [e, c] : b.coeffs_) a.add(e, c);
        return a;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
    friend LaurentPoly operator-(const LaurentPoly& a)
    {
        LaurentPoly out;
        for (const auto& [e, c] : a.coeffs_) out.coeffs_.emplace(e, -c);
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly out;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) out.add(ea + eb, ca * cb);
        return out;
    }
    friend LaurentPoly operator*(const C& c, const LaurentPoly& p)
    {
        LaurentPoly out;
        for (const auto& [e, v] : p.coeffs_) out.add(e, c * v);
        return out;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Formal derivative with respect to the variable.
    LaurentPoly derivative() const
    {
        LaurentPoly out;
        for (const auto& [e, c] : coeffs_) {
            if (e == 0) continue;
            out.add(e - 1, C(e) * c);
        }
        return out;
    }

    /// Evaluation; negative exponents require an invertible argument.
    template <class X>
    X operator()(const X& x) const
    {
        X total{};
        for (const auto& [e, c] : coeffs_) {
            X power = X(1);
            if (e >= 0)
                for (int i = 0; i < e; ++i) power = power * x;
            else {
                X inv = X(1) / x;
                for (int i = 0; i < -e; ++i) power = power * inv;
            }
            total = total + X(c) * power;
        }
        return total;
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p)
    {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (const auto& [e, c] : p.coeffs_) {
            if (!first) os << " + ";
            os << "[" << c << "]*f^" << e;
            first = false;
        }
        return os;
    }

private:
    std::map<int, C> coeffs_;
};

} // namespace logsle
