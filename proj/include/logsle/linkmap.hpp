#pragma once

#include <map>

#include "logsle/dual.hpp"
#include "logsle/laurent.hpp"

namespace logsle {

/// Coefficient data of a walk on the Virasoro group, generic in the base
/// field: exact rationals for symbolic checks, doubles for simulation.
template <class F>
using WalkCoeffs = std::map<int, Dual<F>>;

/// Diffusion coefficient of the associated conformal-map differential:
/// nu(f) = -sum_n b_n f^{n+1}.
template <class F>
LaurentPoly<Dual<F>> diffusion_poly(const WalkCoeffs<F>& b)
{
    LaurentPoly<Dual<F>> nu;
    for (const auto& [n, c] : b) nu.add(n + 1, -c);
    return nu;
}

/// Drift coefficient of the map differential:
/// mu(f) = -sum_n a_n f^{n+1} + (1/2) nu d_f nu, with nu kept symbolic.
/// The a_n are the drift-part coefficients of the walk (noise-square half
/// already removed).
template <class F>
LaurentPoly<Dual<F>> drift_poly(const WalkCoeffs<F>& a, const WalkCoeffs<F>& b)
{
    LaurentPoly<Dual<F>> mu;
    for (const auto& [n, c] : a) mu.add(n + 1, -c);
    const auto nu = diffusion_poly(b);
    mu = mu + Dual<F>(F(1) / F(2)) * (nu * nu.derivative());
    return mu;
}

/// Expansion of p(h + tau*hhat) to first order in the nilpotent parameter.
/// The theta^0 part is bulk(h); the theta^1 part is hat_shift(h) plus
/// bulk_derivative(h) * hhat, the hhat-linear piece kept separate.
template <class F>
struct TauExpansion {
    LaurentPoly<F> bulk;
    LaurentPoly<F> hat_shift;
    LaurentPoly<F> bulk_derivative;
};

template <class F>
TauExpansion<F> expand_tau(const LaurentPoly<Dual<F>>& p)
{
    TauExpansion<F> out;
    for (const auto& [e, c] : p.coeffs()) {
        if (!poly_coeff_zero(c.body)) out.bulk.add(e, c.body);
        if (!poly_coeff_zero(c.slope)) out.hat_shift.add(e, c.slope);
    }
    out.bulk_derivative = out.bulk.derivative();
    return out;
}

} // namespace logsle
