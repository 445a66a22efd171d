#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logsle/dual.hpp"
#include "logsle/ensemble.hpp"
#include "logsle/loewner.hpp"
#include "logsle/virasoro.hpp"

namespace logsle {

/// Ito drift coefficient of the boundary observable (f')^H f^{-2H} for the
/// walk parameter k, up to the positive factor M/f^2:
/// D = H (k (2H + 1) - 6). Vanishes in both components exactly on the locus
/// k = 6/(2H + 1) (or for H = 0).
template <class F>
Dual<F> drift_coefficient(const Dual<F>& h, const Dual<F>& k)
{
    const Dual<F> two_h_plus_1 = Dual<F>(F(2)) * h + Dual<F>(F(1));
    return h * (k * two_h_plus_1 - Dual<F>(F(6)));
}

/// Walk parameter on the vanishing locus, k = 6/(2 weight + 1 + 2 theta).
inline DualRational locus_parameter(const Rational& delta)
{
    return inverse(DualRational(2 * delta + 1, Rational(2))) * DualRational(Rational(6));
}

/// Loewner-type walk data: drift part a = {-2: -2} (noise square removed)
/// and noise b = {-1: sqrt(k)}.
struct SleWalk {
    CoeffMap a;
    CoeffMap b;
    DualRational k;
    DualRational noise_amplitude;
};

/// Exact walk coefficients; requires the bulk of k to be a perfect rational
/// square so sqrt(k) stays rational, and throws std::domain_error otherwise.
SleWalk sle_walk_exact(const DualRational& k);

/// Boundary one-point observable M = (f')^(delta+theta) * f^(-2(delta+theta))
/// with f = h + theta*hhat and f' its z-derivative, in dual arithmetic.
/// Real-axis mode: requires the point alive and h, dh/dz positive.
DualReal observable(const PointState<double>& state, const Rational& delta);

struct McComponent {
    std::string name;
    std::vector<double> means;
    std::vector<double> ses;
    std::vector<double> zscores;
};

/// Checkpointed ensemble statistics for the dual observable, one component
/// per (seed point, body/slope) pair, plus provenance for reproducibility.
struct McReport {
    std::string observable_name;
    SdeParams params;
    Rational delta;
    std::size_t n_paths = 0;
    std::vector<double> points;
    std::vector<double> checkpoints;
    std::vector<McComponent> components;
    std::vector<std::size_t> absorbed_counts;
    std::vector<std::size_t> clipped_counts;
    std::vector<double> max_abs;
    double clip_quantile = 0.0; // 0 disables clipping
};

/// Monte Carlo drift test: drives n_paths independent coupled trajectories,
/// evaluates the observable at each checkpoint and reports per-component
/// means, standard errors and drift z-scores against the t = 0 value.
/// Absorbed or clipped path points are counted, never silently dropped.
McReport mc_drift_report(const std::vector<double>& points, const Rational& delta,
                         const SdeParams& params, std::size_t n_paths,
                         const std::vector<double>& checkpoints, Exec exec = Exec::parallel,
                         double clip_quantile = 0.0);

/// E[G_t |hw>] truncated at level_cutoff: the exact polynomial exp(t*A)|hw>
/// for the nilpotent truncated drift generator A. Walk coefficients must be
/// strictly level-raising (negative indices only), which makes the
/// truncation exact.
ModuleState module_expected_state(const Rational& t, int level_cutoff, const CoeffMap& a,
                                  const CoeffMap& b, const ModuleContext& ctx);

struct ModuleMcResult {
    std::vector<Partition> basis;
    std::vector<DualReal> means;
    std::vector<DualReal> ses;
    std::size_t n_paths = 0;
    double t = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
};

/// Euler-Maruyama on the truncated matrix walk dV = V A dt + V B dB with
/// V_0 = I; returns the sample mean of V|hw> with per-coefficient standard
/// errors. Identical output for identical seeds and any worker count.
ModuleMcResult module_mc_state(double t, int level_cutoff, const CoeffMap& a, const CoeffMap& b,
                               const ModuleContext& ctx, std::size_t n_paths, double dt,
                               std::uint64_t seed, Exec exec = Exec::parallel);

} // namespace logsle
