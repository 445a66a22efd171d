#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "logsle/rng.hpp"

namespace logsle {

struct SdeParams {
    double kappa = 4.0;
    double kappa_hat = 0.0;
    double dt = 1e-3;
    double t_max = 0.5;
    double swallow_eps = 1e-6;
    std::uint64_t seed = 1;

    void validate() const
    {
        if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
        if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
        if (!(t_max > 0) || dt > t_max) throw std::invalid_argument("need 0 < dt <= t_max");
        if (!(swallow_eps > 0)) throw std::invalid_argument("swallow_eps must be positive");
    }

    double noise_scale() const { return std::sqrt(kappa); }
    double hat_noise_scale() const { return kappa_hat / (2.0 * std::sqrt(kappa)); }
};

/// State of one seed point under the coupled map flow: the map value h, its
/// nilpotent partner hhat, and their z-derivatives tracked by the
/// variational equations. A swallowed point is frozen.
template <class S>
struct PointState {
    S z0{};
    S h{};
    S h_hat{};
    S dh_dz{};
    S dh_hat_dz{};
    double t = 0.0;
    bool swallowed = false;

    static PointState initial(S seed_point)
    {
        PointState s;
        s.z0 = seed_point;
        s.h = seed_point;
        s.dh_dz = S(1);
        return s;
    }
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

// On the real axis the point is lost once the flow carries it through the
// singularity; in the plane only proximity counts.
inline bool crossed_singularity(double before, double after) { return before * after <= 0.0; }
inline bool crossed_singularity(const std::complex<double>&, const std::complex<double>&) { return false; }

template <class S>
void step_recursive(PointState<S>& s, double dB, double dt, const SdeParams& p, int depth)
{
    if (s.swallowed) return;
    if (magnitude(s.h) < p.swallow_eps) {
        s.swallowed = true;
        return;
    }
    // One explicit step can jump the singularity when |h| is comparable to
    // the noise scale of the step; refine deterministically until the local
    // step resolves the 2/h bounce.
    const double refine_zone = std::max(10.0 * p.swallow_eps, 5.0 * std::sqrt(p.kappa * dt));
    if (depth > 0 && magnitude(s.h) < refine_zone) {
        step_recursive(s, 0.5 * dB, 0.5 * dt, p, depth - 1);
        step_recursive(s, 0.5 * dB, 0.5 * dt, p, depth - 1);
        return;
    }

    const S h = s.h;
    const S h2 = h * h;
    const S h_hat = s.h_hat;
    const S dh = s.dh_dz;
    const S dh_hat = s.dh_hat_dz;

    s.h = h + S(2.0 * dt) / h - S(p.noise_scale() * dB);
    s.h_hat = h_hat - S(2.0 * dt) * h_hat / h2 - S(p.hat_noise_scale() * dB);
    s.dh_dz = dh - S(2.0 * dt) * dh / h2;
    s.dh_hat_dz = dh_hat + S(dt) * (S(-2.0) * dh_hat / h2 + S(4.0) * h_hat * dh / (h2 * h));

    if (magnitude(s.h) < p.swallow_eps || crossed_singularity(h, s.h)) s.swallowed = true;
}

} // namespace detail

/// One Euler-Maruyama update over (dB, dt). Swallowed states are frozen;
/// time advances regardless so checkpoint bookkeeping stays aligned.
template <class S>
void euler_step(PointState<S>& s, double dB, double dt, const SdeParams& params)
{
    detail::step_recursive(s, dB, dt, params, 16);
    s.t += dt;
}

/// g-frame values: g = h + sqrt(kappa) B, ghat = hhat + kappa_hat/(2 sqrt(kappa)) B.
template <class S>
std::pair<S, S> to_g_frame(const PointState<S>& s, double brownian_value, const SdeParams& params)
{
    return {s.h + S(params.noise_scale() * brownian_value),
            s.h_hat + S(params.hat_noise_scale() * brownian_value)};
}

/// Snapshots of an ensemble of seed points driven by one shared Brownian
/// path: states[k][j] is point j at checkpoint k.
template <class S>
struct Trajectory {
    std::vector<double> times;
    std::vector<double> brownian;
    std::vector<std::vector<PointState<S>>> states;
};

inline void validate_checkpoints(const std::vector<double>& checkpoints, double t_max)
{
    double prev = 0.0;
    for (double c : checkpoints) {
        if (c < prev) throw std::invalid_argument("checkpoints must be sorted and nonnegative");
        if (c > t_max) throw std::invalid_argument("checkpoint beyond t_max");
        prev = c;
    }
}

template <class S>
Trajectory<S> evolve(const std::vector<S>& points, const SdeParams& params,
                     const std::vector<double>& checkpoints, GaussianStream& stream)
{
    params.validate();
    if (points.empty()) throw std::invalid_argument("empty seed point list");
    validate_checkpoints(checkpoints, params.t_max);

    Trajectory<S> traj;
    std::vector<PointState<S>> states;
    states.reserve(points.size());
    for (const S& z : points) states.push_back(PointState<S>::initial(z));

    double t = 0.0;
    double brownian = 0.0;
    for (double target : checkpoints) {
        while (t < target) {
            const double step_len = std::min(params.dt, target - t);
            const double dB = stream.increment(step_len);
            for (auto& s : states) euler_step(s, dB, step_len, params);
            brownian += dB;
            t = std::min(target, t + step_len);
        }
        traj.times.push_back(target);
        traj.brownian.push_back(brownian);
        traj.states.push_back(states);
    }
    return traj;
}

template <class S>
Trajectory<S> evolve(const std::vector<S>& points, const SdeParams& params,
                     const std::vector<double>& checkpoints)
{
    GaussianStream stream(params.seed);
    return evolve(points, params, checkpoints, stream);
}

} // namespace logsle
