#include "logsle/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logsle/numfmt.hpp"
#include "logsle/rng.hpp"

namespace logsle {

SleWalk sle_walk_exact(const DualRational& k)
{
    const auto amplitude = sqrt_exact(k);
    if (!amplitude)
        throw std::domain_error(
            "walk parameter has no exact square root; the bulk must be a perfect rational square");
    SleWalk walk;
    walk.k = k;
    walk.noise_amplitude = *amplitude;
    walk.a[-2] = DualRational(Rational(-2));
    walk.b[-1] = *amplitude;
    return walk;
}

DualReal observable(const PointState<double>& state, const Rational& delta)
{
    if (state.swallowed) throw std::domain_error("absorbed point: observable undefined");
    const DualReal f(state.h, state.h_hat);
    const DualReal fprime(state.dh_dz, state.dh_hat_dz);
    const DualReal exponent(to_double(delta), 1.0);
    return pow(fprime, exponent) * pow(f, DualReal(-2.0) * exponent);
}

namespace {

struct Sample {
    double body = 0.0;
    double slope = 0.0;
    bool valid = false;
};

struct CellStats {
    double mean_body = 0.0, se_body = 0.0;
    double mean_slope = 0.0, se_slope = 0.0;
    std::size_t used = 0;
};

// Two-pass mean/SE over the valid samples of one (checkpoint, point) cell,
// in path order so the result is independent of the execution policy.
CellStats cell_stats(const std::vector<Sample>& samples)
{
    CellStats st;
    for (const auto& s : samples)
        if (s.valid) {
            st.mean_body += s.body;
            st.mean_slope += s.slope;
            ++st.used;
        }
    if (st.used == 0) return st;
    st.mean_body /= static_cast<double>(st.used);
    st.mean_slope /= static_cast<double>(st.used);
    if (st.used < 2) return st;
    double var_body = 0.0, var_slope = 0.0;
    for (const auto& s : samples)
        if (s.valid) {
            var_body += (s.body - st.mean_body) * (s.body - st.mean_body);
            var_slope += (s.slope - st.mean_slope) * (s.slope - st.mean_slope);
        }
    const double denom = static_cast<double>(st.used - 1) * static_cast<double>(st.used);
    st.se_body = std::sqrt(var_body / denom);
    st.se_slope = std::sqrt(var_slope / denom);
    return st;
}

double quantile_threshold(std::vector<double> magnitudes, double q)
{
    if (magnitudes.empty()) return 0.0;
    const auto rank = static_cast<std::size_t>(q * static_cast<double>(magnitudes.size() - 1));
    std::nth_element(magnitudes.begin(), magnitudes.begin() + rank, magnitudes.end());
    return magnitudes[rank];
}

} // namespace

McReport mc_drift_report(const std::vector<double>& points, const Rational& delta,
                         const SdeParams& params, std::size_t n_paths,
                         const std::vector<double>& checkpoints, Exec exec, double clip_quantile)
{
    params.validate();
    validate_checkpoints(checkpoints, params.t_max);
    if (points.empty()) throw std::invalid_argument("empty seed point list");
    if (n_paths < 100) throw std::invalid_argument("n_paths must be at least 100");
    for (double x : points)
        if (!(x > 0)) throw std::invalid_argument("real-axis seed points must be positive");

    const std::size_t n_points = points.size();
    const std::size_t n_ckpts = checkpoints.size();
    std::vector<Sample> samples(n_paths * n_ckpts * n_points);

    for_each_path(n_paths, exec, [&](std::size_t path) {
        GaussianStream stream(substream_seed(params.seed, path));
        const Trajectory<double> traj = evolve(points, params, checkpoints, stream);
        for (std::size_t k = 0; k < n_ckpts; ++k) {
            for (std::size_t j = 0; j < n_points; ++j) {
                const PointState<double>& s = traj.states[k][j];
                Sample& slot = samples[(path * n_ckpts + k) * n_points + j];
                if (s.swallowed || !(s.h > 0.0) || !(s.dh_dz > 0.0)) continue;
                const DualReal m = observable(s, delta);
                slot = {m.body, m.slope, true};
            }
        }
    });

    // deterministic baseline: the observable at t = 0 is a constant per point
    std::vector<DualReal> baseline;
    baseline.reserve(n_points);
    for (double x : points) baseline.push_back(observable(PointState<double>::initial(x), delta));

    McReport report;
    report.observable_name = "boundary_map_observable";
    report.params = params;
    report.delta = delta;
    report.n_paths = n_paths;
    report.points = points;
    report.checkpoints = checkpoints;
    report.clip_quantile = clip_quantile;
    report.absorbed_counts.assign(n_ckpts, 0);
    report.clipped_counts.assign(n_ckpts, 0);
    report.max_abs.assign(n_ckpts, 0.0);
    report.components.resize(2 * n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
        report.components[2 * j].name = "x=" + format_double(points[j]) + ":bulk";
        report.components[2 * j + 1].name = "x=" + format_double(points[j]) + ":slope";
    }

    std::vector<Sample> cell(n_paths);
    for (std::size_t k = 0; k < n_ckpts; ++k) {
        std::size_t absorbed = 0, clipped = 0;
        double max_abs = 0.0;
        for (std::size_t j = 0; j < n_points; ++j) {
            for (std::size_t path = 0; path < n_paths; ++path)
                cell[path] = samples[(path * n_ckpts + k) * n_points + j];

            for (const auto& s : cell) {
                if (!s.valid) {
                    ++absorbed;
                    continue;
                }
                max_abs = std::max({max_abs, std::abs(s.body), std::abs(s.slope)});
            }
            if (clip_quantile > 0.0 && clip_quantile < 1.0) {
                std::vector<double> mags;
                mags.reserve(n_paths);
                for (const auto& s : cell)
                    if (s.valid) mags.push_back(std::abs(s.body));
                const double cut = quantile_threshold(std::move(mags), clip_quantile);
                for (auto& s : cell)
                    if (s.valid && std::abs(s.body) > cut) {
                        s.valid = false;
                        ++clipped;
                    }
            }

            const CellStats st = cell_stats(cell);
            if (st.used == 0)
                throw std::runtime_error("all paths absorbed at checkpoint " +
                                         std::to_string(checkpoints[k]));

            auto push = [&](McComponent& comp, double mean, double se, double base) {
                comp.means.push_back(mean);
                comp.ses.push_back(se);
                comp.zscores.push_back(se > 0.0 ? (mean - base) / se : 0.0);
            };
            push(report.components[2 * j], st.mean_body, st.se_body, baseline[j].body);
            push(report.components[2 * j + 1], st.mean_slope, st.se_slope, baseline[j].slope);
        }
        report.absorbed_counts[k] = absorbed;
        report.clipped_counts[k] = clipped;
        report.max_abs[k] = max_abs;
    }
    return report;
}

namespace {

ModuleState truncate_level(const ModuleState& s, int cutoff)
{
    ModuleState out(s.context());
    for (const auto& [p, c] : s.terms())
        if (level(p) <= cutoff) out.add_term(p, c);
    return out;
}

void require_level_raising(const CoeffMap& coeffs)
{
    for (const auto& [n, c] : coeffs)
        if (n >= 0 && !c.is_zero())
            throw std::invalid_argument("non-graded walk not supported: mode " + std::to_string(n));
}

// alpha0 + beta^2/2 applied and truncated; truncation is exact because the
// walk only raises levels.
ModuleState drift_apply(const CoeffMap& a, const CoeffMap& b, const ModuleState& s, int cutoff)
{
    ModuleState out = apply_operator(a, s);
    ModuleState noise = apply_operator(b, apply_operator(b, s));
    noise *= DualRational(Rational(1, 2));
    out += noise;
    return truncate_level(out, cutoff);
}

} // namespace

ModuleState module_expected_state(const Rational& t, int level_cutoff, const CoeffMap& a,
                                  const CoeffMap& b, const ModuleContext& ctx)
{
    if (level_cutoff < 2) throw std::invalid_argument("level_cutoff must be at least 2");
    require_level_raising(a);
    require_level_raising(b);

    ModuleState total = ModuleState::highest_weight(ctx);
    ModuleState term = total;
    for (int k = 1; k <= level_cutoff && !term.is_zero(); ++k) {
        term = drift_apply(a, b, term, level_cutoff);
        term *= DualRational(t / k);
        total += term;
    }
    return total;
}

ModuleMcResult module_mc_state(double t, int level_cutoff, const CoeffMap& a, const CoeffMap& b,
                               const ModuleContext& ctx, std::size_t n_paths, double dt,
                               std::uint64_t seed, Exec exec)
{
    if (level_cutoff < 2) throw std::invalid_argument("level_cutoff must be at least 2");
    if (!(dt > 0) || t < 0) throw std::invalid_argument("need dt > 0 and t >= 0");
    if (n_paths == 0) throw std::invalid_argument("need at least one path");
    require_level_raising(a);
    require_level_raising(b);

    const std::vector<Partition> basis = partition_basis(level_cutoff);
    const std::size_t n = basis.size();

    // drift generator: matrix of alpha0 + beta^2/2; noise generator: beta
    const auto noise_rat = operator_matrix(b, basis, ctx);
    auto drift_rat = operator_matrix(a, basis, ctx);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            DualRational acc;
            for (std::size_t m = 0; m < n; ++m) acc += noise_rat[i][m] * noise_rat[m][j];
            drift_rat[i][j] += DualRational(Rational(1, 2)) * acc;
        }

    struct Triplet {
        std::size_t source, target;
        DualReal coeff;
    };
    std::vector<Triplet> drift_entries, noise_entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!drift_rat[i][j].is_zero()) drift_entries.push_back({j, i, to_real(drift_rat[i][j])});
            if (!noise_rat[i][j].is_zero()) noise_entries.push_back({j, i, to_real(noise_rat[i][j])});
        }

    std::vector<DualReal> states(n_paths * n);

    for_each_path(n_paths, exec, [&](std::size_t path) {
        GaussianStream stream(substream_seed(seed, path));
        std::vector<DualReal> walk(n * n);
        for (std::size_t i = 0; i < n; ++i) walk[i * n + i] = DualReal(1.0);
        std::vector<DualReal> update(n * n);

        const auto n_full = static_cast<std::size_t>(t / dt + 1e-9);
        const double tail = std::max(0.0, t - static_cast<double>(n_full) * dt);
        for (std::size_t step = 0; step <= n_full; ++step) {
            const double len = (step < n_full) ? dt : tail;
            if (!(len > 0.0)) break;
            const double dB = stream.increment(len);
            std::fill(update.begin(), update.end(), DualReal());
            // update = walk * (drift*len + noise*dB), entries indexed (row, col)
            for (const auto& e : drift_entries) {
                const DualReal scaled = e.coeff * DualReal(len);
                for (std::size_t r = 0; r < n; ++r)
                    update[r * n + e.target] += walk[r * n + e.source] * scaled;
            }
            for (const auto& e : noise_entries) {
                const DualReal scaled = e.coeff * DualReal(dB);
                for (std::size_t r = 0; r < n; ++r)
                    update[r * n + e.target] += walk[r * n + e.source] * scaled;
            }
            for (std::size_t i = 0; i < n * n; ++i) walk[i] += update[i];
        }
        for (std::size_t i = 0; i < n; ++i) states[path * n + i] = walk[i * n]; // column of |hw>
    });

    ModuleMcResult result;
    result.basis = basis;
    result.n_paths = n_paths;
    result.t = t;
    result.dt = dt;
    result.seed = seed;
    result.means.assign(n, DualReal());
    result.ses.assign(n, DualReal());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t path = 0; path < n_paths; ++path) {
            const DualReal& x = states[path * n + i];
            result.means[i].body += x.body;
            result.means[i].slope += x.slope;
        }
        result.means[i].body /= static_cast<double>(n_paths);
        result.means[i].slope /= static_cast<double>(n_paths);
        if (n_paths < 2) continue;
        double var_body = 0.0, var_slope = 0.0;
        for (std::size_t path = 0; path < n_paths; ++path) {
            const DualReal& x = states[path * n + i];
            var_body += (x.body - result.means[i].body) * (x.body - result.means[i].body);
            var_slope += (x.slope - result.means[i].slope) * (x.slope - result.means[i].slope);
        }
        const double denom = static_cast<double>(n_paths - 1) * static_cast<double>(n_paths);
        result.ses[i] = DualReal(std::sqrt(var_body / denom), std::sqrt(var_slope / denom));
    }
    return result;
}

} // namespace logsle
