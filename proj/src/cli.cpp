#include "logsle/cli.hpp"

#include <complex>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "logsle/linkmap.hpp"
#include "logsle/report_io.hpp"

namespace logsle {

namespace {

std::string pretty_dual(const DualRational& d)
{
    std::string s = to_string(d.body);
    if (d.slope != 0) {
        s += d.slope > 0 ? " + (" : " - (";
        s += to_string(d.slope > 0 ? d.slope : Rational(-d.slope));
        s += ")*theta";
    }
    return s;
}

std::string pretty_poly(const LaurentPoly<DualRational>& p)
{
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : p.coeffs()) {
        if (!s.empty()) s += "  +  ";
        s += "[" + pretty_dual(c) + "]";
        if (e != 0) s += " f^" + std::to_string(e);
    }
    return s;
}

SdeParams to_sde_params(const RunConfig& cfg)
{
    SdeParams p;
    p.kappa = cfg.kappa;
    p.kappa_hat = cfg.kappa_hat;
    p.dt = cfg.dt;
    p.t_max = cfg.t_max;
    p.swallow_eps = cfg.swallow_eps;
    p.seed = cfg.seed;
    return p;
}

int fail(std::ostream& err, const std::string& message)
{
    err << "error: " << message << "\n";
    return 2;
}

int run_nullvector(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (2 * cfg.delta + 1 == 0)
        return fail(err, "--delta: gamma pole at delta = -1/2, no level-two null vector");

    const NullVector nv = level_two_null_vector(cfg.delta);
    const VanishingCheck with_dual = check_vanishing(nv.chi);
    const DualRational k = locus_parameter(cfg.delta);
    const bool logarithmic = nv.central.slope == 0;

    // cross-check against the classification: with the central charge forced
    // theta-free the vanishing must survive exactly when the pair is special
    ModuleContext bulk_ctx{cfg.delta, DualRational(nv.central.body)};
    ModuleState chi_bulk(bulk_ctx);
    chi_bulk.add_term({2}, DualRational(Rational(-2)));
    chi_bulk.add_term({1, 1}, nv.gamma);
    const bool bulk_null = check_vanishing(chi_bulk).is_null;
    const bool consistent = with_dual.is_null && (bulk_null == logarithmic);

    out << "delta = " << to_string(cfg.delta) << "\n";
    out << "gamma = " << pretty_dual(nv.gamma) << "\n";
    out << "central charge c = " << pretty_dual(nv.central) << "\n";
    out << "walk parameter k(theta) = " << pretty_dual(k)
        << "  (bulk kappa = " << to_string(k.body) << ")\n";
    if (k.body < 0) out << "note: bulk kappa is negative, not an ordinary chordal regime\n";
    out << "is_null = " << (with_dual.is_null ? "true" : "false") << "\n";
    out << "logarithmic pair (c fixed, theta-free) = " << (logarithmic ? "yes" : "no") << "\n";

    if (!cfg.out_path.empty() || cfg.format == "json") {
        ordered_json j;
        j["command"] = "nullvector";
        j["delta"] = to_string(cfg.delta);
        j["gamma"] = {{"body", to_string(nv.gamma.body)}, {"slope", to_string(nv.gamma.slope)}};
        j["central"] = {{"body", to_string(nv.central.body)},
                        {"slope", to_string(nv.central.slope)}};
        j["k"] = {{"body", to_string(k.body)}, {"slope", to_string(k.slope)}};
        j["is_null"] = with_dual.is_null;
        j["logarithmic"] = logarithmic;
        if (!cfg.out_path.empty()) emit_text(j.dump(2) + "\n", cfg.out_path, out);
    }
    return consistent ? 0 : 1;
}

int run_link(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool kappa_given)
{
    DualRational k;
    if (kappa_given) {
        k = DualRational(Rational(cfg.kappa), Rational(cfg.kappa_hat));
        if (cfg.kappa <= 0) return fail(err, "--kappa: must be positive");
    } else {
        k = locus_parameter(cfg.delta);
    }
    SleWalk walk;
    try {
        walk = sle_walk_exact(k);
    } catch (const std::domain_error& e) {
        return fail(err, std::string("--kappa: ") + e.what());
    }

    const auto nu = diffusion_poly<Rational>({{-1, walk.noise_amplitude}});
    const auto mu = drift_poly<Rational>({{-2, DualRational(Rational(-2))}},
                                         {{-1, walk.noise_amplitude}});
    const auto mu_split = expand_tau(mu);
    const auto nu_split = expand_tau(nu);

    auto poly_str = [](const LaurentPoly<Rational>& p, const char* var) {
        if (p.is_zero()) return std::string("0");
        std::string s;
        for (const auto& [e, c] : p.coeffs()) {
            if (!s.empty()) s += " + ";
            s += "(" + to_string(c) + ")";
            if (e != 0) s += std::string("*") + var + "^" + std::to_string(e);
        }
        return s;
    };

    out << "walk parameter k(theta) = " << pretty_dual(k) << "\n";
    out << "nu(f)  = " << pretty_poly(nu) << "\n";
    out << "mu(f)  = " << pretty_poly(mu) << "\n";
    out << "dh     = [" << poly_str(mu_split.bulk, "h") << "] dt + ["
        << poly_str(nu_split.bulk, "h") << "] dB\n";
    out << "dhhat  = [" << poly_str(mu_split.hat_shift, "h") << " + ("
        << poly_str(mu_split.bulk_derivative, "h") << ")*hhat] dt + ["
        << poly_str(nu_split.hat_shift, "h") << "] dB\n";

    if (!cfg.out_path.empty()) {
        ordered_json j;
        j["command"] = "link";
        j["k"] = {{"body", to_string(k.body)}, {"slope", to_string(k.slope)}};
        auto poly_json = [](const LaurentPoly<DualRational>& p) {
            ordered_json arr = ordered_json::array();
            for (const auto& [e, c] : p.coeffs())
                arr.push_back({{"exponent", e},
                               {"body", to_string(c.body)},
                               {"slope", to_string(c.slope)}});
            return arr;
        };
        j["nu"] = poly_json(nu);
        j["mu"] = poly_json(mu);
        emit_text(j.dump(2) + "\n", cfg.out_path, out);
    }
    return 0;
}

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const SdeParams params = to_sde_params(cfg);
    if (cfg.points.empty()) return fail(err, "--points: need at least one seed point");
    if (!cfg.points_im.empty() && cfg.points_im.size() != cfg.points.size())
        return fail(err, "--points-im: length must match --points");

    std::vector<std::complex<double>> points;
    points.reserve(cfg.points.size());
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        points.emplace_back(cfg.points[i], cfg.points_im.empty() ? 0.0 : cfg.points_im[i]);

    const Exec exec = cfg.serial ? Exec::serial : Exec::parallel;
    std::vector<Trajectory<std::complex<double>>> paths(cfg.n_paths);
    for_each_path(cfg.n_paths, exec, [&](std::size_t i) {
        GaussianStream stream(substream_seed(params.seed, i));
        paths[i] = evolve(points, params, cfg.checkpoints, stream);
    });

    std::size_t swallowed = 0, total = 0;
    for (const auto& traj : paths) {
        if (traj.states.empty()) continue;
        for (const auto& s : traj.states.back()) {
            ++total;
            if (s.swallowed) ++swallowed;
        }
    }

    std::ostringstream csv;
    write_trajectory_csv(csv, paths, params);
    emit_text(csv.str(), cfg.out_path, out);
    if (!cfg.out_path.empty())
        out << "wrote " << cfg.out_path << ": " << cfg.n_paths << " paths, "
            << cfg.points.size() << " points, " << cfg.checkpoints.size() << " checkpoints; "
            << swallowed << "/" << total << " swallowed at final time\n";
    return 0;
}

int run_martingale(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const SdeParams params = to_sde_params(cfg);
    for (double x : cfg.points)
        if (!(x > 0)) return fail(err, "--points: martingale mode needs positive real seeds");
    if (cfg.n_paths < 100) return fail(err, "--n-paths: need at least 100");

    const Exec exec = cfg.serial ? Exec::serial : Exec::parallel;
    const McReport report = mc_drift_report(cfg.points, cfg.delta, params, cfg.n_paths,
                                            cfg.checkpoints, exec, cfg.clip_quantile);

    for (std::size_t k = 0; k < report.checkpoints.size(); ++k) {
        double worst = 0.0;
        for (const auto& c : report.components)
            worst = std::max(worst, std::abs(c.zscores[k]));
        out << "t = " << format_double(report.checkpoints[k]) << "  max|z| = "
            << format_double(worst) << "  absorbed = " << report.absorbed_counts[k]
            << "  max|M| = " << format_double(report.max_abs[k]) << "\n";
    }

    std::string text;
    if (cfg.format == "csv") {
        std::ostringstream os;
        write_mc_report_csv(os, report);
        text = os.str();
    } else {
        text = mc_report_to_json(report).dump(2) + "\n";
    }
    if (!cfg.out_path.empty()) {
        emit_text(text, cfg.out_path, out);
        out << "wrote " << cfg.out_path << "\n";
    } else if (cfg.format == "csv") {
        out << text;
    }
    return 0;
}

int run_module_mc(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool kappa_given)
{
    DualRational k;
    if (kappa_given)
        k = DualRational(Rational(cfg.kappa), Rational(cfg.kappa_hat));
    else
        k = locus_parameter(cfg.delta);

    SleWalk walk;
    try {
        walk = sle_walk_exact(k);
    } catch (const std::domain_error& e) {
        return fail(err, std::string("--kappa: ") + e.what());
    }
    const ModuleContext ctx{cfg.delta, level_two_null_vector(cfg.delta).central};
    const SdeParams params = to_sde_params(cfg);

    const ModuleState oracle =
        module_expected_state(Rational(cfg.t_max), cfg.level_cutoff, walk.a, walk.b, ctx);
    const Exec exec = cfg.serial ? Exec::serial : Exec::parallel;
    const ModuleMcResult mc = module_mc_state(cfg.t_max, cfg.level_cutoff, walk.a, walk.b, ctx,
                                              cfg.n_paths, cfg.dt, cfg.seed, exec);

    double worst = 0.0;
    for (std::size_t i = 0; i < mc.basis.size(); ++i) {
        const DualReal expect = to_real(oracle.coeff(mc.basis[i]));
        if (mc.ses[i].body > 0)
            worst = std::max(worst, std::abs(mc.means[i].body - expect.body) / mc.ses[i].body);
        if (mc.ses[i].slope > 0)
            worst = std::max(worst, std::abs(mc.means[i].slope - expect.slope) / mc.ses[i].slope);
    }
    out << "module walk: " << mc.basis.size() << " basis states, t = " << format_double(mc.t)
        << ", max|z| vs oracle = " << format_double(worst) << "\n";

    const ordered_json j = module_mc_to_json(mc, oracle, params, cfg.delta, cfg.level_cutoff);
    if (!cfg.out_path.empty()) {
        emit_text(j.dump(2) + "\n", cfg.out_path, out);
        out << "wrote " << cfg.out_path << "\n";
    }
    return 0;
}

} // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"stochastic Loewner evolutions coupled to Jordan-cell Virasoro modules"};
    app.set_config("--config");
    app.fallthrough();

    app.add_option("--delta", cfg.delta_text, "conformal weight as an exact rational p/q");
    auto* kappa_opt = app.add_option("--kappa", cfg.kappa, "bulk diffusivity");
    app.add_option("--kappa-hat", cfg.kappa_hat, "nilpotent part of the diffusivity");
    app.add_option("--dt", cfg.dt, "integrator step");
    app.add_option("--t-max", cfg.t_max, "time horizon");
    app.add_option("--swallow-eps", cfg.swallow_eps, "absorption cutoff");
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_option("--n-paths", cfg.n_paths, "ensemble size");
    app.add_option("--cutoff", cfg.level_cutoff, "module truncation level");
    app.add_option("--clip-quantile", cfg.clip_quantile, "optional |M| clip quantile in (0,1)");
    app.add_option("--points", cfg.points, "seed points (real parts)")->delimiter(',');
    app.add_option("--points-im", cfg.points_im, "imaginary parts of the seed points")
        ->delimiter(',');
    app.add_option("--checkpoints", cfg.checkpoints, "report times")->delimiter(',');
    app.add_option("--out", cfg.out_path, "output artifact path");
    app.add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--serial", cfg.serial, "run the serial reference ensemble");

    auto* cmd_null = app.add_subcommand("nullvector", "level-two logarithmic null vector");
    auto* cmd_link = app.add_subcommand("link", "walk-to-map drift and diffusion polynomials");
    auto* cmd_sim = app.add_subcommand("simulate", "trajectory export for the coupled flow");
    auto* cmd_mart = app.add_subcommand("martingale", "Monte Carlo drift test of the observable");
    auto* cmd_mod = app.add_subcommand("module-mc", "module walk versus the exact expectation");
    app.require_subcommand(0, 1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        cfg.delta = parse_rational(cfg.delta_text);
    } catch (const std::invalid_argument& e) {
        return fail(err, std::string("--delta: ") + e.what());
    }

    const bool stochastic = cmd_sim->parsed() || cmd_mart->parsed() || cmd_mod->parsed();
    if (stochastic) {
        if (!(cfg.kappa > 0)) return fail(err, "--kappa: must be positive");
        if (!(cfg.dt > 0)) return fail(err, "--dt: must be positive");
        if (!(cfg.t_max > 0) || cfg.dt > cfg.t_max)
            return fail(err, "--t-max: need 0 < dt <= t_max");
        double prev = 0.0;
        for (double c : cfg.checkpoints) {
            if (c < prev || c > cfg.t_max)
                return fail(err, "--checkpoints: must be sorted within [0, t_max]");
            prev = c;
        }
    }

    try {
        if (cmd_null->parsed()) {
            cfg.command = "nullvector";
            return run_nullvector(cfg, out, err);
        }
        if (cmd_link->parsed()) {
            cfg.command = "link";
            return run_link(cfg, out, err, kappa_opt->count() > 0);
        }
        if (cmd_sim->parsed()) {
            cfg.command = "simulate";
            return run_simulate(cfg, out, err);
        }
        if (cmd_mart->parsed()) {
            cfg.command = "martingale";
            return run_martingale(cfg, out, err);
        }
        if (cmd_mod->parsed()) {
            cfg.command = "module-mc";
            return run_module_mc(cfg, out, err, kappa_opt->count() > 0);
        }
    } catch (const std::exception& e) {
        return fail(err, e.what());
    }

    out << app.help();
    return 2;
}

} // namespace logsle
