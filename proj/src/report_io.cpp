#include "logsle/report_io.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace logsle {

ordered_json params_to_json(const SdeParams& params)
{
    ordered_json j;
    j["kappa"] = params.kappa;
    j["kappa_hat"] = params.kappa_hat;
    j["dt"] = params.dt;
    j["t_max"] = params.t_max;
    j["swallow_eps"] = params.swallow_eps;
    return j;
}

static SdeParams params_from_json(const ordered_json& j)
{
    SdeParams p;
    p.kappa = j.at("kappa").get<double>();
    p.kappa_hat = j.at("kappa_hat").get<double>();
    p.dt = j.at("dt").get<double>();
    p.t_max = j.at("t_max").get<double>();
    p.swallow_eps = j.at("swallow_eps").get<double>();
    return p;
}

ordered_json mc_report_to_json(const McReport& report)
{
    ordered_json j;
    j["observable"] = report.observable_name;
    ordered_json params = params_to_json(report.params);
    params["delta"] = to_string(report.delta);
    params["points"] = report.points;
    params["clip_quantile"] = report.clip_quantile;
    j["params"] = std::move(params);
    j["seed"] = report.params.seed;
    j["n_paths"] = report.n_paths;
    j["checkpoints"] = report.checkpoints;
    ordered_json comps = ordered_json::array();
    for (const auto& c : report.components) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["means"] = c.means;
        jc["ses"] = c.ses;
        jc["zscores"] = c.zscores;
        comps.push_back(std::move(jc));
    }
    j["components"] = std::move(comps);
    j["absorbed_counts"] = report.absorbed_counts;
    j["clipped_counts"] = report.clipped_counts;
    j["max_abs"] = report.max_abs;
    return j;
}

McReport mc_report_from_json(const ordered_json& j)
{
    McReport report;
    report.observable_name = j.at("observable").get<std::string>();
    report.params = params_from_json(j.at("params"));
    report.params.seed = j.at("seed").get<std::uint64_t>();
    report.delta = parse_rational(j.at("params").at("delta").get<std::string>());
    report.points = j.at("params").at("points").get<std::vector<double>>();
    report.clip_quantile = j.at("params").at("clip_quantile").get<double>();
    report.n_paths = j.at("n_paths").get<std::size_t>();
    report.checkpoints = j.at("checkpoints").get<std::vector<double>>();
    for (const auto& jc : j.at("components")) {
        McComponent c;
        c.name = jc.at("name").get<std::string>();
        c.means = jc.at("means").get<std::vector<double>>();
        c.ses = jc.at("ses").get<std::vector<double>>();
        c.zscores = jc.at("zscores").get<std::vector<double>>();
        report.components.push_back(std::move(c));
    }
    report.absorbed_counts = j.at("absorbed_counts").get<std::vector<std::size_t>>();
    report.clipped_counts = j.at("clipped_counts").get<std::vector<std::size_t>>();
    report.max_abs = j.at("max_abs").get<std::vector<double>>();
    return report;
}

bool reports_equal(const McReport& a, const McReport& b)
{
    return mc_report_to_json(a) == mc_report_to_json(b);
}

static void write_provenance(std::ostream& os, const SdeParams& params)
{
    os << "# kappa = " << format_double(params.kappa) << "\n";
    os << "# kappa_hat = " << format_double(params.kappa_hat) << "\n";
    os << "# dt = " << format_double(params.dt) << "\n";
    os << "# t_max = " << format_double(params.t_max) << "\n";
    os << "# swallow_eps = " << format_double(params.swallow_eps) << "\n";
    os << "# seed = " << params.seed << "\n";
}

void write_mc_report_csv(std::ostream& os, const McReport& report)
{
    write_provenance(os, report.params);
    os << "# delta = " << to_string(report.delta) << "\n";
    os << "# n_paths = " << report.n_paths << "\n";
    os << "component,checkpoint,mean,se,zscore,absorbed,clipped,max_abs\n";
    for (const auto& c : report.components)
        for (std::size_t k = 0; k < report.checkpoints.size(); ++k)
            os << c.name << ',' << format_double(report.checkpoints[k]) << ','
               << format_double(c.means[k]) << ',' << format_double(c.ses[k]) << ','
               << format_double(c.zscores[k]) << ',' << report.absorbed_counts[k] << ','
               << report.clipped_counts[k] << ',' << format_double(report.max_abs[k]) << "\n";
}

void write_trajectory_csv(std::ostream& os,
                          const std::vector<Trajectory<std::complex<double>>>& paths,
                          const SdeParams& params)
{
    write_provenance(os, params);
    os << "path,point_index,t,Re_h,Im_h,Re_hhat,Im_hhat,Re_dh,Im_dh,Re_dhhat,Im_dhhat,B,"
          "swallowed\n";
    for (std::size_t path = 0; path < paths.size(); ++path) {
        const auto& traj = paths[path];
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            for (std::size_t j = 0; j < traj.states[k].size(); ++j) {
                const auto& s = traj.states[k][j];
                os << path << ',' << j << ',' << format_double(traj.times[k]) << ','
                   << format_double(s.h.real()) << ',' << format_double(s.h.imag()) << ','
                   << format_double(s.h_hat.real()) << ',' << format_double(s.h_hat.imag()) << ','
                   << format_double(s.dh_dz.real()) << ',' << format_double(s.dh_dz.imag()) << ','
                   << format_double(s.dh_hat_dz.real()) << ',' << format_double(s.dh_hat_dz.imag())
                   << ',' << format_double(traj.brownian[k]) << ',' << (s.swallowed ? 1 : 0)
                   << "\n";
            }
        }
    }
}

ordered_json module_mc_to_json(const ModuleMcResult& mc, const ModuleState& oracle,
                               const SdeParams& params, const Rational& delta, int level_cutoff)
{
    ordered_json j;
    j["observable"] = "module_walk_state";
    ordered_json p = params_to_json(params);
    p["delta"] = to_string(delta);
    p["level_cutoff"] = level_cutoff;
    j["params"] = std::move(p);
    j["seed"] = mc.seed;
    j["n_paths"] = mc.n_paths;
    j["t"] = mc.t;
    j["dt"] = mc.dt;

    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < mc.basis.size(); ++i) {
        const DualRational exact = oracle.coeff(mc.basis[i]);
        const DualReal expect = to_real(exact);
        ordered_json row;
        row["basis"] = partition_label(mc.basis[i]);
        row["oracle_bulk"] = expect.body;
        row["oracle_slope"] = expect.slope;
        row["mean_bulk"] = mc.means[i].body;
        row["mean_slope"] = mc.means[i].slope;
        row["se_bulk"] = mc.ses[i].body;
        row["se_slope"] = mc.ses[i].slope;
        const auto z = [](double mean, double oracle_v, double se) {
            const double diff = mean - oracle_v;
            if (se > 0.0) return diff / se;
            return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        };
        row["z_bulk"] = z(mc.means[i].body, expect.body, mc.ses[i].body);
        row["z_slope"] = z(mc.means[i].slope, expect.slope, mc.ses[i].slope);
        rows.push_back(std::move(row));
    }
    j["coefficients"] = std::move(rows);
    return j;
}

void emit_text(const std::string& text, const std::string& path, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << text;
    if (!out.good()) throw std::runtime_error("failed writing output path: " + path);
}

} // namespace logsle
