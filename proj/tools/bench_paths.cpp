// Benchmark of the path-ensemble kernels: serial reference versus the
// OpenMP runner, with an output-equality check since both must agree
// bitwise.

#include <chrono>
#include <iostream>

#include "logsle/martingale.hpp"
#include "logsle/report_io.hpp"

using namespace logsle;

namespace {

template <class Fn>
double time_run(Fn&& fn)
{
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv)
{
    std::size_t n_paths = 4000;
    if (argc > 1) n_paths = static_cast<std::size_t>(std::stoull(argv[1]));

    SdeParams params;
    params.kappa = 4.0;
    params.kappa_hat = -16.0 / 3.0;
    params.dt = 1e-4;
    params.t_max = 0.5;
    params.seed = 99;
    const std::vector<double> points{0.5, 1.0, 2.0};
    const std::vector<double> checkpoints{0.0, 0.25, 0.5};
    const Rational delta(1, 4);

    std::cout << "observable drift ensemble: " << n_paths << " paths, dt = " << params.dt
              << ", " << points.size() << " points\n";

    McReport serial_report, parallel_report;
    const double t_serial = time_run([&] {
        serial_report = mc_drift_report(points, delta, params, n_paths, checkpoints, Exec::serial);
    });
    const double t_parallel = time_run([&] {
        parallel_report =
            mc_drift_report(points, delta, params, n_paths, checkpoints, Exec::parallel);
    });

    std::cout << "  serial   " << t_serial << " s  (" << n_paths / t_serial << " paths/s)\n";
    std::cout << "  parallel " << t_parallel << " s  (" << n_paths / t_parallel
              << " paths/s) on " << worker_count(Exec::parallel) << " workers\n";
    std::cout << "  speedup  " << t_serial / t_parallel << "x\n";
    const bool same = reports_equal(serial_report, parallel_report);
    std::cout << "  outputs identical: " << (same ? "yes" : "NO") << "\n";

    const auto walk = sle_walk_exact(locus_parameter(delta));
    const ModuleContext ctx{delta, level_two_null_vector(delta).central};
    ModuleMcResult mc_serial, mc_parallel;
    const double m_serial = time_run([&] {
        mc_serial = module_mc_state(0.5, 4, walk.a, walk.b, ctx, n_paths, 1e-3, 7, Exec::serial);
    });
    const double m_parallel = time_run([&] {
        mc_parallel = module_mc_state(0.5, 4, walk.a, walk.b, ctx, n_paths, 1e-3, 7, Exec::parallel);
    });
    bool mc_same = true;
    for (std::size_t i = 0; i < mc_serial.means.size(); ++i)
        mc_same = mc_same && mc_serial.means[i] == mc_parallel.means[i] &&
                  mc_serial.ses[i] == mc_parallel.ses[i];

    std::cout << "module walk ensemble: " << n_paths << " paths, cutoff 4\n";
    std::cout << "  serial   " << m_serial << " s\n";
    std::cout << "  parallel " << m_parallel << " s\n";
    std::cout << "  speedup  " << m_serial / m_parallel << "x\n";
    std::cout << "  outputs identical: " << (mc_same ? "yes" : "NO") << "\n";

    return (same && mc_same) ? 0 : 1;
}
