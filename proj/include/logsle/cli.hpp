#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "logsle/rational.hpp"

namespace logsle {

/// Resolved command-line configuration; defaults keep the acceptance-scale
/// runs at desk size.
struct RunConfig {
    std::string command;
    std::string delta_text = "1/4";
    Rational delta = Rational(1, 4);
    double kappa = 4.0;
    double kappa_hat = -16.0 / 3.0;
    double dt = 1e-3;
    double t_max = 0.5;
    double swallow_eps = 1e-6;
    std::uint64_t seed = 1;
    std::size_t n_paths = 10000;
    int level_cutoff = 4;
    double clip_quantile = 0.0;
    std::vector<double> points{0.5, 1.0, 2.0};
    std::vector<double> points_im;
    std::vector<double> checkpoints{0.0, 0.1, 0.25, 0.5};
    std::string out_path;
    std::string format = "json";
    bool serial = false;
};

/// Parses argv, validates, runs the requested workflow and writes artifacts.
/// Returns the process exit status; diagnostics name the offending flag.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace logsle
