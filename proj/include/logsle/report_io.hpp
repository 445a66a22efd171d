#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "logsle/loewner.hpp"
#include "logsle/martingale.hpp"
#include "logsle/numfmt.hpp"

namespace logsle {

using ordered_json = nlohmann::ordered_json;

ordered_json params_to_json(const SdeParams& params);

ordered_json mc_report_to_json(const McReport& report);
McReport mc_report_from_json(const ordered_json& j);
bool reports_equal(const McReport& a, const McReport& b);

void write_mc_report_csv(std::ostream& os, const McReport& report);

/// Rows `path,point_index,t,...` per the trajectory schema, preceded by
/// commented provenance lines with the resolved configuration.
void write_trajectory_csv(std::ostream& os,
                          const std::vector<Trajectory<std::complex<double>>>& paths,
                          const SdeParams& params);

ordered_json module_mc_to_json(const ModuleMcResult& mc, const ModuleState& oracle,
                               const SdeParams& params, const Rational& delta, int level_cutoff);

/// Writes text to the path, or to the fallback stream when path is empty.
void emit_text(const std::string& text, const std::string& path, std::ostream& fallback);

} // namespace logsle
