#pragma once

#include <string>

#include "singlab/deformlab.hpp"

namespace singlab {

/// Machine-readable basin report. Stable key names: family, seed, schedule,
/// tolerances, per_t (t, points: coords/multiplicity/residual), trajectories
/// (classification, limit, multiplicity), mu_along_W.
std::string basin_report_json(const BasinReport& report);
void write_basin_report(const std::string& path, const BasinReport& report);

}  // namespace singlab
