#pragma once

#include <string>

#include <json.hpp>

#include "geoflow/hamiltonian.hpp"

namespace geoflow {

// Write-once file output: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);

// RFC 4180 table: t, x1..xn, p1..pn, chart_id, H.
std::string trajectory_csv(const ModelSpace& model, const Trajectory& traj);

std::string format_double(double v);

}  // namespace geoflow
