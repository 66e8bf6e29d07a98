#include "geoflow/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geoflow/errors.hpp"

namespace geoflow {

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw GeoflowError("cannot open " + tmp.string() + " for writing");
    out << content;
  }
  fs::rename(tmp, target);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trajectory_csv(const ModelSpace& model, const Trajectory& traj) {
  std::ostringstream os;
  const int n = model.dim;
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",p" << i;
  os << ",chart_id,H\r\n";
  for (size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.t[k]);
    for (int i = 0; i < n; ++i) os << "," << format_double(traj.x[k].x[i]);
    for (int i = 0; i < n; ++i) os << "," << format_double(traj.p[k][i]);
    os << "," << traj.x[k].chart << "," << format_double(traj.energy[k]) << "\r\n";
  }
  return os.str();
}

}  // namespace geoflow
