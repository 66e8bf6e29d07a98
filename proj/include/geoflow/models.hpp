#pragma once

#include <memory>

#include "geoflow/model.hpp"

namespace geoflow {

// Built-in model spaces. Factories are pure; the registry caches and
// re-verifies declared properties against the diagnostics on first access.
std::shared_ptr<ModelSpace> heisenberg();
std::shared_ptr<ModelSpace> flat_split();
std::shared_ptr<ModelSpace> warped_control();
std::shared_ptr<ModelSpace> hopf_s3();
std::shared_ptr<ModelSpace> octonionic_hopf();

std::vector<std::string> model_names();
std::shared_ptr<const ModelSpace> get_model(const std::string& name, bool recheck_properties = true);

struct ModelDescriptor {
  std::string name;
  int dim = 0, hdim = 0, vdim = 0, charts = 0;
  DeclaredProperties declared;
  bool has_submersion = false;
};
ModelDescriptor describe(const ModelSpace& model);

}  // namespace geoflow
