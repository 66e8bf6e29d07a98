#include "geoflow/models.hpp"

#include <map>
#include <mutex>

#include "geoflow/connection.hpp"
#include "geoflow/errors.hpp"

namespace geoflow {

std::vector<std::string> model_names() {
  return {"heisenberg", "flat_split", "warped_control", "hopf_s3", "octonionic_hopf"};
}

namespace {

std::shared_ptr<ModelSpace> build(const std::string& name) {
  if (name == "heisenberg") return heisenberg();
  if (name == "flat_split") return flat_split();
  if (name == "warped_control") return warped_control();
  if (name == "hopf_s3") return hopf_s3();
  if (name == "octonionic_hopf") return octonionic_hopf();
  throw GeoflowError("unknown model: " + name);
}

// Declarations are hypotheses; check them against the diagnostics before
// handing the model out.
void recheck(const ModelSpace& m) {
  const Tolerances tol;
  const auto samples = m.sample_points(4);
  const FoliationReport rep = foliation_diagnostics(m, samples, tol);
  if (rep.tg_ok != m.declared.totally_geodesic)
    throw GeoflowError(m.name + ": totally-geodesic declaration contradicts diagnostics");
  if (rep.rf_ok != m.declared.riemannian_foliation)
    throw GeoflowError(m.name + ": Riemannian-foliation declaration contradicts diagnostics");
  const bool parallel = m.declared.totally_geodesic && m.declared.riemannian_foliation;
  if (rep.rnabla_zero != parallel)
    throw GeoflowError(m.name + ": adapted-connection metricity contradicts diagnostics");

  if (m.vdim > 1) {
    double worst = 0.0;
    for (const Point& p : samples) {
      const Mat frame = m.full_frame(p);
      for (int a = m.hdim; a < m.dim; ++a)
        for (int b = a + 1; b < m.dim; ++b)
          worst = std::max(worst, cocurvature(m, p, frame.col(a), frame.col(b))
                                      .components.cwiseAbs()
                                      .maxCoeff());
    }
    if ((worst <= tol.foliation) != m.declared.v_integrable)
      throw GeoflowError(m.name + ": integrability declaration contradicts cocurvature");
  }

  if (m.declared.principal_bundle) {
    if (!m.bundle) throw GeoflowError(m.name + ": declared principal bundle without bundle data");
    for (const Point& p : samples) {
      const Vec xi = m.charts[static_cast<size_t>(p.chart)].vframe(p.x).col(0);
      const Vec w = (*m.bundle).omega_chart[static_cast<size_t>(p.chart)](p.x, xi);
      if (std::abs(w[0] - 1.0) > 1e-9)
        throw GeoflowError(m.name + ": connection form does not normalize the generator");
    }
  }
}

}  // namespace

std::shared_ptr<const ModelSpace> get_model(const std::string& name, bool recheck_properties) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ModelSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  std::shared_ptr<ModelSpace> m = build(name);
  if (recheck_properties) recheck(*m);
  cache[name] = m;
  return m;
}

ModelDescriptor describe(const ModelSpace& model) {
  ModelDescriptor d;
  d.name = model.name;
  d.dim = model.dim;
  d.hdim = model.hdim;
  d.vdim = model.vdim;
  d.charts = model.atlas.size();
  d.declared = model.declared;
  d.has_submersion = model.has_submersion();
  return d;
}

}  // namespace geoflow
