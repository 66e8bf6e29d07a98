#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "geoflow/bundle.hpp"

namespace geoflow {

// Outcome of one verification suite. `identity_holds` is the numerical
// verdict; `expected_identity` is what the model declarations predict; a
// suite passes when the two agree (negative controls pass by violating the
// identity).
struct SuiteResult {
  std::string suite;
  std::string model;
  bool applicable = true;
  bool identity_holds = false;
  bool expected_identity = false;
  bool inconclusive = false;
  nlohmann::json details;

  bool match() const {
    return applicable && !inconclusive && identity_holds == expected_identity;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  FlowConfig flow;
  Tolerances tol;
  int bracket_states = 100;       // random phase states for the bracket sup
  int metric_samples = 100;       // points for the nabla-hat g sup
  int covectors = 10;             // seeded covectors for geodesic identities
  std::vector<double> t_grid = {0.1, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> ladder = {4e-3, 2e-3, 1e-3};
  double pass_tol = 1e-6;         // identity accepted below this
  double fail_floor = 1e-3;       // identity rejected above this
};

SuiteResult verify_commute(const ModelSpace& model, const VerifyOptions& opt);
SuiteResult verify_foliation(const ModelSpace& model, const VerifyOptions& opt);
SuiteResult verify_factorization(const ModelSpace& model, const VerifyOptions& opt);
SuiteResult verify_projection(const ModelSpace& model, const VerifyOptions& opt);
SuiteResult verify_gauge(const ModelSpace& model, const VerifyOptions& opt);
SuiteResult verify_lcpb(const ModelSpace& model, const VerifyOptions& opt);

// Suites applicable to the model, in a fixed order.
std::vector<std::string> suites_for(const ModelSpace& model);
SuiteResult run_suite(const std::string& suite, const ModelSpace& model,
                      const VerifyOptions& opt);

nlohmann::json suite_json(const SuiteResult& r);

// Seeded phase states inside the sampling box of the model.
std::vector<PhaseState> seeded_states(const ModelSpace& model, std::uint64_t seed, int count,
                                      double p_scale);
std::vector<Vec> seeded_covectors(const ModelSpace& model, std::uint64_t seed, int count);

}  // namespace geoflow
