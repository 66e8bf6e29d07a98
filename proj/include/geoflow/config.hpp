#pragma once

namespace geoflow {

// All numerical tolerances in one record. Defaults are the values used by
// the verification suites; the CLI may override individual fields.
struct Tolerances {
  double transition = 1e-10;     // chart forward/inverse roundtrip
  double spd = 1e-10;            // smallest admissible metric eigenvalue
  double rank = 1e-8;            // numerical rank cutoff for cometrics
  double fd_symmetry = 1e-6;     // mixed second partials agreement
  double cross_check = 1e-7;     // two-route identity checks
  double cross = 1e-8;           // covariant-derivative decomposition slack
  double energy = 1e-8;          // Hamiltonian drift along a flow
  double foliation = 1e-7;       // Lie-derivative residual verdict threshold
  double lift = 1e-6;            // horizontal lift tracking
  double exact_identity = 1e-10; // algebraic identities in exact-derivative mode
  double projection_identity = 1e-12;  // projector algebra residual
  double frame_gram = 1e-8;      // orthonormal frame Gram deviation
};

}  // namespace geoflow
