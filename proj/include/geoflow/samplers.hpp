#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geoflow/linalg.hpp"

namespace geoflow {

// Halton low-discrepancy sequence in [0,1)^dim (bases = first dim primes).
class Halton {
 public:
  explicit Halton(int dim);
  Vec next();

 private:
  std::vector<int> bases_;
  std::uint64_t index_ = 1;
};

// Deterministic point cloud in the centered box of half-width `radius`.
std::vector<Vec> halton_box(int dim, int count, double radius);

// Seeded covector sampler: components uniform in [-1,1], rescaled to the
// requested Euclidean norm. The same (seed, dim) always yields the same
// sequence.
class CovectorSampler {
 public:
  CovectorSampler(std::uint64_t seed, int dim, double scale);
  Vec next();

 private:
  std::mt19937_64 rng_;
  int dim_;
  double scale_;
};

double uniform_unit(std::mt19937_64& rng);  // uniform in [-1, 1]

}  // namespace geoflow
