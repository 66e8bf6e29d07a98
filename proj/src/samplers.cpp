#include "geoflow/samplers.hpp"

namespace geoflow {

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}
}  // namespace

Halton::Halton(int dim) {
  bases_.assign(static_cast<size_t>(dim), 2);
  for (int k = 0; k < dim; ++k) bases_[static_cast<size_t>(k)] = kPrimes[k];
}

Vec Halton::next() {
  Vec p(static_cast<int>(bases_.size()));
  for (size_t k = 0; k < bases_.size(); ++k)
    p[static_cast<int>(k)] = radical_inverse(index_, bases_[k]);
  ++index_;
  return p;
}

std::vector<Vec> halton_box(int dim, int count, double radius) {
  Halton h(dim);
  std::vector<Vec> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vec u = h.next();
    pts.push_back(radius * (2.0 * u.array() - 1.0).matrix());
  }
  return pts;
}

double uniform_unit(std::mt19937_64& rng) {
  // Fixed mapping from raw bits keeps the stream reproducible across
  // standard-library implementations.
  const std::uint64_t r = rng();
  return 2.0 * (static_cast<double>(r >> 11) * 0x1.0p-53) - 1.0;
}

CovectorSampler::CovectorSampler(std::uint64_t seed, int dim, double scale)
    : rng_(seed), dim_(dim), scale_(scale) {}

Vec CovectorSampler::next() {
  Vec p(dim_);
  do {
    for (int i = 0; i < dim_; ++i) p[i] = uniform_unit(rng_);
  } while (p.norm() < 1e-3);
  return scale_ * p / p.norm();
}

}  // namespace geoflow
