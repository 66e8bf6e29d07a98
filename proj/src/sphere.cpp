#include "geoflow/sphere.hpp"

namespace geoflow {

Atlas SphereGeometry::make_atlas() const {
  Atlas atlas;
  const double guard = guard_radius;
  auto inversion = VecMap([](const auto& xi) {
    using V = std::decay_t<decltype(xi)>;
    using T = typename V::Scalar;
    const T s = xi.dot(xi);
    return V(xi / s);
  });
  for (int c = 0; c < 2; ++c) {
    Chart ch;
    ch.id = c;
    ch.dim = n;
    ch.guard = [guard](const Vec& x) { return x.norm() <= guard && x.allFinite(); };
    ch.switch_radius = switch_radius;
    ch.transitions.push_back(Transition{1 - c, inversion, inversion});
    atlas.charts.push_back(std::move(ch));
  }
  return atlas;
}

}  // namespace geoflow
