#include "geoflow/chart.hpp"

#include "geoflow/errors.hpp"

namespace geoflow {

namespace {
const Transition& find_transition(const Atlas& atlas, int from, int target) {
  for (const auto& t : atlas.chart(from).transitions)
    if (t.target == target) return t;
  throw OutOfChart("no transition from chart " + std::to_string(from) + " to chart " +
                   std::to_string(target));
}
}  // namespace

Point apply_transition(const Atlas& atlas, const Point& p, int target) {
  if (p.chart == target) return p;
  const Transition& t = find_transition(atlas, p.chart, target);
  Point q{target, t.forward(p.x)};
  if (!atlas.chart(target).in_domain(q.x))
    throw OutOfChart("transition image violates target chart guard");
  return q;
}

TangentVec push_tangent(const Atlas& atlas, const TangentVec& v, int target) {
  if (v.base.chart == target) return v;
  const Transition& t = find_transition(atlas, v.base.chart, target);
  const Mat j = jacobian(t.forward, v.base.x);
  return TangentVec{apply_transition(atlas, v.base, target), j * v.components};
}

CotangentVec push_cotangent(const Atlas& atlas, const CotangentVec& p, int target) {
  if (p.base.chart == target) return p;
  const Transition& t = find_transition(atlas, p.base.chart, target);
  const Mat j = jacobian(t.forward, p.base.x);
  // Covectors transform with the inverse transpose so that p(v) is invariant.
  const Vec moved = solve_linear(Mat(j.transpose()), Vec(p.components));
  return CotangentVec{apply_transition(atlas, p.base, target), moved};
}

double transition_roundtrip_defect(const Atlas& atlas, const Point& p) {
  double worst = 0.0;
  for (const auto& t : atlas.chart(p.chart).transitions) {
    const Vec there = t.forward(p.x);
    const Vec back = t.inverse(there);
    worst = std::max(worst, (back - p.x).norm());
  }
  return worst;
}

}  // namespace geoflow
