#pragma once

#include <functional>
#include <vector>

#include "geoflow/maps.hpp"

namespace geoflow {

struct Transition {
  int target = -1;
  VecMap forward;   // coordinates in this chart -> coordinates in target
  VecMap inverse;   // target -> this chart
};

struct Chart {
  int id = 0;
  int dim = 0;
  std::function<bool(const Vec&)> guard;  // safe region
  double switch_radius = std::numeric_limits<double>::infinity();
  std::vector<Transition> transitions;

  bool in_domain(const Vec& x) const { return !guard || guard(x); }
  bool wants_switch(const Vec& x) const { return x.norm() > switch_radius; }
};

struct Atlas {
  std::vector<Chart> charts;
  const Chart& chart(int id) const { return charts.at(static_cast<size_t>(id)); }
  int size() const { return static_cast<int>(charts.size()); }
};

struct Point {
  int chart = 0;
  Vec x;
};

enum class Variance { Tangent, Cotangent };

struct TangentVec {
  Point base;
  Vec components;
};

struct CotangentVec {
  Point base;
  Vec components;
};

// Move a point to the given chart (identity if already there). Throws
// OutOfChart when no transition connects the charts.
Point apply_transition(const Atlas& atlas, const Point& p, int target);

// Push a tangent vector / pull a covector through the transition Jacobian.
TangentVec push_tangent(const Atlas& atlas, const TangentVec& v, int target);
CotangentVec push_cotangent(const Atlas& atlas, const CotangentVec& p, int target);

// Verify forward/inverse roundtrip at a point (used by model validation).
double transition_roundtrip_defect(const Atlas& atlas, const Point& p);

}  // namespace geoflow
