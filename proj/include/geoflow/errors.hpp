#pragma once

#include <stdexcept>
#include <string>

namespace geoflow {

// Base class for all library errors.
class GeoflowError : public std::runtime_error {
 public:
  explicit GeoflowError(const std::string& what) : std::runtime_error(what) {}
};

// Metric matrix failed the positive-definiteness check at a point.
class MetricDegenerate : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

// Frame columns are not orthonormal with respect to the metric.
class FrameNotOrthonormal : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

// Frame columns are linearly dependent at a point.
class FrameDegenerate : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

// A derivative request could not be satisfied.
class DifferentiationError : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

// Point left the safe region of its chart and no transition applies.
class OutOfChart : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

// Too many chart switches along a single trajectory.
class ChartExhausted : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

// Adaptive integrator could not reach its tolerance.
class StepFailure : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

class TransportDiverged : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

class LiftDiverged : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

class FoliationNotDeclared : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

class SubmersionNotDeclared : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

class NotPrincipalBundle : public GeoflowError {
 public:
  using GeoflowError::GeoflowError;
};

}  // namespace geoflow
