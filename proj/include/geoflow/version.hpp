#pragma once

namespace geoflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace geoflow
