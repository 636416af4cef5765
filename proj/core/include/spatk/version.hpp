#pragma once

namespace spatk {

inline constexpr const char* kVersion = "0.1.0";

// Version byte embedded in the CSRM raster container and the cluster
// model JSON. Bump on any incompatible layout change.
inline constexpr int kFormatVersion = 1;

}  // namespace spatk
