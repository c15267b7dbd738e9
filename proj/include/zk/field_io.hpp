#pragma once

#include <string>

#include "zk/grid.hpp"

namespace zk {

// Flat binary layout (little-endian):
//   u32 N1, u32 N2, f32 L1, f32 L2, then N1*N2 f64 row-major values.
// A ".json" sidecar next to the file carries the same metadata as one
// NDJSON row.
void write_field(const Field2D& f, const std::string& path);
Field2D read_field(const std::string& path);

}  // namespace zk
