#pragma once

#include "zk/grid.hpp"

namespace zk {

// v(y1,y2) = lambda * u(lambda*y1 + x1, lambda*y2), returned on the grid
// of u. Evaluation is exact on the trigonometric interpolant of u via
// fractional FFTs (Bluestein), so off-grid sample points cost O(N log N)
// per row instead of O(N^2).
Field2D resample_scaled(const Field2D& u, double lambda, double x1);

}  // namespace zk
