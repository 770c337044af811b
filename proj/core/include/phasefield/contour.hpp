#pragma once

#include "phasefield/grid.hpp"

namespace phasefield {

struct ContourMetrics {
  double area = 0.0;       // enclosed by the level set, phi > level side
  double perimeter = 0.0;
  double circularity = 0.0;  // 4 pi A / P^2, 1 for a circle
  long segments = 0;
};

/// Marching-squares extraction of the phi = level contour over the
/// interior node squares (no wrap-around). The enclosed area uses Green's
/// theorem over segments oriented with phi > level on the left.
ContourMetrics level_set_metrics(const Field& phi, double level = 0.0);

}  // namespace phasefield
