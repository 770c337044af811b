#include "phasefield/contour.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace phasefield {

namespace {

struct Point {
  double x;
  double y;
};

Point lerp(Point a, Point b, double va, double vb) {
  const double t = va / (va - vb);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace

ContourMetrics level_set_metrics(const Field& phi, double level) {
  const Grid& g = phi.grid();
  const Matrix& v = phi.values();
  ContourMetrics out;
  double twice_area = 0.0;

  for (int i = 0; i + 1 < g.n(); ++i) {
    for (int j = 0; j + 1 < g.m(); ++j) {
      // Corners counter-clockwise: (i,j), (i,j+1), (i+1,j+1), (i+1,j).
      const std::array<Point, 4> p{Point{g.x_center(j), g.y_center(i)}, Point{g.x_center(j + 1), g.y_center(i)},
                                   Point{g.x_center(j + 1), g.y_center(i + 1)},
                                   Point{g.x_center(j), g.y_center(i + 1)}};
      const std::array<double, 4> c{v(i, j) - level, v(i, j + 1) - level, v(i + 1, j + 1) - level,
                                    v(i + 1, j) - level};
      int mask = 0;
      for (int k = 0; k < 4; ++k) {
        if (c[k] > 0.0) mask |= 1 << k;
      }
      if (mask == 0 || mask == 15) continue;

      std::array<Point, 4> crossings{};
      int count = 0;
      for (int k = 0; k < 4; ++k) {
        const int next = (k + 1) % 4;
        if ((c[k] > 0.0) != (c[next] > 0.0)) crossings[count++] = lerp(p[k], p[next], c[k], c[next]);
      }

      // Each segment carries a reference corner; it must end up on the left
      // when positive and on the right otherwise.
      struct Segment {
        Point a;
        Point b;
        int corner;
      };
      std::array<Segment, 2> segs{};
      int nseg = 1;
      if (count == 2) {
        int positive = 0;
        while (!(c[positive] > 0.0)) ++positive;
        segs[0] = {crossings[0], crossings[1], positive};
      } else {
        // Saddle: crossings lie on edges 0..3 in order. The centre value
        // decides which pair of opposite corners is cut off.
        const double centre = 0.25 * (c[0] + c[1] + c[2] + c[3]);
        if ((centre > 0.0) == (c[0] > 0.0)) {
          segs[0] = {crossings[0], crossings[1], 1};
          segs[1] = {crossings[2], crossings[3], 3};
        } else {
          segs[0] = {crossings[3], crossings[0], 0};
          segs[1] = {crossings[1], crossings[2], 2};
        }
        nseg = 2;
      }

      for (int s = 0; s < nseg; ++s) {
        Point a = segs[s].a;
        Point b = segs[s].b;
        const Point ref = p[segs[s].corner];
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        const double side = dx * (ref.y - a.y) - dy * (ref.x - a.x);
        if ((side > 0.0) != (c[segs[s].corner] > 0.0)) std::swap(a, b);
        twice_area += a.x * b.y - b.x * a.y;
        out.perimeter += std::hypot(dx, dy);
        ++out.segments;
      }
    }
  }
  out.area = 0.5 * twice_area;
  out.circularity = out.perimeter > 0.0 ? 4.0 * std::numbers::pi * out.area / (out.perimeter * out.perimeter) : 0.0;
  return out;
}

}  // namespace phasefield
