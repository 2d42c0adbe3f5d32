#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eigenscat/types.hpp"

namespace eigenscat::media {

struct Disk {
  Point center;
  double radius = 1.0;
  double index = 1.0;
};

/// Axis-aligned square [cx - h, cx + h] x [cy - h, cy + h].
struct Square {
  Point center;
  double half_width = 1.0;
  double index = 1.0;
};

/// Simple polygon; vertices in either orientation.
struct Polygon {
  std::vector<Point> vertices;
  double index = 1.0;
};

/// Disk of radius radius_outer whose core |z - c| <= radius_inner carries index_inner.
struct LayeredDisk {
  Point center;
  double radius_outer = 1.0;
  double radius_inner = 0.5;
  double index_outer = 1.0;
  double index_inner = 1.0;
};

/// Kite (cos t + 0.65 cos 2t - 0.65, 1.5 sin t), normalised into [-1, 1]^2 and
/// multiplied by `scale`, with a band of width `thickness` inside the boundary.
struct LayeredKite {
  Point center;
  double scale = 1.0;
  double thickness = 0.1;
  double index_layer = 1.0;
  double index_core = 1.0;
};

using Shape = std::variant<Disk, Square, Polygon, LayeredDisk, LayeredKite>;

struct Box {
  Point lo;
  Point hi;

  bool contains(Point z) const { return z.x >= lo.x && z.x <= hi.x && z.y >= lo.y && z.y <= hi.y; }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

/// Scatterer geometry and piecewise-constant refractive index; n = 1 outside.
/// Immutable after construction.
class MediumScene {
 public:
  /// Throws InputError on invalid geometry, n <= 0, or n == 1 in some region.
  explicit MediumScene(Shape shape);

  const Shape& shape() const noexcept { return shape_; }

  double index_at(Point z) const;
  double contrast_at(Point z) const { return index_at(z) - 1.0; }

  /// Closed set membership: boundary points count as inside.
  bool contains(Point z) const;

  /// Mean of the contrast n - 1 over the axis-aligned cell [lo, hi].
  /// Exact for disks and polygons, sampled for the kite.
  double cell_contrast(Point lo, Point hi) const;

  Box bounding_box() const;
  Point centroid() const;
  /// Largest distance from centroid() to a point of D.
  double bounding_radius() const;
  double max_index() const;

  std::optional<Disk> as_disk() const;

  /// Canonical single-line description, stable across runs.
  std::string describe() const;

 private:
  Shape shape_;
  std::vector<Point> outline_;  // polygon used for Polygon and LayeredKite
};

/// Rectangular lattice of resolution x resolution points spanning the box,
/// endpoints included.
struct SamplingRegion {
  Box box;
  int resolution = 128;

  double spacing_x() const { return box.width() / (resolution - 1); }
  double spacing_y() const { return box.height() / (resolution - 1); }
  Point point(int ix, int iy) const {
    return {box.lo.x + ix * spacing_x(), box.lo.y + iy * spacing_y()};
  }

  /// Throws InputError if resolution < 16 or the box does not strictly contain D.
  void validate(const MediumScene& scene) const;
};

/// Exact area of {|z - c| <= r} intersected with the rectangle [lo, hi].
double circle_rect_area(Point c, double r, Point lo, Point hi);

/// Exact area of a simple polygon intersected with the rectangle [lo, hi].
double polygon_rect_area(const std::vector<Point>& polygon, Point lo, Point hi);

/// Polygonised outline of the normalised kite (before `scale`/`center`).
std::vector<Point> kite_outline(int samples);

}  // namespace eigenscat::media
