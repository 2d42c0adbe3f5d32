#include "eigenscat/media.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eigenscat/errors.hpp"
#include "eigenscat/format.hpp"

namespace eigenscat::media {
namespace {

constexpr int kKiteSamples = 512;
constexpr int kKiteCellSamples = 8;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_index(double n, const char* what) {
  if (!std::isfinite(n) || n <= 0.0) {
    throw InputError(std::string("scene: ") + what + " must be a positive finite number");
  }
  if (n == 1.0) {
    throw InputError(std::string("scene: ") + what + " must differ from the background value 1");
  }
}

void check_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InputError(std::string("scene: ") + what + " must be positive");
  }
}

double signed_area(const std::vector<Point>& poly) {
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point p = poly[i];
    const Point q = poly[(i + 1) % n];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

Point polygon_centroid(const std::vector<Point>& poly) {
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point p = poly[i];
    const Point q = poly[(i + 1) % n];
    const double cross = p.x * q.y - q.x * p.y;
    cx += (p.x + q.x) * cross;
    cy += (p.y + q.y) * cross;
  }
  const double a6 = 6.0 * signed_area(poly);
  return {cx / a6, cy / a6};
}

double segment_distance(Point z, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(z - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(z - (a + t * ab));
}

double boundary_distance(const std::vector<Point>& poly, Point z) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    d = std::min(d, segment_distance(z, poly[i], poly[(i + 1) % n]));
  }
  return d;
}

bool polygon_contains(const std::vector<Point>& poly, Point z, double scale) {
  if (boundary_distance(poly, z) <= 1e-12 * scale) return true;
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > z.y) != (b.y > z.y)) {
      const double xc = a.x + (z.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (z.x < xc) inside = !inside;
    }
  }
  return inside;
}

Box polygon_box(const std::vector<Point>& poly) {
  Box b{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
        {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (Point p : poly) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

double rect_overlap(Point alo, Point ahi, Point blo, Point bhi) {
  const double w = std::min(ahi.x, bhi.x) - std::max(alo.x, blo.x);
  const double h = std::min(ahi.y, bhi.y) - std::max(alo.y, blo.y);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

// Antiderivative of sqrt(r^2 - x^2).
double chord_integral(double x, double r) {
  x = std::clamp(x, -r, r);
  return 0.5 * (x * std::sqrt(std::max(r * r - x * x, 0.0)) + r * r * std::asin(x / r));
}

std::string fmt_point(Point p) { return "(" + format_double(p.x) + "," + format_double(p.y) + ")"; }

}  // namespace

double circle_rect_area(Point c, double r, Point lo, Point hi) {
  const double x0 = lo.x - c.x;
  const double x1 = hi.x - c.x;
  const double y0 = lo.y - c.y;
  const double y1 = hi.y - c.y;
  std::vector<double> cuts{x0, x1, -r, r};
  for (double y : {y0, y1}) {
    if (std::abs(y) < r) {
      const double s = std::sqrt(r * r - y * y);
      cuts.push_back(-s);
      cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], x0);
    const double b = std::min(cuts[i + 1], x1);
    if (b <= a) continue;
    const double xm = 0.5 * (a + b);
    if (std::abs(xm) >= r) continue;
    const double s = std::sqrt(r * r - xm * xm);
    if (std::min(y1, s) <= std::max(y0, -s)) continue;
    const double arc = chord_integral(b, r) - chord_integral(a, r);
    const double top = (s < y1) ? arc : y1 * (b - a);
    const double bottom = (-s > y0) ? -arc : y0 * (b - a);
    area += top - bottom;
  }
  return area;
}

double polygon_rect_area(const std::vector<Point>& polygon, Point lo, Point hi) {
  std::vector<Point> poly = polygon;
  // Sutherland-Hodgman against the four half-planes of the rectangle.
  auto clip = [&poly](auto inside, auto intersect) {
    std::vector<Point> out;
    out.reserve(poly.size() + 4);
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
      const Point cur = poly[i];
      const Point prev = poly[(i + n - 1) % n];
      const bool cin = inside(cur);
      const bool pin = inside(prev);
      if (cin) {
        if (!pin) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (pin) {
        out.push_back(intersect(prev, cur));
      }
    }
    poly = std::move(out);
  };
  auto at_x = [](double xc) {
    return [xc](Point a, Point b) {
      const double t = (xc - a.x) / (b.x - a.x);
      return Point{xc, a.y + t * (b.y - a.y)};
    };
  };
  auto at_y = [](double yc) {
    return [yc](Point a, Point b) {
      const double t = (yc - a.y) / (b.y - a.y);
      return Point{a.x + t * (b.x - a.x), yc};
    };
  };
  clip([&](Point p) { return p.x >= lo.x; }, at_x(lo.x));
  if (poly.empty()) return 0.0;
  clip([&](Point p) { return p.x <= hi.x; }, at_x(hi.x));
  if (poly.empty()) return 0.0;
  clip([&](Point p) { return p.y >= lo.y; }, at_y(lo.y));
  if (poly.empty()) return 0.0;
  clip([&](Point p) { return p.y <= hi.y; }, at_y(hi.y));
  if (poly.size() < 3) return 0.0;
  return std::abs(signed_area(poly));
}

std::vector<Point> kite_outline(int samples) {
  // x(t) = cos t + 0.65 cos 2t - 0.65 has its minimum where cos t = -1/2.6.
  const double ct = -1.0 / 2.6;
  const double xmin = ct + 0.65 * (2.0 * ct * ct - 1.0) - 0.65;
  const double xmax = 1.0;
  const double shift = -0.5 * (xmin + xmax);
  const double factor = 1.0 / 1.5;
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * pi * i / samples;
    const double x = std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65;
    const double y = 1.5 * std::sin(t);
    out.push_back({(x + shift) * factor, y * factor});
  }
  return out;
}

MediumScene::MediumScene(Shape shape) : shape_(std::move(shape)) {
  std::visit(Overloaded{
                 [](const Disk& d) {
                   check_positive(d.radius, "disk radius");
                   check_index(d.index, "disk index");
                 },
                 [](const Square& s) {
                   check_positive(s.half_width, "square half_width");
                   check_index(s.index, "square index");
                 },
                 [this](const Polygon& p) {
                   if (p.vertices.size() < 3) throw InputError("scene: polygon needs at least 3 vertices");
                   check_index(p.index, "polygon index");
                   outline_ = p.vertices;
                   const double a = signed_area(outline_);
                   if (!(std::abs(a) > 0.0)) throw InputError("scene: polygon has zero area");
                   if (a < 0.0) std::reverse(outline_.begin(), outline_.end());
                 },
                 [](const LayeredDisk& d) {
                   check_positive(d.radius_outer, "radius_outer");
                   check_positive(d.radius_inner, "radius_inner");
                   if (d.radius_inner >= d.radius_outer) {
                     throw InputError("scene: radius_inner must be smaller than radius_outer");
                   }
                   check_index(d.index_outer, "index_outer");
                   check_index(d.index_inner, "index_inner");
                 },
                 [this](const LayeredKite& k) {
                   check_positive(k.scale, "kite scale");
                   check_positive(k.thickness, "kite thickness");
                   if (k.thickness >= 0.5 * k.scale) throw InputError("scene: kite thickness too large");
                   check_index(k.index_layer, "index_layer");
                   check_index(k.index_core, "index_core");
                   outline_ = kite_outline(kKiteSamples);
                   for (Point& p : outline_) p = k.center + k.scale * p;
                 },
             },
             shape_);
}

double MediumScene::index_at(Point z) const {
  return std::visit(
      Overloaded{
          [z](const Disk& d) { return norm(z - d.center) <= d.radius ? d.index : 1.0; },
          [z](const Square& s) {
            const Point r = z - s.center;
            return std::max(std::abs(r.x), std::abs(r.y)) <= s.half_width ? s.index : 1.0;
          },
          [this, z](const Polygon& p) { return contains(z) ? p.index : 1.0; },
          [z](const LayeredDisk& d) {
            const double r = norm(z - d.center);
            if (r <= d.radius_inner) return d.index_inner;
            if (r <= d.radius_outer) return d.index_outer;
            return 1.0;
          },
          [this, z](const LayeredKite& k) {
            if (!polygon_contains(outline_, z, k.scale)) return 1.0;
            return boundary_distance(outline_, z) <= k.thickness ? k.index_layer : k.index_core;
          },
      },
      shape_);
}

bool MediumScene::contains(Point z) const {
  return std::visit(Overloaded{
                        [z](const Disk& d) { return norm(z - d.center) <= d.radius; },
                        [z](const Square& s) {
                          const Point r = z - s.center;
                          return std::max(std::abs(r.x), std::abs(r.y)) <= s.half_width;
                        },
                        [this, z](const Polygon&) {
                          const Box b = polygon_box(outline_);
                          return polygon_contains(outline_, z, std::max(b.width(), b.height()));
                        },
                        [z](const LayeredDisk& d) { return norm(z - d.center) <= d.radius_outer; },
                        [this, z](const LayeredKite& k) { return polygon_contains(outline_, z, k.scale); },
                    },
                    shape_);
}

double MediumScene::cell_contrast(Point lo, Point hi) const {
  const double cell_area = (hi.x - lo.x) * (hi.y - lo.y);
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            return (d.index - 1.0) * circle_rect_area(d.center, d.radius, lo, hi) / cell_area;
          },
          [&](const Square& s) {
            const Point half{s.half_width, s.half_width};
            return (s.index - 1.0) * rect_overlap(lo, hi, s.center - half, s.center + half) / cell_area;
          },
          [&](const Polygon& p) { return (p.index - 1.0) * polygon_rect_area(outline_, lo, hi) / cell_area; },
          [&](const LayeredDisk& d) {
            const double a_in = circle_rect_area(d.center, d.radius_inner, lo, hi);
            const double a_out = circle_rect_area(d.center, d.radius_outer, lo, hi);
            return ((d.index_inner - 1.0) * a_in + (d.index_outer - 1.0) * (a_out - a_in)) / cell_area;
          },
          [&](const LayeredKite&) {
            double acc = 0.0;
            for (int i = 0; i < kKiteCellSamples; ++i) {
              for (int j = 0; j < kKiteCellSamples; ++j) {
                const Point z{lo.x + (i + 0.5) * (hi.x - lo.x) / kKiteCellSamples,
                              lo.y + (j + 0.5) * (hi.y - lo.y) / kKiteCellSamples};
                acc += contrast_at(z);
              }
            }
            return acc / (kKiteCellSamples * kKiteCellSamples);
          },
      },
      shape_);
}

Box MediumScene::bounding_box() const {
  return std::visit(Overloaded{
                        [](const Disk& d) {
                          return Box{d.center - Point{d.radius, d.radius}, d.center + Point{d.radius, d.radius}};
                        },
                        [](const Square& s) {
                          const Point h{s.half_width, s.half_width};
                          return Box{s.center - h, s.center + h};
                        },
                        [this](const Polygon&) { return polygon_box(outline_); },
                        [](const LayeredDisk& d) {
                          const Point r{d.radius_outer, d.radius_outer};
                          return Box{d.center - r, d.center + r};
                        },
                        [this](const LayeredKite&) { return polygon_box(outline_); },
                    },
                    shape_);
}

Point MediumScene::centroid() const {
  return std::visit(Overloaded{
                        [](const Disk& d) { return d.center; },
                        [](const Square& s) { return s.center; },
                        [this](const Polygon&) { return polygon_centroid(outline_); },
                        [](const LayeredDisk& d) { return d.center; },
                        [this](const LayeredKite&) { return polygon_centroid(outline_); },
                    },
                    shape_);
}

double MediumScene::bounding_radius() const {
  const Point c = centroid();
  return std::visit(Overloaded{
                        [c](const Disk& d) { return norm(d.center - c) + d.radius; },
                        [c](const Square& s) { return norm(s.center - c) + std::sqrt(2.0) * s.half_width; },
                        [this, c](const Polygon&) {
                          double r = 0.0;
                          for (Point p : outline_) r = std::max(r, norm(p - c));
                          return r;
                        },
                        [c](const LayeredDisk& d) { return norm(d.center - c) + d.radius_outer; },
                        [this, c](const LayeredKite&) {
                          double r = 0.0;
                          for (Point p : outline_) r = std::max(r, norm(p - c));
                          return r;
                        },
                    },
                    shape_);
}

double MediumScene::max_index() const {
  return std::visit(Overloaded{
                        [](const Disk& d) { return std::max(1.0, d.index); },
                        [](const Square& s) { return std::max(1.0, s.index); },
                        [](const Polygon& p) { return std::max(1.0, p.index); },
                        [](const LayeredDisk& d) { return std::max({1.0, d.index_outer, d.index_inner}); },
                        [](const LayeredKite& k) { return std::max({1.0, k.index_layer, k.index_core}); },
                    },
                    shape_);
}

std::optional<Disk> MediumScene::as_disk() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) return *d;
  return std::nullopt;
}

std::string MediumScene::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Disk& d) {
                   os << "disk center=" << fmt_point(d.center) << " radius=" << format_double(d.radius)
                      << " index=" << format_double(d.index);
                 },
                 [&](const Square& s) {
                   os << "square center=" << fmt_point(s.center) << " half_width=" << format_double(s.half_width)
                      << " index=" << format_double(s.index);
                 },
                 [&](const Polygon& p) {
                   os << "polygon vertices=";
                   for (std::size_t i = 0; i < p.vertices.size(); ++i) {
                     os << (i ? ";" : "") << fmt_point(p.vertices[i]);
                   }
                   os << " index=" << format_double(p.index);
                 },
                 [&](const LayeredDisk& d) {
                   os << "layered_disk center=" << fmt_point(d.center)
                      << " radius_outer=" << format_double(d.radius_outer)
                      << " radius_inner=" << format_double(d.radius_inner)
                      << " index_outer=" << format_double(d.index_outer)
                      << " index_inner=" << format_double(d.index_inner);
                 },
                 [&](const LayeredKite& k) {
                   os << "layered_kite center=" << fmt_point(k.center) << " scale=" << format_double(k.scale)
                      << " thickness=" << format_double(k.thickness)
                      << " index_layer=" << format_double(k.index_layer)
                      << " index_core=" << format_double(k.index_core);
                 },
             },
             shape_);
  return os.str();
}

void SamplingRegion::validate(const MediumScene& scene) const {
  if (resolution < 16) throw InputError("sampling region: resolution must be at least 16");
  const Box d = scene.bounding_box();
  if (!(box.lo.x < d.lo.x && box.lo.y < d.lo.y && box.hi.x > d.hi.x && box.hi.y > d.hi.y)) {
    throw InputError("sampling region: box must strictly contain the scatterer");
  }
}

}  // namespace eigenscat::media
