#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlosloc {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Bearing of (to - from), counter-clockwise from +x, in (-pi, pi].
inline double bearing(Vec2 from, Vec2 to) {
  double a = std::atan2(to.y - from.y, to.x - from.x);
  if (a <= -M_PI) a = M_PI;
  return a;
}

// Axis-aligned rectangle, origin at the lower-left corner.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  bool contains_strict(Vec2 p) const {
    return p.x > x && p.x < x + w && p.y > y && p.y < y + h;
  }
  bool contains_closed(Vec2 p) const {
    return p.x >= x && p.x <= x + w && p.y >= y && p.y <= y + h;
  }
};

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Scene {
  double width_m = 0.0;
  double height_m = 0.0;
  std::vector<Rect> obstacles;
  std::vector<Vec2> base_stations;
  std::vector<Vec2> sources;

  void validate() const {
    if (!(width_m > 0.0) || !(height_m > 0.0))
      throw GeometryError("scene: non-positive map dimensions");
    for (const Rect& r : obstacles) {
      if (!(r.w > 0.0) || !(r.h > 0.0))
        throw GeometryError("scene: obstacle with non-positive side");
      if (r.x < 0.0 || r.y < 0.0 || r.x + r.w > width_m || r.y + r.h > height_m)
        throw GeometryError("scene: obstacle outside map bounds");
    }
    auto check_points = [&](const std::vector<Vec2>& pts, const char* what) {
      for (Vec2 p : pts) {
        if (p.x < 0.0 || p.x > width_m || p.y < 0.0 || p.y > height_m)
          throw GeometryError(std::string("scene: ") + what + " outside map bounds");
        for (const Rect& r : obstacles)
          if (r.contains_strict(p))
            throw GeometryError(std::string("scene: ") + what + " inside an obstacle");
      }
    };
    check_points(base_stations, "base station");
    check_points(sources, "source");
  }
};

// One geometric propagation route. `vertices` runs from the base station to
// the source and is kept for testing and rendering.
struct RadioPath {
  double tau = 0.0;  // seconds
  double aoa = 0.0;  // radians, (-pi, pi]
  double aod = 0.0;  // radians, (-pi, pi]
  int bounces = 0;
  std::vector<Vec2> vertices;
};

struct RadioLink {
  int bs_index = -1;
  int ue_index = -1;
  std::vector<RadioPath> paths;  // sorted by increasing tau
  bool los = false;

  bool empty() const { return paths.empty(); }
};

namespace detail {

// Overlap of the open segment (a,b) with the interior of `r`, as a parameter
// interval clipped by Liang-Barsky. Touching the boundary at a point or
// sliding along an edge does not count: the clipped midpoint must be strictly
// inside and the clipped piece longer than `eps_m` meters.
inline bool segment_hits_interior(const Rect& r, Vec2 a, Vec2 b,
                                  double eps_m = 1e-9) {
  const Vec2 d = b - a;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - r.x, r.x + r.w - a.x, a.y - r.y, r.y + r.h - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;  // parallel and outside the slab
    } else {
      const double t = q[i] / p[i];
      if (p[i] < 0.0) {
        if (t > t1) return false;
        if (t > t0) t0 = t;
      } else {
        if (t < t0) return false;
        if (t < t1) t1 = t;
      }
    }
  }
  if (t1 - t0 <= 0.0) return false;
  if ((t1 - t0) * norm(d) <= eps_m) return false;
  const Vec2 mid = a + d * (0.5 * (t0 + t1));
  return r.contains_strict(mid);
}

}  // namespace detail

// True iff the open segment (a,b) crosses no obstacle interior. Grazing an
// obstacle boundary counts as visible.
inline bool los_visible(const Scene& scene, Vec2 a, Vec2 b) {
  if (a == b) throw GeometryError("los_visible: degenerate segment (a == b)");
  for (const Rect& r : scene.obstacles)
    if (detail::segment_hits_interior(r, a, b)) return false;
  return true;
}

// Reflection of p across the infinite line through `wall`.
inline Vec2 mirror_reflect(const Segment& wall, Vec2 p) {
  const Vec2 d = wall.b - wall.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) throw GeometryError("mirror_reflect: zero-length wall");
  const double t = dot(p - wall.a, d) / len2;
  const Vec2 foot = wall.a + d * t;
  return foot * 2.0 - p;
}

struct PathParams {
  double tau = 0.0;
  double aoa = 0.0;
  double aod = 0.0;
};

// Delay and angles of a polyline running base station -> source. The AoA is
// the back-azimuth at the receiver (toward the last interaction point) so a
// ray drawn from the base station along it overlays the path geometry.
inline PathParams path_parameters(const std::vector<Vec2>& polyline, Vec2 w,
                                  Vec2 v) {
  if (polyline.size() < 2)
    throw GeometryError("path_parameters: polyline needs at least 2 vertices");
  if (!(polyline.front() == w) || !(polyline.back() == v))
    throw GeometryError("path_parameters: polyline endpoints do not match w/v");
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const double seg = distance(polyline[i], polyline[i + 1]);
    if (seg == 0.0)
      throw GeometryError("path_parameters: repeated consecutive vertices");
    length += seg;
  }
  PathParams out;
  out.tau = length / kSpeedOfLight;
  out.aoa = bearing(polyline.front(), polyline[1]);
  out.aod = bearing(polyline.back(), polyline[polyline.size() - 2]);
  return out;
}

namespace detail {

inline std::vector<Segment> obstacle_walls(const Rect& r) {
  const Vec2 p00{r.x, r.y}, p10{r.x + r.w, r.y};
  const Vec2 p01{r.x, r.y + r.h}, p11{r.x + r.w, r.y + r.h};
  return {{p00, p10}, {p10, p11}, {p11, p01}, {p01, p00}};
}

struct SegIntersection {
  bool ok = false;
  double t = 0.0;  // along the query segment
  double s = 0.0;  // along the wall
  Vec2 point;
};

// Proper intersection of segment (a,b) with wall, both parameters strictly
// interior. Parallel or degenerate cases report no intersection.
inline SegIntersection intersect_strict(Vec2 a, Vec2 b, const Segment& wall) {
  SegIntersection res;
  const Vec2 d1 = b - a;
  const Vec2 d2 = wall.b - wall.a;
  const double denom = cross(d1, d2);
  if (denom == 0.0) return res;
  const Vec2 delta = wall.a - a;
  const double t = cross(delta, d2) / denom;
  const double s = cross(delta, d1) / denom;
  if (!(t > 0.0 && t < 1.0 && s > 0.0 && s < 1.0)) return res;
  res.ok = true;
  res.t = t;
  res.s = s;
  res.point = a + d1 * t;
  return res;
}

inline bool polyline_clear(const Scene& scene, const std::vector<Vec2>& pts) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (const Rect& r : scene.obstacles)
      if (segment_hits_interior(r, pts[i], pts[i + 1])) return false;
  return true;
}

inline bool same_polyline(const std::vector<Vec2>& a,
                          const std::vector<Vec2>& b, double tol_m = 1e-6) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i].x - b[i].x) > tol_m || std::abs(a[i].y - b[i].y) > tol_m)
      return false;
  return true;
}

}  // namespace detail

// All LOS / specular reflection paths from base station `w` to source `v`
// with at most `max_bounces` reflections (image-source method). Returns an
// empty link when no path exists.
inline RadioLink trace_paths(const Scene& scene, Vec2 w, Vec2 v,
                             int max_bounces) {
  if (w == v) throw GeometryError("trace_paths: w == v");
  if (max_bounces < 0 || max_bounces > 2)
    throw GeometryError("trace_paths: max_bounces must be 0, 1 or 2");
  for (const Rect& r : scene.obstacles)
    if (r.contains_strict(w) || r.contains_strict(v))
      throw GeometryError("trace_paths: endpoint inside an obstacle");

  std::vector<std::vector<Vec2>> polylines;
  auto try_add = [&](std::vector<Vec2> pts) {
    for (const auto& existing : polylines)
      if (detail::same_polyline(existing, pts)) return;
    polylines.push_back(std::move(pts));
  };

  if (los_visible(scene, w, v)) try_add({w, v});

  std::vector<Segment> walls;
  for (const Rect& r : scene.obstacles)
    for (const Segment& s : detail::obstacle_walls(r)) walls.push_back(s);

  if (max_bounces >= 1) {
    for (const Segment& wall : walls) {
      const Vec2 vm = mirror_reflect(wall, v);
      if (vm == v) continue;  // v on the wall line
      const auto hit = detail::intersect_strict(w, vm, wall);
      if (!hit.ok) continue;
      const std::vector<Vec2> pts{w, hit.point, v};
      if (detail::polyline_clear(scene, pts)) try_add(pts);
    }
  }

  if (max_bounces >= 2) {
    for (std::size_t i = 0; i < walls.size(); ++i) {
      for (std::size_t j = 0; j < walls.size(); ++j) {
        if (i == j) continue;
        const Segment& w1 = walls[i];
        const Segment& w2 = walls[j];
        const Vec2 v2 = mirror_reflect(w2, v);
        if (v2 == v) continue;
        const Vec2 v21 = mirror_reflect(w1, v2);
        const auto hit1 = detail::intersect_strict(w, v21, w1);
        if (!hit1.ok) continue;
        const auto hit2 = detail::intersect_strict(hit1.point, v2, w2);
        if (!hit2.ok) continue;
        const std::vector<Vec2> pts{w, hit1.point, hit2.point, v};
        if (detail::polyline_clear(scene, pts)) try_add(pts);
      }
    }
  }

  RadioLink link;
  for (auto& pts : polylines) {
    RadioPath path;
    const PathParams params = path_parameters(pts, w, v);
    path.tau = params.tau;
    path.aoa = params.aoa;
    path.aod = params.aod;
    path.bounces = static_cast<int>(pts.size()) - 2;
    path.vertices = std::move(pts);
    link.paths.push_back(std::move(path));
  }
  std::sort(link.paths.begin(), link.paths.end(),
            [](const RadioPath& a, const RadioPath& b) {
              if (a.tau != b.tau) return a.tau < b.tau;
              if (a.bounces != b.bounces) return a.bounces < b.bounces;
              return a.aoa < b.aoa;
            });
  link.los = !link.paths.empty() && link.paths.front().bounces == 0;
  return link;
}

}  // namespace nlosloc
