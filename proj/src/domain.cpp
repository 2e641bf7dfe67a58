#include "s2kit/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "s2kit/error.hpp"

namespace s2kit {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("domain: expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw InputError("domain: expected a number, got '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// Closest point on the ellipse x^2/e0^2 + y^2/e1^2 = 1 (e0 >= e1) to (y0, y1),
// both coordinates nonnegative. Root of
//   F(s) = (r0 z0 / (s + r0))^2 + (z1 / (s + 1))^2 - 1,  r0 = (e0/e1)^2,
// by Newton safeguarded with the bracket [s0, s1].
Point2 ellipse_foot_quadrant(double e0, double e1, double y0, double y1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g == 0.0) return {y0, y1};
      const double r0 = (e0 / e1) * (e0 / e1);
      const double n0 = r0 * z0;
      double lo = z1 - 1.0;
      double hi = g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
      auto F = [&](double s) {
        const double a = n0 / (s + r0);
        const double b = z1 / (s + 1.0);
        return a * a + b * b - 1.0;
      };
      auto dF = [&](double s) {
        const double a = n0 / (s + r0);
        const double b = z1 / (s + 1.0);
        return -2.0 * (a * a / (s + r0) + b * b / (s + 1.0));
      };
      double s = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        const double f = F(s);
        if (f == 0.0) break;
        if (f > 0.0) lo = s;
        else hi = s;
        double next = s - f / dF(s);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const bool done = std::abs(next - s) <= 1e-12 * std::max(1.0, std::abs(s));
        s = next;
        if (done || hi - lo <= 0.0) break;
      }
      return {r0 * y0 / (s + r0), y1 / (s + 1.0)};
    }
    return {0.0, e1};
  }
  const double numer0 = e0 * y0;
  const double denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    return {e0 * xde0, e1 * std::sqrt(std::max(0.0, 1.0 - xde0 * xde0))};
  }
  return {e0, 0.0};
}

Point2 ellipse_foot(double a, double b, double x, double y) {
  const bool swap = a < b;
  const double e0 = swap ? b : a;
  const double e1 = swap ? a : b;
  const double q0 = std::abs(swap ? y : x);
  const double q1 = std::abs(swap ? x : y);
  Point2 f = ellipse_foot_quadrant(e0, e1, q0, q1);
  if (swap) std::swap(f[0], f[1]);
  f[0] = std::copysign(f[0], x);
  f[1] = std::copysign(f[1], y);
  return f;
}

void require_dim(const DomainSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.dim()) throw InputError("point dimension does not match the domain");
}

}  // namespace

DomainSpec DomainSpec::ball(Vec center, double radius) {
  if (center.size() != 2 && center.size() != 3) throw InputError("ball must be 2D or 3D");
  if (!(radius > 0.0)) throw InputError("ball radius must be positive");
  DomainSpec s;
  s.kind_ = Kind::ball;
  s.dim_ = static_cast<int>(center.size());
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

DomainSpec DomainSpec::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("ellipse semi-axes must be positive");
  DomainSpec s;
  s.kind_ = Kind::ellipse;
  s.dim_ = 2;
  s.center_ = {0.0, 0.0};
  s.a_ = a;
  s.b_ = b;
  return s;
}

DomainSpec DomainSpec::polygon(std::vector<Point2> vertices) {
  if (vertices.size() < 3) throw InputError("polygon needs at least 3 vertices");
  if (!is_strictly_convex_ccw(vertices))
    throw InputError("polygon vertices are not strictly convex in counterclockwise order");
  DomainSpec s;
  s.kind_ = Kind::polygon;
  s.dim_ = 2;
  s.vertices_ = std::move(vertices);
  s.center_ = s.centroid();
  return s;
}

std::string DomainSpec::describe() const {
  switch (kind_) {
    case Kind::ball: {
      const bool origin = std::all_of(center_.begin(), center_.end(), [](double c) { return c == 0.0; });
      if (dim_ == 2 && origin) return "disk:" + fmt(radius_);
      std::string s = "ball:" + std::to_string(dim_) + ":" + fmt(radius_);
      if (!origin) {
        s += "@";
        for (std::size_t i = 0; i < center_.size(); ++i) s += (i ? "," : "") + fmt(center_[i]);
      }
      return s;
    }
    case Kind::ellipse: return "ellipse:" + fmt(a_) + "," + fmt(b_);
    case Kind::polygon: {
      std::string s = "polygon:";
      for (std::size_t i = 0; i < vertices_.size(); ++i)
        s += (i ? ";" : "") + fmt(vertices_[i][0]) + "," + fmt(vertices_[i][1]);
      return s;
    }
  }
  return "";
}

DomainSpec DomainSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("domain '" + text + "': expected kind:parameters");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "disk") return disk(parse_number(rest));
  if (kind == "ball") {
    std::string body = rest;
    Vec center;
    if (const auto at = body.find('@'); at != std::string::npos) {
      for (const auto& c : split(body.substr(at + 1), ',')) center.push_back(parse_number(c));
      body = body.substr(0, at);
    }
    const auto parts = split(body, ':');
    if (parts.size() == 1) return ball(center.empty() ? Vec{0.0, 0.0} : center, parse_number(parts[0]));
    if (parts.size() != 2) throw InputError("domain '" + text + "': expected ball:N:R");
    const int n = static_cast<int>(parse_number(parts[0]));
    if (center.empty()) center.assign(static_cast<std::size_t>(std::max(n, 0)), 0.0);
    if (static_cast<int>(center.size()) != n) throw InputError("domain '" + text + "': centre dimension mismatch");
    return ball(center, parse_number(parts[1]));
  }
  if (kind == "ellipse") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw InputError("domain '" + text + "': expected ellipse:a,b");
    return ellipse(parse_number(parts[0]), parse_number(parts[1]));
  }
  if (kind == "polygon") {
    std::vector<Point2> v;
    for (const auto& pt : split(rest, ';')) {
      const auto xy = split(pt, ',');
      if (xy.size() != 2) throw InputError("domain '" + text + "': polygon vertex must be x,y");
      v.push_back({parse_number(xy[0]), parse_number(xy[1])});
    }
    return polygon(std::move(v));
  }
  throw InputError("unknown domain kind '" + kind + "'");
}

double DomainSpec::min_width() const {
  switch (kind_) {
    case Kind::ball: return 2.0 * radius_;
    case Kind::ellipse: return 2.0 * std::min(a_, b_);
    case Kind::polygon: {
      double w = std::numeric_limits<double>::infinity();
      const std::size_t n = vertices_.size();
      for (std::size_t e = 0; e < n; ++e) {
        const Point2& p = vertices_[e];
        const Point2& q = vertices_[(e + 1) % n];
        const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
        double far = 0.0;
        for (const Point2& v : vertices_) far = std::max(far, std::abs(cross(p, q, v)) / len);
        w = std::min(w, far);
      }
      return w;
    }
  }
  return 0.0;
}

std::array<Point2, 2> DomainSpec::bounding_box() const {
  switch (kind_) {
    case Kind::ball:
      return {{{center_[0] - radius_, center_[1] - radius_}, {center_[0] + radius_, center_[1] + radius_}}};
    case Kind::ellipse: return {{{-a_, -b_}, {a_, b_}}};
    case Kind::polygon: {
      Point2 lo = vertices_[0], hi = vertices_[0];
      for (const Point2& v : vertices_) {
        lo = {std::min(lo[0], v[0]), std::min(lo[1], v[1])};
        hi = {std::max(hi[0], v[0]), std::max(hi[1], v[1])};
      }
      return {lo, hi};
    }
  }
  return {};
}

Vec DomainSpec::centroid() const {
  if (kind_ != Kind::polygon) return center_;
  // area-weighted centroid of the polygon
  double area = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Point2& p = vertices_[e];
    const Point2& q = vertices_[(e + 1) % n];
    const double c = p[0] * q[1] - q[0] * p[1];
    area += c;
    cx += (p[0] + q[0]) * c;
    cy += (p[1] + q[1]) * c;
  }
  return {cx / (3.0 * area), cy / (3.0 * area)};
}

bool is_strictly_convex_ccw(std::span<const Point2> v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t k = 0; k < n; ++k)
    if (!(cross(v[k], v[(k + 1) % n], v[(k + 2) % n]) > 0.0)) return false;
  // Positive turns alone admit star-shaped windings; the total turning must be one revolution.
  double turning = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point2& a = v[k];
    const Point2& b = v[(k + 1) % n];
    const Point2& c = v[(k + 2) % n];
    const double a1 = std::atan2(b[1] - a[1], b[0] - a[0]);
    const double a2 = std::atan2(c[1] - b[1], c[0] - b[0]);
    double d = a2 - a1;
    while (d <= -M_PI) d += 2.0 * M_PI;
    while (d > M_PI) d -= 2.0 * M_PI;
    turning += d;
  }
  return std::abs(turning - 2.0 * M_PI) < 1e-9;
}

bool assert_convex(const DomainSpec& spec) {
  if (spec.kind() != DomainSpec::Kind::polygon) return true;
  return is_strictly_convex_ccw(spec.vertices());
}

BoundaryPoint closest_boundary_point(const DomainSpec& spec, std::span<const double> x) {
  require_dim(spec, x);
  BoundaryPoint bp;
  switch (spec.kind()) {
    case DomainSpec::Kind::ball: {
      const int n = spec.dim();
      Vec d(n);
      for (int i = 0; i < n; ++i) d[i] = x[i] - spec.center()[i];
      double len = std::sqrt(norm_squared(d));
      if (len == 0.0) {
        d.assign(n, 0.0);
        d[0] = 1.0;
      } else {
        for (double& c : d) c /= len;
      }
      bp.normal = d;
      bp.foot.resize(n);
      for (int i = 0; i < n; ++i) bp.foot[i] = spec.center()[i] + spec.radius() * d[i];
      bp.distance = len - spec.radius();
      return bp;
    }
    case DomainSpec::Kind::ellipse: {
      const double a = spec.semi_a(), b = spec.semi_b();
      const Point2 f = ellipse_foot(a, b, x[0], x[1]);
      bp.foot = {f[0], f[1]};
      bp.normal = outward_normal(spec, bp.foot);
      const double dist = std::hypot(x[0] - f[0], x[1] - f[1]);
      const bool inside = (x[0] * x[0]) / (a * a) + (x[1] * x[1]) / (b * b) < 1.0;
      bp.distance = inside ? -dist : dist;
      return bp;
    }
    case DomainSpec::Kind::polygon: {
      const auto& v = spec.vertices();
      const std::size_t n = v.size();
      double best = std::numeric_limits<double>::infinity();
      bool inside = true;
      Point2 foot{};
      std::size_t best_edge = 0;
      for (std::size_t e = 0; e < n; ++e) {
        const Point2& p = v[e];
        const Point2& q = v[(e + 1) % n];
        const Point2 pt{x[0], x[1]};
        if (cross(p, q, pt) <= 0.0) inside = false;
        const double ex = q[0] - p[0], ey = q[1] - p[1];
        const double t = std::clamp(((x[0] - p[0]) * ex + (x[1] - p[1]) * ey) / (ex * ex + ey * ey), 0.0, 1.0);
        const Point2 c{p[0] + t * ex, p[1] + t * ey};
        const double d = std::hypot(x[0] - c[0], x[1] - c[1]);
        if (d < best) {
          best = d;
          foot = c;
          best_edge = e;
        }
      }
      bp.foot = {foot[0], foot[1]};
      bp.distance = inside ? -best : best;
      if (best > 1e-12) {
        const double s = inside ? -1.0 : 1.0;
        bp.normal = {s * (x[0] - foot[0]) / best, s * (x[1] - foot[1]) / best};
        // an interior point whose nearest point is a vertex still sees the edge normal
        if (inside) {
          const Point2& p = v[best_edge];
          const Point2& q = v[(best_edge + 1) % n];
          const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
          bp.normal = {(q[1] - p[1]) / len, -(q[0] - p[0]) / len};
        }
      } else {
        bp.normal = outward_normal(spec, bp.foot);
      }
      return bp;
    }
  }
  return bp;
}

double signed_distance(const DomainSpec& spec, std::span<const double> x) {
  if (spec.kind() == DomainSpec::Kind::ball) {
    require_dim(spec, x);
    double r2 = 0.0;
    for (int i = 0; i < spec.dim(); ++i) r2 += (x[i] - spec.center()[i]) * (x[i] - spec.center()[i]);
    return std::sqrt(r2) - spec.radius();
  }
  return closest_boundary_point(spec, x).distance;
}

Vec outward_normal(const DomainSpec& spec, std::span<const double> p) {
  require_dim(spec, p);
  switch (spec.kind()) {
    case DomainSpec::Kind::ball: {
      Vec d(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) d[i] = p[i] - spec.center()[i];
      const double len = std::sqrt(norm_squared(d));
      for (double& c : d) c /= len;
      return d;
    }
    case DomainSpec::Kind::ellipse: {
      const double a = spec.semi_a(), b = spec.semi_b();
      Vec d{p[0] / (a * a), p[1] / (b * b)};
      const double len = std::sqrt(norm_squared(d));
      for (double& c : d) c /= len;
      return d;
    }
    case DomainSpec::Kind::polygon: {
      const auto& v = spec.vertices();
      const std::size_t n = v.size();
      double best = std::numeric_limits<double>::infinity();
      Vec nrm{1.0, 0.0};
      for (std::size_t e = 0; e < n; ++e) {
        const Point2& a = v[e];
        const Point2& b = v[(e + 1) % n];
        const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        const double d = std::abs(cross(a, b, {p[0], p[1]})) / len;
        if (d < best) {
          best = d;
          nrm = {(b[1] - a[1]) / len, -(b[0] - a[0]) / len};
        }
      }
      return nrm;
    }
  }
  return {};
}

double ray_exit(const DomainSpec& spec, std::span<const double> x, std::span<const double> d) {
  require_dim(spec, x);
  require_dim(spec, d);
  switch (spec.kind()) {
    case DomainSpec::Kind::ball: {
      // |x - c + t d|^2 = R^2 with |d| = 1
      double bq = 0.0, cq = 0.0;
      for (int i = 0; i < spec.dim(); ++i) {
        const double y = x[i] - spec.center()[i];
        bq += y * d[i];
        cq += y * y;
      }
      cq -= spec.radius() * spec.radius();
      const double disc = std::sqrt(std::max(0.0, bq * bq - cq));
      return cq < 0.0 ? -cq / (bq + disc) : -bq + disc;
    }
    case DomainSpec::Kind::ellipse: {
      const double ia = 1.0 / (spec.semi_a() * spec.semi_a());
      const double ib = 1.0 / (spec.semi_b() * spec.semi_b());
      const double qa = d[0] * d[0] * ia + d[1] * d[1] * ib;
      const double qb = x[0] * d[0] * ia + x[1] * d[1] * ib;
      const double qc = x[0] * x[0] * ia + x[1] * x[1] * ib - 1.0;
      const double disc = std::sqrt(std::max(0.0, qb * qb - qa * qc));
      // positive root of qa t^2 + 2 qb t + qc = 0, cancellation-free for qc < 0
      return qc < 0.0 ? -qc / (qb + disc) : (-qb + disc) / qa;
    }
    case DomainSpec::Kind::polygon: {
      const auto& v = spec.vertices();
      const std::size_t n = v.size();
      double t = std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < n; ++e) {
        const Point2& a = v[e];
        const Point2& b = v[(e + 1) % n];
        const double nx = b[1] - a[1], ny = -(b[0] - a[0]);  // outward (unnormalised)
        const double denom = nx * d[0] + ny * d[1];
        if (denom <= 0.0) continue;
        const double num = nx * (a[0] - x[0]) + ny * (a[1] - x[1]);
        t = std::min(t, num / denom);
      }
      return t;
    }
  }
  return 0.0;
}

std::size_t GridMask::count(NodeClass cls) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [cls](const GridNode& n) { return n.cls == cls; }));
}

int GridMask::node_at(int i, int j) const {
  const int li = i - imin_, lj = j - jmin_;
  if (li < 0 || lj < 0 || li >= nx_ || lj >= ny_) return -1;
  return lookup_[static_cast<std::size_t>(lj) * nx_ + li];
}

NodeClass GridMask::classify(int i, int j) const {
  const int k = node_at(i, j);
  return k < 0 ? NodeClass::exterior : nodes_[k].cls;
}

GridMask rasterize(const DomainSpec& spec, double h) {
  if (spec.dim() != 2) throw ConfigurationError("rasterize needs a 2D domain");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigurationError("grid spacing must be positive");
  const double across = spec.min_width() / h - 1.0;
  if (across < 16.0)
    throw ConfigurationError("grid too coarse: about " + std::to_string(static_cast<int>(across)) +
                             " interior nodes across the smallest width, need 16");

  GridMask m;
  m.spec_ = spec;
  m.h_ = h;
  const auto box = spec.bounding_box();
  m.imin_ = static_cast<int>(std::floor(box[0][0] / h)) - 1;
  m.jmin_ = static_cast<int>(std::floor(box[0][1] / h)) - 1;
  m.nx_ = static_cast<int>(std::ceil(box[1][0] / h)) + 1 - m.imin_ + 1;
  m.ny_ = static_cast<int>(std::ceil(box[1][1] / h)) + 1 - m.jmin_ + 1;
  m.lookup_.assign(static_cast<std::size_t>(m.nx_) * m.ny_, -1);

  for (int lj = 0; lj < m.ny_; ++lj) {
    for (int li = 0; li < m.nx_; ++li) {
      const int i = li + m.imin_, j = lj + m.jmin_;
      const double p[2] = {i * h, j * h};
      if (signed_distance(spec, p) < 0.0) {
        m.lookup_[static_cast<std::size_t>(lj) * m.nx_ + li] = static_cast<int>(m.nodes_.size());
        GridNode nd;
        nd.i = i;
        nd.j = j;
        nd.pos = {p[0], p[1]};
        m.nodes_.push_back(nd);
      }
    }
  }

  for (std::size_t k = 0; k < m.nodes_.size(); ++k) {
    GridNode& nd = m.nodes_[k];
    bool axis_cut = false;
    for (int dir = 0; dir < kDirections; ++dir) {
      const auto [si, sj] = kDirectionSteps[dir];
      const int nb = m.node_at(nd.i + si, nd.j + sj);
      const double full = h * std::hypot(si, sj);
      nd.neighbour[dir] = nb;
      if (nb >= 0) {
        nd.arm[dir] = full;
        continue;
      }
      const double d[2] = {si * h / full, sj * h / full};
      const double p[2] = {nd.pos[0], nd.pos[1]};
      nd.arm[dir] = std::min(full, ray_exit(spec, p, d));
      if (dir < 4) {
        axis_cut = true;
        BoundaryCrossing c;
        c.node = static_cast<int>(k);
        c.dir = dir;
        c.point = {p[0] + nd.arm[dir] * d[0], p[1] + nd.arm[dir] * d[1]};
        const Vec n = outward_normal(spec, std::span<const double>(c.point));
        c.normal = {n[0], n[1]};
        m.crossings_.push_back(c);
      }
    }
    nd.cls = axis_cut ? NodeClass::boundary_adjacent : NodeClass::interior;
  }
  return m;
}

}  // namespace s2kit
