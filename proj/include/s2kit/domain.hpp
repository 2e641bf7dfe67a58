#pragma once

// Convex domains (balls, axis-aligned ellipses, convex polygons), their signed
// distance, and rasterization onto a uniform lattice with the boundary data
// needed for Shortley-Weller differencing.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "s2kit/symmat.hpp"

namespace s2kit {

using Point2 = std::array<double, 2>;

class DomainSpec {
 public:
  enum class Kind { ball, ellipse, polygon };

  /// Ball in dimension 2 or 3.
  static DomainSpec ball(Vec center, double radius);
  static DomainSpec disk(double radius) { return ball({0.0, 0.0}, radius); }
  /// {x^2/a^2 + y^2/b^2 < 1}
  static DomainSpec ellipse(double a, double b);
  /// Counterclockwise, strictly convex vertex list; InputError otherwise.
  static DomainSpec polygon(std::vector<Point2> vertices);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  double semi_a() const { return a_; }
  double semi_b() const { return b_; }
  const std::vector<Point2>& vertices() const { return vertices_; }

  /// Canonical text form: disk:R, ball:N:R, ellipse:a,b, polygon:x0,y0;x1,y1;...
  std::string describe() const;
  /// Inverse of describe(); also accepts ball:R with centre at the origin in 2D.
  static DomainSpec parse(const std::string& text);

  /// Smallest width (distance between parallel supporting lines).
  double min_width() const;
  /// Axis-aligned bounding box (lo, hi) in 2D.
  std::array<Point2, 2> bounding_box() const;
  Vec centroid() const;

 private:
  Kind kind_ = Kind::ball;
  int dim_ = 2;
  Vec center_;
  double radius_ = 1.0;
  double a_ = 1.0, b_ = 1.0;
  std::vector<Point2> vertices_;
};

/// True iff all cross products of consecutive edges are strictly positive.
bool is_strictly_convex_ccw(std::span<const Point2> vertices);
/// Balls and ellipses are convex; polygons are checked again.
bool assert_convex(const DomainSpec& spec);

double signed_distance(const DomainSpec& spec, std::span<const double> x);

struct BoundaryPoint {
  Vec foot;
  Vec normal;  ///< outward unit normal at foot
  double distance = 0.0;  ///< signed distance of the query point
};

BoundaryPoint closest_boundary_point(const DomainSpec& spec, std::span<const double> x);

/// Outward unit normal at a point of the boundary.
Vec outward_normal(const DomainSpec& spec, std::span<const double> on_boundary);

/// Distance t > 0 from an interior point x along the unit direction d to the boundary.
double ray_exit(const DomainSpec& spec, std::span<const double> x, std::span<const double> d);

enum class NodeClass : std::uint8_t { exterior, interior, boundary_adjacent };

/// Stencil directions: +x, -x, +y, -y, +(x+y), -(x+y), +(x-y), -(x-y).
inline constexpr int kDirections = 8;
inline constexpr std::array<std::array<int, 2>, kDirections> kDirectionSteps{
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};
inline constexpr std::array<int, kDirections> kOpposite{1, 0, 3, 2, 5, 4, 7, 6};

struct GridNode {
  int i = 0, j = 0;  ///< lattice indices; position (i h, j h)
  Point2 pos{};
  NodeClass cls = NodeClass::interior;
  std::array<double, kDirections> arm{};  ///< distance to the neighbour or to the boundary
  std::array<int, kDirections> neighbour{};  ///< node index, or -1 when the arm ends on the boundary
};

/// Axis crossing of the boundary by an arm of a boundary-adjacent node.
struct BoundaryCrossing {
  int node = 0;
  int dir = 0;  ///< axis direction 0..3
  Point2 point{};
  Point2 normal{};
};

class GridMask {
 public:
  double h() const { return h_; }
  const DomainSpec& domain() const { return spec_; }
  const std::vector<GridNode>& nodes() const { return nodes_; }
  const std::vector<BoundaryCrossing>& crossings() const { return crossings_; }
  std::size_t count(NodeClass cls) const;
  /// Index of the inside node at lattice (i, j), or -1.
  int node_at(int i, int j) const;
  NodeClass classify(int i, int j) const;

  friend GridMask rasterize(const DomainSpec& spec, double h);

 private:
  DomainSpec spec_;
  double h_ = 0.0;
  int imin_ = 0, jmin_ = 0, nx_ = 0, ny_ = 0;
  std::vector<int> lookup_;
  std::vector<GridNode> nodes_;
  std::vector<BoundaryCrossing> crossings_;
};

/// Nodes at integer multiples of h strictly inside the domain. Requires a 2D
/// domain and min_width / h - 1 >= 16; ConfigurationError otherwise.
GridMask rasterize(const DomainSpec& spec, double h);

}  // namespace s2kit
