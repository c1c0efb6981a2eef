#pragma once

#include "monokit/core.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace monokit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// {x : <normal, x> <= offset}. Normals are stored with unit length.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/// Generators of the cone {y : M y <= 0}: a lineality basis plus extreme rays
/// of the pointed part. Rows of M are processed one at a time (double
/// description); rays are kept at unit length.
struct ConeGenerators {
  std::vector<Vec> lines;
  std::vector<Vec> rays;
};
ConeGenerators cone_generators(const std::vector<Vec>& constraint_rows, int ambient);

/// Convex polyhedron in R^d kept in both representations. The H-rows are kept
/// in the order given (callers index them); the generator side consists of
/// points on every minimal face plus rays, with lineality stored as +/- pairs.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_h(int dim, std::vector<Halfspace> rows);
  static Polyhedron from_generators(int dim, std::vector<Vec> vertices, std::vector<Vec> rays);
  static Polyhedron empty(int dim);
  static Polyhedron whole(int dim);
  static Polyhedron point(const Vec& p);
  static Polyhedron cone(int dim, std::vector<Vec> rays);
  /// Axis-aligned box [lo, hi]^d.
  static Polyhedron box(int dim, double lo, double hi);

  int dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_bounded() const { return !empty_ && rays_.empty(); }
  const std::vector<Halfspace>& rows() const { return rows_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Vec>& rays() const { return rays_; }

  bool contains(const Vec& x, double slack) const;
  bool contains(const Vec& x) const { return contains(x, tol()); }
  /// r lies in the recession cone (A r <= tol).
  bool recedes(const Vec& r) const;
  bool contains(const Polyhedron& other) const;
  bool same_set(const Polyhedron& other) const { return contains(other) && other.contains(*this); }

  /// Rows that hold with equality on the whole set.
  std::vector<bool> implicit_rows() const;
  /// Dimension of the affine hull (-1 when empty).
  int affine_dim() const;
  /// Orthonormal basis (columns) of the linear space parallel to the affine hull.
  Mat affine_directions() const;

  Polyhedron intersect(const Polyhedron& other) const;
  Polyhedron minkowski_sum(const Polyhedron& other) const;
  /// Image under x -> M x (M has dim() columns).
  Polyhedron linear_image(const Mat& M) const;
  Polyhedron translated(const Vec& shift) const;

  /// max / min of <c, x> over the set; +/-inf when unbounded.
  double support(const Vec& c) const;
  const Vec* argmax(const Vec& c) const;

 private:
  int dim_ = 0;
  bool empty_ = true;
  std::vector<Halfspace> rows_;
  std::vector<Vec> vertices_;
  std::vector<Vec> rays_;

  void compute_generators();
};

/// Closed interval on the extended real line.
struct ExtInterval {
  double lo = kInf;
  double hi = -kInf;
  bool empty = true;

  static ExtInterval of(double lo, double hi) { return {lo, hi, false}; }
  static ExtInterval point(double v) { return {v, v, false}; }
  static ExtInterval none() { return {}; }

  /// inf / sup with the conventions inf(empty) = +inf, sup(empty) = -inf.
  double inf() const { return empty ? kInf : lo; }
  double sup() const { return empty ? -kInf : hi; }
  bool contains(double s, double slack) const { return !empty && s >= lo - slack && s <= hi + slack; }
  bool contains(double s) const { return contains(s, tol()); }
  bool is_singleton() const;
  bool same(const ExtInterval& other, double slack) const;
};

struct AffineSet {
  Vec base;
  std::vector<Vec> dirs;

  int ambient() const { return static_cast<int>(base.size()); }
  int dim() const { return static_cast<int>(dirs.size()); }
  /// d x k matrix with the directions as columns.
  Mat basis() const;
  Vec point_at(const Vec& t) const { return base + basis() * t; }
  void validate() const;
};

/// hull minus the points with <normal_i, x> = offset_i on every row flagged as
/// excluded, minus isolated holes. A domain built from finite graph samples is
/// flagged `sample` and only describes the convex hull of the sample.
struct DomainSet {
  Polyhedron hull;
  std::vector<bool> included;
  std::vector<Vec> holes;
  bool sample = false;
  std::vector<Vec> sample_points;
  bool qualification_unverified = false;

  static DomainSet closed(Polyhedron hull);
  bool contains(const Vec& x) const;
  /// x lies in the relative interior of the hull.
  bool in_relative_interior(const Vec& x) const;
  bool is_empty() const;
  void validate() const;
};

Polyhedron normal_cone(const Polyhedron& set, const Vec& x);
Polyhedron tangent_cone(const Polyhedron& set, const Vec& x);
/// Polar {y : <y, k> <= 0 for all k in K} of a cone K.
Polyhedron polar(const Polyhedron& cone);
ExtInterval project_interval(const Polyhedron& set, const Vec& direction);

struct SupportCertificate {
  Vec y;
  double beta = 0.0;
};
/// One-sided certificate for int dom sigma_A being non-empty: a pair (y, beta)
/// with <y, x*> >= |x*| + beta on A, found from the generator inequalities
/// <y, v> >= |v| + beta and <y, r> >= |r| (triangle inequality on generator
/// combinations). `none` does not prove the interior empty.
std::optional<SupportCertificate> support_interiority(const Polyhedron& set);

struct NearConvexity {
  bool nearly_convex = false;
  int ri_dim = -1;
};
NearConvexity nearly_convex(const DomainSet& set);

struct InteriorPoint {
  Vec point;
  double slack = 0.0;
};
InteriorPoint relative_interior_point(const DomainSet& set);
InteriorPoint relative_interior_point(const Polyhedron& set);

/// Euclidean distance from y to a polyhedron, computed exactly over subsets of
/// the generators (the set must have at most 16 generators).
double distance(const Polyhedron& set, const Vec& y);

/// t-range where base + t * dir lies in every row (closed) and the open range
/// where every non-implicit row of the set is strict.
struct LineSection {
  ExtInterval closed;
  double open_lo = kInf;
  double open_hi = -kInf;
  bool meets_relative_interior() const { return open_lo < open_hi; }
};
LineSection line_section(const Polyhedron& set, const Vec& base, const Vec& dir);

}  // namespace monokit
