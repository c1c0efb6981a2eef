#include "monokit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace monokit {

Mat AffineSet::basis() const {
  Mat m(ambient(), dim());
  for (int i = 0; i < dim(); ++i) m.col(i) = dirs[static_cast<std::size_t>(i)];
  return m;
}

void AffineSet::validate() const {
  for (const auto& d : dirs) require_dim(d, ambient(), "affine direction");
  if (dim() > ambient()) throw Error(Errc::DependentDirections, "more directions than the ambient dimension");
  if (dim() == 0) return;
  const Mat b = basis();
  const double gram = (b.transpose() * b).determinant();
  if (!(gram > tol())) throw Error(Errc::DependentDirections, "directions are linearly dependent");
}

DomainSet DomainSet::closed(Polyhedron hull) {
  DomainSet s;
  s.included.assign(hull.rows().size(), true);
  s.hull = std::move(hull);
  return s;
}

bool DomainSet::contains(const Vec& x) const {
  if (sample) {
    for (const auto& p : sample_points)
      if ((p - x).norm() <= tol() * std::max(1.0, p.norm())) return true;
    return false;
  }
  if (!hull.contains(x)) return false;
  for (std::size_t i = 0; i < hull.rows().size(); ++i)
    if (i < included.size() && !included[i] &&
        hull.rows()[i].normal.dot(x) >= hull.rows()[i].offset - tol())
      return false;
  for (const auto& h : holes)
    if ((h - x).norm() <= tol() * std::max(1.0, h.norm())) return false;
  return true;
}

bool DomainSet::in_relative_interior(const Vec& x) const {
  if (!hull.contains(x)) return false;
  const auto implicit = hull.implicit_rows();
  for (std::size_t i = 0; i < hull.rows().size(); ++i)
    if (!implicit[i] && hull.rows()[i].normal.dot(x) >= hull.rows()[i].offset - tol()) return false;
  return true;
}

bool DomainSet::is_empty() const {
  if (sample) return sample_points.empty();
  if (hull.is_empty()) return true;
  if (hull.affine_dim() == 0) return !contains(hull.vertices().front());
  return false;
}

void DomainSet::validate() const {
  if (sample) return;
  if (included.size() != hull.rows().size())
    throw Error(Errc::InvalidArgument, "facet flags do not match the hull rows");
  const auto implicit = hull.implicit_rows();
  for (std::size_t i = 0; i < included.size(); ++i)
    if (!included[i] && implicit[i])
      throw Error(Errc::InvalidArgument, "an implicit equality row cannot be excluded");
}

Polyhedron normal_cone(const Polyhedron& set, const Vec& x) {
  require_dim(x, set.dim(), "point");
  if (!set.contains(x, tol() * std::max(1.0, x.norm())))
    throw Error(Errc::PointOutsideSet, "point is not in the set");
  std::vector<Vec> normals;
  for (const auto& row : set.rows())
    if (row.normal.dot(x) >= row.offset - tol() * std::max(1.0, x.norm())) normals.push_back(row.normal);
  return Polyhedron::cone(set.dim(), std::move(normals));
}

Polyhedron tangent_cone(const Polyhedron& set, const Vec& x) {
  require_dim(x, set.dim(), "point");
  if (!set.contains(x, tol() * std::max(1.0, x.norm())))
    throw Error(Errc::PointOutsideSet, "point is not in the set");
  std::vector<Halfspace> rows;
  for (const auto& row : set.rows())
    if (row.normal.dot(x) >= row.offset - tol() * std::max(1.0, x.norm())) rows.push_back({row.normal, 0.0});
  return Polyhedron::from_h(set.dim(), std::move(rows));
}

Polyhedron polar(const Polyhedron& cone) {
  if (cone.is_empty()) throw Error(Errc::EmptyPolyhedron, "polar of an empty set");
  for (const auto& v : cone.vertices())
    if (v.norm() > tol() * 10) throw Error(Errc::InvalidArgument, "polar expects a cone with apex at the origin");
  std::vector<Halfspace> rows;
  for (const auto& r : cone.rays()) rows.push_back({r, 0.0});
  return Polyhedron::from_h(cone.dim(), std::move(rows));
}

ExtInterval project_interval(const Polyhedron& set, const Vec& direction) {
  require_dim(direction, set.dim(), "direction");
  if (set.is_empty()) throw Error(Errc::EmptyPolyhedron, "projection of an empty set");
  return ExtInterval::of(-set.support(-direction), set.support(direction));
}

std::optional<SupportCertificate> support_interiority(const Polyhedron& set) {
  if (set.is_empty()) throw Error(Errc::EmptyPolyhedron, "support certificate of an empty set");
  const int d = set.dim();
  std::vector<Halfspace> rows;
  for (const auto& v : set.vertices()) {
    Vec n(d + 1);
    n.head(d) = -v;
    n[d] = 1.0;
    rows.push_back({n, -v.norm()});
  }
  for (const auto& r : set.rays()) {
    Vec n = Vec::Zero(d + 1);
    n.head(d) = -r;
    rows.push_back({n, -r.norm()});
  }
  const Polyhedron feasible = Polyhedron::from_h(d + 1, std::move(rows));
  if (feasible.is_empty()) return std::nullopt;
  const Vec& p = feasible.vertices().front();
  return SupportCertificate{p.head(d), p[d]};
}

NearConvexity nearly_convex(const DomainSet& set) {
  NearConvexity out;
  if (set.sample) {
    std::size_t distinct = set.sample_points.empty() ? 0 : 1;
    for (std::size_t i = 1; i < set.sample_points.size(); ++i)
      if ((set.sample_points[i] - set.sample_points[0]).norm() > tol()) distinct = 2;
    out.nearly_convex = distinct == 1;
    out.ri_dim = distinct == 0 ? -1 : 0;
    return out;
  }
  if (set.hull.is_empty()) return out;
  out.ri_dim = set.hull.affine_dim();
  out.nearly_convex = true;
  for (const auto& h : set.holes)
    if (set.in_relative_interior(h) || out.ri_dim == 0) out.nearly_convex = false;
  return out;
}

InteriorPoint relative_interior_point(const Polyhedron& set) {
  if (set.is_empty()) throw Error(Errc::EmptyRelativeInterior, "empty set");
  const int d = set.dim();
  const auto implicit = set.implicit_rows();
  std::vector<Halfspace> rows;
  for (std::size_t i = 0; i < set.rows().size(); ++i) {
    Vec n(d + 1);
    n.head(d) = set.rows()[i].normal;
    n[d] = implicit[i] ? 0.0 : 1.0;
    rows.push_back({n, set.rows()[i].offset});
  }
  rows.push_back({Vec::Unit(d + 1, d), 1.0});
  const Polyhedron lp = Polyhedron::from_h(d + 1, std::move(rows));
  const Vec* best = lp.is_empty() ? nullptr : lp.argmax(Vec::Unit(d + 1, d));
  if (best == nullptr || (*best)[d] <= tol())
    throw Error(Errc::EmptyRelativeInterior, "no point with positive slack");
  return {best->head(d), (*best)[d]};
}

InteriorPoint relative_interior_point(const DomainSet& set) {
  if (set.sample) {
    if (set.sample_points.empty()) throw Error(Errc::EmptyRelativeInterior, "empty sample");
    Polyhedron hull = Polyhedron::from_generators(static_cast<int>(set.sample_points.front().size()),
                                                  set.sample_points, {});
    if (hull.affine_dim() == 0) return {set.sample_points.front(), 0.0};
    return relative_interior_point(hull);
  }
  InteriorPoint ip = relative_interior_point(set.hull);
  if (set.contains(ip.point)) return ip;
  const auto implicit = set.hull.implicit_rows();
  for (const auto& v : set.hull.vertices()) {
    Vec cand = 0.5 * (ip.point + v);
    if (!set.contains(cand) || !set.in_relative_interior(cand)) continue;
    double slack = kInf;
    for (std::size_t i = 0; i < set.hull.rows().size(); ++i)
      if (!implicit[i]) slack = std::min(slack, set.hull.rows()[i].offset - set.hull.rows()[i].normal.dot(cand));
    return {cand, std::isfinite(slack) ? slack : ip.slack};
  }
  throw Error(Errc::EmptyRelativeInterior, "relative interior is covered by holes");
}

double distance(const Polyhedron& set, const Vec& y) {
  require_dim(y, set.dim(), "point");
  if (set.is_empty()) throw Error(Errc::EmptyPolyhedron, "distance to an empty set");
  if (set.contains(y)) return 0.0;
  const std::size_t nv = set.vertices().size();
  const std::size_t nr = set.rays().size();
  const std::size_t g = nv + nr;
  if (g > 16) throw Error(Errc::TooLarge, "too many generators for exact distance");
  const int max_size = set.dim() + 1;
  double best = kInf;
  for (unsigned mask = 1; mask < (1u << g); ++mask) {
    if (__builtin_popcount(mask) > max_size) continue;
    if ((mask & ((1u << nv) - 1)) == 0) continue;
    std::vector<std::size_t> verts, rays;
    for (std::size_t i = 0; i < g; ++i)
      if (mask & (1u << i)) (i < nv ? verts : rays).push_back(i < nv ? i : i - nv);
    const Vec& v0 = set.vertices()[verts.front()];
    const auto cols = static_cast<Eigen::Index>(verts.size() - 1 + rays.size());
    Vec coeff;
    Vec point = v0;
    if (cols > 0) {
      Mat b(set.dim(), cols);
      Eigen::Index c = 0;
      for (std::size_t i = 1; i < verts.size(); ++i) b.col(c++) = set.vertices()[verts[i]] - v0;
      for (auto r : rays) b.col(c++) = set.rays()[r];
      Eigen::ColPivHouseholderQR<Mat> qr(b);
      qr.setThreshold(1e-10);
      if (qr.rank() < cols) continue;
      coeff = qr.solve(y - v0);
      if (coeff.minCoeff() < -1e-12) continue;
      const double lambda_sum = coeff.head(static_cast<Eigen::Index>(verts.size() - 1)).sum();
      if (lambda_sum > 1.0 + 1e-12) continue;
      point = v0 + b * coeff;
    }
    best = std::min(best, (y - point).norm());
  }
  return best;
}

LineSection line_section(const Polyhedron& set, const Vec& base, const Vec& dir) {
  require_dim(base, set.dim(), "line base");
  require_dim(dir, set.dim(), "line direction");
  LineSection out;
  if (set.is_empty()) return out;
  const double eps = tol();
  const auto implicit = set.implicit_rows();
  double lo = -kInf, hi = kInf;
  double olo = -kInf, ohi = kInf;
  bool open_ok = true;
  for (std::size_t i = 0; i < set.rows().size(); ++i) {
    const double a = set.rows()[i].normal.dot(dir);
    const double b = set.rows()[i].offset - set.rows()[i].normal.dot(base);
    if (std::abs(a) <= eps) {
      if (b < -eps) return out;
      if (!implicit[i] && b <= eps) open_ok = false;
      continue;
    }
    const double t = b / a;
    if (a > 0)
      hi = std::min(hi, t);
    else
      lo = std::max(lo, t);
    if (!implicit[i]) {
      if (a > 0)
        ohi = std::min(ohi, t);
      else
        olo = std::max(olo, t);
    }
  }
  if (lo > hi + eps) return out;
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  out.closed = ExtInterval::of(lo, hi);
  if (!open_ok) return out;
  const double l2 = std::max(olo, lo);
  const double h2 = std::min(ohi, hi);
  if (l2 < h2 - eps) {
    out.open_lo = l2;
    out.open_hi = h2;
  } else if (hi - lo <= eps && olo < lo - eps && ohi > hi + eps) {
    // The line crosses the affine hull transversally at a relative interior point.
    out.open_lo = lo - 0.5 * eps;
    out.open_hi = hi + 0.5 * eps;
  }
  return out;
}

}  // namespace monokit
