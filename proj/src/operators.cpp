#include "monokit/operators.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace monokit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool same_point(const Vec& a, const Vec& b) {
  return (a - b).norm() <= tol() * std::max(1.0, std::max(a.norm(), b.norm()));
}

Polyhedron hull_of(int dim, const std::vector<Vec>& points) {
  return points.empty() ? Polyhedron::empty(dim) : Polyhedron::from_generators(dim, points, {});
}

DomainSet sample_domain(int dim, std::vector<Vec> points) {
  std::vector<Vec> unique;
  for (auto& p : points)
    if (std::none_of(unique.begin(), unique.end(), [&](const Vec& q) { return same_point(p, q); }))
      unique.push_back(std::move(p));
  DomainSet s = DomainSet::closed(hull_of(dim, unique));
  s.sample = true;
  s.sample_points = std::move(unique);
  return s;
}

// Relative interiors of two polyhedra intersect.
bool relative_interiors_meet(const Polyhedron& a, const Polyhedron& b) {
  if (a.is_empty() || b.is_empty()) return false;
  const int d = a.dim();
  std::vector<Halfspace> rows;
  for (const Polyhedron* p : {&a, &b}) {
    const auto implicit = p->implicit_rows();
    for (std::size_t i = 0; i < p->rows().size(); ++i) {
      Vec n(d + 1);
      n.head(d) = p->rows()[i].normal;
      n[d] = implicit[i] ? 0.0 : 1.0;
      rows.push_back({n, p->rows()[i].offset});
    }
  }
  rows.push_back({Vec::Unit(d + 1, d), 1.0});
  const Polyhedron lp = Polyhedron::from_h(d + 1, std::move(rows));
  return !lp.is_empty() && lp.support(Vec::Unit(d + 1, d)) > tol();
}

std::optional<Vec> affine_coordinates(const AffineSet& set, const Vec& x) {
  const Mat b = set.basis();
  const Vec t = (b.transpose() * b).ldlt().solve(b.transpose() * (x - set.base));
  if ((set.base + b * t - x).norm() > tol() * std::max(1.0, x.norm())) return std::nullopt;
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

int OperatorSpec::dim() const { return node_->dim; }

OperatorSpec OperatorSpec::finite_graph(int dim, std::vector<GraphPair> pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    require_dim(pairs[i].x, dim, "graph point");
    require_dim(pairs[i].xstar, dim, "graph covector");
    for (std::size_t j = 0; j < i; ++j)
      if (same_point(pairs[i].x, pairs[j].x) && same_point(pairs[i].xstar, pairs[j].xstar))
        throw Error(Errc::InvalidArgument, "duplicate graph pair");
  }
  return OperatorSpec(std::make_shared<const OperatorNode>(OperatorNode{dim, FiniteGraph{std::move(pairs)}}));
}

OperatorSpec OperatorSpec::normal_cone(Polyhedron set) {
  const int dim = set.dim();
  return OperatorSpec(std::make_shared<const OperatorNode>(OperatorNode{dim, NormalCone{std::move(set)}}));
}

OperatorSpec OperatorSpec::normal_cone_ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw Error(Errc::InvalidArgument, "ball radius must be positive");
  const int dim = static_cast<int>(center.size());
  return OperatorSpec(
      std::make_shared<const OperatorNode>(OperatorNode{dim, NormalConeBall{std::move(center), radius}}));
}

OperatorSpec OperatorSpec::pl_subdifferential(int dim, std::vector<PLPiece> pieces) {
  if (pieces.empty()) throw Error(Errc::InvalidArgument, "piecewise-linear function needs a piece");
  for (const auto& p : pieces) require_dim(p.a, dim, "piece slope");
  return OperatorSpec(std::make_shared<const OperatorNode>(OperatorNode{dim, PLSubdifferential{std::move(pieces)}}));
}

OperatorSpec OperatorSpec::sum(OperatorSpec left, OperatorSpec right) {
  if (left.dim() != right.dim()) throw Error(Errc::DimensionMismatch, "sum operands differ in dimension");
  const int dim = left.dim();
  return OperatorSpec(
      std::make_shared<const OperatorNode>(OperatorNode{dim, Sum{std::move(left), std::move(right)}}));
}

OperatorSpec OperatorSpec::translate(OperatorSpec inner, Vec z) {
  require_dim(z, inner.dim(), "translation");
  const int dim = inner.dim();
  return OperatorSpec(
      std::make_shared<const OperatorNode>(OperatorNode{dim, Translate{std::move(inner), std::move(z)}}));
}

OperatorSpec OperatorSpec::affine_restriction(OperatorSpec inner, AffineSet set) {
  if (set.ambient() != inner.dim()) throw Error(Errc::DimensionMismatch, "affine set lives in another space");
  if (set.dim() == 0) throw Error(Errc::InvalidArgument, "affine set needs a direction");
  set.validate();
  const int dim = set.dim();
  return OperatorSpec(std::make_shared<const OperatorNode>(
      OperatorNode{dim, AffineRestriction{std::move(inner), std::move(set)}}));
}

OperatorSpec OperatorSpec::domain_cut(OperatorSpec inner, std::vector<Halfspace> cuts) {
  for (auto& c : cuts) {
    require_dim(c.normal, inner.dim(), "cut normal");
    const double n = c.normal.norm();
    if (n <= tol()) throw Error(Errc::DegenerateRow, "cut with zero normal");
    c.normal /= n;
    c.offset /= n;
  }
  const int dim = inner.dim();
  return OperatorSpec(
      std::make_shared<const OperatorNode>(OperatorNode{dim, DomainCut{std::move(inner), std::move(cuts)}}));
}

OperatorSpec OperatorSpec::point_patch(OperatorSpec inner, Vec point, std::optional<Polyhedron> value) {
  require_dim(point, inner.dim(), "patch point");
  if (value && value->dim() != inner.dim()) throw Error(Errc::DimensionMismatch, "patch value dimension");
  const int dim = inner.dim();
  return OperatorSpec(std::make_shared<const OperatorNode>(
      OperatorNode{dim, PointPatch{std::move(inner), std::move(point), std::move(value)}}));
}

OperatorSpec translate(const OperatorSpec& op, const Vec& z) { return OperatorSpec::translate(op, z); }

OperatorSpec restrict_affine(const OperatorSpec& op, const AffineSet& set) {
  return OperatorSpec::affine_restriction(op, set);
}

// ---------------------------------------------------------------------------

Polyhedron evaluate(const OperatorSpec& op, const Vec& x) {
  const int d = op.dim();
  require_dim(x, d, "evaluation point");
  return std::visit(
      overloaded{
          [&](const FiniteGraph& g) {
            std::vector<Vec> values;
            for (const auto& p : g.pairs)
              if (same_point(p.x, x)) values.push_back(p.xstar);
            return hull_of(d, values);
          },
          [&](const NormalCone& n) {
            if (!n.set.contains(x, tol() * std::max(1.0, x.norm()))) return Polyhedron::empty(d);
            return normal_cone(n.set, x);
          },
          [&](const NormalConeBall& b) {
            const double r = (x - b.center).norm();
            const double eps = tol() * std::max(1.0, b.radius);
            if (r < b.radius - eps) return Polyhedron::point(Vec::Zero(d));
            if (r <= b.radius + eps) return Polyhedron::cone(d, {x - b.center});
            return Polyhedron::empty(d);
          },
          [&](const PLSubdifferential& f) {
            double best = -kInf;
            for (const auto& p : f.pieces) best = std::max(best, p.a.dot(x) + p.b);
            std::vector<Vec> active;
            const double eps = tol() * std::max(1.0, std::abs(best));
            for (const auto& p : f.pieces)
              if (p.a.dot(x) + p.b >= best - eps) active.push_back(p.a);
            return hull_of(d, active);
          },
          [&](const Sum& s) {
            const Polyhedron a = evaluate(s.left, x);
            if (a.is_empty()) return a;
            return a.minkowski_sum(evaluate(s.right, x));
          },
          [&](const Translate& t) { return evaluate(t.inner, x + t.z); },
          [&](const AffineRestriction& r) {
            const Polyhedron inner = evaluate(r.inner, r.set.point_at(x));
            return inner.linear_image(r.set.basis().transpose());
          },
          [&](const DomainCut& c) {
            for (const auto& cut : c.cuts)
              if (cut.normal.dot(x) >= cut.offset - tol()) return Polyhedron::empty(d);
            return evaluate(c.inner, x);
          },
          [&](const PointPatch& p) {
            if (same_point(p.point, x)) return p.value ? *p.value : Polyhedron::empty(d);
            return evaluate(p.inner, x);
          },
      },
      op.node().v);
}

DomainSet domain(const OperatorSpec& op) {
  const int d = op.dim();
  return std::visit(
      overloaded{
          [&](const FiniteGraph& g) {
            std::vector<Vec> xs;
            for (const auto& p : g.pairs) xs.push_back(p.x);
            return sample_domain(d, std::move(xs));
          },
          [&](const NormalCone& n) { return DomainSet::closed(n.set); },
          [&](const NormalConeBall&) -> DomainSet {
            throw Error(Errc::UnsupportedVariant, "the ball domain is not polyhedral");
          },
          [&](const PLSubdifferential&) { return DomainSet::closed(Polyhedron::whole(d)); },
          [&](const Sum& s) {
            const DomainSet a = domain(s.left);
            const DomainSet b = domain(s.right);
            if (a.sample || b.sample) {
              std::vector<Vec> pts;
              if (a.sample && b.sample) {
                for (const auto& p : a.sample_points)
                  if (b.contains(p)) pts.push_back(p);
              } else {
                const DomainSet& s1 = a.sample ? a : b;
                const DomainSet& s2 = a.sample ? b : a;
                for (const auto& p : s1.sample_points)
                  if (s2.contains(p)) pts.push_back(p);
              }
              return sample_domain(d, std::move(pts));
            }
            const Polyhedron hull = a.hull.intersect(b.hull);
            if (hull.is_empty()) return DomainSet::closed(hull);
            DomainSet out;
            out.hull = hull;
            out.included = a.included;
            out.included.insert(out.included.end(), b.included.begin(), b.included.end());
            for (const auto* part : {&a, &b})
              for (const auto& h : part->holes)
                if (hull.contains(h)) out.holes.push_back(h);
            out.qualification_unverified = a.qualification_unverified || b.qualification_unverified ||
                                           !relative_interiors_meet(a.hull, b.hull);
            return out;
          },
          [&](const Translate& t) {
            DomainSet inner = domain(t.inner);
            if (inner.sample) {
              for (auto& p : inner.sample_points) p -= t.z;
              return sample_domain(d, std::move(inner.sample_points));
            }
            inner.hull = inner.hull.translated(-t.z);
            for (auto& h : inner.holes) h -= t.z;
            return inner;
          },
          [&](const AffineRestriction& r) {
            const DomainSet inner = domain(r.inner);
            if (inner.sample) {
              std::vector<Vec> pts;
              for (const auto& p : inner.sample_points)
                if (auto c = affine_coordinates(r.set, p)) pts.push_back(*c);
              return sample_domain(d, std::move(pts));
            }
            if (inner.hull.is_empty()) return DomainSet::closed(Polyhedron::empty(d));
            const Mat basis = r.set.basis();
            std::vector<Halfspace> rows;
            std::vector<bool> included;
            for (std::size_t i = 0; i < inner.hull.rows().size(); ++i) {
              const auto& row = inner.hull.rows()[i];
              const Vec n = basis.transpose() * row.normal;
              const double b = row.offset - row.normal.dot(r.set.base);
              if (n.norm() <= tol()) {
                if (b < -tol() || (!inner.included[i] && b <= tol()))
                  return DomainSet::closed(Polyhedron::empty(d));
                continue;
              }
              rows.push_back({n, b});
              included.push_back(inner.included[i]);
            }
            DomainSet out;
            out.hull = Polyhedron::from_h(d, std::move(rows));
            out.included = std::move(included);
            if (out.hull.is_empty()) return DomainSet::closed(out.hull);
            for (const auto& h : inner.holes)
              if (auto c = affine_coordinates(r.set, h)) out.holes.push_back(*c);
            out.qualification_unverified = inner.qualification_unverified;
            return out;
          },
          [&](const DomainCut& c) {
            DomainSet inner = domain(c.inner);
            auto strict = [&](const Vec& x) {
              return std::all_of(c.cuts.begin(), c.cuts.end(),
                                 [&](const Halfspace& h) { return h.normal.dot(x) < h.offset - tol(); });
            };
            if (inner.sample) {
              std::vector<Vec> pts;
              for (const auto& p : inner.sample_points)
                if (strict(p)) pts.push_back(p);
              return sample_domain(d, std::move(pts));
            }
            if (inner.hull.is_empty()) return inner;
            const Polyhedron hull = inner.hull.intersect(Polyhedron::from_h(d, c.cuts));
            if (hull.is_empty()) return DomainSet::closed(hull);
            DomainSet out;
            out.hull = hull;
            out.included = inner.included;
            out.included.insert(out.included.end(), c.cuts.size(), false);
            for (const auto& h : inner.holes)
              if (strict(h)) out.holes.push_back(h);
            out.qualification_unverified = inner.qualification_unverified;
            return out;
          },
          [&](const PointPatch& p) {
            DomainSet inner = domain(p.inner);
            if (inner.sample) {
              std::vector<Vec> pts;
              for (const auto& q : inner.sample_points)
                if (!same_point(q, p.point)) pts.push_back(q);
              if (p.value && !p.value->is_empty()) pts.push_back(p.point);
              return sample_domain(d, std::move(pts));
            }
            auto& holes = inner.holes;
            holes.erase(std::remove_if(holes.begin(), holes.end(), [&](const Vec& h) { return same_point(h, p.point); }),
                        holes.end());
            const bool nonempty = p.value && !p.value->is_empty();
            if (!nonempty) {
              if (inner.contains(p.point)) holes.push_back(p.point);
            } else if (!inner.contains(p.point)) {
              throw Error(Errc::InvalidArgument, "patch point must lie in the domain of the patched operator");
            }
            return inner;
          },
      },
      op.node().v);
}

// ---------------------------------------------------------------------------

bool contains_ball(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const NormalConeBall&) { return true; },
                        [](const Sum& s) { return contains_ball(s.left) || contains_ball(s.right); },
                        [](const Translate& t) { return contains_ball(t.inner); },
                        [](const AffineRestriction& r) { return contains_ball(r.inner); },
                        [](const DomainCut& c) { return contains_ball(c.inner); },
                        [](const PointPatch& p) { return contains_ball(p.inner); },
                        [](const auto&) { return false; },
                    },
                    op.node().v);
}

bool is_finite_graph(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const FiniteGraph&) { return true; },
                        [](const Translate& t) { return is_finite_graph(t.inner); },
                        [](const AffineRestriction& r) { return is_finite_graph(r.inner); },
                        [](const auto&) { return false; },
                    },
                    op.node().v);
}

std::vector<GraphPair> graph_pairs(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const FiniteGraph& g) { return g.pairs; },
                        [](const Translate& t) {
                          auto pairs = graph_pairs(t.inner);
                          for (auto& p : pairs) p.x -= t.z;
                          return pairs;
                        },
                        [](const AffineRestriction& r) {
                          std::vector<GraphPair> out;
                          const Mat bt = r.set.basis().transpose();
                          for (const auto& p : graph_pairs(r.inner))
                            if (auto c = affine_coordinates(r.set, p.x)) out.push_back({*c, bt * p.xstar});
                          return out;
                        },
                        [](const auto&) -> std::vector<GraphPair> {
                          throw Error(Errc::UnsupportedVariant, "operator is not a finite graph");
                        },
                    },
                    op.node().v);
}

namespace {

// Points where d + 1 affine pieces tie at the maximum.
std::vector<Vec> pl_vertices(int d, const std::vector<PLPiece>& pieces) {
  std::vector<Vec> out;
  const int m = static_cast<int>(pieces.size());
  if (m < d + 1 || m > 12) return out;
  std::vector<int> pick(d + 1);
  for (int i = 0; i <= d; ++i) pick[i] = i;
  while (true) {
    Mat a(d, d);
    Vec rhs(d);
    for (int j = 1; j <= d; ++j) {
      a.row(j - 1) = (pieces[pick[j]].a - pieces[pick[0]].a).transpose();
      rhs[j - 1] = pieces[pick[0]].b - pieces[pick[j]].b;
    }
    Eigen::FullPivLU<Mat> lu(a);
    if (lu.rank() == d) {
      const Vec x = lu.solve(rhs);
      const double level = pieces[pick[0]].a.dot(x) + pieces[pick[0]].b;
      bool top = true;
      for (const auto& p : pieces)
        if (p.a.dot(x) + p.b > level + tol() * std::max(1.0, std::abs(level))) top = false;
      if (top) out.push_back(x);
    }
    int i = d;
    while (i >= 0 && pick[i] == m - d - 1 + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j <= d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<Vec> structural_points(const OperatorSpec& op) {
  std::vector<Vec> out = std::visit(
      overloaded{
          [](const FiniteGraph& g) {
            std::vector<Vec> xs;
            for (const auto& p : g.pairs) xs.push_back(p.x);
            return xs;
          },
          [](const NormalCone& n) { return n.set.is_empty() ? std::vector<Vec>{} : n.set.vertices(); },
          [](const NormalConeBall& b) { return std::vector<Vec>{b.center}; },
          [&op](const PLSubdifferential& f) { return pl_vertices(op.dim(), f.pieces); },
          [](const Sum& s) {
            auto a = structural_points(s.left);
            auto b = structural_points(s.right);
            a.insert(a.end(), b.begin(), b.end());
            return a;
          },
          [](const Translate& t) {
            auto pts = structural_points(t.inner);
            for (auto& p : pts) p -= t.z;
            return pts;
          },
          [](const AffineRestriction& r) {
            std::vector<Vec> pts;
            for (const auto& p : structural_points(r.inner))
              if (auto c = affine_coordinates(r.set, p)) pts.push_back(*c);
            return pts;
          },
          [](const DomainCut& c) { return structural_points(c.inner); },
          [](const PointPatch& p) {
            auto pts = structural_points(p.inner);
            pts.push_back(p.point);
            return pts;
          },
      },
      op.node().v);
  std::vector<Vec> unique;
  for (auto& p : out)
    if (std::none_of(unique.begin(), unique.end(), [&](const Vec& q) { return same_point(p, q); }))
      unique.push_back(std::move(p));
  return unique;
}

}  // namespace monokit
