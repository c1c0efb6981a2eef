#include "checker_support.hpp"

#include <algorithm>
#include <cmath>

namespace monokit::detail {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double scale_of(const Vec& v) { return std::max(1.0, v.norm()); }

// Related point of a graph with a single abscissa.
Witness single_point_witness(const std::vector<GraphPair>& graph) {
  const GraphPair* top = &graph.front();
  for (const auto& p : graph)
    if (p.xstar[0] > top->xstar[0]) top = &p;
  Witness w;
  w.kind = Witness::Kind::RelatedPoint;
  w.points.push_back({top->x, top->xstar + Vec::Unit(top->xstar.size(), 0)});
  return w;
}

}  // namespace

bool same_point(const Vec& a, const Vec& b) { return (a - b).norm() <= tol() * scale_of(a); }

void push_unique(std::vector<Vec>& pts, const Vec& p) {
  if (std::none_of(pts.begin(), pts.end(), [&](const Vec& q) { return same_point(p, q); })) pts.push_back(p);
}

bool structurally_monotone(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const FiniteGraph&) { return false; },
                        [](const PointPatch&) { return false; },
                        [](const Sum& s) { return structurally_monotone(s.left) && structurally_monotone(s.right); },
                        [](const Translate& t) { return structurally_monotone(t.inner); },
                        [](const AffineRestriction& r) { return structurally_monotone(r.inner); },
                        [](const DomainCut& c) { return structurally_monotone(c.inner); },
                        [](const auto&) { return true; },
                    },
                    op.node().v);
}

bool structurally_closed(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const DomainCut&) { return false; },
                        [](const PointPatch&) { return false; },
                        [](const Sum& s) { return structurally_closed(s.left) && structurally_closed(s.right); },
                        [](const Translate& t) { return structurally_closed(t.inner); },
                        [](const AffineRestriction& r) { return structurally_closed(r.inner); },
                        [](const auto&) { return true; },
                    },
                    op.node().v);
}

std::optional<Witness> monotonicity_violation(const std::vector<GraphPair>& graph) {
  for (std::size_t i = 0; i < graph.size(); ++i)
    for (std::size_t j = i + 1; j < graph.size(); ++j) {
      const double c = coupling_difference(graph[i], graph[j]);
      const double scale = scale_of(graph[i].x - graph[j].x) * scale_of(graph[i].xstar - graph[j].xstar);
      if (c < -tol() * scale) {
        Witness w;
        w.kind = Witness::Kind::MonotonicityViolation;
        w.points = {graph[i], graph[j]};
        return w;
      }
    }
  return std::nullopt;
}

std::vector<Vec> face_representatives(const DomainSet& dom, const OperatorSpec& op) {
  std::vector<Vec> reps;
  if (dom.sample) {
    for (const auto& p : dom.sample_points) push_unique(reps, p);
    return reps;
  }
  const Polyhedron& hull = dom.hull;
  if (hull.is_empty()) return reps;
  for (const auto& v : hull.vertices()) push_unique(reps, v);
  const auto implicit = hull.implicit_rows();
  const int fdim = hull.affine_dim() - 1;
  for (std::size_t i = 0; i < hull.rows().size(); ++i) {
    if (implicit[i]) continue;
    auto rows = hull.rows();
    rows.push_back({-hull.rows()[i].normal, -hull.rows()[i].offset});
    const Polyhedron face = Polyhedron::from_h(hull.dim(), std::move(rows));
    if (face.is_empty() || face.affine_dim() != fdim) continue;
    push_unique(reps, relative_interior_point(face).point);
  }
  for (const auto& p : structural_points(op))
    if (p.size() == hull.dim() && hull.contains(p)) push_unique(reps, p);
  for (const auto& h : dom.holes) push_unique(reps, h);
  return reps;
}

std::optional<Witness> cone_violation(const OperatorSpec& op, const Polyhedron& hull, const Vec& x) {
  const Polyhedron tx = evaluate(op, x);
  if (tx.is_empty()) return std::nullopt;
  const Polyhedron n = normal_cone(hull, x);
  for (const auto& r : n.rays()) {
    if (tx.recedes(r)) continue;
    const Vec& base = tx.vertices().front();
    double lambda = 1.0;
    for (int k = 0; k < 80 && tx.contains(Vec(base + lambda * r)); ++k) lambda *= 2.0;
    Witness w;
    w.kind = Witness::Kind::RelatedPoint;
    w.points.push_back({x, base + lambda * r});
    return w;
  }
  return std::nullopt;
}

Witness finite_domain_witness(const std::vector<GraphPair>& graph, std::uint64_t seed) {
  std::vector<Vec> xs;
  for (const auto& p : graph) push_unique(xs, p.x);
  if (xs.size() < 2) return single_point_witness(graph);
  const int d = static_cast<int>(xs.front().size());
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) order.emplace_back(i, j);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  if (order.size() > 64) order.resize(64);
  for (const auto& [i, j] : order) {
    const Vec m = 0.5 * (xs[i] + xs[j]);
    if (std::any_of(xs.begin(), xs.end(), [&](const Vec& x) { return same_point(x, m); })) continue;
    std::vector<Halfspace> rows;
    for (const auto& a : graph) {
      const Vec dx = m - a.x;
      rows.push_back({-dx, -dx.dot(a.xstar)});
    }
    const Polyhedron lp = Polyhedron::from_h(d, std::move(rows));
    if (lp.is_empty()) continue;
    Witness w;
    w.kind = Witness::Kind::RelatedPoint;
    w.points.push_back({m, lp.vertices().front()});
    return w;
  }
  // Outward normal extension at an exposed abscissa.
  const Vec n = Vec::Unit(d, 0);
  const GraphPair* best = &graph.front();
  for (const auto& p : graph)
    if (p.x.dot(n) > best->x.dot(n)) best = &p;
  Witness w;
  w.kind = Witness::Kind::RelatedPoint;
  double spread = 1.0;
  for (const auto& p : graph) spread = std::max(spread, (p.xstar - best->xstar).norm());
  w.points.push_back({best->x, best->xstar + (spread + 1.0) * n});
  return w;
}

double min_coupling_against(const std::vector<GraphPair>& sample, const GraphPair& z) {
  double m = kInf;
  for (const auto& a : sample) m = std::min(m, coupling_difference(z, a));
  return m;
}

Vec lift_covector(const std::vector<GraphPair>& sample, const Vec& x, const Mat& basis, const Vec& s) {
  const Vec y0 = basis * (basis.transpose() * basis).ldlt().solve(s);
  if (sample.empty() || min_coupling_against(sample, {x, y0}) >= -tol()) return y0;
  const int d = static_cast<int>(x.size());
  std::vector<Halfspace> rows;
  for (int i = 0; i < basis.cols(); ++i) {
    rows.push_back({basis.col(i), s[i]});
    rows.push_back({-basis.col(i), -s[i]});
  }
  for (const auto& a : sample) {
    const Vec dx = x - a.x;
    if (dx.norm() <= tol() * scale_of(x)) continue;
    rows.push_back({-dx, -dx.dot(a.xstar)});
  }
  const Polyhedron lp = Polyhedron::from_h(d, std::move(rows));
  if (lp.is_empty()) return y0;
  return lp.vertices().front();
}

std::optional<Vec> preimage_covector(const Polyhedron& value, const Mat& basis, const Vec& s) {
  if (value.is_empty()) return std::nullopt;
  auto rows = value.rows();
  for (int i = 0; i < basis.cols(); ++i) {
    rows.push_back({basis.col(i), s[i]});
    rows.push_back({-basis.col(i), -s[i]});
  }
  const Polyhedron p = Polyhedron::from_h(value.dim(), std::move(rows));
  if (p.is_empty()) return std::nullopt;
  return p.vertices().front();
}

std::vector<Vec> domain_samples(const DomainSet& dom, const std::vector<Vec>& reps, const Vec& z0,
                                std::mt19937_64& rng, int n_random) {
  std::vector<Vec> pts;
  auto add = [&](const Vec& p) {
    if (dom.contains(p)) push_unique(pts, p);
  };
  add(z0);
  const Mat q = dom.sample ? Mat::Identity(z0.size(), z0.size()) : dom.hull.affine_directions();
  std::normal_distribution<double> g(0.0, 1.0);
  auto random_dir = [&]() {
    Vec u(q.cols());
    for (int i = 0; i < u.size(); ++i) u[i] = g(rng);
    Vec v = q * u;
    const double n = v.norm();
    return n > 0 ? Vec(v / n) : v;
  };
  double radius = 1.0;
  for (const auto& r : reps) {
    radius = std::max(radius, (r - z0).norm());
    add(r);
    add(0.5 * (r + z0));
    const Vec inward = z0 - r;
    const double len = inward.norm();
    if (len > 0) add(r + 1e-3 * inward / len);
    if (q.cols() > 0)
      for (int k = 0; k < 2; ++k) add(r + 1e-3 * random_dir());
  }
  if (q.cols() > 0)
    for (int k = 0; k < n_random; ++k) {
      std::uniform_real_distribution<double> u(0.0, radius);
      add(z0 + u(rng) * random_dir());
    }
  return pts;
}

}  // namespace monokit::detail
