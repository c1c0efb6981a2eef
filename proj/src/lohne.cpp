#include "checker_support.hpp"

#include <algorithm>
#include <cmath>

namespace monokit {

using namespace detail;

namespace {

CheckReport failed(const char* tag, Witness w, const CheckReport& base) {
  CheckReport r = base;
  r.verdict = Verdict::NotMaximal;
  r.failed_condition = tag;
  r.witness = std::move(w);
  return r;
}

std::vector<Vec> neighbour_directions(const DomainSet& dom, const Vec& p, const Vec& z0, std::mt19937_64& rng) {
  const int d = static_cast<int>(p.size());
  const Mat q = dom.hull.affine_directions();
  std::vector<Vec> raw;
  for (int i = 0; i < d; ++i) {
    raw.push_back(Vec::Unit(d, i));
    raw.push_back(-Vec::Unit(d, i));
    for (int j = i + 1; j < d && d <= 4; ++j)
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) raw.push_back(si * Vec::Unit(d, i) + sj * Vec::Unit(d, j));
  }
  raw.push_back(z0 - p);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 4; ++k) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = g(rng);
    raw.push_back(v);
  }
  std::vector<Vec> out;
  for (const auto& v : raw) {
    const Vec w = q * (q.transpose() * v);
    if (w.norm() > 1e-9) out.push_back(w / w.norm());
  }
  return out;
}

// A limit value at p of values at nearby domain points that is missing from T(p).
std::optional<Vec> missing_limit_value(const OperatorSpec& op, const DomainSet& dom, const Vec& p, const Vec& z0,
                                       std::mt19937_64& rng) {
  const Polyhedron tp = dom.contains(p) ? evaluate(op, p) : Polyhedron::empty(op.dim());
  const double eps = 1e-6 * std::max(1.0, p.norm());
  for (const auto& u : neighbour_directions(dom, p, z0, rng)) {
    const Vec q = p + eps * u;
    if (!dom.contains(q)) continue;
    const Polyhedron tq = evaluate(op, q);
    if (tq.is_empty()) continue;
    if (tp.is_empty()) return tq.vertices().front();
    if (tp.contains(tq)) continue;
    for (const auto& v : tq.vertices())
      if (!tp.contains(v)) return v;
    const Vec& base = tq.vertices().front();
    for (const auto& r : tq.rays()) {
      if (tp.recedes(r)) continue;
      double lambda = 1.0;
      for (int k = 0; k < 80 && tp.contains(Vec(base + lambda * r)); ++k) lambda *= 2.0;
      return Vec(base + lambda * r);
    }
  }
  return std::nullopt;
}

Witness related_point(const Vec& x, const Vec& y) {
  Witness w;
  w.kind = Witness::Kind::RelatedPoint;
  w.points.push_back({x, y});
  return w;
}

}  // namespace

CheckReport check_lohne(const OperatorSpec& op, const SamplingPlan& plan) {
  if (contains_ball(op)) throw Error(Errc::UnsupportedVariant, "ball normal cones are not polyhedral");
  CheckReport r;
  const int d = op.dim();

  if (is_finite_graph(op)) {
    const auto graph = graph_pairs(op);
    if (graph.empty()) throw Error(Errc::EmptyGraph, "the graph is empty");
    if (auto w = monotonicity_violation(graph)) return failed("monotone", std::move(*w), r);
    std::vector<Vec> xs;
    for (const auto& p : graph) push_unique(xs, p.x);
    return failed(xs.size() >= 2 ? "near_convex" : "cone_condition", finite_domain_witness(graph, plan.seed), r);
  }

  const DomainSet dom = domain(op);
  if (dom.qualification_unverified) r.notes.push_back("sum domain qualification is unverified");
  if (dom.is_empty()) return failed("near_convex", related_point(Vec::Zero(d), Vec::Zero(d)), r);
  if (dom.sample) {
    const auto graph = sample_operator_graph(op, dom.sample_points);
    r.monotonicity_sampled = true;
    if (auto w = monotonicity_violation(graph)) return failed("monotone", std::move(*w), r);
    if (dom.sample_points.size() >= 2) return failed("near_convex", finite_domain_witness(graph, plan.seed), r);
    const Polyhedron hull = Polyhedron::point(dom.sample_points.front());
    if (auto w = cone_violation(op, hull, dom.sample_points.front())) return failed("cone_condition", std::move(*w), r);
    r.verdict = Verdict::MaximalOnSampledCertificates;
    return r;
  }

  std::mt19937_64 rng(plan.seed);
  Vec z0;
  try {
    z0 = relative_interior_point(dom).point;
  } catch (const Error&) {
    z0 = dom.hull.vertices().front();
  }
  const auto reps = face_representatives(dom, op);

  // (i) monotone graph.
  if (!structurally_monotone(op)) {
    r.monotonicity_sampled = true;
    const auto graph = sample_operator_graph(op, domain_samples(dom, reps, z0, rng, 24));
    if (auto w = monotonicity_violation(graph)) return failed("monotone", std::move(*w), r);
  }

  // (ii) nearly convex domain.
  if (!nearly_convex(dom).nearly_convex) {
    std::optional<Witness> w;
    for (const auto& h : dom.holes)
      if (auto y = missing_limit_value(op, dom, h, z0, rng)) {
        w = related_point(h, *y);
        break;
      }
    if (!w) {
      const Vec& x = dom.holes.empty() ? z0 : dom.holes.front();
      w = related_point(x, Vec::Zero(d));
      r.notes.push_back("related point of the near-convexity failure is unconfirmed");
    }
    return failed("near_convex", std::move(*w), r);
  }

  // (iii) closed convex values hold by representation.

  // (iv) cone condition.
  std::vector<Vec> cone_points = reps;
  const auto& verts = dom.hull.vertices();
  for (std::size_t i = 0; i < verts.size() && i < 12; ++i)
    for (std::size_t j = i + 1; j < verts.size() && j < 12; ++j) push_unique(cone_points, 0.5 * (verts[i] + verts[j]));
  for (const auto& x : cone_points) {
    if (!dom.contains(x)) continue;
    ++r.cone_points_checked;
    if (auto w = cone_violation(op, dom.hull, x)) return failed("cone_condition", std::move(*w), r);
  }

  // (v) closed graph.
  const bool closed_exact = structurally_closed(op);
  if (!closed_exact) {
    std::vector<Vec> probes = cone_points;
    for (const auto& p : probes)
      if (auto y = missing_limit_value(op, dom, p, z0, rng)) return failed("closed_graph", related_point(p, *y), r);
    r.notes.push_back("graph closedness checked at face representatives");
  }

  r.verdict = r.monotonicity_sampled || !closed_exact ? Verdict::MaximalOnSampledCertificates : Verdict::Maximal;
  return r;
}

HemiResult check_hemi(const OperatorSpec& op, const Vec& x, const Vec& v) {
  require_dim(x, op.dim(), "point");
  require_dim(v, op.dim(), "direction");
  if (v.norm() <= tol()) throw Error(Errc::ZeroDirection, "direction is zero");
  const DomainSet dom = domain(op);
  if (dom.sample || !dom.hull.contains(x)) throw Error(Errc::PointOutsideDomain, "point is outside the domain closure");
  const DomainSet cone = DomainSet::closed(tangent_cone(dom.hull, x));
  if (!cone.in_relative_interior(v))
    throw Error(Errc::DirectionNotTangent, "direction is not in the relative interior of the tangent cone");

  const Operator1D u = line_trace(op, x, v);
  HemiResult h;
  h.sup_side = u.value(0.0).sup();
  h.inf_side = kInf;
  for (const auto& p : u.pieces()) {
    if (p.range.empty) continue;
    if (p.kind == Operator1D::Piece::Kind::Branch && p.t_lo < 0.0 && p.t_hi > 0.0) {
      h.inf_side = u.branches()[p.index].at(0.0);
      break;
    }
    if (p.t_lo > 0.0 || (p.kind == Operator1D::Piece::Kind::Branch && p.t_lo >= 0.0)) {
      h.inf_side = p.kind == Operator1D::Piece::Kind::Branch ? u.branches()[p.index].at(p.t_lo) : p.range.lo;
      break;
    }
  }
  h.holds = h.inf_side <= h.sup_side + tol() * std::max(1.0, std::abs(h.sup_side));
  return h;
}

}  // namespace monokit
