#include "checker_support.hpp"

#include <algorithm>
#include <cmath>

namespace monokit {

using namespace detail;

namespace {

CheckReport not_maximal(std::string tag, Witness w) {
  CheckReport r;
  r.verdict = Verdict::NotMaximal;
  r.failed_condition = std::move(tag);
  r.witness = std::move(w);
  return r;
}

// Check of an operator known only through finitely many abscissae.
CheckReport check_finite_domain(const std::vector<GraphPair>& graph, const SamplingPlan& plan,
                                bool exact_monotone) {
  if (graph.empty()) throw Error(Errc::EmptyInterior, "the graph is empty");
  if (auto w = monotonicity_violation(graph)) {
    CheckReport r = not_maximal("monotone", std::move(*w));
    r.monotonicity_sampled = !exact_monotone;
    return r;
  }
  std::vector<Vec> xs;
  for (const auto& p : graph) push_unique(xs, p.x);
  CheckReport r = not_maximal(xs.size() >= 2 ? "near_convex" : "cone_condition", finite_domain_witness(graph, plan.seed));
  r.monotonicity_sampled = !exact_monotone;
  return r;
}

void push_direction(std::vector<Vec>& dirs, const Mat& q, const Vec& v) {
  if (q.cols() == 0) return;
  Vec p = q * (q.transpose() * v);
  const double n = p.norm();
  if (n <= 1e-9 * std::max(1.0, v.norm())) return;
  p /= n;
  for (const auto& u : dirs)
    if (std::abs(u.dot(p)) >= 1.0 - 1e-9) return;
  dirs.push_back(p);
}

std::vector<Vec> line_directions(const DomainSet& dom, const std::vector<Vec>& reps, const Vec& z0,
                                 const SamplingPlan& plan, std::mt19937_64& rng) {
  const int d = static_cast<int>(z0.size());
  const Mat q = dom.hull.affine_directions();
  std::vector<Vec> dirs;
  if (plan.structural_directions) {
    for (int i = 0; i < d; ++i) push_direction(dirs, q, Vec::Unit(d, i));
    const auto implicit = dom.hull.implicit_rows();
    for (std::size_t i = 0; i < dom.hull.rows().size(); ++i)
      if (!implicit[i]) push_direction(dirs, q, dom.hull.rows()[i].normal);
    for (const auto& r : dom.hull.rays()) push_direction(dirs, q, r);
    for (const auto& p : reps) push_direction(dirs, q, p - z0);
    for (std::size_t i = 0; i < reps.size() && i < 12; ++i)
      for (std::size_t j = i + 1; j < reps.size() && j < 12; ++j) push_direction(dirs, q, reps[i] - reps[j]);
  }
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < plan.n_random_directions; ++k) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = g(rng);
    push_direction(dirs, q, v);
  }
  return dirs;
}

}  // namespace

std::vector<GraphPair> sample_operator_graph(const OperatorSpec& op, const std::vector<Vec>& points) {
  std::vector<GraphPair> out;
  for (const auto& x : points) {
    const Polyhedron v = evaluate(op, x);
    if (v.is_empty()) continue;
    for (const auto& y : v.vertices()) out.push_back({x, y});
    const Vec& base = v.vertices().front();
    for (const auto& r : v.rays()) {
      out.push_back({x, base + r});
      out.push_back({x, base + 10.0 * r});
    }
  }
  return out;
}

CheckReport check_line_reduction(const OperatorSpec& op, const SamplingPlan& plan) {
  if (contains_ball(op)) {
    CheckReport r;
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("ball normal cones have no polyhedral line traces");
    return r;
  }
  if (is_finite_graph(op)) return check_finite_domain(graph_pairs(op), plan, true);

  const int d = op.dim();
  const DomainSet dom = domain(op);
  if (dom.is_empty()) throw Error(Errc::EmptyInterior, "the domain is empty");
  if (dom.sample) return check_finite_domain(sample_operator_graph(op, dom.sample_points), plan, false);
  Vec z0;
  try {
    z0 = relative_interior_point(dom).point;
  } catch (const Error& e) {
    throw Error(Errc::EmptyInterior, e.what());
  }

  std::mt19937_64 rng(plan.seed);
  CheckReport r;
  if (dom.qualification_unverified) r.notes.push_back("sum domain qualification is unverified");
  const auto reps = face_representatives(dom, op);

  // Sampled monotonicity.
  if (!structurally_monotone(op)) {
    r.monotonicity_sampled = true;
    const auto graph = sample_operator_graph(op, domain_samples(dom, reps, z0, rng, 24));
    if (auto w = monotonicity_violation(graph)) {
      CheckReport f = not_maximal("monotone", std::move(*w));
      f.monotonicity_sampled = true;
      return f;
    }
  }

  // Cone condition at face representatives and midpoints of vertex pairs.
  std::optional<Witness> cone_failure;
  std::vector<Vec> cone_points = reps;
  const auto& verts = dom.hull.vertices();
  for (std::size_t i = 0; i < verts.size() && i < 12; ++i)
    for (std::size_t j = i + 1; j < verts.size() && j < 12; ++j) push_unique(cone_points, 0.5 * (verts[i] + verts[j]));
  for (const auto& x : cone_points) {
    if (!dom.contains(x)) continue;
    ++r.cone_points_checked;
    if (!cone_failure) cone_failure = cone_violation(op, dom.hull, x);
  }

  // Lines through the interior point and the face representatives.
  std::vector<Vec> bases{z0};
  for (const auto& p : reps)
    if (dom.contains(p)) push_unique(bases, p);
  const auto dirs = line_directions(dom, reps, z0, plan, rng);
  std::optional<CheckReport> line_failure;
  std::size_t index = 0;
  for (const auto& base : bases) {
    for (const auto& v : dirs) {
      if (r.lines_checked >= plan.max_lines) break;
      if (!line_section(dom.hull, base, v).meets_relative_interior()) continue;
      CheckReport one;
      try {
        one = check_1d(line_trace(op, base, v));
      } catch (const Error& e) {
        if (e.code() == Errc::NonMonotoneTrace || e.code() == Errc::EmptyInterior) {
          r.notes.push_back(std::string("line skipped: ") + e.what());
          continue;
        }
        throw;
      }
      ++r.lines_checked;
      const std::size_t i = index++;
      if (one.verdict == Verdict::Maximal) {
        ++r.lines_passed;
        continue;
      }
      if (line_failure) continue;
      CheckReport f;
      f.verdict = Verdict::NotMaximal;
      f.failed_condition = "line(" + std::to_string(i) + ")";
      f.detail = one.failed_condition;
      Witness w = *one.witness;
      const Mat basis = v;
      const auto sample = sample_operator_graph(op, domain_samples(dom, reps, z0, rng, 24));
      for (auto& p : w.points) {
        const Vec x = base + p.x[0] * v;
        Vec y;
        if (w.kind == Witness::Kind::MonotonicityViolation) {
          y = preimage_covector(evaluate(op, x), basis, p.xstar).value_or(Vec(p.xstar[0] * v));
        } else {
          y = lift_covector(sample, x, basis, p.xstar);
        }
        p = {x, y};
      }
      w.line_base = base;
      w.line_direction = v;
      f.witness = std::move(w);
      line_failure = std::move(f);
    }
  }

  if (cone_failure) {
    CheckReport f = not_maximal("cone_condition", std::move(*cone_failure));
    f.lines_checked = r.lines_checked;
    f.lines_passed = r.lines_passed;
    f.cone_points_checked = r.cone_points_checked;
    f.monotonicity_sampled = r.monotonicity_sampled;
    f.notes = r.notes;
    return f;
  }
  if (line_failure) {
    line_failure->lines_checked = r.lines_checked;
    line_failure->lines_passed = r.lines_passed;
    line_failure->cone_points_checked = r.cone_points_checked;
    line_failure->monotonicity_sampled = r.monotonicity_sampled;
    line_failure->notes = r.notes;
    return *line_failure;
  }
  r.verdict = d == 1 ? Verdict::Maximal : Verdict::MaximalOnSampledCertificates;
  return r;
}

CheckReport check_plane_reduction(const OperatorSpec& op, const SamplingPlan& plan) {
  const int d = op.dim();
  if (d < 2) throw Error(Errc::DimensionTooLow, "plane reduction needs dimension at least 2");
  if (contains_ball(op)) {
    CheckReport r;
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("ball normal cones have no polyhedral plane traces");
    return r;
  }

  std::vector<AffineSet> planes;
  std::vector<Vec> lift_points;
  if (d == 2) {
    planes.push_back({Vec::Zero(2), {Vec::Unit(2, 0), Vec::Unit(2, 1)}});
  } else {
    const DomainSet dom = domain(op);
    Vec z0;
    if (dom.sample) {
      if (dom.sample_points.empty()) throw Error(Errc::EmptyInterior, "the graph is empty");
      z0 = dom.sample_points.front();
    } else {
      try {
        z0 = relative_interior_point(dom).point;
      } catch (const Error& e) {
        throw Error(Errc::EmptyInterior, e.what());
      }
    }
    std::mt19937_64 rng(plan.seed);
    if (!dom.sample) lift_points = domain_samples(dom, face_representatives(dom, op), z0, rng, 24);
    std::vector<Vec> dirs;
    const Mat full = Mat::Identity(d, d);
    for (int i = 0; i < d; ++i) push_direction(dirs, full, Vec::Unit(d, i));
    std::normal_distribution<double> g(0.0, 1.0);
    for (int k = 0; k < plan.n_random_directions; ++k) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v[i] = g(rng);
      push_direction(dirs, full, v);
    }
    for (std::size_t i = 0; i < dirs.size() && planes.size() < 12; ++i)
      for (std::size_t j = i + 1; j < dirs.size() && planes.size() < 12; ++j) {
        Vec b = dirs[j] - dirs[j].dot(dirs[i]) * dirs[i];
        if (b.norm() <= 1e-6) continue;
        planes.push_back({z0, {dirs[i], Vec(b / b.norm())}});
      }
  }

  SamplingPlan sub = plan;
  sub.max_lines = std::max<std::size_t>(16, plan.max_lines / planes.size());
  CheckReport r;
  std::optional<CheckReport> failure;
  bool inconclusive = false;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const AffineSet& a = planes[i];
    CheckReport one;
    try {
      one = check_line_reduction(restrict_affine(op, a), sub);
    } catch (const Error& e) {
      if (e.code() != Errc::EmptyInterior) throw;
      r.notes.push_back("plane " + std::to_string(i) + " misses the domain");
      continue;
    }
    ++r.planes_checked;
    r.lines_checked += one.lines_checked;
    r.lines_passed += one.lines_passed;
    r.cone_points_checked += one.cone_points_checked;
    r.monotonicity_sampled = r.monotonicity_sampled || one.monotonicity_sampled;
    if (one.verdict == Verdict::Inconclusive) inconclusive = true;
    if (one.verdict != Verdict::NotMaximal) {
      ++r.planes_passed;
      continue;
    }
    if (failure) continue;
    CheckReport f;
    f.verdict = Verdict::NotMaximal;
    f.failed_condition = "plane(" + std::to_string(i) + ")";
    f.detail = one.detail ? *one.failed_condition + ": " + *one.detail : *one.failed_condition;
    Witness w = *one.witness;
    const Mat basis = a.basis();
    std::vector<Vec> xs = lift_points;
    for (const auto& p : w.points) xs.push_back(a.point_at(p.x));
    const auto sample = is_finite_graph(op) ? graph_pairs(op) : sample_operator_graph(op, xs);
    for (auto& p : w.points) {
      const Vec x = a.point_at(p.x);
      Vec y;
      if (w.kind == Witness::Kind::MonotonicityViolation)
        y = preimage_covector(evaluate(op, x), basis, p.xstar).value_or(lift_covector({}, x, basis, p.xstar));
      else
        y = lift_covector(sample, x, basis, p.xstar);
      p = {x, y};
    }
    if (w.line_base) w.line_base = a.point_at(*w.line_base);
    if (w.line_direction) w.line_direction = basis * *w.line_direction;
    f.witness = std::move(w);
    failure = std::move(f);
  }
  if (failure) {
    failure->planes_checked = r.planes_checked;
    failure->planes_passed = r.planes_passed;
    failure->lines_checked = r.lines_checked;
    failure->lines_passed = r.lines_passed;
    failure->cone_points_checked = r.cone_points_checked;
    failure->monotonicity_sampled = r.monotonicity_sampled;
    failure->notes = r.notes;
    return *failure;
  }
  if (r.planes_checked == 0) throw Error(Errc::EmptyInterior, "no plane meets the domain");
  r.verdict = inconclusive ? Verdict::Inconclusive : Verdict::MaximalOnSampledCertificates;
  return r;
}

}  // namespace monokit
