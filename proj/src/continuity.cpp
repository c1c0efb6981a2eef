#include "monokit/continuity.hpp"

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

double scaled_tol(const Vec& v) { return tol() * std::max(1.0, v.norm()); }

const NormalConeBall* as_ball(const OperatorSpec& op) { return std::get_if<NormalConeBall>(&op.node().v); }

std::size_t tail_start(std::size_t n, double fraction) {
  const auto len = static_cast<std::size_t>(std::ceil(std::clamp(fraction, 0.0, 1.0) * static_cast<double>(n)));
  return n - std::max<std::size_t>(1, std::min(len, n));
}

const std::vector<Vec>& require_covectors(const SequenceSpec& seq) {
  if (!seq.covectors) throw Error(Errc::InvalidSequence, "the sequence has no covectors");
  return *seq.covectors;
}

// Smallest distance from y to the relative boundary of the domain (negative
// when y is not an interior point).
double interior_margin(const OperatorSpec& op, const Vec& y) {
  if (const auto* b = as_ball(op)) return b->radius - (y - b->center).norm();
  const DomainSet dom = domain(op);
  if (dom.sample || dom.hull.is_empty() || dom.hull.affine_dim() < op.dim())
    throw Error(Errc::EmptyInterior, "the domain has empty interior");
  double m = kInf;
  for (const auto& row : dom.hull.rows()) m = std::min(m, row.offset - row.normal.dot(y));
  for (const auto& h : dom.holes) m = std::min(m, (h - y).norm());
  return m;
}

void require_interior_ball(const OperatorSpec& op, const Vec& y, double r, Errc code) {
  require_dim(y, op.dim(), "point");
  if (!(interior_margin(op, y) > r + tol())) throw Error(code, "the ball is not inside the interior of the domain");
}

// Generators of a value set with rays truncated at length radius.
std::vector<Vec> truncated_generators(const Polyhedron& p, double radius) {
  std::vector<Vec> out;
  if (p.is_empty()) return out;
  out = p.vertices();
  for (const auto& r : p.rays()) out.push_back(p.vertices().front() + radius * r);
  return out;
}

double value_bound(const OperatorSpec& op, const Vec& y, double r) {
  return std::visit(
      overloaded{
          [](const NormalCone&) { return 0.0; },
          [](const NormalConeBall&) { return 0.0; },
          [](const FiniteGraph&) -> double { throw Error(Errc::BallNotInterior, "finite graphs have no interior"); },
          [&](const PLSubdifferential& f) {
            const int d = op.dim();
            double m = 0.0;
            for (std::size_t j = 0; j < f.pieces.size(); ++j) {
              std::vector<Halfspace> rows;
              bool dead = false;
              for (std::size_t k = 0; k < f.pieces.size(); ++k) {
                if (k == j) continue;
                const Vec n = f.pieces[k].a - f.pieces[j].a;
                const double off = f.pieces[j].b - f.pieces[k].b;
                if (n.norm() <= tol()) {
                  if (off < -tol()) dead = true;
                  continue;
                }
                rows.push_back({n, off});
              }
              if (dead) continue;
              const Polyhedron cell = rows.empty() ? Polyhedron::whole(d) : Polyhedron::from_h(d, rows);
              if (cell.is_empty()) continue;
              if (distance(cell, y) <= r + tol()) m = std::max(m, f.pieces[j].a.norm());
            }
            return m;
          },
          [&](const Sum& s) { return value_bound(s.left, y, r) + value_bound(s.right, y, r); },
          [&](const Translate& t) { return value_bound(t.inner, Vec(y + t.z), r); },
          [](const AffineRestriction&) -> double {
            throw Error(Errc::UnsupportedVariant, "local bounds of affine restrictions are not supported");
          },
          [&](const DomainCut& c) { return value_bound(c.inner, y, r); },
          [&](const PointPatch& p) {
            double m = value_bound(p.inner, y, r);
            if ((p.point - y).norm() <= r + tol() && p.value && !p.value->is_empty()) {
              if (!p.value->rays().empty()) return kInf;
              for (const auto& v : p.value->vertices()) m = std::max(m, v.norm());
            }
            return m;
          },
      },
      op.node().v);
}

// Normal cone of the domain closure at x (ball handled directly).
Polyhedron domain_normal_cone(const OperatorSpec& op, const Vec& x) {
  if (const auto* b = as_ball(op)) {
    const Vec u = x - b->center;
    if (std::abs(u.norm() - b->radius) <= scaled_tol(u)) return Polyhedron::cone(op.dim(), {u});
    return Polyhedron::point(Vec::Zero(op.dim()));
  }
  const DomainSet dom = domain(op);
  const Polyhedron hull =
      dom.sample ? Polyhedron::from_generators(op.dim(), dom.sample_points, {}) : dom.hull;
  return normal_cone(hull, x);
}

}  // namespace

const char* seq_verdict_name(SeqVerdict v) { return v == SeqVerdict::Falsified ? "Falsified" : "NotFalsified"; }

void SequenceSpec::validate(const OperatorSpec& op) const {
  const int d = op.dim();
  if (points.empty()) throw Error(Errc::InvalidSequence, "the sequence is empty");
  require_dim(limit, d, "sequence limit");
  for (const auto& p : points) require_dim(p, d, "sequence point");
  const double first = (points.front() - limit).norm(), last = (points.back() - limit).norm();
  const bool at_limit = std::all_of(points.begin(), points.end(),
                                    [&](const Vec& p) { return (p - limit).norm() <= scaled_tol(limit); });
  if (!at_limit && !(last < first)) throw Error(Errc::InvalidSequence, "the sequence makes no progress toward its limit");
  if (!covectors) return;
  if (covectors->size() != points.size()) throw Error(Errc::InvalidSequence, "covectors are not aligned with points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_dim((*covectors)[i], d, "sequence covector");
    const Polyhedron v = evaluate(op, points[i]);
    if (v.is_empty() || !v.contains((*covectors)[i], scaled_tol((*covectors)[i])))
      throw Error(Errc::InvalidSequence, "covector " + std::to_string(i) + " is not in the value");
  }
}

DemiclosednessResult demiclosedness_test(const OperatorSpec& op, const SequenceSpec& seq, const Vec& limit_covector,
                                         const SequenceOptions& opts) {
  seq.validate(op);
  const auto& cov = require_covectors(seq);
  require_dim(limit_covector, op.dim(), "limit covector");
  DemiclosednessResult r;
  std::vector<double> norms;
  for (const auto& c : cov) {
    norms.push_back(c.norm());
    r.max_norm = std::max(r.max_norm, norms.back());
  }
  const std::size_t s = tail_start(cov.size(), opts.tail_fraction);
  bool growing = cov.size() - s >= 3;
  for (std::size_t i = s + 1; i < norms.size() && growing; ++i)
    if (!(norms[i] > norms[i - 1])) growing = false;
  if (growing) {
    const double first_step = norms[s + 1] - norms[s], last_step = norms.back() - norms[norms.size() - 2];
    growing = last_step >= 0.5 * first_step && norms.back() >= 1.5 * std::max(norms[s], 1.0);
  }
  if (r.max_norm > opts.norm_bound || growing)
    throw Error(Errc::UnboundedSequence, "the covector sequence is unbounded");

  for (std::size_t i = s; i < cov.size(); ++i) r.dispersion = std::max(r.dispersion, (cov[i] - limit_covector).norm());
  if (r.dispersion < opts.tau_seq) {
    const Polyhedron v = evaluate(op, seq.limit);
    if (v.is_empty() || !v.contains(limit_covector, scaled_tol(limit_covector))) {
      r.verdict = SeqVerdict::Falsified;
      r.witness = GraphPair{seq.limit, limit_covector};
    }
  }
  return r;
}

UscResult usc_test(const OperatorSpec& op, const Vec& x, const SequenceSpec& seq, const Neighborhood& v) {
  require_dim(x, op.dim(), "point");
  if (evaluate(op, x).is_empty() && !as_ball(op))
    if (!domain(op).hull.contains(x)) throw Error(Errc::PointOutsideDomain, "point is outside the domain closure");
  UscResult r;
  auto report = [&](std::size_t i, const Vec& y, double dist) {
    r.verdict = SeqVerdict::Falsified;
    r.index = i;
    r.covector = y;
    r.distance = dist;
  };
  const double limit = v.radius + tol();
  const NormalConeBall* ball = as_ball(op);
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    const Vec& xi = seq.points[i];
    if (ball) {
      const Vec u = (x - ball->center) / ball->radius;
      const Vec w = (xi - ball->center) / ball->radius;
      if (std::abs(u.norm() - 1.0) <= tol() && std::abs(w.norm() - 1.0) <= tol()) {
        // Ray point t w with dist(t w, R+ u) = t sqrt(1 - <u, w>^2) = 1.
        const double c = std::clamp(u.dot(w) / (u.norm() * w.norm()), -1.0, 1.0);
        if (1.0 - c * c <= 0.0) continue;
        const Vec y = w / (w.norm() * std::sqrt(1.0 - c * c));
        const double dist = distance(v.core, y);
        if (dist > limit) {
          report(i, y, dist);
          return r;
        }
        continue;
      }
    }
    const Polyhedron val = evaluate(op, xi);
    if (val.is_empty()) continue;
    for (const auto& p : val.vertices()) {
      const double dist = distance(v.core, p);
      if (dist > limit) {
        report(i, p, dist);
        return r;
      }
    }
    for (const auto& ray : val.rays()) {
      if (v.core.recedes(ray)) continue;
      double lambda = 1.0;
      for (int k = 0; k < 64; ++k, lambda *= 2.0) {
        const Vec y = val.vertices().front() + lambda * ray;
        const double dist = distance(v.core, y);
        if (dist > limit) {
          report(i, y, dist);
          return r;
        }
      }
    }
  }
  return r;
}

QResult q_property_test(const OperatorSpec& op, const Vec& x, const SequenceSpec& seq,
                        std::optional<double> truncation_radius, double tolerance, const SequenceOptions& opts) {
  seq.validate(op);
  require_dim(x, op.dim(), "point");
  const int d = op.dim();
  const Polyhedron tx = evaluate(op, x);
  std::vector<Polyhedron> values;
  double vmax = 0.0;
  for (const auto& p : seq.points) {
    values.push_back(evaluate(op, p));
    if (!values.back().is_empty())
      for (const auto& v : values.back().vertices()) vmax = std::max(vmax, v.norm());
  }
  if (!tx.is_empty())
    for (const auto& v : tx.vertices()) vmax = std::max(vmax, v.norm());

  QResult q;
  q.radius = truncation_radius ? *truncation_radius : std::max(1.0, 10.0 * vmax);
  q.tail_start = tail_start(seq.points.size(), opts.tail_fraction);
  std::vector<std::vector<Vec>> gens;
  for (const auto& v : values) gens.push_back(truncated_generators(v, q.radius));

  // Final-tail hull inside T(x) + tolerance B; checking generators suffices by convexity.
  for (std::size_t j = q.tail_start; j < gens.size(); ++j)
    for (const auto& g : gens[j]) q.excess = std::max(q.excess, tx.is_empty() ? kInf : distance(tx, g));
  q.holds = q.excess <= tolerance;

  // Tail hulls are non-increasing.
  q.nested = true;
  std::vector<Vec> tail;
  std::optional<Polyhedron> inner;
  for (std::size_t i = gens.size(); i-- > 0;) {
    tail.insert(tail.end(), gens[i].begin(), gens[i].end());
    if (tail.empty()) continue;
    const Polyhedron hull = Polyhedron::from_generators(d, tail, {});
    if (inner) {
      for (const auto& g : inner->vertices())
        if (!hull.contains(g, 1e-7 * std::max(1.0, g.norm()))) q.nested = false;
    }
    inner = hull;
  }
  return q;
}

std::optional<AprioriFit> apriori_estimate_fit(const OperatorSpec& op, const Vec& y_interior, const Vec& x0,
                                               const SequenceSpec& seq, const AprioriOptions& opts) {
  seq.validate(op);
  const auto& cov = require_covectors(seq);
  require_dim(x0, op.dim(), "limit");
  const double margin = interior_margin(op, y_interior);
  if (!(margin > tol())) throw Error(Errc::EmptyInterior, "the reference point is not interior to the domain");

  // Covectors must be monotonically related to the values on a ball around y.
  const double rho = std::isfinite(margin) ? 0.5 * margin : 1.0;
  std::vector<GraphPair> ball;
  for (int k = 0; k < op.dim(); ++k)
    for (double s : {rho, -rho}) {
      const Vec p = y_interior + s * Vec::Unit(op.dim(), k);
      const Polyhedron v = evaluate(op, p);
      if (!v.is_empty())
        for (const auto& w : v.vertices()) ball.push_back({p, w});
    }
  for (std::size_t i = 0; i < cov.size(); ++i)
    for (const auto& a : ball)
      if ((seq.points[i] - a.x).dot(cov[i] - a.xstar) < -scaled_tol(cov[i]))
        throw Error(Errc::InvalidSequence, "covector " + std::to_string(i) + " violates monotonicity near the interior point");

  AprioriFit fit;
  fit.i0 = tail_start(cov.size(), opts.tail_fraction);
  const Vec dir = x0 - y_interior;
  double amin = kInf;
  for (std::size_t i = fit.i0; i < cov.size(); ++i) amin = std::min(amin, dir.dot(cov[i]));
  fit.beta = std::min(0.0, amin);
  fit.gamma = opts.gamma_cap;
  for (std::size_t i = fit.i0; i < cov.size(); ++i) {
    const double n = cov[i].norm();
    if (n > tol()) fit.gamma = std::min(fit.gamma, (dir.dot(cov[i]) - fit.beta) / n);
  }
  if (fit.gamma < opts.gamma_min) return std::nullopt;

  const Polyhedron ncone = domain_normal_cone(op, x0);
  for (std::size_t i = fit.i0; i < cov.size(); ++i) {
    const double n = cov[i].norm();
    if (n > tol()) fit.normal_cone_gap = std::max(fit.normal_cone_gap, distance(ncone, Vec(cov[i] / n)));
  }
  return fit;
}

double local_bound(const OperatorSpec& op, const Vec& y, double r) {
  if (!(r >= 0.0)) throw Error(Errc::InvalidArgument, "radius must be non-negative");
  require_interior_ball(op, y, r, Errc::BallNotInterior);
  return value_bound(op, y, r);
}

bool boundary_unbounded(const OperatorSpec& op, const Vec& x, const Vec& y) {
  require_dim(x, op.dim(), "point");
  const Polyhedron tx = evaluate(op, x);
  if (tx.is_empty()) throw Error(Errc::PointOutsideDomain, "point is outside the domain");
  require_interior_ball(op, y, 0.0, Errc::EmptyInterior);
  const Vec dir = x - y;
  for (const auto& r : tx.rays())
    if (dir.dot(r) > tol()) return true;
  return false;
}

}  // namespace monokit
