#include "monokit/operators.hpp"

#include <fmt/core.h>

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

void push_point_time(const Vec& p, const Vec& z, const Vec& v, std::vector<double>& out) {
  const double t = (p - z).dot(v) / v.squaredNorm();
  if ((z + t * v - p).norm() <= tol() * std::max(1.0, p.norm())) out.push_back(t);
}

void push_row_times(const std::vector<Halfspace>& rows, const Vec& z, const Vec& v, std::vector<double>& out) {
  for (const auto& row : rows) {
    const double a = row.normal.dot(v);
    if (std::abs(a) > tol()) out.push_back((row.offset - row.normal.dot(z)) / a);
  }
}

void collect_breaks(const OperatorSpec& op, const Vec& z, const Vec& v, std::vector<double>& out) {
  std::visit(overloaded{
                 [&](const FiniteGraph& g) {
                   for (const auto& p : g.pairs) push_point_time(p.x, z, v, out);
                 },
                 [&](const NormalCone& n) {
                   if (!n.set.is_empty()) push_row_times(n.set.rows(), z, v, out);
                 },
                 [&](const NormalConeBall&) {
                   throw Error(Errc::UnsupportedVariant, "ball normal cones have no piecewise-affine trace");
                 },
                 [&](const PLSubdifferential& f) {
                   for (std::size_t j = 0; j < f.pieces.size(); ++j)
                     for (std::size_t k = j + 1; k < f.pieces.size(); ++k) {
                       const Vec da = f.pieces[j].a - f.pieces[k].a;
                       const double c = da.dot(v);
                       if (std::abs(c) > tol()) out.push_back(-(da.dot(z) + f.pieces[j].b - f.pieces[k].b) / c);
                     }
                 },
                 [&](const Sum& s) {
                   collect_breaks(s.left, z, v, out);
                   collect_breaks(s.right, z, v, out);
                 },
                 [&](const Translate& t) { collect_breaks(t.inner, z + t.z, v, out); },
                 [&](const AffineRestriction& r) {
                   const Mat b = r.set.basis();
                   collect_breaks(r.inner, r.set.base + b * z, b * v, out);
                 },
                 [&](const DomainCut& c) {
                   collect_breaks(c.inner, z, v, out);
                   push_row_times(c.cuts, z, v, out);
                 },
                 [&](const PointPatch& p) {
                   collect_breaks(p.inner, z, v, out);
                   push_point_time(p.point, z, v, out);
                 },
             },
             op.node().v);
}

ExtInterval traced_value(const OperatorSpec& op, const Vec& z, const Vec& v, double t) {
  const Polyhedron value = evaluate(op, z + t * v);
  if (value.is_empty()) return ExtInterval::none();
  return project_interval(value, v);
}

bool narrow(const ExtInterval& iv) {
  return !iv.empty && std::isfinite(iv.lo) && std::isfinite(iv.hi) &&
         iv.hi - iv.lo <= 10 * tol() * std::max(1.0, std::abs(iv.lo));
}

Branch fit_branch(const OperatorSpec& op, const Vec& z, const Vec& v, double ta, double tb, double tc) {
  const ExtInterval a = traced_value(op, z, v, ta);
  const ExtInterval b = traced_value(op, z, v, tb);
  const ExtInterval c = traced_value(op, z, v, tc);
  if (a.empty && b.empty && c.empty) return Branch::none();
  for (const auto& [t, iv] : {std::pair{ta, a}, std::pair{tb, b}, std::pair{tc, c}})
    if (!narrow(iv))
      throw Error(Errc::NonMonotoneTrace,
                  fmt::format("value at t = {} is {} on an open interval", t, iv.empty ? "empty" : "not a singleton"));
  const double sa = 0.5 * (a.lo + a.hi), sb = 0.5 * (b.lo + b.hi), sc = 0.5 * (c.lo + c.hi);
  const double slope = (sb - sa) / (tb - ta);
  const double intercept = sa - slope * ta;
  const double pred = slope * tc + intercept;
  if (std::abs(pred - sc) > 1e3 * tol() * std::max(1.0, std::abs(sc)))
    throw Error(Errc::NonMonotoneTrace, fmt::format("trace is not affine between breakpoints near t = {}", tc));
  return Branch::affine(std::abs(slope) <= tol() ? 0.0 : slope, std::abs(intercept) <= tol() ? 0.0 : intercept);
}

}  // namespace

Operator1D line_trace(const OperatorSpec& op, const Vec& z, const Vec& v) {
  require_dim(z, op.dim(), "line base");
  require_dim(v, op.dim(), "line direction");
  if (v.norm() <= tol()) throw Error(Errc::ZeroDirection, "line direction is zero");

  std::vector<double> raw;
  collect_breaks(op, z, v, raw);
  std::sort(raw.begin(), raw.end());
  std::vector<double> ts;
  for (double t : raw)
    if (ts.empty() || t - ts.back() > tol() * std::max(1.0, std::abs(t))) ts.push_back(t);

  std::vector<Breakpoint> bps;
  for (double t : ts) bps.push_back({t, traced_value(op, z, v, t)});

  std::vector<Branch> branches;
  const std::size_t n = ts.size();
  for (std::size_t i = 0; i <= n; ++i) {
    if (n == 0) {
      branches.push_back(fit_branch(op, z, v, -1.0, 1.0, 2.5));
    } else if (i == 0) {
      branches.push_back(fit_branch(op, z, v, ts[0] - 2.0, ts[0] - 1.0, ts[0] - 3.5));
    } else if (i == n) {
      branches.push_back(fit_branch(op, z, v, ts[n - 1] + 1.0, ts[n - 1] + 2.0, ts[n - 1] + 3.5));
    } else {
      const double a = ts[i - 1], w = ts[i] - ts[i - 1];
      branches.push_back(fit_branch(op, z, v, a + w / 3.0, a + 2.0 * w / 3.0, a + 0.5 * w));
    }
  }

  // Drop breakpoints where nothing happens.
  std::vector<Breakpoint> kept_bps;
  std::vector<Branch> kept_branches{branches[0]};
  for (std::size_t i = 0; i < n; ++i) {
    const Branch& left = kept_branches.back();
    const Branch& right = branches[i + 1];
    const ExtInterval expect = left.empty ? ExtInterval::none() : ExtInterval::point(left.at(bps[i].t));
    const double slack = 1e3 * tol() * std::max(1.0, std::abs(expect.empty ? 0.0 : expect.lo));
    if (left.same(right, 1e3 * tol()) && bps[i].value.same(expect, slack)) continue;
    kept_bps.push_back(bps[i]);
    kept_branches.push_back(right);
  }
  return Operator1D(std::move(kept_bps), std::move(kept_branches));
}

}  // namespace monokit
