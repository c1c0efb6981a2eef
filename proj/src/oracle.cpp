#include "monokit/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace monokit {

namespace {

bool same_x(const Vec& a, const Vec& b) { return (a - b).norm() <= tol() * std::max(1.0, a.norm()); }

// Odometer over n^k lattice indices.
template <class F>
void for_each_index(int k, std::size_t n, F&& f) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  if (n == 0) return;
  while (true) {
    f(idx);
    int j = k - 1;
    while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == n) idx[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) return;
  }
}

std::size_t checked_power(std::size_t base, int exp, std::size_t cap) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) throw Error(Errc::TooLarge, "grid exceeds the point cap");
    out *= base;
  }
  if (out > cap) throw Error(Errc::TooLarge, "grid exceeds the point cap");
  return out;
}

GraphClass classify_naive(const std::vector<GraphPair>& graph, const GraphPair& z, bool member) {
  if (member) return GraphClass::InGraph;
  for (const auto& a : graph)
    if (coupling_difference(z, a) < -tol()) return GraphClass::NotRelated;
  return GraphClass::RelatedOutside;
}

void record(OracleReport& r, GraphClass c, const GraphPair& z, std::size_t max_witnesses) {
  r.classes.push_back(c);
  switch (c) {
    case GraphClass::InGraph: ++r.in_graph; break;
    case GraphClass::NotRelated: ++r.not_related; break;
    case GraphClass::RelatedOutside:
      ++r.related_outside;
      if (r.witnesses.size() < max_witnesses) r.witnesses.push_back(z);
      break;
  }
}

}  // namespace

std::size_t GridSpec::per_axis() const {
  if (!(step > 0.0) || !(hi >= lo)) throw Error(Errc::InvalidArgument, "grid needs step > 0 and hi >= lo");
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

std::size_t GridSpec::count(int dim) const { return checked_power(per_axis(), 2 * dim, static_cast<std::size_t>(-1)); }

std::vector<GraphPair> grid_points(int dim, const GridSpec& grid, std::size_t cap) {
  const std::size_t n = grid.per_axis();
  checked_power(n, 2 * dim, cap);
  std::vector<GraphPair> out;
  for_each_index(2 * dim, n, [&](const std::vector<std::size_t>& idx) {
    GraphPair z{Vec(dim), Vec(dim)};
    for (int i = 0; i < dim; ++i) {
      z.x[i] = grid.coordinate(idx[static_cast<std::size_t>(i)]);
      z.xstar[i] = grid.coordinate(idx[static_cast<std::size_t>(dim + i)]);
    }
    out.push_back(std::move(z));
  });
  return out;
}

std::vector<Vec> grid_abscissae(int dim, const GridSpec& grid, std::size_t cap) {
  const std::size_t n = grid.per_axis();
  checked_power(n, dim, cap);
  std::vector<Vec> out;
  for_each_index(dim, n, [&](const std::vector<std::size_t>& idx) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = grid.coordinate(idx[static_cast<std::size_t>(i)]);
    out.push_back(std::move(x));
  });
  return out;
}

bool in_convexified_graph(const std::vector<GraphPair>& graph, const GraphPair& z) {
  std::vector<Vec> values;
  for (const auto& a : graph)
    if (same_x(a.x, z.x)) values.push_back(a.xstar);
  if (values.empty()) return false;
  for (const auto& v : values)
    if ((v - z.xstar).norm() <= tol() * std::max(1.0, v.norm())) return true;
  if (values.size() == 1) return false;
  const int d = static_cast<int>(z.x.size());
  return Polyhedron::from_generators(d, values, {}).contains(z.xstar);
}

OracleReport brute_force_oracle_naive(const std::vector<GraphPair>& graph, const std::vector<GraphPair>& grid,
                                      const GraphMembership& member, std::size_t max_witnesses) {
  OracleReport r;
  for (const auto& z : grid) {
    const bool in = member ? member(z) : in_convexified_graph(graph, z);
    record(r, classify_naive(graph, z, in), z, max_witnesses);
  }
  return r;
}

OracleReport brute_force_oracle(const std::vector<GraphPair>& graph, const std::vector<GraphPair>& grid,
                                const GraphMembership& member, std::size_t max_witnesses) {
  const bool one_dim = !graph.empty() && graph.front().x.size() == 1;
  if (!one_dim) return brute_force_oracle_naive(graph, grid, member, max_witnesses);

  // Prefix maxima and suffix minima of the values over the sorted abscissae.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(graph.size());
  for (const auto& a : graph) pts.emplace_back(a.x[0], a.xstar[0]);
  std::sort(pts.begin(), pts.end());
  const std::size_t n = pts.size();
  std::vector<double> prefix_max(n), suffix_min(n);
  for (std::size_t i = 0; i < n; ++i) prefix_max[i] = std::max(i ? prefix_max[i - 1] : -kInf, pts[i].second);
  for (std::size_t i = n; i-- > 0;) suffix_min[i] = std::min(i + 1 < n ? suffix_min[i + 1] : kInf, pts[i].second);

  // Sorted values per distinct abscissa for the default membership test.
  OracleReport r;
  const double eps = tol();
  for (const auto& z : grid) {
    const double t = z.x[0], s = z.xstar[0];
    const double scale = eps * std::max(1.0, std::abs(t));
    auto first_ge = std::lower_bound(pts.begin(), pts.end(), std::pair{t - scale, -kInf});
    auto first_gt = std::upper_bound(pts.begin(), pts.end(), std::pair{t + scale, kInf});
    const std::size_t lo = static_cast<std::size_t>(first_ge - pts.begin());
    const std::size_t hi = static_cast<std::size_t>(first_gt - pts.begin());
    bool in;
    if (member) {
      in = member(z);
    } else {
      double vmin = kInf, vmax = -kInf;
      for (std::size_t i = lo; i < hi; ++i) vmin = std::min(vmin, pts[i].second), vmax = std::max(vmax, pts[i].second);
      in = lo < hi && s >= vmin - eps && s <= vmax + eps;
    }
    GraphClass c = GraphClass::InGraph;
    if (!in) {
      const double left = lo > 0 ? prefix_max[lo - 1] : -kInf;
      const double right = hi < n ? suffix_min[hi] : kInf;
      c = (s >= left - eps && s <= right + eps) ? GraphClass::RelatedOutside : GraphClass::NotRelated;
    }
    record(r, c, z, max_witnesses);
  }
  return r;
}

std::vector<GraphPair> discretize(const OperatorSpec& op, const GridSpec& grid, std::size_t cap) {
  const int d = op.dim();
  const std::size_t n = grid.per_axis();
  checked_power(n, 2 * d, cap);
  std::vector<Vec> stars;
  for_each_index(d, n, [&](const std::vector<std::size_t>& idx) {
    Vec s(d);
    for (int i = 0; i < d; ++i) s[i] = grid.coordinate(idx[static_cast<std::size_t>(i)]);
    stars.push_back(std::move(s));
  });
  std::vector<GraphPair> out;
  for (const auto& x : grid_abscissae(d, grid, cap)) {
    const Polyhedron value = evaluate(op, x);
    if (value.is_empty()) continue;
    for (const auto& s : stars)
      if (value.contains(s, 1e-9 * std::max(1.0, s.norm()))) out.push_back({x, s});
  }
  return out;
}

std::vector<GraphPair> sample_graph(const Operator1D& u, double step, double lo, double hi) {
  if (!(step > 0.0)) throw Error(Errc::InvalidArgument, "sampling step must be positive");
  std::vector<double> ts;
  for (long k = static_cast<long>(std::ceil(lo / step - 1e-9)); static_cast<double>(k) * step <= hi + 1e-12; ++k)
    ts.push_back(static_cast<double>(k) * step);
  for (const auto& bp : u.breakpoints())
    if (bp.t >= lo && bp.t <= hi) ts.push_back(bp.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12; }), ts.end());

  std::vector<GraphPair> out;
  auto push = [&out](double t, double s) { out.push_back({make_vec({t}), make_vec({s})}); };
  for (double t : ts) {
    const ExtInterval v = u.value(t);
    if (v.empty) continue;
    const double a = std::max(v.lo, lo), b = std::min(v.hi, hi);
    if (a > b) continue;
    if (std::isfinite(v.lo) && v.lo >= lo) push(t, v.lo);
    for (long j = static_cast<long>(std::ceil(a / step - 1e-9)); static_cast<double>(j) * step <= b + 1e-12; ++j) {
      const double s = static_cast<double>(j) * step;
      if (s > a + 1e-12 && s < b - 1e-12) push(t, s);
    }
    if (std::isfinite(v.hi) && v.hi <= hi && v.hi > v.lo) push(t, v.hi);
    if (!std::isfinite(v.lo) || v.lo < lo) push(t, a);
    if ((!std::isfinite(v.hi) || v.hi > hi) && b > a) push(t, b);
  }
  return out;
}

OracleReport operator_oracle(const OperatorSpec& op, const GridSpec& grid, std::size_t cap) {
  if (!(grid.step > 0) || !(grid.lo <= grid.hi))
    throw Error(Errc::InvalidArgument, "expected a positive grid step and lo <= hi");
  const auto points = grid_points(op.dim(), grid, cap);
  if (is_finite_graph(op)) return brute_force_oracle(graph_pairs(op), points);
  const double pad = 0.5 * (grid.hi - grid.lo);
  const auto graph = discretize(op, GridSpec{0.5 * grid.step, grid.lo - pad, grid.hi + pad}, cap);
  const GraphMembership member = [&op](const GraphPair& z) {
    const Polyhedron v = evaluate(op, z.x);
    return !v.is_empty() && v.contains(z.xstar);
  };
  return brute_force_oracle(graph, points, member);
}

}  // namespace monokit
