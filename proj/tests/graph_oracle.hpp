#pragma once

#include "monokit/operators.hpp"

#include <algorithm>
#include <vector>

namespace testsupport {

using monokit::GraphPair;
using monokit::OperatorSpec;
using monokit::Polyhedron;
using monokit::Vec;

/// Dense sample of a graph: values on a lattice, with cone values truncated
/// at several lengths along each ray and along sums of ray pairs.
inline std::vector<GraphPair> dense_graph(const OperatorSpec& op, double lo, double hi, double step) {
  const int d = op.dim();
  const int n = static_cast<int>(std::llround((hi - lo) / step)) + 1;
  std::vector<GraphPair> out;
  std::vector<int> idx(d, 0);
  const double lengths[] = {0.25, 1.0, 4.0, 16.0};
  while (true) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = lo + step * idx[i];
    const Polyhedron v = monokit::evaluate(op, x);
    if (!v.is_empty()) {
      for (const auto& y : v.vertices()) out.push_back({x, y});
      const Vec& b = v.vertices().front();
      const auto& rays = v.rays();
      for (std::size_t i = 0; i < rays.size(); ++i) {
        for (double l : lengths) out.push_back({x, b + l * rays[i]});
        for (std::size_t j = i + 1; j < rays.size(); ++j)
          for (double l : lengths) out.push_back({x, b + l * (rays[i] + rays[j])});
      }
    }
    int k = 0;
    while (k < d && ++idx[k] == n) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

inline double min_product(const std::vector<GraphPair>& graph, const GraphPair& z) {
  double m = 1e300;
  for (const auto& a : graph) m = std::min(m, (z.x - a.x).dot(z.xstar - a.xstar));
  return m;
}

inline bool in_graph(const OperatorSpec& op, const GraphPair& z) {
  const Polyhedron v = monokit::evaluate(op, z.x);
  return !v.is_empty() && v.contains(z.xstar, 1e-7);
}

}  // namespace testsupport
