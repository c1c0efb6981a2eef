#pragma once

#include "monokit/operators.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace monokit {

/// Duality product c(x, x*) = <x, x*>.
inline double coupling(const GraphPair& z) { return z.x.dot(z.xstar); }

/// c(z - a) = <x - a, x* - a*>.
inline double coupling_difference(const GraphPair& z, const GraphPair& a) {
  return (z.x - a.x).dot(z.xstar - a.xstar);
}

struct FitzValue {
  double phi = 0.0;
  double c = 0.0;
  std::size_t argmax = 0;
};

/// phi(z) = max over graph pairs a of <x, a*> + <a, x*> - <a, a*>; ties go to
/// the lowest index.
FitzValue fitzpatrick_value(const std::vector<GraphPair>& graph, const GraphPair& z);

struct MRVerdict {
  bool related = false;
  /// min over the graph of c(z - a).
  double min_product = 0.0;
  /// Index of a pair with c(z - a) < -tol when not related.
  std::optional<std::size_t> witness;
};

/// Monotone relation test; cross-checked against phi(z) <= c(z) + tol.
MRVerdict is_monotonically_related(const std::vector<GraphPair>& graph, const GraphPair& z);

struct NIReport {
  std::size_t checked = 0;
  /// Grid indices with phi(z) < c(z) - tol.
  std::vector<std::size_t> violations;
  bool falsified() const { return !violations.empty(); }
};

/// Samples phi >= c over the grid. An empty violation list only means the
/// property was not falsified on these points.
NIReport ni_sample(const std::vector<GraphPair>& graph, const std::vector<GraphPair>& grid);

}  // namespace monokit
