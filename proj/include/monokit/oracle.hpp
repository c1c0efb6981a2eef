#pragma once

#include "monokit/fitzpatrick.hpp"
#include "monokit/operator1d.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace monokit {

/// Lattice lo + k * step in every one of the 2d coordinates of (x, x*).
struct GridSpec {
  double step = 0.1;
  double lo = -1.0;
  double hi = 1.0;

  std::size_t per_axis() const;
  std::size_t count(int dim) const;
  double coordinate(std::size_t k) const { return lo + static_cast<double>(k) * step; }
};

inline constexpr std::size_t kDefaultGridCap = 1000000;

/// Every grid point in R^d x R^d; throws TooLarge beyond the cap.
std::vector<GraphPair> grid_points(int dim, const GridSpec& grid, std::size_t cap = kDefaultGridCap);
/// The lattice points of the x-grid alone.
std::vector<Vec> grid_abscissae(int dim, const GridSpec& grid, std::size_t cap = kDefaultGridCap);

enum class GraphClass { InGraph, RelatedOutside, NotRelated };

using GraphMembership = std::function<bool(const GraphPair&)>;

/// z lies in the convexified finite graph: x* in conv{a* : a.x = x}.
bool in_convexified_graph(const std::vector<GraphPair>& graph, const GraphPair& z);

struct OracleReport {
  std::size_t in_graph = 0;
  std::size_t related_outside = 0;
  std::size_t not_related = 0;
  std::vector<GraphClass> classes;
  /// First grid points (in grid order) that are related but outside the graph.
  std::vector<GraphPair> witnesses;
  bool grid_maximal() const { return related_outside == 0; }
};

/// Classifies every grid point against the finite graph. `member` defaults to
/// the convexified graph. One-dimensional graphs use a sorted sweep.
OracleReport brute_force_oracle(const std::vector<GraphPair>& graph, const std::vector<GraphPair>& grid,
                                const GraphMembership& member = {}, std::size_t max_witnesses = 10);

/// Reference implementation without the sweep.
OracleReport brute_force_oracle_naive(const std::vector<GraphPair>& graph, const std::vector<GraphPair>& grid,
                                      const GraphMembership& member = {}, std::size_t max_witnesses = 10);

/// Lattice points (x, x*) with x* in op(x) for every x on the grid.
std::vector<GraphPair> discretize(const OperatorSpec& op, const GridSpec& grid, std::size_t cap = kDefaultGridCap);

/// Graph samples of a 1-D operator: t on a lattice of `step` inside [lo, hi],
/// interval values sampled at the same step and truncated to [lo, hi].
std::vector<GraphPair> sample_graph(const Operator1D& u, double step, double lo, double hi);

/// Grid oracle for any operator: finite graphs use their pairs with convexified
/// membership; structured operators are discretized at half the step on a
/// widened range, with exact membership of the queried point.
OracleReport operator_oracle(const OperatorSpec& op, const GridSpec& grid, std::size_t cap = kDefaultGridCap);

}  // namespace monokit
