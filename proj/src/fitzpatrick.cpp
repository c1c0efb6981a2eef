#include "monokit/fitzpatrick.hpp"

#include <cmath>
#include <stdexcept>

namespace monokit {

FitzValue fitzpatrick_value(const std::vector<GraphPair>& graph, const GraphPair& z) {
  if (graph.empty()) throw Error(Errc::EmptyGraph, "Fitzpatrick function of an empty graph");
  FitzValue out;
  out.c = coupling(z);
  out.phi = -kInf;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto& a = graph[i];
    require_dim(a.x, static_cast<int>(z.x.size()), "graph point");
    const double value = z.x.dot(a.xstar) + a.x.dot(z.xstar) - a.x.dot(a.xstar);
    if (value > out.phi) {
      out.phi = value;
      out.argmax = i;
    }
  }
  return out;
}

MRVerdict is_monotonically_related(const std::vector<GraphPair>& graph, const GraphPair& z) {
  if (graph.empty()) throw Error(Errc::EmptyGraph, "monotone relation to an empty graph");
  MRVerdict out;
  out.min_product = kInf;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const double p = coupling_difference(z, graph[i]);
    if (p < out.min_product) {
      out.min_product = p;
      arg = i;
    }
  }
  out.related = out.min_product >= -tol();
  if (!out.related) out.witness = arg;
  const FitzValue f = fitzpatrick_value(graph, z);
  const bool by_phi = f.phi <= f.c + tol();
  // Both sides are the same max/min; a mismatch can only come from rounding
  // right at the threshold.
  if (by_phi != out.related && std::abs(f.phi - f.c + out.min_product) > 1e-12 * std::max(1.0, std::abs(f.c)))
    throw std::logic_error("Fitzpatrick and pairwise monotone-relation tests disagree");
  return out;
}

NIReport ni_sample(const std::vector<GraphPair>& graph, const std::vector<GraphPair>& grid) {
  NIReport out;
  if (graph.empty()) return out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FitzValue f = fitzpatrick_value(graph, grid[i]);
    ++out.checked;
    if (f.phi < f.c - tol()) out.violations.push_back(i);
  }
  return out;
}

}  // namespace monokit
