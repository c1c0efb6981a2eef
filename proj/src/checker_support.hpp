#pragma once

#include "monokit/maximality.hpp"

#include <optional>
#include <random>
#include <vector>

namespace monokit::detail {

bool same_point(const Vec& a, const Vec& b);
void push_unique(std::vector<Vec>& pts, const Vec& p);

/// The description guarantees a monotone graph (no patches, no finite samples).
bool structurally_monotone(const OperatorSpec& op);
/// The description guarantees a closed graph (no cuts, no patches).
bool structurally_closed(const OperatorSpec& op);

/// A pair of sampled graph points violating monotonicity.
std::optional<Witness> monotonicity_violation(const std::vector<GraphPair>& graph);

/// Hull vertices, one relative interior point per facet of the hull, and the
/// structural points of the operator that lie in the closed hull.
std::vector<Vec> face_representatives(const DomainSet& dom, const OperatorSpec& op);

/// Cone condition N_{cl D}(x) within recession(Tx); witness (x, x* + lambda n).
std::optional<Witness> cone_violation(const OperatorSpec& op, const Polyhedron& hull, const Vec& x);

/// Related point outside a finite-domain graph: an LP at a midpoint of two
/// domain points, or an outward normal extension at an exposed point.
Witness finite_domain_witness(const std::vector<GraphPair>& graph, std::uint64_t seed);

/// Covector y with V^T y = s that is related to every sampled pair when
/// possible; the plain least-norm lift otherwise.
Vec lift_covector(const std::vector<GraphPair>& sample, const Vec& x, const Mat& basis, const Vec& s);

/// A covector y in value with V^T y = s (nullopt when none exists).
std::optional<Vec> preimage_covector(const Polyhedron& value, const Mat& basis, const Vec& s);

/// Seeded sample points of the domain (relative interior point, face
/// representatives, midpoints, random points).
std::vector<Vec> domain_samples(const DomainSet& dom, const std::vector<Vec>& reps, const Vec& z0,
                                std::mt19937_64& rng, int n_random);

double min_coupling_against(const std::vector<GraphPair>& sample, const GraphPair& z);

}  // namespace monokit::detail
