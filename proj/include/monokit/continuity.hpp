#pragma once

#include "monokit/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace monokit {

/// Points x_1..x_n approaching a declared limit, with optional covectors x*_i in T(x_i).
struct SequenceSpec {
  std::vector<Vec> points;
  Vec limit;
  std::optional<std::vector<Vec>> covectors;

  /// Dimensions, progress toward the limit, and covector membership in op.
  void validate(const OperatorSpec& op) const;
};

struct SequenceOptions {
  /// Tail dispersion below which covectors count as converged.
  double tau_seq = 1e-6;
  /// Fraction of the sequence forming the final tail.
  double tail_fraction = 0.5;
  /// Norm bound beyond which a covector sequence counts as unbounded.
  double norm_bound = 1e6;
};

enum class SeqVerdict { Falsified, NotFalsified };
const char* seq_verdict_name(SeqVerdict v);

struct DemiclosednessResult {
  SeqVerdict verdict = SeqVerdict::NotFalsified;
  double max_norm = 0.0;
  double dispersion = 0.0;
  std::optional<GraphPair> witness;
};
DemiclosednessResult demiclosedness_test(const OperatorSpec& op, const SequenceSpec& seq, const Vec& limit_covector,
                                         const SequenceOptions& opts = {});

/// Neighbourhood core + radius * B of a value set.
struct Neighborhood {
  Polyhedron core;
  double radius = 0.0;
};

struct UscResult {
  SeqVerdict verdict = SeqVerdict::NotFalsified;
  std::optional<std::size_t> index;
  std::optional<Vec> covector;
  double distance = 0.0;
};
UscResult usc_test(const OperatorSpec& op, const Vec& x, const SequenceSpec& seq, const Neighborhood& v);

struct QResult {
  bool holds = false;
  bool nested = false;
  double radius = 0.0;
  std::size_t tail_start = 0;
  /// Largest distance from a final-tail hull generator to T(x).
  double excess = 0.0;
};
QResult q_property_test(const OperatorSpec& op, const Vec& x, const SequenceSpec& seq,
                        std::optional<double> truncation_radius = std::nullopt, double tolerance = 0.1,
                        const SequenceOptions& opts = {});

struct AprioriOptions {
  double tail_fraction = 0.5;
  double gamma_min = 1e-3;
  double gamma_cap = 1.0;
};
struct AprioriFit {
  double gamma = 0.0;
  double beta = 0.0;
  std::size_t i0 = 0;
  /// Largest distance of a normalized tail covector to the normal cone of the
  /// domain closure at the limit (heuristic diagnostic).
  double normal_cone_gap = 0.0;
};
std::optional<AprioriFit> apriori_estimate_fit(const OperatorSpec& op, const Vec& y_interior, const Vec& x0,
                                               const SequenceSpec& seq, const AprioriOptions& opts = {});

/// Largest covector norm over the ball y + r B, which must lie in int D(T).
double local_bound(const OperatorSpec& op, const Vec& y, double r);

/// <x - y, .> is unbounded above on T(x).
bool boundary_unbounded(const OperatorSpec& op, const Vec& x, const Vec& y);

}  // namespace monokit
