#pragma once

#include "monokit/fitzpatrick.hpp"
#include "monokit/operators.hpp"
#include "monokit/oracle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace monokit {

enum class Verdict { Maximal, NotMaximal, MaximalOnSampledCertificates, Inconclusive };
const char* verdict_name(Verdict v);

struct Witness {
  enum class Kind {
    /// points[0] is related to the whole graph but not in it.
    RelatedPoint,
    /// points[0], points[1] are graph pairs with c(a - b) < 0.
    MonotonicityViolation,
  } kind = Kind::RelatedPoint;
  std::vector<GraphPair> points;
  /// Line (or plane) on which a reduced check failed, when applicable.
  std::optional<Vec> line_base;
  std::optional<Vec> line_direction;
  /// Parameter of the failure on the traced line.
  std::optional<double> t;
};

struct CheckReport {
  Verdict verdict = Verdict::Inconclusive;
  /// monotone | convex_values | closed_values | cond_F | liminf | limsup |
  /// cone_condition | near_convex | closed_graph | line(i) | plane(i)
  std::optional<std::string> failed_condition;
  /// Underlying tag of a failed line or plane.
  std::optional<std::string> detail;
  std::optional<Witness> witness;
  std::size_t lines_checked = 0;
  std::size_t lines_passed = 0;
  std::size_t planes_checked = 0;
  std::size_t planes_passed = 0;
  std::size_t cone_points_checked = 0;
  bool monotonicity_sampled = false;
  std::vector<std::string> notes;
};

struct SamplingPlan {
  std::uint64_t seed = 0;
  int n_random_directions = 8;
  bool structural_directions = true;
  GridSpec grid{0.25, -2.0, 2.0};
  /// Upper bound on the number of traced lines per checker run.
  std::size_t max_lines = 400;
};

/// Exact decision for one-dimensional operators.
CheckReport check_1d(const Operator1D& u);

/// sup of values left of t and inf of values right of t (the interval of
/// second coordinates related to the graph away from t itself).
std::pair<double, double> related_band(const Operator1D& u, double t);

CheckReport check_line_reduction(const OperatorSpec& op, const SamplingPlan& plan = {});
CheckReport check_plane_reduction(const OperatorSpec& op, const SamplingPlan& plan = {});
CheckReport check_lohne(const OperatorSpec& op, const SamplingPlan& plan = {});

enum class CheckMode { OneDim, Line, Plane, Lohne };
/// onedim | line | plane | lohne
CheckMode parse_check_mode(const std::string& name);
const char* check_mode_name(CheckMode mode);
/// Dispatch to a checker; OneDim runs check_1d on the trace through 0 along +1.
CheckReport run_check(const OperatorSpec& op, CheckMode mode, const SamplingPlan& plan = {});

struct HemiResult {
  bool holds = false;
  double inf_side = 0.0;
  double sup_side = 0.0;
};
HemiResult check_hemi(const OperatorSpec& op, const Vec& x, const Vec& v);

/// Finite sample of the graph used for sampled monotonicity and for checking
/// lifted witnesses: values at the given points, with recession rays
/// truncated at lengths 1 and 10.
std::vector<GraphPair> sample_operator_graph(const OperatorSpec& op, const std::vector<Vec>& points);

}  // namespace monokit
