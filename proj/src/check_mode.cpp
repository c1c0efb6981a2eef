#include "monokit/maximality.hpp"

namespace monokit {

CheckMode parse_check_mode(const std::string& name) {
  if (name == "onedim") return CheckMode::OneDim;
  if (name == "line") return CheckMode::Line;
  if (name == "plane") return CheckMode::Plane;
  if (name == "lohne") return CheckMode::Lohne;
  throw Error(Errc::InvalidArgument, "unknown mode '" + name + "' (expected onedim, line, plane or lohne)");
}

const char* check_mode_name(CheckMode mode) {
  switch (mode) {
    case CheckMode::OneDim: return "onedim";
    case CheckMode::Line: return "line";
    case CheckMode::Plane: return "plane";
    case CheckMode::Lohne: return "lohne";
  }
  return "lohne";
}

CheckReport run_check(const OperatorSpec& op, CheckMode mode, const SamplingPlan& plan) {
  switch (mode) {
    case CheckMode::OneDim:
      if (op.dim() != 1) throw Error(Errc::DimensionMismatch, "mode onedim needs a one-dimensional operator");
      if (contains_ball(op)) throw Error(Errc::UnsupportedVariant, "ball normal cones have no exact trace");
      return check_1d(line_trace(op, make_vec({0}), make_vec({1})));
    case CheckMode::Line: return check_line_reduction(op, plan);
    case CheckMode::Plane: return check_plane_reduction(op, plan);
    case CheckMode::Lohne: return check_lohne(op, plan);
  }
  return check_lohne(op, plan);
}

}  // namespace monokit
