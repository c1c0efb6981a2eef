#include "monokit/report.hpp"

#include <fmt/format.h>

#include <cmath>

namespace monokit {

namespace {

const char* witness_kind(Witness::Kind k) {
  return k == Witness::Kind::RelatedPoint ? "related_point" : "monotonicity_violation";
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", clean(v));
}

std::string format_vec(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  return s + ")";
}

std::string format_check_report(const CheckReport& r, const std::string& mode) {
  std::string out;
  auto line = [&out](const std::string& k, const std::string& v) { out += k + ": " + v + "\n"; };
  line("mode", mode);
  line("lines_checked", std::to_string(r.lines_checked));
  line("lines_passed", std::to_string(r.lines_passed));
  line("planes_checked", std::to_string(r.planes_checked));
  line("planes_passed", std::to_string(r.planes_passed));
  line("cone_points_checked", std::to_string(r.cone_points_checked));
  line("monotonicity_sampled", r.monotonicity_sampled ? "true" : "false");
  if (r.failed_condition) line("failed_condition", *r.failed_condition);
  if (r.detail) line("detail", *r.detail);
  if (r.witness) {
    const Witness& w = *r.witness;
    line("witness_kind", witness_kind(w.kind));
    for (std::size_t i = 0; i < w.points.size(); ++i) {
      const std::string suffix = w.points.size() > 1 ? "_" + std::to_string(i + 1) : "";
      line("witness_x" + suffix, format_vec(w.points[i].x));
      line("witness_xstar" + suffix, format_vec(w.points[i].xstar));
    }
    if (w.line_base) line("witness_line_base", format_vec(*w.line_base));
    if (w.line_direction) line("witness_line_direction", format_vec(*w.line_direction));
    if (w.t) line("witness_t", format_number(*w.t));
  }
  for (const auto& n : r.notes) line("note", n);
  line("verdict", verdict_name(r.verdict));
  return out;
}

std::string format_oracle_report(const OracleReport& r) {
  std::string out;
  out += "in_graph: " + std::to_string(r.in_graph) + "\n";
  out += "related_outside: " + std::to_string(r.related_outside) + "\n";
  out += "not_related: " + std::to_string(r.not_related) + "\n";
  for (const auto& w : r.witnesses) out += "witness: " + format_vec(w.x) + " " + format_vec(w.xstar) + "\n";
  out += std::string("verdict: ") + (r.grid_maximal() ? "GridMaximal" : "NotGridMaximal") + "\n";
  return out;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Maximal:
    case Verdict::MaximalOnSampledCertificates: return 0;
    case Verdict::NotMaximal: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

}  // namespace monokit
