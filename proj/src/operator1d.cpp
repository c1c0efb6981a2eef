#include "monokit/operator1d.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

namespace monokit {

namespace {

std::string format_interval(const ExtInterval& iv) {
  if (iv.empty) return "empty";
  const char* open = std::isinf(iv.lo) ? "(" : "[";
  const char* close = std::isinf(iv.hi) ? ")" : "]";
  return fmt::format("{}{}, {}{}", open, clean(iv.lo), clean(iv.hi), close);
}

}  // namespace

bool Branch::same(const Branch& other, double slack) const {
  if (empty || other.empty) return empty == other.empty;
  return std::abs(slope - other.slope) <= slack && std::abs(intercept - other.intercept) <= slack;
}

Operator1D::Operator1D(std::vector<Breakpoint> breakpoints, std::vector<Branch> branches)
    : breakpoints_(std::move(breakpoints)), branches_(std::move(branches)) {
  if (branches_.size() != breakpoints_.size() + 1)
    throw Error(Errc::InvalidArgument, "need one more branch than breakpoints");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i].t > breakpoints_[i - 1].t))
      throw Error(Errc::InvalidArgument, "breakpoints must be strictly increasing");
  for (const auto& bp : breakpoints_) {
    if (!std::isfinite(bp.t)) throw Error(Errc::InvalidArgument, "breakpoint must be finite");
    if (!bp.value.empty && bp.value.lo > bp.value.hi)
      throw Error(Errc::InvalidArgument, "interval with lo > hi");
  }
}

ExtInterval Operator1D::value(double t) const {
  const double eps = tol();
  std::size_t branch = 0;
  for (const auto& bp : breakpoints_) {
    if (std::abs(bp.t - t) <= eps * std::max(1.0, std::abs(t))) return bp.value;
    if (t > bp.t) ++branch;
  }
  const Branch& b = branches_[branch];
  return b.empty ? ExtInterval::none() : ExtInterval::point(b.at(t));
}

std::vector<Operator1D::Piece> Operator1D::pieces() const {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const double lo = i == 0 ? -kInf : breakpoints_[i - 1].t;
    const double hi = i == breakpoints_.size() ? kInf : breakpoints_[i].t;
    const Branch& b = branches_[i];
    ExtInterval range = ExtInterval::none();
    if (!b.empty) {
      auto limit = [&b](double t, bool at_hi) {
        if (std::isfinite(t)) return b.at(t);
        if (std::abs(b.slope) <= tol()) return b.intercept;
        return (b.slope > 0) == at_hi ? kInf : -kInf;
      };
      double a = limit(lo, false), c = limit(hi, true);
      range = ExtInterval::of(std::min(a, c), std::max(a, c));
    }
    out.push_back({Piece::Kind::Branch, i, lo, hi, range});
    if (i < breakpoints_.size())
      out.push_back({Piece::Kind::Point, i, breakpoints_[i].t, breakpoints_[i].t, breakpoints_[i].value});
  }
  return out;
}

double Operator1D::alpha() const {
  for (const auto& p : pieces())
    if (!p.range.empty) return p.t_lo;
  return kInf;
}

double Operator1D::omega() const {
  const auto ps = pieces();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it)
    if (!it->range.empty) return it->t_hi;
  return -kInf;
}

bool Operator1D::contains_alpha() const {
  const double a = alpha();
  return std::isfinite(a) && !value(a).empty;
}

bool Operator1D::contains_omega() const {
  const double w = omega();
  return std::isfinite(w) && !value(w).empty;
}

std::string Operator1D::describe() const {
  std::string out = fmt::format("breakpoints: {}\n", breakpoints_.size());
  for (std::size_t i = 0; i < breakpoints_.size(); ++i)
    out += fmt::format("  t[{}]: {} value {}\n", i, clean(breakpoints_[i].t), format_interval(breakpoints_[i].value));
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const double lo = i == 0 ? -kInf : breakpoints_[i - 1].t;
    const double hi = i == breakpoints_.size() ? kInf : breakpoints_[i].t;
    const Branch& b = branches_[i];
    if (b.empty)
      out += fmt::format("  branch[{}]: ({}, {}) empty\n", i, clean(lo), clean(hi));
    else
      out += fmt::format("  branch[{}]: ({}, {}) slope {} intercept {}\n", i, clean(lo), clean(hi), clean(b.slope), clean(b.intercept));
  }
  out += fmt::format("alpha: {}{}\n", clean(alpha()), contains_alpha() ? " (included)" : "");
  out += fmt::format("omega: {}{}\n", clean(omega()), contains_omega() ? " (included)" : "");
  return out;
}

}  // namespace monokit
