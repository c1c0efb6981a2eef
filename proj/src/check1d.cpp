#include "monokit/maximality.hpp"

#include <algorithm>
#include <cmath>

namespace monokit {

namespace {

using Piece = Operator1D::Piece;

double slack_for(double a, double b) {
  double m = 1.0;
  if (std::isfinite(a)) m = std::max(m, std::abs(a));
  if (std::isfinite(b)) m = std::max(m, std::abs(b));
  return tol() * m;
}

// A point of a nonempty piece whose value lies strictly above (or below) thr.
GraphPair pick_beyond(const Operator1D& u, const Piece& p, double thr, bool above) {
  if (p.kind == Piece::Kind::Point) {
    const ExtInterval& v = p.range;
    double s;
    if (above)
      s = std::isfinite(v.hi) ? v.hi : std::max(thr + 1.0, std::isfinite(v.lo) ? v.lo : thr + 1.0);
    else
      s = std::isfinite(v.lo) ? v.lo : std::min(thr - 1.0, std::isfinite(v.hi) ? v.hi : thr - 1.0);
    return {make_vec({p.t_lo}), make_vec({s})};
  }
  const Branch& b = u.branches()[p.index];
  const double a = p.t_lo, c = p.t_hi;
  double t;
  if (std::abs(b.slope) <= tol()) {
    t = std::isfinite(a) && std::isfinite(c) ? 0.5 * (a + c) : (std::isfinite(a) ? a + 1.0 : c - 1.0);
    if (!std::isfinite(a) && !std::isfinite(c)) t = 0.0;
  } else {
    // Value equal to thr is reached at t0; move inside the branch on the correct side.
    const double t0 = (thr - b.intercept) / b.slope;
    const bool right = above == (b.slope > 0);
    double lo = a, hi = c;
    if (right)
      lo = std::isfinite(lo) ? std::max(lo, t0) : t0;
    else
      hi = std::isfinite(hi) ? std::min(hi, t0) : t0;
    if (std::isfinite(lo) && std::isfinite(hi))
      t = 0.5 * (lo + hi);
    else
      t = std::isfinite(lo) ? lo + 1.0 : hi - 1.0;
  }
  return {make_vec({t}), make_vec({b.at(t)})};
}

// Range of a branch piece restricted to t' < t (left) or t' > t (right).
ExtInterval clipped_range(const Operator1D& u, const Piece& p, double t, bool left) {
  if (p.kind == Piece::Kind::Point) return p.range;
  const Branch& b = u.branches()[p.index];
  double lo = p.t_lo, hi = p.t_hi;
  if (left)
    hi = std::min(hi, t);
  else
    lo = std::max(lo, t);
  if (!(lo < hi)) return ExtInterval::none();
  auto end_value = [&b](double x, bool at_hi) {
    if (std::isfinite(x)) return b.at(x);
    if (std::abs(b.slope) <= tol()) return b.intercept;
    return (b.slope > 0) == at_hi ? kInf : -kInf;
  };
  const double v1 = end_value(lo, false), v2 = end_value(hi, true);
  return ExtInterval::of(std::min(v1, v2), std::max(v1, v2));
}

bool same_t(double a, double b) { return std::abs(a - b) <= tol() * std::max(1.0, std::abs(a)); }

CheckReport failure(const char* tag, double t, double s) {
  CheckReport r;
  r.verdict = Verdict::NotMaximal;
  r.failed_condition = tag;
  Witness w;
  w.kind = Witness::Kind::RelatedPoint;
  w.points.push_back({make_vec({t}), make_vec({s})});
  w.t = t;
  r.witness = std::move(w);
  return r;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Maximal: return "Maximal";
    case Verdict::NotMaximal: return "NotMaximal";
    case Verdict::MaximalOnSampledCertificates: return "MaximalOnSampledCertificates";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

std::pair<double, double> related_band(const Operator1D& u, double t) {
  double left = -kInf, right = kInf;
  for (const auto& p : u.pieces()) {
    if (p.range.empty) continue;
    if (p.kind == Piece::Kind::Point) {
      if (same_t(p.t_lo, t)) continue;
      if (p.t_lo < t)
        left = std::max(left, p.range.hi);
      else
        right = std::min(right, p.range.lo);
      continue;
    }
    const ExtInterval l = clipped_range(u, p, t, true);
    const ExtInterval r = clipped_range(u, p, t, false);
    if (!l.empty) left = std::max(left, l.hi);
    if (!r.empty) right = std::min(right, r.lo);
  }
  return {left, right};
}

CheckReport check_1d(const Operator1D& u) {
  if (!u.has_interior()) throw Error(Errc::EmptyInterior, "the domain has empty interior");
  const auto pieces = u.pieces();

  // (a) monotone graph.
  for (const auto& p : pieces) {
    if (p.kind != Piece::Kind::Branch || p.range.empty) continue;
    const Branch& b = u.branches()[p.index];
    if (b.slope < -tol()) {
      const double a = std::isfinite(p.t_lo) ? p.t_lo : p.t_hi - 2.0;
      const double c = std::isfinite(p.t_hi) ? p.t_hi : a + 2.0;
      const double t1 = a + (c - a) / 3.0, t2 = a + 2.0 * (c - a) / 3.0;
      CheckReport r;
      r.verdict = Verdict::NotMaximal;
      r.failed_condition = "monotone";
      Witness w;
      w.kind = Witness::Kind::MonotonicityViolation;
      w.points = {{make_vec({t1}), make_vec({b.at(t1)})}, {make_vec({t2}), make_vec({b.at(t2)})}};
      r.witness = std::move(w);
      return r;
    }
  }
  const Piece* prev = nullptr;
  for (const auto& p : pieces) {
    if (p.range.empty) continue;
    if (prev && prev->range.hi > p.range.lo + slack_for(prev->range.hi, p.range.lo)) {
      double hi = prev->range.hi, lo = p.range.lo;
      if (!std::isfinite(hi)) hi = lo + 2.0;
      if (!std::isfinite(lo)) lo = hi - 2.0;
      const double mid = 0.5 * (hi + lo);
      CheckReport r;
      r.verdict = Verdict::NotMaximal;
      r.failed_condition = "monotone";
      Witness w;
      w.kind = Witness::Kind::MonotonicityViolation;
      w.points = {pick_beyond(u, *prev, mid, true), pick_beyond(u, p, mid, false)};
      r.witness = std::move(w);
      return r;
    }
    prev = &p;
  }

  // (b) closed convex values hold by representation.
  const double alpha = u.alpha(), omega = u.omega();

  // (c) condition (F) at included finite endpoints.
  if (std::isfinite(alpha) && u.contains_alpha()) {
    const ExtInterval v = u.value(alpha);
    if (std::isfinite(v.lo)) return failure("cond_F", alpha, v.lo - 1.0);
  }
  if (std::isfinite(omega) && u.contains_omega()) {
    const ExtInterval v = u.value(omega);
    if (std::isfinite(v.hi)) return failure("cond_F", omega, v.hi + 1.0);
  }

  // Breakpoints plus one point inside every empty branch between alpha and omega.
  std::vector<double> probes;
  for (const auto& p : pieces) {
    if (p.kind == Piece::Kind::Point) {
      probes.push_back(p.t_lo);
    } else if (p.range.empty && std::isfinite(p.t_lo) && std::isfinite(p.t_hi) && p.t_lo >= alpha &&
               p.t_hi <= omega) {
      probes.push_back(0.5 * (p.t_lo + p.t_hi));
    }
  }

  // (d) inf U((t, inf)) <= sup U(t) for t in [alpha, omega).
  for (double t : probes) {
    if (t < alpha - tol() || t >= omega - tol()) continue;
    const ExtInterval v = u.value(t);
    const double a = v.sup();
    const auto [left, right] = related_band(u, t);
    if (right > a + slack_for(right, a)) {
      const double lower = std::max(a, left);
      const double s = std::isfinite(lower) ? 0.5 * (lower + right) : right;
      return failure("liminf", t, s);
    }
  }
  // (e) sup U((-inf, t)) >= inf U(t) for t in (alpha, omega].
  for (double t : probes) {
    if (t <= alpha + tol() || t > omega + tol()) continue;
    const ExtInterval v = u.value(t);
    const double b = v.inf();
    const auto [left, right] = related_band(u, t);
    if (left < b - slack_for(left, b)) {
      const double upper = std::min(b, right);
      const double s = std::isfinite(upper) ? 0.5 * (left + upper) : left;
      return failure("limsup", t, s);
    }
  }

  CheckReport r;
  r.verdict = Verdict::Maximal;
  return r;
}

}  // namespace monokit
