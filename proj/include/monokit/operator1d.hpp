#pragma once

#include "monokit/geometry.hpp"

#include <string>
#include <vector>

namespace monokit {

/// Single-valued affine piece t -> slope * t + intercept, or no value at all.
struct Branch {
  bool empty = true;
  double slope = 0.0;
  double intercept = 0.0;

  static Branch none() { return {}; }
  static Branch affine(double slope, double intercept) { return {false, slope, intercept}; }
  double at(double t) const { return slope * t + intercept; }
  bool same(const Branch& other, double slack) const;
};

struct Breakpoint {
  double t = 0.0;
  ExtInterval value;
};

/// Piecewise description of an operator R => R: n breakpoints with closed
/// interval values and n + 1 branches on the open intervals between them
/// (branch 0 on (-inf, t_0), branch n on (t_{n-1}, +inf)).
class Operator1D {
 public:
  Operator1D() : branches_(1) {}
  Operator1D(std::vector<Breakpoint> breakpoints, std::vector<Branch> branches);

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  const std::vector<Branch>& branches() const { return branches_; }

  ExtInterval value(double t) const;

  /// Ordered pieces: branch 0, breakpoint 0, branch 1, ... as [inf, sup]
  /// ranges of values (branch ranges use limits at the open ends).
  struct Piece {
    enum class Kind { Branch, Point } kind;
    std::size_t index;
    double t_lo, t_hi;
    ExtInterval range;
  };
  std::vector<Piece> pieces() const;

  /// inf / sup of the domain (+inf / -inf when the domain is empty).
  double alpha() const;
  double omega() const;
  bool contains_alpha() const;
  bool contains_omega() const;
  bool has_interior() const { return alpha() < omega(); }

  std::string describe() const;

 private:
  std::vector<Breakpoint> breakpoints_;
  std::vector<Branch> branches_;
};

}  // namespace monokit
