#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace monokit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Global absolute comparison tolerance. Defaults to 1e-9; the MONOKIT_TOL
/// environment variable is read once on first use.
double tol();
void set_tol(double value);

/// Restores the previous tolerance when it goes out of scope.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double value) : saved_(tol()) { set_tol(value); }
  ~ScopedTolerance() { set_tol(saved_); }
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double saved_;
};

enum class Errc {
  PointOutsideSet,
  PointOutsideDomain,
  EmptyPolyhedron,
  EmptyRelativeInterior,
  EmptyInterior,
  EmptyGraph,
  DegenerateRow,
  DependentDirections,
  DimensionMismatch,
  DimensionTooLow,
  UnsupportedVariant,
  ZeroDirection,
  DirectionNotTangent,
  UnboundedSequence,
  InvalidSequence,
  BallNotInterior,
  InvalidArgument,
  TooLarge,
  NonMonotoneTrace,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

/// Maps -0.0 to 0.0 so printed reports do not depend on the sign of zero.
inline double clean(double x) { return x == 0.0 ? 0.0 : x; }

inline void require_dim(const Vec& v, int dim, const char* what) {
  if (v.size() != dim)
    throw Error(Errc::DimensionMismatch, std::string(what) + " has dimension " +
                                             std::to_string(v.size()) + ", expected " +
                                             std::to_string(dim));
}

}  // namespace monokit
