#include "monokit/core.hpp"

#include <atomic>
#include <cstdlib>

namespace monokit {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("MONOKIT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-9;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> slot{initial_tolerance()};
  return slot;
}

}  // namespace

double tol() { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tol(double value) {
  if (!(value > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  tolerance_slot().store(value, std::memory_order_relaxed);
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::PointOutsideSet: return "PointOutsideSet";
    case Errc::PointOutsideDomain: return "PointOutsideDomain";
    case Errc::EmptyPolyhedron: return "EmptyPolyhedron";
    case Errc::EmptyRelativeInterior: return "EmptyRelativeInterior";
    case Errc::EmptyInterior: return "EmptyInterior";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::DegenerateRow: return "DegenerateRow";
    case Errc::DependentDirections: return "DependentDirections";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionTooLow: return "DimensionTooLow";
    case Errc::UnsupportedVariant: return "UnsupportedVariant";
    case Errc::ZeroDirection: return "ZeroDirection";
    case Errc::DirectionNotTangent: return "DirectionNotTangent";
    case Errc::UnboundedSequence: return "UnboundedSequence";
    case Errc::InvalidSequence: return "InvalidSequence";
    case Errc::BallNotInterior: return "BallNotInterior";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NonMonotoneTrace: return "NonMonotoneTrace";
  }
  return "Unknown";
}

}  // namespace monokit
