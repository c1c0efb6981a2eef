#pragma once

#include "monokit/maximality.hpp"
#include "monokit/oracle.hpp"

#include <string>

namespace monokit {

/// Shortest round-trip number text ("-0" printed as "0").
std::string format_number(double v);
/// "(a, b, ...)".
std::string format_vec(const Vec& v);

/// Line-oriented key: value block ending in "verdict: <name>".
std::string format_check_report(const CheckReport& r, const std::string& mode);
std::string format_oracle_report(const OracleReport& r);

/// 0 Maximal / MaximalOnSampledCertificates, 1 NotMaximal, 2 Inconclusive.
int exit_code(Verdict v);

}  // namespace monokit
