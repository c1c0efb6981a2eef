#pragma once

#include "monokit/continuity.hpp"
#include "monokit/maximality.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monokit {

/// Malformed or inconsistent operator file. `where` is "line:col" for syntax
/// errors and a JSON path (e.g. $.operator.inner.z) for semantic ones.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct NamedSequence {
  std::string name;
  SequenceSpec seq;
};

struct OperatorFile {
  int dim = 0;
  OperatorSpec op;
  std::vector<NamedSequence> sequences;
  std::optional<SamplingPlan> plan;
};

OperatorFile parse_operator_file(const std::string& text);
OperatorFile load_operator_file(const std::string& path);

/// Canonical text form (polyhedra as normalized H-rows); parsing it back gives
/// an identical serialization.
std::string serialize_operator_file(const OperatorFile& file);

}  // namespace monokit
