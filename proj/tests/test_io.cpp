#include "doctest.h"

#include "monokit/io.hpp"
#include "monokit/report.hpp"

#include <filesystem>

using namespace monokit;

namespace {

std::string fixture(const std::string& name) { return std::string(MONOKIT_FIXTURE_DIR) + "/" + name; }

std::string where_of(const std::string& text) {
  try {
    parse_operator_file(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "";
}

}  // namespace

TEST_CASE("fixtures round-trip through the canonical form") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(MONOKIT_FIXTURE_DIR)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("malformed", 0) == 0) continue;
    CAPTURE(name);
    const OperatorFile f = load_operator_file(entry.path().string());
    const std::string once = serialize_operator_file(f);
    const OperatorFile g = parse_operator_file(once);
    CHECK(serialize_operator_file(g) == once);
    CHECK(g.dim == f.dim);
    CHECK(g.sequences.size() == f.sequences.size());
    ++seen;
  }
  CHECK(seen >= 15);
}

TEST_CASE("parsed operators keep their semantics") {
  const OperatorFile tq = load_operator_file(fixture("third_quadrant.json"));
  CHECK(evaluate(tq.op, make_vec({0, 0})).same_set(Polyhedron::cone(2, {make_vec({1, 1})})));
  REQUIRE(tq.plan.has_value());
  CHECK(tq.plan->n_random_directions == 40);
  REQUIRE(tq.sequences.size() == 1);
  CHECK_NOTHROW(tq.sequences[0].seq.validate(tq.op));
  const OperatorFile box = load_operator_file(fixture("box.json"));
  CHECK(evaluate(box.op, make_vec({1, 1})).same_set(Polyhedron::cone(2, {make_vec({1, 0}), make_vec({0, 1})})));
}

TEST_CASE("diagnostics carry positions") {
  CHECK(where_of("{\n  \"dim\": 2,\n  \"operator\": {\"kind\": \"normal_cone\",, }\n}\n") == "3:38");
  CHECK(where_of("{\"operator\": {\"kind\": \"normal_cone\", \"set\": {\"box\": {\"lo\": 0, \"hi\": 1}}}}") == "$");
  CHECK(where_of("{\"dim\": 1, \"operator\": {\"kind\": \"mystery\"}}") == "$.operator.kind");
  CHECK(where_of("{\"dim\": 1, \"operator\": {\"kind\": \"translate\", \"z\": [1], \"inner\": {\"kind\": "
                 "\"normal_cone\", \"set\": {\"rows\": [{\"normal\": [1, 2], \"offset\": 0}]}}}}") ==
        "$.operator.inner.set.rows[0].normal");
  CHECK(where_of("{\"dim\": 1, \"extra\": 0, \"operator\": {\"kind\": \"finite_graph\", \"pairs\": []}}") == "$.extra");
  CHECK(where_of("{\"dim\": 0, \"operator\": {}}") == "$.dim");
  CHECK(where_of("{\"dim\": 1, \"plan\": {\"seed\": -1}, \"operator\": {\"kind\": \"finite_graph\", \"pairs\": []}}") ==
        "$.plan.seed");
  CHECK_THROWS_AS(load_operator_file(fixture("does_not_exist.json")), ParseError);
}

TEST_CASE("report formatting") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.75) == "0.75");
  CHECK(format_number(-kInf) == "-inf");
  CHECK(format_vec(make_vec({1, -2.5})) == "(1, -2.5)");
  CheckReport r;
  r.verdict = Verdict::NotMaximal;
  r.failed_condition = "liminf";
  Witness w;
  w.points.push_back({make_vec({0}), make_vec({0.75})});
  r.witness = w;
  const std::string text = format_check_report(r, "onedim");
  CHECK(text.find("failed_condition: liminf\n") != std::string::npos);
  CHECK(text.find("witness_xstar: (0.75)\n") != std::string::npos);
  CHECK(text.substr(text.size() - 20) == "verdict: NotMaximal\n");
  CHECK(exit_code(Verdict::MaximalOnSampledCertificates) == 0);
  CHECK(exit_code(Verdict::Inconclusive) == 2);
}
