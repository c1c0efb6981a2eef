#include "monokit/io.hpp"
#include "monokit/report.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace monokit;

namespace {

py::dict pair_dict(const GraphPair& p) {
  py::dict d;
  d["x"] = p.x;
  d["xstar"] = p.xstar;
  return d;
}

py::object witness_object(const std::optional<Witness>& w) {
  if (!w) return py::none();
  py::dict d;
  d["kind"] = w->kind == Witness::Kind::RelatedPoint ? "related_point" : "monotonicity_violation";
  py::list pts;
  for (const auto& p : w->points) pts.append(pair_dict(p));
  d["points"] = pts;
  d["line_base"] = w->line_base;
  d["line_direction"] = w->line_direction;
  d["t"] = w->t;
  return d;
}

std::vector<GraphPair> to_pairs(const std::vector<std::pair<Vec, Vec>>& pairs) {
  std::vector<GraphPair> out;
  for (const auto& [x, xs] : pairs) out.push_back({x, xs});
  return out;
}

SamplingPlan plan_for(const OperatorFile& f, std::optional<std::uint64_t> seed, std::optional<int> directions) {
  SamplingPlan plan = f.plan.value_or(SamplingPlan{});
  if (seed) plan.seed = *seed;
  if (directions) plan.n_random_directions = *directions;
  return plan;
}

}  // namespace

PYBIND11_MODULE(monokit, m) {
  m.doc() = "Maximal monotonicity checks for polyhedral operators";

  const auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<OperatorFile>(m, "OperatorFile")
      .def_readonly("dim", &OperatorFile::dim)
      .def_property_readonly("sequences",
                             [](const OperatorFile& f) {
                               std::vector<std::string> names;
                               for (const auto& s : f.sequences) names.push_back(s.name);
                               return names;
                             })
      .def("serialize", &serialize_operator_file);

  m.def("parse", &parse_operator_file, py::arg("text"), "Parse an operator file from JSON text");
  m.def("load", &load_operator_file, py::arg("path"), "Load an operator file");

  py::class_<CheckReport>(m, "CheckReport")
      .def_property_readonly("verdict", [](const CheckReport& r) { return std::string(verdict_name(r.verdict)); })
      .def_property_readonly("exit_code", [](const CheckReport& r) { return exit_code(r.verdict); })
      .def_readonly("failed_condition", &CheckReport::failed_condition)
      .def_readonly("detail", &CheckReport::detail)
      .def_readonly("lines_checked", &CheckReport::lines_checked)
      .def_readonly("lines_passed", &CheckReport::lines_passed)
      .def_readonly("planes_checked", &CheckReport::planes_checked)
      .def_readonly("planes_passed", &CheckReport::planes_passed)
      .def_readonly("cone_points_checked", &CheckReport::cone_points_checked)
      .def_readonly("monotonicity_sampled", &CheckReport::monotonicity_sampled)
      .def_readonly("notes", &CheckReport::notes)
      .def_property_readonly("witness", [](const CheckReport& r) { return witness_object(r.witness); })
      .def("text", &format_check_report, py::arg("mode"));

  m.def(
      "check",
      [](const OperatorFile& f, const std::string& mode, std::optional<std::uint64_t> seed,
         std::optional<int> directions) { return run_check(f.op, parse_check_mode(mode), plan_for(f, seed, directions)); },
      py::arg("file"), py::arg("mode") = "lohne", py::arg("seed") = py::none(), py::arg("directions") = py::none(),
      "Run a maximality checker (onedim, line, plane or lohne)");

  m.def(
      "trace",
      [](const OperatorFile& f, const Vec& z, const Vec& v) {
        if (contains_ball(f.op)) throw Error(Errc::UnsupportedVariant, "ball normal cones have no exact trace");
        require_dim(z, f.dim, "z");
        require_dim(v, f.dim, "v");
        return line_trace(f.op, z, v).describe();
      },
      py::arg("file"), py::arg("z"), py::arg("v"), "Describe the exact trace along z + t v");

  m.def(
      "evaluate",
      [](const OperatorFile& f, const Vec& x) {
        require_dim(x, f.dim, "x");
        const Polyhedron p = evaluate(f.op, x);
        py::dict d;
        d["empty"] = p.is_empty();
        py::list verts, rays;
        if (!p.is_empty()) {
          for (const auto& v : p.vertices()) verts.append(v);
          for (const auto& r : p.rays()) rays.append(r);
        }
        d["vertices"] = verts;
        d["rays"] = rays;
        return d;
      },
      py::arg("file"), py::arg("x"), "Value set at x as generators");

  m.def(
      "fitzpatrick",
      [](const std::vector<std::pair<Vec, Vec>>& pairs, const Vec& x, const Vec& xstar) {
        const FitzValue v = fitzpatrick_value(to_pairs(pairs), {x, xstar});
        return py::make_tuple(v.phi, v.c);
      },
      py::arg("pairs"), py::arg("x"), py::arg("xstar"), "Fitzpatrick value and coupling at (x, x*)");

  m.def(
      "oracle",
      [](const OperatorFile& f, double step, double lo, double hi, std::size_t cap) {
        const OracleReport r = operator_oracle(f.op, GridSpec{step, lo, hi}, cap);
        py::dict d;
        d["in_graph"] = r.in_graph;
        d["related_outside"] = r.related_outside;
        d["not_related"] = r.not_related;
        d["grid_maximal"] = r.grid_maximal();
        d["text"] = format_oracle_report(r);
        return d;
      },
      py::arg("file"), py::arg("step"), py::arg("lo"), py::arg("hi"), py::arg("cap") = kDefaultGridCap,
      "Brute-force grid oracle");

  m.def("set_tol", &set_tol, py::arg("value"));
  m.def("tol", &tol);
}
