#include "monokit/io.hpp"

#include "json.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace monokit {

namespace {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path, what); }

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown key");
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Vec vector_of(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (dim >= 0 && static_cast<int>(j.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " entries, found " + std::to_string(j.size()));
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

std::vector<Vec> vector_list(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_of(j[i], path + "[" + std::to_string(i) + "]", dim));
  return out;
}

std::vector<Halfspace> halfspaces(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  std::vector<Halfspace> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    allow_keys(j[i], p, {"normal", "offset"});
    rows.push_back({vector_of(field(j[i], p, "normal"), p + ".normal", dim), number(field(j[i], p, "offset"), p + ".offset")});
    if (rows.back().normal.norm() == 0.0) fail(p + ".normal", "zero normal");
  }
  return rows;
}

Polyhedron polyhedron(const json& j, const std::string& path, int dim) {
  allow_keys(j, path, {"rows", "box", "vertices", "rays"});
  const int forms = int(j.contains("rows")) + int(j.contains("box")) + int(j.contains("vertices") || j.contains("rays"));
  if (forms != 1) fail(path, "expected exactly one of rows, box, or vertices/rays");
  if (j.contains("rows")) return Polyhedron::from_h(dim, halfspaces(j.at("rows"), path + ".rows", dim));
  if (j.contains("box")) {
    const json& b = j.at("box");
    allow_keys(b, path + ".box", {"lo", "hi"});
    const double lo = number(field(b, path + ".box", "lo"), path + ".box.lo");
    const double hi = number(field(b, path + ".box", "hi"), path + ".box.hi");
    if (!(lo <= hi)) fail(path + ".box", "lo exceeds hi");
    return Polyhedron::box(dim, lo, hi);
  }
  std::vector<Vec> verts = j.contains("vertices") ? vector_list(j.at("vertices"), path + ".vertices", dim) : std::vector<Vec>{};
  std::vector<Vec> rays = j.contains("rays") ? vector_list(j.at("rays"), path + ".rays", dim) : std::vector<Vec>{};
  if (verts.empty() && !rays.empty()) fail(path + ".vertices", "rays need at least one vertex");
  if (verts.empty()) return Polyhedron::empty(dim);
  return Polyhedron::from_generators(dim, std::move(verts), std::move(rays));
}

OperatorSpec operator_of(const json& j, const std::string& path, int dim) {
  if (!j.is_object()) fail(path, "expected an operator object");
  const json& kind_j = field(j, path, "kind");
  if (!kind_j.is_string()) fail(path + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  try {
    if (kind == "finite_graph") {
      allow_keys(j, path, {"kind", "pairs"});
      const json& pairs = field(j, path, "pairs");
      if (!pairs.is_array()) fail(path + ".pairs", "expected an array");
      std::vector<GraphPair> out;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string p = path + ".pairs[" + std::to_string(i) + "]";
        allow_keys(pairs[i], p, {"x", "xstar"});
        out.push_back({vector_of(field(pairs[i], p, "x"), p + ".x", dim),
                       vector_of(field(pairs[i], p, "xstar"), p + ".xstar", dim)});
      }
      return OperatorSpec::finite_graph(dim, std::move(out));
    }
    if (kind == "normal_cone") {
      allow_keys(j, path, {"kind", "set"});
      return OperatorSpec::normal_cone(polyhedron(field(j, path, "set"), path + ".set", dim));
    }
    if (kind == "normal_cone_ball") {
      allow_keys(j, path, {"kind", "center", "radius"});
      return OperatorSpec::normal_cone_ball(vector_of(field(j, path, "center"), path + ".center", dim),
                                            number(field(j, path, "radius"), path + ".radius"));
    }
    if (kind == "pl_subdifferential") {
      allow_keys(j, path, {"kind", "pieces"});
      const json& pieces = field(j, path, "pieces");
      if (!pieces.is_array()) fail(path + ".pieces", "expected an array");
      std::vector<PLPiece> out;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string p = path + ".pieces[" + std::to_string(i) + "]";
        allow_keys(pieces[i], p, {"a", "b"});
        out.push_back({vector_of(field(pieces[i], p, "a"), p + ".a", dim), number(field(pieces[i], p, "b"), p + ".b")});
      }
      return OperatorSpec::pl_subdifferential(dim, std::move(out));
    }
    if (kind == "sum") {
      allow_keys(j, path, {"kind", "left", "right"});
      return OperatorSpec::sum(operator_of(field(j, path, "left"), path + ".left", dim),
                               operator_of(field(j, path, "right"), path + ".right", dim));
    }
    if (kind == "translate") {
      allow_keys(j, path, {"kind", "inner", "z"});
      return OperatorSpec::translate(operator_of(field(j, path, "inner"), path + ".inner", dim),
                                     vector_of(field(j, path, "z"), path + ".z", dim));
    }
    if (kind == "affine_restriction") {
      allow_keys(j, path, {"kind", "inner", "base", "dirs"});
      const Vec base = vector_of(field(j, path, "base"), path + ".base", -1);
      const int ambient = static_cast<int>(base.size());
      AffineSet set{base, vector_list(field(j, path, "dirs"), path + ".dirs", ambient)};
      if (set.dim() != dim) fail(path + ".dirs", "expected " + std::to_string(dim) + " directions");
      return OperatorSpec::affine_restriction(operator_of(field(j, path, "inner"), path + ".inner", ambient), std::move(set));
    }
    if (kind == "domain_cut") {
      allow_keys(j, path, {"kind", "inner", "cuts"});
      return OperatorSpec::domain_cut(operator_of(field(j, path, "inner"), path + ".inner", dim),
                                      halfspaces(field(j, path, "cuts"), path + ".cuts", dim));
    }
    if (kind == "point_patch") {
      allow_keys(j, path, {"kind", "inner", "point", "value"});
      const json& value = field(j, path, "value");
      std::optional<Polyhedron> v;
      if (!value.is_null()) v = polyhedron(value, path + ".value", dim);
      return OperatorSpec::point_patch(operator_of(field(j, path, "inner"), path + ".inner", dim),
                                       vector_of(field(j, path, "point"), path + ".point", dim), std::move(v));
    }
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown operator kind \"" + kind + "\"");
}

SamplingPlan plan_of(const json& j, const std::string& path) {
  allow_keys(j, path, {"seed", "n_random_directions", "structural_directions", "grid", "max_lines"});
  SamplingPlan plan;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail(path + ".seed", "expected a non-negative integer");
    plan.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("n_random_directions")) {
    if (!j.at("n_random_directions").is_number_unsigned()) fail(path + ".n_random_directions", "expected a non-negative integer");
    plan.n_random_directions = j.at("n_random_directions").get<int>();
  }
  if (j.contains("structural_directions")) {
    if (!j.at("structural_directions").is_boolean()) fail(path + ".structural_directions", "expected a boolean");
    plan.structural_directions = j.at("structural_directions").get<bool>();
  }
  if (j.contains("max_lines")) {
    if (!j.at("max_lines").is_number_unsigned()) fail(path + ".max_lines", "expected a non-negative integer");
    plan.max_lines = j.at("max_lines").get<std::size_t>();
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    const std::string p = path + ".grid";
    allow_keys(g, p, {"step", "lo", "hi"});
    plan.grid = GridSpec{number(field(g, p, "step"), p + ".step"), number(field(g, p, "lo"), p + ".lo"),
                         number(field(g, p, "hi"), p + ".hi")};
    if (!(plan.grid.step > 0) || !(plan.grid.lo <= plan.grid.hi)) fail(p, "expected step > 0 and lo <= hi");
  }
  return plan;
}

NamedSequence sequence_of(const json& j, const std::string& path, int dim) {
  allow_keys(j, path, {"name", "points", "limit", "covectors"});
  NamedSequence s;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) fail(path + ".name", "expected a string");
    s.name = j.at("name").get<std::string>();
  }
  s.seq.points = vector_list(field(j, path, "points"), path + ".points", dim);
  s.seq.limit = vector_of(field(j, path, "limit"), path + ".limit", dim);
  if (j.contains("covectors")) {
    s.seq.covectors = vector_list(j.at("covectors"), path + ".covectors", dim);
    if (s.seq.covectors->size() != s.seq.points.size()) fail(path + ".covectors", "expected one covector per point");
  }
  return s;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

ordered vec_json(const Vec& v) {
  ordered a = ordered::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(clean(v[i]));
  return a;
}

ordered rows_json(const std::vector<Halfspace>& rows) {
  ordered a = ordered::array();
  for (const auto& r : rows) a.push_back(ordered{{"normal", vec_json(r.normal)}, {"offset", clean(r.offset)}});
  return a;
}

ordered poly_json(const Polyhedron& p) {
  if (p.is_empty()) return ordered{{"vertices", ordered::array()}};
  return ordered{{"rows", rows_json(p.rows())}};
}

ordered op_json(const OperatorSpec& op) {
  return std::visit(
      overloaded{
          [](const FiniteGraph& g) {
            ordered pairs = ordered::array();
            for (const auto& p : g.pairs) pairs.push_back(ordered{{"x", vec_json(p.x)}, {"xstar", vec_json(p.xstar)}});
            return ordered{{"kind", "finite_graph"}, {"pairs", pairs}};
          },
          [](const NormalCone& n) { return ordered{{"kind", "normal_cone"}, {"set", poly_json(n.set)}}; },
          [](const NormalConeBall& b) {
            return ordered{{"kind", "normal_cone_ball"}, {"center", vec_json(b.center)}, {"radius", b.radius}};
          },
          [](const PLSubdifferential& f) {
            ordered pieces = ordered::array();
            for (const auto& p : f.pieces) pieces.push_back(ordered{{"a", vec_json(p.a)}, {"b", clean(p.b)}});
            return ordered{{"kind", "pl_subdifferential"}, {"pieces", pieces}};
          },
          [](const Sum& s) { return ordered{{"kind", "sum"}, {"left", op_json(s.left)}, {"right", op_json(s.right)}}; },
          [](const Translate& t) { return ordered{{"kind", "translate"}, {"inner", op_json(t.inner)}, {"z", vec_json(t.z)}}; },
          [](const AffineRestriction& r) {
            ordered dirs = ordered::array();
            for (const auto& d : r.set.dirs) dirs.push_back(vec_json(d));
            return ordered{{"kind", "affine_restriction"}, {"inner", op_json(r.inner)}, {"base", vec_json(r.set.base)}, {"dirs", dirs}};
          },
          [](const DomainCut& c) { return ordered{{"kind", "domain_cut"}, {"inner", op_json(c.inner)}, {"cuts", rows_json(c.cuts)}}; },
          [](const PointPatch& p) {
            return ordered{{"kind", "point_patch"},
                           {"inner", op_json(p.inner)},
                           {"point", vec_json(p.point)},
                           {"value", p.value ? poly_json(*p.value) : ordered(nullptr)}};
          },
      },
      op.node().v);
}

}  // namespace

OperatorFile parse_operator_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::string msg = e.what();
    const auto pos = msg.find(": ", msg.find("column"));
    throw ParseError(line_col(text, e.byte == 0 ? 0 : e.byte - 1), pos == std::string::npos ? msg : msg.substr(pos + 2));
  }
  allow_keys(j, "$", {"dim", "operator", "sequences", "plan"});
  const json& dim_j = field(j, "$", "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1 || dim_j.get<long long>() > 64)
    fail("$.dim", "expected an integer between 1 and 64");
  const int dim = dim_j.get<int>();
  OperatorSpec op = operator_of(field(j, "$", "operator"), "$.operator", dim);
  std::vector<NamedSequence> seqs;
  if (j.contains("sequences")) {
    const json& s = j.at("sequences");
    if (!s.is_array()) fail("$.sequences", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) seqs.push_back(sequence_of(s[i], "$.sequences[" + std::to_string(i) + "]", dim));
  }
  std::optional<SamplingPlan> plan;
  if (j.contains("plan")) plan = plan_of(j.at("plan"), "$.plan");
  return OperatorFile{dim, std::move(op), std::move(seqs), plan};
}

OperatorFile load_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_operator_file(ss.str());
}

std::string serialize_operator_file(const OperatorFile& file) {
  ordered j;
  j["dim"] = file.dim;
  j["operator"] = op_json(file.op);
  if (!file.sequences.empty()) {
    ordered seqs = ordered::array();
    for (const auto& s : file.sequences) {
      ordered e;
      if (!s.name.empty()) e["name"] = s.name;
      ordered pts = ordered::array();
      for (const auto& p : s.seq.points) pts.push_back(vec_json(p));
      e["points"] = pts;
      e["limit"] = vec_json(s.seq.limit);
      if (s.seq.covectors) {
        ordered cov = ordered::array();
        for (const auto& c : *s.seq.covectors) cov.push_back(vec_json(c));
        e["covectors"] = cov;
      }
      seqs.push_back(e);
    }
    j["sequences"] = seqs;
  }
  if (file.plan) {
    const SamplingPlan& p = *file.plan;
    j["plan"] = ordered{{"seed", p.seed},
                        {"n_random_directions", p.n_random_directions},
                        {"structural_directions", p.structural_directions},
                        {"grid", ordered{{"step", p.grid.step}, {"lo", p.grid.lo}, {"hi", p.grid.hi}}},
                        {"max_lines", p.max_lines}};
  }
  return j.dump(2) + "\n";
}

}  // namespace monokit
