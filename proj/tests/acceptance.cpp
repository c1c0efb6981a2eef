#include "graph_oracle.hpp"

#include "monokit/continuity.hpp"
#include "monokit/fitzpatrick.hpp"
#include "monokit/io.hpp"
#include "monokit/maximality.hpp"
#include "monokit/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace monokit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& name) { return std::string(MONOKIT_FIXTURE_DIR) + "/" + name; }

double snap(double v, double step) { return std::round(v / step) * step; }

// Random monotone staircase on a 0.05 lattice, possibly with shrunken
// breakpoint values, a closed or pinned left end, or an interior gap.
Operator1D random_operator1d(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 6), slope(0, 2), coin(0, 3), jump(0, 20);
  const int n = count(rng);
  std::vector<double> ts;
  double t = snap(std::uniform_real_distribution<double>(-4.0, -4.0 + 8.0 / n)(rng), 0.05);
  for (int i = 0; i < n && t <= 4.0; ++i) {
    ts.push_back(t);
    t = snap(t + std::uniform_real_distribution<double>(0.5, std::max(0.5, 8.0 / n))(rng), 0.05);
  }
  std::vector<Breakpoint> bps;
  std::vector<Branch> br;
  double cur = snap(std::uniform_real_distribution<double>(-5.0, -2.0)(rng), 0.05);
  br.push_back(Branch::affine(0, cur));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double left = cur;
    double right = std::min(5.0, snap(left + 0.05 * jump(rng), 0.05));
    ExtInterval value = ExtInterval::of(left, right);
    if (coin(rng) == 0 && right > left) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(std::lround((right - left) / 0.05)));
      double a = left + 0.05 * pick(rng), b = left + 0.05 * pick(rng);
      if (a > b) std::swap(a, b);
      value = ExtInterval::of(a, b);
    }
    bps.push_back({ts[i], value});
    double s = i + 1 < ts.size() ? slope(rng) : 0.0;
    if (i + 1 < ts.size() && right + s * (ts[i + 1] - ts[i]) > 5.0) s = 0.0;
    br.push_back(Branch::affine(s, right - s * ts[i]));
    cur = i + 1 < ts.size() ? snap(right + s * (ts[i + 1] - ts[i]), 0.05) : right;
  }
  // Domain edits.
  const int left_edit = coin(rng);
  if (left_edit == 1) {
    br.front() = Branch::none();
    bps.front().value = ExtInterval::of(-kInf, bps.front().value.hi);
  } else if (left_edit == 2) {
    br.front() = Branch::none();
    bps.front().value = ExtInterval::of(std::max(-5.0, bps.front().value.lo - 1.0), bps.front().value.hi);
  }
  if (coin(rng) == 1 && (bps.size() >= 2 || !br.front().empty)) {
    br.back() = Branch::none();
    bps.back().value = ExtInterval::of(bps.back().value.lo, kInf);
  }
  if (bps.size() >= 3 && coin(rng) == 0) br[1] = Branch::none();
  return Operator1D(std::move(bps), std::move(br));
}

Outcome criterion1() {
  std::mt19937_64 rng(2024);
  int agree = 0, maximal = 0;
  std::string first_bad;
  const auto grid = grid_points(1, GridSpec{0.05, -6, 6});
  for (int k = 0; k < 200; ++k) {
    const Operator1D u = random_operator1d(rng);
    const bool verdict = check_1d(u).verdict == Verdict::Maximal;
    const bool oracle = brute_force_oracle(sample_graph(u, 0.0125, -12, 12), grid).grid_maximal();
    if (verdict == oracle)
      ++agree;
    else if (first_bad.empty())
      first_bad = " first disagreement at instance " + std::to_string(k) + ":\n" + u.describe();
    if (verdict) ++maximal;
  }
  return {agree == 200, std::to_string(agree) + "/200 agree (" + std::to_string(maximal) + " maximal)" + first_bad};
}

OperatorSpec third_quadrant() { return load_operator_file(fixture("third_quadrant.json")).op; }

Outcome criterion2() {
  const OperatorSpec op = third_quadrant();
  SamplingPlan plan;
  plan.n_random_directions = 40;
  const CheckReport l = check_lohne(op, plan);
  const bool a = l.verdict == Verdict::NotMaximal && l.failed_condition == std::string("cone_condition") &&
                 l.witness && l.witness->points[0].x.norm() == 0.0;
  const CheckReport r = check_line_reduction(op, plan);
  const bool b = r.lines_checked >= 100 && r.lines_passed == r.lines_checked;
  const CheckReport p = check_plane_reduction(op, plan);
  const bool c = p.verdict == Verdict::NotMaximal;
  return {a && b && c, std::string("lohne ") + (a ? "cone_condition at (0, 0)" : "unexpected") + ", " +
                           std::to_string(r.lines_passed) + "/" + std::to_string(r.lines_checked) +
                           " lines pass, plane " + verdict_name(p.verdict)};
}

Outcome criterion3() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dimd(1, 3), pairs(1, 8), small(-2, 2), coord(-8, 8);
  long identity_fail = 0, equivalence_fail = 0, grid_total = 0;
  for (int g = 0; g < 500; ++g) {
    const int d = dimd(rng);
    // Gradients of a convex quadratic with integer Hessian A^T A: dyadic data keeps arithmetic exact.
    Mat a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = small(rng);
    const Mat q = a.transpose() * a;
    Vec shift(d);
    for (int i = 0; i < d; ++i) shift[i] = 0.25 * small(rng);
    std::vector<GraphPair> graph;
    const int m = pairs(rng);
    for (int k = 0; k < m; ++k) {
      Vec x(d);
      for (int i = 0; i < d; ++i) x[i] = 0.25 * coord(rng);
      bool dup = false;
      for (const auto& p : graph) dup = dup || (p.x - x).norm() == 0.0;
      if (dup) continue;
      graph.push_back({x, q * x + shift});
    }
    for (const auto& p : graph)
      if (std::abs(fitzpatrick_value(graph, p).phi - coupling(p)) > 1e-9) ++identity_fail;
    // About 1e4 dyadic lattice points in R^d x R^d.
    const GridSpec grid = d == 1 ? GridSpec{1.0 / 32, -1.5, 1.5} : (d == 2 ? GridSpec{0.5, -2.5, 2.0} : GridSpec{1.0, -2.0, 2.0});
    for (const auto& z : grid_points(d, grid)) {
      ++grid_total;
      double mn = kInf;
      for (const auto& p : graph) mn = std::min(mn, (z.x - p.x).dot(z.xstar - p.xstar));
      const bool lhs = fitzpatrick_value(graph, z).phi <= coupling(z);
      if (lhs != (mn >= 0.0)) ++equivalence_fail;
    }
  }
  return {identity_fail == 0 && equivalence_fail == 0,
          "identity failures " + std::to_string(identity_fail) + ", equivalence failures " +
              std::to_string(equivalence_fail) + " over " + std::to_string(grid_total) + " grid points"};
}

OperatorSpec random_polyhedral(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3), npts(3, 6), npieces(2, 5), small(-2, 2);
  std::uniform_real_distribution<double> u(-2, 2);
  auto polytope = [&]() {
    std::vector<Vec> pts;
    const int n = npts(rng);
    for (int i = 0; i < n; ++i) pts.push_back(make_vec({u(rng), u(rng)}));
    return OperatorSpec::normal_cone(Polyhedron::from_generators(2, pts, {}));
  };
  auto pl = [&]() {
    std::vector<PLPiece> pieces;
    const int n = npieces(rng);
    for (int i = 0; i < n; ++i) pieces.push_back({make_vec({double(small(rng)), double(small(rng))}), double(small(rng))});
    return OperatorSpec::pl_subdifferential(2, pieces);
  };
  switch (kind(rng)) {
    case 0: return polytope();
    case 1: return pl();
    case 2: return OperatorSpec::sum(polytope(), pl());
    default: return translate(polytope(), make_vec({u(rng), u(rng)}));
  }
}

Outcome criterion4() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> unit(0, 1);
  long domain_fail = 0, heredity_fail = 0, pointwise_fail = 0, lines = 0, samples = 0;
  for (int k = 0; k < 50; ++k) {
    const OperatorSpec op = random_polyhedral(rng);
    const DomainSet dom = domain(op);
    const Vec z = relative_interior_point(dom).point;
    for (int l = 0; l < 4; ++l) {
      Vec v = make_vec({g(rng), g(rng)});
      v /= v.norm();
      const Operator1D tr = line_trace(op, z, v);
      ++lines;
      // Domain of the restriction is the preimage of the domain.
      const ExtInterval sec = line_section(dom.hull, z, v).closed;
      const auto near = [](double a, double b) {
        return (std::isinf(a) && a == b) || std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
      };
      if (!near(tr.alpha(), sec.lo) || !near(tr.omega(), sec.hi)) ++domain_fail;
      if (std::isfinite(tr.alpha()) != tr.contains_alpha() || std::isfinite(tr.omega()) != tr.contains_omega())
        ++domain_fail;
      // Condition (F) is inherited at finite end points.
      if (std::isfinite(tr.alpha()) && std::isfinite(tr.value(tr.alpha()).lo)) ++heredity_fail;
      if (std::isfinite(tr.omega()) && std::isfinite(tr.value(tr.omega()).hi)) ++heredity_fail;
      // Pointwise agreement with projected values.
      const double lo = std::isfinite(tr.alpha()) ? tr.alpha() - 1.0 : -5.0;
      const double hi = std::isfinite(tr.omega()) ? tr.omega() + 1.0 : 5.0;
      std::vector<double> params;
      for (const auto& bp : tr.breakpoints()) params.push_back(bp.t);
      while (params.size() < 100) params.push_back(lo + (hi - lo) * unit(rng));
      for (double t : params) {
        ++samples;
        const Polyhedron val = evaluate(op, Vec(z + t * v));
        const ExtInterval want = val.is_empty() ? ExtInterval::none() : project_interval(val, v);
        const ExtInterval got = tr.value(t);
        if (want.empty != got.empty || (!want.empty && (!near(want.lo, got.lo) || !near(want.hi, got.hi))))
          ++pointwise_fail;
      }
    }
  }
  return {domain_fail == 0 && heredity_fail == 0 && pointwise_fail == 0,
          std::to_string(lines) + " lines, " + std::to_string(samples) + " parameters; failures: domain " +
              std::to_string(domain_fail) + ", heredity " + std::to_string(heredity_fail) + ", pointwise " +
              std::to_string(pointwise_fail)};
}

Outcome criterion5() {
  const OperatorSpec ball = OperatorSpec::normal_cone_ball(Vec::Zero(2), 1.0);
  SequenceSpec s;
  s.limit = make_vec({1, 0});
  for (int i = 1; i <= 64; ++i) s.points.push_back(make_vec({std::cos(1.0 / i), std::sin(1.0 / i)}));
  const UscResult usc = usc_test(ball, s.limit, s, {Polyhedron::cone(2, {make_vec({1, 0})}), 0.5});
  const bool a = usc.verdict == SeqVerdict::Falsified && std::abs(usc.distance - 1.0) <= 1e-9;
  const QResult q = q_property_test(ball, s.limit, s, std::nullopt, 0.1);
  const bool b = q.holds && q.nested && s.points.size() - q.tail_start == 32;

  const OperatorSpec interval = OperatorSpec::normal_cone(Polyhedron::box(1, 0, 1));
  SequenceSpec e;
  e.limit = make_vec({0});
  std::vector<Vec> cov;
  for (int i = 1; i <= 32; ++i) {
    e.points.push_back(make_vec({0}));
    cov.push_back(make_vec({-1.0 * i}));
  }
  e.covectors = cov;
  const auto fit = apriori_estimate_fit(interval, make_vec({0.5}), make_vec({0}), e);
  const bool c = fit && fit->gamma >= 0.4;
  char buf[200];
  std::snprintf(buf, sizeof buf, "usc distance %.12f, Q excess %.4f, apriori gamma %s", usc.distance, q.excess,
                fit ? format_number(fit->gamma).c_str() : "none");
  return {a && b && c, buf};
}

bool oracle_confirms(const OperatorSpec& op, const CheckReport& r) {
  if (!r.witness || r.witness->kind != Witness::Kind::RelatedPoint) return false;
  const GraphPair& z = r.witness->points.front();
  const auto graph = testsupport::dense_graph(op, -2, 2, 0.125);
  const GraphMembership member = [&op](const GraphPair& p) { return testsupport::in_graph(op, p); };
  const OracleReport o = brute_force_oracle(graph, {z}, member);
  return o.related_outside == 1;
}

Outcome criterion6() {
  int ok = 0, total = 0;
  std::string bad;
  const char* modes[] = {"line", "plane", "lohne"};
  auto run = [](const OperatorSpec& op, const std::string& mode) {
    if (mode == "line") return check_line_reduction(op);
    if (mode == "plane") return check_plane_reduction(op);
    return check_lohne(op);
  };
  for (const char* name : {"box", "max_xy0", "l1_norm"}) {
    const OperatorSpec op = load_operator_file(fixture(std::string(name) + ".json")).op;
    for (const char* mode : modes) {
      ++total;
      if (exit_code(run(op, mode).verdict) == 0)
        ++ok;
      else
        bad += std::string(" ") + name + "/" + mode;
    }
  }
  for (const char* name : {"box_cut", "box_gap", "max_cut", "max_gap", "l1_cut", "l1_gap"}) {
    const OperatorSpec op = load_operator_file(fixture(std::string(name) + ".json")).op;
    for (const char* mode : modes) {
      ++total;
      const CheckReport r = run(op, mode);
      if (exit_code(r.verdict) == 1 && oracle_confirms(op, r))
        ++ok;
      else
        bad += std::string(" ") + name + "/" + mode;
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " fixture runs as expected" +
                           (bad.empty() ? "" : ";" + bad)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {1, "1-D completeness vs grid oracle", criterion1, 30.0},
      {2, "third-quadrant counterexample", criterion2, 5.0},
      {3, "Fitzpatrick identities", criterion3, 0.0},
      {4, "restriction calculus coherence", criterion4, 0.0},
      {5, "continuity fixtures", criterion5, 0.0},
      {6, "maximal fixtures and mutations", criterion6, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += " (over the time budget)";
    }
    std::printf("[%s] criterion %d: %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
