#include "doctest.h"
#include "support.hpp"

#include "monokit/fitzpatrick.hpp"
#include "monokit/oracle.hpp"

using namespace monokit;

namespace {

GraphPair pair1(double x, double s) { return {make_vec({x}), make_vec({s})}; }

std::vector<GraphPair> lattice_grid(double lo, double hi, double step) {
  return grid_points(1, GridSpec{step, lo, hi});
}

}  // namespace

TEST_CASE("fitzpatrick values") {
  const std::vector<GraphPair> origin{pair1(0, 0)};
  CHECK(fitzpatrick_value(origin, pair1(3, -2)).phi == 0.0);
  const std::vector<GraphPair> two{pair1(0, 0), pair1(1, 1)};
  const FitzValue a = fitzpatrick_value(two, pair1(1, 1));
  CHECK(a.phi == doctest::Approx(1.0));
  CHECK(a.c == doctest::Approx(1.0));
  CHECK(a.argmax == 1);
  const FitzValue b = fitzpatrick_value(two, pair1(2, 2));
  CHECK(b.phi == doctest::Approx(3.0));
  CHECK(b.c == doctest::Approx(4.0));
  CHECK_THROWS_AS(fitzpatrick_value({}, pair1(0, 0)), Error);
}

TEST_CASE("monotone relation queries") {
  const std::vector<GraphPair> two{pair1(0, 0), pair1(1, 1)};
  CHECK(is_monotonically_related(two, pair1(2, 2)).related);
  CHECK(is_monotonically_related(two, pair1(0.5, 0.5)).related);
  const MRVerdict v = is_monotonically_related({pair1(0, 0)}, pair1(1, -1));
  CHECK_FALSE(v.related);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == 0);
  CHECK_THROWS_AS(is_monotonically_related({}, pair1(0, 0)), Error);
}

TEST_CASE("NI sampling") {
  // Identity sampled on the whole grid range: every grid point has a graph
  // pair at the same abscissa, so phi >= c there.
  std::vector<GraphPair> identity;
  for (int k = -8; k <= 8; ++k) identity.push_back(pair1(0.25 * k, 0.25 * k));
  const auto grid = lattice_grid(-2, 2, 0.25);
  CHECK_FALSE(ni_sample(identity, grid).falsified());

  // A short sample is not of NI type: violations are exactly the points
  // strictly related to every pair.
  const std::vector<GraphPair> segment{pair1(0, 0), pair1(1, 2)};
  const NIReport rep = ni_sample(segment, grid);
  std::vector<std::size_t> expected;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m = std::min(coupling_difference(grid[i], segment[0]), coupling_difference(grid[i], segment[1]));
    if (m > 1e-9) expected.push_back(i);
  }
  CHECK(rep.violations == expected);
  CHECK(rep.falsified());

  const NIReport single = ni_sample({pair1(0, 0)}, {pair1(1, 1)});
  CHECK(single.falsified());
}

TEST_CASE("phi equals c on monotone graphs and is convex on segments") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 3;
    // Gradients of a convex quadratic give a monotone graph.
    Mat a = Mat::Random(d, d);
    const Mat q = a * a.transpose();
    std::vector<GraphPair> g;
    for (int k = 0; k < 6; ++k) {
      Vec x = testsupport::random_vec(rng, d, -1, 1);
      g.push_back({x, q * x});
    }
    for (const auto& p : g) CHECK(fitzpatrick_value(g, p).phi == doctest::Approx(coupling(p)).epsilon(1e-9));
    for (int k = 0; k < 20; ++k) {
      GraphPair z{testsupport::random_vec(rng, d, -2, 2), testsupport::random_vec(rng, d, -2, 2)};
      GraphPair w{testsupport::random_vec(rng, d, -2, 2), testsupport::random_vec(rng, d, -2, 2)};
      GraphPair m{0.5 * (z.x + w.x), 0.5 * (z.xstar + w.xstar)};
      CHECK(fitzpatrick_value(g, m).phi <=
            0.5 * (fitzpatrick_value(g, z).phi + fitzpatrick_value(g, w).phi) + 1e-9);
    }
  }
}

TEST_CASE("oracle examples") {
  // Identity sampled at half the grid step is grid-maximal.
  std::vector<GraphPair> id;
  for (int k = -20; k <= 20; ++k) id.push_back(pair1(0.05 * k, 0.05 * k));
  const auto grid = lattice_grid(-1, 1, 0.1);
  CHECK(brute_force_oracle(id, grid).grid_maximal());

  // At equal steps the lattice misses the pairs between samples.
  std::vector<GraphPair> same_step;
  for (int k = -10; k <= 10; ++k) same_step.push_back(pair1(0.1 * k, 0.1 * k));
  CHECK_FALSE(brute_force_oracle(same_step, grid).grid_maximal());

  const auto coarse = lattice_grid(-1, 1, 0.5);
  const OracleReport single = brute_force_oracle({pair1(0, 0)}, coarse);
  CHECK_FALSE(single.grid_maximal());
  std::size_t related = 0;
  for (const auto& z : coarse)
    if (coupling(z) >= 0) ++related;
  CHECK(single.in_graph + single.related_outside == related);

  // Subdifferential of |.| discretised at half the grid step, beyond the grid.
  std::vector<GraphPair> absg;
  for (int k = -80; k <= 80; ++k) {
    const double t = 0.05 * k;
    if (k < 0) absg.push_back(pair1(t, -1));
    if (k > 0) absg.push_back(pair1(t, 1));
  }
  for (int j = -20; j <= 20; ++j) absg.push_back(pair1(0, 0.05 * j));
  CHECK(brute_force_oracle(absg, lattice_grid(-2, 2, 0.1)).grid_maximal());
}

TEST_CASE("sweep oracle agrees with the naive oracle") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> k(-20, 20);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<GraphPair> g;
    for (int i = 0; i < 15; ++i) g.push_back(pair1(0.1 * k(rng), 0.1 * k(rng)));
    const auto grid = lattice_grid(-2, 2, 0.2);
    const OracleReport fast = brute_force_oracle(g, grid);
    const OracleReport slow = brute_force_oracle_naive(g, grid);
    CHECK(fast.classes == slow.classes);
  }
}

TEST_CASE("grid caps") {
  CHECK_THROWS_AS(grid_points(2, GridSpec{0.01, -1, 1}), Error);
  CHECK(GridSpec{0.5, -1, 1}.per_axis() == 5);
}
