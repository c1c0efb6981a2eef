#include "doctest.h"
#include "support.hpp"

#include "monokit/geometry.hpp"

#include <cmath>

using namespace monokit;
using testsupport::brute_vertices;
using testsupport::random_vec;

namespace {

Polyhedron third_quadrant() {
  return Polyhedron::from_h(2, {{make_vec({1, 0}), 0}, {make_vec({0, 1}), 0}});
}

bool cone_equals(const Polyhedron& a, const Polyhedron& b) { return a.same_set(b); }

}  // namespace

TEST_CASE("box vertices agree with subset enumeration") {
  const Polyhedron box = Polyhedron::box(3, 0, 1);
  CHECK(box.vertices().size() == 8);
  CHECK(box.rays().empty());
  CHECK(testsupport::same_point_set(box.vertices(), brute_vertices(3, box.rows()), 1e-9));
}

TEST_CASE("random bounded polytopes: vertices and projections") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 3;
    std::vector<Halfspace> rows;
    for (int i = 0; i < d; ++i) {
      rows.push_back({Vec::Unit(d, i), 1.0});
      rows.push_back({-Vec::Unit(d, i), 1.0});
    }
    for (int k = 0; k < 4; ++k) rows.push_back({random_vec(rng, d, -1, 1), 0.5});
    const Polyhedron p = Polyhedron::from_h(d, rows);
    const auto brute = brute_vertices(d, p.rows());
    REQUIRE(!p.is_empty());
    CHECK(testsupport::same_point_set(p.vertices(), brute, 1e-7));
    for (int k = 0; k < 5; ++k) {
      const Vec v = random_vec(rng, d, -2, 2);
      double lo = kInf, hi = -kInf;
      for (const auto& x : brute) lo = std::min(lo, v.dot(x)), hi = std::max(hi, v.dot(x));
      const ExtInterval iv = project_interval(p, v);
      CHECK(iv.lo == doctest::Approx(lo).epsilon(1e-9));
      CHECK(iv.hi == doctest::Approx(hi).epsilon(1e-9));
    }
    // H -> V -> H round trip describes the same set.
    const Polyhedron q = Polyhedron::from_generators(d, p.vertices(), p.rays());
    CHECK(q.same_set(p));
  }
}

TEST_CASE("emptiness is detected") {
  const Polyhedron p = Polyhedron::from_h(2, {{make_vec({1, 0}), -1}, {make_vec({-1, 0}), -1}});
  CHECK(p.is_empty());
  CHECK_THROWS_AS(project_interval(p, make_vec({1, 0})), Error);
  CHECK_THROWS_AS(Polyhedron::from_h(2, {{make_vec({0, 0}), 1}}), Error);
}

TEST_CASE("normal cone examples") {
  const Polyhedron box = Polyhedron::box(2, 0, 1);
  CHECK(cone_equals(normal_cone(box, make_vec({0.5, 0.5})), Polyhedron::point(Vec::Zero(2))));
  const Polyhedron q1 = Polyhedron::cone(2, {make_vec({1, 0}), make_vec({0, 1})});
  CHECK(cone_equals(normal_cone(third_quadrant(), Vec::Zero(2)), q1));
  CHECK(cone_equals(normal_cone(box, make_vec({1, 0.3})), Polyhedron::cone(2, {make_vec({1, 0})})));
  const Polyhedron vert = normal_cone(box, make_vec({1, 1}));
  CHECK(vert.rays().size() == 2);
  CHECK_THROWS_AS(normal_cone(box, make_vec({2, 0})), Error);
}

TEST_CASE("tangent cone examples and polarity") {
  const Polyhedron box = Polyhedron::box(2, 0, 1);
  CHECK(tangent_cone(box, make_vec({0.5, 0.5})).same_set(Polyhedron::whole(2)));
  CHECK(tangent_cone(third_quadrant(), Vec::Zero(2)).same_set(third_quadrant()));
  const Polyhedron half = Polyhedron::from_h(1, {{make_vec({-1}), 0}});
  CHECK(tangent_cone(half, make_vec({0})).same_set(half));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 3;
    std::vector<Vec> gens;
    for (int k = 0; k < d + 1; ++k) gens.push_back(random_vec(rng, d, -1, 1));
    const Polyhedron k = Polyhedron::cone(d, gens);
    CHECK(polar(polar(k)).same_set(k));
  }
  for (const Vec& x : {make_vec({1, 1}), make_vec({0, 0.4}), make_vec({0.2, 0.7})})
    CHECK(tangent_cone(box, x).same_set(polar(normal_cone(box, x))));
}

TEST_CASE("project_interval examples") {
  const Polyhedron ray = Polyhedron::cone(2, {make_vec({1, 1})});
  const ExtInterval a = project_interval(ray, make_vec({1, 0}));
  CHECK(a.lo == doctest::Approx(0));
  CHECK(a.hi == kInf);
  const Polyhedron seg = Polyhedron::from_generators(2, {make_vec({-1, 0}), make_vec({1, 0})}, {});
  const ExtInterval b = project_interval(seg, make_vec({1, 0}));
  CHECK(b.lo == doctest::Approx(-1));
  CHECK(b.hi == doctest::Approx(1));
  const Polyhedron simplex = Polyhedron::from_h(
      2, {{make_vec({1, 1}), 1}, {make_vec({-1, -1}), -1}, {make_vec({-1, 0}), 0}, {make_vec({0, -1}), 0}});
  const ExtInterval c = project_interval(simplex, make_vec({2, 0}));
  CHECK(c.lo == doctest::Approx(0));
  CHECK(c.hi == doctest::Approx(2));
}

TEST_CASE("support interiority") {
  auto check_cert = [](const Polyhedron& a, const SupportCertificate& s) {
    std::mt19937_64 rng(3);
    // Sample points of A and check the certified inequality.
    for (int k = 0; k < 200; ++k) {
      Vec x = Vec::Zero(a.dim());
      std::uniform_real_distribution<double> u(0, 3);
      for (const auto& r : a.rays()) x += u(rng) * r;
      double total = 0;
      Vec conv = Vec::Zero(a.dim());
      std::vector<double> w;
      for (std::size_t i = 0; i < a.vertices().size(); ++i) w.push_back(u(rng) + 1e-3), total += w.back();
      for (std::size_t i = 0; i < a.vertices().size(); ++i) conv += (w[i] / total) * a.vertices()[i];
      x += conv;
      CHECK(s.y.dot(x) >= x.norm() + s.beta - 1e-9);
    }
  };
  const Polyhedron q1 = Polyhedron::cone(2, {make_vec({1, 0}), make_vec({0, 1})});
  auto c1 = support_interiority(q1);
  REQUIRE(c1.has_value());
  check_cert(q1, *c1);
  auto c0 = support_interiority(Polyhedron::point(Vec::Zero(2)));
  REQUIRE(c0.has_value());
  CHECK(c0->beta <= 1e-12);
  const Polyhedron line = Polyhedron::cone(2, {make_vec({1, 0}), make_vec({-1, 0})});
  CHECK_FALSE(support_interiority(line).has_value());
  CHECK_THROWS_AS(support_interiority(Polyhedron::empty(2)), Error);
}

TEST_CASE("near convexity") {
  DomainSet box = DomainSet::closed(Polyhedron::box(2, 0, 1));
  CHECK(nearly_convex(box).nearly_convex);
  CHECK(nearly_convex(box).ri_dim == 2);
  box.included[0] = false;
  CHECK(nearly_convex(box).nearly_convex);
  CHECK_FALSE(box.contains(make_vec({1, 0.5})));
  CHECK(box.contains(make_vec({0.99, 0.5})));
  CHECK_FALSE(nearly_convex(DomainSet::closed(Polyhedron::empty(2))).nearly_convex);
  DomainSet holed = DomainSet::closed(Polyhedron::box(2, 0, 1));
  holed.holes.push_back(make_vec({0.5, 0.5}));
  CHECK_FALSE(nearly_convex(holed).nearly_convex);
}

TEST_CASE("relative interior points") {
  const auto a = relative_interior_point(DomainSet::closed(Polyhedron::box(1, 0, 1)));
  CHECK(a.slack > 0);
  CHECK(a.point[0] > 0);
  CHECK(a.point[0] < 1);
  const Polyhedron seg = Polyhedron::from_generators(2, {make_vec({0, 0}), make_vec({1, 0})}, {});
  const auto b = relative_interior_point(DomainSet::closed(seg));
  CHECK(b.slack > 0);
  CHECK(std::abs(b.point[1]) < 1e-9);
  CHECK(b.point[0] > 0);
  CHECK(b.point[0] < 1);
  const auto c = relative_interior_point(DomainSet::closed(third_quadrant()));
  CHECK(c.point[0] < 0);
  CHECK(c.point[1] < 0);
  CHECK_THROWS_AS(relative_interior_point(DomainSet::closed(Polyhedron::empty(2))), Error);
}

TEST_CASE("distance") {
  const Polyhedron box = Polyhedron::box(2, 0, 1);
  CHECK(distance(box, make_vec({2, 0.5})) == doctest::Approx(1.0));
  CHECK(distance(box, make_vec({2, 2})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance(box, make_vec({0.3, 0.3})) == 0.0);
  const Polyhedron ray = Polyhedron::cone(2, {make_vec({1, 0})});
  CHECK(distance(ray, make_vec({3, 2})) == doctest::Approx(2.0));
  CHECK(distance(ray, make_vec({-3, 4})) == doctest::Approx(5.0));
}

TEST_CASE("line sections") {
  const Polyhedron box = Polyhedron::box(2, 0, 1);
  const LineSection s = line_section(box, make_vec({0.5, 0.5}), make_vec({1, 0}));
  CHECK(s.closed.lo == doctest::Approx(-0.5));
  CHECK(s.closed.hi == doctest::Approx(0.5));
  CHECK(s.meets_relative_interior());
  const LineSection edge = line_section(box, make_vec({0, 0.5}), make_vec({0, 1}));
  CHECK_FALSE(edge.closed.empty);
  CHECK_FALSE(edge.meets_relative_interior());
  const LineSection miss = line_section(box, make_vec({3, 0}), make_vec({0, 1}));
  CHECK(miss.closed.empty);
}
