#include <catch_amalgamated.hpp>

#include <random>

#include "mackeyalg/burnside/ring.hpp"

using namespace mackeyalg;
using namespace mackeyalg::burnside;
using zmod::IntMatrix;

TEST_CASE("hom bases of small objects", "[burnside]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  const int pt = c->point_object();
  const int free_orbit = c->orbit_object(0);
  CHECK(c->hom_rank(pt, pt) == 2);
  CHECK(c->hom_rank(free_orbit, pt) == 1);
  CHECK(c->hom_rank(pt, free_orbit) == 1);
  const int empty = c->intern(gdata::GSet::trusted(0, std::vector<std::vector<int>>(2)));
  CHECK(c->hom_rank(empty, free_orbit) == 0);
  CHECK(c->hom_rank(free_orbit, free_orbit) == 2);
}

TEST_CASE("Burnside ring of C2", "[burnside]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  BurnsideElement t = ring_orbit(*c, 0);
  CHECK(ring_multiply(*c, t, t) == IntVector{2, 0});
  CHECK(marks(*c, t) == IntVector{2, 0});
  CHECK(marks(*c, ring_one(*c)) == IntVector{1, 1});
  CHECK(table_of_marks(*c) == IntMatrix{{1, 0}, {1, 2}});
  auto us = units(*c);
  REQUIRE(us.size() == 4);
  for (auto& u : us) CHECK(ring_multiply(*c, u, u) == ring_one(*c));
  BurnsideElement one_minus_t{-1, 1};
  CHECK(std::find(us.begin(), us.end(), one_minus_t) != us.end());
  CHECK(ring_multiply(*c, one_minus_t, one_minus_t) == ring_one(*c));
}

TEST_CASE("Burnside rings of C3 and S3", "[burnside]") {
  auto c3 = GContext::make(gdata::cyclic_group(3));
  CHECK(ring_multiply(*c3, ring_orbit(*c3, 0), ring_orbit(*c3, 0)) == IntVector{3, 0});
  CHECK(units(*c3).size() == 2);

  auto s3 = GContext::make(gdata::symmetric_group(3));
  // marks of the orbits G/e, G/C2, G/C3, G/G at e, C2, C3, G
  IntMatrix expected{{6, 3, 2, 1}, {0, 1, 0, 1}, {0, 0, 2, 1}, {0, 0, 0, 1}};
  CHECK(mark_matrix(*s3) == expected);
  // sign vectors solvable over the mark matrix above: 8 of the 16
  CHECK(units(*s3).size() == 8);
  // [G/C2]^2 = [G/e] + [G/C2]
  CHECK(ring_multiply(*s3, ring_orbit(*s3, 1), ring_orbit(*s3, 1)) == IntVector{1, 1, 0, 0});
}

TEST_CASE("res after tr is the sum of conjugations", "[burnside]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  const int pt = c->point_object();
  const int o = c->orbit_object(0);
  gdata::GMap to_pt{0, 0};
  BurnsideMorphism R{o, pt, c->restriction_span(o, pt, to_pt)};
  BurnsideMorphism T{pt, o, c->transfer_span(o, pt, to_pt)};
  BurnsideMorphism composite = compose(*c, T, R);
  BurnsideMorphism id = BurnsideMorphism::identity(*c, o);
  BurnsideMorphism swap{o, o, c->restriction_span(o, o, {1, 0})};
  CHECK(composite == id + swap);
  CHECK_FALSE(id == swap);
}

TEST_CASE("composition is associative and unital", "[burnside]") {
  auto c = GContext::make(gdata::symmetric_group(3));
  std::vector<int> objs;
  for (std::size_t k = 0; k < c->num_classes(); ++k) objs.push_back(c->orbit_object(k));
  objs.push_back(c->product_object(c->orbit_object(1), c->orbit_object(2)));
  std::mt19937 rng(1);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (int trial = 0; trial < 40; ++trial) {
    int w = objs[pick(objs.size())], x = objs[pick(objs.size())], y = objs[pick(objs.size())],
        z = objs[pick(objs.size())];
    if (!c->hom_rank(w, x) || !c->hom_rank(x, y) || !c->hom_rank(y, z)) continue;
    auto f = BurnsideMorphism::basis(*c, w, x, pick(c->hom_rank(w, x)));
    auto g = BurnsideMorphism::basis(*c, x, y, pick(c->hom_rank(x, y)));
    auto h = BurnsideMorphism::basis(*c, y, z, pick(c->hom_rank(y, z)));
    REQUIRE(compose(*c, h, compose(*c, g, f)) == compose(*c, compose(*c, h, g), f));
    REQUIRE(compose(*c, BurnsideMorphism::identity(*c, x), f) == f);
    REQUIRE(compose(*c, f, BurnsideMorphism::identity(*c, w)) == f);
  }
}

TEST_CASE("hom ranks are symmetric", "[burnside]") {
  auto c = GContext::make(gdata::symmetric_group(3));
  std::vector<int> objs{c->point_object()};
  for (std::size_t k = 0; k < c->num_classes(); ++k) objs.push_back(c->orbit_object(k));
  objs.push_back(c->product_object(c->orbit_object(1), c->orbit_object(1)));
  for (int x : objs)
    for (int y : objs) REQUIRE(c->hom_rank(x, y) == c->hom_rank(y, x));
}

TEST_CASE("marks are multiplicative", "[burnside]") {
  for (auto g : {gdata::cyclic_group(2), gdata::cyclic_group(4), gdata::symmetric_group(3)}) {
    auto c = GContext::make(g);
    const std::size_t n = c->num_classes();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        IntVector a = ring_orbit(*c, i), b = ring_orbit(*c, j);
        IntVector ma = marks(*c, a), mb = marks(*c, b), mab = marks(*c, ring_multiply(*c, a, b));
        for (std::size_t k = 0; k < n; ++k) REQUIRE(mab[k] == ma[k] * mb[k]);
      }
    auto us = units(*c);
    for (auto& u : us)
      for (auto& v : us) {
        IntVector uv = ring_multiply(*c, u, v);
        REQUIRE(std::find(us.begin(), us.end(), uv) != us.end());
      }
  }
}

TEST_CASE("trivial group", "[burnside]") {
  auto c = GContext::make(gdata::trivial_group());
  CHECK(units(*c) == std::vector<BurnsideElement>{{1}, {-1}});
}
