#include <catch_amalgamated.hpp>

#include "mackeyalg/gdata/gset.hpp"

using namespace mackeyalg;
using namespace mackeyalg::gdata;

TEST_CASE("subgroup classes of small groups", "[gdata]") {
  CHECK(SubgroupLattice(trivial_group()).num_classes() == 1);
  SubgroupLattice c2(cyclic_group(2));
  REQUIRE(c2.num_classes() == 2);
  CHECK(c2.class_order(0) == 1);
  CHECK(c2.class_order(1) == 2);

  SubgroupLattice s3(symmetric_group(3));
  CHECK(s3.num_subgroups() == 6);
  REQUIRE(s3.num_classes() == 4);
  std::vector<int> orders;
  for (std::size_t k = 0; k < 4; ++k) orders.push_back(s3.class_order(k));
  CHECK(orders == std::vector<int>{1, 2, 3, 6});
  CHECK(s3.cls(1).members.size() == 3);
  CHECK(s3.cls(1).weyl_group_order == 1);
  CHECK(s3.cls(2).weyl_group_order == 2);
  CHECK(s3.subconjugate(1, 3));
  CHECK_FALSE(s3.subconjugate(1, 2));

  // classical counts: D4 has 10 subgroups in 8 classes, A4 10 in 5, S4 30 in 11
  SubgroupLattice d4(dihedral_group(4));
  CHECK(d4.num_subgroups() == 10);
  CHECK(d4.num_classes() == 8);
  FiniteGroup a4 = permutation_group({{1, 2, 0, 3}, {0, 2, 3, 1}}, 4);
  REQUIRE(a4.order() == 12);
  SubgroupLattice la4(a4);
  CHECK(la4.num_subgroups() == 10);
  CHECK(la4.num_classes() == 5);
  SubgroupLattice s4(symmetric_group(4));
  CHECK(s4.num_subgroups() == 30);
  CHECK(s4.num_classes() == 11);
}

TEST_CASE("subgroup enumeration respects the order bound", "[gdata]") {
  CHECK_THROWS_AS(SubgroupLattice(symmetric_group(4), 20), BoundExceeded);
  CHECK_NOTHROW(SubgroupLattice(cyclic_group(20), 20));
}

TEST_CASE("class representatives and conjugators", "[gdata]") {
  SubgroupLattice s3(symmetric_group(3));
  const FiniteGroup& g = s3.group();
  for (int id = 0; id < s3.num_subgroups(); ++id) {
    int k = s3.class_of(id);
    REQUIRE(s3.conjugate(id, s3.conjugator(id)) == s3.rep_id(k));
    for (int m : s3.cls(k).members) REQUIRE(s3.subgroup(m) >= s3.cls(k).representative);
  }
  CHECK(g.identity() == 0);
}

TEST_CASE("group table validation", "[gdata]") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), ValidationError);
  CHECK_NOTHROW(FiniteGroup({{0, 1}, {1, 0}}));
}

TEST_CASE("orbit decomposition", "[gdata]") {
  FiniteGroup c2 = cyclic_group(2);
  SubgroupLattice lat(c2);
  GSet regular(c2, 2, {{0, 1}, {1, 0}});
  CHECK(orbit_decompose(regular, lat) == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(orbit_decompose(one_point(c2), lat) == std::vector<std::pair<int, int>>{{1, 1}});
  GSet three = GSet::from_partial(c2, 3, {{1, {1, 0, 2}}});
  CHECK(orbit_decompose(three, lat) == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});

  SubgroupLattice s3(symmetric_group(3));
  for (std::size_t k = 0; k < s3.num_classes(); ++k)
    for (std::size_t j = 0; j < s3.num_classes(); ++j) {
      CosetSpace a = coset_space(s3.group(), s3.cls(k).representative);
      CosetSpace b = coset_space(s3.group(), s3.cls(j).representative);
      GSet p = product(s3.group(), a.set, b.set);
      int total = 0;
      for (auto [c, m] : orbit_decompose(p, s3)) total += m * (6 / s3.class_order(c));
      REQUIRE(total == p.size());
    }
}

TEST_CASE("products, pullbacks and fixed points", "[gdata]") {
  FiniteGroup c2 = cyclic_group(2);
  SubgroupLattice lat(c2);
  GSet free_orbit = coset_space(c2, {0}).set;
  GSet sq = product(c2, free_orbit, free_orbit);
  CHECK(sq.size() == 4);
  CHECK(orbit_decompose(sq, lat) == std::vector<std::pair<int, int>>{{0, 2}});
  CHECK(orbit_decompose(product(c2, free_orbit, one_point(c2)), lat) == orbit_decompose(free_orbit, lat));

  Pullback diag = pullback(c2, free_orbit, {0, 1}, free_orbit, {0, 1}, free_orbit);
  CHECK(diag.set.size() == 2);
  CHECK(diag.points == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});

  CHECK(fixed_points(free_orbit, {0, 1}) == 0);
  CHECK(fixed_points(free_orbit, {0}) == 2);

  CHECK_THROWS_AS(pullback(c2, free_orbit, {0, 0}, free_orbit, {0, 1}, free_orbit), ValidationError);
}

TEST_CASE("fixed points are conjugation invariant", "[gdata]") {
  SubgroupLattice s3(symmetric_group(3));
  GSet x = coset_space(s3.group(), s3.cls(1).representative).set;
  GSet xx = product(s3.group(), x, x);
  for (std::size_t k = 0; k < s3.num_classes(); ++k) {
    int expect = fixed_points(xx, s3.cls(k).representative);
    for (int m : s3.cls(k).members) REQUIRE(fixed_points(xx, s3.subgroup(m)) == expect);
  }
}

TEST_CASE("G-set validation", "[gdata]") {
  FiniteGroup c3 = cyclic_group(3);
  CHECK_THROWS_AS(GSet::from_partial(c3, 2, {{1, {1, 0}}}), ValidationError);
  CHECK_NOTHROW(GSet::from_partial(c3, 3, {{1, {1, 2, 0}}}));
}
