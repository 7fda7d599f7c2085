#include <catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <random>

#include "mackeyalg/zmod/abelian_group.hpp"
#include "mackeyalg/zmod/smith.hpp"

using namespace mackeyalg::zmod;

namespace {

// Brute force over the elements of a finite coordinate group.
void for_each_element(const AbGroup& g, const std::function<void(const IntVector&)>& fn) {
  IntVector x(g.ngens());
  for (;;) {
    fn(x);
    std::size_t i = 0;
    while (i < x.size()) {
      x[i] += 1;
      if (x[i] < g.orders[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == x.size()) return;
  }
}

// Isomorphism invariant of a finite abelian group: n -> #{x : n x = 0} for n <= bound.
std::vector<long> killed_counts(const std::function<long(long)>& count, long bound) {
  std::vector<long> c;
  for (long n = 1; n <= bound; ++n) c.push_back(count(n));
  return c;
}

std::vector<long> invariants(const AbGroup& g, long bound) {
  return killed_counts(
      [&](long n) {
        long k = 0;
        for_each_element(g, [&](const IntVector& x) {
          IntVector y = x;
          for (auto& v : y) v *= n;
          if (g.is_zero(y)) ++k;
        });
        return k;
      },
      bound);
}

AbGroup random_finite_group(std::mt19937& rng, int max_gens, int max_order) {
  std::uniform_int_distribution<int> ng(0, max_gens), ord(2, max_order);
  IntVector o;
  int n = ng(rng);
  for (int i = 0; i < n; ++i) o.push_back(ord(rng));
  return AbGroup(o);
}

GroupHom random_hom(std::mt19937& rng, const AbGroup& a, const AbGroup& b) {
  // images of generators chosen so that relations are respected
  IntMatrix m(b.ngens(), a.ngens());
  std::uniform_int_distribution<int> coin(0, 11);
  for (std::size_t p = 0; p < a.ngens(); ++p)
    for (std::size_t q = 0; q < b.ngens(); ++q) {
      Integer g = a.orders[p] == 0 ? b.orders[q] : gcd(a.orders[p], b.orders[q]);
      if (b.orders[q] == 0 && a.orders[p] != 0) continue;
      Integer step = b.orders[q] == 0 ? Integer(1) : Integer(b.orders[q] / g);
      m(q, p) = step * coin(rng);
    }
  return GroupHom(a, b, m);
}

}  // namespace

TEST_CASE("smith normal form of small matrices", "[zmod][smith]") {
  IntMatrix m{{2, 4}, {6, 8}};
  SmithForm s = smith_normal_form(m);
  CHECK(s.diagonal() == IntVector{2, 4});
  CHECK(s.U * m * s.V == s.D);
  CHECK(s.U * s.U_inv == IntMatrix::identity(2));
  CHECK(s.V * s.V_inv == IntMatrix::identity(2));

  IntMatrix w{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  CHECK(smith_normal_form(w).diagonal() == IntVector{2, 6, 12});

  IntMatrix z(2, 3);
  SmithForm sz = smith_normal_form(z);
  CHECK(sz.rank() == 0);
  CHECK(sz.D.is_zero());
}

TEST_CASE("smith normal form invariants on random matrices", "[zmod][smith]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 6), ent(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = ent(rng);
    SmithForm s = smith_normal_form(m);
    REQUIRE(s.U * m * s.V == s.D);
    REQUIRE(s.U * s.U_inv == IntMatrix::identity(r));
    REQUIRE(s.V_inv * s.V == IntMatrix::identity(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) REQUIRE(s.D(i, j) == 0);
    IntVector d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      REQUIRE(d[i] >= 0);
      if (d[i] == 0)
        REQUIRE(d[i + 1] == 0);
      else
        REQUIRE(d[i + 1] % d[i] == 0);
    }
    if (r == c) REQUIRE(abs(determinant(m)) == abs(determinant(s.D)));
  }
}

TEST_CASE("large entries stay exact", "[zmod][smith]") {
  IntMatrix m(2, 2);
  Integer big = Integer(1) << 100;
  m(0, 0) = big;
  m(0, 1) = big + 1;
  m(1, 0) = big - 1;
  m(1, 1) = big;
  // det = big^2 - (big^2 - 1) = 1
  CHECK(smith_normal_form(m).diagonal() == IntVector{1, 1});
  CHECK(presented_group(2, {IntVector{big * 6, 0}, IntVector{0, 4}}).orders == IntVector{4, big * 6});
}

TEST_CASE("presented groups come out canonical", "[zmod][group]") {
  CHECK(presented_group(2, {IntVector{2, 0}, IntVector{0, 3}}).orders == IntVector{6});
  CHECK(presented_group(3, {IntVector{2, 4, 4}, IntVector{-6, 6, 12}, IntVector{10, -4, -16}}).orders ==
        IntVector{2, 6, 12});
  CHECK(presented_group(2, {IntVector{2, 0}}).orders == IntVector{2, 0});
  CHECK(presented_group(1, {IntVector{1}}).orders.empty());
  CHECK(canonicalize(AbGroup({0, 4, 6})).group.orders == IntVector{2, 12, 0});
}

TEST_CASE("kernel, cokernel and image against brute force", "[zmod][group]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    AbGroup a = random_finite_group(rng, 3, 6);
    AbGroup b = random_finite_group(rng, 3, 6);
    GroupHom f = random_hom(rng, a, b);
    REQUIRE(f.is_well_defined());

    long ker = 0;
    std::map<IntVector, int> img;
    for_each_element(a, [&](const IntVector& x) {
      IntVector y = f.apply(x);
      if (b.is_zero(y)) ++ker;
      img[y] = 1;
    });
    SubquotientGroup k = kernel(f);
    REQUIRE(k.group().order() == ker);
    REQUIRE(k.group().is_canonical());
    for (std::size_t i = 0; i < k.group().ngens(); ++i) REQUIRE(b.is_zero(f.apply(k.lift(i))));
    REQUIRE(image(f).group().order() == Integer(img.size()));
    SubquotientGroup c = cokernel(f);
    REQUIRE(c.group().order() * Integer(img.size()) == b.order());

    // kernel generators lift consistently
    for (std::size_t i = 0; i < k.group().ngens(); ++i) REQUIRE(k.coords(k.lift(i)) == k.group().basis_vector(i));
    // cokernel projection kills the image
    GroupHom proj = c.projection();
    REQUIRE(compose(proj, f).is_zero());
  }
}

TEST_CASE("kernel of maps between free groups", "[zmod][group]") {
  // Z^3 -> Z^2, (x,y,z) -> (x+y, y+z)
  GroupHom f(AbGroup::free(3), AbGroup::free(2), IntMatrix{{1, 1, 0}, {0, 1, 1}});
  SubquotientGroup k = kernel(f);
  CHECK(k.group().orders == IntVector{0});
  CHECK(f.apply(k.lift(0)) == IntVector{0, 0});
  // Z -> Z, x -> 4x: cokernel Z/4
  GroupHom g(AbGroup::free(1), AbGroup::free(1), IntMatrix{{4}});
  CHECK(cokernel(g).group().orders == IntVector{4});
  CHECK(kernel(g).group().is_trivial());
}

TEST_CASE("homology of a composable pair", "[zmod][group]") {
  // Z --2--> Z --0--> Z/2 ; and Z/4 --2--> Z/4 --2--> Z/4
  GroupHom f(AbGroup::free(1), AbGroup::free(1), IntMatrix{{2}});
  GroupHom z(AbGroup::free(1), AbGroup({2}), IntMatrix{{0}});
  CHECK(homology(f, z).group().orders == IntVector{2});
  GroupHom t(AbGroup({4}), AbGroup({4}), IntMatrix{{2}});
  CHECK(homology(t, t).group().is_trivial());
  GroupHom u(AbGroup({8}), AbGroup({8}), IntMatrix{{4}});
  // ker(4) = <2> of order 4, im(4) = <4> of order 2
  CHECK(homology(u, u).group().orders == IntVector{2});
}

TEST_CASE("solve finds preimages exactly when they exist", "[zmod][group]") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    AbGroup a = random_finite_group(rng, 2, 6);
    AbGroup b = random_finite_group(rng, 2, 6);
    GroupHom f = random_hom(rng, a, b);
    std::map<IntVector, int> img;
    for_each_element(a, [&](const IntVector& x) { img[f.apply(x)] = 1; });
    for_each_element(b, [&](const IntVector& y) {
      auto x = solve(f, y);
      REQUIRE(x.has_value() == (img.count(b.normalize(y)) > 0));
      if (x) REQUIRE(f.apply(*x) == b.normalize(y));
    });
  }
}

TEST_CASE("tensor and hom agree with brute force", "[zmod][group]") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    AbGroup a = random_finite_group(rng, 2, 8);
    AbGroup b = random_finite_group(rng, 2, 8);
    // #{phi : n phi = 0} = prod_p #{y in B : a_p y = 0, n y = 0}
    auto hom_inv = killed_counts(
        [&](long n) {
          long total = 1;
          for (auto& ap : a.orders) {
            long k = 0;
            for_each_element(b, [&](const IntVector& y) {
              IntVector u = y, v = y;
              for (auto& e : u) e *= ap;
              for (auto& e : v) e *= n;
              if (b.is_zero(u) && b.is_zero(v)) ++k;
            });
            total *= k;
          }
          return total;
        },
        16);
    HomGroup h = hom_group(a, b);
    REQUIRE(invariants(h.group, 16) == hom_inv);
    REQUIRE(invariants(hom_group_by_kernel(a, b), 16) == hom_inv);
    // finite groups: A (x) B is isomorphic to Hom(A, B)
    REQUIRE(invariants(tensor(a, b).group, 16) == hom_inv);

    for_each_element(h.group, [&](const IntVector& c) {
      GroupHom phi = h.to_hom(c);
      REQUIRE(phi.is_well_defined());
      REQUIRE(h.from_matrix(phi.mat) == c);
    });
  }
  CHECK(hom_group(AbGroup::free(1), AbGroup({3})).group.orders == IntVector{3});
  CHECK(hom_group(AbGroup({3}), AbGroup::free(1)).group.is_trivial());
  CHECK(tensor(AbGroup::free(1), AbGroup({5})).group.orders == IntVector{5});
}

TEST_CASE("documented small cases", "[zmod]") {
  CHECK(smith_normal_form(IntMatrix::identity(2)).D == IntMatrix::identity(2));
  CHECK(smith_normal_form(IntMatrix{{0}}).D == IntMatrix{{0}});

  GroupHom twice(AbGroup::free(1), AbGroup::free(1), IntMatrix{{2}});
  CHECK(kernel(twice).group().is_trivial());
  CHECK(cokernel(twice).group().orders == IntVector{2});
  CHECK(kernel(GroupHom(AbGroup({4}), AbGroup({4}), IntMatrix{{2}})).group().orders == IntVector{2});
  CHECK(kernel(GroupHom(AbGroup::free(2), AbGroup::free(1), IntMatrix{{1, 0}})).group().orders == IntVector{0});
  CHECK(cokernel(GroupHom(AbGroup::free(1), AbGroup::free(1), IntMatrix{{0}})).group().orders == IntVector{0});
  CHECK(cokernel(GroupHom(AbGroup::free(2), AbGroup::free(2), IntMatrix{{2, 0}, {0, 3}})).group().orders ==
        IntVector{6});

  CHECK(solve(twice, {4}) == IntVector{2});
  CHECK_FALSE(solve(twice, {3}).has_value());
  CHECK(solve(GroupHom(AbGroup::free(1), AbGroup({2}), IntMatrix{{1}}), {1}) == IntVector{1});

  CHECK(tensor(AbGroup({2}), AbGroup({3})).group.is_trivial());
  CHECK(tensor(AbGroup({4}), AbGroup({6})).group.orders == IntVector{2});
  CHECK(hom_group(AbGroup({2}), AbGroup::free(1)).group.is_trivial());
}

TEST_CASE("rank is additive over kernel and image", "[zmod]") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> dim(1, 5), ent(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t m = dim(rng), n = dim(rng);
    IntMatrix a(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) a(i, j) = ent(rng);
    GroupHom f(AbGroup::free(m), AbGroup::free(n), a);
    SubquotientGroup c = cokernel(f);
    SubquotientGroup im = kernel(c.projection());
    REQUIRE(m == kernel(f).group().free_rank() + im.group().free_rank());
    REQUIRE(im.group().free_rank() == smith_normal_form(a, false, false).rank());
  }
}
