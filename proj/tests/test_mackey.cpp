#include <catch_amalgamated.hpp>

#include <random>

#include "mackeyalg/mackey/constructions.hpp"

using namespace mackeyalg;
using namespace mackeyalg::mackey;
using burnside::GContext;

namespace {

AbGroup canon(const AbGroup& a) { return zmod::canonicalize(a).group; }

std::vector<Context> groups() {
  return {GContext::make(gdata::trivial_group()), GContext::make(gdata::cyclic_group(2)),
          GContext::make(gdata::cyclic_group(3)), GContext::make(gdata::symmetric_group(3))};
}

std::vector<MackeyFunctor> fixtures(const Context& c) {
  return {burnside_functor(c), constant_functor(c, AbGroup::free(1)), constant_functor(c, AbGroup::cyclic(2)),
          representable(c, c->orbit_object(0))};
}

BurnsideMorphism random_morphism(const GContext& c, int x, int y, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  BurnsideMorphism m = BurnsideMorphism::zero(c, x, y);
  for (auto& v : m.coeffs) v = d(rng);
  return m;
}

}  // namespace

TEST_CASE("fixtures satisfy the Mackey axioms", "[mackey]") {
  for (auto& c : groups()) {
    for (auto& m : fixtures(c)) {
      auto rep = check_mackey(m);
      INFO((rep.ok() ? std::string() : rep.violations.front()));
      CHECK(rep.ok());
    }
    CHECK(check_mackey(coinduced(c, c->point_object(), AbGroup::free(1))).ok());
    CHECK(check_mackey(coinduced(c, c->orbit_object(0), AbGroup::cyclic(2))).ok());
  }
}

TEST_CASE("constant Z with identity transfer fails the double coset formula", "[mackey]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  auto rep = check_mackey(constant_functor(c, AbGroup::free(1), false));
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (auto& v : rep.violations)
    if (v.rfind("double coset at (e <= G", 0) == 0) found = true;
  CHECK(found);
  // the same data for the trivial group is fine: there is nothing to transfer
  auto t = GContext::make(gdata::trivial_group());
  CHECK(check_mackey(constant_functor(t, AbGroup::free(1), false)).ok());
}

TEST_CASE("Burnside functor values for C2", "[mackey]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  auto b = burnside_functor(c);
  CHECK(b.value(0) == AbGroup::free(1));
  CHECK(b.value(1) == AbGroup::free(2));
  // restriction of [C2/e] is 2, transfer of 1 is [C2/e]
  int f = c->find_map(0, 1, 0);
  REQUIRE(f >= 0);
  CHECK(b.res(f).apply({1, 0}) == IntVector{2});
  CHECK(b.res(f).apply({0, 1}) == IntVector{1});
  CHECK(b.tr(f).apply({1}) == IntVector{1, 0});
}

TEST_CASE("evaluation on spans", "[mackey]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  const int pt = c->point_object(), free_orbit = c->orbit_object(0);
  auto z = constant_functor(c, AbGroup::free(1));
  // transfer e -> C2 as the span pt <- C2/e -> C2/e
  gdata::GMap to_pt(2, 0);
  BurnsideMorphism t{pt, free_orbit, c->transfer_span(free_orbit, pt, to_pt)};
  CHECK(z.evaluate(t).mat == IntMatrix{{2}});
  CHECK(z.evaluate(BurnsideMorphism::identity(*c, pt)) == GroupHom::identity(z.value(1)));
  CHECK(z.evaluate(BurnsideMorphism::zero(*c, pt, free_orbit)).is_zero());
  auto b = burnside_functor(c);
  CHECK(b.evaluate(BurnsideMorphism::identity(*c, free_orbit)) == GroupHom::identity(b.value(0)));
}

TEST_CASE("evaluation is contravariant and additive", "[mackey]") {
  std::mt19937 rng(7);
  for (auto& c : groups()) {
    std::vector<int> objs{c->point_object()};
    for (std::size_t k = 0; k < c->num_classes(); ++k) objs.push_back(c->orbit_object(k));
    objs.push_back(c->intern(gdata::disjoint_union(c->group(), {c->orbit(0).set, gdata::one_point(c->group())})));
    for (auto& m : fixtures(c))
      for (int trial = 0; trial < 6; ++trial) {
        std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
        int x = objs[pick(rng)], y = objs[pick(rng)], z = objs[pick(rng)];
        auto f = random_morphism(*c, x, y, rng);
        auto g = random_morphism(*c, y, z, rng);
        auto f2 = random_morphism(*c, x, y, rng);
        CHECK(m.evaluate(burnside::compose(*c, g, f)) == zmod::compose(m.evaluate(f), m.evaluate(g)));
        CHECK(m.evaluate(f + f2) == m.evaluate(f) + m.evaluate(f2));
        CHECK(m.evaluate(BurnsideMorphism::identity(*c, x)) == GroupHom::identity(m.value_at(x)));
      }
  }
}

TEST_CASE("representables evaluate by precomposition", "[mackey]") {
  std::mt19937 rng(11);
  auto c = GContext::make(gdata::symmetric_group(3));
  const int x = c->orbit_object(1);
  auto bx = representable(c, x);
  for (std::size_t a = 0; a < c->num_classes(); ++a)
    for (std::size_t b = 0; b < c->num_classes(); ++b) {
      const int oa = c->orbit_object(a), ob = c->orbit_object(b);
      auto s = random_morphism(*c, oa, ob, rng);
      GroupHom e = bx.evaluate(s);
      for (std::size_t t = 0; t < c->hom_rank(ob, x); ++t) {
        auto expect = burnside::compose(*c, BurnsideMorphism::basis(*c, ob, x, t), s).coeffs;
        CHECK(e.apply(bx.value(b).basis_vector(t)) == expect);
      }
    }
}

TEST_CASE("Yoneda: morphisms out of representables", "[mackey]") {
  for (auto& c : groups()) {
    std::vector<int> objs{c->point_object(), c->orbit_object(0)};
    objs.push_back(c->intern(gdata::disjoint_union(c->group(), {c->orbit(0).set, gdata::one_point(c->group())})));
    objs.push_back(c->intern(gdata::disjoint_union(
        c->group(), {c->orbit(0).set, c->orbit(c->num_classes() - 1).set, c->orbit(0).set})));
    for (auto& m : fixtures(c))
      for (int x : objs) {
        auto h = mackey_hom(representable(c, x), m);
        CHECK(canon(h.group()) == canon(m.value_at(x)));
      }
  }
  auto c2 = GContext::make(gdata::cyclic_group(2));
  CHECK(canon(mackey_hom(representable(c2, c2->orbit_object(0)), constant_functor(c2, AbGroup::free(1))).group()) ==
        AbGroup::free(1));
}

TEST_CASE("hom basis elements are morphisms and include the identity", "[mackey]") {
  for (auto& c : groups())
    for (auto& m : fixtures(c)) {
      auto h = mackey_hom(m, m);
      for (std::size_t i = 0; i < h.group().ngens(); ++i) CHECK(is_morphism(m, m, h.basis_morphism(i)));
      CHECK(h.solution.contains(MackeyMorphism::identity(m).comps));
    }
}

TEST_CASE("kernels and cokernels", "[mackey]") {
  for (auto& c : groups()) {
    auto z = constant_functor(c, AbGroup::free(1));
    auto kc = kernel_cokernel(z, z, MackeyMorphism::identity(z));
    CHECK(kc.kernel.functor.is_zero());
    CHECK(kc.cokernel.functor.is_zero());
    auto two = Integer(2) * MackeyMorphism::identity(z);
    auto k2 = kernel_cokernel(z, z, two);
    CHECK(k2.kernel.functor.is_zero());
    CHECK(check_mackey(k2.cokernel.functor).ok());
    auto z2 = constant_functor(c, AbGroup::cyclic(2));
    CHECK(k2.cokernel.functor.values() == z2.values());
    CHECK(k2.cokernel.functor.all_res() == z2.all_res());
    CHECK(k2.cokernel.functor.all_tr() == z2.all_tr());
    auto zero = MackeyFunctor::zero(c);
    auto kz = kernel_cokernel(zero, z2, MackeyMorphism::zero(zero, z2));
    CHECK(kz.cokernel.functor == z2);
    CHECK(is_morphism(z, z2, kz.projection) == false);
  }
}

TEST_CASE("kernel and image of a morphism between fixtures", "[mackey]") {
  auto c = GContext::make(gdata::symmetric_group(3));
  auto b = burnside_functor(c);
  auto z = constant_functor(c, AbGroup::free(1));
  auto h = mackey_hom(b, z);
  REQUIRE(h.group().ngens() == 1);
  auto phi = h.basis_morphism(0);
  auto kc = kernel_cokernel(b, z, phi);
  CHECK(check_mackey(kc.kernel.functor).ok());
  CHECK(check_mackey(kc.cokernel.functor).ok());
  CHECK(is_morphism(kc.kernel.functor, b, kc.inclusion));
  CHECK(compose(phi, kc.inclusion).is_zero());
  auto im = image(b, z, phi);
  // image and coimage have the same values
  auto coim = kernel_cokernel(kc.kernel.functor, b, kc.inclusion).cokernel;
  CHECK(same_values(im.functor, coim.functor));
}

TEST_CASE("coinduced functors", "[mackey]") {
  for (auto& c : groups()) {
    auto pz = coinduced(c, c->point_object(), AbGroup::free(1));
    CHECK(pz.value(c->num_classes() - 1).free_rank() == c->num_classes());
    CHECK(coinduced(c, c->orbit_object(0), AbGroup()).is_zero());
    const int x = c->orbit_object(0);
    auto inj = coinduced(c, x, AbGroup::cyclic(2));
    for (auto& m : fixtures(c)) {
      auto h = mackey_hom(m, inj);
      CHECK(canon(h.group()) == canon(zmod::hom_group(m.value_at(x), AbGroup::cyclic(2)).group));
    }
  }
}

TEST_CASE("shifted functors", "[mackey]") {
  auto c = GContext::make(gdata::symmetric_group(3));
  for (auto& m : fixtures(c)) {
    const int x = c->orbit_object(1);
    auto mx = shifted(m, x);
    CHECK(check_mackey(mx).ok());
    for (std::size_t k = 0; k < c->num_classes(); ++k)
      CHECK(mx.value(k) == m.value_at(c->product_object(x, c->orbit_object(k))));
  }
}
