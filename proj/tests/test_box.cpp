#include <catch_amalgamated.hpp>

#include "mackeyalg/monoidal/coherence.hpp"
#include "mackeyalg/monoidal/internal_hom.hpp"

using namespace mackeyalg;
using namespace mackeyalg::monoidal;
using mackey::burnside_functor;
using mackey::constant_functor;
using mackey::representable;

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

}  // namespace

TEST_CASE("box products are Mackey functors", "[box]") {
  for (auto& c : groups()) {
    auto fx = fixtures(c);
    for (auto& m : fx)
      for (auto& n : fx) {
        auto bx = box(m, n);
        auto rep = mackey::check_mackey(bx.result);
        INFO((rep.ok() ? std::string() : rep.violations.front()));
        CHECK(rep.ok());
      }
  }
}

TEST_CASE("B is a unit for the box product", "[box]") {
  for (auto& c : groups())
    for (auto& m : fixtures(c)) {
      auto bm = box(burnside_functor(c), m);
      CHECK(mackey::same_values(bm.result, m));
      auto l = left_unitor(bm, m);
      auto li = left_unitor_inverse(bm, m);
      CHECK(mackey::is_morphism(bm.result, m, l));
      CHECK(mackey::compose(l, li) == MackeyMorphism::identity(m));
      CHECK(mackey::compose(li, l) == MackeyMorphism::identity(bm.result));
    }
}

TEST_CASE("box with the zero functor", "[box]") {
  for (auto& c : groups())
    for (auto& m : fixtures(c)) CHECK(box(MackeyFunctor::zero(c), m).result.is_zero());
}

TEST_CASE("box with representables shifts", "[box]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  auto z = constant_functor(c, AbGroup::free(1));
  auto bx = box(representable(c, c->orbit_object(0)), z);
  CHECK(canon(bx.result.value(1)) == AbGroup::free(1));
  for (auto& cc : groups())
    for (auto& m : fixtures(cc))
      for (std::size_t x = 0; x < cc->num_classes(); ++x) {
        const int ox = cc->orbit_object(x);
        auto b = box(representable(cc, ox), m);
        for (std::size_t k = 0; k < cc->num_classes(); ++k)
          CHECK(canon(b.result.value(k)) == canon(m.value_at(cc->product_object(ox, cc->orbit_object(k)))));
      }
}

TEST_CASE("internal hom values", "[box]") {
  for (auto& c : groups())
    for (auto& m : fixtures(c)) {
      auto h = internal_hom(burnside_functor(c), m);
      CHECK(mackey::same_values(h.result, m));
      CHECK(mackey::check_mackey(h.result).ok());
      const int x = c->orbit_object(0);
      auto hx = internal_hom(representable(c, x), m);
      for (std::size_t k = 0; k < c->num_classes(); ++k)
        CHECK(canon(hx.result.value(k)) == canon(m.value_at(c->product_object(x, c->orbit_object(k)))));
      auto inj = mackey::coinduced(c, x, AbGroup::cyclic(2));
      auto hi = internal_hom(m, inj);
      for (std::size_t k = 0; k < c->num_classes(); ++k)
        CHECK(canon(hi.result.value(k)) ==
              canon(zmod::hom_group(m.value_at(c->product_object(x, c->orbit_object(k))), AbGroup::cyclic(2)).group));
    }
}

TEST_CASE("box and internal hom are adjoint", "[box]") {
  for (auto& c : groups()) {
    auto fx = fixtures(c);
    for (auto& l : fx)
      for (auto& m : fx) {
        auto lm = box(l, m);
        for (auto& n : {fx[1], fx[2]}) {
          auto lhs = mackey::mackey_hom(lm.result, n);
          auto rhs = mackey::mackey_hom(l, internal_hom(m, n).result);
          CHECK(canon(lhs.group()) == canon(rhs.group()));
        }
      }
  }
}

TEST_CASE("coherence: triangle, symmetry and pentagon", "[box]") {
  for (auto& c : {GContext::make(gdata::trivial_group()), GContext::make(gdata::cyclic_group(2))}) {
    auto fx = fixtures(c);
    for (auto& m : fx)
      for (auto& n : fx) {
        CHECK(triangle_holds(m, n));
        CHECK(symmetry_involution_holds(m, n));
      }
    CHECK(pentagon_holds(fx[3], fx[1], fx[2], fx[3]));
    CHECK(pentagon_holds(fx[0], fx[3], fx[3], fx[1]));
  }
}

TEST_CASE("associator is an isomorphism of Mackey functors", "[box]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  auto fx = fixtures(c);
  auto a = assoc_iso(fx[3], fx[1], fx[3]);
  CHECK(mackey::is_morphism(a.source, a.target, a.map));
  auto kc = mackey::kernel_cokernel(a.source, a.target, a.map);
  CHECK(kc.kernel.functor.is_zero());
  CHECK(kc.cokernel.functor.is_zero());
}
