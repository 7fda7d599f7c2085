#include <catch_amalgamated.hpp>

#include "mackeyalg/graded/over_ring.hpp"

using namespace mackeyalg;
using namespace mackeyalg::graded;
using mackey::burnside_functor;
using mackey::constant_functor;
using mackey::representable;

namespace {

AbGroup canon(const AbGroup& a) { return zmod::canonicalize(a).group; }

Context c2() { return GContext::make(gdata::cyclic_group(2)); }

Signs c2_signs(const Context& c) { return make_signs(c, monoidal::c2_grading()); }

const Degree r0{1, 0}, r1{0, 1}, z2{0, 0};

/// Direct sum of Hom(K_d, M_d) over degrees.
AbGroup graded_mackey_hom(const GradedMackey& k, const GradedMackey& m, const Degree& tau) {
  std::vector<AbGroup> parts;
  for (auto& d : k.support()) parts.push_back(mackey::mackey_hom(k.layer(d), m.layer(d + tau)).group());
  return canon(zmod::direct_sum(parts));
}

}  // namespace

TEST_CASE("shifts", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  auto m = concentrated(s, z2, constant_functor(c, AbGroup::free(1)));
  CHECK(shift(m, z2).support() == m.support());
  CHECK(shift(m, r0 + r0).support() == std::vector<Degree>{r0 + r0});
  CHECK(same_values(shift(shift(m, r1), -r1), m));
}

TEST_CASE("graded box of shifted Burnside functors", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  auto b = burnside_functor(c);
  auto bx = graded_box(concentrated(s, r0, b), concentrated(s, r1, b));
  CHECK(bx.result.support() == std::vector<Degree>{r0 + r1});
  CHECK(same_values(bx.result, concentrated(s, r0 + r1, b)));
  auto unit = concentrated(s, z2, b);
  auto m = concentrated(s, r1, constant_functor(c, AbGroup::cyclic(2)));
  CHECK(same_values(graded_box(unit, m).result, m));
}

TEST_CASE("graded symmetry is an involution", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  GradedMackey m{s, {{r0, constant_functor(c, AbGroup::free(1))}, {r1, burnside_functor(c)}}};
  GradedMackey n{s, {{r1, representable(c, c->orbit_object(0))}, {z2, constant_functor(c, AbGroup::cyclic(2))}}};
  auto mn = graded_box(m, n);
  auto nm = graded_box(n, m);
  auto a = graded_symmetry(mn, nm, m, n);
  auto b = graded_symmetry(nm, mn, n, m);
  CHECK(is_morphism(mn.result, nm.result, a));
  CHECK(equal(mn.result, mn.result, compose(mn.result, nm.result, mn.result, b, a), GradedMorphism::identity(mn.result)));
  // the sign on rho1 x rho1 is 1 - [C2/e], which is not the identity on B
  GradedMackey p{s, {{r1, burnside_functor(c)}}};
  auto pp = graded_box(p, p);
  auto sym = graded_symmetry(pp, pp, p, p);
  auto plain = monoidal::symmetry(pp.pieces.at(r1 + r1)[0].box, pp.pieces.at(r1 + r1)[0].box, p.layer(r1), p.layer(r1));
  CHECK_FALSE(sym.comps.at(r1 + r1) == plain);
}

TEST_CASE("graded hom needs a window for large supports", "[graded]") {
  auto c = GContext::make(gdata::trivial_group());
  auto s = integer_signs(c);
  GradedMackey m{s, {}};
  for (long i = 0; i < 10; ++i) m.layers.emplace(degree_of(i), constant_functor(c, AbGroup::free(1)));
  CHECK_THROWS_AS(graded_hom(m, m), MissingTruncation);
  auto h = graded_hom(m, m, std::vector<Degree>{degree_of(0), degree_of(1)});
  CHECK(canon(h.result.layer(degree_of(0)).value(0)) == AbGroup::free(10));
  CHECK(canon(h.result.layer(degree_of(1)).value(0)) == AbGroup::free(9));
}

TEST_CASE("ring fixtures satisfy the ring axioms", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  CHECK(ring_failures(*unit_ring(s)).empty());
  CHECK(ring_failures(*constant_ring(s, 0)).empty());
  auto t = GContext::make(gdata::trivial_group());
  auto zs = integer_signs(t);
  CHECK(ring_failures(*constant_ring(zs, 4)).empty());
  // x of odd degree: x^2 = -x^2 fails in Z unless x^2 = 0
  CHECK_THROWS_AS(truncated_polynomial_ring(zs, degree_of(1), 3, true), ValidationError);
  CHECK_NOTHROW(truncated_polynomial_ring(zs, degree_of(1), 3, false));
  CHECK_NOTHROW(truncated_polynomial_ring(zs, degree_of(1), 2, true));
  CHECK_NOTHROW(truncated_polynomial_ring(zs, degree_of(2), 3, true));
}

TEST_CASE("module validation", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  auto z = constant_ring(s, 0);
  CHECK_NOTHROW(scalar_module(z, concentrated(s, z2, constant_functor(c, AbGroup::cyclic(2)))));
  // B is not cohomological, so Z cannot act on it through the identity
  CHECK_THROWS_AS(scalar_module(z, concentrated(s, z2, burnside_functor(c))), ValidationError);
  auto b = unit_ring(s);
  CHECK_NOTHROW(burnside_module(b, concentrated(s, r1, representable(c, c->orbit_object(0)))));
  auto m = scalar_module(z, concentrated(s, z2, constant_functor(c, AbGroup::free(1))));
  m.left.table.begin()->second[0](0, 0) = 2;
  CHECK_FALSE(module_failures(m).empty());
}

TEST_CASE("free modules and maps out of them", "[graded]") {
  for (auto& c : {GContext::make(gdata::trivial_group()), c2(), GContext::make(gdata::cyclic_group(3))}) {
    auto s = make_signs(c, monoidal::integer_grading(c->num_classes()));
    std::vector<Ring> rings{unit_ring(s), constant_ring(s, 0)};
    for (auto& R : rings) {
      FreeModule P = free_module_on(R, {{degree_of(0), 0}, {degree_of(1), c->num_classes() - 1}});
      CHECK(module_failures(P.module()).empty());
      for (std::size_t k = 0; k < c->num_classes(); ++k)
        CHECK(canon(P.module().m.layer(degree_of(0)).value(k)) ==
              canon(R->r.layer(degree_of(0)).value_at(c->product_object(c->orbit_object(0), c->orbit_object(k)))));
      GradedModule M = regular_module(R);
      M = shift(M, degree_of(0));
      auto sum = module_sum(R, s, Side::left, {M, shift(M, degree_of(1))});
      const auto& N = sum.module;
      // generator images: the unit restricted to O_e, and the unit in degree 1
      IntVector m0(N.m.layer(degree_of(0)).value(0).ngens()), m1(N.m.layer(degree_of(1)).value(c->num_classes() - 1).ngens());
      IntVector u0 = R->unit_at(0);
      for (std::size_t i = 0; i < u0.size(); ++i) m0[sum.offset(0, degree_of(0), 0) + i] = u0[i];
      for (std::size_t i = 0; i < R->unit.size(); ++i) m1[sum.offset(1, degree_of(1), c->num_classes() - 1) + i] = R->unit[i];
      auto f = free_map(P, N, {m0, m1}, degree_of(0));
      CHECK(module_map_failures(P.module(), N, f).empty());
      CHECK(f.at(P.module().m, N.m, degree_of(0)).comps[0].apply(generator_element(P, 0)) == m0);
      CHECK(f.at(P.module().m, N.m, degree_of(1)).comps.back().apply(generator_element(P, 1)) == m1);
    }
  }
}

TEST_CASE("box over R", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  auto z = constant_ring(s, 0);
  auto zr = regular_module(z);
  auto m = scalar_module(z, GradedMackey{s, {{z2, constant_functor(c, AbGroup::cyclic(2))}, {r1, constant_functor(c, AbGroup::free(1))}}});
  CHECK(same_values(box_over_R(zr, m).result, m.m));
  CHECK(same_values(box_over_R(m, zr).result, m.m));
  // over the unit ring the coequalizer is trivial
  auto b = unit_ring(s);
  GradedMackey k{s, {{r0, representable(c, c->orbit_object(0))}, {z2, constant_functor(c, AbGroup::free(1))}}};
  auto bk = burnside_module(b, k);
  auto bm = burnside_module(b, GradedMackey{s, {{r1, constant_functor(c, AbGroup::cyclic(2))}}});
  CHECK(same_values(box_over_R(bm, bk).result, graded_box(bm.m, bk.m).result));
  // free modules: N box_R (R box K) = N box K
  auto free = free_module(z, k);
  CHECK(same_values(box_over_R(m, free.module).result, graded_box(m.m, k).result));
}

TEST_CASE("function objects over R", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  auto z = constant_ring(s, 0);
  auto zr = regular_module(z);
  auto m = scalar_module(z, GradedMackey{s, {{z2, constant_functor(c, AbGroup::cyclic(2))}, {r1, constant_functor(c, AbGroup::free(1))}}});
  CHECK(same_values(func_over_R(zr, m).result, m.m));
  auto b = unit_ring(s);
  GradedMackey k{s, {{r0, representable(c, c->orbit_object(0))}, {z2, constant_functor(c, AbGroup::free(1))}}};
  auto bk = burnside_module(b, k);
  auto bm = burnside_module(b, GradedMackey{s, {{r1, constant_functor(c, AbGroup::cyclic(2))}, {z2, burnside_functor(c)}}});
  CHECK(same_values(func_over_R(bk, bm).result, graded_hom(bk.m, bm.m).result));
  auto free = free_module(z, k);
  CHECK(same_values(func_over_R(free.module, m).result, graded_hom(k, m.m).result));
  CHECK(mackey::check_mackey(func_over_R(free.module, m).result.layer(r1 - r0)).ok());
}

TEST_CASE("free module adjunction", "[graded]") {
  auto c = c2();
  auto s = c2_signs(c);
  auto z = constant_ring(s, 0);
  auto b = unit_ring(s);
  GradedMackey k{s, {{r0, representable(c, c->orbit_object(0))}, {z2, burnside_functor(c)}}};
  for (auto& R : {z, b}) {
    auto free = free_module(R, k);
    auto unit_free = free_module(R, concentrated(s, z2, burnside_functor(c)));
    CHECK(same_values(unit_free.module.m, R->r));
    CHECK(free_module(R, GradedMackey{s, {}}).module.m.is_zero());
    GradedModule m = R == z ? scalar_module(z, GradedMackey{s, {{z2, constant_functor(c, AbGroup::cyclic(2))},
                                                               {r0, constant_functor(c, AbGroup::free(1))}}})
                            : burnside_module(b, GradedMackey{s, {{r0, burnside_functor(c)},
                                                                   {z2, constant_functor(c, AbGroup::cyclic(2))}}});
    auto h = module_hom(free.module, m, z2);
    CHECK(canon(h.group()) == graded_mackey_hom(k, m.m, z2));
    // every module map is determined by its composite with the unit K -> R box K
    auto eta = free_unit(free, k);
    CHECK(is_morphism(k, free.module.m, eta));
    for (std::size_t i = 0; i < h.group().ngens(); ++i) {
      auto f = h.morphism(h.group().basis_vector(i));
      CHECK(is_module_map(free.module, m, f));
      CHECK_FALSE(equal(k, m.m, compose(k, free.module.m, m.m, f, eta), GradedMorphism::zero(k, m.m, z2)));
    }
  }
}

TEST_CASE("kernels and cokernels of module maps are modules", "[graded]") {
  auto c = c2();
  auto s = make_signs(c, monoidal::integer_grading(c->num_classes()));
  auto z = constant_ring(s, 0);
  auto m = scalar_module(z, concentrated(s, degree_of(0), constant_functor(c, AbGroup::cyclic(2))));
  FreeModule P = free_module_on(z, {{degree_of(0), 1}});
  auto f = free_map(P, m, {IntVector{1}}, degree_of(0));
  auto kc = module_kernel_cokernel(P.module(), m, f);
  CHECK(module_failures(kc.kernel).empty());
  CHECK(kc.cokernel.m.is_zero());
  CHECK(canon(kc.kernel.m.layer(degree_of(0)).value(1)) == AbGroup::free(1));
}

TEST_CASE("composition pairing", "[graded]") {
  auto c = c2();
  auto s = make_signs(c, monoidal::integer_grading(c->num_classes()));
  auto b = unit_ring(s);
  auto m0 = burnside_module(b, GradedMackey{s, {{degree_of(0), burnside_functor(c)}}});
  auto m1 = burnside_module(b, GradedMackey{s, {{degree_of(0), representable(c, c->orbit_object(0))},
                                                 {degree_of(1), constant_functor(c, AbGroup::free(1))}}});
  auto m2 = burnside_module(b, GradedMackey{s, {{degree_of(1), constant_functor(c, AbGroup::cyclic(2))}}});
  auto f01 = func_over_R(m0, m1), f12 = func_over_R(m1, m2), f02 = func_over_R(m0, m2, std::vector<Degree>{degree_of(0), degree_of(1)});
  auto f11 = func_over_R(m1, m1);
  auto id = f11.coords(m1, m1, GradedMorphism::identity(m1.m));
  const Degree zero = degree_of(0), one = degree_of(1);
  const std::size_t top = c->num_classes() - 1;
  for (std::size_t i = 0; i < f01.result.layer(zero).value(top).ngens(); ++i) {
    IntVector x = f01.result.layer(zero).value(top).basis_vector(i);
    CHECK(composition_pairing(f11, f01, f01, m0, m1, m1, zero, id, zero, x) == x);
    for (auto& t : {zero, one})
      for (std::size_t j = 0; j < f12.result.layer(t).value(top).ngens(); ++j) {
        IntVector y = f12.result.layer(t).value(top).basis_vector(j);
        auto p = composition_pairing(f12, f01, f02, m0, m1, m2, t, y, zero, x);
        // degree 0: the pairing is composition of module maps
        auto direct = compose(m0.m, m1.m, m2.m, f12.morphism(t, y), f01.morphism(zero, x));
        CHECK(is_module_map(m0, m2, direct));
        CHECK(p == f02.coords(m0, m2, direct));
      }
  }
}
