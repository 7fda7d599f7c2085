#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "mackeyalg/derived/derived.hpp"

using namespace mackeyalg;
using namespace mackeyalg::derived;
using graded::burnside_module;
using graded::concentrated;
using graded::constant_ring;
using graded::degree_of;
using graded::make_signs;
using graded::scalar_module;
using graded::unit_ring;
using mackey::burnside_functor;
using mackey::constant_functor;
using mackey::representable;

namespace {

AbGroup canon(const AbGroup& a) { return zmod::canonicalize(a).group; }

Context trivial() { return GContext::make(gdata::trivial_group()); }
Context c2() { return GContext::make(gdata::cyclic_group(2)); }

Signs zsigns(const Context& c) { return make_signs(c, monoidal::integer_grading(c->num_classes())); }

const Degree d0 = degree_of(0);

GradedModule unit_module(const Ring& R, const MackeyFunctor& m) {
  return burnside_module(R, concentrated(R->r.signs, d0, m));
}

// Classical Tor/Ext over Z of finitely generated groups, from the
// resolution 0 -> Z --m--> Z -> Z/m of each cyclic summand of the first
// argument (Z resolves itself): Tor_0 = coker(m), Tor_1 = ker(m), Ext^0 =
// ker(m), Ext^1 = coker(m) for multiplication by m on each summand of the
// second argument.
struct Classical {
  std::vector<long> first, second;  // 0 means Z

  static long gcd(long a, long b) { return std::gcd(a, b); }

  // (ker, coker) of multiplication by m on Z/n, as lists of cyclic orders
  static std::pair<std::vector<long>, std::vector<long>> mult(long m, long n) {
    if (n == 0) return {{}, {m}};
    long g = gcd(m, n);
    return {{g}, {g}};
  }

  std::vector<long> tor(int s) const {
    std::vector<long> out;
    for (long a : first)
      for (long b : second) {
        if (a == 0) {
          if (s == 0) out.push_back(b);
          continue;
        }
        auto [k, c] = mult(a, b);
        if (s == 0) out.insert(out.end(), c.begin(), c.end());
        if (s == 1) out.insert(out.end(), k.begin(), k.end());
      }
    return out;
  }

  std::vector<long> ext(int s) const {
    std::vector<long> out;
    for (long a : first)
      for (long b : second) {
        if (a == 0) {
          if (s == 0) out.push_back(b);
          continue;
        }
        auto [k, c] = mult(a, b);
        if (s == 0) out.insert(out.end(), k.begin(), k.end());
        if (s == 1) out.insert(out.end(), c.begin(), c.end());
      }
    return out;
  }
};

AbGroup group_of(const std::vector<long>& orders) {
  std::vector<AbGroup> parts;
  for (long o : orders)
    if (o != 1) parts.push_back(o == 0 ? AbGroup::free(1) : AbGroup::cyclic(o));
  return canon(zmod::direct_sum(parts));
}

AbGroup at_top(const BigradedMackey& g, long s) {
  auto m = g.at(s, d0);
  return canon(m.value(m.num_classes() - 1));
}

}  // namespace

TEST_CASE("resolutions are exact", "[derived]") {
  for (auto& c : {trivial(), c2()}) {
    auto s = zsigns(c);
    auto R = unit_ring(s);
    auto m = unit_module(R, constant_functor(c, AbGroup::cyclic(2)));
    auto r = projective_resolution(m, 3);
    CHECK(resolution_failures(r).empty());
    CHECK(r.stages.size() == 4);
    auto r7 = projective_resolution(m, 3, std::nullopt, 7);
    CHECK(resolution_failures(r7).empty());
  }
  auto c = trivial();
  auto R = unit_ring(zsigns(c));
  auto r = projective_resolution(unit_module(R, constant_functor(c, AbGroup::cyclic(2))), 2);
  // Z --2--> Z -> Z/2, then nothing
  CHECK(r.stages[0].gens.size() == 1);
  CHECK(r.stages[1].gens.size() == 1);
  CHECK(r.stages[2].gens.empty());
}

TEST_CASE("projectivity", "[derived]") {
  auto c = c2();
  auto s = zsigns(c);
  auto R = unit_ring(s);
  CHECK(is_projective(unit_module(R, representable(c, c->orbit_object(0)))).projective);
  CHECK(is_projective(unit_module(R, burnside_functor(c))).projective);
  auto r = is_projective(unit_module(R, constant_functor(c, AbGroup::cyclic(2))));
  CHECK_FALSE(r.projective);
  CHECK_FALSE(r.obstruction.empty());
}

TEST_CASE("trivial group: classical Tor and Ext over Z", "[derived]") {
  auto c = trivial();
  auto R = unit_ring(zsigns(c));
  const std::vector<std::vector<long>> fixtures{{0}, {2}, {4}, {0, 2}};
  auto module_of = [&](const std::vector<long>& orders) {
    return unit_module(R, constant_functor(c, group_of(orders)));
  };
  for (auto& a : fixtures)
    for (auto& b : fixtures) {
      Classical oracle{a, b};
      auto t = mtor(module_of(b), module_of(a), 3);
      auto e = mext(module_of(a), module_of(b), 3);
      for (int s = 0; s <= 3; ++s) {
        CAPTURE(a, b, s);
        CHECK(at_top(t.groups, s) == group_of(oracle.tor(s)));
        CHECK(at_top(e.groups, s) == group_of(oracle.ext(s)));
      }
    }
}

TEST_CASE("MTor and MExt do not depend on the resolution", "[derived]") {
  auto c = c2();
  auto s = zsigns(c);
  auto R = unit_ring(s);
  auto m = unit_module(R, constant_functor(c, AbGroup::cyclic(2)));
  auto n = unit_module(R, constant_functor(c, AbGroup::free(1)));
  CHECK(same_groups(mtor(n, m, 2).groups, mtor(n, m, 2, 11).groups));
  CHECK(same_groups(mext(m, n, 2).groups, mext(m, n, 2, std::nullopt, 11).groups));
}

TEST_CASE("projective arguments kill higher MTor and MExt", "[derived]") {
  auto c = c2();
  auto s = zsigns(c);
  auto R = unit_ring(s);
  auto p = unit_module(R, representable(c, c->orbit_object(0)));
  auto m = unit_module(R, constant_functor(c, AbGroup::cyclic(2)));
  CHECK(mtor(m, p, 2).groups.vanishes_above(0));
  CHECK(mext(p, m, 2).groups.vanishes_above(0));
  // (B^{C2/e} box M)(C2/e) = M(C2/e x C2/e)
  auto t = mtor(m, p, 0);
  CHECK(canon(t.groups.at(0, d0).value(0)) == group_of({2, 2}));
}

TEST_CASE("long exact sequences", "[derived]") {
  std::mt19937 rng(5);
  for (auto& c : {trivial(), c2()}) {
    auto s = zsigns(c);
    auto R = unit_ring(s);
    auto b = unit_module(R, constant_functor(c, zmod::direct_sum(std::vector<AbGroup>{AbGroup::free(1), AbGroup::cyclic(4)})));
    auto n = unit_module(R, constant_functor(c, AbGroup::cyclic(2)));
    auto e = random_short_exact(b, rng);
    CHECK(short_exact_module_failures(e).empty());
    auto h = horseshoe(e, 3);
    CHECK(resolution_failures(h.pb).empty());
    auto tor = tor_long_exact_sequence(n, e, 1);
    CHECK(tor.failures.empty());
    CHECK(tor.joints_checked > 0);
    auto ext = ext_long_exact_sequence(e, n, 1);
    CHECK(ext.failures.empty());
  }
}

TEST_CASE("Yoneda product", "[derived]") {
  // Z/4 acting on Z/2: Ext^*(Z/2, Z/2) is polynomial on a degree-one class
  auto c = trivial();
  auto s = zsigns(c);
  auto R = constant_ring(s, 4);
  auto m = scalar_module(R, concentrated(s, d0, constant_functor(c, AbGroup::cyclic(2))));
  auto e = mext(m, m, 2);
  for (long k = 0; k <= 2; ++k) CHECK(at_top(e.groups, k) == canon(AbGroup::cyclic(2)));
  IntVector one = ext_identity(e), x{1};
  CHECK(one == IntVector{1});
  CHECK(yoneda_pairing(e, e, e, 1, d0, x, 0, d0, one) == x);
  CHECK(yoneda_pairing(e, e, e, 0, d0, one, 1, d0, x) == x);
  CHECK(yoneda_pairing(e, e, e, 1, d0, x, 1, d0, x) == IntVector{1});
  // over Z the same square is zero since Ext^2_Z vanishes
  auto Z = unit_ring(s);
  auto mz = unit_module(Z, constant_functor(c, AbGroup::cyclic(2)));
  auto ez = mext(mz, mz, 2);
  CHECK(yoneda_pairing(ez, ez, ez, 1, d0, x, 1, d0, x).empty());
}

TEST_CASE("Yoneda product in degree zero is composition", "[derived]") {
  auto c = c2();
  auto s = zsigns(c);
  auto R = unit_ring(s);
  auto m = unit_module(R, constant_functor(c, AbGroup::cyclic(4)));
  auto e = mext(m, m, 1);
  auto f = graded::func_over_R(m, m, std::vector<Degree>{d0});
  const AbGroup g = e.groups.at(0, d0).value(c->num_classes() - 1);
  for (std::size_t i = 0; i < g.ngens(); ++i)
    for (std::size_t j = 0; j < g.ngens(); ++j) {
      IntVector a = g.basis_vector(i), b = g.basis_vector(j);
      IntVector ba = yoneda_pairing(e, e, e, 0, d0, b, 0, d0, a);
      IntVector fa = ext0_to_map(e, f, m, d0, a), fb = ext0_to_map(e, f, m, d0, b), fba = ext0_to_map(e, f, m, d0, ba);
      CHECK(graded::composition_pairing(f, f, f, m, m, m, d0, fb, d0, fa) == fba);
    }
}

TEST_CASE("homology pairing", "[derived]") {
  auto c = c2();
  auto s = zsigns(c);
  auto z = constant_functor(c, AbGroup::free(1));
  // Z --2--> Z in degrees 1, 0
  Complex k;
  k.signs = s;
  k.terms[0] = concentrated(s, d0, z);
  k.terms[1] = concentrated(s, d0, z);
  k.diff[1] = GradedMorphism{d0, {{d0, Integer(2) * MackeyMorphism::identity(z)}}};
  CHECK(complex_failures(k).empty());
  auto p = homology_pairing(k, k, 0, 0);
  CHECK(graded::is_morphism(p.source.result, p.htot.result, p.map));
  auto bb = box_bicomplex(k, k);
  CHECK(bicomplex_failures(bb.bicomplex).empty());
  auto tot = total_complex(bb.bicomplex);
  CHECK(complex_failures(tot.complex).empty());
  // H_0(Z/2-ish) box H_0 -> H_0(Tot) is onto at every level
  for (std::size_t j = 0; j < c->num_classes(); ++j) {
    auto g = p.map.at(p.source.result, p.htot.result, d0).comps[j];
    CHECK(zmod::cokernel(g).group().is_trivial());
  }
}

TEST_CASE("C2: the underlying level is classical Tor and Ext", "[derived]") {
  // evaluation at C2/e is exact, sends free modules to free groups and
  // box products to tensor products
  auto c = c2();
  auto R = unit_ring(zsigns(c));
  const std::vector<std::vector<long>> fixtures{{0}, {2}, {0, 2}};
  for (auto& a : fixtures)
    for (auto& b : fixtures) {
      Classical oracle{a, b};
      auto t = mtor(unit_module(R, constant_functor(c, group_of(b))), unit_module(R, constant_functor(c, group_of(a))), 2);
      auto e = mext(unit_module(R, constant_functor(c, group_of(a))), unit_module(R, constant_functor(c, group_of(b))), 2);
      for (int s = 0; s <= 2; ++s) {
        CAPTURE(a, b, s);
        CHECK(canon(t.groups.at(s, d0).value(0)) == group_of(oracle.tor(s)));
        CHECK(canon(e.groups.at(s, d0).value(0)) == group_of(oracle.ext(s)));
      }
    }
}
