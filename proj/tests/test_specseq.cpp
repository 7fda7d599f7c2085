#include <catch_amalgamated.hpp>

#include <algorithm>

#include "mackeyalg/specseq/specseq.hpp"

using namespace mackeyalg;
using namespace mackeyalg::specseq;
using burnside::Context;
using burnside::GContext;
using derived::projective_resolution;
using graded::burnside_module;
using graded::concentrated;
using graded::constant_ring;
using graded::degree_of;
using graded::GradedModule;
using graded::make_signs;
using graded::Ring;
using graded::scalar_module;
using graded::Side;
using graded::unit_ring;
using mackey::constant_functor;
using mackey::representable;

namespace {

Context trivial() { return GContext::make(gdata::trivial_group()); }
Context c2() { return GContext::make(gdata::cyclic_group(2)); }

graded::Signs zsigns(const Context& c) { return make_signs(c, monoidal::integer_grading(c->num_classes())); }

const Degree d0 = degree_of(0);

GradedModule unit_module(const Ring& R, const MackeyFunctor& m) {
  return burnside_module(R, concentrated(R->r.signs, d0, m));
}

/// E^2 of the filtration by the resolution degree of M, as a bigraded
/// functor indexed by p (the q = 0 row), with the other rows checked zero.
BigradedMackey bottom_row(const SpectralSequence& ss, long r, bool& other_rows_zero) {
  BigradedMackey out;
  out.signs = ss.fc.complex.signs;
  other_rows_zero = true;
  for (auto& [pq, e] : ss.page(r).entries) {
    if (pq.second != 0) {
      other_rows_zero = other_rows_zero && e.result.is_zero();
      continue;
    }
    out.rows[pq.first] = e.result;
  }
  return out;
}

struct TorRun {
  TorBicomplex b;
  SpectralSequence by_n, by_m;
  derived::TorData tor;
};

TorRun run_tor(const GradedModule& n, const GradedModule& m, long s_max) {
  auto q = projective_resolution(n, s_max + 1, Side::right);
  auto p = projective_resolution(m, s_max + 1, Side::left);
  TorRun out{bicomplex_from_resolutions(q, p, s_max + 1), {}, {}, derived::mtor_with(n, p, s_max)};
  out.by_n = pages(out.b.filtration(true), 3, std::make_pair(0L, s_max));
  out.by_m = pages(out.b.filtration(false), 3, std::make_pair(0L, s_max));
  return out;
}

}  // namespace

TEST_CASE("trivial filtration", "[specseq]") {
  auto c = c2();
  auto s = zsigns(c);
  auto z = constant_functor(c, AbGroup::free(1));
  Complex k;
  k.signs = s;
  k.terms[0] = concentrated(s, d0, z);
  k.terms[1] = concentrated(s, d0, z);
  k.diff[1] = GradedMorphism{d0, {{d0, zmod::Integer(2) * MackeyMorphism::identity(z)}}};
  auto ss = pages(trivial_filtration(k), 3);
  CHECK(ss.failures.empty());
  CHECK(graded::same_values(ss.page(1).entry(0, 0)->result, derived::homology(k, 0).result));
  CHECK(ss.page(1).entry(0, 1) == nullptr);
  for (long r = 2; r <= 3; ++r) CHECK(graded::same_values(ss.page(r).entry(0, 0)->result, ss.page(1).entry(0, 0)->result));
  BigradedMackey target;
  target.signs = s;
  target.rows[0] = derived::homology(k, 0).result;
  auto rep = edge_and_convergence(ss, target);
  CHECK(rep.converges());
  CHECK(rep.edge_iso);
}

TEST_CASE("hyper-Tor bicomplex, trivial group", "[specseq]") {
  auto c = trivial();
  auto R = unit_ring(zsigns(c));
  auto m = unit_module(R, constant_functor(c, AbGroup::cyclic(2)));
  auto run = run_tor(m, m, 3);
  // Z --2--> Z resolves Z/2 on both sides: a 2 x 2 square of Z's
  std::size_t nonzero = 0;
  for (auto& [st, e] : run.b.bicomplex.entries)
    if (!e.is_zero()) {
      ++nonzero;
      CHECK(zmod::canonicalize(e.layer(d0).value(0)).group == AbGroup::free(1));
    }
  CHECK(nonzero == 4);
  CHECK(derived::bicomplex_failures(run.b.bicomplex).empty());
  CHECK(derived::complex_failures(run.b.total.complex).empty());
  for (auto* ss : {&run.by_n, &run.by_m}) {
    CHECK(ss->failures.empty());
    auto rep = edge_and_convergence(*ss, run.tor.groups);
    CHECK(rep.converges());
    CHECK(rep.collapse_page == 2);
  }
  bool rows_zero = false;
  CHECK(derived::same_groups(bottom_row(run.by_m, 2, rows_zero), run.tor.groups));
  CHECK(rows_zero);
  CHECK(derived::same_groups(total_infinity(run.by_n), total_infinity(run.by_m)));
}

TEST_CASE("hyper-Tor bicomplex, C2", "[specseq]") {
  auto c = c2();
  auto R = unit_ring(zsigns(c));
  auto n = unit_module(R, constant_functor(c, AbGroup::free(1)));
  auto m = unit_module(R, constant_functor(c, AbGroup::cyclic(2)));
  auto run = run_tor(n, m, 2);
  for (auto* ss : {&run.by_n, &run.by_m}) {
    CHECK(ss->failures.empty());
    CHECK(edge_and_convergence(*ss, run.tor.groups).converges());
  }
  bool rows_zero = false;
  CHECK(derived::same_groups(bottom_row(run.by_m, 2, rows_zero), run.tor.groups));
  CHECK(rows_zero);
  CHECK(derived::same_groups(total_infinity(run.by_n), total_infinity(run.by_m)));
}

TEST_CASE("projective inputs collapse with an edge isomorphism", "[specseq]") {
  for (long ring = 0; ring < 2; ++ring) {
    auto c = c2();
    auto s = zsigns(c);
    Ring R = ring == 0 ? unit_ring(s) : constant_ring(s, 0);
    auto free = graded::free_module_on(R, {{d0, 0}}).module();
    GradedModule n = ring == 0 ? unit_module(R, constant_functor(c, AbGroup::cyclic(2)))
                               : scalar_module(R, concentrated(s, d0, constant_functor(c, AbGroup::cyclic(2))));
    auto run = run_tor(graded::with_both_sides(n), free, 2);
    CHECK(run.tor.groups.vanishes_above(0));
    auto rep = edge_and_convergence(run.by_m, run.tor.groups);
    CHECK(rep.converges());
    CHECK(rep.collapse_page == 2);
    CHECK(rep.edge_iso);
    auto ext = derived::mext(free, n, 2);
    CHECK(ext.groups.vanishes_above(0));
    auto es = ext_spectral_sequence(ext, 3);
    CHECK(es.ss.failures.empty());
    auto erep = edge_and_convergence(es.ss, ext_target(ext));
    CHECK(erep.converges());
    CHECK(erep.collapse_page == 2);
    CHECK(erep.edge_iso);
  }
}

TEST_CASE("Hyper-Ext pairing agrees with the Yoneda product on E2", "[specseq]") {
  auto c = trivial();
  auto s = zsigns(c);
  auto R = constant_ring(s, 4);
  auto m = scalar_module(R, concentrated(s, d0, constant_functor(c, AbGroup::cyclic(2))));
  auto e = derived::mext(m, m, 2);
  auto es = ext_spectral_sequence(e, 3);
  CHECK(es.ss.failures.empty());
  const IntVector x{1};
  const IntVector one = derived::ext_identity(e);
  for (long r = 2; r <= 3; ++r) {
    CHECK(page_pairing(es, es, es, r, 1, d0, x, 1, d0, x) == derived::yoneda_pairing(e, e, e, 1, d0, x, 1, d0, x));
    CHECK(page_pairing(es, es, es, r, 1, d0, x, 1, d0, x) == IntVector{1});
    CHECK(page_pairing(es, es, es, r, 0, d0, one, 1, d0, x) == x);
    // Leibniz: every d_r vanishes here, so d_r(xy) = 0 = d_r(x) y + x d_r(y)
    auto xy = page_pairing(es, es, es, r, 1, d0, x, 1, d0, x);
    auto dxy = page_differential(es, r, 2, d0, xy);
    CHECK(std::all_of(dxy.begin(), dxy.end(), [](const zmod::Integer& v) { return v == 0; }));
  }
  CHECK_THROWS_AS(page_pairing(es, es, es, 1, 1, d0, x, 1, d0, x), ValidationError);
}
