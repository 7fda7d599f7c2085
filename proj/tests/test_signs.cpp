#include <catch_amalgamated.hpp>

#include <random>

#include "mackeyalg/monoidal/signs.hpp"

using namespace mackeyalg;
using namespace mackeyalg::monoidal;
using burnside::GContext;

namespace {

Degree random_degree(std::size_t rank, long w, std::mt19937& rng) {
  std::uniform_int_distribution<long> d(-w, w);
  Degree a(rank);
  for (auto& v : a) v = d(rng);
  return a;
}

Cochain2 random_cochain(const DegreeWindow& w, std::size_t bits, std::mt19937& rng) {
  Cochain2 d(w);
  std::uniform_int_distribution<Unit> u(0, (1ul << bits) - 1);
  const std::size_t z = w.zero_index();
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = 0; b < w.size(); ++b)
      if (a != z && b != z && d.in_domain(a, b)) d.at(a, b) = u(rng);
  return d;
}

}  // namespace

TEST_CASE("sigma for C2", "[signs]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  SignTable s(c, c2_grading());
  const Degree r0{1, 0}, r1{0, 1};
  // classes ascending: coefficients of [C2/e], [C2/C2]
  CHECK(s.sigma(r0, r0) == IntVector{0, -1});
  // [C2/e] has marks (2, 0), so 1 - [C2/e] has marks (-1, 1)
  CHECK(s.sigma(r1, r1) == IntVector{-1, 1});
  CHECK(burnside::marks(*c, s.sigma(r1, r1)) == IntVector{-1, 1});
  CHECK(s.sigma(r0, r1) == IntVector{0, 1});
  CHECK(s.sigma(r1, r0) == IntVector{0, 1});
}

TEST_CASE("sigma is antisymmetric and bilinear", "[signs]") {
  std::mt19937 rng(3);
  auto c = GContext::make(gdata::cyclic_group(2));
  SignTable s(c, c2_grading());
  const auto one = burnside::ring_one(*c);
  for (int trial = 0; trial < 50; ++trial) {
    Degree a = random_degree(2, 3, rng), b = random_degree(2, 3, rng), g = random_degree(2, 3, rng);
    CHECK(burnside::ring_multiply(*c, s.sigma(a, b), s.sigma(b, a)) == one);
    CHECK(s.sigma(a + b, g) == burnside::ring_multiply(*c, s.sigma(a, g), s.sigma(b, g)));
    CHECK(s.sigma(a, b + g) == burnside::ring_multiply(*c, s.sigma(a, b), s.sigma(a, g)));
  }
}

TEST_CASE("integer grading gives the Koszul sign", "[signs]") {
  for (auto& g : {gdata::trivial_group(), gdata::cyclic_group(3), gdata::symmetric_group(3)}) {
    auto c = GContext::make(g);
    SignTable s(c, integer_grading(c->num_classes()));
    IntVector minus_one(c->num_classes());
    minus_one.back() = -1;
    CHECK(s.sigma({1}, {1}) == minus_one);
    CHECK(s.sigma({2}, {3}) == burnside::ring_one(*c));
    CHECK(s.sigma({-1}, {3}) == minus_one);
  }
}

TEST_CASE("sign tables are validated", "[signs]") {
  // A(C3) has only the units 1 and -1, so marks (-1, 1) are not achievable
  auto c3 = GContext::make(gdata::cyclic_group(3));
  CHECK_THROWS_AS(SignTable(c3, GradingGroup{{"x"}, {{1, 0}}}), ValidationError);
  auto c2 = GContext::make(gdata::cyclic_group(2));
  SignTable ok(c2, c2_grading());
  auto base = ok.base();
  base[0][1] = 3;
  CHECK_THROWS_AS(SignTable(c2, c2_grading(), base), ValidationError);
  base[1][0] = 3;
  SignTable flexible(c2, c2_grading(), base);
  CHECK(flexible.sigma({1, 0}, {0, 1}) == IntVector{0, -1});
  base[0][0] = 0;
  CHECK_THROWS_AS(SignTable(c2, c2_grading(), base), ValidationError);
  CHECK_THROWS_AS(SignTable(c2, GradingGroup{{"x"}, {{1}}}), ValidationError);
}

TEST_CASE("coboundaries are cocycles", "[signs]") {
  std::mt19937 rng(5);
  DegreeWindow w = DegreeWindow::symmetric(2, 2);
  CHECK(coboundary(Cochain2(w)).is_trivial());
  for (int trial = 0; trial < 3; ++trial) {
    auto d = random_cochain(w, 2, rng);
    auto a = coboundary(d);
    CHECK(a.normalized());
    CHECK(is_cocycle(a));
  }
}

TEST_CASE("a non-cocycle is detected and not trivializable", "[signs]") {
  DegreeWindow w = DegreeWindow::symmetric(1, 3);
  Cocycle3 a(w);
  a.at(w.index({1}), w.index({1}), w.index({1})) = 1;
  CHECK_FALSE(is_cocycle(a));
  CHECK_FALSE(trivialize(a, 1).has_value());
}

TEST_CASE("lexicographic f-table has trivial cocycle", "[signs]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  SignTable s(c, c2_grading());
  DegreeWindow w = DegreeWindow::nonnegative(2, 3);
  auto a = cocycle_of(s, lexicographic_f_table(w));
  CHECK(a.is_trivial());
}

TEST_CASE("perturbing f changes the cocycle by a coboundary", "[signs]") {
  std::mt19937 rng(9);
  auto c = GContext::make(gdata::cyclic_group(2));
  SignTable s(c, c2_grading());
  DegreeWindow w = DegreeWindow::nonnegative(2, 2);
  auto lex = lexicographic_f_table(w);
  for (int trial = 0; trial < 4; ++trial) {
    auto d = random_cochain(w, 2, rng);
    auto a = cocycle_of(s, perturb(lex, d));
    CHECK(a == coboundary(d));
    auto d2 = trivialize(a, 2);
    REQUIRE(d2.has_value());
    CHECK(d2->normalized());
    CHECK(coboundary(*d2) == a);
  }
}

TEST_CASE("swapping equal factors acts through sigma", "[signs]") {
  auto c = GContext::make(gdata::cyclic_group(2));
  SignTable s(c, c2_grading());
  DegreeWindow w = DegreeWindow::nonnegative(2, 2);
  auto f = lexicographic_f_table(w);
  const std::size_t r0 = w.index({1, 0}), r1 = w.index({0, 1});
  // f_{rho0, rho0} and f_{rho1, rho1} swap the two factors
  f.at(r0, r0).perm = {1, 0};
  f.at(r1, r1).perm = {1, 0};
  Cochain2 d(w);
  d.at(r0, r0) = s.sigma_bits({1, 0}, {1, 0});
  d.at(r1, r1) = s.sigma_bits({0, 1}, {0, 1});
  CHECK(d.at(r0, r0) == 3);
  CHECK(d.at(r1, r1) == 1);
  CHECK(cocycle_of(s, f) == coboundary(d));
  auto bad = lexicographic_f_table(w);
  bad.at(r0, r1).perm = {0, 0};
  CHECK_THROWS_AS(cocycle_of(s, bad), ValidationError);
  auto unnormalized = lexicographic_f_table(w);
  unnormalized.at(w.zero_index(), r1).unit = 1;
  CHECK_THROWS_AS(cocycle_of(s, unnormalized), ValidationError);
}

TEST_CASE("restriction to nonnegative degrees preserves trivializability", "[signs]") {
  std::mt19937 rng(13);
  for (std::size_t rank : {1u, 2u}) {
    DegreeWindow w = DegreeWindow::symmetric(rank, 2);
    for (int trial = 0; trial < 2; ++trial) {
      auto a = coboundary(random_cochain(w, 2, rng));
      auto rc = restriction_check(a, 2);
      CHECK(rc.full.solvable());
      CHECK(rc.nonnegative.solvable());
      CHECK(rc.preserved());
    }
  }
}
