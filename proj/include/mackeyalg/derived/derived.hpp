#ifndef MACKEYALG_DERIVED_DERIVED_HPP
#define MACKEYALG_DERIVED_DERIVED_HPP

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mackeyalg/derived/complex.hpp"
#include "mackeyalg/graded/over_ring.hpp"

namespace mackeyalg::derived {

using graded::BoxOverR;
using graded::FuncOverR;

/// Functors indexed by (homological degree s, internal degree).
struct BigradedMackey {
  Signs signs;
  std::map<long, GradedMackey> rows;

  GradedMackey row(long s) const {
    auto it = rows.find(s);
    return it == rows.end() ? GradedMackey{signs, {}} : it->second;
  }

  MackeyFunctor at(long s, const Degree& t) const { return row(s).layer(t); }

  /// No nonzero entry with s > s0.
  bool vanishes_above(long s0) const {
    for (auto& [s, g] : rows)
      if (s > s0 && !g.is_zero()) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// MTor.

struct TorData {
  std::size_t s_max = 0;
  GradedModule n;
  Resolution resolution;
  std::vector<BoxOverR> boxes;
  Complex complex;
  std::map<long, GradedHomology> homology;
  BigradedMackey groups;
};

/// N box_R P_s with d = id box_R d_s.
inline Complex tor_complex(const GradedModule& n, const Resolution& p, std::vector<BoxOverR>& boxes) {
  Complex c;
  c.signs = n.m.signs;
  boxes.clear();
  for (std::size_t s = 0; s < p.stages.size(); ++s) {
    boxes.push_back(graded::box_over_R(n, p.stage(s)));
    c.terms[static_cast<long>(s)] = boxes.back().result;
  }
  const GradedMorphism id = GradedMorphism::identity(n.m);
  for (std::size_t s = 1; s < p.stages.size(); ++s)
    c.diff[static_cast<long>(s)] =
        graded::box_over_R_map(boxes[s], boxes[s - 1], n, n, p.stage(s), p.stage(s - 1), id, p.d[s]);
  return c;
}

/// MTor over a given resolution of the left module; the resolution must
/// reach stage s_max + 1.
inline TorData mtor_with(const GradedModule& n, const Resolution& p, std::size_t s_max) {
  if (p.stages.size() < s_max + 2) throw ValidationError("mtor: resolution is too short for the requested s_max");
  TorData t;
  t.s_max = s_max;
  t.n = graded::as_side(n, Side::right);
  t.resolution = p;
  t.complex = tor_complex(t.n, p, t.boxes);
  t.groups.signs = n.m.signs;
  for (long s = 0; s <= static_cast<long>(s_max); ++s) {
    t.homology[s] = homology(t.complex, s);
    t.groups.rows[s] = t.homology[s].result;
  }
  return t;
}

/// MTor^R_s(N, M) for s <= s_max: homology of N box_R P with P a free
/// resolution of M. N must be a right module, M a left module.
inline TorData mtor(const GradedModule& n, const GradedModule& m, std::size_t s_max, unsigned seed = 0) {
  if (!n.is_right()) throw ValidationError("mtor: first argument must be a right module");
  if (!m.is_left()) throw ValidationError("mtor: second argument must be a left module");
  return mtor_with(n, projective_resolution(m, s_max + 1, Side::left, seed), s_max);
}

// ---------------------------------------------------------------------------
// MExt.

struct ExtData {
  std::size_t s_max = 0;
  GradedModule m;
  Resolution resolution;
  std::vector<Degree> window;
  std::vector<FuncOverR> funcs;
  Complex complex;
  std::map<long, GradedHomology> cohomology;
  BigradedMackey groups;
};

/// g^*: func_R(L, M) -> func_R(L2, M) for a module map g: L2 -> L of degree 0.
inline GradedMorphism precompose(const FuncOverR& from, const FuncOverR& to, const GradedModule& l2,
                                 const GradedModule& l, const GradedMorphism& g) {
  GradedMorphism out{g.shift, {}};
  for (auto& tau : to.window) {
    auto fi = from.levels.find(tau);
    if (fi == from.levels.end()) continue;
    MackeyMorphism m;
    for (std::size_t j = 0; j < fi->second.size(); ++j) {
      const graded::ModuleHom& a = fi->second[j];
      const graded::ModuleHom& b = to.at(tau, j);
      const GradedMackey& target = to.shifted[j].m;
      IntMatrix mat(b.group().ngens(), a.group().ngens());
      for (std::size_t i = 0; i < a.group().ngens(); ++i) {
        GradedMorphism phi = a.morphism(a.group().basis_vector(i));
        IntVector c = b.solution.coords(b.blocks_of(l2.m, target, graded::compose(l2.m, l.m, target, phi, g)));
        for (std::size_t r = 0; r < c.size(); ++r) mat(r, i) = c[r];
      }
      m.comps.emplace_back(a.group(), b.group(), std::move(mat));
    }
    out.comps.emplace(tau, std::move(m));
  }
  return out;
}

/// Internal degrees M_b - (P_s)_a over all stages: enough for every cochain
/// group to be complete.
inline std::vector<Degree> ext_window(const Resolution& p, const GradedModule& m) {
  std::set<Degree> ts;
  for (std::size_t s = 0; s < p.stages.size(); ++s)
    for (auto& a : p.stage(s).m.support())
      for (auto& b : m.m.support()) ts.insert(b - a);
  return {ts.begin(), ts.end()};
}

/// func_R(P_s, M) with d^s = (d_{s+1})^*.
inline Complex ext_complex(const Resolution& p, const GradedModule& m, const std::vector<Degree>& window,
                           std::vector<FuncOverR>& funcs) {
  Complex c;
  c.signs = m.m.signs;
  c.cohomological = true;
  funcs.clear();
  for (std::size_t s = 0; s < p.stages.size(); ++s) {
    funcs.push_back(graded::func_over_R(p.stage(s), m, window));
    c.terms[static_cast<long>(s)] = funcs.back().result;
  }
  for (std::size_t s = 0; s + 1 < p.stages.size(); ++s)
    c.diff[static_cast<long>(s)] = precompose(funcs[s], funcs[s + 1], p.stage(s + 1), p.stage(s), p.d[s + 1]);
  return c;
}

inline ExtData mext_with(const Resolution& p, const GradedModule& m, std::size_t s_max,
                         std::optional<std::vector<Degree>> window = std::nullopt) {
  if (p.stages.size() < s_max + 2) throw ValidationError("mext: resolution is too short for the requested s_max");
  ExtData e;
  e.s_max = s_max;
  e.m = graded::as_side(m, p.side);
  e.resolution = p;
  e.window = window ? *window : ext_window(p, e.m);
  e.complex = ext_complex(p, e.m, e.window, e.funcs);
  e.groups.signs = m.m.signs;
  for (long s = 0; s <= static_cast<long>(s_max); ++s) {
    e.cohomology[s] = homology(e.complex, s);
    e.groups.rows[s] = e.cohomology[s].result;
  }
  return e;
}

/// MExt_R^s(L, M) for s <= s_max: cohomology of func_R(P, M) with P a free
/// resolution of L, over a common window of internal degrees.
inline ExtData mext(const GradedModule& l, const GradedModule& m, std::size_t s_max,
                    std::optional<std::vector<Degree>> window = std::nullopt, unsigned seed = 0) {
  const Side side = l.is_left() && m.is_left() ? Side::left : Side::right;
  return mext_with(projective_resolution(l, s_max + 1, side, seed), m, s_max, std::move(window));
}

/// Entrywise comparison of canonical invariants.
inline bool same_groups(const BigradedMackey& a, const BigradedMackey& b) {
  std::set<long> ss;
  for (auto& [s, g] : a.rows) ss.insert(s);
  for (auto& [s, g] : b.rows) ss.insert(s);
  for (long s : ss)
    if (!graded::same_values(a.row(s), b.row(s))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Horseshoe resolutions and long exact sequences.

/// Module maps 0 -> A -i-> B -p-> C -> 0.
struct ShortExactModules {
  GradedModule a, b, c;
  GradedMorphism i, p;
};

inline std::vector<std::string> short_exact_module_failures(const ShortExactModules& e) {
  std::vector<std::string> out;
  if (!graded::is_module_map(e.a, e.b, e.i)) out.push_back("i is not a module map");
  if (!graded::is_module_map(e.b, e.c, e.p)) out.push_back("p is not a module map");
  Complex x;
  x.signs = e.a.m.signs;
  x.terms = {{2, e.a.m}, {1, e.b.m}, {0, e.c.m}};
  x.diff = {{2, e.i}, {1, e.p}};
  for (long s = 0; s <= 2; ++s)
    if (!homology(x, s).result.is_zero()) out.push_back("not exact at position " + std::to_string(s));
  return out;
}

/// Copies the summands of x in P (degree d, level k) to summands first,
/// first + 1, ... of Q.
inline IntVector embed_generators(const FreeModule& p, const FreeModule& q, std::size_t first, const Degree& d,
                                  std::size_t k, const IntVector& x) {
  IntVector out(q.module().m.layer(d).value(k).ngens());
  if (x.empty()) return out;
  const std::size_t n = p.gens.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = p.sum.offset(i, d, k), hi = i + 1 < n ? p.sum.offset(i + 1, d, k) : x.size();
    const std::size_t o = q.sum.offset(first + i, d, k);
    for (std::size_t r = lo; r < hi; ++r) out[o + r - lo] = x[r];
  }
  return out;
}

/// P_B = P_A (+) P_C resolving B, with the inclusion and projection of
/// summands as chain maps over i and p.
struct Horseshoe {
  Resolution pa, pb, pc;
  std::vector<GradedMorphism> inc, proj;
};

inline Horseshoe horseshoe(const ShortExactModules& e, std::size_t stages) {
  if (stages == 0) throw ValidationError("horseshoe: need at least one stage");
  Horseshoe h;
  h.pa = projective_resolution(e.a, stages - 1, Side::left);
  h.pc = projective_resolution(e.c, stages - 1, Side::left);
  Resolution& pb = h.pb;
  pb.module = graded::as_side(e.b, Side::left);
  pb.s_max = stages - 1;
  const Ring& R = e.b.ring;
  for (std::size_t s = 0; s < stages; ++s) {
    const FreeModule& fa = h.pa.stages[s];
    const FreeModule& fc = h.pc.stages[s];
    std::vector<FreeGenerator> gens = fa.gens;
    gens.insert(gens.end(), fc.gens.begin(), fc.gens.end());
    FreeModule fb = graded::free_module_on(R, gens, Side::left);
    const std::size_t na = fa.gens.size();
    // inclusion and projection of summands
    std::vector<IntVector> ia, pc;
    for (std::size_t j = 0; j < na; ++j) ia.push_back(graded::generator_element(fb, j));
    for (std::size_t j = 0; j < gens.size(); ++j)
      pc.push_back(j < na ? IntVector(fc.module().m.layer(gens[j].tau).value(gens[j].cls).ngens())
                          : graded::generator_element(fc, j - na));
    GradedMorphism inc = graded::free_map(fa, fb.module(), ia, fa.module().m.zero_degree());
    GradedMorphism proj = graded::free_map(fb, fc.module(), pc, fa.module().m.zero_degree());
    const GradedModule& tb = s == 0 ? pb.module : pb.stage(s - 1);
    const GradedModule& ta = h.pa.target(s);
    const GradedModule& tc = h.pc.target(s);
    std::vector<IntVector> images;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const FreeGenerator& g = gens[j];
      if (j < na) {
        IntVector x = h.pa.d[s].at(fa.module().m, ta.m, g.tau).comps[g.cls].apply(graded::generator_element(fa, j));
        const GradedMorphism& down = s == 0 ? e.i : h.inc[s - 1];
        images.push_back(down.at(ta.m, tb.m, g.tau).comps[g.cls].apply(x));
        continue;
      }
      IntVector y = h.pc.d[s].at(fc.module().m, tc.m, g.tau).comps[g.cls].apply(graded::generator_element(fc, j - na));
      if (s == 0) {
        auto x = zmod::solve(e.p.at(e.b.m, e.c.m, g.tau).comps[g.cls], y);
        if (!x) throw ValidationError("horseshoe: B -> C is not surjective");
        images.push_back(*x);
        continue;
      }
      // lift y to a cycle of P_B,s-1 by correcting along P_A,s-1
      const GradedModule& pbm = pb.stage(s - 1);
      const GradedModule& pam = h.pa.stage(s - 1);
      const GradedModule& tb2 = pb.target(s - 1);
      IntVector x0 = embed_generators(h.pc.stages[s - 1], pb.stages[s - 1], h.pa.stages[s - 1].gens.size(), g.tau, g.cls, y);
      const GroupHom dk = pb.d[s - 1].at(pbm.m, tb2.m, g.tau).comps[g.cls];
      const GroupHom ik = h.inc[s - 1].at(pam.m, pbm.m, g.tau).comps[g.cls];
      auto z = zmod::solve(zmod::compose(dk, ik), dk.apply(x0));
      if (!z) throw InternalError("horseshoe: correction does not exist");
      IntVector iz = ik.apply(*z);
      for (std::size_t r = 0; r < x0.size(); ++r) x0[r] -= iz[r];
      x0 = pbm.m.layer(g.tau).value(g.cls).normalize(std::move(x0));
      images.push_back(x0);
    }
    pb.d.push_back(graded::free_map(fb, tb, images, fa.module().m.zero_degree()));
    pb.stages.push_back(std::move(fb));
    h.inc.push_back(std::move(inc));
    h.proj.push_back(std::move(proj));
  }
  return h;
}

/// LES of MTor_*(N, -) for 0 -> A -> B -> C -> 0, through s_max.
inline LongExactSequence tor_long_exact_sequence(const GradedModule& n, const ShortExactModules& e, std::size_t s_max) {
  const GradedModule nr = graded::as_side(n, Side::right);
  Horseshoe h = horseshoe(e, s_max + 2);
  ShortExactComplexes x;
  std::vector<BoxOverR> ba, bb, bc;
  x.a = tor_complex(nr, h.pa, ba);
  x.b = tor_complex(nr, h.pb, bb);
  x.c = tor_complex(nr, h.pc, bc);
  const GradedMorphism id = GradedMorphism::identity(nr.m);
  for (std::size_t s = 0; s < h.inc.size(); ++s) {
    const long ls = static_cast<long>(s);
    x.i[ls] = graded::box_over_R_map(ba[s], bb[s], nr, nr, h.pa.stage(s), h.pb.stage(s), id, h.inc[s]);
    x.p[ls] = graded::box_over_R_map(bb[s], bc[s], nr, nr, h.pb.stage(s), h.pc.stage(s), id, h.proj[s]);
  }
  std::vector<long> spots;
  for (long s = 0; s <= static_cast<long>(s_max); ++s) spots.push_back(s);
  LongExactSequence les = long_exact_sequence(x, spots);
  for (auto& f : short_exact_failures(x)) les.failures.push_back("levelwise: " + f);
  return les;
}

/// LES of MExt^*(-, M) for 0 -> A -> B -> C -> 0, through s_max:
/// 0 -> func(P_C, M) -> func(P_B, M) -> func(P_A, M) -> 0.
inline LongExactSequence ext_long_exact_sequence(const ShortExactModules& e, const GradedModule& m, std::size_t s_max) {
  Horseshoe h = horseshoe(e, s_max + 2);
  std::set<Degree> ws;
  for (auto* r : {&h.pa, &h.pb, &h.pc})
    for (auto& t : ext_window(*r, m)) ws.insert(t);
  const std::vector<Degree> window(ws.begin(), ws.end());
  ShortExactComplexes x;
  std::vector<FuncOverR> fa, fb, fc;
  x.a = ext_complex(h.pc, m, window, fc);
  x.b = ext_complex(h.pb, m, window, fb);
  x.c = ext_complex(h.pa, m, window, fa);
  for (std::size_t s = 0; s < h.inc.size(); ++s) {
    const long ls = static_cast<long>(s);
    x.i[ls] = precompose(fc[s], fb[s], h.pb.stage(s), h.pc.stage(s), h.proj[s]);
    x.p[ls] = precompose(fb[s], fa[s], h.pa.stage(s), h.pb.stage(s), h.inc[s]);
  }
  std::vector<long> spots;
  for (long s = 0; s <= static_cast<long>(s_max); ++s) spots.push_back(s);
  LongExactSequence les = long_exact_sequence(x, spots);
  for (auto& f : short_exact_failures(x)) les.failures.push_back("levelwise: " + f);
  return les;
}

/// 0 -> A -> B -> B/A -> 0 with A generated by `count` random elements of B.
inline ShortExactModules random_short_exact(const GradedModule& b, std::mt19937& rng, std::size_t count = 1) {
  const GradedModule bl = graded::as_side(b, Side::left);
  const std::size_t nc = bl.ctx().num_classes();
  std::vector<std::pair<Degree, std::size_t>> spots;
  for (auto& d : bl.m.support())
    for (std::size_t k = 0; k < nc; ++k)
      if (!bl.m.layer(d).value(k).is_trivial()) spots.emplace_back(d, k);
  if (spots.empty()) throw ValidationError("random_short_exact: module is zero");
  std::vector<FreeGenerator> gens;
  std::vector<IntVector> images;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& [d, k] = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    const AbGroup v = bl.m.layer(d).value(k);
    IntVector x(v.ngens());
    for (auto& c : x) c = coef(rng);
    gens.push_back({d, k});
    images.push_back(v.normalize(std::move(x)));
  }
  FreeModule f = graded::free_module_on(bl.ring, gens, Side::left);
  GradedMorphism g = graded::free_map(f, bl, images, bl.m.zero_degree());
  auto kc = graded::module_kernel_cokernel(f.module(), bl, g);
  auto kq = graded::module_kernel_cokernel(bl, kc.cokernel, kc.projection);
  return {kq.kernel, bl, kc.cokernel, kq.inclusion, kc.projection};
}

// ---------------------------------------------------------------------------
// Yoneda product.

/// Chain maps F_i: P_{start + i} -> P'_i over a cocycle phi: P_start -> M'
/// of degree tau, for i = 0..q.
inline std::vector<GradedMorphism> lift_cocycle(const Resolution& p, std::size_t start, const Resolution& p2,
                                                const GradedMorphism& phi, std::size_t q) {
  if (p.stages.size() <= start + q || p2.stages.size() <= q) throw ValidationError("lift_cocycle: resolutions are too short");
  std::vector<GradedMorphism> out;
  const Degree tau = phi.shift;
  for (std::size_t i = 0; i <= q; ++i) {
    const FreeModule& src = p.stages[start + i];
    const GradedModule& tgt = p2.stage(i);
    std::vector<IntVector> images;
    for (std::size_t j = 0; j < src.gens.size(); ++j) {
      const FreeGenerator& g = src.gens[j];
      IntVector x = graded::generator_element(src, j);
      IntVector y;
      if (i == 0) {
        y = phi.at(src.module().m, p2.module.m, g.tau).comps[g.cls].apply(x);
      } else {
        const GradedModule& below = p.stage(start + i - 1);
        IntVector dx = p.d[start + i].at(src.module().m, below.m, g.tau).comps[g.cls].apply(x);
        y = out[i - 1].at(below.m, p2.stage(i - 1).m, g.tau).comps[g.cls].apply(dx);
      }
      const GradedModule& down = p2.target(i);
      auto z = zmod::solve(p2.d[i].at(tgt.m, down.m, g.tau + tau).comps[g.cls], y);
      if (!z) throw InternalError("lift_cocycle: no lift through the resolution");
      images.push_back(*z);
    }
    out.push_back(graded::free_map(src, tgt, images, tau));
  }
  return out;
}

/// The cocycle P_s -> M of degree tau representing a class of MExt^s at G/G.
inline GradedMorphism ext_cocycle(const ExtData& e, std::size_t s, const Degree& tau, const IntVector& cls) {
  const SubFunctor* part = e.cohomology.at(static_cast<long>(s)).part(tau);
  if (part == nullptr) throw ValidationError("ext_cocycle: no cochains in this degree");
  const std::size_t top = part->levels.size() - 1;
  return e.funcs[s].morphism(tau, part->levels[top].lift_element(cls));
}

/// Class at G/G of a cocycle P_s -> M of degree tau.
inline IntVector ext_class(const ExtData& e, std::size_t s, const GradedMorphism& f) {
  const SubFunctor* part = e.cohomology.at(static_cast<long>(s)).part(f.shift);
  if (part == nullptr) return {};
  const std::size_t top = part->levels.size() - 1;
  return part->coords(top, e.funcs[s].coords(e.resolution.stage(s), e.m, f));
}

/// b . a for a in MExt^p_tau(M, M')(G/G) and b in MExt^q_sigma(M', M'')(G/G),
/// landing in MExt^{p+q}_{sigma+tau}(M, M'')(G/G). `mm2` must use the same
/// resolution of M as `mm1`.
inline IntVector yoneda_pairing(const ExtData& mm1, const ExtData& m1m2, const ExtData& mm2, std::size_t q,
                                const Degree& sigma, const IntVector& b, std::size_t p, const Degree& tau,
                                const IntVector& a) {
  if (mm1.resolution.generator_log != mm2.resolution.generator_log)
    throw ValidationError("yoneda_pairing: outer Ext groups use different resolutions");
  if (p + q > mm2.s_max) throw ValidationError("yoneda_pairing: total degree exceeds s_max");
  GradedMorphism phi = ext_cocycle(mm1, p, tau, a);
  GradedMorphism psi = ext_cocycle(m1m2, q, sigma, b);
  auto lifts = lift_cocycle(mm1.resolution, p, m1m2.resolution, phi, q);
  const GradedModule& src = mm1.resolution.stage(p + q);
  GradedMorphism prod = graded::compose(src.m, m1m2.resolution.stage(q).m, m1m2.m.m, psi, lifts[q]);
  return ext_class(mm2, p + q, prod);
}

/// The class of the augmentation: the identity of MExt^0(M, M).
inline IntVector ext_identity(const ExtData& e) {
  return ext_class(e, 0, e.resolution.d[0]);
}

/// MExt^0(M, M')(G/G) -> module maps M -> M' of degree tau: the unique f
/// with f o eps = cocycle.
inline IntVector ext0_to_map(const ExtData& e, const FuncOverR& maps, const GradedModule& m, const Degree& tau,
                             const IntVector& cls) {
  GradedMorphism phi = ext_cocycle(e, 0, tau, cls);
  const graded::ModuleHom& h = maps.at(tau, maps.levels.at(tau).size() - 1);
  const graded::ModuleHom& h0 = e.funcs[0].at(tau, e.funcs[0].levels.at(tau).size() - 1);
  // eps^*: Hom(M, M') -> Hom(P_0, M') is injective; solve eps^* f = phi
  IntMatrix mat(h0.group().ngens(), h.group().ngens());
  for (std::size_t i = 0; i < h.group().ngens(); ++i) {
    GradedMorphism f = h.morphism(h.group().basis_vector(i));
    const GradedModule& p0 = e.resolution.stage(0);
    IntVector c = h0.solution.coords(
        h0.blocks_of(p0.m, e.funcs[0].shifted.back().m, graded::compose(p0.m, m.m, e.m.m, f, e.resolution.d[0])));
    for (std::size_t r = 0; r < c.size(); ++r) mat(r, i) = c[r];
  }
  auto x = zmod::solve(GroupHom(h.group(), h0.group(), std::move(mat)),
                       h0.solution.coords(h0.blocks_of(e.resolution.stage(0).m, e.funcs[0].shifted.back().m, phi)));
  if (!x) throw InternalError("ext0_to_map: cocycle does not factor through the augmentation");
  return *x;
}

// ---------------------------------------------------------------------------
// Homology pairing H(C) box H(D) -> H(C box D).

/// f box g on graded box products, with the sign sigma(|g|, a) on M_a box N_b.
inline GradedMorphism graded_box_map(const graded::GradedBox& src, const graded::GradedBox& tgt, const GradedMackey& m,
                                     const GradedMackey& m2, const GradedMackey& n, const GradedMackey& n2,
                                     const GradedMorphism& f, const GradedMorphism& g) {
  const SignTable& s = *m.signs;
  return graded::graded_box_morphism(src, tgt.result, f.shift + g.shift, [&](const graded::GradedBox::Piece& p) {
    const Degree a2 = p.a + f.shift, b2 = p.b + g.shift;
    MackeyMorphism out = MackeyMorphism::zero(p.box.result, tgt.result.layer(a2 + b2));
    auto it = tgt.pieces.find(a2 + b2);
    if (it == tgt.pieces.end()) return out;
    for (auto& q : it->second) {
      if (q.a != a2 || q.b != b2) continue;
      MackeyMorphism h = monoidal::box_morphism(p.box, q.box, f.at(m, m2, p.a), g.at(n, n2, p.b));
      h = mackey::compose(graded::unit_morphism(q.box.result, s.sigma_bits(g.shift, p.a)), h);
      for (std::size_t k = 0; k < out.comps.size(); ++k) out.comps[k].mat.set_block(q.offset[k], 0, h.comps[k].mat);
    }
    return out;
  });
}

/// Entries C_s box D_t with dh = d box id and dv = id box d.
struct BoxBicomplex {
  Bicomplex bicomplex;
  std::map<std::pair<long, long>, graded::GradedBox> boxes;
};

inline BoxBicomplex box_bicomplex(const Complex& c, const Complex& d) {
  if (c.cohomological || d.cohomological) throw ValidationError("box_bicomplex: chain complexes only");
  BoxBicomplex out;
  out.bicomplex.signs = c.signs;
  for (auto& [s, x] : c.terms)
    for (auto& [t, y] : d.terms) {
      out.boxes.emplace(std::make_pair(s, t), graded::graded_box(x, y));
      out.bicomplex.entries[{s, t}] = out.boxes.at({s, t}).result;
    }
  for (auto& [st, bx] : out.boxes) {
    const auto [s, t] = st;
    const GradedMackey x = c.term(s), y = d.term(t);
    if (auto it = out.boxes.find({s - 1, t}); it != out.boxes.end())
      out.bicomplex.dh[st] = graded_box_map(bx, it->second, x, c.term(s - 1), y, y, c.out_of(s), GradedMorphism::identity(y));
    if (auto it = out.boxes.find({s, t - 1}); it != out.boxes.end())
      out.bicomplex.dv[st] = graded_box_map(bx, it->second, x, x, y, d.term(t - 1), GradedMorphism::identity(x), d.out_of(t));
  }
  return out;
}

struct HomologyPairing {
  GradedHomology hc, hd, htot;
  graded::GradedBox source;
  GradedMorphism map;  // source.result -> htot.result
};

/// [x] (x) [y] -> [x (x) y] from H_i(C) box H_j(D) to H_{i+j}(Tot(C box D)).
inline HomologyPairing homology_pairing(const Complex& c, const Complex& d, long i, long j) {
  BoxBicomplex bb = box_bicomplex(c, d);
  TotalComplex tot = total_complex(bb.bicomplex);
  HomologyPairing out;
  out.hc = homology(c, i);
  out.hd = homology(d, j);
  out.htot = homology(tot.complex, i + j);
  out.source = graded::graded_box(out.hc.result, out.hd.result);
  const GContext& ctx = c.signs->context().operator*();
  const auto& blocks = tot.blocks.at(i + j);
  std::size_t where = 0;
  while (blocks[where] != std::make_pair(i, j)) ++where;
  const GradedSum& sum = tot.sums.at(i + j);
  const graded::GradedBox& eb = bb.boxes.at({i, j});
  out.map = graded::graded_box_morphism(out.source, out.htot.result, c.signs->grading().zero(),
                                        [&](const graded::GradedBox::Piece& p) {
    const Degree t = p.a + p.b;
    const MackeyFunctor tl = out.htot.result.layer(t);
    MackeyMorphism m;
    const SubFunctor* target = out.htot.part(t);
    for (std::size_t k = 0; k < ctx.num_classes(); ++k) {
      const auto& lv = p.box.levels[k];
      IntMatrix mat(tl.value(k).ngens(), p.box.result.value(k).ngens());
      for (std::size_t g = 0; g < lv.value.group().ngens(); ++g) {
        const IntVector lift = lv.value.lift(g);
        IntVector z(sum.result.layer(t).value(k).ngens());
        for (std::size_t sl = 0; sl < lv.slots.size(); ++sl) {
          const int f = lv.slots[sl];
          const std::size_t kk = ctx.map(f).from;
          for (std::size_t e = 0; e < lv.tensors[sl].gens.size(); ++e) {
            const Integer& coef = lift[lv.offsets[sl] + e];
            if (coef == 0) continue;
            auto [pa, qb] = lv.tensors[sl].gens[e];
            const IntVector x = out.hc.parts.at(p.a).levels[kk].lift(pa);
            const IntVector y = out.hd.parts.at(p.b).levels[kk].lift(qb);
            IntVector w = embed_part(sum, where, t, k, graded::detail::box_generator(eb, p.a, p.b, f, x, y));
            for (std::size_t r = 0; r < w.size(); ++r) z[r] += coef * w[r];
          }
        }
        if (target == nullptr) continue;
        IntVector cz = target->coords(k, sum.result.layer(t).value(k).normalize(std::move(z)));
        for (std::size_t r = 0; r < cz.size(); ++r) mat(r, g) = cz[r];
      }
      m.comps.emplace_back(p.box.result.value(k), tl.value(k), std::move(mat));
    }
    return m;
  });
  return out;
}

}  // namespace mackeyalg::derived

#endif  // MACKEYALG_DERIVED_DERIVED_HPP
