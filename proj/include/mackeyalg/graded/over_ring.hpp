#ifndef MACKEYALG_GRADED_OVER_RING_HPP
#define MACKEYALG_GRADED_OVER_RING_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mackeyalg/graded/module.hpp"

namespace mackeyalg::graded {

using zmod::SparseVec;

namespace detail {

inline void check_same_ring(const GradedModule& a, const GradedModule& b) {
  if (a.ring != b.ring) throw ValidationError("modules are over different rings");
}

/// [x (x) y]_f in the graded box, or zero when the summand vanishes.
inline IntVector box_generator(const GradedBox& bx, const Degree& a, const Degree& b, int f, const IntVector& x,
                               const IntVector& y) {
  auto it = bx.pieces.find(a + b);
  const std::size_t j = bx.result.ctx().map(f).to;
  const std::size_t n = bx.result.layer(a + b).value(j).ngens();
  if (it == bx.pieces.end()) return IntVector(n);
  for (auto& p : it->second)
    if (p.a == a && p.b == b) return bx.generator(a, b, f, x, y);
  return IntVector(n);
}

/// Sub-Mackey functor of X generated by the elements gens[k] of X(O_k): at
/// O_j it is spanned by the images of all basis spans O_j -> O_k.
inline std::vector<std::vector<SparseVec>> generated_subfunctor(const MackeyFunctor& x,
                                                                const std::vector<std::vector<IntVector>>& gens) {
  const GContext& c = x.ctx();
  const std::size_t nc = c.num_classes();
  std::vector<std::vector<SparseVec>> out(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    if (gens[k].empty()) continue;
    for (std::size_t j = 0; j < nc; ++j) {
      const int oj = c.orbit_object(j), ok = c.orbit_object(k);
      for (std::size_t b = 0; b < c.hom_rank(oj, ok); ++b) {
        GroupHom h = x.evaluate(burnside::BurnsideMorphism::basis(c, oj, ok, b));
        for (auto& g : gens[k]) {
          IntVector y = h.apply(g);
          if (!x.value(j).is_zero(y)) out[j].push_back(SparseVec::from_dense(y));
        }
      }
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Box product over R.

/// N box_R M: the quotient of N box M by the sub-Mackey functor generated by
/// [n r (x) m] - [n (x) r m] at the identity slots.
struct BoxOverR {
  GradedBox box;
  std::map<Degree, SubFunctor> quotient;
  GradedMackey result;

  /// Class of [x (x) y]_f.
  IntVector generator(const Degree& a, const Degree& b, int f, const IntVector& x, const IntVector& y) const {
    auto it = quotient.find(a + b);
    const std::size_t j = result.ctx().map(f).to;
    if (it == quotient.end()) return IntVector(result.layer(a + b).value(j).ngens());
    return it->second.levels[j].coords(detail::box_generator(box, a, b, f, x, y));
  }
};

inline BoxOverR box_over_R(const GradedModule& n, const GradedModule& m) {
  detail::check_same_ring(n, m);
  if (!n.is_right() || !m.is_left()) throw ValidationError("box_over_R needs a right and a left module");
  const GradedMackey& R = n.ring->r;
  const GContext& c = n.ctx();
  const std::size_t nc = c.num_classes();
  BoxOverR out;
  out.box = graded_box(n.m, m.m);
  out.result.signs = n.m.signs;
  std::map<Degree, std::vector<std::vector<IntVector>>> rel;
  for (auto& [t, l] : out.box.result.layers) rel[t].assign(nc, {});
  for (auto& a : n.m.support())
    for (auto& g : R.support())
      for (auto& b : m.m.support()) {
        const Degree t = a + g + b;
        auto it = rel.find(t);
        if (it == rel.end()) continue;
        for (std::size_t k = 0; k < nc; ++k) {
          const int id = c.identity_map(static_cast<int>(k));
          const AbGroup vn = n.m.layer(a).value(k), vr = R.layer(g).value(k), vm = m.m.layer(b).value(k);
          for (std::size_t p = 0; p < vn.ngens(); ++p)
            for (std::size_t s = 0; s < vr.ngens(); ++s) {
              const IntVector x = vn.basis_vector(p), r = vr.basis_vector(s);
              const IntVector xr = n.act_right(a, g, k, x, r);
              for (std::size_t q = 0; q < vm.ngens(); ++q) {
                const IntVector y = vm.basis_vector(q);
                IntVector u = detail::box_generator(out.box, a + g, b, id, xr, y);
                IntVector v = detail::box_generator(out.box, a, g + b, id, x, m.act_left(g, b, k, r, y));
                for (std::size_t i = 0; i < u.size(); ++i) u[i] -= v[i];
                u = out.box.result.layer(t).value(k).normalize(std::move(u));
                if (!out.box.result.layer(t).value(k).is_zero(u)) it->second[k].push_back(std::move(u));
              }
            }
        }
      }
  for (auto& [t, x] : out.box.result.layers) {
    std::vector<std::vector<SparseVec>> all(nc);
    for (std::size_t k = 0; k < nc; ++k) all[k] = mackey::all_generators(x.value(k));
    SubFunctor q = mackey::subquotient(x, all, detail::generated_subfunctor(x, rel[t]));
    if (!q.functor.is_zero()) out.result.layers.emplace(t, q.functor);
    out.quotient.emplace(t, std::move(q));
  }
  return out;
}

/// f box_R g for module maps f: N -> N', g: M -> M', with the Koszul sign
/// sigma(|g|, |x|) on x (x) y.
inline GradedMorphism box_over_R_map(const BoxOverR& src, const BoxOverR& tgt, const GradedModule& n,
                                     const GradedModule& n2, const GradedModule& m, const GradedModule& m2,
                                     const GradedMorphism& f, const GradedMorphism& g) {
  const SignTable& s = *n.m.signs;
  GradedMorphism amb = graded_box_morphism(src.box, tgt.box.result, f.shift + g.shift, [&](const GradedBox::Piece& p) {
    const Degree a2 = p.a + f.shift, b2 = p.b + g.shift;
    const MackeyFunctor tl = tgt.box.result.layer(a2 + b2);
    MackeyMorphism out = MackeyMorphism::zero(p.box.result, tl);
    auto it = tgt.box.pieces.find(a2 + b2);
    if (it == tgt.box.pieces.end()) return out;
    for (auto& q : it->second) {
      if (q.a != a2 || q.b != b2) continue;
      MackeyMorphism h = monoidal::box_morphism(p.box, q.box, f.at(n.m, n2.m, p.a), g.at(m.m, m2.m, p.b));
      h = mackey::compose(unit_morphism(q.box.result, s.sigma_bits(g.shift, p.a)), h);
      for (std::size_t k = 0; k < out.comps.size(); ++k) out.comps[k].mat.set_block(q.offset[k], 0, h.comps[k].mat);
    }
    return out;
  });
  GradedMorphism out{amb.shift, {}};
  for (auto& [t, sq] : src.quotient) {
    auto it = tgt.quotient.find(t + amb.shift);
    if (it == tgt.quotient.end()) continue;
    out.comps.emplace(t, mackey::induced_morphism(sq, it->second, amb.at(src.box.result, tgt.box.result, t)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Function object over R.

/// func_R(L, M)_tau(O_j) = R-module maps L -> M_{O_j} of degree tau.
struct FuncOverR {
  std::vector<Degree> window;
  std::vector<GradedModule> shifted;  // M_{O_j}
  std::map<Degree, std::vector<ModuleHom>> levels;
  GradedMackey result;

  const ModuleHom& at(const Degree& tau, std::size_t j) const { return levels.at(tau)[j]; }

  /// The module map L -> M of degree tau given by an element of the value at
  /// G/G (M_{G/G} = M).
  GradedMorphism morphism(const Degree& tau, const IntVector& c) const { return at(tau, levels.at(tau).size() - 1).morphism(c); }

  IntVector coords(const GradedModule& l, const GradedModule& m, const GradedMorphism& f) const {
    const ModuleHom& h = at(f.shift, levels.at(f.shift).size() - 1);
    return h.solution.coords(h.blocks_of(l.m, m.m, f));
  }
};

namespace detail {

/// Postcomposition of every block with a family of maps of layers, read off
/// in the coordinates of the target hom group.
inline GroupHom hom_postcompose(const ModuleHom& from, const ModuleHom& to, std::size_t nc,
                                const std::map<Degree, MackeyMorphism>& psi) {
  IntMatrix mat(to.group().ngens(), from.group().ngens());
  for (std::size_t i = 0; i < from.group().ngens(); ++i) {
    auto blocks = from.solution.element(from.group().basis_vector(i));
    for (std::size_t d = 0; d < from.degrees.size(); ++d) {
      const MackeyMorphism& p = psi.at(from.degrees[d]);
      for (std::size_t k = 0; k < nc; ++k) {
        auto& b = blocks[d * nc + k];
        b = zmod::compose(p.comps[k], b);
      }
    }
    IntVector c = to.solution.coords(blocks);
    for (std::size_t r = 0; r < c.size(); ++r) mat(r, i) = c[r];
  }
  return GroupHom(from.group(), to.group(), std::move(mat));
}

}  // namespace detail

inline FuncOverR func_over_R(const GradedModule& l, const GradedModule& m,
                             std::optional<std::vector<Degree>> window = std::nullopt) {
  detail::check_same_ring(l, m);
  const GContext& c = l.ctx();
  const std::size_t nc = c.num_classes();
  const auto sl = l.m.support(), sm = m.m.support();
  if (!window) {
    if (sl.size() * sm.size() > kMaxUnwindowedPairs)
      throw MissingTruncation("func_over_R: supports are large, an output degree window is required");
    std::set<Degree> ts;
    for (auto& a : sl)
      for (auto& b : sm) ts.insert(b - a);
    window = std::vector<Degree>(ts.begin(), ts.end());
  }
  FuncOverR out;
  out.window = *window;
  out.result.signs = l.m.signs;
  for (std::size_t j = 0; j < nc; ++j) out.shifted.push_back(shifted_module(m, c.orbit_object(j)));
  // shifted restrictions and transfers of the layers of M along every orbit map
  std::map<Degree, std::vector<MackeyMorphism>> sres, str;
  for (auto& d : sm)
    for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
      const auto& mf = c.map(f);
      const int ok = c.orbit_object(mf.from), oj = c.orbit_object(mf.to);
      const auto table = c.orbit_map_table(f);
      sres[d].push_back(mackey::shifted_restriction(m.m.layer(d), ok, oj, table));
      str[d].push_back(mackey::shifted_transfer(m.m.layer(d), ok, oj, table));
    }
  for (auto& tau : out.window) {
    std::vector<ModuleHom> lv;
    std::vector<AbGroup> values;
    for (std::size_t j = 0; j < nc; ++j) {
      lv.push_back(module_hom(l, out.shifted[j], tau));
      values.push_back(lv.back().group());
    }
    std::vector<GroupHom> res, tr;
    for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
      const auto& mf = c.map(f);
      std::map<Degree, MackeyMorphism> pr, pt;
      for (auto& a : sl) {
        const Degree d = a + tau;
        if (m.m.has(d)) {
          pr.emplace(a, sres[d][f]);
          pt.emplace(a, str[d][f]);
        } else {
          pr.emplace(a, MackeyMorphism::zero(out.shifted[mf.to].m.layer(d), out.shifted[mf.from].m.layer(d)));
          pt.emplace(a, MackeyMorphism::zero(out.shifted[mf.from].m.layer(d), out.shifted[mf.to].m.layer(d)));
        }
      }
      res.push_back(detail::hom_postcompose(lv[mf.to], lv[mf.from], nc, pr));
      tr.push_back(detail::hom_postcompose(lv[mf.from], lv[mf.to], nc, pt));
    }
    MackeyFunctor value(l.context(), std::move(values), std::move(res), std::move(tr));
    if (!value.is_zero()) out.result.layers.emplace(tau, value);
    out.levels.emplace(tau, std::move(lv));
  }
  return out;
}

/// psi o phi at G/G for phi in func_R(M, M')_tau and psi in func_R(M', M'')_s.
inline IntVector composition_pairing(const FuncOverR& f1, const FuncOverR& f2, const FuncOverR& f3,
                                     const GradedModule& m, const GradedModule& m1, const GradedModule& m2,
                                     const Degree& s, const IntVector& psi, const Degree& tau, const IntVector& phi) {
  GradedMorphism a = f1.morphism(s, psi);
  GradedMorphism b = f2.morphism(tau, phi);
  return f3.coords(m, m2, compose(m.m, m1.m, m2.m, a, b));
}

// ---------------------------------------------------------------------------
// Free module on a graded Mackey functor.

/// R box K with r . [r' (x) x]_f = [res_f(r) r' (x) x]_f.
struct FreeOnFunctor {
  GradedBox box;
  GradedModule module;
};

inline FreeOnFunctor free_module(const Ring& R, const GradedMackey& k) {
  const GContext& c = R->ctx();
  const std::size_t nc = c.num_classes();
  FreeOnFunctor out;
  out.box = graded_box(R->r, k);
  out.module = GradedModule{R, out.box.result, {}, {}, Side::left};
  const GradedMackey& rr = R->r;
  for (auto& g : rr.support())
    for (auto& [t, pieces] : out.box.pieces) {
      if (!out.box.result.has(g + t)) continue;
      std::vector<IntMatrix> mats;
      bool nonzero = false;
      const MackeyFunctor src = out.box.result.layer(t), tgt = out.box.result.layer(g + t);
      for (std::size_t j = 0; j < nc; ++j) {
        const AbGroup vr = rr.layer(g).value(j);
        const std::size_t nx = src.value(j).ngens();
        IntMatrix mat(tgt.value(j).ngens(), vr.ngens() * nx);
        for (auto& piece : pieces) {
          const auto& lv = piece.box.levels[j];
          for (std::size_t i = 0; i < lv.value.group().ngens(); ++i) {
            IntVector lift = lv.value.lift(i);
            for (std::size_t p = 0; p < vr.ngens(); ++p) {
              IntVector z(tgt.value(j).ngens());
              for (std::size_t s = 0; s < lv.slots.size(); ++s) {
                const int f = lv.slots[s];
                const std::size_t kk = c.map(f).from;
                const IntVector rf = rr.layer(g).res(f).apply(vr.basis_vector(p));
                for (std::size_t e = 0; e < lv.tensors[s].gens.size(); ++e) {
                  const Integer& coef = lift[lv.offsets[s] + e];
                  if (coef == 0) continue;
                  auto [pa, qb] = lv.tensors[s].gens[e];
                  const IntVector x = rr.layer(piece.a).value(kk).basis_vector(pa);
                  const IntVector y = k.layer(piece.b).value(kk).basis_vector(qb);
                  IntVector w = detail::box_generator(out.box, g + piece.a, piece.b, f, R->multiply(g, piece.a, kk, rf, x), y);
                  for (std::size_t r = 0; r < w.size(); ++r) z[r] += coef * w[r];
                }
              }
              z = tgt.value(j).normalize(std::move(z));
              for (std::size_t r = 0; r < z.size(); ++r) {
                mat(r, p * nx + piece.offset[j] + i) = z[r];
                if (z[r] != 0) nonzero = true;
              }
            }
          }
        }
        mats.push_back(std::move(mat));
      }
      if (nonzero) out.module.left.table.emplace(std::make_pair(g, t), std::move(mats));
    }
  out.module = make_module(std::move(out.module));
  return out;
}

/// Morphism K -> R box K, x -> [1 (x) x]_id (the unit of the adjunction).
inline GradedMorphism free_unit(const FreeOnFunctor& f, const GradedMackey& k) {
  const GradedRing& R = *f.module.ring;
  const GContext& c = k.ctx();
  GradedMorphism out{k.zero_degree(), {}};
  const Degree zero = k.zero_degree();
  for (auto& d : k.support()) {
    MackeyMorphism m;
    const MackeyFunctor tgt = f.box.result.layer(d);
    for (std::size_t j = 0; j < c.num_classes(); ++j) {
      const AbGroup v = k.layer(d).value(j);
      IntMatrix mat(tgt.value(j).ngens(), v.ngens());
      for (std::size_t q = 0; q < v.ngens(); ++q) {
        IntVector z = detail::box_generator(f.box, zero, d, c.identity_map(static_cast<int>(j)), R.unit_at(j),
                                            v.basis_vector(q));
        for (std::size_t r = 0; r < z.size(); ++r) mat(r, q) = z[r];
      }
      m.comps.emplace_back(v, tgt.value(j), std::move(mat));
    }
    out.comps.emplace(d, std::move(m));
  }
  return out;
}

}  // namespace mackeyalg::graded

#endif  // MACKEYALG_GRADED_OVER_RING_HPP
