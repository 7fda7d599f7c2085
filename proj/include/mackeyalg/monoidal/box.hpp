#ifndef MACKEYALG_MONOIDAL_BOX_HPP
#define MACKEYALG_MONOIDAL_BOX_HPP

#include <map>
#include <vector>

#include "mackeyalg/mackey/constructions.hpp"

namespace mackeyalg::monoidal {

using mackey::Context;
using mackey::GContext;
using mackey::MackeyFunctor;
using mackey::MackeyMorphism;
using zmod::AbGroup;
using zmod::GroupHom;
using zmod::IntMatrix;
using zmod::Integer;
using zmod::IntVector;
using zmod::SparseVec;
using zmod::SubquotientGroup;
using zmod::TensorGroup;

/// (M box N)(O_j) presented by generators [a (x) b]_f, one slot for every
/// orbit map f: O_k -> O_j with a in M(O_k), b in N(O_k), modulo
///   [tr_g a (x) b]_f = [a (x) res_g b]_{f g},  [a (x) tr_g b]_f = [res_g a (x) b]_{f g}
/// for generating orbit maps g.
struct BoxLevel {
  std::vector<int> slots;  // orbit maps into O_j
  std::map<int, std::size_t> slot_of;
  std::vector<TensorGroup> tensors;
  std::vector<std::size_t> offsets;
  AbGroup ambient;
  SubquotientGroup value;

  /// Ambient coordinates of [a (x) b]_f.
  IntVector element(int f, const IntVector& a, const IntVector& b) const {
    IntVector x(ambient.ngens());
    add_element(x, f, a, b);
    return x;
  }

  void add_element(IntVector& x, int f, const IntVector& a, const IntVector& b, const Integer& c = 1) const {
    const std::size_t s = slot_of.at(f);
    IntVector t = tensors[s].pure(a, b);
    for (std::size_t i = 0; i < t.size(); ++i) x[offsets[s] + i] += c * t[i];
  }
};

struct BoxProduct {
  MackeyFunctor result;
  std::vector<BoxLevel> levels;

  /// Class of [a (x) b]_f in result(O_j), f: O_k -> O_j.
  IntVector generator(int f, const IntVector& a, const IntVector& b) const {
    const auto& lv = levels[result.ctx().map(f).to];
    return lv.value.coords(lv.ambient.normalize(lv.element(f, a, b)));
  }

  /// Universal bilinear map M(O_k) x N(O_k) -> (M box N)(O_k) at the identity slot.
  IntVector pair(std::size_t k, const IntVector& a, const IntVector& b) const {
    return generator(result.ctx().identity_map(static_cast<int>(k)), a, b);
  }
};

namespace detail {

inline IntVector column(const GroupHom& h, std::size_t j) { return h.mat.column(j); }

inline void push_relation(std::vector<SparseVec>& rel, const IntVector& x) {
  SparseVec v = SparseVec::from_dense(x);
  if (!v.empty()) rel.push_back(std::move(v));
}

}  // namespace detail

inline BoxProduct box(const MackeyFunctor& m, const MackeyFunctor& n) {
  const GContext& c = m.ctx();
  const std::size_t nc = c.num_classes();
  BoxProduct out;
  out.levels.resize(nc);
  std::vector<TensorGroup> tens;
  for (std::size_t k = 0; k < nc; ++k) tens.push_back(zmod::tensor(m.value(k), n.value(k)));

  for (std::size_t j = 0; j < nc; ++j) {
    BoxLevel& lv = out.levels[j];
    IntVector orders;
    lv.offsets.push_back(0);
    for (std::size_t k = 0; k < nc; ++k)
      for (int f : c.maps(static_cast<int>(k), static_cast<int>(j))) {
        lv.slot_of[f] = lv.slots.size();
        lv.slots.push_back(f);
        lv.tensors.push_back(tens[k]);
        lv.offsets.push_back(lv.offsets.back() + tens[k].gens.size());
        orders.insert(orders.end(), tens[k].group.orders.begin(), tens[k].group.orders.end());
      }
    lv.ambient = AbGroup(orders);

    std::vector<SparseVec> rel;
    for (int g : c.generating_maps()) {
      const auto& mg = c.map(g);
      const std::size_t l = mg.from, k = mg.to;
      for (int f : c.maps(static_cast<int>(k), static_cast<int>(j))) {
        const int fg = c.compose(g, f);
        // a in M(O_l), b in N(O_k)
        for (std::size_t p = 0; p < m.value(l).ngens(); ++p)
          for (std::size_t q = 0; q < n.value(k).ngens(); ++q) {
            if (zmod::gcd(m.value(l).orders[p], n.value(k).orders[q]) == 1) continue;
            IntVector x(lv.ambient.ngens());
            lv.add_element(x, f, detail::column(m.tr(g), p), n.value(k).basis_vector(q));
            lv.add_element(x, fg, m.value(l).basis_vector(p), detail::column(n.res(g), q), -1);
            detail::push_relation(rel, lv.ambient.normalize(std::move(x)));
          }
        // a in M(O_k), b in N(O_l)
        for (std::size_t p = 0; p < m.value(k).ngens(); ++p)
          for (std::size_t q = 0; q < n.value(l).ngens(); ++q) {
            if (zmod::gcd(m.value(k).orders[p], n.value(l).orders[q]) == 1) continue;
            IntVector x(lv.ambient.ngens());
            lv.add_element(x, f, m.value(k).basis_vector(p), detail::column(n.tr(g), q));
            lv.add_element(x, fg, detail::column(m.res(g), p), n.value(l).basis_vector(q), -1);
            detail::push_relation(rel, lv.ambient.normalize(std::move(x)));
          }
      }
    }
    lv.value = SubquotientGroup(lv.ambient, mackey::all_generators(lv.ambient), rel);
  }

  // structure maps on ambient generators, then induced on the quotients
  std::vector<GroupHom> res, tr;
  std::vector<AbGroup> values;
  for (auto& lv : out.levels) values.push_back(lv.value.group());
  for (int h = 0; h < static_cast<int>(c.num_maps()); ++h) {
    const auto& mh = c.map(h);
    const BoxLevel& src = out.levels[mh.from];
    const BoxLevel& tgt = out.levels[mh.to];
    // transfer: slot f -> slot h f
    IntMatrix t(tgt.ambient.ngens(), src.ambient.ngens());
    for (std::size_t s = 0; s < src.slots.size(); ++s) {
      const std::size_t d = tgt.slot_of.at(c.compose(src.slots[s], h));
      for (std::size_t i = 0; i < src.tensors[s].gens.size(); ++i) t(tgt.offsets[d] + i, src.offsets[s] + i) = 1;
    }
    tr.push_back(mackey::induced_map(src.value, tgt.value, GroupHom(src.ambient, tgt.ambient, std::move(t))));
    // restriction: slot f -> sum over the pullback of f and h
    IntMatrix r(src.ambient.ngens(), tgt.ambient.ngens());
    for (std::size_t s = 0; s < tgt.slots.size(); ++s) {
      const int f = tgt.slots[s];
      const TensorGroup& tk = tgt.tensors[s];
      for (auto& term : c.pullback(f, h)) {
        const GroupHom& rm = m.res(term.left);
        const GroupHom& rn = n.res(term.left);
        const std::size_t d = src.slot_of.at(term.right);
        const TensorGroup& td = src.tensors[d];
        GroupHom tt = zmod::tensor(rm, rn, tk, td);
        for (std::size_t a = 0; a < td.gens.size(); ++a)
          for (std::size_t b = 0; b < tk.gens.size(); ++b) r(src.offsets[d] + a, tgt.offsets[s] + b) += tt.mat(a, b);
      }
    }
    res.push_back(mackey::induced_map(tgt.value, src.value, GroupHom(tgt.ambient, src.ambient, std::move(r))));
  }
  out.result = MackeyFunctor(m.context(), std::move(values), std::move(res), std::move(tr));
  return out;
}

/// phi box psi : M box N -> M' box N'.
inline MackeyMorphism box_morphism(const BoxProduct& src, const BoxProduct& tgt, const MackeyMorphism& phi,
                                   const MackeyMorphism& psi) {
  const GContext& c = src.result.ctx();
  MackeyMorphism out;
  for (std::size_t j = 0; j < c.num_classes(); ++j) {
    const BoxLevel& a = src.levels[j];
    const BoxLevel& b = tgt.levels[j];
    IntMatrix mat(b.ambient.ngens(), a.ambient.ngens());
    for (std::size_t s = 0; s < a.slots.size(); ++s) {
      const std::size_t k = c.map(a.slots[s]).from;
      const std::size_t d = b.slot_of.at(a.slots[s]);
      GroupHom t = zmod::tensor(phi.comps[k], psi.comps[k], a.tensors[s], b.tensors[d]);
      mat.set_block(b.offsets[d], a.offsets[s], t.mat);
    }
    out.comps.push_back(mackey::induced_map(a.value, b.value, GroupHom(a.ambient, b.ambient, std::move(mat))));
  }
  return out;
}

/// Applies a map defined on generators [a (x) b]_f of a box product, given as
/// a function of (f, index of a, index of b) returning target coordinates in
/// level j, to produce a morphism out of the box product.
template <class Fn>
MackeyMorphism morphism_from_generators(const BoxProduct& src, const MackeyFunctor& tgt, Fn&& fn) {
  const GContext& c = src.result.ctx();
  MackeyMorphism out;
  for (std::size_t j = 0; j < c.num_classes(); ++j) {
    const BoxLevel& lv = src.levels[j];
    IntMatrix mat(tgt.value(j).ngens(), lv.ambient.ngens());
    for (std::size_t s = 0; s < lv.slots.size(); ++s)
      for (std::size_t i = 0; i < lv.tensors[s].gens.size(); ++i) {
        auto [p, q] = lv.tensors[s].gens[i];
        IntVector y = fn(lv.slots[s], p, q);
        for (std::size_t r = 0; r < y.size(); ++r) mat(r, lv.offsets[s] + i) = y[r];
      }
    GroupHom amb(lv.ambient, tgt.value(j), std::move(mat));
    // the induced map on the quotient is read off on lifts of its generators
    IntMatrix q(tgt.value(j).ngens(), lv.value.group().ngens());
    for (std::size_t g = 0; g < lv.value.group().ngens(); ++g) {
      IntVector y = amb.apply(lv.value.lift(g));
      for (std::size_t r = 0; r < y.size(); ++r) q(r, g) = y[r];
    }
    out.comps.emplace_back(lv.value.group(), tgt.value(j), std::move(q));
  }
  return out;
}

/// Unit isomorphism B box M -> M, [b (x) m]_f -> tr_f(b . m).
inline MackeyMorphism left_unitor(const BoxProduct& bm, const MackeyFunctor& m) {
  return morphism_from_generators(bm, m, [&](int f, std::size_t p, std::size_t q) {
    const std::size_t k = m.ctx().map(f).from;
    IntVector x = m.burnside_action(k, p).apply(m.value(k).basis_vector(q));
    return m.tr(f).apply(x);
  });
}

/// M box B -> M, [m (x) b]_f -> tr_f(b . m).
inline MackeyMorphism right_unitor(const BoxProduct& mb, const MackeyFunctor& m) {
  return morphism_from_generators(mb, m, [&](int f, std::size_t p, std::size_t q) {
    const std::size_t k = m.ctx().map(f).from;
    IntVector x = m.burnside_action(k, q).apply(m.value(k).basis_vector(p));
    return m.tr(f).apply(x);
  });
}

/// Index of the identity span O_k <- O_k -> pt in B(O_k).
inline std::size_t burnside_one(const GContext& c, std::size_t k) {
  const auto& basis = c.hom_basis(c.orbit_object(k), c.point_object());
  for (std::size_t b = 0; b < basis.size(); ++b)
    if (basis[b].sub == c.lattice().rep_id(k)) return b;
  throw InternalError("Burnside functor without unit");
}

/// Inverse of the left unitor: m -> [1 (x) m]_id.
inline MackeyMorphism left_unitor_inverse(const BoxProduct& bm, const MackeyFunctor& m) {
  const GContext& c = m.ctx();
  MackeyMorphism out;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    const BoxLevel& lv = bm.levels[k];
    IntVector one(c.hom_rank(c.orbit_object(k), c.point_object()));
    one[burnside_one(c, k)] = 1;
    IntMatrix mat(lv.value.group().ngens(), m.value(k).ngens());
    for (std::size_t q = 0; q < m.value(k).ngens(); ++q) {
      IntVector y = bm.pair(k, one, m.value(k).basis_vector(q));
      for (std::size_t r = 0; r < y.size(); ++r) mat(r, q) = y[r];
    }
    out.comps.emplace_back(m.value(k), lv.value.group(), std::move(mat));
  }
  return out;
}

/// Symmetry M box N -> N box M, [a (x) b]_f -> [b (x) a]_f.
inline MackeyMorphism symmetry(const BoxProduct& mn, const BoxProduct& nm, const MackeyFunctor& m,
                               const MackeyFunctor& n) {
  return morphism_from_generators(mn, nm.result, [&](int f, std::size_t p, std::size_t q) {
    const std::size_t k = m.ctx().map(f).from;
    return nm.generator(f, n.value(k).basis_vector(q), m.value(k).basis_vector(p));
  });
}

/// Associator (L box M) box N -> L box (M box N):
/// [[l (x) m]_g (x) n]_f -> [l (x) [m (x) res_g n]_id]_{f g}.
inline MackeyMorphism associator(const MackeyFunctor& l, const MackeyFunctor& m, const MackeyFunctor& n,
                                 const BoxProduct& lm, const BoxProduct& lm_n, const BoxProduct& mn,
                                 const BoxProduct& l_mn) {
  const GContext& c = n.ctx();
  return morphism_from_generators(lm_n, l_mn.result, [&](int f, std::size_t p, std::size_t q) {
    const std::size_t k = c.map(f).from;
    const BoxLevel& inner = lm.levels[k];
    const IntVector lift = inner.value.lift(p);
    const IntVector nq = n.value(k).basis_vector(q);
    IntVector out(l_mn.result.value(c.map(f).to).ngens());
    for (std::size_t s = 0; s < inner.slots.size(); ++s) {
      const int g = inner.slots[s];
      const std::size_t a = c.map(g).from;
      const IntVector rn = n.res(g).apply(nq);
      const int fg = c.compose(g, f);
      for (std::size_t i = 0; i < inner.tensors[s].gens.size(); ++i) {
        const Integer& coef = lift[inner.offsets[s] + i];
        if (coef == 0) continue;
        auto [lp, mq] = inner.tensors[s].gens[i];
        IntVector mn_el = mn.pair(a, m.value(a).basis_vector(mq), rn);
        IntVector y = l_mn.generator(fg, l.value(a).basis_vector(lp), mn_el);
        for (std::size_t r = 0; r < y.size(); ++r) out[r] += coef * y[r];
      }
    }
    return out;
  });
}

}  // namespace mackeyalg::monoidal

#endif  // MACKEYALG_MONOIDAL_BOX_HPP
