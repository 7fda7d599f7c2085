#ifndef MACKEYALG_MONOIDAL_COHERENCE_HPP
#define MACKEYALG_MONOIDAL_COHERENCE_HPP

#include "mackeyalg/monoidal/box.hpp"

namespace mackeyalg::monoidal {

/// A coherence isomorphism with its source and target box products.
struct Coherence {
  MackeyFunctor source;
  MackeyFunctor target;
  MackeyMorphism map;
};

/// B box M -> M.
inline Coherence unit_iso(const MackeyFunctor& m) {
  auto bm = box(mackey::burnside_functor(m.context()), m);
  return {bm.result, m, left_unitor(bm, m)};
}

/// (L box M) box N -> L box (M box N).
inline Coherence assoc_iso(const MackeyFunctor& l, const MackeyFunctor& m, const MackeyFunctor& n) {
  auto lm = box(l, m);
  auto lm_n = box(lm.result, n);
  auto mn = box(m, n);
  auto l_mn = box(l, mn.result);
  return {lm_n.result, l_mn.result, associator(l, m, n, lm, lm_n, mn, l_mn)};
}

/// M box N -> N box M.
inline Coherence symmetry_iso(const MackeyFunctor& m, const MackeyFunctor& n) {
  auto mn = box(m, n);
  auto nm = box(n, m);
  return {mn.result, nm.result, symmetry(mn, nm, m, n)};
}

/// Both routes ((K L) M) N -> K (L (M N)) agree.
inline bool pentagon_holds(const MackeyFunctor& k, const MackeyFunctor& l, const MackeyFunctor& m,
                           const MackeyFunctor& n) {
  auto kl = box(k, l);
  auto lm = box(l, m);
  auto mn = box(m, n);
  auto kl_m = box(kl.result, m);
  auto kl_m_n = box(kl_m.result, n);
  auto kl_mn = box(kl.result, mn.result);
  auto l_mn = box(l, mn.result);
  auto k_l_mn = box(k, l_mn.result);
  auto k_lm = box(k, lm.result);
  auto k_lm_n = box(k_lm.result, n);
  auto lm_n = box(lm.result, n);
  auto k_lm__n = box(k, lm_n.result);

  auto a1 = associator(kl.result, m, n, kl_m, kl_m_n, mn, kl_mn);
  auto a2 = associator(k, l, mn.result, kl, kl_mn, l_mn, k_l_mn);
  auto a_klm = associator(k, l, m, kl, kl_m, lm, k_lm);
  auto b1 = box_morphism(kl_m_n, k_lm_n, a_klm, MackeyMorphism::identity(n));
  auto b2 = associator(k, lm.result, n, k_lm, k_lm_n, lm_n, k_lm__n);
  auto a_lmn = associator(l, m, n, lm, lm_n, mn, l_mn);
  auto b3 = box_morphism(k_lm__n, k_l_mn, MackeyMorphism::identity(k), a_lmn);
  return mackey::compose(a2, a1) == mackey::compose(b3, mackey::compose(b2, b1));
}

/// (M B) N -> M N: rho box id = (id box lambda) o alpha.
inline bool triangle_holds(const MackeyFunctor& m, const MackeyFunctor& n) {
  auto b = mackey::burnside_functor(m.context());
  auto mb = box(m, b);
  auto bn = box(b, n);
  auto mb_n = box(mb.result, n);
  auto m_bn = box(m, bn.result);
  auto mn = box(m, n);
  auto alpha = associator(m, b, n, mb, mb_n, bn, m_bn);
  auto lhs = box_morphism(mb_n, mn, right_unitor(mb, m), MackeyMorphism::identity(n));
  auto rhs = mackey::compose(box_morphism(m_bn, mn, MackeyMorphism::identity(m), left_unitor(bn, n)), alpha);
  return lhs == rhs;
}

/// The symmetry composed with itself is the identity.
inline bool symmetry_involution_holds(const MackeyFunctor& m, const MackeyFunctor& n) {
  auto mn = box(m, n);
  auto nm = box(n, m);
  auto s = symmetry(mn, nm, m, n);
  auto t = symmetry(nm, mn, n, m);
  return mackey::compose(t, s) == MackeyMorphism::identity(mn.result);
}

}  // namespace mackeyalg::monoidal

#endif  // MACKEYALG_MONOIDAL_COHERENCE_HPP
