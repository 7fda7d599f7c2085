#ifndef MACKEYALG_MACKEY_MORPHISM_HPP
#define MACKEYALG_MACKEY_MORPHISM_HPP

#include <string>
#include <vector>

#include "mackeyalg/mackey/functor.hpp"

namespace mackeyalg::mackey {

using zmod::SparseVec;
using zmod::SubquotientGroup;

/// Levelwise components M(O_k) -> N(O_k).
struct MackeyMorphism {
  std::vector<GroupHom> comps;

  static MackeyMorphism identity(const MackeyFunctor& m) {
    MackeyMorphism f;
    for (auto& v : m.values()) f.comps.push_back(GroupHom::identity(v));
    return f;
  }

  static MackeyMorphism zero(const MackeyFunctor& m, const MackeyFunctor& n) {
    MackeyMorphism f;
    for (std::size_t k = 0; k < m.num_classes(); ++k) f.comps.push_back(GroupHom::zero(m.value(k), n.value(k)));
    return f;
  }

  bool is_zero() const {
    for (auto& c : comps)
      if (!c.is_zero()) return false;
    return true;
  }

  friend bool operator==(const MackeyMorphism& a, const MackeyMorphism& b) { return a.comps == b.comps; }
  friend bool operator!=(const MackeyMorphism& a, const MackeyMorphism& b) { return !(a == b); }
};

/// g after f.
inline MackeyMorphism compose(const MackeyMorphism& g, const MackeyMorphism& f) {
  MackeyMorphism h;
  for (std::size_t k = 0; k < f.comps.size(); ++k) h.comps.push_back(zmod::compose(g.comps[k], f.comps[k]));
  return h;
}

inline MackeyMorphism operator+(const MackeyMorphism& a, const MackeyMorphism& b) {
  MackeyMorphism h;
  for (std::size_t k = 0; k < a.comps.size(); ++k) h.comps.push_back(a.comps[k] + b.comps[k]);
  return h;
}

inline MackeyMorphism operator-(const MackeyMorphism& a, const MackeyMorphism& b) {
  MackeyMorphism h;
  for (std::size_t k = 0; k < a.comps.size(); ++k) h.comps.push_back(a.comps[k] - b.comps[k]);
  return h;
}

inline MackeyMorphism operator*(const Integer& c, const MackeyMorphism& a) {
  MackeyMorphism h;
  for (auto& x : a.comps) h.comps.push_back(c * x);
  return h;
}

/// Ways in which phi fails to be a morphism M -> N; empty when it is one.
inline std::vector<std::string> morphism_failures(const MackeyFunctor& m, const MackeyFunctor& n,
                                                  const MackeyMorphism& phi) {
  std::vector<std::string> out;
  const GContext& c = m.ctx();
  if (phi.comps.size() != m.num_classes()) return {"wrong number of components"};
  for (std::size_t k = 0; k < m.num_classes(); ++k) {
    const auto& p = phi.comps[k];
    if (p.src != m.value(k) || p.tgt != n.value(k) || !p.is_well_defined())
      out.push_back("component at " + c.lattice().class_label(k) + " is not a homomorphism M -> N");
  }
  if (!out.empty()) return out;
  for (int f : c.generating_maps()) {
    const auto& mf = c.map(f);
    if (zmod::compose(n.res(f), phi.comps[mf.to]) != zmod::compose(phi.comps[mf.from], m.res(f)))
      out.push_back("does not commute with restriction along " + MackeyFunctor::describe_map(c, f));
    if (zmod::compose(n.tr(f), phi.comps[mf.from]) != zmod::compose(phi.comps[mf.to], m.tr(f)))
      out.push_back("does not commute with transfer along " + MackeyFunctor::describe_map(c, f));
  }
  return out;
}

inline bool is_morphism(const MackeyFunctor& m, const MackeyFunctor& n, const MackeyMorphism& phi) {
  return morphism_failures(m, n, phi).empty();
}

/// A subquotient of M at every level, closed under the structure maps, with
/// the induced Mackey structure.
struct SubFunctor {
  MackeyFunctor functor;
  std::vector<SubquotientGroup> levels;

  /// Class in level k of an element of M(O_k).
  IntVector coords(std::size_t k, const IntVector& x) const {
    if (!levels[k].contains(x)) throw InternalError("element does not lie in the subfunctor");
    return levels[k].coords(x);
  }
};

/// Structure maps of a subquotient are computed by lifting generators,
/// applying the ambient map and reading off coordinates.
inline GroupHom induced_map(const SubquotientGroup& from, const SubquotientGroup& to, const GroupHom& ambient) {
  IntMatrix mat(to.group().ngens(), from.group().ngens());
  for (std::size_t i = 0; i < from.group().ngens(); ++i) {
    IntVector y = ambient.apply(from.lift(i));
    if (!to.contains(y)) throw InternalError("induced map does not preserve the subquotient");
    IntVector c = to.coords(y);
    for (std::size_t r = 0; r < c.size(); ++r) mat(r, i) = c[r];
  }
  return GroupHom(from.group(), to.group(), std::move(mat));
}

inline SubFunctor induced_subquotient(const MackeyFunctor& m, std::vector<SubquotientGroup> levels) {
  const GContext& c = m.ctx();
  std::vector<AbGroup> values;
  for (auto& l : levels) values.push_back(l.group());
  std::vector<GroupHom> res, tr;
  for (std::size_t f = 0; f < c.num_maps(); ++f) {
    const auto& mf = c.map(static_cast<int>(f));
    res.push_back(induced_map(levels[mf.to], levels[mf.from], m.res(static_cast<int>(f))));
    tr.push_back(induced_map(levels[mf.from], levels[mf.to], m.tr(static_cast<int>(f))));
  }
  return {MackeyFunctor(m.context(), std::move(values), std::move(res), std::move(tr)), std::move(levels)};
}

/// Morphism between subquotient functors induced by an ambient morphism.
inline MackeyMorphism induced_morphism(const SubFunctor& a, const SubFunctor& b, const MackeyMorphism& ambient) {
  MackeyMorphism h;
  for (std::size_t k = 0; k < a.levels.size(); ++k)
    h.comps.push_back(induced_map(a.levels[k], b.levels[k], ambient.comps[k]));
  return h;
}

struct KernelCokernel {
  SubFunctor kernel;
  MackeyMorphism inclusion;  // ker -> M
  SubFunctor cokernel;
  MackeyMorphism projection;  // N -> coker
};

inline KernelCokernel kernel_cokernel(const MackeyFunctor& m, const MackeyFunctor& n, const MackeyMorphism& phi) {
  if (auto bad = morphism_failures(m, n, phi); !bad.empty())
    throw ValidationError("kernel_cokernel: not a morphism: " + bad.front());
  std::vector<SubquotientGroup> ker, coker;
  for (std::size_t k = 0; k < m.num_classes(); ++k) {
    ker.push_back(zmod::kernel(phi.comps[k]));
    coker.push_back(zmod::cokernel(phi.comps[k]));
  }
  KernelCokernel out{induced_subquotient(m, std::move(ker)), {}, induced_subquotient(n, std::move(coker)), {}};
  for (std::size_t k = 0; k < m.num_classes(); ++k) {
    out.inclusion.comps.push_back(out.kernel.levels[k].inclusion());
    out.projection.comps.push_back(out.cokernel.levels[k].projection());
  }
  return out;
}

inline SubFunctor image(const MackeyFunctor& m, const MackeyFunctor& n, const MackeyMorphism& phi) {
  (void)m;
  std::vector<SubquotientGroup> im;
  for (std::size_t k = 0; k < n.num_classes(); ++k) im.push_back(zmod::image(phi.comps[k]));
  return induced_subquotient(n, std::move(im));
}

/// Subquotient of M given by generators of S and T at every level.
inline SubFunctor subquotient(const MackeyFunctor& m, const std::vector<std::vector<SparseVec>>& sub,
                              const std::vector<std::vector<SparseVec>>& rel) {
  std::vector<SubquotientGroup> lv;
  for (std::size_t k = 0; k < m.num_classes(); ++k) lv.emplace_back(m.value(k), sub[k], rel[k]);
  return induced_subquotient(m, std::move(lv));
}

/// Whole-group subquotient (identity presentation) of every level.
inline std::vector<SparseVec> all_generators(const AbGroup& a) {
  std::vector<SparseVec> v;
  for (std::size_t i = 0; i < a.ngens(); ++i) v.push_back(SparseVec{{{i, 1}}});
  return v;
}

/// Homology ker(g)/im(f) of M --f--> N --g--> P as a Mackey functor.
inline SubFunctor homology(const MackeyFunctor& n, const MackeyMorphism& f, const MackeyMorphism& g) {
  std::vector<SubquotientGroup> lv;
  for (std::size_t k = 0; k < n.num_classes(); ++k) lv.push_back(zmod::homology(f.comps[k], g.comps[k]));
  return induced_subquotient(n, std::move(lv));
}

/// Levelwise direct sum.
inline MackeyFunctor direct_sum(const MackeyFunctor& a, const MackeyFunctor& b) {
  std::vector<AbGroup> v;
  std::vector<GroupHom> r, t;
  for (std::size_t k = 0; k < a.num_classes(); ++k) v.push_back(zmod::direct_sum(a.value(k), b.value(k)));
  for (std::size_t f = 0; f < a.all_res().size(); ++f) {
    r.push_back(zmod::direct_sum(a.res(static_cast<int>(f)), b.res(static_cast<int>(f))));
    t.push_back(zmod::direct_sum(a.tr(static_cast<int>(f)), b.tr(static_cast<int>(f))));
  }
  return MackeyFunctor(a.context(), std::move(v), std::move(r), std::move(t));
}

inline MackeyFunctor direct_sum(const Context& ctx, const std::vector<MackeyFunctor>& parts) {
  MackeyFunctor out = MackeyFunctor::zero(ctx);
  for (auto& p : parts) out = direct_sum(out, p);
  return out;
}

inline MackeyMorphism direct_sum(const MackeyMorphism& a, const MackeyMorphism& b) {
  MackeyMorphism h;
  for (std::size_t k = 0; k < a.comps.size(); ++k) h.comps.push_back(zmod::direct_sum(a.comps[k], b.comps[k]));
  return h;
}

/// Isomorphism-invariant comparison: same canonical group at every level.
inline bool same_values(const MackeyFunctor& a, const MackeyFunctor& b) {
  if (a.num_classes() != b.num_classes()) return false;
  for (std::size_t k = 0; k < a.num_classes(); ++k)
    if (zmod::canonicalize(a.value(k)).group != zmod::canonicalize(b.value(k)).group) return false;
  return true;
}

}  // namespace mackeyalg::mackey

#endif  // MACKEYALG_MACKEY_MORPHISM_HPP
