#ifndef MACKEYALG_MACKEY_CONSTRUCTIONS_HPP
#define MACKEYALG_MACKEY_CONSTRUCTIONS_HPP

#include <vector>

#include "mackeyalg/mackey/hom.hpp"

namespace mackeyalg::mackey {

namespace detail {

inline BurnsideMorphism restriction_span(const GContext& c, int f) {
  const int a = c.orbit_object(c.map(f).from), b = c.orbit_object(c.map(f).to);
  return {a, b, c.restriction_span(a, b, c.orbit_map_table(f))};
}

inline BurnsideMorphism transfer_span(const GContext& c, int f) {
  const int a = c.orbit_object(c.map(f).from), b = c.orbit_object(c.map(f).to);
  return {b, a, c.transfer_span(a, b, c.orbit_map_table(f))};
}

/// Point map id_X x f : X x O_k -> X x O_j.
inline GMap product_map(const GContext& c, int x, int f) {
  const int nx = c.object(x).size();
  const int nk = c.orbit_size(c.map(f).from), nj = c.orbit_size(c.map(f).to);
  GMap t(static_cast<std::size_t>(nx) * nk);
  for (int p = 0; p < nx; ++p)
    for (int q = 0; q < nk; ++q) t[p * nk + q] = p * nj + c.apply(f, q);
  return t;
}

}  // namespace detail

/// The represented functor B^X = B(-, X), free on hom_basis(O_k, X) at O_k.
inline MackeyFunctor representable(const Context& ctx, int x) {
  const GContext& c = *ctx;
  std::vector<AbGroup> values;
  for (std::size_t k = 0; k < c.num_classes(); ++k) values.push_back(AbGroup::free(c.hom_rank(c.orbit_object(k), x)));
  std::vector<GroupHom> res, tr;
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    const auto& mf = c.map(f);
    const int ok = c.orbit_object(mf.from), oj = c.orbit_object(mf.to);
    const BurnsideMorphism r = detail::restriction_span(c, f);
    const BurnsideMorphism t = detail::transfer_span(c, f);
    IntMatrix mr(values[mf.from].ngens(), values[mf.to].ngens());
    for (std::size_t b = 0; b < values[mf.to].ngens(); ++b) {
      auto v = burnside::compose(c, BurnsideMorphism::basis(c, oj, x, b), r).coeffs;
      for (std::size_t i = 0; i < v.size(); ++i) mr(i, b) = v[i];
    }
    IntMatrix mt(values[mf.to].ngens(), values[mf.from].ngens());
    for (std::size_t b = 0; b < values[mf.from].ngens(); ++b) {
      auto v = burnside::compose(c, BurnsideMorphism::basis(c, ok, x, b), t).coeffs;
      for (std::size_t i = 0; i < v.size(); ++i) mt(i, b) = v[i];
    }
    res.emplace_back(values[mf.to], values[mf.from], std::move(mr));
    tr.emplace_back(values[mf.from], values[mf.to], std::move(mt));
  }
  return MackeyFunctor(ctx, std::move(values), std::move(res), std::move(tr));
}

/// The Burnside Mackey functor B = B^{G/G}.
inline MackeyFunctor burnside_functor(const Context& ctx) { return representable(ctx, ctx->point_object()); }

/// Element of B^X(X) given by the identity span, split into the orbit
/// summands of X: entry i lies in B^X(O_{cls_i}).
inline std::vector<IntVector> representable_identity(const GContext& c, int x) {
  const auto& od = c.orbits_of(x);
  std::vector<IntVector> out;
  for (auto& o : od.orbits) {
    const int ok = c.orbit_object(o.cls);
    // O_k -> X, base to the orbit's base point
    GMap inc(c.orbit_size(o.cls));
    const auto& cs = c.orbit(o.cls);
    for (int p = 0; p < static_cast<int>(inc.size()); ++p) inc[p] = c.object(x).act(cs.least[p], o.base);
    out.push_back(c.restriction_span(ok, x, inc));
  }
  return out;
}

/// The Mackey functor M with values M(X x O_k), i.e. Y -> M(X x Y).
inline MackeyFunctor shifted(const MackeyFunctor& m, int x) {
  const GContext& c = m.ctx();
  std::vector<AbGroup> values;
  std::vector<int> objs;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    objs.push_back(c.product_object(x, c.orbit_object(k)));
    values.push_back(m.value_at(objs.back()));
  }
  std::vector<GroupHom> res, tr;
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    const auto& mf = c.map(f);
    GMap t = detail::product_map(c, x, f);
    res.push_back(m.restrict_along(objs[mf.from], objs[mf.to], t));
    tr.push_back(m.transfer_along(objs[mf.from], objs[mf.to], t));
  }
  return MackeyFunctor(m.context(), std::move(values), std::move(res), std::move(tr));
}

/// The morphism M_Y -> M_X induced by a G-map f: X -> Y (restriction in the
/// first factor), or M_X -> M_Y by transfer.
inline MackeyMorphism shifted_restriction(const MackeyFunctor& m, int x, int y, const GMap& f) {
  const GContext& c = m.ctx();
  const int nx = c.object(x).size(), ny = c.object(y).size();
  MackeyMorphism out;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    const int nk = c.orbit_size(k);
    GMap t(static_cast<std::size_t>(nx) * nk);
    for (int p = 0; p < nx; ++p)
      for (int q = 0; q < nk; ++q) t[p * nk + q] = f[p] * nk + q;
    (void)ny;
    const int ok = c.orbit_object(k);
    out.comps.push_back(m.restrict_along(c.product_object(x, ok), c.product_object(y, ok), t));
  }
  return out;
}

inline MackeyMorphism shifted_transfer(const MackeyFunctor& m, int x, int y, const GMap& f) {
  const GContext& c = m.ctx();
  const int nx = c.object(x).size();
  MackeyMorphism out;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    const int nk = c.orbit_size(k);
    GMap t(static_cast<std::size_t>(nx) * nk);
    for (int p = 0; p < nx; ++p)
      for (int q = 0; q < nk; ++q) t[p * nk + q] = f[p] * nk + q;
    const int ok = c.orbit_object(k);
    out.comps.push_back(m.transfer_along(c.product_object(x, ok), c.product_object(y, ok), t));
  }
  return out;
}

/// <X, E> = Hom(B(X, -), E). At O_k the value is E^n with n = |hom_basis(X, O_k)|,
/// one copy of E per basis span.
inline MackeyFunctor coinduced(const Context& ctx, int x, const AbGroup& e) {
  const GContext& c = *ctx;
  std::vector<AbGroup> values;
  std::vector<std::size_t> rank;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    rank.push_back(c.hom_rank(x, c.orbit_object(k)));
    values.push_back(zmod::direct_sum(std::vector<AbGroup>(rank.back(), e)));
  }
  const std::size_t ne = e.ngens();
  // precomposition with s in B(O_a, O_b): phi -> phi(s o -)
  auto induced = [&](const BurnsideMorphism& s, std::size_t from_cls, std::size_t to_cls) {
    // from = Hom(B(X, O_b), E), to = Hom(B(X, O_a), E)
    IntMatrix m(values[to_cls].ngens(), values[from_cls].ngens());
    for (std::size_t t = 0; t < rank[to_cls]; ++t) {
      auto v = burnside::compose(c, s, BurnsideMorphism::basis(c, x, s.source, t)).coeffs;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
          for (std::size_t g = 0; g < ne; ++g) m(t * ne + g, i * ne + g) = v[i];
    }
    return GroupHom(values[from_cls], values[to_cls], std::move(m));
  };
  std::vector<GroupHom> res, tr;
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    const auto& mf = c.map(f);
    res.push_back(induced(detail::restriction_span(c, f), mf.to, mf.from));
    tr.push_back(induced(detail::transfer_span(c, f), mf.from, mf.to));
  }
  return MackeyFunctor(ctx, std::move(values), std::move(res), std::move(tr));
}

/// Fixed point functor of the trivial G-module E: every restriction is the
/// identity and the transfer along O_k -> O_j is multiplication by the
/// index. With `index_transfer` false the transfers are identities instead,
/// which violates the double coset formula whenever an index exceeds 1.
inline MackeyFunctor constant_functor(const Context& ctx, const AbGroup& e, bool index_transfer = true) {
  const GContext& c = *ctx;
  std::vector<AbGroup> values(c.num_classes(), e);
  std::vector<GroupHom> res, tr;
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    const auto& mf = c.map(f);
    res.push_back(GroupHom::identity(e));
    Integer idx = index_transfer ? Integer(c.orbit_size(mf.from) / c.orbit_size(mf.to)) : Integer(1);
    tr.push_back(idx * GroupHom::identity(e));
  }
  return MackeyFunctor(ctx, std::move(values), std::move(res), std::move(tr));
}

}  // namespace mackeyalg::mackey

#endif  // MACKEYALG_MACKEY_CONSTRUCTIONS_HPP
