#ifndef MACKEYALG_MACKEY_FUNCTOR_HPP
#define MACKEYALG_MACKEY_FUNCTOR_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mackeyalg/burnside/context.hpp"
#include "mackeyalg/error.hpp"
#include "mackeyalg/zmod/abelian_group.hpp"

namespace mackeyalg::mackey {

using burnside::BurnsideMorphism;
using burnside::Context;
using burnside::GContext;
using gdata::Elem;
using gdata::GMap;
using zmod::AbGroup;
using zmod::GroupHom;
using zmod::IntMatrix;
using zmod::Integer;
using zmod::IntVector;

/// Mackey functor with values on the canonical orbits O_k and a restriction
/// and transfer for every G-map between them: for f: O_k -> O_j,
/// res(f): M(O_j) -> M(O_k) and tr(f): M(O_k) -> M(O_j). Conjugations are
/// the restrictions along automorphisms of an orbit.
class MackeyFunctor {
 public:
  MackeyFunctor() = default;

  MackeyFunctor(Context ctx, std::vector<AbGroup> values, std::vector<GroupHom> res, std::vector<GroupHom> tr)
      : ctx_(std::move(ctx)), values_(std::move(values)), res_(std::move(res)), tr_(std::move(tr)) {
    if (values_.size() != ctx_->num_classes()) throw ValidationError("Mackey functor needs one value per subgroup class");
    if (res_.size() != ctx_->num_maps() || tr_.size() != ctx_->num_maps())
      throw ValidationError("Mackey functor needs structure maps for every orbit map");
    for (std::size_t f = 0; f < res_.size(); ++f) {
      const auto& m = ctx_->map(static_cast<int>(f));
      if (res_[f].src != values_[m.to] || res_[f].tgt != values_[m.from] || tr_[f].src != values_[m.from] ||
          tr_[f].tgt != values_[m.to])
        throw ValidationError("structure map " + describe_map(*ctx_, static_cast<int>(f)) + " has wrong groups");
    }
  }

  static MackeyFunctor zero(Context ctx) {
    std::vector<AbGroup> v(ctx->num_classes());
    std::vector<GroupHom> r(ctx->num_maps());
    return MackeyFunctor(ctx, v, r, r);
  }

  /// Builds the structure maps for all orbit maps from those given, closing
  /// under composition. Missing or conflicting data is a validation error.
  static MackeyFunctor from_generators(Context ctx, std::vector<AbGroup> values,
                                       const std::map<int, GroupHom>& res_given,
                                       const std::map<int, GroupHom>& tr_given) {
    const GContext& c = *ctx;
    const std::size_t nm = c.num_maps();
    std::vector<std::optional<GroupHom>> res(nm), tr(nm);
    auto set = [&](std::vector<std::optional<GroupHom>>& tab, int f, GroupHom h, const char* what) -> bool {
      if (!h.is_well_defined())
        throw ValidationError(std::string(what) + " along " + describe_map(c, f) + " is not a homomorphism");
      if (tab[f]) {
        if (*tab[f] != h) throw ValidationError(std::string("conflicting ") + what + " data along " + describe_map(c, f));
        return false;
      }
      tab[f] = std::move(h);
      return true;
    };
    for (std::size_t k = 0; k < c.num_classes(); ++k) {
      int id = c.identity_map(static_cast<int>(k));
      set(res, id, GroupHom::identity(values[k]), "restriction");
      set(tr, id, GroupHom::identity(values[k]), "transfer");
    }
    for (auto& [f, h] : res_given) {
      check_shape(c, values, f, h, true);
      set(res, f, h, "restriction");
    }
    for (auto& [f, h] : tr_given) {
      check_shape(c, values, f, h, false);
      set(tr, f, h, "transfer");
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t f = 0; f < nm; ++f)
        for (std::size_t g = 0; g < nm; ++g) {
          if (c.map(static_cast<int>(f)).to != c.map(static_cast<int>(g)).from) continue;
          int gf = c.compose(static_cast<int>(f), static_cast<int>(g));
          if (res[f] && res[g]) changed |= set(res, gf, zmod::compose(*res[f], *res[g]), "restriction");
          if (tr[f] && tr[g]) changed |= set(tr, gf, zmod::compose(*tr[g], *tr[f]), "transfer");
        }
      // along an automorphism f, the transfer is the restriction along f^{-1}
      for (std::size_t f = 0; f < nm; ++f) {
        if (!c.is_iso(static_cast<int>(f))) continue;
        int inv = c.inverse(static_cast<int>(f));
        if (res[inv] && !tr[f]) changed |= set(tr, static_cast<int>(f), *res[inv], "transfer");
        if (tr[inv] && !res[f]) changed |= set(res, static_cast<int>(f), *tr[inv], "restriction");
      }
    }
    std::vector<GroupHom> r, t;
    for (std::size_t f = 0; f < nm; ++f) {
      if (!res[f]) throw ValidationError("no restriction data reaches " + describe_map(c, static_cast<int>(f)));
      if (!tr[f]) throw ValidationError("no transfer data reaches " + describe_map(c, static_cast<int>(f)));
      r.push_back(*res[f]);
      t.push_back(*tr[f]);
    }
    return MackeyFunctor(ctx, std::move(values), std::move(r), std::move(t));
  }

  const Context& context() const { return ctx_; }
  const GContext& ctx() const { return *ctx_; }
  std::size_t num_classes() const { return values_.size(); }
  const AbGroup& value(std::size_t k) const { return values_[k]; }
  const std::vector<AbGroup>& values() const { return values_; }
  const GroupHom& res(int f) const { return res_[f]; }
  const GroupHom& tr(int f) const { return tr_[f]; }
  const std::vector<GroupHom>& all_res() const { return res_; }
  const std::vector<GroupHom>& all_tr() const { return tr_; }

  bool is_zero() const {
    for (auto& v : values_)
      if (!v.is_trivial()) return false;
    return true;
  }

  /// Offsets of the orbit summands of M(X) in orbit order.
  std::vector<std::size_t> offsets(int x) const {
    const auto& od = ctx_->orbits_of(x);
    std::vector<std::size_t> off{0};
    for (auto& o : od.orbits) off.push_back(off.back() + values_[o.cls].ngens());
    return off;
  }

  /// M(X) as the direct sum over the orbits of X.
  AbGroup value_at(int x) const {
    std::vector<AbGroup> parts;
    for (auto& o : ctx_->orbits_of(x).orbits) parts.push_back(values_[o.cls]);
    return zmod::direct_sum(parts);
  }

  /// M(f): M(Y) -> M(X) for a G-map f: X -> Y.
  GroupHom restrict_along(int x, int y, const GMap& f) const {
    const auto& ox = ctx_->orbits_of(x);
    const auto& oy = ctx_->orbits_of(y);
    auto offx = offsets(x), offy = offsets(y);
    IntMatrix m(offx.back(), offy.back());
    for (std::size_t i = 0; i < ox.orbits.size(); ++i) {
      const int p = ox.orbits[i].base;
      const int fp = f[p];
      const int j = oy.orbit_of[fp];
      int h = orbit_map_to(ox.orbits[i].cls, oy.orbits[j].cls, oy.transversal[fp]);
      m.set_block(offx[i], offy[j], res_[h].mat);
    }
    return GroupHom(value_at(y), value_at(x), std::move(m));
  }

  /// Transfer M(X) -> M(Y) along a G-map f: X -> Y.
  GroupHom transfer_along(int x, int y, const GMap& f) const {
    const auto& ox = ctx_->orbits_of(x);
    const auto& oy = ctx_->orbits_of(y);
    auto offx = offsets(x), offy = offsets(y);
    IntMatrix m(offy.back(), offx.back());
    for (std::size_t i = 0; i < ox.orbits.size(); ++i) {
      const int p = ox.orbits[i].base;
      const int fp = f[p];
      const int j = oy.orbit_of[fp];
      int h = orbit_map_to(ox.orbits[i].cls, oy.orbits[j].cls, oy.transversal[fp]);
      add_block(m, offy[j], offx[i], tr_[h].mat);
    }
    return GroupHom(value_at(x), value_at(y), std::move(m));
  }

  /// M(s): M(Y) -> M(X) for a morphism s: X -> Y of the Burnside category,
  /// via the decomposition of each basis span into a restriction followed by
  /// a transfer.
  GroupHom evaluate(const BurnsideMorphism& s) const {
    const GContext& c = *ctx_;
    const int x = s.source, y = s.target;
    const auto& ox = c.orbits_of(x);
    const auto& oy = c.orbits_of(y);
    const auto& oxy = c.orbits_of(c.product_object(x, y));
    const int ny = c.object(y).size();
    const auto& basis = c.hom_basis(x, y);
    auto offx = offsets(x), offy = offsets(y);
    IntMatrix m(offx.back(), offy.back());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (s.coeffs[b] == 0) continue;
      const int z = oxy.orbits[basis[b].orbit].base;
      const int px = z / ny, py = z % ny;
      const int L = basis[b].sub;
      const Elem cj = c.lattice().conjugator(L);
      const int k = c.lattice().class_of(L);
      const int i = ox.orbit_of[px], j = oy.orbit_of[py];
      const auto& G = c.group();
      int left = orbit_map_to(k, ox.orbits[i].cls, G.mul(cj, ox.transversal[px]));
      int right = orbit_map_to(k, oy.orbits[j].cls, G.mul(cj, oy.transversal[py]));
      IntMatrix block = tr_[left].mat * res_[right].mat;
      add_block(m, offx[i], offy[j], s.coeffs[b] * block);
    }
    return GroupHom(value_at(y), value_at(x), std::move(m));
  }

  /// Action of the b-th basis element of B(O_k) = B(O_k, pt) on M(O_k): for
  /// the span O_k <- O_m -> pt it is tr o res along O_m -> O_k.
  GroupHom burnside_action(std::size_t k, std::size_t b) const {
    const GContext& c = *ctx_;
    const auto& sp = c.hom_basis(c.orbit_object(k), c.point_object())[b];
    const int cls = c.lattice().class_of(sp.sub);
    const int alpha = orbit_map_to(cls, static_cast<int>(k), c.lattice().conjugator(sp.sub));
    return zmod::compose(tr_[alpha], res_[alpha]);
  }

  /// Action of an element of B(O_k) given by coordinates.
  GroupHom burnside_action(std::size_t k, const IntVector& coeffs) const {
    GroupHom out = GroupHom::zero(values_[k], values_[k]);
    for (std::size_t b = 0; b < coeffs.size(); ++b)
      if (coeffs[b] != 0) out = out + coeffs[b] * burnside_action(k, b);
    return out;
  }

  /// The orbit map O_k -> O_j sending the base coset to u H_j.
  int orbit_map_to(int k, int j, Elem u) const {
    int p = ctx_->orbit(j).coset_of[u];
    int f = ctx_->find_map(k, j, p);
    MACKEYALG_ASSERT(f >= 0, "requested orbit map is not equivariant");
    return f;
  }

  friend bool operator==(const MackeyFunctor& a, const MackeyFunctor& b) {
    return a.ctx_ == b.ctx_ && a.values_ == b.values_ && a.res_ == b.res_ && a.tr_ == b.tr_;
  }

  static std::string describe_map(const GContext& c, int f) {
    const auto& m = c.map(f);
    return "[" + c.lattice().class_label(m.from) + " -> " + c.lattice().class_label(m.to) + " via " +
           c.group().name(c.map_element(f)) + "]";
  }

 private:
  static void add_block(IntMatrix& m, std::size_t r0, std::size_t c0, const IntMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) += b(i, j);
  }

  static void check_shape(const GContext& c, const std::vector<AbGroup>& values, int f, const GroupHom& h, bool res) {
    if (f < 0 || f >= static_cast<int>(c.num_maps())) throw ValidationError("structure map names an unknown orbit map");
    const auto& m = c.map(f);
    const AbGroup& src = res ? values[m.to] : values[m.from];
    const AbGroup& tgt = res ? values[m.from] : values[m.to];
    if (h.src != src || h.tgt != tgt)
      throw ValidationError(std::string(res ? "restriction" : "transfer") + " along " + describe_map(c, f) +
                            " has wrong groups");
  }

  Context ctx_;
  std::vector<AbGroup> values_;
  std::vector<GroupHom> res_;
  std::vector<GroupHom> tr_;
};

/// Violations of the Mackey functor axioms; empty iff valid.
struct MackeyReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline MackeyReport check_mackey(const MackeyFunctor& m) {
  const GContext& c = m.ctx();
  MackeyReport rep;
  const int nm = static_cast<int>(c.num_maps());
  for (int f = 0; f < nm; ++f) {
    if (!m.res(f).is_well_defined())
      rep.violations.push_back("restriction along " + MackeyFunctor::describe_map(c, f) + " is not a homomorphism");
    if (!m.tr(f).is_well_defined())
      rep.violations.push_back("transfer along " + MackeyFunctor::describe_map(c, f) + " is not a homomorphism");
  }
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    int id = c.identity_map(static_cast<int>(k));
    if (m.res(id) != GroupHom::identity(m.value(k)) || m.tr(id) != GroupHom::identity(m.value(k)))
      rep.violations.push_back("identity: structure maps along the identity of " + c.lattice().class_label(k) +
                               " are not the identity");
  }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (c.map(f).to != c.map(g).from) continue;
      int gf = c.compose(f, g);
      if (m.res(gf) != zmod::compose(m.res(f), m.res(g)))
        rep.violations.push_back("functoriality: restriction along " + MackeyFunctor::describe_map(c, g) + " o " +
                                 MackeyFunctor::describe_map(c, f));
      if (m.tr(gf) != zmod::compose(m.tr(g), m.tr(f)))
        rep.violations.push_back("functoriality: transfer along " + MackeyFunctor::describe_map(c, g) + " o " +
                                 MackeyFunctor::describe_map(c, f));
    }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (c.map(f).to != c.map(g).to) continue;
      // res_g tr_f = sum over the pullback of tr_{right} res_{left}
      GroupHom lhs = zmod::compose(m.res(g), m.tr(f));
      GroupHom rhs = GroupHom::zero(lhs.src, lhs.tgt);
      for (auto& t : c.pullback(f, g)) rhs = rhs + zmod::compose(m.tr(t.right), m.res(t.left));
      if (lhs != rhs) {
        const auto& mf = c.map(f);
        const auto& mg = c.map(g);
        rep.violations.push_back("double coset at (" + c.lattice().class_label(mf.from) + " <= " +
                                 c.lattice().class_label(mf.to) + " >= " + c.lattice().class_label(mg.from) +
                                 "): res " + MackeyFunctor::describe_map(c, g) + " o tr " +
                                 MackeyFunctor::describe_map(c, f));
      }
    }
  return rep;
}

}  // namespace mackeyalg::mackey

#endif  // MACKEYALG_MACKEY_FUNCTOR_HPP
