#ifndef MACKEYALG_GRADED_GRADED_HPP
#define MACKEYALG_GRADED_GRADED_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "mackeyalg/monoidal/internal_hom.hpp"
#include "mackeyalg/monoidal/signs.hpp"

namespace mackeyalg::graded {

using mackey::MackeyFunctor;
using mackey::MackeyMorphism;
using monoidal::BoxProduct;
using monoidal::Degree;
using monoidal::operator+;
using monoidal::operator-;
using monoidal::GradingGroup;
using monoidal::SignTable;
using monoidal::Unit;
using zmod::AbGroup;
using zmod::GroupHom;
using zmod::IntMatrix;
using zmod::Integer;
using zmod::IntVector;
using Context = burnside::Context;
using burnside::GContext;

/// Grading group and sign table shared by graded objects.
using Signs = std::shared_ptr<const SignTable>;

inline Signs make_signs(const Context& ctx, GradingGroup g) { return std::make_shared<const SignTable>(ctx, std::move(g)); }

/// Z-grading with sigma(1, 1) = -1.
inline Signs integer_signs(const Context& ctx) { return make_signs(ctx, monoidal::integer_grading(ctx->num_classes())); }

inline Degree degree_of(long n) { return Degree{n}; }

/// A finitely supported family of Mackey functors indexed by degrees.
struct GradedMackey {
  Signs signs;
  std::map<Degree, MackeyFunctor> layers;

  const Context& context() const { return signs->context(); }
  const GContext& ctx() const { return *signs->context(); }
  std::size_t rank() const { return signs->grading().rank(); }
  Degree zero_degree() const { return Degree(rank()); }

  bool has(const Degree& d) const {
    auto it = layers.find(d);
    return it != layers.end() && !it->second.is_zero();
  }

  MackeyFunctor layer(const Degree& d) const {
    auto it = layers.find(d);
    return it == layers.end() ? MackeyFunctor::zero(context()) : it->second;
  }

  /// Degrees with a nonzero layer, in increasing order.
  std::vector<Degree> support() const {
    std::vector<Degree> out;
    for (auto& [d, m] : layers)
      if (!m.is_zero()) out.push_back(d);
    return out;
  }

  bool is_zero() const { return support().empty(); }
};

inline GradedMackey concentrated(const Signs& s, const Degree& d, const MackeyFunctor& m) {
  GradedMackey g{s, {}};
  g.layers.emplace(d, m);
  return g;
}

/// (Sigma^a M)_t = M_{t - a}.
inline GradedMackey shift(const GradedMackey& m, const Degree& a) {
  GradedMackey out{m.signs, {}};
  for (auto& [d, f] : m.layers) out.layers.emplace(d + a, f);
  return out;
}

/// Layers agree up to isomorphism of values (canonical invariants).
inline bool same_values(const GradedMackey& a, const GradedMackey& b) {
  std::set<Degree> ds;
  for (auto& d : a.support()) ds.insert(d);
  for (auto& d : b.support()) ds.insert(d);
  for (auto& d : ds)
    if (!mackey::same_values(a.layer(d), b.layer(d))) return false;
  return true;
}

/// Degree preserving (up to a fixed shift) family of morphisms: comps[a] is
/// M_a -> N_{a + shift}. Missing components are zero.
struct GradedMorphism {
  Degree shift;
  std::map<Degree, MackeyMorphism> comps;

  static GradedMorphism identity(const GradedMackey& m) {
    GradedMorphism f{m.zero_degree(), {}};
    for (auto& [d, l] : m.layers) f.comps.emplace(d, MackeyMorphism::identity(l));
    return f;
  }

  static GradedMorphism zero(const GradedMackey& m, const GradedMackey& n, const Degree& shift) {
    GradedMorphism f{shift, {}};
    for (auto& [d, l] : m.layers) f.comps.emplace(d, MackeyMorphism::zero(l, n.layer(d + shift)));
    return f;
  }

  /// Component at a, or the zero morphism between the layers.
  MackeyMorphism at(const GradedMackey& m, const GradedMackey& n, const Degree& a) const {
    auto it = comps.find(a);
    if (it != comps.end()) return it->second;
    return MackeyMorphism::zero(m.layer(a), n.layer(a + shift));
  }
};

inline bool equal(const GradedMackey& m, const GradedMackey& n, const GradedMorphism& f, const GradedMorphism& g) {
  if (f.shift != g.shift) return false;
  for (auto& d : m.support())
    if (!(f.at(m, n, d) == g.at(m, n, d))) return false;
  return true;
}

/// g o f for f: L -> M, g: M -> N.
inline GradedMorphism compose(const GradedMackey& l, const GradedMackey& m, const GradedMackey& n,
                              const GradedMorphism& g, const GradedMorphism& f) {
  GradedMorphism out{f.shift + g.shift, {}};
  for (auto& d : l.support()) out.comps.emplace(d, mackey::compose(g.at(m, n, d + f.shift), f.at(l, m, d)));
  return out;
}

inline GradedMorphism add(const GradedMackey& m, const GradedMackey& n, const GradedMorphism& f,
                          const GradedMorphism& g, const Integer& c = 1) {
  if (f.shift != g.shift) throw ValidationError("adding graded morphisms of different degrees");
  GradedMorphism out{f.shift, {}};
  for (auto& d : m.support()) out.comps.emplace(d, f.at(m, n, d) + c * g.at(m, n, d));
  return out;
}

inline bool is_morphism(const GradedMackey& m, const GradedMackey& n, const GradedMorphism& f) {
  for (auto& d : m.support())
    if (!mackey::is_morphism(m.layer(d), n.layer(d + f.shift), f.at(m, n, d))) return false;
  return true;
}

/// Action of a Burnside unit on M(O_k).
inline GroupHom unit_action(const MackeyFunctor& m, std::size_t k, Unit u) {
  if (u == 0) return GroupHom::identity(m.value(k));
  return m.burnside_action(k, monoidal::restricted_unit(m.ctx(), k, u));
}

inline MackeyMorphism unit_morphism(const MackeyFunctor& m, Unit u) {
  MackeyMorphism out;
  for (std::size_t k = 0; k < m.num_classes(); ++k) out.comps.push_back(unit_action(m, k, u));
  return out;
}

// ---------------------------------------------------------------------------
// Graded box product.

/// (M box N)_t = sum over a + b = t of M_a box N_b. Each summand keeps its
/// box presentation; `offset[k]` places it inside the value at O_k.
struct GradedBox {
  struct Piece {
    Degree a, b;
    BoxProduct box;
    std::vector<std::size_t> offset;
  };
  GradedMackey result;
  std::map<Degree, std::vector<Piece>> pieces;

  const Piece& piece(const Degree& a, const Degree& b) const {
    for (auto& p : pieces.at(a + b))
      if (p.a == a && p.b == b) return p;
    throw InternalError("graded box: no summand for the requested degrees");
  }

  /// Coordinates in result_{a+b}(O_j) of [x (x) y]_f, f: O_k -> O_j.
  IntVector generator(const Degree& a, const Degree& b, int f, const IntVector& x, const IntVector& y) const {
    const Piece& p = piece(a, b);
    const std::size_t j = result.ctx().map(f).to;
    IntVector out(result.layer(a + b).value(j).ngens());
    IntVector g = p.box.generator(f, x, y);
    for (std::size_t i = 0; i < g.size(); ++i) out[p.offset[j] + i] = g[i];
    return out;
  }
};

namespace detail {

inline std::vector<std::size_t> level_offsets(const std::vector<MackeyFunctor>& parts, std::size_t k) {
  std::vector<std::size_t> off{0};
  for (auto& p : parts) off.push_back(off.back() + p.value(k).ngens());
  return off;
}

}  // namespace detail

inline GradedBox graded_box(const GradedMackey& m, const GradedMackey& n) {
  GradedBox out;
  out.result.signs = m.signs;
  const std::size_t nc = m.ctx().num_classes();
  std::map<Degree, std::vector<MackeyFunctor>> parts;
  for (auto& a : m.support())
    for (auto& b : n.support()) {
      auto bx = monoidal::box(m.layer(a), n.layer(b));
      if (bx.result.is_zero()) continue;
      parts[a + b].push_back(bx.result);
      out.pieces[a + b].push_back({a, b, std::move(bx), {}});
    }
  for (auto& [t, ps] : parts) {
    for (std::size_t k = 0; k < nc; ++k) {
      auto off = detail::level_offsets(ps, k);
      for (std::size_t i = 0; i < ps.size(); ++i) out.pieces[t][i].offset.push_back(off[i]);
    }
    out.result.layers.emplace(t, mackey::direct_sum(m.context(), ps));
  }
  return out;
}

/// Morphism out of a graded box product given summand by summand:
/// fn(piece) returns the MackeyMorphism piece.box.result -> target layer.
template <class Fn>
GradedMorphism graded_box_morphism(const GradedBox& src, const GradedMackey& tgt, const Degree& shift, Fn&& fn) {
  const GContext& c = src.result.ctx();
  GradedMorphism out{shift, {}};
  for (auto& [t, ps] : src.pieces) {
    const MackeyFunctor& s = src.result.layers.at(t);
    const MackeyFunctor tl = tgt.layer(t + shift);
    MackeyMorphism f;
    for (std::size_t k = 0; k < c.num_classes(); ++k) {
      IntMatrix mat(tl.value(k).ngens(), s.value(k).ngens());
      for (auto& p : ps) {
        MackeyMorphism g = fn(p);
        mat.set_block(0, p.offset[k], g.comps[k].mat);
      }
      f.comps.emplace_back(s.value(k), tl.value(k), std::move(mat));
    }
    out.comps.emplace(t, std::move(f));
  }
  return out;
}

/// Symmetry M box N -> N box M: on the summand M_a box N_b it is the
/// ungraded symmetry followed by sigma(a, b).
inline GradedMorphism graded_symmetry(const GradedBox& mn, const GradedBox& nm, const GradedMackey& m,
                                      const GradedMackey& n) {
  const SignTable& s = *m.signs;
  const GContext& c = m.ctx();
  return graded_box_morphism(mn, nm.result, m.zero_degree(), [&](const GradedBox::Piece& p) {
    const auto& q = nm.piece(p.b, p.a);
    MackeyMorphism sym = monoidal::symmetry(p.box, q.box, m.layer(p.a), n.layer(p.b));
    sym = mackey::compose(unit_morphism(q.box.result, s.sigma_bits(p.a, p.b)), sym);
    // place into the summand of the target
    MackeyMorphism out;
    const MackeyFunctor& tl = nm.result.layers.at(p.a + p.b);
    for (std::size_t k = 0; k < c.num_classes(); ++k) {
      IntMatrix mat(tl.value(k).ngens(), p.box.result.value(k).ngens());
      mat.set_block(q.offset[k], 0, sym.comps[k].mat);
      out.comps.emplace_back(p.box.result.value(k), tl.value(k), std::move(mat));
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Graded internal hom.

/// Above this many degree pairs graded_hom needs an explicit window.
inline constexpr std::size_t kMaxUnwindowedPairs = 64;

/// <M, N>_t = product over a of <M_a, N_{a + t}>, for t in the window.
struct GradedHom {
  struct Factor {
    Degree a;
    monoidal::InternalHom hom;
  };
  GradedMackey result;
  std::map<Degree, std::vector<Factor>> factors;
  std::vector<Degree> window;
};

inline GradedHom graded_hom(const GradedMackey& m, const GradedMackey& n,
                            std::optional<std::vector<Degree>> window = std::nullopt) {
  const auto sm = m.support(), sn = n.support();
  if (!window) {
    if (sm.size() * sn.size() > kMaxUnwindowedPairs)
      throw MissingTruncation("graded_hom: supports are large, an output degree window is required");
    std::set<Degree> ts;
    for (auto& a : sm)
      for (auto& b : sn) ts.insert(b - a);
    window = std::vector<Degree>(ts.begin(), ts.end());
  }
  GradedHom out;
  out.result.signs = m.signs;
  out.window = *window;
  for (auto& t : *window) {
    std::vector<MackeyFunctor> parts;
    for (auto& a : sm) {
      if (!n.has(a + t)) continue;
      auto h = monoidal::internal_hom(m.layer(a), n.layer(a + t));
      if (h.result.is_zero()) continue;
      parts.push_back(h.result);
      out.factors[t].push_back({a, std::move(h)});
    }
    if (!parts.empty()) out.result.layers.emplace(t, mackey::direct_sum(m.context(), parts));
  }
  return out;
}

}  // namespace mackeyalg::graded

#endif  // MACKEYALG_GRADED_GRADED_HPP
