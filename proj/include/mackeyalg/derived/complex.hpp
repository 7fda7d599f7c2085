#ifndef MACKEYALG_DERIVED_COMPLEX_HPP
#define MACKEYALG_DERIVED_COMPLEX_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mackeyalg/derived/resolution.hpp"

namespace mackeyalg::derived {

using mackey::SubFunctor;
using zmod::SparseVec;
using zmod::SubquotientGroup;

/// A bounded complex of graded Mackey functors. Differentials have internal
/// degree 0; diff[s] leaves terms[s] and lands in term(next(s)), which is
/// s - 1 for chain complexes and s + 1 for cochain complexes. Missing
/// differentials are zero.
struct Complex {
  Signs signs;
  bool cohomological = false;
  std::map<long, GradedMackey> terms;
  std::map<long, GradedMorphism> diff;

  long next(long s) const { return cohomological ? s + 1 : s - 1; }
  long prev(long s) const { return cohomological ? s - 1 : s + 1; }

  GradedMackey term(long s) const {
    auto it = terms.find(s);
    return it == terms.end() ? GradedMackey{signs, {}} : it->second;
  }

  GradedMorphism out_of(long s) const {
    auto it = diff.find(s);
    if (it != diff.end()) return it->second;
    GradedMackey t = term(s);
    return GradedMorphism::zero(t, term(next(s)), t.zero_degree());
  }

  GradedMorphism into(long s) const { return out_of(prev(s)); }
};

inline std::vector<std::string> complex_failures(const Complex& c) {
  std::vector<std::string> out;
  for (auto& [s, t] : c.terms) {
    const GradedMorphism d = c.out_of(s);
    if (!graded::is_morphism(t, c.term(c.next(s)), d)) out.push_back("differential at " + std::to_string(s) + " is not a morphism");
    GradedMorphism dd = graded::compose(t, c.term(c.next(s)), c.term(c.next(c.next(s))), c.out_of(c.next(s)), d);
    for (auto& deg : t.support())
      if (!dd.at(t, c.term(c.next(c.next(s))), deg).is_zero()) {
        out.push_back("d o d != 0 at " + std::to_string(s));
        break;
      }
  }
  return out;
}

/// Homology at one spot: one subquotient functor per degree of the term.
struct GradedHomology {
  std::map<Degree, SubFunctor> parts;
  GradedMackey result;

  const SubFunctor* part(const Degree& d) const {
    auto it = parts.find(d);
    return it == parts.end() ? nullptr : &it->second;
  }
};

inline GradedHomology homology(const Complex& c, long s) {
  GradedHomology h;
  h.result.signs = c.signs;
  const GradedMackey t = c.term(s);
  const GradedMorphism in = c.into(s), out = c.out_of(s);
  const GradedMackey tp = c.term(c.prev(s)), tn = c.term(c.next(s));
  for (auto& d : t.support()) {
    SubFunctor sf = mackey::homology(t.layer(d), in.at(tp, t, d), out.at(t, tn, d));
    if (!sf.functor.is_zero()) h.result.layers.emplace(d, sf.functor);
    h.parts.emplace(d, std::move(sf));
  }
  return h;
}

/// Map on homology induced by f: A_s -> B_s (internal degree 0).
inline GradedMorphism induced_on_homology(const GradedHomology& ha, const GradedHomology& hb, const GradedMackey& a,
                                          const GradedMackey& b, const GradedMorphism& f) {
  GradedMorphism out{a.zero_degree(), {}};
  for (auto& [d, pa] : ha.parts) {
    if (pa.functor.is_zero()) continue;
    const SubFunctor* pb = hb.part(d);
    if (pb == nullptr) {
      out.comps.emplace(d, MackeyMorphism::zero(pa.functor, mackey::MackeyFunctor::zero(a.context())));
      continue;
    }
    out.comps.emplace(d, mackey::induced_morphism(pa, *pb, f.at(a, b, d)));
  }
  return out;
}

/// Chain map: components f[s]: A_s -> B_s.
using ChainMap = std::map<long, GradedMorphism>;

inline GradedMorphism component(const ChainMap& f, const Complex& a, const Complex& b, long s) {
  auto it = f.find(s);
  if (it != f.end()) return it->second;
  const GradedMackey t = a.term(s);
  return GradedMorphism::zero(t, b.term(s), t.zero_degree());
}

inline std::vector<std::string> chain_map_failures(const Complex& a, const Complex& b, const ChainMap& f) {
  std::vector<std::string> out;
  for (auto& [s, t] : a.terms) {
    const long n = a.next(s);
    GradedMorphism l = graded::compose(t, b.term(s), b.term(n), b.out_of(s), component(f, a, b, s));
    GradedMorphism r = graded::compose(t, a.term(n), b.term(n), component(f, a, b, n), a.out_of(s));
    if (!graded::equal(t, b.term(n), l, r)) out.push_back("chain map does not commute with d at " + std::to_string(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Long exact sequence of a short exact sequence of complexes.

/// 0 -> A -i-> B -p-> C -> 0, exact at every term, degree, and level.
struct ShortExactComplexes {
  Complex a, b, c;
  ChainMap i, p;
};

inline std::vector<std::string> short_exact_failures(const ShortExactComplexes& e) {
  std::vector<std::string> out;
  for (auto* bad : {&e.a, &e.b, &e.c})
    for (auto& f : complex_failures(*bad)) out.push_back(f);
  for (auto& f : chain_map_failures(e.a, e.b, e.i)) out.push_back("i: " + f);
  for (auto& f : chain_map_failures(e.b, e.c, e.p)) out.push_back("p: " + f);
  std::set<long> idx;
  for (auto* x : {&e.a, &e.b, &e.c})
    for (auto& [s, t] : x->terms) idx.insert(s);
  const std::size_t nc = e.a.signs->context()->num_classes();
  for (long s : idx) {
    const GradedMackey ta = e.a.term(s), tb = e.b.term(s), tc = e.c.term(s);
    const GradedMorphism is = component(e.i, e.a, e.b, s), ps = component(e.p, e.b, e.c, s);
    std::set<Degree> ds;
    for (auto* t : {&ta, &tb, &tc})
      for (auto& d : t->support()) ds.insert(d);
    for (auto& d : ds)
      for (std::size_t k = 0; k < nc; ++k) {
        const GroupHom f = is.at(ta, tb, d).comps[k], g = ps.at(tb, tc, d).comps[k];
        const AbGroup va = ta.layer(d).value(k), vc = tc.layer(d).value(k);
        const bool ok = zmod::homology(GroupHom::zero(AbGroup(), va), f).group().is_trivial() &&
                        zmod::homology(f, g).group().is_trivial() &&
                        zmod::homology(g, GroupHom::zero(vc, AbGroup())).group().is_trivial();
        if (!ok) {
          out.push_back("not short exact at " + std::to_string(s));
          goto next_index;
        }
      }
  next_index:;
  }
  return out;
}

/// Connecting map H_s(C) -> H_{next(s)}(A) by the snake construction: lift
/// a cycle through p, apply d_B, pull back through i.
inline GradedMorphism connecting_map(const ShortExactComplexes& e, long s, const GradedHomology& hc,
                                     const GradedHomology& ha) {
  const long n = e.c.next(s);
  const GradedMackey ta = e.a.term(n), tb = e.b.term(s), tbn = e.b.term(n), tc = e.c.term(s);
  const GradedMorphism ps = component(e.p, e.b, e.c, s), in = component(e.i, e.a, e.b, n), db = e.b.out_of(s);
  GradedMorphism out{tc.zero_degree(), {}};
  for (auto& [d, pc] : hc.parts) {
    if (pc.functor.is_zero()) continue;
    const SubFunctor* pa = ha.part(d);
    MackeyMorphism m;
    for (std::size_t k = 0; k < pc.levels.size(); ++k) {
      const AbGroup& src = pc.functor.value(k);
      const AbGroup tgt = pa ? pa->functor.value(k) : AbGroup();
      IntMatrix mat(tgt.ngens(), src.ngens());
      const GroupHom pk = ps.at(tb, tc, d).comps[k], ik = in.at(ta, tbn, d).comps[k], dk = db.at(tb, tbn, d).comps[k];
      for (std::size_t j = 0; j < src.ngens(); ++j) {
        auto b = zmod::solve(pk, pc.levels[k].lift(j));
        if (!b) throw InternalError("connecting map: cycle does not lift through the surjection");
        auto a = zmod::solve(ik, dk.apply(*b));
        if (!a) throw InternalError("connecting map: boundary does not come from the subcomplex");
        if (pa == nullptr) continue;
        IntVector c = pa->coords(k, *a);
        for (std::size_t r = 0; r < c.size(); ++r) mat(r, j) = c[r];
      }
      m.comps.emplace_back(src, tgt, std::move(mat));
    }
    out.comps.emplace(d, std::move(m));
  }
  return out;
}

/// ... -> H_s(A) -> H_s(B) -> H_s(C) -> H_{next(s)}(A) -> ... over the given
/// spots, with an exactness report at every joint.
struct LongExactSequence {
  std::vector<long> spots;
  std::map<long, GradedHomology> ha, hb, hc;
  std::map<long, GradedMorphism> istar, pstar, delta;
  std::vector<std::string> failures;
  std::size_t joints_checked = 0;

  bool exact() const { return failures.empty(); }
};

namespace detail {

inline void check_joint(LongExactSequence& les, const std::string& where, const GradedMackey& src,
                        const GradedMackey& mid, const GradedMackey& tgt, const GradedMorphism& f,
                        const GradedMorphism& g) {
  const std::size_t nc = mid.ctx().num_classes();
  std::set<Degree> ds;
  for (auto& d : mid.support()) ds.insert(d);
  for (auto& d : ds)
    for (std::size_t k = 0; k < nc; ++k) {
      ++les.joints_checked;
      const GroupHom fk = f.at(src, mid, d).comps[k], gk = g.at(mid, tgt, d).comps[k];
      if (!zmod::compose(gk, fk).is_zero()) {
        les.failures.push_back(where + ": composite is not zero");
        return;
      }
      if (!zmod::homology(fk, gk).group().is_trivial()) {
        les.failures.push_back(where + ": not exact");
        return;
      }
    }
}

}  // namespace detail

inline LongExactSequence long_exact_sequence(const ShortExactComplexes& e, const std::vector<long>& spots) {
  LongExactSequence les;
  les.spots = spots;
  std::set<long> need(spots.begin(), spots.end());
  for (long s : spots) need.insert(e.a.next(s));
  for (long s : need) {
    les.ha[s] = homology(e.a, s);
    les.hb[s] = homology(e.b, s);
    les.hc[s] = homology(e.c, s);
    les.istar[s] = induced_on_homology(les.ha[s], les.hb[s], e.a.term(s), e.b.term(s), component(e.i, e.a, e.b, s));
    les.pstar[s] = induced_on_homology(les.hb[s], les.hc[s], e.b.term(s), e.c.term(s), component(e.p, e.b, e.c, s));
  }
  for (long s : spots) les.delta[s] = connecting_map(e, s, les.hc[s], les.ha[e.a.next(s)]);
  for (long s : spots) {
    const long n = e.a.next(s);
    const std::string at = " at " + std::to_string(s);
    const auto &a = les.ha[s].result, &b = les.hb[s].result, &c = les.hc[s].result, &an = les.ha[n].result,
               &bn = les.hb[n].result;
    detail::check_joint(les, "H(B)" + at, a, b, c, les.istar[s], les.pstar[s]);
    detail::check_joint(les, "H(C)" + at, b, c, an, les.pstar[s], les.delta[s]);
    detail::check_joint(les, "H(A)" + std::string(" at ") + std::to_string(n), c, an, bn, les.delta[s], les.istar[n]);
  }
  return les;
}

// ---------------------------------------------------------------------------
// Direct sums of graded functors and block morphisms.

struct GradedSum {
  GradedMackey result;
  std::vector<GradedMackey> parts;
  // offsets[i][d][k]; present only when part i has a nonzero layer d
  std::vector<std::map<Degree, std::vector<std::size_t>>> offsets;

  std::optional<std::size_t> offset(std::size_t i, const Degree& d, std::size_t k) const {
    auto it = offsets[i].find(d);
    if (it == offsets[i].end()) return std::nullopt;
    return it->second[k];
  }
};

inline GradedSum graded_sum(const Signs& signs, std::vector<GradedMackey> parts) {
  GradedSum out;
  out.result.signs = signs;
  out.offsets.resize(parts.size());
  const std::size_t nc = signs->context()->num_classes();
  std::set<Degree> ds;
  for (auto& p : parts)
    for (auto& d : p.support()) ds.insert(d);
  for (auto& d : ds) {
    std::vector<MackeyFunctor> ls;
    std::vector<std::size_t> who;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (parts[i].has(d)) {
        ls.push_back(parts[i].layer(d));
        who.push_back(i);
      }
    for (std::size_t k = 0; k < nc; ++k) {
      auto off = graded::detail::level_offsets(ls, k);
      for (std::size_t j = 0; j < who.size(); ++j) out.offsets[who[j]][d].push_back(off[j]);
    }
    out.result.layers.emplace(d, mackey::direct_sum(signs->context(), ls));
  }
  out.parts = std::move(parts);
  return out;
}

/// Morphism between sums from blocks: blocks[{i, j}] maps source part j to
/// target part i; every block has degree `shift`.
inline GradedMorphism block_morphism(const GradedSum& src, const GradedSum& tgt,
                                     const std::map<std::pair<std::size_t, std::size_t>, GradedMorphism>& blocks,
                                     const Degree& shift) {
  const std::size_t nc = src.result.ctx().num_classes();
  GradedMorphism out{shift, {}};
  for (auto& d : src.result.support()) {
    const MackeyFunctor s = src.result.layer(d), t = tgt.result.layer(d + shift);
    std::vector<IntMatrix> mats;
    for (std::size_t k = 0; k < nc; ++k) mats.emplace_back(t.value(k).ngens(), s.value(k).ngens());
    for (auto& [ij, f] : blocks) {
      const auto [i, j] = ij;
      if (!src.parts[j].has(d) || !tgt.parts[i].has(d + shift)) continue;
      MackeyMorphism g = f.at(src.parts[j], tgt.parts[i], d);
      for (std::size_t k = 0; k < nc; ++k) {
        const auto so = src.offset(j, d, k), to = tgt.offset(i, d + shift, k);
        IntMatrix cur = mats[k].block(*to, *so, g.comps[k].mat.rows(), g.comps[k].mat.cols());
        mats[k].set_block(*to, *so, cur + g.comps[k].mat);
      }
    }
    MackeyMorphism m;
    for (std::size_t k = 0; k < nc; ++k) m.comps.emplace_back(s.value(k), t.value(k), std::move(mats[k]));
    out.comps.emplace(d, std::move(m));
  }
  return out;
}

/// Coordinates of x in part i placed into the sum (degree d, level k).
inline IntVector embed_part(const GradedSum& s, std::size_t i, const Degree& d, std::size_t k, const IntVector& x) {
  IntVector out(s.result.layer(d).value(k).ngens());
  if (x.empty()) return out;
  const std::size_t o = *s.offset(i, d, k);
  for (std::size_t r = 0; r < x.size(); ++r) out[o + r] = x[r];
  return out;
}

inline IntVector part_of(const GradedSum& s, std::size_t i, const Degree& d, std::size_t k, const IntVector& x) {
  const auto o = s.offset(i, d, k);
  if (!o) return {};
  const std::size_t n = s.parts[i].layer(d).value(k).ngens();
  return IntVector(x.begin() + static_cast<long>(*o), x.begin() + static_cast<long>(*o + n));
}

// ---------------------------------------------------------------------------
// Double complexes (homological in both directions).

/// E(s, t) with horizontal dh: E(s, t) -> E(s - 1, t) and vertical
/// dv: E(s, t) -> E(s, t - 1) commuting. The total complex uses
/// d = dh + (-1)^s dv.
struct Bicomplex {
  Signs signs;
  std::map<std::pair<long, long>, GradedMackey> entries;
  std::map<std::pair<long, long>, GradedMorphism> dh, dv;

  GradedMackey entry(long s, long t) const {
    auto it = entries.find({s, t});
    return it == entries.end() ? GradedMackey{signs, {}} : it->second;
  }
};

inline std::vector<std::string> bicomplex_failures(const Bicomplex& b) {
  std::vector<std::string> out;
  for (auto& [st, e] : b.entries) {
    const auto [s, t] = st;
    auto get = [&](const std::map<std::pair<long, long>, GradedMorphism>& m, long x, long y, const GradedMackey& src,
                   const GradedMackey& tgt) {
      auto it = m.find({x, y});
      return it == m.end() ? GradedMorphism::zero(src, tgt, src.zero_degree()) : it->second;
    };
    const GradedMackey e10 = b.entry(s - 1, t), e01 = b.entry(s, t - 1), e11 = b.entry(s - 1, t - 1);
    GradedMorphism hv = graded::compose(e, e01, e11, get(b.dh, s, t - 1, e01, e11), get(b.dv, s, t, e, e01));
    GradedMorphism vh = graded::compose(e, e10, e11, get(b.dv, s - 1, t, e10, e11), get(b.dh, s, t, e, e10));
    if (!graded::equal(e, e11, hv, vh)) out.push_back("squares do not commute at (" + std::to_string(s) + "," + std::to_string(t) + ")");
  }
  return out;
}

/// Total complex with the position of every entry inside each term.
struct TotalComplex {
  Complex complex;
  std::map<long, GradedSum> sums;
  std::map<long, std::vector<std::pair<long, long>>> blocks;  // entries of term n, in part order
};

inline TotalComplex total_complex(const Bicomplex& b) {
  TotalComplex out;
  out.complex.signs = b.signs;
  std::map<long, std::vector<std::pair<long, long>>> by_n;
  for (auto& [st, e] : b.entries) by_n[st.first + st.second].push_back(st);
  for (auto& [n, list] : by_n) {
    std::vector<GradedMackey> parts;
    for (auto& st : list) parts.push_back(b.entries.at(st));
    out.sums.emplace(n, graded_sum(b.signs, std::move(parts)));
    out.blocks[n] = list;
    out.complex.terms[n] = out.sums.at(n).result;
  }
  for (auto& [n, list] : out.blocks) {
    auto lower = out.sums.find(n - 1);
    if (lower == out.sums.end()) continue;
    const auto& lo = out.blocks.at(n - 1);
    auto index_of = [&](long s, long t) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] == std::make_pair(s, t)) return i;
      return std::nullopt;
    };
    std::map<std::pair<std::size_t, std::size_t>, GradedMorphism> blocks;
    for (std::size_t j = 0; j < list.size(); ++j) {
      const auto [s, t] = list[j];
      if (auto h = b.dh.find({s, t}); h != b.dh.end())
        if (auto i = index_of(s - 1, t)) blocks.emplace(std::make_pair(*i, j), h->second);
      if (auto v = b.dv.find({s, t}); v != b.dv.end())
        if (auto i = index_of(s, t - 1)) {
          GradedMorphism g = v->second;
          if (s % 2 != 0)
            for (auto& [d, m] : g.comps) m = Integer(-1) * m;
          blocks.emplace(std::make_pair(*i, j), std::move(g));
        }
    }
    out.complex.diff[n] = block_morphism(out.sums.at(n), lower->second, blocks, b.signs->grading().zero());
  }
  return out;
}

}  // namespace mackeyalg::derived

#endif  // MACKEYALG_DERIVED_COMPLEX_HPP
