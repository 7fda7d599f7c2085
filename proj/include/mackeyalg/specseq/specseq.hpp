#ifndef MACKEYALG_SPECSEQ_SPECSEQ_HPP
#define MACKEYALG_SPECSEQ_SPECSEQ_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mackeyalg/derived/derived.hpp"

namespace mackeyalg::specseq {

using derived::BigradedMackey;
using derived::Complex;
using derived::Degree;
using derived::GradedHomology;
using derived::GradedMackey;
using derived::GradedMorphism;
using derived::GradedSum;
using mackey::MackeyFunctor;
using mackey::MackeyMorphism;
using mackey::SubFunctor;
using zmod::AbGroup;
using zmod::GroupHom;
using zmod::IntMatrix;
using zmod::IntVector;
using zmod::SparseVec;
using zmod::SubquotientGroup;

/// A bounded chain complex whose terms are sums of blocks; block i of T_n
/// has filtration index index[n][i] and F_p T_n is the sum of the blocks
/// with index <= p. The differential must not raise the index.
struct FilteredComplex {
  Complex complex;
  std::map<long, GradedSum> sums;
  std::map<long, std::vector<long>> index;

  long p_min() const {
    long p = 0;
    bool first = true;
    for (auto& [n, ix] : index)
      for (long i : ix) p = first ? (first = false, i) : std::min(p, i);
    return p;
  }
  long p_max() const {
    long p = 0;
    bool first = true;
    for (auto& [n, ix] : index)
      for (long i : ix) p = first ? (first = false, i) : std::max(p, i);
    return p;
  }
};

/// Filtration of a total complex by the first (s) or second (t) index.
inline FilteredComplex filtration_of(const derived::TotalComplex& tot, bool by_first) {
  FilteredComplex fc;
  fc.complex = tot.complex;
  fc.sums = tot.sums;
  for (auto& [n, list] : tot.blocks)
    for (auto& [s, t] : list) fc.index[n].push_back(by_first ? s : t);
  return fc;
}

/// One-step filtration: everything in filtration 0.
inline FilteredComplex trivial_filtration(const Complex& c) {
  if (c.cohomological) throw ValidationError("trivial_filtration: chain complexes only");
  FilteredComplex fc;
  fc.complex = c;
  for (auto& [n, t] : c.terms) {
    fc.sums.emplace(n, derived::graded_sum(c.signs, {t}));
    fc.index[n] = {0};
  }
  return fc;
}

/// Cochain complex C^s as the chain complex T_{-s} with the filtration
/// F_p = sum of C^s with -s <= p (the filtration by degree).
inline FilteredComplex degree_filtration(const Complex& c) {
  FilteredComplex fc;
  fc.complex.signs = c.signs;
  const long sign = c.cohomological ? -1 : 1;
  for (auto& [s, t] : c.terms) {
    const long n = sign * s;
    fc.complex.terms[n] = t;
    fc.sums.emplace(n, derived::graded_sum(c.signs, {t}));
    fc.index[n] = {n};
  }
  for (auto& [s, d] : c.diff) fc.complex.diff[sign * s] = d;
  return fc;
}

namespace detail {

/// Coordinates of F_p T_n in the value at (t, k).
inline std::vector<std::size_t> filtered_coords(const FilteredComplex& fc, long n, long p, const Degree& t, std::size_t k) {
  std::vector<std::size_t> out;
  auto it = fc.sums.find(n);
  if (it == fc.sums.end()) return out;
  const auto& ix = fc.index.at(n);
  for (std::size_t i = 0; i < ix.size(); ++i) {
    if (ix[i] > p) continue;
    auto o = it->second.offset(i, t, k);
    if (!o) continue;
    const std::size_t len = it->second.parts[i].layer(t).value(k).ngens();
    for (std::size_t r = 0; r < len; ++r) out.push_back(*o + r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> out;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < s.size() && s[j] == i) {
      ++j;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

inline AbGroup sub_group(const AbGroup& a, const std::vector<std::size_t>& idx) {
  IntVector o;
  for (auto i : idx) o.push_back(a.orders[i]);
  return AbGroup(std::move(o));
}

inline SparseVec spread(const SparseVec& v, const std::vector<std::size_t>& idx) {
  SparseVec out;
  for (auto& [i, x] : v.entries) out.entries.emplace_back(idx[i], x);
  return out;
}

inline std::vector<SparseVec> unit_vectors(const std::vector<std::size_t>& idx) {
  std::vector<SparseVec> out;
  for (auto i : idx) out.push_back(SparseVec{{{i, 1}}});
  return out;
}

/// {x in span(src) : d x in span(tgt)}, src/tgt coordinate subsets.
inline std::vector<SparseVec> preimage(const GroupHom& d, const std::vector<std::size_t>& src,
                                       const std::vector<std::size_t>& tgt) {
  const auto comp = complement(d.tgt.ngens(), tgt);
  IntMatrix m(comp.size(), src.size());
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) m(i, j) = d.mat(comp[i], src[j]);
  GroupHom h(sub_group(d.src, src), sub_group(d.tgt, comp), std::move(m));
  std::vector<SparseVec> out;
  for (auto& v : zmod::kernel_lattice(h)) out.push_back(spread(v, src));
  return out;
}

/// d(span(src)) intersected with span(tgt).
inline std::vector<SparseVec> image_within(const GroupHom& d, const std::vector<std::size_t>& src,
                                           const std::vector<std::size_t>& tgt) {
  const auto comp = complement(d.tgt.ngens(), tgt);
  IntMatrix m(comp.size(), src.size());
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) m(i, j) = d.mat(comp[i], src[j]);
  GroupHom h(AbGroup::free(src.size()), sub_group(d.tgt, comp), std::move(m));
  std::vector<SparseVec> out;
  for (auto& c : zmod::kernel_lattice(h)) {
    IntVector x(d.tgt.ngens());
    for (auto& [j, a] : c.entries)
      for (std::size_t r = 0; r < x.size(); ++r) x[r] += a * d.mat(r, src[j]);
    out.push_back(SparseVec::from_dense(x));
  }
  return out;
}

inline std::vector<SparseVec> join(std::vector<SparseVec> a, const std::vector<SparseVec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

/// E^r_{p,q} with p + q = n: one subquotient functor of T_n per degree.
struct Entry {
  std::map<Degree, SubFunctor> parts;
  GradedMackey result;
};

struct Page {
  long r = 1;
  std::map<std::pair<long, long>, Entry> entries;       // (p, q)
  std::map<std::pair<long, long>, GradedMorphism> d;    // from (p, q) to (p - r, q + r - 1)

  const Entry* entry(long p, long q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? nullptr : &it->second;
  }

  bool differentials_zero() const {
    for (auto& [pq, f] : d)
      for (auto& [t, m] : f.comps)
        if (!m.is_zero()) return false;
    return true;
  }
};

struct SpectralSequence {
  FilteredComplex fc;
  long n_lo = 0, n_hi = 0;  // total degrees with complete entries
  std::vector<Page> pages;  // pages[i] is E^{i+1}
  std::vector<std::string> failures;

  const Page& page(long r) const { return pages.at(static_cast<std::size_t>(r - 1)); }
  const Page& infinity() const { return pages.back(); }

  /// Smallest r >= 2 with d^{r'} = 0 for every r' >= r, if any.
  std::optional<long> collapse_page() const {
    std::optional<long> out;
    for (long r = static_cast<long>(pages.size()); r >= 2; --r) {
      if (!page(r).differentials_zero()) break;
      out = r;
    }
    return out;
  }
};

namespace detail {

/// Z^r_p and the relations of E^r_p in T_n at (t, k).
inline SubquotientGroup page_group(const FilteredComplex& fc, long n, long p, long r, const Degree& t, std::size_t k) {
  const Complex& c = fc.complex;
  const GradedMackey tn = c.term(n), tl = c.term(n - 1), th = c.term(n + 1);
  const AbGroup a = tn.layer(t).value(k);
  const GroupHom dn = c.out_of(n).at(tn, tl, t).comps[k];
  const GroupHom dh = c.out_of(n + 1).at(th, tn, t).comps[k];
  auto z = [&](long pp, long rr) {
    return preimage(dn, filtered_coords(fc, n, pp, t, k), filtered_coords(fc, n - 1, pp - rr, t, k));
  };
  std::vector<SparseVec> sub = z(p, r);
  std::vector<SparseVec> rel = join(z(p - 1, r - 1),
                                    image_within(dh, filtered_coords(fc, n + 1, p + r - 1, t, k), filtered_coords(fc, n, p, t, k)));
  return SubquotientGroup(a, sub, rel);
}

inline Entry page_entry(const FilteredComplex& fc, long n, long p, long r) {
  Entry e;
  e.result.signs = fc.complex.signs;
  const GradedMackey tn = fc.complex.term(n);
  const std::size_t nc = fc.complex.signs->context()->num_classes();
  for (auto& t : tn.support()) {
    std::vector<SubquotientGroup> lv;
    for (std::size_t k = 0; k < nc; ++k) lv.push_back(page_group(fc, n, p, r, t, k));
    SubFunctor sf = mackey::induced_subquotient(tn.layer(t), std::move(lv));
    if (!sf.functor.is_zero()) e.result.layers.emplace(t, sf.functor);
    e.parts.emplace(t, std::move(sf));
  }
  return e;
}

inline GradedMorphism entry_map(const Entry& src, const Entry* tgt, const GradedMackey& ts, const GradedMackey& tt,
                                const GradedMorphism& d) {
  GradedMorphism out{ts.zero_degree(), {}};
  for (auto& [t, ps] : src.parts) {
    if (ps.functor.is_zero()) continue;
    auto it = tgt ? tgt->parts.find(t) : std::map<Degree, SubFunctor>::const_iterator{};
    if (tgt == nullptr || it == tgt->parts.end()) {
      out.comps.emplace(t, MackeyMorphism::zero(ps.functor, MackeyFunctor::zero(ts.context())));
      continue;
    }
    out.comps.emplace(t, mackey::induced_morphism(ps, it->second, d.at(ts, tt, t)));
  }
  return out;
}

}  // namespace detail

/// Pages E^1 .. E^{r} with r = max(r_max, filtration length + 2), so the last
/// page is E^infinity. Entries are computed for total degrees in `range`
/// (default: every term); pass the degrees whose homology the truncation
/// leaves intact. E^{r+1} = H(E^r, d^r) is checked wherever both neighbours
/// are computed or zero.
inline SpectralSequence pages(const FilteredComplex& fc, long r_max,
                              std::optional<std::pair<long, long>> range = std::nullopt) {
  SpectralSequence ss;
  ss.fc = fc;
  if (fc.complex.terms.empty()) {
    ss.pages.push_back(Page{});
    return ss;
  }
  ss.n_lo = range ? range->first : fc.complex.terms.begin()->first;
  ss.n_hi = range ? range->second : fc.complex.terms.rbegin()->first;
  auto complete = [&](long n) {
    return (n >= ss.n_lo && n <= ss.n_hi) || fc.complex.term(n).is_zero();
  };
  const long pmin = fc.p_min(), pmax = fc.p_max();
  const long r_top = std::max(r_max, pmax - pmin + 2);
  for (long r = 1; r <= r_top; ++r) {
    Page pg;
    pg.r = r;
    for (long n = ss.n_lo; n <= ss.n_hi; ++n)
      for (long p = pmin; p <= pmax; ++p) {
        Entry e = detail::page_entry(fc, n, p, r);
        if (e.result.is_zero()) continue;
        pg.entries.emplace(std::make_pair(p, n - p), std::move(e));
      }
    for (auto& [pq, e] : pg.entries) {
      const auto [p, q] = pq;
      const long n = p + q;
      const Entry* tgt = pg.entry(p - r, q + r - 1);
      pg.d.emplace(pq, detail::entry_map(e, tgt, fc.complex.term(n), fc.complex.term(n - 1), fc.complex.out_of(n)));
    }
    ss.pages.push_back(std::move(pg));
  }
  // d^r d^r = 0 and E^{r+1} = H(E^r)
  for (std::size_t i = 0; i + 1 < ss.pages.size(); ++i) {
    const Page& pg = ss.pages[i];
    const Page& next = ss.pages[i + 1];
    const long r = pg.r;
    for (long n = ss.n_lo; n <= ss.n_hi; ++n)
      for (long p = pmin; p <= pmax; ++p) {
        if (!complete(n - 1) || !complete(n + 1)) continue;
        const long q = n - p;
        const Entry* mid = pg.entry(p, q);
        const Entry* after = next.entry(p, q);
        GradedMackey h{fc.complex.signs, {}};
        if (mid != nullptr) {
          const Entry* in = pg.entry(p + r, q - r + 1);
          for (auto& [t, part] : mid->parts) {
            if (part.functor.is_zero()) continue;
            MackeyMorphism fin = in && in->result.has(t) ? pg.d.at({p + r, q - r + 1}).at(in->result, mid->result, t)
                                                         : MackeyMorphism::zero(MackeyFunctor::zero(part.functor.context()), part.functor);
            MackeyMorphism fout = pg.d.at({p, q}).comps.at(t);
            if (!mackey::compose(fout, fin).is_zero()) ss.failures.push_back("d^r d^r != 0 on page " + std::to_string(r));
            auto hk = mackey::homology(part.functor, fin, fout);
            if (!hk.functor.is_zero()) h.layers.emplace(t, hk.functor);
          }
        }
        GradedMackey nxt = after ? after->result : GradedMackey{fc.complex.signs, {}};
        if (!graded::same_values(h, nxt))
          ss.failures.push_back("E^" + std::to_string(r + 1) + " differs from H(E^" + std::to_string(r) + ") at (" +
                                std::to_string(p) + "," + std::to_string(q) + ")");
      }
  }
  return ss;
}

// ---------------------------------------------------------------------------
// Convergence and edge maps.

/// gr_p H_n for the induced filtration of the homology of the total complex.
inline GradedMackey associated_graded(const FilteredComplex& fc, long n, long p) {
  const Complex& c = fc.complex;
  const GradedMackey tn = c.term(n), tl = c.term(n - 1), th = c.term(n + 1);
  const std::size_t nc = c.signs->context()->num_classes();
  GradedMackey out{c.signs, {}};
  for (auto& t : tn.support()) {
    std::vector<SubquotientGroup> lv;
    for (std::size_t k = 0; k < nc; ++k) {
      const GroupHom dn = c.out_of(n).at(tn, tl, t).comps[k];
      const GroupHom dh = c.out_of(n + 1).at(th, tn, t).comps[k];
      const auto bnd = zmod::image_generators(dh);
      auto cyc = [&](long pp) { return detail::preimage(dn, detail::filtered_coords(fc, n, pp, t, k), {}); };
      lv.emplace_back(tn.layer(t).value(k), detail::join(cyc(p), bnd), detail::join(cyc(p - 1), bnd));
    }
    SubFunctor sf = mackey::induced_subquotient(tn.layer(t), std::move(lv));
    if (!sf.functor.is_zero()) out.layers.emplace(t, sf.functor);
  }
  return out;
}

/// Comparison of a spectral sequence with an independently computed target
/// (indexed by total degree), plus the edge map at the bottom filtration.
struct ConvergenceReport {
  bool target_matches = true;
  bool graded_matches = true;
  std::optional<long> collapse_page;
  bool edge_iso = true;
  std::vector<std::string> mismatches;

  bool converges() const { return target_matches && graded_matches; }
};

inline ConvergenceReport edge_and_convergence(const SpectralSequence& ss, const BigradedMackey& target) {
  ConvergenceReport rep;
  rep.collapse_page = ss.collapse_page();
  const FilteredComplex& fc = ss.fc;
  const long pmin = fc.p_min(), pmax = fc.p_max();
  const Page& inf = ss.infinity();
  for (long n = ss.n_lo; n <= ss.n_hi; ++n) {
    GradedHomology h = derived::homology(fc.complex, n);
    if (!graded::same_values(h.result, target.row(n))) {
      rep.target_matches = false;
      rep.mismatches.push_back("homology of the total complex differs from the target in degree " + std::to_string(n));
    }
    for (long p = pmin; p <= pmax; ++p) {
      const Entry* e = inf.entry(p, n - p);
      GradedMackey einf = e ? e->result : GradedMackey{fc.complex.signs, {}};
      if (!graded::same_values(einf, associated_graded(fc, n, p))) {
        rep.graded_matches = false;
        rep.mismatches.push_back("E^infinity differs from gr H at (" + std::to_string(p) + "," + std::to_string(n - p) + ")");
      }
    }
    // edge: E^2 at the lowest filtration of T_n -> H_n
    auto ix = fc.index.find(n);
    if (ix == fc.index.end() || ss.pages.size() < 2) continue;
    const long plow = *std::min_element(ix->second.begin(), ix->second.end());
    const Entry* e2 = ss.page(2).entry(plow, n - plow);
    const GradedMackey tn = fc.complex.term(n);
    for (auto& t : h.result.support()) {
      const bool has = e2 && e2->result.has(t);
      if (!has) {
        rep.edge_iso = false;
        break;
      }
    }
    if (e2 == nullptr) continue;
    for (auto& [t, part] : e2->parts) {
      if (part.functor.is_zero()) continue;
      const SubFunctor* hp = h.part(t);
      try {
        MackeyMorphism f = mackey::induced_morphism(part, *hp, MackeyMorphism::identity(tn.layer(t)));
        for (auto& c : f.comps)
          if (!zmod::kernel(c).group().is_trivial() || !zmod::cokernel(c).group().is_trivial()) rep.edge_iso = false;
      } catch (const InternalError&) {
        rep.edge_iso = false;
        rep.mismatches.push_back("edge map is not defined in degree " + std::to_string(n));
      }
    }
  }
  return rep;
}

/// Direct sum over p of E^infinity_{p, n-p}, per total degree.
inline BigradedMackey total_infinity(const SpectralSequence& ss) {
  BigradedMackey out;
  out.signs = ss.fc.complex.signs;
  for (auto& [pq, e] : ss.infinity().entries) {
    const long n = pq.first + pq.second;
    GradedMackey& row = out.rows[n];
    row.signs = out.signs;
    for (auto& [t, f] : e.result.layers) {
      auto it = row.layers.find(t);
      if (it == row.layers.end()) row.layers.emplace(t, f);
      else it->second = mackey::direct_sum(it->second, f);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hyper-Tor bicomplex.

/// Q_s box_R P_t for resolutions Q of a right module N and P of a left
/// module M, with entries s + t <= n_max.
struct TorBicomplex {
  derived::Resolution q, p;
  std::map<std::pair<long, long>, graded::BoxOverR> boxes;
  derived::Bicomplex bicomplex;
  derived::TotalComplex total;
  long n_max = 0;

  /// Filtration by the resolution degree of N (first) or of M (second).
  FilteredComplex filtration(bool by_n) const { return filtration_of(total, by_n); }
};

inline TorBicomplex bicomplex_from_resolutions(const derived::Resolution& q, const derived::Resolution& p,
                                               std::optional<long> n_max = std::nullopt) {
  if (q.module.ring != p.module.ring) throw ValidationError("bicomplex_from_resolutions: resolutions over different rings");
  if (q.side != graded::Side::right || p.side != graded::Side::left)
    throw ValidationError("bicomplex_from_resolutions: need a right and a left resolution");
  TorBicomplex b;
  b.q = q;
  b.p = p;
  const long sq = static_cast<long>(q.stages.size()) - 1, sp = static_cast<long>(p.stages.size()) - 1;
  b.n_max = n_max ? *n_max : std::min(sq, sp);
  b.bicomplex.signs = p.module.m.signs;
  for (long s = 0; s <= sq; ++s)
    for (long t = 0; t <= sp && s + t <= b.n_max; ++t) {
      b.boxes.emplace(std::make_pair(s, t), graded::box_over_R(q.stage(s), p.stage(t)));
      b.bicomplex.entries[{s, t}] = b.boxes.at({s, t}).result;
    }
  for (auto& [st, bx] : b.boxes) {
    const auto [s, t] = st;
    const auto& qs = q.stage(s);
    const auto& pt = p.stage(t);
    if (s > 0) {
      const auto& lower = b.boxes.at({s - 1, t});
      b.bicomplex.dh[st] = graded::box_over_R_map(bx, lower, qs, q.stage(s - 1), pt, pt, q.d[s], GradedMorphism::identity(pt.m));
    }
    if (t > 0) {
      const auto& lower = b.boxes.at({s, t - 1});
      b.bicomplex.dv[st] = graded::box_over_R_map(bx, lower, qs, qs, pt, p.stage(t - 1), GradedMorphism::identity(qs.m), p.d[t]);
    }
  }
  b.total = derived::total_complex(b.bicomplex);
  return b;
}

// ---------------------------------------------------------------------------
// Hyper-Ext spectral sequence and its pairing.

/// The degree filtration of func_R(P_*, M): E_1 = cochains, E_2 = MExt.
/// Total degree n corresponds to cohomological degree -n.
struct ExtSpectralSequence {
  derived::ExtData ext;
  SpectralSequence ss;
};

inline ExtSpectralSequence ext_spectral_sequence(const derived::ExtData& e, long r_max) {
  ExtSpectralSequence out{e, {}};
  out.ss = pages(degree_filtration(e.complex), r_max, std::make_pair(-static_cast<long>(e.s_max), 0L));
  return out;
}

/// MExt indexed by total degree -s.
inline BigradedMackey ext_target(const derived::ExtData& e) {
  BigradedMackey out;
  out.signs = e.groups.signs;
  for (auto& [s, g] : e.groups.rows) out.rows[-s] = g;
  return out;
}

/// Product of classes on page r >= 2 (coordinates of the entries at G/G):
/// b in E_r^{q} of (M', M''), a in E_r^{p} of (M, M'), landing in E_r^{p+q}
/// of (M, M''). Computed by composing a representing cocycle with the
/// chain-level lift of the other.
inline IntVector page_pairing(const ExtSpectralSequence& mm1, const ExtSpectralSequence& m1m2,
                              const ExtSpectralSequence& mm2, long r, std::size_t q, const Degree& sigma,
                              const IntVector& b, std::size_t p, const Degree& tau, const IntVector& a) {
  if (r < 2) throw ValidationError("page_pairing: classes on E_1 are not cocycles");
  if (mm1.ext.resolution.generator_log != mm2.ext.resolution.generator_log)
    throw ValidationError("page_pairing: outer spectral sequences use different resolutions");
  if (mm1.ext.m.m.signs != m1m2.ext.m.m.signs) throw ValidationError("page_pairing: modules are not composable");
  auto cocycle = [&](const ExtSpectralSequence& x, std::size_t s, const Degree& d, const IntVector& cls) {
    const long n = -static_cast<long>(s);
    const Entry* e = x.ss.page(r).entry(n, 0);
    if (e == nullptr || !e->parts.count(d)) throw ValidationError("page_pairing: no such entry");
    const SubFunctor& part = e->parts.at(d);
    const std::size_t top = part.levels.size() - 1;
    return x.ext.funcs[s].morphism(d, part.levels[top].lift_element(cls));
  };
  GradedMorphism phi = cocycle(mm1, p, tau, a);
  GradedMorphism psi = cocycle(m1m2, q, sigma, b);
  auto lifts = derived::lift_cocycle(mm1.ext.resolution, p, m1m2.ext.resolution, phi, q);
  const auto& src = mm1.ext.resolution.stage(p + q);
  GradedMorphism prod = graded::compose(src.m, m1m2.ext.resolution.stage(q).m, m1m2.ext.m.m, psi, lifts[q]);
  const Entry* out = mm2.ss.page(r).entry(-static_cast<long>(p + q), 0);
  if (out == nullptr || !out->parts.count(prod.shift)) return {};
  const SubFunctor& part = out->parts.at(prod.shift);
  const std::size_t top = part.levels.size() - 1;
  return part.coords(top, mm2.ext.funcs[p + q].coords(src, mm2.ext.m, prod));
}

/// d_r of a class at G/G in the Hyper-Ext spectral sequence.
inline IntVector page_differential(const ExtSpectralSequence& x, long r, std::size_t s, const Degree& d,
                                   const IntVector& cls) {
  const Page& pg = x.ss.page(r);
  const long n = -static_cast<long>(s);
  auto it = pg.d.find({n, 0});
  if (it == pg.d.end() || !it->second.comps.count(d)) return {};
  const auto& comp = it->second.comps.at(d).comps.back();
  return comp.apply(cls);
}

}  // namespace mackeyalg::specseq

#endif  // MACKEYALG_SPECSEQ_SPECSEQ_HPP
