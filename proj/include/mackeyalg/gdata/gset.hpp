#ifndef MACKEYALG_GDATA_GSET_HPP
#define MACKEYALG_GDATA_GSET_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mackeyalg/error.hpp"
#include "mackeyalg/gdata/finite_group.hpp"
#include "mackeyalg/gdata/subgroups.hpp"

namespace mackeyalg::gdata {

/// Finite left G-set: act(g, x) = g.x on points 0..size()-1.
class GSet {
 public:
  GSet() = default;

  GSet(const FiniteGroup& g, int points, std::vector<std::vector<int>> action) : n_(points), act_(std::move(action)) {
    if (static_cast<int>(act_.size()) != g.order()) throw ValidationError("G-set action must list every group element");
    for (auto& p : act_) {
      if (static_cast<int>(p.size()) != n_) throw ValidationError("G-set permutation has wrong length");
      std::vector<char> hit(n_, 0);
      for (int y : p) {
        if (y < 0 || y >= n_ || hit[y]) throw ValidationError("G-set action entry is not a permutation");
        hit[y] = 1;
      }
    }
    for (int x = 0; x < n_; ++x)
      if (act_[g.identity()][x] != x) throw ValidationError("identity does not act trivially");
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b)
        for (int x = 0; x < n_; ++x)
          if (act_[g.mul(a, b)][x] != act_[a][act_[b][x]])
            throw ValidationError("G-set action is not a homomorphism at (" + g.name(a) + ", " + g.name(b) + ")");
  }

  /// Skips validation; for actions built by the library itself.
  static GSet trusted(int points, std::vector<std::vector<int>> action) {
    GSet s;
    s.n_ = points;
    s.act_ = std::move(action);
    return s;
  }

  /// Closes an action given on some elements (typically generators) to all of G.
  static GSet from_partial(const FiniteGroup& g, int points, const std::map<Elem, std::vector<int>>& given) {
    std::vector<std::vector<int>> act(g.order());
    std::vector<int> id(points);
    for (int x = 0; x < points; ++x) id[x] = x;
    act[g.identity()] = id;
    std::vector<Elem> known{g.identity()};
    for (auto& [e, p] : given) {
      if (e < 0 || e >= g.order()) throw ValidationError("G-set action names an unknown element");
      if (static_cast<int>(p.size()) != points) throw ValidationError("G-set permutation has wrong length");
    }
    for (std::size_t i = 0; i < known.size(); ++i)
      for (auto& [s, ps] : given) {
        Elem prod = g.mul(known[i], s);
        std::vector<int> c(points);
        for (int x = 0; x < points; ++x) c[x] = act[known[i]][ps[x]];
        if (act[prod].empty()) {
          act[prod] = std::move(c);
          known.push_back(prod);
        } else if (act[prod] != c) {
          throw ValidationError("G-set action is inconsistent at element " + g.name(prod));
        }
      }
    for (auto& [s, ps] : given)
      if (act[s] != ps) throw ValidationError("G-set action is inconsistent at element " + g.name(s));
    for (Elem e = 0; e < g.order(); ++e)
      if (act[e].empty()) throw ValidationError("given permutations do not generate the group action");
    return GSet(g, points, std::move(act));
  }

  int size() const { return n_; }
  int act(Elem g, int x) const { return act_[g][x]; }
  const std::vector<std::vector<int>>& action() const { return act_; }

  Subgroup stabilizer(int x) const {
    Subgroup s;
    for (Elem g = 0; g < static_cast<Elem>(act_.size()); ++g)
      if (act_[g][x] == x) s.push_back(g);
    return s;
  }

  friend bool operator==(const GSet& a, const GSet& b) { return a.n_ == b.n_ && a.act_ == b.act_; }
  friend bool operator!=(const GSet& a, const GSet& b) { return !(a == b); }
  friend bool operator<(const GSet& a, const GSet& b) {
    return std::tie(a.n_, a.act_) < std::tie(b.n_, b.act_);
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> act_;
};

/// Left cosets of a subgroup, ordered by least element. coset_of[g] is the
/// coset containing g; the coset containing the identity is the base point.
struct CosetSpace {
  GSet set;
  std::vector<int> coset_of;
  std::vector<Elem> least;  // least element of each coset
  int base = 0;
};

inline CosetSpace coset_space(const FiniteGroup& g, const Subgroup& h) {
  CosetSpace cs;
  cs.coset_of.assign(g.order(), -1);
  for (Elem x = 0; x < g.order(); ++x) {
    if (cs.coset_of[x] >= 0) continue;
    const int c = static_cast<int>(cs.least.size());
    cs.least.push_back(x);
    for (Elem y : h) cs.coset_of[g.mul(x, y)] = c;
  }
  const int n = static_cast<int>(cs.least.size());
  std::vector<std::vector<int>> act(g.order(), std::vector<int>(n));
  for (Elem a = 0; a < g.order(); ++a)
    for (int c = 0; c < n; ++c) act[a][c] = cs.coset_of[g.mul(a, cs.least[c])];
  cs.set = GSet::trusted(n, std::move(act));
  cs.base = cs.coset_of[g.identity()];
  return cs;
}

/// One orbit: its conjugacy class and a base point whose stabilizer is
/// exactly the class representative.
struct Orbit {
  int cls = 0;
  int base = 0;
  std::vector<int> points;
};

struct OrbitData {
  std::vector<Orbit> orbits;  // ordered by least point
  std::vector<int> orbit_of;
  std::vector<Elem> transversal;  // x = transversal[x] . base(orbit_of[x]), least such element
};

inline OrbitData decompose(const GSet& x, const SubgroupLattice& lat) {
  const FiniteGroup& g = lat.group();
  OrbitData od;
  od.orbit_of.assign(x.size(), -1);
  od.transversal.assign(x.size(), g.identity());
  for (int p = 0; p < x.size(); ++p) {
    if (od.orbit_of[p] >= 0) continue;
    Orbit o;
    const int oi = static_cast<int>(od.orbits.size());
    for (Elem a = 0; a < g.order(); ++a) {
      int q = x.act(a, p);
      if (od.orbit_of[q] < 0) {
        od.orbit_of[q] = oi;
        o.points.push_back(q);
      }
    }
    std::sort(o.points.begin(), o.points.end());
    o.cls = lat.class_of(lat.id_of(x.stabilizer(p)));
    const Subgroup& rep = lat.cls(o.cls).representative;
    o.base = -1;
    for (int q : o.points)
      if (x.stabilizer(q) == rep) {
        o.base = q;
        break;
      }
    MACKEYALG_ASSERT(o.base >= 0, "orbit without representative stabilizer");
    std::vector<char> done(x.size(), 0);
    for (Elem a = 0; a < g.order(); ++a) {
      int q = x.act(a, o.base);
      if (!done[q]) {
        done[q] = 1;
        od.transversal[q] = a;
      }
    }
    od.orbits.push_back(std::move(o));
  }
  return od;
}

/// (class, multiplicity) pairs sorted by class.
inline std::vector<std::pair<int, int>> orbit_decompose(const GSet& x, const SubgroupLattice& lat) {
  std::map<int, int> m;
  for (auto& o : decompose(x, lat).orbits) ++m[o.cls];
  return {m.begin(), m.end()};
}

inline int fixed_points(const GSet& x, const Subgroup& h) {
  int n = 0;
  for (int p = 0; p < x.size(); ++p) {
    bool fixed = true;
    for (Elem a : h)
      if (x.act(a, p) != p) {
        fixed = false;
        break;
      }
    if (fixed) ++n;
  }
  return n;
}

/// Points (x, y) are numbered x * |Y| + y.
inline GSet product(const FiniteGroup& g, const GSet& x, const GSet& y) {
  const int n = x.size() * y.size();
  std::vector<std::vector<int>> act(g.order(), std::vector<int>(n));
  for (Elem a = 0; a < g.order(); ++a)
    for (int p = 0; p < x.size(); ++p)
      for (int q = 0; q < y.size(); ++q) act[a][p * y.size() + q] = x.act(a, p) * y.size() + y.act(a, q);
  return GSet::trusted(n, std::move(act));
}

inline GSet one_point(const FiniteGroup& g) { return GSet::trusted(1, std::vector<std::vector<int>>(g.order(), {0})); }

inline GSet disjoint_union(const FiniteGroup& g, const std::vector<GSet>& parts) {
  int n = 0;
  for (auto& p : parts) n += p.size();
  std::vector<std::vector<int>> act(g.order(), std::vector<int>(n));
  int off = 0;
  for (auto& p : parts) {
    for (Elem a = 0; a < g.order(); ++a)
      for (int x = 0; x < p.size(); ++x) act[a][off + x] = off + p.act(a, x);
    off += p.size();
  }
  return GSet::trusted(n, std::move(act));
}

/// G-set map as its table of point images.
using GMap = std::vector<int>;

/// First (element, point) at which f fails to be equivariant, if any.
inline std::optional<std::pair<Elem, int>> equivariance_failure(const FiniteGroup& g, const GSet& x, const GSet& y,
                                                                const GMap& f) {
  if (static_cast<int>(f.size()) != x.size()) return std::make_pair(g.identity(), -1);
  for (int p : f)
    if (p < 0 || p >= y.size()) return std::make_pair(g.identity(), -1);
  for (Elem a = 0; a < g.order(); ++a)
    for (int p = 0; p < x.size(); ++p)
      if (f[x.act(a, p)] != y.act(a, f[p])) return std::make_pair(a, p);
  return std::nullopt;
}

inline void require_equivariant(const FiniteGroup& g, const GSet& x, const GSet& y, const GMap& f) {
  if (auto bad = equivariance_failure(g, x, y, f)) {
    if (bad->second < 0) throw ValidationError("map has wrong shape for its G-sets");
    throw ValidationError("map is not equivariant: element " + g.name(bad->first) + " at point " +
                          std::to_string(bad->second));
  }
}

struct Pullback {
  GSet set;
  std::vector<std::pair<int, int>> points;  // (x, y) with f(x) = g(y), lexicographic
  GMap to_x, to_y;
};

inline Pullback pullback(const FiniteGroup& g, const GSet& x, const GMap& f, const GSet& y, const GMap& h,
                         const GSet& z) {
  require_equivariant(g, x, z, f);
  require_equivariant(g, y, z, h);
  Pullback pb;
  std::map<std::pair<int, int>, int> idx;
  for (int p = 0; p < x.size(); ++p)
    for (int q = 0; q < y.size(); ++q)
      if (f[p] == h[q]) {
        idx[{p, q}] = static_cast<int>(pb.points.size());
        pb.points.emplace_back(p, q);
        pb.to_x.push_back(p);
        pb.to_y.push_back(q);
      }
  const int n = static_cast<int>(pb.points.size());
  std::vector<std::vector<int>> act(g.order(), std::vector<int>(n));
  for (Elem a = 0; a < g.order(); ++a)
    for (int i = 0; i < n; ++i) act[a][i] = idx.at({x.act(a, pb.points[i].first), y.act(a, pb.points[i].second)});
  pb.set = GSet::trusted(n, std::move(act));
  return pb;
}

}  // namespace mackeyalg::gdata

#endif  // MACKEYALG_GDATA_GSET_HPP
