#ifndef MACKEYALG_BURNSIDE_CONTEXT_HPP
#define MACKEYALG_BURNSIDE_CONTEXT_HPP

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "mackeyalg/error.hpp"
#include "mackeyalg/gdata/gset.hpp"
#include "mackeyalg/zmod/matrix.hpp"

namespace mackeyalg::burnside {

using gdata::CosetSpace;
using gdata::Elem;
using gdata::FiniteGroup;
using gdata::GSet;
using gdata::OrbitData;
using gdata::SubgroupLattice;
using zmod::Integer;
using zmod::IntVector;

/// G-map O_from -> O_to sending the base coset H_from to `point` of O_to,
/// where O_k is the coset space of the k-th class representative.
struct OrbitMap {
  int from = 0;
  int to = 0;
  int point = 0;
};

/// One orbit of a pullback O_k x_{O_j} O_l, identified with O_cls; the legs
/// are orbit maps to O_k and O_l.
struct PullbackTerm {
  int cls = 0;
  int left = 0;
  int right = 0;
};

/// Basis span X <- G/L -> X x Y (orbit apex), stored as the orbit of X x Y
/// containing the image, whose base point z is the image of eL, and the
/// subgroup L <= Stab(z), canonical up to Stab(z)-conjugacy.
struct BasicSpan {
  int orbit = 0;
  int sub = 0;
};

/// Everything attached to one finite group: subgroup lattice, canonical
/// orbits, the orbit category, and the span model of the Burnside category.
/// Lazily computed tables are guarded by an internal mutex; references
/// returned by accessors stay valid for the context's lifetime.
class GContext {
 public:
  explicit GContext(FiniteGroup g, int bound = SubgroupLattice::kDefaultBound) : lat_(std::move(g), bound) {
    const FiniteGroup& G = lat_.group();
    const int nc = static_cast<int>(lat_.num_classes());
    for (int k = 0; k < nc; ++k) orbits_.push_back(gdata::coset_space(G, lat_.cls(k).representative));
    maps_between_.assign(nc, std::vector<std::vector<int>>(nc));
    for (int k = 0; k < nc; ++k)
      for (int j = 0; j < nc; ++j)
        for (int y = 0; y < orbits_[j].set.size(); ++y) {
          // base coset H_k must fix y
          bool fixed = true;
          for (Elem h : lat_.cls(k).representative)
            if (orbits_[j].set.act(h, y) != y) {
              fixed = false;
              break;
            }
          if (!fixed) continue;
          map_index_[{k, j, y}] = static_cast<int>(maps_.size());
          maps_between_[k][j].push_back(static_cast<int>(maps_.size()));
          maps_.push_back({k, j, y});
        }
    compose_.assign(maps_.size(), std::vector<int>());
    for (std::size_t f = 0; f < maps_.size(); ++f) {
      const OrbitMap& mf = maps_[f];
      const Elem u = orbits_[mf.to].least[mf.point];
      for (int l = 0; l < nc; ++l)
        for (int g : maps_between_[mf.to][l]) {
          // base -> u H_j -> u . g(base)
          int p = orbits_[l].set.act(u, maps_[g].point);
          compose_[f].push_back(map_index_.at({mf.from, l, p}));
        }
    }
    compute_generators();
    point_object_ = intern(gdata::one_point(G));
    for (int k = 0; k < nc; ++k) orbit_objects_.push_back(intern(orbits_[k].set));
  }

  static std::shared_ptr<const GContext> make(FiniteGroup g, int bound = SubgroupLattice::kDefaultBound) {
    return std::make_shared<const GContext>(std::move(g), bound);
  }

  const FiniteGroup& group() const { return lat_.group(); }
  const SubgroupLattice& lattice() const { return lat_; }
  std::size_t num_classes() const { return lat_.num_classes(); }
  const CosetSpace& orbit(std::size_t k) const { return orbits_[k]; }
  int orbit_size(std::size_t k) const { return orbits_[k].set.size(); }

  // ---- orbit category -----------------------------------------------------

  std::size_t num_maps() const { return maps_.size(); }
  const OrbitMap& map(int i) const { return maps_[i]; }
  int find_map(int from, int to, int point) const {
    auto it = map_index_.find({from, to, point});
    return it == map_index_.end() ? -1 : it->second;
  }
  const std::vector<int>& maps(int from, int to) const { return maps_between_[from][to]; }
  int identity_map(int k) const { return map_index_.at({k, k, orbits_[k].base}); }
  bool is_identity(int f) const { return maps_[f].from == maps_[f].to && maps_[f].point == orbits_[maps_[f].to].base; }

  /// g after f.
  int compose(int f, int g) const {
    const OrbitMap& mf = maps_[f];
    const OrbitMap& mg = maps_[g];
    if (mf.to != mg.from) throw InternalError("compose: orbit maps not composable");
    const auto& lst = maps_between_[mf.to][mg.to];
    std::size_t off = 0;
    for (int l = 0; l < mg.to; ++l) off += maps_between_[mf.to][l].size();
    std::size_t pos = std::lower_bound(lst.begin(), lst.end(), g) - lst.begin();
    return compose_[f][off + pos];
  }

  /// Image of a point of O_from.
  int apply(int f, int point) const {
    const OrbitMap& m = maps_[f];
    return orbits_[m.to].set.act(orbits_[m.from].least[point], m.point);
  }

  /// Least element u with u H_to = image of the base coset.
  Elem map_element(int f) const { return orbits_[maps_[f].to].least[maps_[f].point]; }

  /// Non-identity orbit maps generating all others under composition.
  const std::vector<int>& generating_maps() const { return generators_; }

  bool is_iso(int f) const { return maps_[f].from == maps_[f].to; }

  int inverse(int f) const {
    if (!is_iso(f)) throw InternalError("inverse of a non-invertible orbit map");
    for (int g : maps_between_[maps_[f].to][maps_[f].from])
      if (is_identity(compose(f, g))) return g;
    throw InternalError("orbit automorphism without inverse");
  }

  /// Orbit decomposition of the pullback of f: O_k -> O_j and g: O_l -> O_j.
  const std::vector<PullbackTerm>& pullback(int f, int g) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = pullbacks_.find({f, g});
    if (it != pullbacks_.end()) return it->second;
    const FiniteGroup& G = group();
    const OrbitMap& mf = maps_[f];
    const OrbitMap& mg = maps_[g];
    if (mf.to != mg.to) throw InternalError("pullback: maps have different targets");
    const GSet& A = orbits_[mf.from].set;
    const GSet& B = orbits_[mg.from].set;
    std::vector<PullbackTerm> terms;
    std::vector<char> seen(static_cast<std::size_t>(A.size()) * B.size(), 0);
    for (int a = 0; a < A.size(); ++a)
      for (int b = 0; b < B.size(); ++b) {
        if (seen[a * B.size() + b] || apply(f, a) != apply(g, b)) continue;
        for (Elem x = 0; x < G.order(); ++x) seen[A.act(x, a) * B.size() + B.act(x, b)] = 1;
        int sa = lat_.id_of(A.stabilizer(a));
        int sb = lat_.id_of(B.stabilizer(b));
        int s = lat_.intersection(sa, sb);
        Elem c = lat_.conjugator(s);
        int m = lat_.class_of(s);
        terms.push_back({m, map_index_.at({m, mf.from, A.act(c, a)}), map_index_.at({m, mg.from, B.act(c, b)})});
      }
    return pullbacks_.emplace(std::make_pair(f, g), std::move(terms)).first->second;
  }

  // ---- objects --------------------------------------------------------------

  int intern(const GSet& x) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = object_ids_.find(x);
    if (it != object_ids_.end()) return it->second;
    const int id = static_cast<int>(objects_.size());
    objects_.push_back(x);
    object_orbits_.push_back(gdata::decompose(x, lat_));
    object_ids_.emplace(x, id);
    return id;
  }
  const GSet& object(int id) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return objects_[id];
  }
  const OrbitData& orbits_of(int id) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return object_orbits_[id];
  }
  int point_object() const { return point_object_; }
  int orbit_object(std::size_t k) const { return orbit_objects_[k]; }

  int product_object(int x, int y) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = products_.find({x, y});
    if (it != products_.end()) return it->second;
    int id = intern(gdata::product(group(), objects_[x], objects_[y]));
    products_[{x, y}] = id;
    return id;
  }

  // ---- span model of the Burnside category -----------------------------------

  const std::vector<BasicSpan>& hom_basis(int x, int y) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = bases_.find({x, y});
    if (it != bases_.end()) return it->second;
    const OrbitData& od = orbits_of(product_object(x, y));
    std::vector<BasicSpan> basis;
    for (std::size_t o = 0; o < od.orbits.size(); ++o)
      for (int sub : lat_.subgroups_up_to_conjugacy_in(lat_.rep_id(od.orbits[o].cls)))
        basis.push_back({static_cast<int>(o), sub});
    return bases_.emplace(std::make_pair(x, y), std::move(basis)).first->second;
  }

  std::size_t hom_rank(int x, int y) const { return hom_basis(x, y).size(); }

  /// Basis index of the span G/L -> X x Y, eL -> w, for L <= Stab(w).
  int span_index(int x, int y, int w, int sub) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    const int xy = product_object(x, y);
    const OrbitData& od = orbits_of(xy);
    const int o = od.orbit_of[w];
    const Elem t = od.transversal[w];  // w = t . base
    const int rep = lat_.rep_id(od.orbits[o].cls);
    int moved = lat_.conjugate(sub, group().inv(t));
    MACKEYALG_ASSERT(lat_.contained(moved, rep), "span apex not inside the stabilizer");
    int canon = lat_.canonical_in(moved, rep);
    auto& idx = span_lookup(x, y);
    return idx.at({o, canon});
  }

  /// Coordinates over hom_basis(x, z) of t_j after s_i, where s_i is the
  /// i-th basis span X -> Y and t_j the j-th basis span Y -> Z.
  const IntVector& compose_basis(int x, int y, int z, int i, int j) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(x, y, z, i, j);
    auto it = compositions_.find(key);
    if (it != compositions_.end()) return it->second;

    const FiniteGroup& G = group();
    const BasicSpan s = hom_basis(x, y)[i];
    const BasicSpan t = hom_basis(y, z)[j];
    const int ny = objects_[y].size(), nz = objects_[z].size();
    const int zs = orbits_of(product_object(x, y)).orbits[s.orbit].base;
    const int zt = orbits_of(product_object(y, z)).orbits[t.orbit].base;
    const int x1 = zs / ny, y1 = zs % ny;
    const int y2 = zt / nz, w2 = zt % nz;
    const GSet& X = objects_[x];
    const GSet& Y = objects_[y];
    const GSet& Z = objects_[z];
    const CosetSpace& A = cosets(s.sub);
    const CosetSpace& B = cosets(t.sub);
    const int na = A.set.size(), nb = B.set.size();

    IntVector out(hom_basis(x, z).size());
    std::vector<char> seen(static_cast<std::size_t>(na) * nb, 0);
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) {
        if (seen[a * nb + b]) continue;
        const Elem ga = A.least[a], gb = B.least[b];
        if (Y.act(ga, y1) != Y.act(gb, y2)) continue;
        for (Elem g = 0; g < G.order(); ++g) seen[A.set.act(g, a) * nb + B.set.act(g, b)] = 1;
        int stab = lat_.intersection(lat_.conjugate(s.sub, ga), lat_.conjugate(t.sub, gb));
        int w = X.act(ga, x1) * nz + Z.act(gb, w2);
        out[span_index(x, z, w, stab)] += 1;
      }
    return compositions_.emplace(key, std::move(out)).first->second;
  }

  /// The span X <- X -> Y of a G-map f (restriction along f), over hom_basis(x, y).
  IntVector restriction_span(int x, int y, const gdata::GMap& f) const {
    const OrbitData& od = orbits_of(x);
    const int ny = object(y).size();
    IntVector v(hom_rank(x, y));
    for (auto& o : od.orbits) v[span_index(x, y, o.base * ny + f[o.base], lat_.rep_id(o.cls))] += 1;
    return v;
  }

  /// The span Y <- X -> X of a G-map f: X -> Y (transfer along f), over hom_basis(y, x).
  IntVector transfer_span(int x, int y, const gdata::GMap& f) const {
    const OrbitData& od = orbits_of(x);
    const int nx = object(x).size();
    IntVector v(hom_rank(y, x));
    for (auto& o : od.orbits) v[span_index(y, x, f[o.base] * nx + o.base, lat_.rep_id(o.cls))] += 1;
    return v;
  }

  /// Point map of an orbit map, for use with the span helpers.
  gdata::GMap orbit_map_table(int f) const {
    gdata::GMap t(orbit_size(maps_[f].from));
    for (int p = 0; p < static_cast<int>(t.size()); ++p) t[p] = apply(f, p);
    return t;
  }

 private:
  void compute_generators() {
    std::vector<char> reached(maps_.size(), 0);
    std::vector<int> closure;
    for (std::size_t k = 0; k < num_classes(); ++k) {
      reached[identity_map(static_cast<int>(k))] = 1;
      closure.push_back(identity_map(static_cast<int>(k)));
    }
    // maps out of larger subgroups first, so that generators are short steps
    std::vector<int> order(maps_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      auto ka = std::make_pair(-lat_.class_order(maps_[a].from), lat_.class_order(maps_[a].to));
      auto kb = std::make_pair(-lat_.class_order(maps_[b].from), lat_.class_order(maps_[b].to));
      return ka < kb;
    });
    for (int f : order) {
      if (reached[f]) continue;
      generators_.push_back(f);
      reached[f] = 1;
      closure.push_back(f);
      for (std::size_t i = 0; i < closure.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
          for (auto [a, b] : {std::make_pair(closure[i], closure[j]), std::make_pair(closure[j], closure[i])}) {
            if (maps_[a].to != maps_[b].from) continue;
            int c = compose(a, b);
            if (!reached[c]) {
              reached[c] = 1;
              closure.push_back(c);
            }
          }
    }
    std::sort(generators_.begin(), generators_.end());
  }

  const CosetSpace& cosets(int sub) const {
    auto it = coset_cache_.find(sub);
    if (it != coset_cache_.end()) return it->second;
    return coset_cache_.emplace(sub, gdata::coset_space(group(), lat_.subgroup(sub))).first->second;
  }

  const std::map<std::pair<int, int>, int>& span_lookup(int x, int y) const {
    auto it = span_lookup_.find({x, y});
    if (it != span_lookup_.end()) return it->second;
    std::map<std::pair<int, int>, int> m;
    const auto& b = hom_basis(x, y);
    for (std::size_t i = 0; i < b.size(); ++i) m[{b[i].orbit, b[i].sub}] = static_cast<int>(i);
    return span_lookup_.emplace(std::make_pair(x, y), std::move(m)).first->second;
  }

  SubgroupLattice lat_;
  std::vector<CosetSpace> orbits_;
  std::vector<OrbitMap> maps_;
  std::map<std::tuple<int, int, int>, int> map_index_;
  std::vector<std::vector<std::vector<int>>> maps_between_;
  std::vector<std::vector<int>> compose_;
  std::vector<int> generators_;
  int point_object_ = 0;
  std::vector<int> orbit_objects_;

  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, int>, std::vector<PullbackTerm>> pullbacks_;
  mutable std::deque<GSet> objects_;
  mutable std::deque<OrbitData> object_orbits_;
  mutable std::map<GSet, int> object_ids_;
  mutable std::map<std::pair<int, int>, int> products_;
  mutable std::map<std::pair<int, int>, std::vector<BasicSpan>> bases_;
  mutable std::map<std::pair<int, int>, std::map<std::pair<int, int>, int>> span_lookup_;
  mutable std::map<std::tuple<int, int, int, int, int>, IntVector> compositions_;
  mutable std::map<int, CosetSpace> coset_cache_;
};

using Context = std::shared_ptr<const GContext>;

/// Morphism of the Burnside category: integer combination of basis spans.
struct BurnsideMorphism {
  int source = 0;
  int target = 0;
  IntVector coeffs;  // over hom_basis(source, target)

  static BurnsideMorphism zero(const GContext& c, int x, int y) { return {x, y, IntVector(c.hom_rank(x, y))}; }
  static BurnsideMorphism basis(const GContext& c, int x, int y, std::size_t i) {
    BurnsideMorphism m = zero(c, x, y);
    m.coeffs[i] = 1;
    return m;
  }
  static BurnsideMorphism identity(const GContext& c, int x) {
    gdata::GMap id(c.object(x).size());
    for (int p = 0; p < static_cast<int>(id.size()); ++p) id[p] = p;
    return {x, x, c.restriction_span(x, x, id)};
  }

  friend bool operator==(const BurnsideMorphism& a, const BurnsideMorphism& b) {
    return a.source == b.source && a.target == b.target && a.coeffs == b.coeffs;
  }
};

/// g after f.
inline BurnsideMorphism compose(const GContext& c, const BurnsideMorphism& g, const BurnsideMorphism& f) {
  if (f.target != g.source) throw ValidationError("Burnside compose: objects do not match");
  BurnsideMorphism out = BurnsideMorphism::zero(c, f.source, g.target);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
      if (g.coeffs[j] == 0) continue;
      const IntVector& v = c.compose_basis(f.source, f.target, g.target, static_cast<int>(i), static_cast<int>(j));
      Integer k = f.coeffs[i] * g.coeffs[j];
      for (std::size_t r = 0; r < v.size(); ++r)
        if (v[r] != 0) out.coeffs[r] += k * v[r];
    }
  }
  return out;
}

inline BurnsideMorphism operator+(BurnsideMorphism a, const BurnsideMorphism& b) {
  if (a.source != b.source || a.target != b.target) throw ValidationError("Burnside sum: objects do not match");
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

}  // namespace mackeyalg::burnside

#endif  // MACKEYALG_BURNSIDE_CONTEXT_HPP
