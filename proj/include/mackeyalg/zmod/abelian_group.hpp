#ifndef MACKEYALG_ZMOD_ABELIAN_GROUP_HPP
#define MACKEYALG_ZMOD_ABELIAN_GROUP_HPP

#include <optional>
#include <string>
#include <vector>

#include "mackeyalg/error.hpp"
#include "mackeyalg/zmod/lattice.hpp"
#include "mackeyalg/zmod/matrix.hpp"

namespace mackeyalg::zmod {

/// Finitely generated abelian group Z/o_0 + Z/o_1 + ... given by the orders
/// of its coordinate generators; an order of 0 means infinite cyclic. Orders
/// are 0 or at least 2. Elements are coordinate vectors; `normalize` reduces
/// them into [0, o_i).
///
/// The group is in canonical form when the finite orders come first and each
/// divides the next.
struct AbGroup {
  IntVector orders;

  AbGroup() = default;
  explicit AbGroup(IntVector o) : orders(std::move(o)) {
    for (auto& x : orders)
      if (x < 0 || x == 1) throw ValidationError("AbGroup: generator orders must be 0 or >= 2");
  }

  static AbGroup free(std::size_t n) { return AbGroup(IntVector(n, 0)); }
  static AbGroup cyclic(const Integer& d) {
    if (d == 1) return AbGroup();
    return AbGroup(IntVector{abs(d)});
  }

  std::size_t ngens() const { return orders.size(); }
  bool is_trivial() const { return orders.empty(); }

  std::size_t free_rank() const {
    std::size_t r = 0;
    for (auto& o : orders)
      if (o == 0) ++r;
    return r;
  }

  /// Group order, 0 when infinite.
  Integer order() const {
    Integer n = 1;
    for (auto& o : orders) {
      if (o == 0) return 0;
      n *= o;
    }
    return n;
  }

  bool is_canonical() const {
    bool seen_free = false;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] == 0) {
        seen_free = true;
        continue;
      }
      if (seen_free) return false;
      if (i > 0 && orders[i] % orders[i - 1] != 0) return false;
    }
    return true;
  }

  IntVector zero() const { return IntVector(orders.size()); }

  IntVector normalize(IntVector v) const {
    if (v.size() != orders.size()) throw ValidationError("AbGroup: element has wrong length");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], orders[i]);
    return v;
  }

  bool is_zero(const IntVector& v) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mod_floor(v[i], orders[i]) != 0) return false;
    return true;
  }

  bool equal(const IntVector& a, const IntVector& b) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mod_floor(a[i] - b[i], orders[i]) != 0) return false;
    return true;
  }

  IntVector basis_vector(std::size_t i) const {
    IntVector v(orders.size());
    v[i] = 1;
    return v;
  }

  /// The relation vectors o_i e_i (finite generators only), as sparse rows.
  std::vector<SparseVec> relation_rows(std::size_t offset = 0) const {
    std::vector<SparseVec> r;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] != 0) r.push_back(SparseVec{{{i + offset, orders[i]}}});
    return r;
  }

  std::string describe() const {
    if (orders.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (i) s += " + ";
      s += orders[i] == 0 ? std::string("Z") : "Z/" + orders[i].str();
    }
    return s;
  }

  friend bool operator==(const AbGroup& a, const AbGroup& b) { return a.orders == b.orders; }
  friend bool operator!=(const AbGroup& a, const AbGroup& b) { return !(a == b); }
};

inline AbGroup direct_sum(const AbGroup& a, const AbGroup& b) {
  IntVector o = a.orders;
  o.insert(o.end(), b.orders.begin(), b.orders.end());
  return AbGroup(std::move(o));
}

inline AbGroup direct_sum(const std::vector<AbGroup>& gs) {
  IntVector o;
  for (auto& g : gs) o.insert(o.end(), g.orders.begin(), g.orders.end());
  return AbGroup(std::move(o));
}

/// Homomorphism between coordinate groups, as a matrix acting on columns.
struct GroupHom {
  AbGroup src;
  AbGroup tgt;
  IntMatrix mat;  // tgt.ngens() x src.ngens()

  GroupHom() = default;
  GroupHom(AbGroup s, AbGroup t, IntMatrix m) : src(std::move(s)), tgt(std::move(t)), mat(std::move(m)) {
    if (mat.rows() != tgt.ngens() || mat.cols() != src.ngens())
      throw ValidationError("GroupHom: matrix shape does not match groups");
    reduce_entries();
  }

  static GroupHom zero(const AbGroup& s, const AbGroup& t) { return GroupHom(s, t, IntMatrix(t.ngens(), s.ngens())); }
  static GroupHom identity(const AbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.ngens())); }

  void reduce_entries() {
    for (std::size_t i = 0; i < mat.rows(); ++i)
      if (tgt.orders[i] != 0)
        for (std::size_t j = 0; j < mat.cols(); ++j) mat(i, j) = mod_floor(mat(i, j), tgt.orders[i]);
  }

  /// Every relation of the source maps to zero.
  bool is_well_defined() const {
    for (std::size_t j = 0; j < src.ngens(); ++j) {
      if (src.orders[j] == 0) continue;
      for (std::size_t i = 0; i < tgt.ngens(); ++i)
        if (mod_floor(src.orders[j] * mat(i, j), tgt.orders[i]) != 0) return false;
    }
    return true;
  }

  IntVector apply(const IntVector& x) const { return tgt.normalize(mat.apply(x)); }

  bool is_zero() const { return mat.is_zero(); }

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.src == b.src && a.tgt == b.tgt && a.mat == b.mat;
  }
  friend bool operator!=(const GroupHom& a, const GroupHom& b) { return !(a == b); }
};

/// g after f.
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.tgt != g.src) throw ValidationError("compose: groups do not match");
  return GroupHom(f.src, g.tgt, g.mat * f.mat);
}

inline GroupHom operator+(const GroupHom& a, const GroupHom& b) {
  if (a.src != b.src || a.tgt != b.tgt) throw ValidationError("GroupHom sum: groups do not match");
  return GroupHom(a.src, a.tgt, a.mat + b.mat);
}

inline GroupHom operator-(const GroupHom& a, const GroupHom& b) {
  if (a.src != b.src || a.tgt != b.tgt) throw ValidationError("GroupHom difference: groups do not match");
  return GroupHom(a.src, a.tgt, a.mat - b.mat);
}

inline GroupHom operator*(const Integer& c, const GroupHom& a) { return GroupHom(a.src, a.tgt, c * a.mat); }

inline GroupHom direct_sum(const GroupHom& f, const GroupHom& g) {
  IntMatrix m(f.tgt.ngens() + g.tgt.ngens(), f.src.ngens() + g.src.ngens());
  m.set_block(0, 0, f.mat);
  m.set_block(f.tgt.ngens(), f.src.ngens(), g.mat);
  return GroupHom(direct_sum(f.src, g.src), direct_sum(f.tgt, g.tgt), std::move(m));
}

/// A subquotient of a coordinate group A: (S + R_A) / (T + R_A) where R_A is
/// the relation lattice of A and T <= S + R_A.
class SubquotientGroup {
 public:
  SubquotientGroup() = default;
  SubquotientGroup(const AbGroup& ambient, const std::vector<SparseVec>& sub, std::vector<SparseVec> rel)
      : ambient_(ambient) {
    auto r = ambient.relation_rows();
    rel.insert(rel.end(), r.begin(), r.end());
    sq_ = Subquotient(ambient.ngens(), sub, rel);
    group_ = AbGroup(sq_.orders());
  }

  const AbGroup& group() const { return group_; }
  const AbGroup& ambient() const { return ambient_; }

  /// Coordinates of the class of x, which must lie in S + R_A.
  IntVector coords(const IntVector& x) const { return sq_.coords(x); }
  bool contains(const IntVector& x) const { return sq_.in_sublattice(x); }
  /// Representative in A of the i-th generator.
  IntVector lift(std::size_t i) const { return ambient_.normalize(sq_.lifts()[i]); }
  IntVector lift_element(const IntVector& c) const {
    IntVector x(ambient_.ngens());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) {
        const IntVector& l = sq_.lifts()[i];
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += c[i] * l[k];
      }
    return ambient_.normalize(x);
  }

  /// Map from the subquotient into A (only meaningful when T = 0).
  GroupHom inclusion() const {
    IntMatrix m(ambient_.ngens(), group_.ngens());
    for (std::size_t i = 0; i < group_.ngens(); ++i) {
      IntVector l = lift(i);
      for (std::size_t k = 0; k < l.size(); ++k) m(k, i) = l[k];
    }
    return GroupHom(group_, ambient_, std::move(m));
  }

  /// Map from A onto the subquotient (only meaningful when S = A).
  GroupHom projection() const {
    IntMatrix m(group_.ngens(), ambient_.ngens());
    for (std::size_t j = 0; j < ambient_.ngens(); ++j) {
      IntVector c = coords(ambient_.basis_vector(j));
      for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
    }
    return GroupHom(ambient_, group_, std::move(m));
  }

 private:
  AbGroup ambient_;
  AbGroup group_;
  Subquotient sq_;
};

/// Lattice of pairs (F x + D_B y, x); rows with pivot past the target block
/// describe the preimage of the relation lattice of B.
inline Lattice augmented_lattice(const GroupHom& f) {
  const std::size_t n = f.tgt.ngens(), m = f.src.ngens();
  Lattice lat(n + m);
  for (std::size_t i = 0; i < n; ++i)
    if (f.tgt.orders[i] != 0) lat.add(SparseVec{{{i, f.tgt.orders[i]}}});
  for (std::size_t j = 0; j < m; ++j) {
    SparseVec row;
    for (std::size_t i = 0; i < n; ++i)
      if (f.mat(i, j) != 0) row.entries.emplace_back(i, f.mat(i, j));
    row.entries.emplace_back(n + j, 1);
    lat.add(std::move(row));
  }
  return lat;
}

/// Generators (in source coordinates) of {x : f(x) = 0}, as a lattice in Z^m.
inline std::vector<SparseVec> kernel_lattice(const GroupHom& f) {
  const std::size_t n = f.tgt.ngens();
  Lattice lat = augmented_lattice(f);
  std::vector<SparseVec> out;
  for (auto& [p, row] : lat.rows()) {
    if (p < n) continue;
    SparseVec v;
    for (auto& [i, x] : row.entries) v.entries.emplace_back(i - n, x);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<SparseVec> image_generators(const GroupHom& f) {
  std::vector<SparseVec> out;
  for (std::size_t j = 0; j < f.src.ngens(); ++j) out.push_back(SparseVec::from_dense(f.mat.column(j)));
  return out;
}

inline SubquotientGroup kernel(const GroupHom& f) {
  if (!f.is_well_defined()) throw ValidationError("kernel: homomorphism is not well defined");
  return SubquotientGroup(f.src, kernel_lattice(f), {});
}

/// Kernel of the map src -> tgt whose j-th column is cols[j]; avoids a dense
/// matrix for large sparse systems.
inline SubquotientGroup kernel_of_columns(const AbGroup& src, const AbGroup& tgt, const std::vector<SparseVec>& cols) {
  const std::size_t n = tgt.ngens();
  Lattice lat(n + src.ngens());
  for (std::size_t i = 0; i < n; ++i)
    if (tgt.orders[i] != 0) lat.add(SparseVec{{{i, tgt.orders[i]}}});
  for (std::size_t j = 0; j < cols.size(); ++j) {
    SparseVec row = cols[j];
    row.entries.emplace_back(n + j, 1);
    lat.add(std::move(row));
  }
  std::vector<SparseVec> ker;
  for (auto& [p, row] : lat.rows()) {
    if (p < n) continue;
    SparseVec v;
    for (auto& [i, x] : row.entries) v.entries.emplace_back(i - n, x);
    ker.push_back(std::move(v));
  }
  return SubquotientGroup(src, ker, {});
}

inline SubquotientGroup cokernel(const GroupHom& f) {
  if (!f.is_well_defined()) throw ValidationError("cokernel: homomorphism is not well defined");
  std::vector<SparseVec> all;
  for (std::size_t i = 0; i < f.tgt.ngens(); ++i) all.push_back(SparseVec{{{i, 1}}});
  return SubquotientGroup(f.tgt, all, image_generators(f));
}

inline SubquotientGroup image(const GroupHom& f) {
  if (!f.is_well_defined()) throw ValidationError("image: homomorphism is not well defined");
  return SubquotientGroup(f.tgt, image_generators(f), {});
}

/// ker(g) / im(f) for A --f--> B --g--> C with g f = 0.
inline SubquotientGroup homology(const GroupHom& f, const GroupHom& g) {
  if (f.tgt != g.src) throw ValidationError("homology: maps are not composable");
  if (!compose(g, f).is_zero()) throw ValidationError("homology: composite is not zero");
  return SubquotientGroup(g.src, kernel_lattice(g), image_generators(f));
}

/// Some x with f(x) = y, if one exists.
inline std::optional<IntVector> solve(const GroupHom& f, const IntVector& y) {
  const std::size_t n = f.tgt.ngens(), m = f.src.ngens();
  Lattice lat = augmented_lattice(f);
  SparseVec v = SparseVec::from_dense(y);
  SparseVec rem = lat.reduce(std::move(v), n);
  if (!rem.empty() && rem.lead() < n) return std::nullopt;
  IntVector x = rem.to_dense(m, n);
  for (auto& c : x) c = -c;
  return f.src.normalize(std::move(x));
}

/// Isomorphism data between a group and its canonical form.
struct Canonical {
  AbGroup group;
  GroupHom to;    // A -> canonical
  GroupHom from;  // canonical -> A
};

inline Canonical canonicalize(const AbGroup& a) {
  std::vector<SparseVec> all;
  for (std::size_t i = 0; i < a.ngens(); ++i) all.push_back(SparseVec{{{i, 1}}});
  SubquotientGroup sq(a, all, {});
  return {sq.group(), sq.projection(), sq.inclusion()};
}

/// Canonical-form orders of Z^n / (row span of rel).
inline AbGroup presented_group(std::size_t n, const std::vector<IntVector>& relations) {
  std::vector<SparseVec> all, rel;
  for (std::size_t i = 0; i < n; ++i) all.push_back(SparseVec{{{i, 1}}});
  for (auto& r : relations) rel.push_back(SparseVec::from_dense(r));
  return SubquotientGroup(AbGroup::free(n), all, rel).group();
}

// ---------------------------------------------------------------------------
// Tensor product and Hom of coordinate groups.

/// A (x) B with generators e_i (x) e_j of order gcd(a_i, b_j); pairs with
/// trivial gcd are dropped.
struct TensorGroup {
  AbGroup group;
  std::size_t na = 0, nb = 0;
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  std::vector<long> index;  // na*nb, -1 when dropped

  long index_of(std::size_t i, std::size_t j) const { return index[i * nb + j]; }

  /// Coordinates of x (x) y.
  IntVector pure(const IntVector& x, const IntVector& y) const {
    IntVector out(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) out[k] = x[gens[k].first] * y[gens[k].second];
    return group.normalize(std::move(out));
  }
};

inline TensorGroup tensor(const AbGroup& a, const AbGroup& b) {
  TensorGroup t;
  t.na = a.ngens();
  t.nb = b.ngens();
  t.index.assign(t.na * t.nb, -1);
  IntVector o;
  for (std::size_t i = 0; i < t.na; ++i)
    for (std::size_t j = 0; j < t.nb; ++j) {
      Integer g = gcd(a.orders[i], b.orders[j]);
      if (g == 1) continue;
      t.index[i * t.nb + j] = static_cast<long>(t.gens.size());
      t.gens.emplace_back(i, j);
      o.push_back(g);
    }
  t.group = AbGroup(std::move(o));
  return t;
}

/// f (x) g between tensor groups.
inline GroupHom tensor(const GroupHom& f, const GroupHom& g, const TensorGroup& src, const TensorGroup& tgt) {
  IntMatrix m(tgt.gens.size(), src.gens.size());
  for (std::size_t c = 0; c < src.gens.size(); ++c) {
    auto [i, j] = src.gens[c];
    for (std::size_t r = 0; r < tgt.gens.size(); ++r) {
      auto [k, l] = tgt.gens[r];
      if (f.mat(k, i) != 0 && g.mat(l, j) != 0) m(r, c) = f.mat(k, i) * g.mat(l, j);
    }
  }
  return GroupHom(src.group, tgt.group, std::move(m));
}

/// Hom(A, B). Generator (p, q, s) is the homomorphism e_p -> s e_q.
struct HomGroup {
  AbGroup src, tgt;
  AbGroup group;
  struct Gen {
    std::size_t p, q;
    Integer scale;
  };
  std::vector<Gen> gens;

  /// Matrix of the homomorphism with coordinates c.
  IntMatrix to_matrix(const IntVector& c) const {
    IntMatrix m(tgt.ngens(), src.ngens());
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (c[k] != 0) m(gens[k].q, gens[k].p) += c[k] * gens[k].scale;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), tgt.orders[i]);
    return m;
  }

  GroupHom to_hom(const IntVector& c) const { return GroupHom(src, tgt, to_matrix(c)); }

  /// Coordinates of a well-defined homomorphism given by its matrix.
  IntVector from_matrix(const IntMatrix& m) const {
    IntVector c(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Integer x = mod_floor(m(gens[k].q, gens[k].p), tgt.orders[gens[k].q]);
      if (x % gens[k].scale != 0) throw ValidationError("HomGroup: matrix is not a homomorphism");
      c[k] = mod_floor(x / gens[k].scale, group.orders[k]);
    }
    return c;
  }
};

inline HomGroup hom_group(const AbGroup& a, const AbGroup& b) {
  HomGroup h;
  h.src = a;
  h.tgt = b;
  IntVector o;
  for (std::size_t p = 0; p < a.ngens(); ++p)
    for (std::size_t q = 0; q < b.ngens(); ++q) {
      const Integer& ap = a.orders[p];
      const Integer& bq = b.orders[q];
      if (ap == 0) {
        h.gens.push_back({p, q, 1});
        o.push_back(bq);
      } else if (bq == 0) {
        continue;
      } else {
        Integer g = gcd(ap, bq);
        if (g == 1) continue;
        h.gens.push_back({p, q, bq / g});
        o.push_back(g);
      }
    }
  h.group = AbGroup(std::move(o));
  return h;
}

/// Hom(A, B) computed as the kernel of M -> (a_p M(q, p))_{q,p} on matrices
/// with entries in B; used to cross-check hom_group.
inline AbGroup hom_group_by_kernel(const AbGroup& a, const AbGroup& b) {
  const std::size_t na = a.ngens(), nb = b.ngens();
  IntVector o;
  for (std::size_t q = 0; q < nb; ++q)
    for (std::size_t p = 0; p < na; ++p) o.push_back(b.orders[q]);
  AbGroup entries(o);
  IntMatrix m(nb * na, nb * na);
  for (std::size_t q = 0; q < nb; ++q)
    for (std::size_t p = 0; p < na; ++p) m(q * na + p, q * na + p) = a.orders[p];
  return canonicalize(kernel(GroupHom(entries, entries, m)).group()).group;
}

}  // namespace mackeyalg::zmod

#endif  // MACKEYALG_ZMOD_ABELIAN_GROUP_HPP
