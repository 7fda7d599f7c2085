#ifndef MACKEYALG_ZMOD_LATTICE_HPP
#define MACKEYALG_ZMOD_LATTICE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mackeyalg/error.hpp"
#include "mackeyalg/zmod/matrix.hpp"
#include "mackeyalg/zmod/smith.hpp"

namespace mackeyalg::zmod {

/// Sparse integer vector; entries sorted by index, no stored zeros.
struct SparseVec {
  std::vector<std::pair<std::size_t, Integer>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t lead() const { return entries.front().first; }
  const Integer& lead_value() const { return entries.front().second; }

  Integer get(std::size_t i) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), i,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != entries.end() && it->first == i) return it->second;
    return 0;
  }

  static SparseVec from_dense(const IntVector& v, std::size_t offset = 0) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) s.entries.emplace_back(i + offset, v[i]);
    return s;
  }
  IntVector to_dense(std::size_t n, std::size_t offset = 0) const {
    IntVector d(n);
    for (auto& [i, x] : entries)
      if (i >= offset && i < offset + n) d[i - offset] = x;
    return d;
  }

  void negate() {
    for (auto& e : entries) e.second = -e.second;
  }
  void scale(const Integer& c) {
    if (c == 0) {
      entries.clear();
      return;
    }
    for (auto& e : entries) e.second *= c;
  }
};

/// a*v + b*w
inline SparseVec lincomb(const Integer& a, const SparseVec& v, const Integer& b, const SparseVec& w) {
  SparseVec out;
  out.entries.reserve(v.entries.size() + w.entries.size());
  auto i = v.entries.begin(), j = w.entries.begin();
  while (i != v.entries.end() || j != w.entries.end()) {
    if (j == w.entries.end() || (i != v.entries.end() && i->first < j->first)) {
      if (a != 0) out.entries.emplace_back(i->first, a * i->second);
      ++i;
    } else if (i == v.entries.end() || j->first < i->first) {
      if (b != 0) out.entries.emplace_back(j->first, b * j->second);
      ++j;
    } else {
      Integer x = a * i->second + b * j->second;
      if (x != 0) out.entries.emplace_back(i->first, std::move(x));
      ++i;
      ++j;
    }
  }
  return out;
}

// v += c * w
inline void axpy(SparseVec& v, const Integer& c, const SparseVec& w) {
  if (c == 0 || w.empty()) return;
  v = lincomb(1, v, c, w);
}

/// Sublattice of Z^n kept as an echelon basis: one row per pivot column,
/// positive pivot entries.
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  void add(const IntVector& v) { add(SparseVec::from_dense(v)); }

  void add(SparseVec v) {
    while (!v.empty()) {
      const std::size_t p = v.lead();
      if (p >= dim_) throw InternalError("Lattice::add: index out of range");
      auto it = rows_.find(p);
      if (it == rows_.end()) {
        if (v.lead_value() < 0) v.negate();
        rows_.emplace(p, std::move(v));
        return;
      }
      SparseVec& r = it->second;
      const Integer a = v.lead_value();
      const Integer& b = r.lead_value();
      if (a % b == 0) {
        v = lincomb(1, v, -(a / b), r);
        continue;
      }
      ExtGcd e = ext_gcd(b, a);
      SparseVec merged = lincomb(e.s, r, e.t, v);
      SparseVec other = lincomb(a / e.g, r, -(b / e.g), v);
      r = std::move(merged);
      v = std::move(other);
    }
  }

  /// Subtract basis rows while the leading index is below `limit` and the
  /// leading entry is divisible by the pivot. Returns the remainder. If
  /// `coeffs` is given, records the multiple of each basis row (keyed by
  /// pivot) that was subtracted.
  SparseVec reduce(SparseVec v, std::size_t limit = static_cast<std::size_t>(-1),
                   std::map<std::size_t, Integer>* coeffs = nullptr) const {
    while (!v.empty() && v.lead() < limit) {
      auto it = rows_.find(v.lead());
      if (it == rows_.end()) break;
      const Integer& b = it->second.lead_value();
      if (v.lead_value() % b != 0) break;
      Integer q = v.lead_value() / b;
      v = lincomb(1, v, -q, it->second);
      if (coeffs) (*coeffs)[it->first] += q;
    }
    return v;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  bool contains(const IntVector& v) const { return contains(SparseVec::from_dense(v)); }

  /// Coordinates of v with respect to basis() ; nullopt when v is not in the lattice.
  std::optional<IntVector> coordinates(const SparseVec& v) const {
    std::map<std::size_t, Integer> c;
    if (!reduce(v, static_cast<std::size_t>(-1), &c).empty()) return std::nullopt;
    IntVector out(rows_.size());
    std::size_t k = 0;
    for (auto& [p, row] : rows_) {
      auto it = c.find(p);
      if (it != c.end()) out[k] = it->second;
      ++k;
    }
    return out;
  }

  /// Reduce every entry above a pivot into [0, pivot).
  void hermite() {
    for (auto it = rows_.begin(); it != rows_.end(); ++it) {
      for (auto jt = std::next(it); jt != rows_.end(); ++jt) {
        Integer x = it->second.get(jt->first);
        if (x == 0) continue;
        Integer q = floor_div(x, jt->second.lead_value());
        if (q != 0) it->second = lincomb(1, it->second, -q, jt->second);
      }
    }
  }

  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> b;
    b.reserve(rows_.size());
    for (auto& [p, r] : rows_) b.push_back(r);
    return b;
  }
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (auto& [k, r] : rows_) p.push_back(k);
    return p;
  }
  const std::map<std::size_t, SparseVec>& rows() const { return rows_; }

 private:
  std::size_t dim_;
  std::map<std::size_t, SparseVec> rows_;
};

/// L1 / L2 for lattices L2 <= L1 <= Z^n, brought to the form
/// Z/d_1 + ... + Z/d_k + Z^f with 1 < d_1 | d_2 | ... .
///
/// `coords` maps an element of L1 (ambient coordinates) to coordinates in
/// that form; `lift(i)` is an element of L1 representing the i-th generator.
class Subquotient {
 public:
  Subquotient() = default;

  /// Both generator lists live in Z^n. The relation lattice is added to the
  /// sublattice, so callers need not include it twice.
  Subquotient(std::size_t n, const std::vector<SparseVec>& sub_gens, const std::vector<SparseVec>& rel_gens) : n_(n) {
    Lattice l1(n);
    for (auto& g : sub_gens) l1.add(g);
    for (auto& g : rel_gens) l1.add(g);
    l1_ = std::move(l1);
    basis_ = l1_.basis();
    const std::size_t r = basis_.size();

    Lattice rel(r);
    for (auto& g : rel_gens) {
      auto c = l1_.coordinates(g);
      MACKEYALG_ASSERT(c.has_value(), "relation outside sublattice");
      rel.add(*c);
    }
    rel.hermite();

    std::vector<bool> unit(r, false);
    for (auto& [p, row] : rel.rows())
      if (row.lead_value() == 1) {
        unit[p] = true;
        unit_rows_.emplace_back(p, row);
      }
    std::vector<std::size_t> col_pos(r, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < r; ++c)
      if (!unit[c]) {
        col_pos[c] = residual_cols_.size();
        residual_cols_.push_back(c);
      }
    col_pos_ = col_pos;

    std::vector<IntVector> res_rows;
    for (auto& [p, row] : rel.rows()) {
      if (row.lead_value() == 1) continue;
      IntVector d(residual_cols_.size());
      for (auto& [i, x] : row.entries) {
        MACKEYALG_ASSERT(!unit[i], "hermite reduction left unit column");
        d[col_pos[i]] = x;
      }
      res_rows.push_back(std::move(d));
    }
    const std::size_t m = residual_cols_.size();
    IntMatrix Y = IntMatrix::from_rows(res_rows, m);
    SmithForm sf = smith_normal_form(Y, false, true);
    IntVector diag = sf.diagonal();
    for (std::size_t i = 0; i < m; ++i) {
      Integer d = i < diag.size() ? diag[i] : Integer(0);
      if (d == 1) continue;
      kept_.push_back(i);
      orders_.push_back(d);
    }
    V_ = std::move(sf.V);
    for (std::size_t idx = 0; idx < kept_.size(); ++idx) {
      // row kept_[idx] of V^{-1}, in residual coordinates, expanded to L1
      SparseVec amb;
      for (std::size_t c = 0; c < m; ++c) {
        const Integer& x = sf.V_inv(kept_[idx], c);
        if (x != 0) axpy(amb, x, basis_[residual_cols_[c]]);
      }
      lifts_.push_back(amb.to_dense(n_));
    }
  }

  std::size_t ambient_dim() const { return n_; }
  const IntVector& orders() const { return orders_; }
  const std::vector<IntVector>& lifts() const { return lifts_; }
  const Lattice& sublattice() const { return l1_; }

  bool in_sublattice(const IntVector& x) const { return l1_.contains(x); }

  IntVector coords(const IntVector& x) const { return coords(SparseVec::from_dense(x)); }

  IntVector coords(const SparseVec& x) const {
    auto c = l1_.coordinates(x);
    if (!c) throw ValidationError("element is not in the sublattice");
    IntVector pi(residual_cols_.size());
    for (std::size_t k = 0; k < residual_cols_.size(); ++k) pi[k] = (*c)[residual_cols_[k]];
    for (auto& [p, row] : unit_rows_) {
      const Integer& xp = (*c)[p];
      if (xp == 0) continue;
      for (auto& [i, y] : row.entries)
        if (i != p) pi[col_pos_[i]] -= xp * y;
    }
    IntVector z(kept_.size());
    for (std::size_t idx = 0; idx < kept_.size(); ++idx) {
      Integer acc = 0;
      for (std::size_t k = 0; k < pi.size(); ++k)
        if (pi[k] != 0) acc += V_(k, kept_[idx]) * pi[k];
      z[idx] = mod_floor(acc, orders_[idx]);
    }
    return z;
  }

 private:
  std::size_t n_ = 0;
  Lattice l1_;
  std::vector<SparseVec> basis_;
  std::vector<std::pair<std::size_t, SparseVec>> unit_rows_;
  std::vector<std::size_t> residual_cols_;
  std::vector<std::size_t> col_pos_;
  std::vector<std::size_t> kept_;
  IntVector orders_;
  IntMatrix V_;
  std::vector<IntVector> lifts_;
};

}  // namespace mackeyalg::zmod

#endif  // MACKEYALG_ZMOD_LATTICE_HPP
