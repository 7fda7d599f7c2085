#ifndef MACKEYALG_GDATA_FINITE_GROUP_HPP
#define MACKEYALG_GDATA_FINITE_GROUP_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mackeyalg/error.hpp"

namespace mackeyalg::gdata {

using Elem = int;

/// Finite group given by its multiplication table. Elements are 0..order-1;
/// mul(a, b) is the product ab.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  FiniteGroup(std::vector<std::vector<Elem>> table, std::vector<std::string> names = {})
      : table_(std::move(table)), names_(std::move(names)) {
    const int n = static_cast<int>(table_.size());
    if (n == 0) throw ValidationError("group table is empty");
    for (auto& row : table_) {
      if (static_cast<int>(row.size()) != n) throw ValidationError("group table is not square");
      for (Elem x : row)
        if (x < 0 || x >= n) throw ValidationError("group table entry out of range");
    }
    identity_ = -1;
    for (Elem e = 0; e < n && identity_ < 0; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw ValidationError("group table has no identity element");
    inverse_.assign(n, -1);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (table_[a][b] == identity_) {
          if (table_[b][a] != identity_) throw ValidationError("group table: one-sided inverse");
          inverse_[a] = b;
          break;
        }
    for (Elem a = 0; a < n; ++a)
      if (inverse_[a] < 0) throw ValidationError("group table: element " + std::to_string(a) + " has no inverse");
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw ValidationError("group table is not associative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
    if (names_.empty())
      for (Elem a = 0; a < n; ++a) names_.push_back(std::to_string(a));
    if (static_cast<int>(names_.size()) != n) throw ValidationError("group names do not match order");
  }

  int order() const { return static_cast<int>(table_.size()); }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[a][b]; }
  Elem mul(Elem a, Elem b, Elem c) const { return table_[table_[a][b]][c]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// g h g^{-1}
  Elem conj(Elem g, Elem h) const { return table_[table_[g][h]][inverse_[g]]; }
  const std::vector<std::vector<Elem>>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Elem a) const { return names_[a]; }

  int element_order(Elem a) const {
    int k = 1;
    for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (Elem a = 0; a < order(); ++a)
      for (Elem b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Subgroup generated by `gens`, as a sorted element list.
  std::vector<Elem> generated(const std::vector<Elem>& gens) const {
    std::vector<char> in(order(), 0);
    std::vector<Elem> out{identity_};
    in[identity_] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (Elem g : gens) {
        Elem x = mul(out[i], g);
        if (!in[x]) {
          in[x] = 1;
          out.push_back(x);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<Elem>> table_;
  std::vector<std::string> names_;
  std::vector<Elem> inverse_;
  Elem identity_ = 0;
};

using Permutation = std::vector<int>;

inline std::string cycle_notation(const Permutation& p) {
  std::string s;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      if (s.back() != '(') s += " ";
      s += std::to_string(j + 1);
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

/// Group generated by permutations of {0..n-1}; elements are sorted
/// lexicographically as permutations, so the identity is element 0.
inline FiniteGroup permutation_group(const std::vector<Permutation>& gens, int degree) {
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<Permutation, int> seen{{id, 0}};
  std::vector<Permutation> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto& g : gens) {
      if (static_cast<int>(g.size()) != degree) throw ValidationError("permutation has wrong degree");
      Permutation c(degree);
      for (int x = 0; x < degree; ++x) c[x] = elems[i][g[x]];
      if (seen.emplace(c, 0).second) elems.push_back(c);
    }
  std::sort(elems.begin(), elems.end());
  std::map<Permutation, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(cycle_notation(elems[a]));
    for (int b = 0; b < n; ++b) {
      // (ab)(x) = a(b(x))
      Permutation c(degree);
      for (int x = 0; x < degree; ++x) c[x] = elems[a][elems[b][x]];
      table[a][b] = index.at(c);
    }
  }
  return FiniteGroup(std::move(table), std::move(names));
}

inline FiniteGroup trivial_group() { return FiniteGroup({{0}}, {"e"}); }

inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw ValidationError("cyclic group order must be positive");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(a == 0 ? "e" : a == 1 ? "g" : "g^" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(t), std::move(names));
}

inline FiniteGroup symmetric_group(int n) {
  if (n < 1) throw ValidationError("symmetric group degree must be positive");
  if (n == 1) return trivial_group();
  Permutation swap(n), cyc(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return permutation_group({swap, cyc}, n);
}

/// Dihedral group of order 2n acting on the vertices of an n-gon.
inline FiniteGroup dihedral_group(int n) {
  if (n < 3) throw ValidationError("dihedral group needs n >= 3");
  Permutation rot(n), ref(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return permutation_group({rot, ref}, n);
}

}  // namespace mackeyalg::gdata

#endif  // MACKEYALG_GDATA_FINITE_GROUP_HPP
