#ifndef MACKEYALG_GDATA_SUBGROUPS_HPP
#define MACKEYALG_GDATA_SUBGROUPS_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "mackeyalg/error.hpp"
#include "mackeyalg/gdata/finite_group.hpp"

namespace mackeyalg::gdata {

using Subgroup = std::vector<Elem>;  // sorted element list

struct SubgroupClass {
  Subgroup representative;
  Subgroup normalizer;
  int weyl_group_order = 1;
  std::vector<int> members;  // subgroup ids of all conjugates
};

/// All subgroups of a finite group and their conjugacy classes.
///
/// Classes are ordered by subgroup order, then by representative; the
/// representative of a class is its lexicographically least member. Class 0
/// is the trivial subgroup and the last class is G itself.
class SubgroupLattice {
 public:
  static constexpr int kDefaultBound = 48;

  SubgroupLattice() = default;

  explicit SubgroupLattice(FiniteGroup g, int bound = kDefaultBound) : g_(std::move(g)) {
    if (g_.order() > bound)
      throw BoundExceeded("subgroup enumeration: group order " + std::to_string(g_.order()) +
                          " exceeds the configured bound " + std::to_string(bound));
    enumerate();
    classify();
    local_classes_.resize(subs_.size());
    for (int s = 0; s < num_subgroups(); ++s) {
      for (int t = 0; t < num_subgroups(); ++t)
        if (contained(t, s) && canonical_in(t, s) == t) local_classes_[s].push_back(t);
      // ids are already ordered by (order, elements)
    }
  }

  const FiniteGroup& group() const { return g_; }
  int order() const { return g_.order(); }

  int num_subgroups() const { return static_cast<int>(subs_.size()); }
  const Subgroup& subgroup(int id) const { return subs_[id]; }
  int find(const Subgroup& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }
  int id_of(const Subgroup& s) const {
    int i = find(s);
    if (i < 0) throw ValidationError("element set is not a subgroup");
    return i;
  }
  bool is_member(int id, Elem x) const { return std::binary_search(subs_[id].begin(), subs_[id].end(), x); }
  /// Is subgroup a contained in subgroup b?
  bool contained(int a, int b) const {
    return std::includes(subs_[b].begin(), subs_[b].end(), subs_[a].begin(), subs_[a].end());
  }
  int intersection(int a, int b) const {
    Subgroup s;
    std::set_intersection(subs_[a].begin(), subs_[a].end(), subs_[b].begin(), subs_[b].end(), std::back_inserter(s));
    return index_.at(s);
  }
  /// Id of g S g^{-1}.
  int conjugate(int id, Elem g) const { return conj_[id][g]; }

  std::size_t num_classes() const { return classes_.size(); }
  const SubgroupClass& cls(std::size_t k) const { return classes_[k]; }
  const std::vector<SubgroupClass>& classes() const { return classes_; }
  int class_of(int id) const { return class_of_[id]; }
  int rep_id(std::size_t k) const { return rep_id_[k]; }
  int class_order(std::size_t k) const { return static_cast<int>(classes_[k].representative.size()); }
  /// Least c with c S c^{-1} equal to the representative of S's class.
  Elem conjugator(int id) const { return conjugator_[id]; }
  std::size_t top_class() const { return classes_.size() - 1; }

  /// H_i is conjugate to a subgroup of H_j.
  bool subconjugate(std::size_t i, std::size_t j) const {
    for (int m : classes_[i].members)
      if (contained(m, rep_id_[j])) return true;
    return false;
  }

  /// Subgroups of S, one per S-conjugacy class, each the lexicographically
  /// least in its S-class; sorted by (order, elements).
  const std::vector<int>& subgroups_up_to_conjugacy_in(int s) const { return local_classes_[s]; }

  /// Least element of S-conjugates of t (t <= S), i.e. the canonical local representative.
  int canonical_in(int t, int s) const {
    int best = t;
    for (Elem x : subs_[s]) {
      int c = conj_[t][x];
      if (subs_[c] < subs_[best]) best = c;
    }
    return best;
  }

  std::string class_label(std::size_t k) const {
    if (k == 0) return "e";
    if (k + 1 == classes_.size()) return "G";
    return "H" + std::to_string(k) + "(order " + std::to_string(class_order(k)) + ")";
  }

 private:
  bool less(int a, int b) const {
    if (subs_[a].size() != subs_[b].size()) return subs_[a].size() < subs_[b].size();
    return subs_[a] < subs_[b];
  }

  void add(Subgroup s) {
    if (index_.count(s)) return;
    index_[s] = static_cast<int>(subs_.size());
    subs_.push_back(std::move(s));
  }

  void enumerate() {
    add(Subgroup{g_.identity()});
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      std::vector<char> in(g_.order(), 0);
      for (Elem x : subs_[i]) in[x] = 1;
      for (Elem x = 0; x < g_.order(); ++x) {
        if (in[x]) continue;
        std::vector<Elem> gens = subs_[i];
        gens.push_back(x);
        add(g_.generated(gens));
      }
    }
    // stable numbering independent of discovery order
    std::vector<int> perm(subs_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return less(a, b); });
    std::vector<Subgroup> sorted;
    for (int p : perm) sorted.push_back(subs_[p]);
    subs_ = std::move(sorted);
    index_.clear();
    for (std::size_t i = 0; i < subs_.size(); ++i) index_[subs_[i]] = static_cast<int>(i);

    conj_.assign(subs_.size(), std::vector<int>(g_.order()));
    for (std::size_t i = 0; i < subs_.size(); ++i)
      for (Elem x = 0; x < g_.order(); ++x) {
        Subgroup c;
        for (Elem h : subs_[i]) c.push_back(g_.conj(x, h));
        std::sort(c.begin(), c.end());
        conj_[i][x] = index_.at(c);
      }
  }

  void classify() {
    const int ns = num_subgroups();
    class_of_.assign(ns, -1);
    conjugator_.assign(ns, g_.identity());
    // subgroups are already sorted by (order, elements): the first unclassified one is a representative
    for (int i = 0; i < ns; ++i) {
      if (class_of_[i] >= 0) continue;
      SubgroupClass c;
      c.representative = subs_[i];
      const int k = static_cast<int>(classes_.size());
      for (Elem x = 0; x < g_.order(); ++x) {
        int j = conj_[i][x];
        if (j == i) c.normalizer.push_back(x);
        if (class_of_[j] < 0) {
          class_of_[j] = k;
          c.members.push_back(j);
          // x S_i x^{-1} = S_j, so x^{-1} S_j x = S_i
          conjugator_[j] = g_.inv(x);
        }
      }
      std::sort(c.members.begin(), c.members.end());
      c.weyl_group_order = static_cast<int>(c.normalizer.size() / c.representative.size());
      rep_id_.push_back(i);
      classes_.push_back(std::move(c));
    }
    // least conjugator
    for (int j = 0; j < ns; ++j) {
      int r = rep_id_[class_of_[j]];
      for (Elem x = 0; x < g_.order(); ++x)
        if (conj_[j][x] == r) {
          conjugator_[j] = x;
          break;
        }
    }
  }

  FiniteGroup g_;
  std::vector<Subgroup> subs_;
  std::map<Subgroup, int> index_;
  std::vector<std::vector<int>> conj_;
  std::vector<int> class_of_;
  std::vector<Elem> conjugator_;
  std::vector<int> rep_id_;
  std::vector<SubgroupClass> classes_;
  std::vector<std::vector<int>> local_classes_;
};

}  // namespace mackeyalg::gdata

#endif  // MACKEYALG_GDATA_SUBGROUPS_HPP
