#ifndef MACKEYALG_MONOIDAL_SIGNS_HPP
#define MACKEYALG_MONOIDAL_SIGNS_HPP

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "mackeyalg/burnside/ring.hpp"

namespace mackeyalg::monoidal {

using burnside::BurnsideElement;
using burnside::Context;
using burnside::GContext;
using zmod::IntVector;

/// Units of A(G) are stored by their mark signs: bit k set iff the mark at
/// subgroup class k is -1. Multiplication is xor.
using Unit = unsigned long;

/// Coordinates over the irreducible labels.
using Degree = std::vector<long>;

inline Degree operator+(const Degree& a, const Degree& b) {
  Degree c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Degree operator-(const Degree& a, const Degree& b) {
  Degree c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Degree operator-(const Degree& a) { return Degree(a.size()) - a; }

inline bool is_zero(const Degree& a) {
  return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
}

/// Free abelian group on irreducible labels with the fixed point dimensions
/// dim rho^H for each label and subgroup class (ascending class order).
struct GradingGroup {
  std::vector<std::string> labels;
  std::vector<std::vector<long>> fixed_dim;

  std::size_t rank() const { return labels.size(); }

  Degree generator(std::size_t i) const {
    Degree d(rank());
    d[i] = 1;
    return d;
  }

  Degree zero() const { return Degree(rank()); }

  /// dim of alpha^H for class k.
  long dimension(const Degree& a, std::size_t k) const {
    long s = 0;
    for (std::size_t i = 0; i < rank(); ++i) s += a[i] * fixed_dim[i][k];
    return s;
  }

  /// Total (underlying) dimension: the fixed dimension for the trivial subgroup.
  long augmentation(const Degree& a) const { return dimension(a, 0); }

  std::size_t label_index(const std::string& l) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == l) return i;
    throw ValidationError("unknown irreducible label '" + l + "'");
  }

  bool operator==(const GradingGroup&) const = default;
};

/// Integer grading: one trivial one dimensional label.
inline GradingGroup integer_grading(std::size_t num_classes) {
  return {{"1"}, {std::vector<long>(num_classes, 1)}};
}

/// Trivial and sign representations of C2.
inline GradingGroup c2_grading() { return {{"trivial", "sign"}, {{1, 1}, {1, 0}}}; }

/// The unit with marks (-1)^{dim rho^H}, or a ValidationError if no unit of
/// A(G) has those marks.
inline Unit sign_of_label(const GContext& c, const GradingGroup& g, std::size_t i) {
  Unit bits = 0;
  for (std::size_t k = 0; k < c.num_classes(); ++k)
    if (g.fixed_dim[i][k] % 2 != 0) bits |= 1ul << k;
  if (!burnside::unit_from_signs(c, bits))
    throw ValidationError("fixed point dimensions of '" + g.labels[i] + "' give marks of no Burnside unit");
  return bits;
}

inline BurnsideElement unit_element(const GContext& c, Unit u) {
  auto a = burnside::unit_from_signs(c, u);
  MACKEYALG_ASSERT(a.has_value(), "unit bits do not describe a unit");
  return *a;
}

/// Restriction of a unit to B(O_k) = B(O_k, pt), over hom_basis(O_k, pt).
inline IntVector restricted_unit(const GContext& c, std::size_t k, Unit u) {
  const int pt = c.point_object(), ok = c.orbit_object(k);
  burnside::BurnsideMorphism r{ok, pt, c.restriction_span(ok, pt, gdata::GMap(c.orbit_size(k), 0))};
  burnside::BurnsideMorphism e{pt, pt, unit_element(c, u)};
  return burnside::compose(c, e, r).coeffs;
}

/// sigma on pairs of irreducibles, extended bilinearly.
class SignTable {
 public:
  SignTable() = default;

  /// sigma(rho, rho) from the marks, sigma(rho, rho') = 1 otherwise.
  SignTable(Context ctx, GradingGroup g) : ctx_(std::move(ctx)), grading_(std::move(g)) {
    validate_shape();
    const std::size_t r = grading_.rank();
    base_.assign(r, std::vector<Unit>(r, 0));
    for (std::size_t i = 0; i < r; ++i) base_[i][i] = sign_of_label(*ctx_, grading_, i);
  }

  /// Explicit values on pairs of labels. The diagonal must match the marks
  /// and the off diagonal part must be antisymmetric.
  SignTable(Context ctx, GradingGroup g, std::vector<std::vector<Unit>> base)
      : ctx_(std::move(ctx)), grading_(std::move(g)), base_(std::move(base)) {
    validate_shape();
    const std::size_t r = grading_.rank();
    if (base_.size() != r) throw ValidationError("sign table: wrong number of rows");
    for (std::size_t i = 0; i < r; ++i) {
      if (base_[i].size() != r) throw ValidationError("sign table: wrong number of columns");
      for (std::size_t j = 0; j < r; ++j)
        if (!burnside::unit_from_signs(*ctx_, base_[i][j]))
          throw ValidationError("sign table: entry (" + grading_.labels[i] + ", " + grading_.labels[j] +
                                ") is not a unit");
      if (base_[i][i] != sign_of_label(*ctx_, grading_, i))
        throw ValidationError("sign table: sigma(" + grading_.labels[i] + ", " + grading_.labels[i] +
                              ") does not have marks (-1)^dim");
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (base_[i][j] != base_[j][i])
          throw ValidationError("sign table: not antisymmetric at (" + grading_.labels[i] + ", " +
                                grading_.labels[j] + ")");
  }

  const Context& context() const { return ctx_; }
  const GradingGroup& grading() const { return grading_; }
  const std::vector<std::vector<Unit>>& base() const { return base_; }

  Unit sigma_bits(const Degree& a, const Degree& b) const {
    Unit u = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if ((a[i] * b[j]) % 2 != 0) u ^= base_[i][j];
    return u;
  }

  BurnsideElement sigma(const Degree& a, const Degree& b) const { return unit_element(*ctx_, sigma_bits(a, b)); }

 private:
  void validate_shape() const {
    if (grading_.fixed_dim.size() != grading_.rank())
      throw ValidationError("grading group: fixed_dim needs one row per label");
    for (std::size_t i = 0; i < grading_.rank(); ++i) {
      if (grading_.fixed_dim[i].size() != ctx_->num_classes())
        throw ValidationError("grading group: fixed_dim row for '" + grading_.labels[i] +
                              "' needs one entry per subgroup class");
      for (long d : grading_.fixed_dim[i])
        if (d < 0) throw ValidationError("grading group: negative fixed point dimension");
    }
  }

  Context ctx_;
  GradingGroup grading_;
  std::vector<std::vector<Unit>> base_;
};

/// All degrees with coordinates in [lo, hi], indexed in mixed radix.
class DegreeWindow {
 public:
  DegreeWindow(std::size_t rank, long lo, long hi) : rank_(rank), lo_(lo), hi_(hi) {
    if (hi < lo || lo > 0 || hi < 0) throw ValidationError("degree window must contain 0");
    std::size_t n = 1;
    for (std::size_t i = 0; i < rank; ++i) n *= width();
    size_ = n;
    sum_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Degree s = degree(i) + degree(j);
        if (contains(s)) sum_[i * n + j] = static_cast<long>(index(s));
      }
  }

  /// Coordinates in [-w, w].
  static DegreeWindow symmetric(std::size_t rank, long w) { return {rank, -w, w}; }
  /// Coordinates in [0, w].
  static DegreeWindow nonnegative(std::size_t rank, long w) { return {rank, 0, w}; }

  std::size_t rank() const { return rank_; }
  long lo() const { return lo_; }
  long hi() const { return hi_; }
  std::size_t size() const { return size_; }

  bool contains(const Degree& d) const {
    return d.size() == rank_ && std::all_of(d.begin(), d.end(), [&](long v) { return v >= lo_ && v <= hi_; });
  }

  std::size_t index(const Degree& d) const {
    std::size_t i = 0;
    for (std::size_t r = rank_; r-- > 0;) i = i * width() + static_cast<std::size_t>(d[r] - lo_);
    return i;
  }

  Degree degree(std::size_t i) const {
    Degree d(rank_);
    for (std::size_t r = 0; r < rank_; ++r) {
      d[r] = static_cast<long>(i % width()) + lo_;
      i /= width();
    }
    return d;
  }

  std::size_t zero_index() const { return index(Degree(rank_)); }

  /// Index of the sum, if it lies in the window.
  std::optional<std::size_t> add(std::size_t i, std::size_t j) const {
    long s = sum_[i * size_ + j];
    if (s < 0) return std::nullopt;
    return static_cast<std::size_t>(s);
  }

  bool operator==(const DegreeWindow& o) const { return rank_ == o.rank_ && lo_ == o.lo_ && hi_ == o.hi_; }

 private:
  std::size_t width() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }

  std::size_t rank_;
  long lo_, hi_;
  std::size_t size_ = 1;
  std::vector<long> sum_;
};

/// A function of degree pairs (a, b) with a, b, a+b in the window.
class Cochain2 {
 public:
  explicit Cochain2(DegreeWindow w) : w_(w), v_(w.size() * w.size(), 0) {}

  const DegreeWindow& window() const { return w_; }

  /// (a, b) is in the domain when a + b is in the window.
  bool in_domain(std::size_t a, std::size_t b) const { return w_.add(a, b).has_value(); }

  Unit at(std::size_t a, std::size_t b) const { return v_[a * w_.size() + b]; }
  Unit& at(std::size_t a, std::size_t b) { return v_[a * w_.size() + b]; }
  Unit at(const Degree& a, const Degree& b) const { return at(w_.index(a), w_.index(b)); }
  Unit& at(const Degree& a, const Degree& b) { return at(w_.index(a), w_.index(b)); }

  bool normalized() const {
    const std::size_t z = w_.zero_index();
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (at(z, i) != 0 || at(i, z) != 0) return false;
    return true;
  }

  bool operator==(const Cochain2& o) const { return w_ == o.w_ && v_ == o.v_; }

 private:
  DegreeWindow w_;
  std::vector<Unit> v_;
};

/// A function of degree triples (a, b, c) with every partial sum of
/// consecutive arguments in the window.
class Cocycle3 {
 public:
  explicit Cocycle3(DegreeWindow w) : w_(w), v_(w.size() * w.size() * w.size(), 0) {}

  const DegreeWindow& window() const { return w_; }

  bool in_domain(std::size_t a, std::size_t b, std::size_t c) const {
    auto ab = w_.add(a, b);
    auto bc = w_.add(b, c);
    return ab && bc && w_.add(*ab, c);
  }

  Unit at(std::size_t a, std::size_t b, std::size_t c) const { return v_[(a * w_.size() + b) * w_.size() + c]; }
  Unit& at(std::size_t a, std::size_t b, std::size_t c) { return v_[(a * w_.size() + b) * w_.size() + c]; }
  Unit at(const Degree& a, const Degree& b, const Degree& c) const {
    return at(w_.index(a), w_.index(b), w_.index(c));
  }

  bool normalized() const {
    const std::size_t z = w_.zero_index(), n = w_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (at(z, i, j) != 0 || at(i, z, j) != 0 || at(i, j, z) != 0) return false;
    return true;
  }

  bool is_trivial() const {
    return std::all_of(v_.begin(), v_.end(), [](Unit u) { return u == 0; });
  }

  /// Restriction to a subwindow.
  Cocycle3 restrict_to(const DegreeWindow& sub) const {
    Cocycle3 out(sub);
    const std::size_t n = sub.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (out.in_domain(a, b, c))
            out.at(a, b, c) = at(w_.index(sub.degree(a)), w_.index(sub.degree(b)), w_.index(sub.degree(c)));
    return out;
  }

  bool operator==(const Cocycle3& o) const { return w_ == o.w_ && v_ == o.v_; }

 private:
  DegreeWindow w_;
  std::vector<Unit> v_;
};

/// (d delta)(a,b,c) = delta(a,b) delta(a,b+c)^-1 delta(a+b,c) delta(b,c)^-1.
inline Cocycle3 coboundary(const Cochain2& d) {
  const DegreeWindow& w = d.window();
  if (!d.normalized()) throw ValidationError("coboundary: cochain is not normalized");
  Cocycle3 out(w);
  const std::size_t n = w.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto ab = w.add(a, b);
      if (!ab) continue;
      for (std::size_t c = 0; c < n; ++c) {
        auto bc = w.add(b, c);
        if (!bc || !w.add(*ab, c)) continue;
        out.at(a, b, c) = d.at(a, b) ^ d.at(a, *bc) ^ d.at(*ab, c) ^ d.at(b, c);
      }
    }
  return out;
}

/// a(x,y,z+t) a(x+y,z,t) = a(y,z,t) a(x,y+z,t) a(x,y,z) wherever all five
/// terms are defined.
inline bool is_cocycle(const Cocycle3& a) {
  const DegreeWindow& w = a.window();
  const std::size_t n = w.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto xy = w.add(x, y);
      if (!xy) continue;
      for (std::size_t z = 0; z < n; ++z) {
        auto yz = w.add(y, z);
        if (!yz) continue;
        auto xyz = w.add(*xy, z);
        if (!xyz) continue;
        for (std::size_t t = 0; t < n; ++t) {
          auto zt = w.add(z, t);
          if (!zt || !w.add(*yz, t) || !w.add(*xyz, t)) continue;
          Unit lhs = a.at(x, y, *zt) ^ a.at(*xy, z, t);
          Unit rhs = a.at(y, z, t) ^ a.at(x, *yz, t) ^ a.at(x, y, z);
          if (lhs != rhs) return false;
        }
      }
    }
  return true;
}

namespace detail {

/// Row reduction over F2 with rows inserted one at a time.
class F2Echelon {
 public:
  explicit F2Echelon(std::size_t ncols) : ncols_(ncols) {}

  /// Inserts [row | rhs]; returns false if it reduces to 0 = 1.
  bool insert(boost::dynamic_bitset<> row, bool rhs) {
    for (;;) {
      auto p = row.find_first();
      if (p == boost::dynamic_bitset<>::npos) return !rhs;
      auto it = pivots_.find(p);
      if (it == pivots_.end()) {
        pivots_.emplace(p, Row{std::move(row), rhs});
        return true;
      }
      row ^= it->second.bits;
      rhs ^= it->second.rhs;
    }
  }

  std::size_t rank() const { return pivots_.size(); }

  /// A solution with free variables set to zero.
  boost::dynamic_bitset<> solve() const {
    boost::dynamic_bitset<> x(ncols_);
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      bool v = it->second.rhs;
      auto bits = it->second.bits;
      bits.reset(it->first);
      v ^= (bits & x).count() % 2 != 0;
      x[it->first] = v;
    }
    return x;
  }

 private:
  struct Row {
    boost::dynamic_bitset<> bits;
    bool rhs;
  };
  std::size_t ncols_;
  std::map<std::size_t, Row> pivots_;
};

/// Unknown numbering for normalized cochains: pairs (a, b), both nonzero,
/// with a + b in the window.
struct PairIndex {
  std::vector<long> id;  // -1 when not an unknown
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  explicit PairIndex(const DegreeWindow& w) : id(w.size() * w.size(), -1) {
    const std::size_t z = w.zero_index(), n = w.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != z && b != z && w.add(a, b)) {
          id[a * n + b] = static_cast<long>(pairs.size());
          pairs.emplace_back(a, b);
        }
  }
};

inline std::vector<boost::dynamic_bitset<>> coboundary_rows(const DegreeWindow& w, const PairIndex& idx,
                                                            std::vector<std::array<std::size_t, 3>>& triples) {
  const std::size_t n = w.size(), nu = idx.pairs.size();
  std::vector<boost::dynamic_bitset<>> rows;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto xy = w.add(x, y);
      if (!xy) continue;
      for (std::size_t z = 0; z < n; ++z) {
        auto yz = w.add(y, z);
        if (!yz || !w.add(*xy, z)) continue;
        boost::dynamic_bitset<> row(nu);
        for (auto [p, q] : {std::pair{x, y}, std::pair{x, *yz}, std::pair{*xy, z}, std::pair{y, z}}) {
          long k = idx.id[p * n + q];
          if (k >= 0) row.flip(static_cast<std::size_t>(k));
        }
        rows.push_back(std::move(row));
        triples.push_back({x, y, z});
      }
    }
  return rows;
}

}  // namespace detail

/// Ranks of the coboundary system d delta = a, one per class bit.
struct CoboundaryRanks {
  std::vector<std::size_t> rank, augmented_rank;
  bool solvable() const { return rank == augmented_rank; }
};

struct TrivializeResult {
  CoboundaryRanks ranks;
  std::optional<Cochain2> delta;
};

/// Solves d delta = a over F2, one class bit at a time. Free variables are
/// set to the trivial unit.
inline TrivializeResult trivialize_with_ranks(const Cocycle3& a, std::size_t num_bits) {
  if (!a.normalized()) throw ValidationError("trivialize: cocycle is not normalized");
  const DegreeWindow& w = a.window();
  detail::PairIndex idx(w);
  std::vector<std::array<std::size_t, 3>> triples;
  auto rows = detail::coboundary_rows(w, idx, triples);
  TrivializeResult out;
  Cochain2 delta(w);
  bool all = true;
  for (std::size_t bit = 0; bit < num_bits; ++bit) {
    detail::F2Echelon e(idx.pairs.size());
    bool consistent = true;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& t = triples[r];
      if (!e.insert(rows[r], (a.at(t[0], t[1], t[2]) >> bit) & 1)) consistent = false;
    }
    out.ranks.rank.push_back(e.rank());
    out.ranks.augmented_rank.push_back(e.rank() + (consistent ? 0 : 1));
    if (!consistent) {
      all = false;
      continue;
    }
    auto x = e.solve();
    for (std::size_t k = 0; k < idx.pairs.size(); ++k)
      if (x[k]) delta.at(idx.pairs[k].first, idx.pairs[k].second) |= 1ul << bit;
  }
  if (all) out.delta = std::move(delta);
  return out;
}

/// A normalized delta with d delta = a on the window, if one exists.
inline std::optional<Cochain2> trivialize(const Cocycle3& a, std::size_t num_bits) {
  return trivialize_with_ranks(a, num_bits).delta;
}

/// Trivializability on the window compared with its nonnegative part.
struct RestrictionCheck {
  CoboundaryRanks full, nonnegative;
  bool preserved() const { return full.solvable() == nonnegative.solvable(); }
};

inline RestrictionCheck restriction_check(const Cocycle3& a, std::size_t num_bits) {
  const DegreeWindow& w = a.window();
  DegreeWindow plus(w.rank(), 0, w.hi());
  return {trivialize_with_ranks(a, num_bits).ranks, trivialize_with_ranks(a.restrict_to(plus), num_bits).ranks};
}


/// A map S^{a+b} -> S^a ^ S^b of smash words of irreducible spheres: a unit
/// times the permutation of sphere factors sending source factor i to target
/// position perm[i].
struct FMap {
  Unit unit = 0;
  std::vector<std::size_t> perm;
};

/// Sphere factors of a nonnegative degree, sorted by label.
inline std::vector<std::size_t> smash_word(const Degree& d) {
  std::vector<std::size_t> w;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (long k = 0; k < d[i]; ++k) w.push_back(i);
  return w;
}

/// f-witnesses for all pairs (a, b) in a nonnegative window with a + b in
/// the window.
class FTable {
 public:
  explicit FTable(DegreeWindow w) : w_(w), v_(w.size() * w.size()) {
    if (w.lo() != 0) throw ValidationError("f-tables live on nonnegative degrees");
  }

  const DegreeWindow& window() const { return w_; }
  const FMap& at(std::size_t a, std::size_t b) const { return v_[a * w_.size() + b]; }
  FMap& at(std::size_t a, std::size_t b) { return v_[a * w_.size() + b]; }

 private:
  DegreeWindow w_;
  std::vector<FMap> v_;
};

/// Each f moves factors into place keeping equal labels in order, which is
/// the rearrangement with fewest transpositions.
inline FTable lexicographic_f_table(const DegreeWindow& w) {
  FTable f(w);
  const std::size_t n = w.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto ab = w.add(a, b);
      if (!ab) continue;
      const Degree da = w.degree(a), db = w.degree(b);
      std::vector<std::size_t> perm;
      std::size_t pos_a = 0, pos_b = smash_word(da).size();
      for (std::size_t i = 0; i < w.rank(); ++i) {
        for (long k = 0; k < da[i]; ++k) perm.push_back(pos_a++);
        for (long k = 0; k < db[i]; ++k) perm.push_back(pos_b++);
      }
      f.at(a, b).perm = std::move(perm);
    }
  return f;
}

/// delta . f.
inline FTable perturb(const FTable& f, const Cochain2& delta) {
  if (!(delta.window() == f.window())) throw ValidationError("perturb: windows differ");
  FTable out = f;
  const std::size_t n = f.window().size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (f.window().add(a, b)) out.at(a, b).unit ^= delta.at(a, b);
  return out;
}

namespace detail {

/// (unit, permutation) with perm[i] the target position of source factor i.
struct WordMap {
  Unit unit = 0;
  std::vector<std::size_t> perm;
};

/// g o f.
inline WordMap compose(const WordMap& g, const WordMap& f) {
  WordMap h{g.unit ^ f.unit, std::vector<std::size_t>(f.perm.size())};
  for (std::size_t i = 0; i < f.perm.size(); ++i) h.perm[i] = g.perm[f.perm[i]];
  return h;
}

inline WordMap inverse(const WordMap& f) {
  WordMap h{f.unit, std::vector<std::size_t>(f.perm.size())};
  for (std::size_t i = 0; i < f.perm.size(); ++i) h.perm[f.perm[i]] = i;
  return h;
}

/// f ^ id on pre + f + post factors.
inline WordMap pad(const FMap& f, std::size_t pre, std::size_t post) {
  WordMap h{f.unit, {}};
  for (std::size_t i = 0; i < pre; ++i) h.perm.push_back(i);
  for (std::size_t p : f.perm) h.perm.push_back(pre + p);
  for (std::size_t i = 0; i < post; ++i) h.perm.push_back(pre + f.perm.size() + i);
  return h;
}

inline void check_fmap(const FMap& f, const Degree& a, const Degree& b) {
  auto src = smash_word(a + b);
  auto tgt = smash_word(a);
  auto wb = smash_word(b);
  tgt.insert(tgt.end(), wb.begin(), wb.end());
  if (f.perm.size() != src.size()) throw ValidationError("f-table: permutation has the wrong length");
  std::vector<bool> hit(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (f.perm[i] >= src.size() || hit[f.perm[i]]) throw ValidationError("f-table: not a permutation");
    hit[f.perm[i]] = true;
    if (tgt[f.perm[i]] != src[i]) throw ValidationError("f-table: permutation does not preserve labels");
  }
}

}  // namespace detail

/// The unit a(a,b,c) with f_{a,b+c}^-1 (id ^ f_{b,c})^-1 a (f_{a,b} ^ id)
/// f_{a+b,c} = id, where smash products are concatenations of words and a
/// permutation of equal labels acts through sigma(rho, rho).
inline Cocycle3 cocycle_of(const SignTable& s, const FTable& f) {
  const DegreeWindow& w = f.window();
  const std::size_t n = w.size(), z = w.zero_index();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!w.add(a, b)) continue;
      detail::check_fmap(f.at(a, b), w.degree(a), w.degree(b));
      if ((a == z || b == z)) {
        const auto& m = f.at(a, b);
        bool id = m.unit == 0;
        for (std::size_t i = 0; i < m.perm.size(); ++i) id = id && m.perm[i] == i;
        if (!id) throw ValidationError("f-table is not normalized");
      }
    }
  Cocycle3 out(w);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto ab = w.add(a, b);
      if (!ab) continue;
      for (std::size_t c = 0; c < n; ++c) {
        auto bc = w.add(b, c);
        if (!bc || !w.add(*ab, c)) continue;
        const std::size_t la = smash_word(w.degree(a)).size(), lc = smash_word(w.degree(c)).size();
        auto m1 = detail::pad(f.at(*ab, c), 0, 0);
        auto m2 = detail::pad(f.at(a, b), 0, lc);
        auto m3 = detail::inverse(detail::pad(f.at(b, c), la, 0));
        auto m4 = detail::inverse(detail::pad(f.at(a, *bc), 0, 0));
        auto loop = detail::compose(m4, detail::compose(m3, detail::compose(m2, m1)));
        // the loop is an automorphism of the sorted word of a+b+c
        auto word = smash_word(w.degree(a) + w.degree(b) + w.degree(c));
        Unit u = loop.unit;
        for (std::size_t i = 0; i < word.size(); ++i)
          for (std::size_t j = i + 1; j < word.size(); ++j)
            if (word[i] == word[j] && loop.perm[i] > loop.perm[j]) u ^= s.base()[word[i]][word[i]];
        out.at(a, b, c) = u;
      }
    }
  return out;
}

}  // namespace mackeyalg::monoidal

#endif  // MACKEYALG_MONOIDAL_SIGNS_HPP
