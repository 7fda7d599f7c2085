#ifndef MACKEYALG_BURNSIDE_RING_HPP
#define MACKEYALG_BURNSIDE_RING_HPP

#include <optional>
#include <vector>

#include "mackeyalg/burnside/context.hpp"
#include "mackeyalg/zmod/matrix.hpp"

namespace mackeyalg::burnside {

using zmod::IntMatrix;

/// Elements of the Burnside ring A(G) = B(pt, pt) are coefficient vectors
/// over the orbit basis [G/H_k], indexed by subgroup class in ascending order.
using BurnsideElement = IntVector;

inline BurnsideElement ring_one(const GContext& c) {
  BurnsideElement a(c.num_classes());
  a[c.num_classes() - 1] = 1;
  return a;
}

inline BurnsideElement ring_orbit(const GContext& c, std::size_t k) {
  BurnsideElement a(c.num_classes());
  a[k] = 1;
  return a;
}

/// Product computed by composing spans pt <- G/H -> pt.
inline BurnsideElement ring_multiply(const GContext& c, const BurnsideElement& a, const BurnsideElement& b) {
  const int pt = c.point_object();
  BurnsideMorphism x{pt, pt, a}, y{pt, pt, b};
  return compose(c, y, x).coeffs;
}

/// M(i, j) = |(G/H_j)^{H_i}|, classes in ascending order.
inline IntMatrix mark_matrix(const GContext& c) {
  const std::size_t n = c.num_classes();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = gdata::fixed_points(c.orbit(j).set, c.lattice().cls(i).representative);
  return m;
}

/// Table of marks with rows (fixing subgroup) and columns (orbit) in
/// descending subgroup order, so that it is lower triangular.
inline IntMatrix table_of_marks(const GContext& c) {
  IntMatrix m = mark_matrix(c);
  const std::size_t n = m.rows();
  IntMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = m(n - 1 - i, n - 1 - j);
  return t;
}

inline IntVector marks(const GContext& c, const BurnsideElement& a) { return mark_matrix(c).apply(a); }

/// The element with the given marks, if it exists (back substitution on the
/// triangular mark matrix with exact divisibility).
inline std::optional<BurnsideElement> from_marks(const GContext& c, const IntVector& v) {
  IntMatrix m = mark_matrix(c);
  const std::size_t n = m.rows();
  BurnsideElement a(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Integer r = v[ii];
    for (std::size_t j = ii + 1; j < n; ++j) r -= m(ii, j) * a[j];
    if (r % m(ii, ii) != 0) return std::nullopt;
    a[ii] = r / m(ii, ii);
  }
  return a;
}

/// Units of A(G): elements whose marks are all +-1. Sign vectors are
/// enumerated in binary order (bit k set means mark -1 at class k).
inline std::vector<BurnsideElement> units(const GContext& c) {
  const std::size_t n = c.num_classes();
  if (n > 24) throw BoundExceeded("units: too many subgroup classes for exhaustive sign enumeration");
  std::vector<BurnsideElement> out;
  for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
    IntVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = (bits >> k) & 1 ? -1 : 1;
    if (auto a = from_marks(c, v)) out.push_back(*a);
  }
  return out;
}

/// Mark signs of a unit as a bit mask (bit k set iff mark at class k is -1).
inline unsigned long unit_signs(const GContext& c, const BurnsideElement& u) {
  IntVector m = marks(c, u);
  unsigned long bits = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == -1)
      bits |= 1ul << k;
    else if (m[k] != 1)
      throw ValidationError("element is not a unit of the Burnside ring");
  }
  return bits;
}

inline std::optional<BurnsideElement> unit_from_signs(const GContext& c, unsigned long bits) {
  IntVector v(c.num_classes());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = (bits >> k) & 1 ? -1 : 1;
  return from_marks(c, v);
}

}  // namespace mackeyalg::burnside

#endif  // MACKEYALG_BURNSIDE_RING_HPP
