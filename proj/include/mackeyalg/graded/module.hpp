#ifndef MACKEYALG_GRADED_MODULE_HPP
#define MACKEYALG_GRADED_MODULE_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mackeyalg/graded/graded.hpp"
#include "mackeyalg/mackey/hom.hpp"

namespace mackeyalg::graded {

using gdata::GMap;
using mackey::LinearHomSystem;
using mackey::SubFunctor;
using zmod::SubquotientGroup;

/// Bilinear pairing A_a x B_b -> C_{a+b}, levelwise on orbits and compatible
/// with restriction and transfer (a Dress pairing). table[{a, b}][k] has one
/// row per generator of C_{a+b}(O_k) and column p * nb + q for e_p . e_q.
/// Missing entries are zero.
struct Pairing {
  std::map<std::pair<Degree, Degree>, std::vector<IntMatrix>> table;

  const IntMatrix* find(const Degree& a, const Degree& b, std::size_t k) const {
    auto it = table.find({a, b});
    if (it == table.end()) return nullptr;
    return &it->second[k];
  }

  bool has(const Degree& a, const Degree& b) const { return table.count({a, b}) > 0; }
};

/// x . y at level k for x in A_a(O_k), y in B_b(O_k), normalized in `out`.
inline IntVector pair_values(const Pairing& pr, const Degree& a, const Degree& b, std::size_t k, const IntVector& x,
                             const IntVector& y, const AbGroup& out) {
  IntVector z(out.ngens());
  const IntMatrix* m = pr.find(a, b, k);
  if (!m || m->rows() == 0) return z;
  const std::size_t nb = y.size();
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p] == 0) continue;
    for (std::size_t q = 0; q < nb; ++q) {
      if (y[q] == 0) continue;
      const Integer c = x[p] * y[q];
      const std::size_t col = p * nb + q;
      for (std::size_t r = 0; r < z.size(); ++r) z[r] += c * (*m)(r, col);
    }
  }
  return out.normalize(std::move(z));
}

/// Pairing over a G-set Z, orbit by orbit: A_a(Z) x B_b(Z) -> C_{a+b}(Z).
inline IntVector pair_over(const Pairing& pr, const Degree& a, const Degree& b, const MackeyFunctor& A,
                           const MackeyFunctor& B, const MackeyFunctor& C, int z, const IntVector& x, const IntVector& y) {
  const auto& od = A.ctx().orbits_of(z);
  auto oa = A.offsets(z), ob = B.offsets(z), oc = C.offsets(z);
  IntVector out(oc.back());
  for (std::size_t i = 0; i < od.orbits.size(); ++i) {
    const std::size_t cls = od.orbits[i].cls;
    IntVector xi(x.begin() + oa[i], x.begin() + oa[i + 1]);
    IntVector yi(y.begin() + ob[i], y.begin() + ob[i + 1]);
    IntVector zi = pair_values(pr, a, b, cls, xi, yi, C.value(cls));
    for (std::size_t r = 0; r < zi.size(); ++r) out[oc[i] + r] = zi[r];
  }
  return out;
}

/// Multiplication by a fixed x on the left: B_b(O_k) -> C_{a+b}(O_k).
inline GroupHom left_multiplication(const Pairing& pr, const Degree& a, const Degree& b, std::size_t k,
                                    const IntVector& x, const AbGroup& bv, const AbGroup& cv) {
  IntMatrix m(cv.ngens(), bv.ngens());
  for (std::size_t q = 0; q < bv.ngens(); ++q) {
    IntVector z = pair_values(pr, a, b, k, x, bv.basis_vector(q), cv);
    for (std::size_t r = 0; r < z.size(); ++r) m(r, q) = z[r];
  }
  return GroupHom(bv, cv, std::move(m));
}

/// Multiplication by a fixed y on the right: A_a(O_k) -> C_{a+b}(O_k).
inline GroupHom right_multiplication(const Pairing& pr, const Degree& a, const Degree& b, std::size_t k,
                                     const IntVector& y, const AbGroup& av, const AbGroup& cv) {
  IntMatrix m(cv.ngens(), av.ngens());
  for (std::size_t p = 0; p < av.ngens(); ++p) {
    IntVector z = pair_values(pr, a, b, k, av.basis_vector(p), y, cv);
    for (std::size_t r = 0; r < z.size(); ++r) m(r, p) = z[r];
  }
  return GroupHom(av, cv, std::move(m));
}

/// Builds a pairing from a function giving e_p . e_q at level k.
template <class Fn>
Pairing make_pairing(const GradedMackey& A, const GradedMackey& B, const GradedMackey& C, Fn&& fn) {
  Pairing pr;
  const std::size_t nc = A.ctx().num_classes();
  for (auto& a : A.support())
    for (auto& b : B.support()) {
      if (!C.has(a + b)) continue;
      const MackeyFunctor la = A.layer(a), lb = B.layer(b), lc = C.layer(a + b);
      std::vector<IntMatrix> mats;
      bool nonzero = false;
      for (std::size_t k = 0; k < nc; ++k) {
        const std::size_t na = la.value(k).ngens(), nb = lb.value(k).ngens();
        IntMatrix m(lc.value(k).ngens(), na * nb);
        for (std::size_t p = 0; p < na; ++p)
          for (std::size_t q = 0; q < nb; ++q) {
            IntVector z = lc.value(k).normalize(fn(a, b, k, p, q));
            for (std::size_t r = 0; r < z.size(); ++r) {
              m(r, p * nb + q) = z[r];
              if (z[r] != 0) nonzero = true;
            }
          }
        mats.push_back(std::move(m));
      }
      if (nonzero) pr.table.emplace(std::make_pair(a, b), std::move(mats));
    }
  return pr;
}

/// Violations of the Dress pairing axioms for A_a x B_b -> C_{a+b}: shape,
/// well-definedness, multiplicativity of restriction and both Frobenius
/// reciprocity laws, over the generating orbit maps.
inline std::vector<std::string> pairing_failures(const GradedMackey& A, const GradedMackey& B, const GradedMackey& C,
                                                 const Pairing& pr, const std::string& label) {
  std::vector<std::string> out;
  const GContext& c = A.ctx();
  const std::size_t nc = c.num_classes();
  auto where = [&](const Degree& a, const Degree& b, const std::string& what) {
    std::string s = label + ": " + what + " at degrees (";
    for (auto v : a) s += std::to_string(v) + ",";
    s += ") x (";
    for (auto v : b) s += std::to_string(v) + ",";
    return s + ")";
  };
  for (auto& [key, mats] : pr.table) {
    const auto& [a, b] = key;
    const MackeyFunctor la = A.layer(a), lb = B.layer(b), lc = C.layer(a + b);
    if (mats.size() != nc) {
      out.push_back(where(a, b, "wrong number of levels"));
      continue;
    }
    bool shape_ok = true;
    for (std::size_t k = 0; k < nc; ++k)
      if (mats[k].rows() != lc.value(k).ngens() || mats[k].cols() != la.value(k).ngens() * lb.value(k).ngens())
        shape_ok = false;
    if (!shape_ok) {
      out.push_back(where(a, b, "matrix shape mismatch"));
      continue;
    }
    for (std::size_t k = 0; k < nc; ++k) {
      const AbGroup &va = la.value(k), &vb = lb.value(k), &vc = lc.value(k);
      for (std::size_t p = 0; p < va.ngens(); ++p)
        for (std::size_t q = 0; q < vb.ngens(); ++q) {
          IntVector xp = va.basis_vector(p), yq = vb.basis_vector(q);
          IntVector xo = xp, yo = yq;
          xo[p] = va.orders[p];
          yo[q] = vb.orders[q];
          // the order of a torsion generator times anything must vanish
          if (!vc.is_zero(pair_values(pr, a, b, k, xo, yq, vc)) || !vc.is_zero(pair_values(pr, a, b, k, xp, yo, vc))) {
            out.push_back(where(a, b, "pairing not well defined on torsion at level " + std::to_string(k)));
            p = va.ngens();
            break;
          }
        }
    }
    for (int f : c.generating_maps()) {
      const auto& mf = c.map(f);
      const std::size_t k = mf.from, j = mf.to;
      bool res_ok = true, frob_l = true, frob_r = true;
      for (std::size_t p = 0; p < la.value(j).ngens() && res_ok; ++p)
        for (std::size_t q = 0; q < lb.value(j).ngens(); ++q) {
          IntVector x = la.value(j).basis_vector(p), y = lb.value(j).basis_vector(q);
          IntVector lhs = lc.res(f).apply(pair_values(pr, a, b, j, x, y, lc.value(j)));
          IntVector rhs = pair_values(pr, a, b, k, la.res(f).apply(x), lb.res(f).apply(y), lc.value(k));
          if (lhs != rhs) {
            res_ok = false;
            break;
          }
        }
      // tr(x . res y) = tr(x) . y for x at O_k, y at O_j
      for (std::size_t p = 0; p < la.value(k).ngens() && frob_l; ++p)
        for (std::size_t q = 0; q < lb.value(j).ngens(); ++q) {
          IntVector x = la.value(k).basis_vector(p), y = lb.value(j).basis_vector(q);
          IntVector lhs = lc.tr(f).apply(pair_values(pr, a, b, k, x, lb.res(f).apply(y), lc.value(k)));
          IntVector rhs = pair_values(pr, a, b, j, la.tr(f).apply(x), y, lc.value(j));
          if (lhs != rhs) {
            frob_l = false;
            break;
          }
        }
      // tr(res x . y) = x . tr(y) for x at O_j, y at O_k
      for (std::size_t p = 0; p < la.value(j).ngens() && frob_r; ++p)
        for (std::size_t q = 0; q < lb.value(k).ngens(); ++q) {
          IntVector x = la.value(j).basis_vector(p), y = lb.value(k).basis_vector(q);
          IntVector lhs = lc.tr(f).apply(pair_values(pr, a, b, k, la.res(f).apply(x), y, lc.value(k)));
          IntVector rhs = pair_values(pr, a, b, j, x, lb.tr(f).apply(y), lc.value(j));
          if (lhs != rhs) {
            frob_r = false;
            break;
          }
        }
      const std::string m = " along " + MackeyFunctor::describe_map(c, f);
      if (!res_ok) out.push_back(where(a, b, "restriction not multiplicative" + m));
      if (!frob_l) out.push_back(where(a, b, "Frobenius tr(x res y) = tr(x) y fails" + m));
      if (!frob_r) out.push_back(where(a, b, "Frobenius tr(res x y) = x tr(y) fails" + m));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rings.

/// Graded Mackey functor ring: R with a Dress pairing R x R -> R and a unit
/// in R_0(G/G).
struct GradedRing {
  GradedMackey r;
  Pairing mult;
  IntVector unit;
  bool commutative = false;

  const Context& context() const { return r.context(); }
  const GContext& ctx() const { return r.ctx(); }
  Degree zero_degree() const { return r.zero_degree(); }

  /// The unit restricted to R_0(O_k).
  IntVector unit_at(std::size_t k) const {
    const GContext& c = ctx();
    const std::size_t top = c.num_classes() - 1;
    const MackeyFunctor r0 = r.layer(zero_degree());
    if (k == top) return unit;
    GMap to_pt(c.orbit_size(k), 0);
    return r0.restrict_along(c.orbit_object(k), c.orbit_object(top), to_pt).apply(unit);
  }

  IntVector multiply(const Degree& a, const Degree& b, std::size_t k, const IntVector& x, const IntVector& y) const {
    return pair_values(mult, a, b, k, x, y, r.layer(a + b).value(k));
  }
};

using Ring = std::shared_ptr<const GradedRing>;

inline std::vector<std::string> ring_failures(const GradedRing& R) {
  auto out = pairing_failures(R.r, R.r, R.r, R.mult, "ring multiplication");
  if (!out.empty()) return out;
  const GContext& c = R.ctx();
  const std::size_t nc = c.num_classes();
  const Degree zero = R.zero_degree();
  const auto supp = R.r.support();
  if (R.unit.size() != R.r.layer(zero).value(nc - 1).ngens()) {
    out.push_back("ring unit has the wrong length");
    return out;
  }
  for (std::size_t k = 0; k < nc; ++k) {
    const IntVector u = R.unit_at(k);
    for (auto& a : supp) {
      const AbGroup v = R.r.layer(a).value(k);
      for (std::size_t p = 0; p < v.ngens(); ++p) {
        IntVector x = v.basis_vector(p);
        if (R.multiply(zero, a, k, u, x) != x || R.multiply(a, zero, k, x, u) != x) {
          out.push_back("unit law fails at level " + std::to_string(k));
          p = v.ngens();
          break;
        }
      }
    }
    for (auto& a : supp)
      for (auto& b : supp)
        for (auto& d : supp) {
          const AbGroup va = R.r.layer(a).value(k), vb = R.r.layer(b).value(k), vd = R.r.layer(d).value(k);
          bool ok = true;
          for (std::size_t p = 0; p < va.ngens() && ok; ++p)
            for (std::size_t q = 0; q < vb.ngens() && ok; ++q) {
              IntVector x = va.basis_vector(p), y = vb.basis_vector(q);
              IntVector xy = R.multiply(a, b, k, x, y);
              for (std::size_t s = 0; s < vd.ngens(); ++s) {
                IntVector z = vd.basis_vector(s);
                if (R.multiply(a + b, d, k, xy, z) != R.multiply(a, b + d, k, x, R.multiply(b, d, k, y, z))) {
                  ok = false;
                  break;
                }
              }
            }
          if (!ok) out.push_back("associativity fails at level " + std::to_string(k));
        }
    if (R.commutative)
      for (auto& a : supp)
        for (auto& b : supp) {
          const AbGroup va = R.r.layer(a).value(k), vb = R.r.layer(b).value(k);
          const GroupHom sg = unit_action(R.r.layer(a + b), k, R.r.signs->sigma_bits(a, b));
          bool ok = true;
          for (std::size_t p = 0; p < va.ngens() && ok; ++p)
            for (std::size_t q = 0; q < vb.ngens(); ++q) {
              IntVector x = va.basis_vector(p), y = vb.basis_vector(q);
              if (R.multiply(a, b, k, x, y) != sg.apply(R.multiply(b, a, k, y, x))) {
                ok = false;
                break;
              }
            }
          if (!ok) out.push_back("graded commutativity fails at level " + std::to_string(k));
        }
  }
  return out;
}

/// Validates eagerly unless `trusted`.
inline Ring make_ring(GradedRing r, bool trusted = false) {
  if (!trusted) {
    auto f = ring_failures(r);
    if (!f.empty()) throw ValidationError("invalid ring: " + f.front());
  }
  return std::make_shared<const GradedRing>(std::move(r));
}

/// B concentrated in degree 0, the unit of the graded box product.
inline Ring unit_ring(const Signs& s) {
  const Context& ctx = s->context();
  const GContext& c = *ctx;
  GradedRing R;
  R.r = concentrated(s, Degree(s->grading().rank()), mackey::burnside_functor(ctx));
  const MackeyFunctor b = R.r.layers.begin()->second;
  R.mult = make_pairing(R.r, R.r, R.r, [&](const Degree&, const Degree&, std::size_t k, std::size_t p, std::size_t q) {
    return b.burnside_action(k, p).apply(b.value(k).basis_vector(q));
  });
  const std::size_t top = c.num_classes() - 1;
  R.unit = b.value(top).basis_vector(monoidal::burnside_one(c, top));
  R.commutative = true;
  return make_ring(std::move(R));
}

/// Constant Mackey functor Z/n (n = 0 for Z) in degree 0 with the obvious
/// product; transfers are multiplication by the index.
inline Ring constant_ring(const Signs& s, long n) {
  const Context& ctx = s->context();
  GradedRing R;
  const AbGroup e = n == 0 ? AbGroup::free(1) : AbGroup::cyclic(n);
  R.r = concentrated(s, Degree(s->grading().rank()), mackey::constant_functor(ctx, e));
  R.mult = make_pairing(R.r, R.r, R.r, [](const Degree&, const Degree&, std::size_t, std::size_t, std::size_t) {
    return IntVector{1};
  });
  R.unit = IntVector{1};
  R.commutative = true;
  return make_ring(std::move(R));
}

/// Constant Z[x]/(x^n) with |x| = d. `commutative` is checked against sigma.
inline Ring truncated_polynomial_ring(const Signs& s, const Degree& d, long n, bool commutative = true) {
  const Context& ctx = s->context();
  GradedRing R;
  R.r.signs = s;
  Degree t(s->grading().rank());
  std::map<Degree, long> power;
  for (long i = 0; i < n; ++i, t = t + d) {
    R.r.layers.emplace(t, mackey::constant_functor(ctx, AbGroup::free(1)));
    power[t] = i;
  }
  R.mult = make_pairing(R.r, R.r, R.r, [&](const Degree& a, const Degree& b, std::size_t, std::size_t, std::size_t) {
    return power.at(a) + power.at(b) < n ? IntVector{1} : IntVector{0};
  });
  R.unit = IntVector{1};
  R.commutative = commutative;
  return make_ring(std::move(R));
}

// ---------------------------------------------------------------------------
// Modules.

enum class Side { left, right, bi };

/// A graded module over R: left action R_a x M_b -> M_{a+b} and/or right
/// action M_b x R_a -> M_{b+a}.
struct GradedModule {
  Ring ring;
  GradedMackey m;
  Pairing left;
  Pairing right;
  Side side = Side::left;

  bool is_left() const { return side != Side::right; }
  bool is_right() const { return side != Side::left; }
  const GContext& ctx() const { return m.ctx(); }
  const Context& context() const { return m.context(); }

  IntVector act_left(const Degree& a, const Degree& b, std::size_t k, const IntVector& r, const IntVector& x) const {
    return pair_values(left, a, b, k, r, x, m.layer(a + b).value(k));
  }
  IntVector act_right(const Degree& b, const Degree& a, std::size_t k, const IntVector& x, const IntVector& r) const {
    return pair_values(right, b, a, k, x, r, m.layer(b + a).value(k));
  }
};

inline std::vector<std::string> module_failures(const GradedModule& M) {
  const GradedRing& R = *M.ring;
  std::vector<std::string> out;
  if (M.m.signs->grading() != R.r.signs->grading()) out.push_back("module and ring have different gradings");
  if (M.is_left()) {
    auto f = pairing_failures(R.r, M.m, M.m, M.left, "left action");
    out.insert(out.end(), f.begin(), f.end());
  }
  if (M.is_right()) {
    auto f = pairing_failures(M.m, R.r, M.m, M.right, "right action");
    out.insert(out.end(), f.begin(), f.end());
  }
  if (!out.empty()) return out;
  const std::size_t nc = M.ctx().num_classes();
  const Degree zero = R.zero_degree();
  const auto rs = R.r.support(), ms = M.m.support();
  for (std::size_t k = 0; k < nc; ++k) {
    const IntVector u = R.unit_at(k);
    for (auto& b : ms) {
      const AbGroup v = M.m.layer(b).value(k);
      for (std::size_t q = 0; q < v.ngens(); ++q) {
        IntVector x = v.basis_vector(q);
        if ((M.is_left() && M.act_left(zero, b, k, u, x) != x) || (M.is_right() && M.act_right(b, zero, k, x, u) != x)) {
          out.push_back("module unit law fails at level " + std::to_string(k));
          q = v.ngens();
          break;
        }
      }
    }
    for (auto& a : rs)
      for (auto& c : rs)
        for (auto& b : ms) {
          const AbGroup va = R.r.layer(a).value(k), vc = R.r.layer(c).value(k), vb = M.m.layer(b).value(k);
          bool ok = true;
          for (std::size_t p = 0; p < va.ngens() && ok; ++p)
            for (std::size_t s = 0; s < vc.ngens() && ok; ++s)
              for (std::size_t q = 0; q < vb.ngens(); ++q) {
                IntVector r = va.basis_vector(p), t = vc.basis_vector(s), x = vb.basis_vector(q);
                if (M.is_left() && M.act_left(a + c, b, k, R.multiply(a, c, k, r, t), x) !=
                                       M.act_left(a, c + b, k, r, M.act_left(c, b, k, t, x))) {
                  out.push_back("left action not associative at level " + std::to_string(k));
                  ok = false;
                  break;
                }
                if (M.is_right() && M.act_right(b, a + c, k, x, R.multiply(a, c, k, r, t)) !=
                                        M.act_right(b + a, c, k, M.act_right(b, a, k, x, r), t)) {
                  out.push_back("right action not associative at level " + std::to_string(k));
                  ok = false;
                  break;
                }
                if (M.side == Side::bi && M.act_right(a + b, c, k, M.act_left(a, b, k, r, x), t) !=
                                              M.act_left(a, b + c, k, r, M.act_right(b, c, k, x, t))) {
                  out.push_back("left and right actions do not commute at level " + std::to_string(k));
                  ok = false;
                  break;
                }
              }
        }
  }
  return out;
}

inline GradedModule make_module(GradedModule m, bool trusted = false) {
  if (!trusted) {
    auto f = module_failures(m);
    if (!f.empty()) throw ValidationError("invalid module: " + f.front());
  }
  return m;
}

/// The same module remembering only one action.
inline GradedModule as_side(const GradedModule& m, Side side) {
  if (side == m.side) return m;
  if ((side == Side::left && !m.is_left()) || (side == Side::right && !m.is_right()) || side == Side::bi)
    throw ValidationError("module does not carry the requested action");
  GradedModule out = m;
  out.side = side;
  if (side == Side::left) out.right.table.clear();
  else out.left.table.clear();
  return out;
}

/// R as a bimodule over itself.
inline GradedModule regular_module(const Ring& R) {
  return GradedModule{R, R->r, R->mult, R->mult, Side::bi};
}

/// Right action x . r = sigma(|x|, |r|) r . x from a left action; needs R
/// commutative.
inline GradedModule with_both_sides(const GradedModule& M) {
  if (M.side == Side::bi) return M;
  if (!M.ring->commutative) throw ValidationError("switching sides needs a commutative ring");
  const SignTable& s = *M.m.signs;
  GradedModule out = M;
  out.side = Side::bi;
  const bool from_left = M.side == Side::left;
  Pairing& dst = from_left ? out.right : out.left;
  dst.table.clear();
  const Pairing& src = from_left ? M.left : M.right;
  for (auto& [key, mats] : src.table) {
    const auto& [u, v] = key;  // left: (ring a, module b); right: (module b, ring a)
    const Degree a = from_left ? u : v, b = from_left ? v : u;
    const MackeyFunctor lm = M.m.layer(b), lt = M.m.layer(a + b), lr = M.ring->r.layer(a);
    std::vector<IntMatrix> swapped;
    for (std::size_t k = 0; k < mats.size(); ++k) {
      const std::size_t nr = lr.value(k).ngens(), nm = lm.value(k).ngens();
      const GroupHom sg = unit_action(lt, k, s.sigma_bits(a, b));
      IntMatrix m(mats[k].rows(), mats[k].cols());
      for (std::size_t p = 0; p < nr; ++p)
        for (std::size_t q = 0; q < nm; ++q) {
          const std::size_t from = from_left ? p * nm + q : q * nr + p;
          const std::size_t to = from_left ? q * nr + p : p * nm + q;
          IntVector col = sg.apply(mats[k].column(from));
          for (std::size_t r = 0; r < col.size(); ++r) m(r, to) = col[r];
        }
      swapped.push_back(std::move(m));
    }
    dst.table.emplace(from_left ? std::make_pair(b, a) : std::make_pair(a, b), std::move(swapped));
  }
  return make_module(std::move(out));
}

/// A graded Mackey functor as a module over the unit ring B (acting through
/// the Burnside ring action). Always a bimodule.
inline GradedModule burnside_module(const Ring& R, const GradedMackey& m) {
  const GradedMackey& b = R->r;
  auto fn = [&](const Degree& a, const Degree& d, std::size_t k, std::size_t p, std::size_t q) {
    const MackeyFunctor l = m.layer(d);
    (void)a;
    return l.burnside_action(k, p).apply(l.value(k).basis_vector(q));
  };
  GradedModule out{R, m, make_pairing(b, m, m, fn), {}, Side::bi};
  out.right = make_pairing(m, b, m, [&](const Degree& d, const Degree& a, std::size_t k, std::size_t q, std::size_t p) {
    return fn(a, d, k, p, q);
  });
  return make_module(std::move(out));
}

/// Module over a ring with R_0(O_k) generated by the restricted unit at every
/// level and no other layers (constant rings): the unit acts as the identity.
/// Validation rejects functors that are not modules.
inline GradedModule scalar_module(const Ring& R, const GradedMackey& m) {
  const auto rs = R->r.support();
  const Degree zero = R->zero_degree();
  if (rs.size() != 1 || rs.front() != zero) throw ValidationError("scalar_module needs a ring concentrated in degree 0");
  const std::size_t nc = m.ctx().num_classes();
  for (std::size_t k = 0; k < nc; ++k)
    if (R->r.layer(zero).value(k).ngens() != 1 || R->unit_at(k) != IntVector{1})
      throw ValidationError("scalar_module needs a cyclic ring generated by its unit");
  GradedModule out{R, m, {}, {}, Side::bi};
  out.left = make_pairing(R->r, m, m, [&](const Degree&, const Degree& d, std::size_t k, std::size_t, std::size_t q) {
    return m.layer(d).value(k).basis_vector(q);
  });
  out.right = make_pairing(m, R->r, m, [&](const Degree& d, const Degree&, std::size_t k, std::size_t q, std::size_t) {
    return m.layer(d).value(k).basis_vector(q);
  });
  return make_module(std::move(out));
}

/// Sigma^a M.
inline GradedModule shift(const GradedModule& M, const Degree& a) {
  GradedModule out{M.ring, shift(M.m, a), {}, {}, M.side};
  for (auto& [key, mats] : M.left.table) out.left.table.emplace(std::make_pair(key.first, key.second + a), mats);
  for (auto& [key, mats] : M.right.table) out.right.table.emplace(std::make_pair(key.first + a, key.second), mats);
  return out;
}

namespace detail {

/// Points of X x O_k are indexed p * |O_k| + q; the two projections.
inline GMap first_projection(const GContext& c, int x, std::size_t k) {
  const int nx = c.object(x).size(), nk = c.orbit_size(k);
  GMap t(static_cast<std::size_t>(nx) * nk);
  for (int p = 0; p < nx; ++p)
    for (int q = 0; q < nk; ++q) t[p * nk + q] = p;
  return t;
}

inline GMap second_projection(const GContext& c, int x, std::size_t k) {
  const int nx = c.object(x).size(), nk = c.orbit_size(k);
  GMap t(static_cast<std::size_t>(nx) * nk);
  for (int p = 0; p < nx; ++p)
    for (int q = 0; q < nk; ++q) t[p * nk + q] = q;
  return t;
}

}  // namespace detail

/// M_X with M_X(Y) = M(X x Y) and R acting through restriction along the
/// projection X x Y -> Y.
inline GradedModule shifted_module(const GradedModule& M, int x) {
  const GContext& c = M.ctx();
  const GradedMackey& R = M.ring->r;
  GradedModule out{M.ring, {M.m.signs, {}}, {}, {}, M.side};
  for (auto& [d, l] : M.m.layers) out.m.layers.emplace(d, mackey::shifted(l, x));
  auto build = [&](const Pairing& src, bool left) {
    Pairing pr;
    for (auto& [key, mats] : src.table) {
      const Degree a = left ? key.first : key.second, b = left ? key.second : key.first;
      const MackeyFunctor lr = R.layer(a), lm = M.m.layer(b), lt = M.m.layer(a + b);
      std::vector<IntMatrix> out_mats;
      for (std::size_t k = 0; k < c.num_classes(); ++k) {
        const int xk = c.product_object(x, c.orbit_object(k));
        const GroupHom res = lr.restrict_along(xk, c.orbit_object(k), detail::second_projection(c, x, k));
        const std::size_t nr = lr.value(k).ngens();
        const AbGroup vm = lm.value_at(xk), vt = lt.value_at(xk);
        IntMatrix m(vt.ngens(), nr * vm.ngens());
        for (std::size_t p = 0; p < nr; ++p) {
          IntVector rp = res.apply(lr.value(k).basis_vector(p));
          for (std::size_t q = 0; q < vm.ngens(); ++q) {
            IntVector xq = vm.basis_vector(q);
            IntVector z = left ? pair_over(src, a, b, lr, lm, lt, xk, rp, xq) : pair_over(src, b, a, lm, lr, lt, xk, xq, rp);
            const std::size_t col = left ? p * vm.ngens() + q : q * nr + p;
            for (std::size_t r = 0; r < z.size(); ++r) m(r, col) = z[r];
          }
        }
        out_mats.push_back(std::move(m));
      }
      pr.table.emplace(key, std::move(out_mats));
    }
    return pr;
  };
  if (M.is_left()) out.left = build(M.left, true);
  if (M.is_right()) out.right = build(M.right, false);
  return out;
}

/// Direct sum of modules over one ring, with the offsets of every summand
/// per degree and level.
struct ModuleSum {
  GradedModule module;
  std::vector<std::map<Degree, std::vector<std::size_t>>> offsets;

  std::size_t offset(std::size_t i, const Degree& d, std::size_t k) const { return offsets[i].at(d)[k]; }
};

inline ModuleSum module_sum(const Ring& R, const Signs& signs, Side side, const std::vector<GradedModule>& parts) {
  const GContext& c = *signs->context();
  const std::size_t nc = c.num_classes();
  ModuleSum out;
  out.module = GradedModule{R, {signs, {}}, {}, {}, side};
  out.offsets.resize(parts.size());
  std::set<Degree> degrees;
  for (auto& p : parts)
    for (auto& d : p.m.support()) degrees.insert(d);
  for (auto& d : degrees) {
    std::vector<MackeyFunctor> ls;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      ls.push_back(parts[i].m.layer(d));
    }
    for (std::size_t k = 0; k < nc; ++k) {
      auto off = detail::level_offsets(ls, k);
      for (std::size_t i = 0; i < parts.size(); ++i) out.offsets[i][d].push_back(off[i]);
    }
    out.module.m.layers.emplace(d, mackey::direct_sum(signs->context(), ls));
  }
  const GradedMackey& rr = R->r;
  auto build = [&](bool left) {
    Pairing pr;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Pairing& src = left ? parts[i].left : parts[i].right;
      for (auto& [key, mats] : src.table) {
        const Degree a = left ? key.first : key.second, b = left ? key.second : key.first;
        auto it = pr.table.find(key);
        if (it == pr.table.end()) {
          std::vector<IntMatrix> z;
          const MackeyFunctor lr = rr.layer(a), lm = out.module.m.layer(b), lt = out.module.m.layer(a + b);
          for (std::size_t k = 0; k < nc; ++k)
            z.emplace_back(lt.value(k).ngens(), lr.value(k).ngens() * lm.value(k).ngens());
          it = pr.table.emplace(key, std::move(z)).first;
        }
        const MackeyFunctor lr = rr.layer(a), lmi = parts[i].m.layer(b), lm = out.module.m.layer(b);
        for (std::size_t k = 0; k < nc; ++k) {
          const std::size_t nr = lr.value(k).ngens(), nmi = lmi.value(k).ngens(), nm = lm.value(k).ngens();
          const std::size_t ob = out.offset(i, b, k), ot = out.offset(i, a + b, k);
          for (std::size_t p = 0; p < nr; ++p)
            for (std::size_t q = 0; q < nmi; ++q) {
              const std::size_t from = left ? p * nmi + q : q * nr + p;
              const std::size_t to = left ? p * nm + ob + q : (ob + q) * nr + p;
              for (std::size_t r = 0; r < mats[k].rows(); ++r) it->second[k](ot + r, to) = mats[k](r, from);
            }
        }
      }
    }
    return pr;
  };
  if (side != Side::right) out.module.left = build(true);
  if (side != Side::left) out.module.right = build(false);
  return out;
}

// ---------------------------------------------------------------------------
// Free modules.

/// Sigma^tau R_{O_H}, H the subgroup class `cls`.
struct FreeGenerator {
  Degree tau;
  std::size_t cls = 0;

  friend bool operator==(const FreeGenerator& a, const FreeGenerator& b) { return a.tau == b.tau && a.cls == b.cls; }
};

/// A finite direct sum of free modules Sigma^tau R_{O_H}.
struct FreeModule {
  std::vector<FreeGenerator> gens;
  Side side = Side::left;
  ModuleSum sum;

  const GradedModule& module() const { return sum.module; }
};

inline FreeModule free_module_on(const Ring& R, std::vector<FreeGenerator> gens, Side side = Side::left) {
  const GContext& c = R->ctx();
  GradedModule reg = regular_module(R);
  reg.side = side;
  std::vector<GradedModule> parts;
  for (auto& g : gens) parts.push_back(shift(shifted_module(reg, c.orbit_object(g.cls)), g.tau));
  FreeModule out{std::move(gens), side, {}};
  out.sum = module_sum(R, R->r.signs, side, parts);
  return out;
}

/// The canonical generator of the i-th summand: the unit on the diagonal
/// orbit of O_H x O_H, in P_tau(O_H).
inline IntVector generator_element(const FreeModule& P, std::size_t i) {
  const GradedRing& R = *P.sum.module.ring;
  const GContext& c = R.ctx();
  const FreeGenerator& g = P.gens[i];
  const int oh = c.orbit_object(g.cls);
  const int hh = c.product_object(oh, oh);
  const MackeyFunctor r0 = R.r.layer(R.zero_degree());
  const auto& od = c.orbits_of(hh);
  const int diag = od.orbit_of[0];
  auto off = r0.offsets(hh);
  IntVector x(P.module().m.layer(g.tau).value(g.cls).ngens());
  IntVector u = R.unit_at(od.orbits[diag].cls);
  const std::size_t base = P.sum.offset(i, g.tau, g.cls) + off[diag];
  for (std::size_t r = 0; r < u.size(); ++r) x[base + r] = u[r];
  return x;
}

/// Value of the module map out of Sigma^tau R_{O_H} sending the generator to
/// m in M_{tau + shift}(O_H), on x in R_g(O_H x O_k):
///   x -> sigma(shift, g) tr_{pr2}(x . res_{pr1} m)      (left modules)
///   x -> tr_{pr2}(res_{pr1} m . x)                    (right modules)
inline IntVector free_map_value(const GradedModule& M, const FreeGenerator& gen, const IntVector& m,
                                const Degree& shift_deg, const Degree& g, std::size_t k, const IntVector& x, bool left) {
  const GContext& c = M.ctx();
  const GradedRing& R = *M.ring;
  const int oh = c.orbit_object(gen.cls), ok = c.orbit_object(k);
  const int hk = c.product_object(oh, ok);
  const Degree d = gen.tau + shift_deg;
  const MackeyFunctor lm = M.m.layer(d), lr = R.r.layer(g), lt = M.m.layer(g + d);
  IntVector rm = lm.restrict_along(hk, oh, detail::first_projection(c, oh, k)).apply(m);
  IntVector prod = left ? pair_over(M.left, g, d, lr, lm, lt, hk, x, rm)
                               : pair_over(M.right, d, g, lm, lr, lt, hk, rm, x);
  IntVector y = lt.transfer_along(hk, ok, detail::second_projection(c, oh, k)).apply(prod);
  if (left) {
    const Unit u = M.m.signs->sigma_bits(shift_deg, g);
    if (u != 0) y = unit_action(lt, k, u).apply(y);
  }
  return y;
}

/// The module map P -> M of degree `shift_deg` with images[i] in
/// M_{tau_i + shift}(O_{H_i}).
inline GradedMorphism free_map(const FreeModule& P, const GradedModule& M, const std::vector<IntVector>& images,
                               const Degree& shift_deg) {
  const GContext& c = M.ctx();
  const GradedMackey& pm = P.module().m;
  const GradedRing& R = *M.ring;
  GradedMorphism out{shift_deg, {}};
  for (auto& d : pm.support()) {
    const MackeyFunctor src = pm.layer(d), tgt = M.m.layer(d + shift_deg);
    MackeyMorphism f;
    for (std::size_t k = 0; k < c.num_classes(); ++k) {
      IntMatrix mat(tgt.value(k).ngens(), src.value(k).ngens());
      for (std::size_t i = 0; i < P.gens.size(); ++i) {
        const Degree g = d - P.gens[i].tau;
        if (!R.r.has(g)) continue;
        const int hk = c.product_object(c.orbit_object(P.gens[i].cls), c.orbit_object(k));
        const AbGroup v = R.r.layer(g).value_at(hk);
        const std::size_t off = P.sum.offset(i, d, k);
        for (std::size_t q = 0; q < v.ngens(); ++q) {
          IntVector y = free_map_value(M, P.gens[i], images[i], shift_deg, g, k, v.basis_vector(q), P.side != Side::right);
          for (std::size_t r = 0; r < y.size(); ++r) mat(r, off + q) = y[r];
        }
      }
      f.comps.emplace_back(src.value(k), tgt.value(k), std::move(mat));
    }
    out.comps.emplace(d, std::move(f));
  }
  return out;
}

/// Images in M_d(O_k) of the basis of (Sigma^tau R_{O_H})_d(O_k) under the
/// map sending the generator to m.
inline std::vector<IntVector> free_map_columns(const GradedModule& M, const FreeGenerator& gen, const IntVector& m,
                                               const Degree& d, std::size_t k, bool left = true) {
  const GContext& c = M.ctx();
  const Degree g = d - gen.tau;
  std::vector<IntVector> out;
  if (!M.ring->r.has(g)) return out;
  const int hk = c.product_object(c.orbit_object(gen.cls), c.orbit_object(k));
  const AbGroup v = M.ring->r.layer(g).value_at(hk);
  for (std::size_t q = 0; q < v.ngens(); ++q)
    out.push_back(free_map_value(M, gen, m, Degree(d.size()), g, k, v.basis_vector(q), left));
  return out;
}

// ---------------------------------------------------------------------------
// Submodules, quotients and module maps.

/// Module structure on a family of subquotients of the layers of M (one per
/// degree of the support), inherited from M.
inline GradedModule induced_module(const GradedModule& M, const std::map<Degree, SubFunctor>& parts) {
  const GradedMackey& R = M.ring->r;
  const std::size_t nc = M.ctx().num_classes();
  GradedModule out{M.ring, {M.m.signs, {}}, {}, {}, M.side};
  for (auto& [d, s] : parts) out.m.layers.emplace(d, s.functor);
  auto part_coords = [&](const Degree& d, std::size_t k, const IntVector& y) {
    auto it = parts.find(d);
    if (it == parts.end()) {
      if (!M.m.layer(d).value(k).is_zero(y)) throw InternalError("induced module: product leaves the submodule");
      return IntVector();
    }
    return it->second.coords(k, y);
  };
  auto build = [&](bool left) {
    Pairing pr;
    const Pairing& src = left ? M.left : M.right;
    for (auto& [key, mats] : src.table) {
      const Degree a = left ? key.first : key.second, b = left ? key.second : key.first;
      auto ib = parts.find(b);
      if (ib == parts.end() || !out.m.has(a + b)) continue;
      std::vector<IntMatrix> out_mats;
      for (std::size_t k = 0; k < nc; ++k) {
        const AbGroup vr = R.layer(a).value(k);
        const SubquotientGroup& sb = ib->second.levels[k];
        const std::size_t nq = sb.group().ngens();
        IntMatrix m(out.m.layer(a + b).value(k).ngens(), vr.ngens() * nq);
        for (std::size_t p = 0; p < vr.ngens(); ++p)
          for (std::size_t q = 0; q < nq; ++q) {
            IntVector x = sb.lift(q);
            IntVector y = left ? M.act_left(a, b, k, vr.basis_vector(p), x) : M.act_right(b, a, k, x, vr.basis_vector(p));
            IntVector z = part_coords(a + b, k, y);
            const std::size_t col = left ? p * nq + q : q * vr.ngens() + p;
            for (std::size_t r = 0; r < z.size(); ++r) m(r, col) = z[r];
          }
        out_mats.push_back(std::move(m));
      }
      pr.table.emplace(key, std::move(out_mats));
    }
    return pr;
  };
  if (M.is_left()) out.left = build(true);
  if (M.is_right()) out.right = build(false);
  return out;
}

/// Violations of R-linearity for f: L -> M of degree f.shift:
/// f(r . x) = sigma(shift, |r|) r . f(x) and f(x . r) = f(x) . r.
inline std::vector<std::string> module_map_failures(const GradedModule& L, const GradedModule& M, const GradedMorphism& f) {
  std::vector<std::string> out;
  if (!is_morphism(L.m, M.m, f)) out.push_back("not a morphism of graded Mackey functors");
  const GradedMackey& R = L.ring->r;
  const std::size_t nc = L.ctx().num_classes();
  for (auto& a : R.support())
    for (auto& b : L.m.support())
      for (std::size_t k = 0; k < nc; ++k) {
        const AbGroup vr = R.layer(a).value(k), vl = L.m.layer(b).value(k);
        const GroupHom fb = f.at(L.m, M.m, b).comps[k], fab = f.at(L.m, M.m, a + b).comps[k];
        const GroupHom sg = unit_action(M.m.layer(a + b + f.shift), k, L.m.signs->sigma_bits(f.shift, a));
        for (std::size_t p = 0; p < vr.ngens(); ++p)
          for (std::size_t q = 0; q < vl.ngens(); ++q) {
            IntVector r = vr.basis_vector(p), x = vl.basis_vector(q);
            if (L.is_left() && M.is_left() &&
                fab.apply(L.act_left(a, b, k, r, x)) != sg.apply(M.act_left(a, b + f.shift, k, r, fb.apply(x)))) {
              out.push_back("left R-linearity fails at level " + std::to_string(k));
              return out;
            }
            if (L.is_right() && M.is_right() &&
                fab.apply(L.act_right(b, a, k, x, r)) != M.act_right(b + f.shift, a, k, fb.apply(x), r)) {
              out.push_back("right R-linearity fails at level " + std::to_string(k));
              return out;
            }
          }
      }
  return out;
}

inline bool is_module_map(const GradedModule& L, const GradedModule& M, const GradedMorphism& f) {
  return module_map_failures(L, M, f).empty();
}

/// Kernel and cokernel of a module map, with induced actions.
struct ModuleKernelCokernel {
  std::map<Degree, SubFunctor> kernel_parts, cokernel_parts;
  GradedModule kernel, cokernel;
  GradedMorphism inclusion, projection;
};

inline ModuleKernelCokernel module_kernel_cokernel(const GradedModule& L, const GradedModule& M, const GradedMorphism& f) {
  ModuleKernelCokernel out;
  out.inclusion.shift = L.m.zero_degree();
  out.projection.shift = L.m.zero_degree();
  std::set<Degree> tgt;
  for (auto& d : L.m.support()) {
    auto kc = mackey::kernel_cokernel(L.m.layer(d), M.m.layer(d + f.shift), f.at(L.m, M.m, d));
    out.kernel_parts.emplace(d, kc.kernel);
    out.inclusion.comps.emplace(d, kc.inclusion);
    tgt.insert(d + f.shift);
  }
  for (auto& d : M.m.support()) {
    auto kc = mackey::kernel_cokernel(L.m.layer(d - f.shift), M.m.layer(d), f.at(L.m, M.m, d - f.shift));
    out.cokernel_parts.emplace(d, kc.cokernel);
    out.projection.comps.emplace(d, kc.projection);
  }
  out.kernel = induced_module(L, out.kernel_parts);
  out.cokernel = induced_module(M, out.cokernel_parts);
  return out;
}

// ---------------------------------------------------------------------------
// Module homomorphisms.

/// Module maps L -> M of degree tau as the solution of a linear system with
/// one unknown per (degree of L, orbit class).
struct ModuleHom {
  Degree tau;
  std::vector<Degree> degrees;  // support of L, in block order
  LinearHomSystem::Solution solution;
  std::size_t num_classes = 0;

  const AbGroup& group() const { return solution.group(); }

  GradedMorphism morphism_from_blocks(const std::vector<GroupHom>& blocks) const {
    GradedMorphism f{tau, {}};
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      MackeyMorphism m;
      for (std::size_t k = 0; k < num_classes; ++k) m.comps.push_back(blocks[i * num_classes + k]);
      f.comps.emplace(degrees[i], std::move(m));
    }
    return f;
  }

  GradedMorphism morphism(const IntVector& c) const { return morphism_from_blocks(solution.element(c)); }

  std::vector<GroupHom> blocks_of(const GradedMackey& l, const GradedMackey& m, const GradedMorphism& f) const {
    std::vector<GroupHom> b;
    for (auto& d : degrees) {
      MackeyMorphism g = f.at(l, m, d);
      for (std::size_t k = 0; k < num_classes; ++k) b.push_back(g.comps[k]);
    }
    return b;
  }
};

inline ModuleHom module_hom(const GradedModule& L, const GradedModule& M, const Degree& tau) {
  const GradedMackey& R = L.ring->r;
  const std::size_t nc = L.ctx().num_classes();
  const SignTable& s = *L.m.signs;
  ModuleHom out{tau, L.m.support(), {}, nc};
  LinearHomSystem sys;
  std::map<Degree, std::size_t> first;
  for (auto& d : out.degrees) {
    first[d] = sys.add_unknown(L.m.layer(d).value(0), M.m.layer(d + tau).value(0));
    for (std::size_t k = 1; k < nc; ++k) sys.add_unknown(L.m.layer(d).value(k), M.m.layer(d + tau).value(k));
    mackey::add_naturality(sys, L.m.layer(d), M.m.layer(d + tau), first[d]);
  }
  const bool left = L.is_left() && M.is_left();
  if (!left && !(L.is_right() && M.is_right())) throw ValidationError("module_hom: modules have no common side");
  for (auto& a : R.support())
    for (auto& b : out.degrees)
      for (std::size_t k = 0; k < nc; ++k) {
        const AbGroup vr = R.layer(a).value(k), vl = L.m.layer(b).value(k);
        const MackeyFunctor lab = L.m.layer(a + b), mt = M.m.layer(a + b + tau), mb = M.m.layer(b + tau);
        if (mt.value(k).is_trivial()) continue;
        const GroupHom sg = unit_action(mt, k, s.sigma_bits(tau, a));
        auto fab = first.find(a + b);
        for (std::size_t p = 0; p < vr.ngens(); ++p) {
          const IntVector r = vr.basis_vector(p);
          std::vector<LinearHomSystem::Term> terms;
          if (left) {
            if (fab != first.end() && !lab.value(k).is_trivial())
              terms.push_back({fab->second + k, GroupHom::identity(mt.value(k)),
                               left_multiplication(L.left, a, b, k, r, vl, lab.value(k)), 1});
            terms.push_back({first[b] + k,
                             zmod::compose(sg, left_multiplication(M.left, a, b + tau, k, r, mb.value(k), mt.value(k))),
                             GroupHom::identity(vl), -1});
          } else {
            if (fab != first.end() && !lab.value(k).is_trivial())
              terms.push_back({fab->second + k, GroupHom::identity(mt.value(k)),
                               right_multiplication(L.right, b, a, k, r, vl, lab.value(k)), 1});
            terms.push_back({first[b] + k, right_multiplication(M.right, b + tau, a, k, r, mb.value(k), mt.value(k)),
                             GroupHom::identity(vl), -1});
          }
          sys.add_equation(vl, mt.value(k), std::move(terms));
        }
      }
  out.solution = sys.solve();
  return out;
}

}  // namespace mackeyalg::graded

#endif  // MACKEYALG_GRADED_MODULE_HPP
