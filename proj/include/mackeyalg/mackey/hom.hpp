#ifndef MACKEYALG_MACKEY_HOM_HPP
#define MACKEYALG_MACKEY_HOM_HPP

#include <map>
#include <vector>

#include "mackeyalg/mackey/morphism.hpp"

namespace mackeyalg::mackey {

using zmod::HomGroup;

/// Solution set of a homogeneous linear system whose unknowns are
/// homomorphisms phi_b in Hom(A_b, B_b) and whose equations have the form
/// sum_t c_t L_t phi_{b_t} R_t = 0 in Hom(S, T).
class LinearHomSystem {
 public:
  struct Term {
    std::size_t block;
    GroupHom left;   // B_b -> T
    GroupHom right;  // S -> A_b
    Integer coeff = 1;
  };

  std::size_t add_unknown(const AbGroup& a, const AbGroup& b) {
    blocks_.push_back(zmod::hom_group(a, b));
    return blocks_.size() - 1;
  }

  void add_equation(const AbGroup& s, const AbGroup& t, std::vector<Term> terms) {
    eqs_.push_back({zmod::hom_group(s, t), std::move(terms)});
  }

  struct Solution {
    std::vector<HomGroup> blocks;
    std::vector<std::size_t> offsets;  // of each block in the ambient coordinates
    AbGroup ambient;
    SubquotientGroup space;

    const AbGroup& group() const { return space.group(); }

    /// Homomorphisms of the solution given by coordinates c.
    std::vector<GroupHom> element(const IntVector& c) const { return split(space.lift_element(c)); }

    std::vector<GroupHom> split(const IntVector& x) const {
      std::vector<GroupHom> out;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        IntVector part(x.begin() + offsets[b], x.begin() + offsets[b + 1]);
        out.push_back(blocks[b].to_hom(part));
      }
      return out;
    }

    IntVector ambient_coords(const std::vector<GroupHom>& phi) const {
      IntVector x;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        IntVector c = blocks[b].from_matrix(phi[b].mat);
        x.insert(x.end(), c.begin(), c.end());
      }
      return x;
    }

    bool contains(const std::vector<GroupHom>& phi) const { return space.contains(ambient_coords(phi)); }
    IntVector coords(const std::vector<GroupHom>& phi) const { return space.coords(ambient_coords(phi)); }
  };

  Solution solve() const {
    Solution s;
    s.blocks = blocks_;
    s.offsets.push_back(0);
    IntVector orders;
    for (auto& b : blocks_) {
      s.offsets.push_back(s.offsets.back() + b.group.ngens());
      orders.insert(orders.end(), b.group.orders.begin(), b.group.orders.end());
    }
    s.ambient = AbGroup(orders);

    // target coordinates: equation e, generator g of its hom group
    std::vector<std::size_t> eq_off{0};
    IntVector tgt_orders;
    std::vector<std::vector<long>> gen_index(eqs_.size());
    for (std::size_t e = 0; e < eqs_.size(); ++e) {
      const HomGroup& h = eqs_[e].hom;
      const std::size_t ns = h.src.ngens(), nt = h.tgt.ngens();
      gen_index[e].assign(ns * nt, -1);
      for (std::size_t g = 0; g < h.gens.size(); ++g) gen_index[e][h.gens[g].p * nt + h.gens[g].q] = static_cast<long>(g);
      eq_off.push_back(eq_off.back() + h.gens.size());
      tgt_orders.insert(tgt_orders.end(), h.group.orders.begin(), h.group.orders.end());
    }
    AbGroup target(tgt_orders);

    // terms grouped by unknown block
    std::vector<std::vector<std::pair<std::size_t, const Term*>>> by_block(blocks_.size());
    for (std::size_t e = 0; e < eqs_.size(); ++e)
      for (auto& t : eqs_[e].terms) by_block[t.block].push_back({e, &t});

    std::vector<SparseVec> cols;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (auto& gen : blocks_[b].gens) {
        // e_p -> scale e_q; the term contributes coeff * scale * L[:, q] R[p, :]
        std::map<std::size_t, Integer> col;
        for (auto& [e, t] : by_block[b]) {
          const HomGroup& h = eqs_[e].hom;
          const std::size_t nt = h.tgt.ngens();
          for (std::size_t tq = 0; tq < t->left.mat.rows(); ++tq) {
            const Integer& l = t->left.mat(tq, gen.q);
            if (l == 0) continue;
            for (std::size_t sp = 0; sp < t->right.mat.cols(); ++sp) {
              const Integer& r = t->right.mat(gen.p, sp);
              if (r == 0) continue;
              Integer x = t->coeff * gen.scale * l * r;
              const Integer& ord = h.tgt.orders[tq];
              if (ord != 0) x = zmod::mod_floor(x, ord);
              if (x == 0) continue;
              long gi = gen_index[e][sp * nt + tq];
              if (gi < 0) throw InternalError("hom system: term is not a homomorphism");
              const auto& hg = h.gens[gi];
              if (x % hg.scale != 0) throw InternalError("hom system: term is not a homomorphism");
              col[eq_off[e] + gi] += x / hg.scale;
            }
          }
        }
        SparseVec v;
        for (auto& [i, x] : col) {
          Integer y = target.orders[i] == 0 ? x : zmod::mod_floor(x, target.orders[i]);
          if (y != 0) v.entries.emplace_back(i, y);
        }
        cols.push_back(std::move(v));
      }
    s.space = zmod::kernel_of_columns(s.ambient, target, cols);
    return s;
  }

 private:
  struct Equation {
    HomGroup hom;
    std::vector<Term> terms;
  };
  std::vector<HomGroup> blocks_;
  std::vector<Equation> eqs_;
};

/// The group of Mackey functor morphisms M -> N with a basis realization.
struct MackeyHom {
  LinearHomSystem::Solution solution;

  const AbGroup& group() const { return solution.group(); }
  MackeyMorphism morphism(const IntVector& c) const { return {solution.element(c)}; }
  MackeyMorphism basis_morphism(std::size_t i) const { return morphism(group().basis_vector(i)); }
  IntVector coords(const MackeyMorphism& f) const { return solution.coords(f.comps); }
};

/// Adds the equations "phi commutes with the generating structure maps" for
/// unknown blocks phi_k : M(O_k) -> N(O_k) starting at block `first`.
inline void add_naturality(LinearHomSystem& sys, const MackeyFunctor& m, const MackeyFunctor& n, std::size_t first) {
  const GContext& c = m.ctx();
  for (int f : c.generating_maps()) {
    const auto& mf = c.map(f);
    const std::size_t k = mf.from, j = mf.to;
    // res_N phi_j - phi_k res_M : M_j -> N_k
    sys.add_equation(m.value(j), n.value(k),
                     {{first + j, n.res(f), GroupHom::identity(m.value(j)), 1},
                      {first + k, GroupHom::identity(n.value(k)), m.res(f), -1}});
    // tr_N phi_k - phi_j tr_M : M_k -> N_j
    sys.add_equation(m.value(k), n.value(j),
                     {{first + k, n.tr(f), GroupHom::identity(m.value(k)), 1},
                      {first + j, GroupHom::identity(n.value(j)), m.tr(f), -1}});
  }
}

inline MackeyHom mackey_hom(const MackeyFunctor& m, const MackeyFunctor& n) {
  LinearHomSystem sys;
  for (std::size_t k = 0; k < m.num_classes(); ++k) sys.add_unknown(m.value(k), n.value(k));
  add_naturality(sys, m, n, 0);
  return {sys.solve()};
}

}  // namespace mackeyalg::mackey

#endif  // MACKEYALG_MACKEY_HOM_HPP
