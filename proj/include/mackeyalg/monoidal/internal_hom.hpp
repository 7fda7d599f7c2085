#ifndef MACKEYALG_MONOIDAL_INTERNAL_HOM_HPP
#define MACKEYALG_MONOIDAL_INTERNAL_HOM_HPP

#include <vector>

#include "mackeyalg/monoidal/box.hpp"

namespace mackeyalg::monoidal {

using mackey::MackeyHom;

/// Postcomposition with psi as a map between hom groups.
inline GroupHom hom_postcompose(const MackeyHom& from, const MackeyHom& to, const MackeyMorphism& psi) {
  IntMatrix mat(to.group().ngens(), from.group().ngens());
  for (std::size_t i = 0; i < from.group().ngens(); ++i) {
    IntVector y = to.coords(mackey::compose(psi, from.basis_morphism(i)));
    for (std::size_t r = 0; r < y.size(); ++r) mat(r, i) = y[r];
  }
  return GroupHom(from.group(), to.group(), std::move(mat));
}

/// Precomposition with psi: Hom(B, N) -> Hom(A, N) for psi: A -> B.
inline GroupHom hom_precompose(const MackeyHom& from, const MackeyHom& to, const MackeyMorphism& psi) {
  IntMatrix mat(to.group().ngens(), from.group().ngens());
  for (std::size_t i = 0; i < from.group().ngens(); ++i) {
    IntVector y = to.coords(mackey::compose(from.basis_morphism(i), psi));
    for (std::size_t r = 0; r < y.size(); ++r) mat(r, i) = y[r];
  }
  return GroupHom(from.group(), to.group(), std::move(mat));
}

/// <M, N>(O_j) = Hom(M, N_{O_j}) where N_X(Y) = N(X x Y).
struct InternalHom {
  MackeyFunctor result;
  std::vector<MackeyFunctor> shifted;  // N_{O_j}
  std::vector<MackeyHom> levels;
};

inline InternalHom internal_hom(const MackeyFunctor& m, const MackeyFunctor& n) {
  const GContext& c = m.ctx();
  InternalHom out;
  std::vector<AbGroup> values;
  for (std::size_t j = 0; j < c.num_classes(); ++j) {
    out.shifted.push_back(mackey::shifted(n, c.orbit_object(j)));
    out.levels.push_back(mackey::mackey_hom(m, out.shifted.back()));
    values.push_back(out.levels.back().group());
  }
  std::vector<GroupHom> res, tr;
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    const auto& mf = c.map(f);
    const int ok = c.orbit_object(mf.from), oj = c.orbit_object(mf.to);
    const auto table = c.orbit_map_table(f);
    res.push_back(hom_postcompose(out.levels[mf.to], out.levels[mf.from], mackey::shifted_restriction(n, ok, oj, table)));
    tr.push_back(hom_postcompose(out.levels[mf.from], out.levels[mf.to], mackey::shifted_transfer(n, ok, oj, table)));
  }
  out.result = MackeyFunctor(m.context(), std::move(values), std::move(res), std::move(tr));
  return out;
}

}  // namespace mackeyalg::monoidal

#endif  // MACKEYALG_MONOIDAL_INTERNAL_HOM_HPP
