#ifndef MACKEYALG_DERIVED_RESOLUTION_HPP
#define MACKEYALG_DERIVED_RESOLUTION_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mackeyalg/graded/module.hpp"

namespace mackeyalg::derived {

using graded::Degree;
using graded::FreeGenerator;
using graded::FreeModule;
using graded::GradedMackey;
using graded::GradedModule;
using graded::GradedMorphism;
using graded::ModuleKernelCokernel;
using graded::Ring;
using graded::Side;
using graded::Signs;
using monoidal::SignTable;
using burnside::Context;
using burnside::GContext;
using mackey::MackeyFunctor;
using mackey::MackeyMorphism;
using zmod::AbGroup;
using zmod::GroupHom;
using zmod::IntMatrix;
using zmod::Integer;
using zmod::IntVector;
using monoidal::operator+;
using monoidal::operator-;

/// A free generator together with its image in the module it covers.
struct ChosenGenerator {
  FreeGenerator gen;
  IntVector image;
};

namespace detail {

inline std::vector<IntVector> image_columns(const GradedModule& t, const std::vector<ChosenGenerator>& gens,
                                            const Degree& d, std::size_t k, bool left) {
  std::vector<IntVector> cols;
  for (auto& g : gens) {
    auto c = graded::free_map_columns(t, g.gen, g.image, d, k, left);
    cols.insert(cols.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  }
  return cols;
}

/// T_d(O_k) modulo the span of the columns.
inline zmod::SubquotientGroup quotient_by(const AbGroup& v, const std::vector<IntVector>& cols) {
  IntMatrix m = IntMatrix::from_columns(cols, v.ngens());
  return zmod::cokernel(GroupHom(AbGroup::free(cols.size()), v, std::move(m)));
}

inline bool surjects(const GradedModule& t, const std::vector<ChosenGenerator>& gens, bool left) {
  for (auto& d : t.m.support())
    for (std::size_t k = 0; k < t.ctx().num_classes(); ++k) {
      const AbGroup v = t.m.layer(d).value(k);
      if (v.is_trivial()) continue;
      if (!quotient_by(v, image_columns(t, gens, d, k, left)).group().is_trivial()) return false;
    }
  return true;
}

}  // namespace detail

/// Generators of a module as a quotient of free modules. Degrees ascend and
/// subgroup classes descend (G/G first); at each spot generators are added one
/// at a time from the Smith form of what is not yet covered. Without a seed
/// redundant generators are pruned afterwards; a nonzero seed shuffles the
/// order, perturbs the choices and keeps everything, giving a different but
/// equally valid cover.
inline std::vector<ChosenGenerator> choose_generators(const GradedModule& t, bool left, unsigned seed = 0) {
  const std::size_t nc = t.ctx().num_classes();
  std::vector<std::pair<Degree, std::size_t>> spots;
  for (auto& d : t.m.support())
    for (std::size_t k = nc; k-- > 0;) spots.emplace_back(d, k);
  std::mt19937 rng(seed);
  if (seed != 0) std::shuffle(spots.begin(), spots.end(), rng);
  std::vector<ChosenGenerator> gens;
  for (auto& [d, k] : spots) {
    const AbGroup v = t.m.layer(d).value(k);
    if (v.is_trivial()) continue;
    auto cols = detail::image_columns(t, gens, d, k, left);
    for (;;) {
      auto q = detail::quotient_by(v, cols);
      if (q.group().is_trivial()) break;
      IntVector x = q.lift(0);
      if (seed != 0) {
        std::uniform_int_distribution<int> coef(-2, 2);
        for (std::size_t i = 1; i < q.group().ngens(); ++i) {
          IntVector y = q.lift(i);
          const int c = coef(rng);
          for (std::size_t r = 0; r < x.size(); ++r) x[r] += c * y[r];
        }
        for (auto& col : cols) {
          const int c = coef(rng);
          for (std::size_t r = 0; r < x.size(); ++r) x[r] += c * col[r];
        }
        x = v.normalize(std::move(x));
      }
      ChosenGenerator g{{d, k}, x};
      auto more = graded::free_map_columns(t, g.gen, g.image, d, k, left);
      cols.insert(cols.end(), more.begin(), more.end());
      gens.push_back(std::move(g));
    }
  }
  if (seed == 0)
    for (std::size_t i = 0; i < gens.size();) {
      auto rest = gens;
      rest.erase(rest.begin() + static_cast<long>(i));
      if (detail::surjects(t, rest, left)) gens = std::move(rest);
      else ++i;
    }
  return gens;
}

/// P_s --d_s--> P_{s-1} -> ... -> P_0 --eps--> M. d[0] is the augmentation.
/// kernels[s] is the kernel of d[s] with its module structure; the image of
/// the generators of P_{s+1} is recorded in the coordinates of kernels[s].
struct Resolution {
  GradedModule module;
  std::size_t s_max = 0;
  Side side = Side::left;
  std::vector<FreeModule> stages;
  std::vector<GradedMorphism> d;
  std::vector<std::vector<ChosenGenerator>> generators;
  std::vector<GradedModule> kernels;
  std::vector<GradedMorphism> kernel_inclusions;
  std::vector<std::string> generator_log;

  const GradedModule& stage(std::size_t s) const { return stages[s].module(); }

  /// Target of d[s]: M for s = 0, else P_{s-1}.
  const GradedModule& target(std::size_t s) const { return s == 0 ? module : stage(s - 1); }
};

inline std::string describe_generator(std::size_t s, const FreeGenerator& g) {
  std::string out = "P" + std::to_string(s) + ": degree (";
  for (std::size_t i = 0; i < g.tau.size(); ++i) out += (i ? "," : "") + std::to_string(g.tau[i]);
  return out + ") class " + std::to_string(g.cls);
}

/// Free resolution through stage s_max. `side` selects left or right modules
/// (default: left when available).
inline Resolution projective_resolution(const GradedModule& m, std::size_t s_max, std::optional<Side> side = std::nullopt,
                                        unsigned seed = 0) {
  Resolution r;
  r.side = side ? *side : (m.is_left() ? Side::left : Side::right);
  if (r.side == Side::bi) throw ValidationError("resolutions are one-sided");
  r.module = graded::as_side(m, r.side);
  r.s_max = s_max;
  const bool left = r.side == Side::left;
  const Ring& R = m.ring;
  GradedModule target = r.module;
  GradedMorphism incl = GradedMorphism::identity(target.m);
  for (std::size_t s = 0; s <= s_max; ++s) {
    auto gens = choose_generators(target, left, seed == 0 ? 0 : seed + static_cast<unsigned>(s));
    std::vector<FreeGenerator> fg;
    std::vector<IntVector> images;
    for (auto& g : gens) {
      fg.push_back(g.gen);
      images.push_back(g.image);
      r.generator_log.push_back(describe_generator(s, g.gen));
    }
    FreeModule p = graded::free_module_on(R, fg, r.side);
    GradedMorphism onto = graded::free_map(p, target, images, target.m.zero_degree());
    const GradedModule& prev = s == 0 ? r.module : r.stage(s - 1);
    GradedMorphism ds = graded::compose(p.module().m, target.m, prev.m, incl, onto);
    auto kc = graded::module_kernel_cokernel(p.module(), target, onto);
    if (!kc.cokernel.m.is_zero()) throw InternalError("resolution: chosen generators do not cover the module");
    r.stages.push_back(std::move(p));
    r.d.push_back(std::move(ds));
    r.generators.push_back(std::move(gens));
    r.kernels.push_back(kc.kernel);
    r.kernel_inclusions.push_back(kc.inclusion);
    target = kc.kernel;
    incl = kc.inclusion;
  }
  return r;
}

/// d_{s-1} o d_s = 0 and exactness at P_s for 0 < s < s_max, plus
/// surjectivity of the augmentation.
inline std::vector<std::string> resolution_failures(const Resolution& r) {
  std::vector<std::string> out;
  const std::size_t nc = r.module.ctx().num_classes();
  for (std::size_t s = 0; s < r.stages.size(); ++s) {
    const GradedModule& p = r.stage(s);
    if (!graded::is_module_map(p, r.target(s), r.d[s])) out.push_back("d" + std::to_string(s) + " is not a module map");
    if (s > 0) {
      GradedMorphism dd = graded::compose(p.m, r.stage(s - 1).m, r.target(s - 1).m, r.d[s - 1], r.d[s]);
      if (!graded::equal(p.m, r.target(s - 1).m, dd, GradedMorphism::zero(p.m, r.target(s - 1).m, dd.shift)))
        out.push_back("d o d != 0 at stage " + std::to_string(s));
    }
  }
  // exactness: ker d_{s-1} = im d_s, and eps onto
  for (std::size_t s = 0; s < r.stages.size(); ++s) {
    const GradedModule& t = r.target(s);
    const GradedModule& p = r.stage(s);
    for (auto& deg : t.m.support())
      for (std::size_t k = 0; k < nc; ++k) {
        const GroupHom in = r.d[s].at(p.m, t.m, deg).comps[k];
        GroupHom outmap = s == 0 ? GroupHom::zero(t.m.layer(deg).value(k), AbGroup())
                                 : r.d[s - 1].at(t.m, r.target(s - 1).m, deg).comps[k];
        if (!zmod::homology(in, outmap).group().is_trivial())
          out.push_back("not exact at stage " + std::to_string(s) + " level " + std::to_string(k));
      }
  }
  return out;
}

/// Outcome of the projectivity test: a splitting of the cover P_0 -> M, or a
/// description of why none exists.
struct ProjectivityResult {
  bool projective = false;
  std::optional<GradedMorphism> splitting;
  std::string obstruction;
};

/// Module maps L -> M -> N: the map Hom(L, M) -> Hom(L, N), f -> g o f.
inline GroupHom postcompose_map(const graded::ModuleHom& from, const graded::ModuleHom& to, const GradedModule& l,
                                const GradedModule& m, const GradedModule& n, const GradedMorphism& g) {
  IntMatrix mat(to.group().ngens(), from.group().ngens());
  for (std::size_t i = 0; i < from.group().ngens(); ++i) {
    GradedMorphism f = from.morphism(from.group().basis_vector(i));
    IntVector c = to.solution.coords(to.blocks_of(l.m, n.m, graded::compose(l.m, m.m, n.m, g, f)));
    for (std::size_t r = 0; r < c.size(); ++r) mat(r, i) = c[r];
  }
  return GroupHom(from.group(), to.group(), std::move(mat));
}

inline ProjectivityResult is_projective(const GradedModule& m) {
  const GradedModule mm = graded::as_side(m, m.is_left() ? Side::left : Side::right);
  auto gens = choose_generators(mm, mm.is_left());
  std::vector<FreeGenerator> fg;
  std::vector<IntVector> images;
  for (auto& g : gens) {
    fg.push_back(g.gen);
    images.push_back(g.image);
  }
  FreeModule p = graded::free_module_on(m.ring, fg, mm.side);
  GradedMorphism eps = graded::free_map(p, mm, images, mm.m.zero_degree());
  const Degree zero = mm.m.zero_degree();
  auto hmp = graded::module_hom(mm, p.module(), zero);
  auto hmm = graded::module_hom(mm, mm, zero);
  GroupHom post = postcompose_map(hmp, hmm, mm, p.module(), mm, eps);
  IntVector id = hmm.solution.coords(hmm.blocks_of(mm.m, mm.m, GradedMorphism::identity(mm.m)));
  ProjectivityResult out;
  if (auto x = zmod::solve(post, id)) {
    out.projective = true;
    out.splitting = hmp.morphism(*x);
  } else {
    out.obstruction = "the identity of M does not factor through the free cover (" + std::to_string(fg.size()) +
                      " generators): " + zmod::canonicalize(zmod::cokernel(post).group()).group.describe() +
                      " obstruction group";
  }
  return out;
}

}  // namespace mackeyalg::derived

#endif  // MACKEYALG_DERIVED_RESOLUTION_HPP
