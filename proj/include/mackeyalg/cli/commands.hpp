#ifndef MACKEYALG_CLI_COMMANDS_HPP
#define MACKEYALG_CLI_COMMANDS_HPP

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mackeyalg/cli/fixtures.hpp"
#include "mackeyalg/cli/workspace.hpp"
#include "mackeyalg/graded/over_ring.hpp"
#include "mackeyalg/mackey/hom.hpp"
#include "mackeyalg/specseq/specseq.hpp"

namespace mackeyalg::cli {

using graded::GradedModule;
using graded::Ring;
using graded::Signs;
using monoidal::Degree;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

struct Options {
  std::string workspace;
  bool no_cache = false;
  std::string json_out;
  std::optional<long> smax, window, rmax;
  std::optional<unsigned> seed;
};

/// Resolves references through the workspace and records the digest of
/// every document read.
class Loader {
 public:
  explicit Loader(Workspace& ws) : ws_(ws) {}

  const Json& inputs() const { return inputs_; }

  void record(const std::string& kind, const std::string& ref, const Json& doc) {
    inputs_[kind + ":" + ref] = io::digest(doc);
  }

  Json document(const std::string& kind, const std::string& ref) {
    Json doc = ws_.document(kind, ref);
    record(kind, ref, doc);
    return doc;
  }

  burnside::Context group(const std::string& ref) {
    document("groups", ref);
    return ws_.context(Json(ref));
  }

  burnside::Context group_of(const Json& doc) {
    if (!doc.contains("group")) throw ValidationError("document does not name its group");
    if (doc["group"].is_string()) return group(doc["group"].get<std::string>());
    return ws_.context(doc["group"]);
  }

  /// With `raw` the structure maps are taken exactly as written when the
  /// document lists all of them.
  mackey::MackeyFunctor functor(const std::string& ref, bool raw = false) {
    Json doc = document("functors", ref);
    auto ctx = group_of(doc);
    if (raw && io::is_complete(*ctx, doc)) return io::functor_from_raw(ctx, doc);
    return io::functor_from(ctx, doc);
  }

  monoidal::SignTable signs(const std::string& ref) {
    Json doc = document("signs", ref);
    return io::signs_from(group_of(doc), doc);
  }

  Signs integer_signs(const burnside::Context& ctx) {
    auto it = signs_.find(ctx.get());
    if (it == signs_.end()) it = signs_.emplace(ctx.get(), graded::integer_signs(ctx)).first;
    return it->second;
  }

  /// Modules over the same ring document share one ring object.
  Ring ring(const burnside::Context& ctx, const Json& r) {
    const std::string key = std::to_string(reinterpret_cast<std::uintptr_t>(ctx.get())) + r.dump();
    auto it = rings_.find(key);
    if (it != rings_.end()) return it->second;
    const std::string kind = r.value("kind", "");
    Ring R;
    if (kind == "unit")
      R = graded::unit_ring(integer_signs(ctx));
    else if (kind == "constant")
      R = graded::constant_ring(integer_signs(ctx), static_cast<long>(io::integer_from(r.at("order"))));
    else
      throw ValidationError("unknown ring kind '" + kind + "'");
    rings_.emplace(key, R);
    return R;
  }

  GradedModule module(const std::string& ref) {
    Json doc = document("modules", ref);
    auto ctx = group_of(doc);
    Ring R = ring(ctx, doc.at("ring"));
    const std::string action = doc.value("action", "");
    const Degree d = graded::degree_of(doc.value("degree", 0L));
    GradedModule out;
    if (action == "free") {
      std::vector<graded::FreeGenerator> gens;
      for (auto& k : doc.at("orbits")) {
        const long cls = io::small_from(k, "orbit class");
        if (cls < 0 || cls >= static_cast<long>(ctx->num_classes())) throw ValidationError("free module: unknown class");
        gens.push_back({d, static_cast<std::size_t>(cls)});
      }
      return graded::with_both_sides(graded::free_module_on(R, gens).module());
    }
    auto m = graded::concentrated(R->r.signs, d, functor(doc.at("functor").get<std::string>()));
    if (m.context() != ctx) throw ValidationError("module and functor live over different groups");
    if (action == "burnside") {
      if (doc.at("ring").value("kind", "") != "unit") throw ValidationError("burnside action needs the unit ring");
      return graded::burnside_module(R, m);
    }
    if (action == "scalar") return graded::scalar_module(R, m);
    throw ValidationError("unknown module action '" + action + "'");
  }

 private:
  Workspace& ws_;
  Json inputs_ = Json::object();
  std::map<const burnside::GContext*, Signs> signs_;
  std::map<std::string, Ring> rings_;
};

// ---------------------------------------------------------------------------
// Report bodies.

struct Outcome {
  Json result;
  bool ok = true;
};

inline Json graded_summary(const graded::GradedMackey& g) {
  Json out = Json::array();
  for (auto& d : g.support()) {
    Json e = io::functor_summary(g.layer(d));
    e["degree"] = io::degree_json(d);
    out.push_back(e);
  }
  return out;
}

inline Json labels(const burnside::GContext& c) {
  Json out = Json::array();
  for (std::size_t k = 0; k < c.num_classes(); ++k) out.push_back(c.lattice().class_label(k));
  return out;
}

inline Outcome burnside_marks(const burnside::GContext& c) {
  return {{{"classes", labels(c)}, {"table_of_marks", io::to_json(burnside::table_of_marks(c))}}};
}

inline Outcome burnside_units(const burnside::GContext& c) {
  Json us = Json::array();
  bool ok = true;
  const auto one = burnside::ring_one(c);
  for (auto& u : burnside::units(c)) {
    const bool sq = burnside::ring_multiply(c, u, u) == one;
    ok = ok && sq;
    us.push_back({{"coefficients", io::to_json(u)}, {"marks", io::to_json(burnside::marks(c, u))}, {"square_is_one", sq}});
  }
  return {{{"classes", labels(c)}, {"count", us.size()}, {"units", us}}, ok};
}

/// Products of orbit basis elements [G/H_i][G/H_j].
inline Outcome burnside_table(const burnside::GContext& c) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.num_classes(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < c.num_classes(); ++j)
      row.push_back(io::to_json(burnside::ring_multiply(c, burnside::ring_orbit(c, i), burnside::ring_orbit(c, j))));
    rows.push_back(row);
  }
  return {{{"classes", labels(c)}, {"products", rows}}};
}

inline Outcome mackey_check(const mackey::MackeyFunctor& m) {
  auto rep = mackey::check_mackey(m);
  return {{{"ok", rep.ok()}, {"violations", rep.violations}}, rep.ok()};
}

inline Outcome mackey_eval(const mackey::MackeyFunctor& m, const std::optional<gdata::GSet>& x) {
  Json out = io::functor_summary(m);
  if (x) out["value"] = io::summary(m.value_at(m.ctx().intern(*x)));
  return {out};
}

inline Outcome hom_report(const mackey::MackeyFunctor& m, const mackey::MackeyFunctor& n) {
  if (m.context() != n.context()) throw ValidationError("mackey hom: functors over different groups");
  return {{{"hom", io::summary(mackey::mackey_hom(m, n).group())}}};
}

inline Json sigma_entry(const burnside::GContext& c, const monoidal::SignTable& s, const Degree& a, const Degree& b) {
  return {{"a", a}, {"b", b}, {"coefficients", io::to_json(s.sigma(a, b))}, {"marks", io::to_json(burnside::marks(c, s.sigma(a, b)))}};
}

/// sigma on label pairs, and antisymmetry and bilinearity on every triple of
/// degrees in [-w, w].
inline Outcome signs_sigma(const monoidal::SignTable& s, long w) {
  const auto& c = *s.context();
  const std::size_t r = s.grading().rank();
  Json table = Json::array();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) table.push_back(sigma_entry(c, s, s.grading().generator(i), s.grading().generator(j)));
  monoidal::DegreeWindow win = monoidal::DegreeWindow::symmetric(r, w);
  const auto one = burnside::ring_one(c);
  bool anti = true, bilinear = true;
  using monoidal::operator+;
  for (std::size_t a = 0; a < win.size(); ++a)
    for (std::size_t b = 0; b < win.size(); ++b) {
      const Degree da = win.degree(a), db = win.degree(b);
      anti = anti && burnside::ring_multiply(c, s.sigma(da, db), s.sigma(db, da)) == one;
      for (std::size_t g = 0; g < win.size(); ++g) {
        const Degree dg = win.degree(g);
        bilinear = bilinear && s.sigma(da + db, dg) == burnside::ring_multiply(c, s.sigma(da, dg), s.sigma(db, dg));
      }
    }
  return {{{"labels", s.grading().labels}, {"sigma", table}, {"window", w}, {"antisymmetric", anti}, {"bilinear", bilinear}},
          anti && bilinear};
}

inline Outcome signs_cocycle_check(const monoidal::SignTable& s, long w) {
  monoidal::DegreeWindow win = monoidal::DegreeWindow::nonnegative(s.grading().rank(), w);
  auto a = monoidal::cocycle_of(s, monoidal::lexicographic_f_table(win));
  const bool cocycle = monoidal::is_cocycle(a);
  return {{{"window", w}, {"is_cocycle", cocycle}, {"identically_one", a.is_trivial()}}, cocycle};
}

/// Perturbs the lexicographic f-table by random normalized 2-cochains and
/// solves for them again over F2.
inline Outcome signs_trivialize(const monoidal::SignTable& s, long w, unsigned seed, int trials) {
  monoidal::DegreeWindow win = monoidal::DegreeWindow::nonnegative(s.grading().rank(), w);
  const std::size_t bits = s.context()->num_classes();
  auto lex = monoidal::lexicographic_f_table(win);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<monoidal::Unit> u(0, (1ul << bits) - 1);
  Json runs = Json::array();
  bool ok = true;
  for (int t = 0; t < trials; ++t) {
    monoidal::Cochain2 d(win);
    const std::size_t z = win.zero_index();
    for (std::size_t a = 0; a < win.size(); ++a)
      for (std::size_t b = 0; b < win.size(); ++b)
        if (a != z && b != z && d.in_domain(a, b)) d.at(a, b) = u(rng);
    auto coc = monoidal::cocycle_of(s, monoidal::perturb(lex, d));
    auto res = monoidal::trivialize_with_ranks(coc, bits);
    const bool recovered = res.delta && monoidal::coboundary(*res.delta) == coc;
    ok = ok && recovered;
    runs.push_back({{"trial", t}, {"recovered", recovered}, {"rank", res.ranks.rank}});
  }
  return {{{"window", w}, {"seed", seed}, {"trials", runs}}, ok};
}

inline Outcome module_check(const GradedModule& m) {
  auto f = graded::module_failures(m);
  return {{{"ok", f.empty()}, {"failures", f}, {"layers", graded_summary(m.m)}}, f.empty()};
}

inline std::vector<Degree> window_degrees(long w) {
  std::vector<Degree> out;
  for (long t = -w; t <= w; ++t) out.push_back(graded::degree_of(t));
  return out;
}

inline Outcome module_resolve(const GradedModule& m, long smax, unsigned seed) {
  auto r = derived::projective_resolution(m, static_cast<std::size_t>(smax), std::nullopt, seed);
  auto f = derived::resolution_failures(r);
  Json stages = Json::array();
  for (std::size_t s = 0; s < r.stages.size(); ++s) {
    Json gens = Json::array();
    for (auto& g : r.stages[s].gens) gens.push_back({{"degree", g.tau}, {"class", r.module.ctx().lattice().class_label(g.cls)}});
    stages.push_back({{"s", s}, {"generators", gens}});
  }
  return {{{"stages", stages}, {"exact", f.empty()}, {"failures", f}}, f.empty()};
}

/// Products Ext^q x Ext^p -> Ext^{p+q} of basis classes at G/G in internal
/// degree 0, for p + q <= s_max.
inline Outcome module_yoneda(const GradedModule& m, long smax, std::optional<long> window) {
  std::optional<std::vector<Degree>> win;
  if (window) win = window_degrees(*window);
  auto e = derived::mext(m, m, static_cast<std::size_t>(smax), win);
  const Degree d0 = graded::degree_of(0);
  const std::size_t top = m.ctx().num_classes() - 1;
  Json products = Json::array();
  for (long p = 0; p <= smax; ++p)
    for (long q = 0; p + q <= smax; ++q) {
      const zmod::AbGroup gp = e.groups.at(p, d0).value(top), gq = e.groups.at(q, d0).value(top);
      for (std::size_t i = 0; i < gp.ngens(); ++i)
        for (std::size_t j = 0; j < gq.ngens(); ++j) {
          auto prod = derived::yoneda_pairing(e, e, e, static_cast<std::size_t>(q), d0, gq.basis_vector(j),
                                              static_cast<std::size_t>(p), d0, gp.basis_vector(i));
          products.push_back(Json{{"p", p}, {"q", q}, {"a", i}, {"b", j}, {"product", io::to_json(prod)}});
        }
    }
  return {{{"ext", io::to_json(e.groups)}, {"products", products}}};
}

// ---------------------------------------------------------------------------
// Spectral sequence reports.

inline Json page_json(const specseq::Page& pg) {
  Json entries = Json::array();
  for (auto& [pq, e] : pg.entries)
    for (auto& d : e.result.support()) {
      Json x = io::functor_summary(e.result.layer(d));
      x["p"] = pq.first;
      x["q"] = pq.second;
      x["degree"] = io::degree_json(d);
      entries.push_back(x);
    }
  Json diffs = Json::array();
  for (auto& [pq, f] : pg.d)
    for (auto& [t, m] : f.comps)
      if (!m.is_zero()) diffs.push_back({{"p", pq.first}, {"q", pq.second}, {"degree", io::degree_json(t)}});
  return {{"r", pg.r}, {"entries", entries}, {"differentials", diffs}};
}

inline Json certificate(const specseq::SpectralSequence& ss, const specseq::ConvergenceReport& rep) {
  Json c{{"converges", rep.converges()},
         {"target_matches", rep.target_matches},
         {"graded_matches", rep.graded_matches},
         {"edge_iso", rep.edge_iso},
         {"mismatches", rep.mismatches},
         {"total_degrees", {ss.n_lo, ss.n_hi}},
         {"scope", "strong convergence of the truncated filtration only"}};
  c["collapse_page"] = rep.collapse_page ? Json(*rep.collapse_page) : Json(nullptr);
  return c;
}

inline Json ss_json(const specseq::SpectralSequence& ss, const specseq::ConvergenceReport& rep) {
  Json pages = Json::array();
  for (auto& pg : ss.pages) pages.push_back(page_json(pg));
  return {{"pages", pages}, {"certificate", certificate(ss, rep)}, {"failures", ss.failures}};
}

inline Outcome ss_tor(const GradedModule& n, const GradedModule& m, long smax, long rmax) {
  const auto s = static_cast<std::size_t>(smax);
  auto q = derived::projective_resolution(n, s + 1, graded::Side::right);
  auto p = derived::projective_resolution(m, s + 1, graded::Side::left);
  auto b = specseq::bicomplex_from_resolutions(q, p, s + 1);
  auto tor = derived::mtor_with(n, p, s);
  auto by_m = specseq::pages(b.filtration(false), rmax, std::make_pair(0L, smax));
  auto by_n = specseq::pages(b.filtration(true), rmax, std::make_pair(0L, smax));
  auto rm = specseq::edge_and_convergence(by_m, tor.groups);
  auto rn = specseq::edge_and_convergence(by_n, tor.groups);
  const bool agree = derived::same_groups(specseq::total_infinity(by_m), specseq::total_infinity(by_n));
  Json out{{"target", io::to_json(tor.groups)},
           {"filtration_second", ss_json(by_m, rm)},
           {"filtration_first", {{"certificate", certificate(by_n, rn)}, {"failures", by_n.failures}}},
           {"abutments_agree", agree}};
  return {out, rm.converges() && rn.converges() && agree && by_m.failures.empty() && by_n.failures.empty()};
}

inline Outcome ss_ext(const GradedModule& l, const GradedModule& m, long smax, long rmax, std::optional<long> window) {
  std::optional<std::vector<Degree>> win;
  if (window) win = window_degrees(*window);
  auto e = derived::mext(l, m, static_cast<std::size_t>(smax), win);
  auto es = specseq::ext_spectral_sequence(e, rmax);
  auto rep = specseq::edge_and_convergence(es.ss, specseq::ext_target(e));
  return {{{"target", io::to_json(e.groups)}, {"filtration_degree", ss_json(es.ss, rep)}},
          rep.converges() && es.ss.failures.empty()};
}

// ---------------------------------------------------------------------------
// Driver.

inline std::string join_words(const std::vector<std::string>& w) {
  std::string s;
  for (auto& x : w) s += (s.empty() ? "" : " ") + x;
  return s;
}

/// Runs one command line. Reports go to `out` (or --json-out), messages to
/// `err`; the return value is the exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact homological algebra of Mackey functors", "mackeyalg"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("MACKEYALG_WORKSPACE")) o.workspace = env;
  app.add_option("--workspace", o.workspace, "workspace root (default $MACKEYALG_WORKSPACE or .)");
  app.add_flag("--no-cache", o.no_cache, "recompute and bypass the result cache");
  app.add_option("--json-out,--report", o.json_out, "write the report to a file");
  app.add_option("--smax", o.smax, "resolution degree bound");
  app.add_option("--window", o.window, "internal degree window [-w, w]");
  app.add_option("--rmax", o.rmax, "last page");
  app.add_option("--seed", o.seed, "seed for randomized choices");

  std::vector<std::string> words;
  std::string group_ref, signs_ref, gset_ref, mode;
  std::vector<std::string> refs;
  std::optional<long> trials;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* sc = parent->add_subcommand(name, help);
    sc->callback([&words, parent, name] { words = {parent->get_name(), name}; });
    return sc;
  };
  auto group_cmd = [&](const std::string& name, const std::string& help) {
    auto* sc = app.add_subcommand(name, help);
    sc->require_subcommand(1);
    return sc;
  };

  auto* fixtures = group_cmd("fixtures", "shipped fixture corpus");
  auto* install = leaf(fixtures, "install", "populate an empty workspace");
  install->add_option("dir", o.workspace, "target directory");

  auto* bs = group_cmd("burnside", "Burnside ring");
  for (const char* n : {"marks", "units", "table"}) leaf(bs, n, std::string("Burnside ") + n)->add_option("--group", group_ref)->required();

  auto* mk = group_cmd("mackey", "Mackey functors");
  leaf(mk, "check", "verify the Mackey axioms")->add_option("functor", refs)->required()->expected(1);
  auto* ev = leaf(mk, "eval", "values and digest");
  ev->add_option("functor", refs)->required()->expected(1);
  ev->add_option("--gset", gset_ref, "G-set file to evaluate at");
  leaf(mk, "hom", "group of natural transformations")->add_option("functors", refs)->required()->expected(2);

  auto* sg = group_cmd("signs", "sign tables");
  leaf(sg, "sigma", "sigma and its identities")->add_option("--signs", signs_ref)->required();
  leaf(sg, "cocycle-check", "cocycle of the lexicographic f-table")->add_option("--signs", signs_ref)->required();
  auto* tv = leaf(sg, "trivialize", "recover random perturbations over F2");
  tv->add_option("--signs", signs_ref)->required();
  tv->add_option("--trials", trials);

  auto* md = group_cmd("module", "graded modules over a ring");
  leaf(md, "check", "module axioms")->add_option("module", refs)->required()->expected(1);
  leaf(md, "box", "box product over R")->add_option("modules", refs)->required()->expected(2);
  leaf(md, "func", "internal hom over R")->add_option("modules", refs)->required()->expected(2);
  leaf(md, "resolve", "projective resolution")->add_option("module", refs)->required()->expected(1);
  leaf(md, "tor", "MTor(N, M)")->add_option("modules", refs)->required()->expected(2);
  leaf(md, "ext", "MExt(L, M)")->add_option("modules", refs)->required()->expected(2);
  leaf(md, "yoneda", "Yoneda products on MExt(M, M)")->add_option("module", refs)->required()->expected(1);

  auto* ss = group_cmd("ss", "spectral sequences");
  auto* ssrun = leaf(ss, "run", "pages, collapse and convergence");
  ssrun->add_option("--mode", mode)->required()->check(CLI::IsMember({"tor", "ext"}));
  ssrun->add_option("modules", refs)->required()->expected(2);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mackeyalg: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (words == std::vector<std::string>{"fixtures", "install"}) {
      install_fixtures(o.workspace.empty() ? fs::path(".") : fs::path(o.workspace));
      return kOk;
    }
    Workspace ws(o.workspace.empty() ? fs::path(".") : fs::path(o.workspace));
    Loader ld(ws);
    auto need = [&](const std::optional<long>& v, const char* flag) {
      if (!v) throw MissingTruncation(join_words(words) + " needs " + flag);
      if (*v < 0) throw MissingTruncation(std::string(flag) + " must be nonnegative");
      return *v;
    };
    const unsigned seed = o.seed.value_or(0);
    Json params = Json::object();
    std::function<Outcome()> compute;

    const std::string cmd = join_words(words);
    if (words[0] == "burnside") {
      auto ctx = ld.group(group_ref);
      if (words[1] == "marks") compute = [ctx] { return burnside_marks(*ctx); };
      if (words[1] == "units") compute = [ctx] { return burnside_units(*ctx); };
      if (words[1] == "table") compute = [ctx] { return burnside_table(*ctx); };
    } else if (words[0] == "mackey") {
      if (words[1] == "check") {
        auto m = ld.functor(refs[0], true);
        compute = [m] { return mackey_check(m); };
      } else if (words[1] == "eval") {
        auto m = ld.functor(refs[0]);
        std::optional<gdata::GSet> x;
        if (!gset_ref.empty()) {
          Json doc = read_json(gset_ref);
          ld.record("gset", gset_ref, doc);
          x = io::gset_from(m.ctx().group(), doc);
        }
        compute = [m, x] { return mackey_eval(m, x); };
      } else {
        auto a = ld.functor(refs[0]), b = ld.functor(refs[1]);
        compute = [a, b] { return hom_report(a, b); };
      }
    } else if (words[0] == "signs") {
      auto s = ld.signs(signs_ref);
      const long w = o.window.value_or(words[1] == "sigma" ? 1 : 2);
      params["window"] = w;
      if (words[1] == "sigma") compute = [s, w] { return signs_sigma(s, w); };
      if (words[1] == "cocycle-check") compute = [s, w] { return signs_cocycle_check(s, w); };
      if (words[1] == "trivialize") {
        const int n = static_cast<int>(trials.value_or(4));
        params["seed"] = seed;
        params["trials"] = n;
        compute = [s, w, seed, n] { return signs_trivialize(s, w, seed, n); };
      }
    } else if (words[0] == "module") {
      std::vector<GradedModule> ms;
      for (auto& r : refs) ms.push_back(ld.module(r));
      const std::string sub = words[1];
      if (sub == "check") compute = [ms] { return module_check(ms[0]); };
      if (sub == "box")
        compute = [ms] { return Outcome{{{"box", graded_summary(graded::box_over_R(ms[0], ms[1]).result)}}}; };
      if (sub == "func") {
        const long w = need(o.window, "--window");
        params["window"] = w;
        compute = [ms, w] {
          return Outcome{{{"func", graded_summary(graded::func_over_R(ms[0], ms[1], window_degrees(w)).result)}}};
        };
      }
      if (sub == "resolve" || sub == "tor" || sub == "ext" || sub == "yoneda") {
        const long s = need(o.smax, "--smax");
        params["smax"] = s;
        params["seed"] = seed;
        if (o.window) params["window"] = *o.window;
        auto win = o.window;
        if (sub == "resolve") compute = [ms, s, seed] { return module_resolve(ms[0], s, seed); };
        if (sub == "tor")
          compute = [ms, s, seed] {
            auto t = derived::mtor(ms[0], ms[1], static_cast<std::size_t>(s), seed);
            return Outcome{{{"tor", io::to_json(t.groups)}}};
          };
        if (sub == "ext")
          compute = [ms, s, seed, win] {
            std::optional<std::vector<Degree>> wd;
            if (win) wd = window_degrees(*win);
            auto e = derived::mext(ms[0], ms[1], static_cast<std::size_t>(s), wd, seed);
            return Outcome{{{"ext", io::to_json(e.groups)}}};
          };
        if (sub == "yoneda") compute = [ms, s, win] { return module_yoneda(ms[0], s, win); };
      }
    } else if (words[0] == "ss") {
      const long s = need(o.smax, "--smax");
      const long r = need(o.rmax, "--rmax");
      if (r < 2) throw MissingTruncation("--rmax must be at least 2");
      params["smax"] = s;
      params["rmax"] = r;
      params["mode"] = mode;
      if (o.window) params["window"] = *o.window;
      auto a = ld.module(refs[0]), b = ld.module(refs[1]);
      auto win = o.window;
      if (mode == "tor")
        compute = [a, b, s, r] { return ss_tor(a, b, s, r); };
      else
        compute = [a, b, s, r, win] { return ss_ext(a, b, s, r, win); };
    }
    if (!compute) throw MissingTruncation("unknown command " + cmd);

    Json head{{"command", cmd}, {"parameters", params}, {"inputs", ld.inputs()}};
    const std::string key = io::digest(head);
    std::string text;
    std::optional<std::string> cached;
    if (!o.no_cache) cached = ws.cache_get(key);
    bool ok = true;
    if (cached) {
      text = *cached;
      ok = Json::parse(text).at("ok").get<bool>();
    } else {
      Outcome res = compute();
      Json report = head;
      report["result"] = res.result;
      report["ok"] = res.ok;
      ok = res.ok;
      text = io::canonical(report);
      if (!o.no_cache) ws.cache_put(key, text);
    }
    if (o.json_out.empty())
      out << text;
    else
      write_text(o.json_out, text);
    if (!ok) err << "mackeyalg: " << cmd << ": validation failed\n";
    return ok ? kOk : kFailed;
  } catch (const MissingTruncation& e) {
    err << "mackeyalg: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "mackeyalg: " << e.what() << "\n";
    return kFailed;
  } catch (const Json::exception& e) {
    err << "mackeyalg: malformed document: " << e.what() << "\n";
    return kFailed;
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace mackeyalg::cli

#endif  // MACKEYALG_CLI_COMMANDS_HPP
