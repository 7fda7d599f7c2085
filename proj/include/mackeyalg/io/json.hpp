#ifndef MACKEYALG_IO_JSON_HPP
#define MACKEYALG_IO_JSON_HPP

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "mackeyalg/burnside/ring.hpp"
#include "mackeyalg/derived/derived.hpp"
#include "mackeyalg/gdata/gset.hpp"
#include "mackeyalg/graded/module.hpp"
#include "mackeyalg/mackey/functor.hpp"
#include "mackeyalg/monoidal/signs.hpp"

namespace mackeyalg::io {

/// std::map backed, so keys are always emitted in sorted order.
using Json = nlohmann::json;

using burnside::Context;
using gdata::FiniteGroup;
using gdata::GSet;
using mackey::MackeyFunctor;
using monoidal::GradingGroup;
using monoidal::SignTable;
using zmod::AbGroup;
using zmod::GroupHom;
using zmod::IntMatrix;
using zmod::Integer;
using zmod::IntVector;

/// Canonical text of a document: sorted keys, two space indent, trailing newline.
inline std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string digest(const Json& j) { return hex(fnv1a(j.dump())); }

// ---------------------------------------------------------------------------
// Integers are strings so that no value is ever rounded by a reader.

inline Json to_json(const Integer& x) { return x.str(); }

inline Integer integer_from(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (!j.is_string()) throw ValidationError("expected an integer string, got " + j.dump());
  const std::string s = j.get<std::string>();
  const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
    throw ValidationError("malformed integer '" + s + "'");
  return Integer(s);
}

inline long small_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<long>();
}

inline Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (auto& x : v) out.push_back(to_json(x));
  return out;
}

inline IntVector vector_from(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of integers");
  IntVector v;
  for (auto& x : j) v.push_back(integer_from(x));
  return v;
}

/// Rows of the matrix.
inline Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline IntMatrix matrix_from(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw ValidationError("matrix needs " + std::to_string(rows) + " rows");
  std::vector<IntVector> r;
  for (auto& row : j) {
    r.push_back(vector_from(row));
    if (r.back().size() != cols) throw ValidationError("matrix row needs " + std::to_string(cols) + " entries");
  }
  return IntMatrix::from_rows(r, cols);
}

// ---------------------------------------------------------------------------
// Groups and G-sets.

inline Json to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"table", g.table()}, {"names", g.names()}};
}

/// Accepts the table form or {"degree": n, "generators": [permutations]}.
inline FiniteGroup group_from(const Json& j) {
  if (!j.is_object()) throw ValidationError("group document must be an object");
  if (j.contains("generators")) {
    const long n = small_from(j.at("degree"), "degree");
    std::vector<gdata::Permutation> gens;
    for (auto& p : j.at("generators")) gens.push_back(p.get<gdata::Permutation>());
    return gdata::permutation_group(gens, static_cast<int>(n));
  }
  if (!j.contains("table")) throw ValidationError("group document needs a table or generators");
  auto table = j.at("table").get<std::vector<std::vector<gdata::Elem>>>();
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  if (j.contains("order") && small_from(j.at("order"), "order") != static_cast<long>(table.size()))
    throw ValidationError("group order does not match its table");
  return FiniteGroup(std::move(table), std::move(names));
}

inline Json to_json(const GSet& x) {
  Json act = Json::object();
  for (std::size_t g = 0; g < x.action().size(); ++g) act[std::to_string(g)] = x.action()[g];
  return {{"points", x.size()}, {"action", act}};
}

/// The action may be given on a generating set of elements only.
inline GSet gset_from(const FiniteGroup& g, const Json& j) {
  const long n = small_from(j.at("points"), "points");
  std::map<gdata::Elem, std::vector<int>> given;
  for (auto& [k, v] : j.at("action").items()) given[std::stoi(k)] = v.get<std::vector<int>>();
  return GSet::from_partial(g, static_cast<int>(n), given);
}

// ---------------------------------------------------------------------------
// Abelian groups, Mackey functors.

/// Cyclic orders of the generators, 0 for Z.
inline Json to_json(const AbGroup& a) { return to_json(a.orders); }

inline AbGroup abgroup_from(const Json& j) {
  IntVector o = vector_from(j);
  for (auto& x : o)
    if (x < 0 || x == 1) throw ValidationError("cyclic orders must be 0 or at least 2");
  return AbGroup(std::move(o));
}

/// Rank and torsion coefficients of the canonical form.
inline Json summary(const AbGroup& a) {
  const AbGroup c = zmod::canonicalize(a).group;
  Json tors = Json::array();
  for (auto& o : c.orders)
    if (o != 0) tors.push_back(to_json(o));
  return {{"rank", c.free_rank()}, {"torsion", tors}};
}

inline std::string map_key(const burnside::GContext& c, int f) {
  const auto& m = c.map(f);
  return std::to_string(m.from) + ">" + std::to_string(m.to) + "@" + std::to_string(m.point);
}

inline int map_from_key(const burnside::GContext& c, const std::string& key) {
  int from = 0, to = 0, point = 0;
  char a = 0, b = 0;
  if (std::sscanf(key.c_str(), "%d%c%d%c%d", &from, &a, &to, &b, &point) != 5 || a != '>' || b != '@')
    throw ValidationError("malformed orbit map key '" + key + "', expected from>to@point");
  const int nc = static_cast<int>(c.num_classes());
  if (from < 0 || to < 0 || from >= nc || to >= nc) throw ValidationError("orbit map key '" + key + "' names an unknown class");
  const int f = c.find_map(from, to, point);
  if (f < 0) throw ValidationError("orbit map key '" + key + "' is not an equivariant map");
  return f;
}

/// Values per subgroup class and res/tr matrices for every orbit map,
/// keyed by from>to@point.
inline Json to_json(const MackeyFunctor& m) {
  const auto& c = m.ctx();
  Json out;
  out["values"] = Json::array();
  for (auto& v : m.values()) out["values"].push_back(to_json(v));
  out["res"] = Json::object();
  out["tr"] = Json::object();
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    if (c.is_identity(f)) continue;
    out["res"][map_key(c, f)] = to_json(m.res(f).mat);
    out["tr"][map_key(c, f)] = to_json(m.tr(f).mat);
  }
  return out;
}

/// Only generating structure maps need to be given; the rest follow by
/// composition.
inline MackeyFunctor functor_from(const Context& ctx, const Json& j) {
  const auto& c = *ctx;
  std::vector<AbGroup> values;
  for (auto& v : j.at("values")) values.push_back(abgroup_from(v));
  if (values.size() != c.num_classes())
    throw ValidationError("Mackey functor needs " + std::to_string(c.num_classes()) + " values");
  std::map<int, GroupHom> res, tr;
  auto read = [&](const char* key, std::map<int, GroupHom>& into, bool restriction) {
    if (!j.contains(key)) return;
    for (auto& [k, mat] : j.at(key).items()) {
      const int f = map_from_key(c, k);
      const AbGroup& src = restriction ? values[c.map(f).to] : values[c.map(f).from];
      const AbGroup& tgt = restriction ? values[c.map(f).from] : values[c.map(f).to];
      into.emplace(f, GroupHom(src, tgt, matrix_from(mat, tgt.ngens(), src.ngens())));
    }
  };
  read("res", res, true);
  read("tr", tr, false);
  return MackeyFunctor::from_generators(ctx, std::move(values), res, tr);
}

/// Raw form: every map given, no closure, so that check_mackey sees the
/// data exactly as written.
inline MackeyFunctor functor_from_raw(const Context& ctx, const Json& j) {
  const auto& c = *ctx;
  std::vector<AbGroup> values;
  for (auto& v : j.at("values")) values.push_back(abgroup_from(v));
  if (values.size() != c.num_classes())
    throw ValidationError("Mackey functor needs " + std::to_string(c.num_classes()) + " values");
  std::vector<GroupHom> res, tr;
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    const auto& m = c.map(f);
    const AbGroup &a = values[m.from], &b = values[m.to];
    if (c.is_identity(f)) {
      res.push_back(GroupHom::identity(a));
      tr.push_back(GroupHom::identity(a));
      continue;
    }
    const std::string key = map_key(c, f);
    if (!j.at("res").contains(key) || !j.at("tr").contains(key))
      throw ValidationError("raw Mackey functor is missing the maps along " + key);
    res.emplace_back(b, a, matrix_from(j.at("res").at(key), a.ngens(), b.ngens()));
    tr.emplace_back(a, b, matrix_from(j.at("tr").at(key), b.ngens(), a.ngens()));
  }
  return MackeyFunctor(ctx, std::move(values), std::move(res), std::move(tr));
}

inline bool is_complete(const burnside::GContext& c, const Json& j) {
  for (int f = 0; f < static_cast<int>(c.num_maps()); ++f) {
    if (c.is_identity(f)) continue;
    const std::string key = map_key(c, f);
    if (!j.contains("res") || !j.contains("tr") || !j["res"].contains(key) || !j["tr"].contains(key)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Gradings and sign tables. A Burnside unit is written by its marks.

inline Json to_json(const GradingGroup& g) { return {{"labels", g.labels}, {"fixed_dim", g.fixed_dim}}; }

inline GradingGroup grading_from(const Json& j) {
  return {j.at("labels").get<std::vector<std::string>>(), j.at("fixed_dim").get<std::vector<std::vector<long>>>()};
}

inline Json unit_marks(std::size_t classes, monoidal::Unit u) {
  Json out = Json::array();
  for (std::size_t k = 0; k < classes; ++k) out.push_back((u >> k) & 1 ? -1 : 1);
  return out;
}

inline monoidal::Unit unit_from_marks(const Json& j) {
  monoidal::Unit u = 0;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const long m = small_from(j[k], "unit mark");
    if (m != 1 && m != -1) throw ValidationError("unit marks must be 1 or -1");
    if (m == -1) u |= 1ul << k;
  }
  return u;
}

inline Json to_json(const SignTable& s) {
  const std::size_t nc = s.context()->num_classes(), r = s.grading().rank();
  Json sigma = Json::array();
  for (std::size_t i = 0; i < r; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < r; ++j) row.push_back(unit_marks(nc, s.base()[i][j]));
    sigma.push_back(row);
  }
  return {{"grading", to_json(s.grading())}, {"sigma", sigma}};
}

/// Without "sigma" the table takes the default values.
inline SignTable signs_from(const Context& ctx, const Json& j) {
  GradingGroup g = grading_from(j.at("grading"));
  if (!j.contains("sigma")) return SignTable(ctx, std::move(g));
  std::vector<std::vector<monoidal::Unit>> base;
  for (auto& row : j.at("sigma")) {
    base.emplace_back();
    for (auto& u : row) base.back().push_back(unit_from_marks(u));
  }
  return SignTable(ctx, std::move(g), std::move(base));
}

// ---------------------------------------------------------------------------
// Results.

inline Json degree_json(const monoidal::Degree& d) { return d; }

/// Per level rank and torsion, plus a digest of the full functor.
inline Json functor_summary(const MackeyFunctor& m) {
  Json levels = Json::array();
  for (std::size_t k = 0; k < m.num_classes(); ++k) {
    Json l = summary(m.value(k));
    l["class"] = m.ctx().lattice().class_label(k);
    levels.push_back(l);
  }
  return {{"levels", levels}, {"digest", digest(to_json(m))}};
}

/// Table of (s, degree) entries; zero entries are omitted.
inline Json to_json(const derived::BigradedMackey& b) {
  Json out = Json::array();
  for (auto& [s, g] : b.rows)
    for (auto& d : g.support()) {
      Json e = functor_summary(g.layer(d));
      e["s"] = s;
      e["degree"] = degree_json(d);
      out.push_back(e);
    }
  return out;
}

}  // namespace mackeyalg::io

#endif  // MACKEYALG_IO_JSON_HPP
