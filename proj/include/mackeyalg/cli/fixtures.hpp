#ifndef MACKEYALG_CLI_FIXTURES_HPP
#define MACKEYALG_CLI_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "mackeyalg/cli/workspace.hpp"
#include "mackeyalg/mackey/constructions.hpp"

namespace mackeyalg::cli {

inline std::vector<std::pair<std::string, gdata::FiniteGroup>> fixture_groups() {
  return {{"trivial", gdata::trivial_group()},
          {"c2", gdata::cyclic_group(2)},
          {"c3", gdata::cyclic_group(3)},
          {"s3", gdata::symmetric_group(3)}};
}

inline Json module_doc(const std::string& group, const Json& ring, const std::string& action, const Json& arg) {
  Json m{{"group", group}, {"ring", ring}, {"action", action}, {"degree", 0}};
  if (action == "free")
    m["orbits"] = arg;
  else
    m["functor"] = arg;
  return m;
}

/// Writes the shipped corpus into an empty (or missing) directory.
inline void install_fixtures(const fs::path& root) {
  if (fs::exists(root) && !fs::is_empty(root))
    throw ValidationError("fixtures install: " + root.string() + " is not empty");
  fs::create_directories(root);
  Workspace ws(root);
  const Json unit{{"kind", "unit"}};
  for (auto& [name, g] : fixture_groups()) {
    ws.add("groups", name, "groups/" + name + ".json", io::to_json(g));
    auto ctx = burnside::GContext::make(g);
    std::vector<std::pair<std::string, mackey::MackeyFunctor>> functors{
        {"burnside", mackey::burnside_functor(ctx)},
        {"z", mackey::constant_functor(ctx, zmod::AbGroup::free(1))},
        {"z2", mackey::constant_functor(ctx, zmod::AbGroup::cyclic(2))},
        {"free_e", mackey::representable(ctx, ctx->orbit_object(0))}};
    if (name == "trivial") {
      functors.emplace_back("z4", mackey::constant_functor(ctx, zmod::AbGroup::cyclic(4)));
      functors.emplace_back("z_z2", mackey::constant_functor(ctx, zmod::AbGroup(zmod::IntVector{0, 2})));
    }
    for (auto& [fname, m] : functors) {
      Json doc = io::to_json(m);
      doc["group"] = name;
      const std::string ref = name + "/" + fname;
      ws.add("functors", ref, "functors/" + name + "_" + fname + ".json", doc);
      ws.add("modules", ref, "modules/" + name + "_" + fname + ".json", module_doc(name, unit, "burnside", ref));
    }
  }
  ws.add("signs", "c2", "signs/c2.json", [] {
    auto ctx = burnside::GContext::make(gdata::cyclic_group(2));
    Json doc = io::to_json(monoidal::SignTable(ctx, monoidal::c2_grading()));
    doc["group"] = "c2";
    return doc;
  }());
  const Json z{{"kind", "constant"}, {"order", "0"}}, z4{{"kind", "constant"}, {"order", "4"}};
  ws.add("modules", "c2/free_over_z", "modules/c2_free_over_z.json", module_doc("c2", z, "free", Json::array({1})));
  ws.add("modules", "c2/z2_over_z", "modules/c2_z2_over_z.json", module_doc("c2", z, "scalar", "c2/z2"));
  ws.add("modules", "trivial/z2_over_z4", "modules/trivial_z2_over_z4.json",
         module_doc("trivial", z4, "scalar", "trivial/z2"));
  ws.save_manifest();
}

}  // namespace mackeyalg::cli

#endif  // MACKEYALG_CLI_FIXTURES_HPP
