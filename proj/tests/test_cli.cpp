#include <catch_amalgamated.hpp>

#include <sstream>

#include "mackeyalg/cli/commands.hpp"

using namespace mackeyalg;
using cli::fs::path;
using io::Json;

namespace {

struct TempDir {
  path p;
  explicit TempDir(const std::string& name) : p(cli::fs::temp_directory_path() / ("mackeyalg_" + name)) {
    cli::fs::remove_all(p);
  }
  ~TempDir() { cli::fs::remove_all(p); }
};

struct Result {
  int code;
  std::string out, err;
};

Result run(const path& ws, std::vector<std::string> args) {
  args.push_back("--workspace");
  args.push_back(ws.string());
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json result_of(const Result& r) { return Json::parse(r.out).at("result"); }

}  // namespace

TEST_CASE("integers and matrices round-trip", "[io]") {
  zmod::Integer big("-123456789012345678901234567890");
  CHECK(io::integer_from(io::to_json(big)) == big);
  CHECK(io::to_json(big).is_string());
  zmod::IntMatrix m{{1, -2, 3}, {0, 5, 7}};
  CHECK(io::matrix_from(io::to_json(m), 2, 3) == m);
  CHECK_THROWS_AS(io::integer_from(Json("12a")), ValidationError);
  CHECK_THROWS_AS(io::matrix_from(io::to_json(m), 3, 3), ValidationError);
}

TEST_CASE("groups, G-sets, functors and sign tables round-trip", "[io]") {
  for (auto& [name, g] : cli::fixture_groups()) {
    CAPTURE(name);
    Json j = io::to_json(g);
    CHECK(io::to_json(io::group_from(j)) == j);
    auto ctx = burnside::GContext::make(g);
    for (std::size_t k = 0; k < ctx->num_classes(); ++k) {
      Json x = io::to_json(ctx->orbit(k).set);
      CHECK(io::to_json(io::gset_from(g, x)) == x);
    }
    for (auto& m : {mackey::burnside_functor(ctx), mackey::constant_functor(ctx, zmod::AbGroup::cyclic(2)),
                    mackey::representable(ctx, ctx->orbit_object(0))}) {
      Json fj = io::to_json(m);
      CHECK(io::functor_from(ctx, fj) == m);
      CHECK(io::functor_from_raw(ctx, fj) == m);
      CHECK(io::to_json(io::functor_from(ctx, fj)) == fj);
    }
  }
  auto c2 = burnside::GContext::make(gdata::cyclic_group(2));
  monoidal::SignTable s(c2, monoidal::c2_grading());
  Json sj = io::to_json(s);
  CHECK(io::to_json(io::signs_from(c2, sj)) == sj);
  // sigma(sign, sign) = 1 - [C2/e] has marks (-1, 1)
  CHECK(sj["sigma"][1][1] == Json::array({-1, 1}));
}

TEST_CASE("generator input expands to a table", "[io]") {
  Json j{{"degree", 3}, {"generators", {{1, 0, 2}, {1, 2, 0}}}};
  CHECK(io::group_from(j).order() == 6);
  CHECK_THROWS_AS(io::group_from(Json{{"table", {{0, 1}, {1, 1}}}}), ValidationError);
}

TEST_CASE("fixtures install", "[cli]") {
  TempDir t("fixtures");
  CHECK(cli::run({"fixtures", "install", t.p.string()}, std::cout, std::cerr) == 0);
  // refuses a non-empty directory
  std::ostringstream o, e;
  CHECK(cli::run({"fixtures", "install", t.p.string()}, o, e) == 1);
  cli::Workspace ws(t.p);
  for (auto& [name, file] : ws.manifest()["functors"].items()) {
    CAPTURE(name);
    auto r = run(t.p, {"mackey", "check", name});
    CHECK(r.code == 0);
    // files are stored in canonical form
    Json doc = cli::read_json(t.p / file.get<std::string>());
    std::ifstream in(t.p / file.get<std::string>());
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == io::canonical(doc));
  }
  for (auto& [name, file] : ws.manifest()["modules"].items()) {
    CAPTURE(name);
    CHECK(run(t.p, {"module", "check", name}).code == 0);
  }
  // trivial group fixtures have a single subgroup class
  auto ev = result_of(run(t.p, {"mackey", "eval", "trivial/z_z2"}));
  REQUIRE(ev["levels"].size() == 1);
  CHECK(ev["levels"][0]["rank"] == 1);
  CHECK(ev["levels"][0]["torsion"] == Json::array({"2"}));
  auto sg = run(t.p, {"signs", "sigma", "--signs", "c2"});
  CHECK(sg.code == 0);
  CHECK(result_of(sg)["antisymmetric"] == true);
  CHECK(result_of(sg)["bilinear"] == true);
}

TEST_CASE("exit codes", "[cli]") {
  TempDir t("exit");
  REQUIRE(cli::run({"fixtures", "install", t.p.string()}, std::cout, std::cerr) == 0);
  CHECK(run(t.p, {"frobnicate"}).code == 2);
  CHECK(run(t.p, {"burnside", "frobnicate", "--group", "c2"}).code == 2);
  CHECK(run(t.p, {"burnside", "units"}).code == 2);
  CHECK(run(t.p, {"module", "tor", "c2/z2", "c2/z"}).code == 2);
  CHECK(run(t.p, {"ss", "run", "--mode", "tor", "c2/z2", "c2/z", "--smax", "1"}).code == 2);
  CHECK(run(t.p, {"burnside", "units", "--group", "nowhere"}).code == 1);
  CHECK(run(t.p, {"mackey", "check", "c2/nowhere"}).code == 1);

  auto units = run(t.p, {"burnside", "units", "--group", "c2"});
  CHECK(units.code == 0);
  CHECK(result_of(units)["count"] == 4);

  // a constant functor whose transfer is the identity breaks the double coset formula
  Json bad = cli::read_json(t.p / "functors/c2_z.json");
  for (auto& [k, v] : bad["tr"].items()) v = Json::array({Json::array({"1"})});
  cli::write_text(t.p / "bad_fixture.json", io::canonical(bad));
  auto r = run(t.p, {"mackey", "check", (t.p / "bad_fixture.json").string()});
  CHECK(r.code == 1);
  auto v = result_of(r)["violations"];
  REQUIRE(v.size() == 1);
  CHECK(v[0].get<std::string>().find("double coset") != std::string::npos);
}

TEST_CASE("collapse certificate for a projective input", "[cli]") {
  TempDir t("collapse");
  REQUIRE(cli::run({"fixtures", "install", t.p.string()}, std::cout, std::cerr) == 0);
  auto r = run(t.p, {"ss", "run", "--mode", "tor", "c2/z2", "c2/free_e", "--smax", "0", "--rmax", "3"});
  CHECK(r.code == 0);
  auto cert = result_of(r)["filtration_second"]["certificate"];
  CHECK(cert["collapse_page"] == 2);
  CHECK(cert["edge_iso"] == true);
  CHECK(cert["converges"] == true);
}

TEST_CASE("cache soundness and byte-identical reports", "[cli]") {
  TempDir t("cache");
  REQUIRE(cli::run({"fixtures", "install", t.p.string()}, std::cout, std::cerr) == 0);
  const std::vector<std::vector<std::string>> cmds{
      {"module", "tor", "c2/z2", "c2/z", "--smax", "2"},
      {"module", "ext", "trivial/z2_over_z4", "trivial/z2_over_z4", "--smax", "2"},
      {"ss", "run", "--mode", "ext", "c2/z2", "c2/z", "--smax", "1", "--rmax", "3"},
      {"signs", "trivialize", "--signs", "c2", "--seed", "5"}};
  for (auto& c : cmds) {
    CAPTURE(c);
    auto fresh = run(t.p, c);
    auto again = run(t.p, c);  // served from the cache
    auto c2 = c;
    c2.push_back("--no-cache");
    auto nocache = run(t.p, c2);
    CHECK(fresh.code == 0);
    CHECK(fresh.out == again.out);
    CHECK(fresh.out == nocache.out);
  }
  CHECK(!cli::fs::is_empty(t.p / "cache"));
  auto out = t.p / "report.json";
  CHECK(run(t.p, {"burnside", "marks", "--group", "s3", "--json-out", out.string()}).code == 0);
  CHECK(cli::read_json(out)["result"]["table_of_marks"].size() == 4);
}
