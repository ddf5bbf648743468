#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "finban/errors.hpp"
#include "finban/io.hpp"
#include "fixtures.hpp"

using namespace finban;
using namespace fixtures;

namespace {

std::string tmp_path(const std::string& leaf) { return (std::filesystem::temp_directory_path() / ("finban_" + leaf)).string(); }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

CatalogFile rich_catalog() {
  CatalogFile f;
  f.put("l1_2", ell1(2));
  f.put("hex", make_space(hexagon(), "hex"));
  f.put("sub", subspace(ell_inf(3), mat("1,0;0,1;1,-1/2")), Provenance{"H", {"linf3"}, {mat("1,0;0,1;1,-1/2")}});
  FinSpace approx = dsum2_approx(ell1(1), ell1(1), Rat(1, 10));
  f.put("approx", approx);
  f.operators["id"] = NamedOp{"l1_2", "hex", mat("1,0;0,1")};
  f.incarnations["k"] = make_incarnating_set(2, {v2(1, 0), v2(0, 1), v2(1, 1)});
  TripleNet net{1, 2, Rat(1, 10), {make_triple(ell1(2), col({1, 0}))}};
  TowerStage s = build_tower(ell1(1), net, 2, 3);
  f.towers["t"] = TowerRecord{"l1:1", net, s.log, 3, s.space, s.truncation};
  f.seed = 42;
  f.budgets = Budgets{};
  return f;
}

}  // namespace

TEST_CASE("catalog round trip is bit-exact") {
  CatalogFile f;
  f.put("l1_2", ell1(2));
  std::string path = tmp_path("l1.json");
  save_catalog(path, f);
  CatalogFile g = load_catalog(path);
  REQUIRE(g.spaces.size() == 1);
  CHECK(g.spaces[0].name == "l1_2");
  CHECK(g.spaces[0].space.ball == ell1(2).ball);
  CHECK(catalog_to_json(g) == catalog_to_json(f));

  CatalogFile r = rich_catalog();
  std::string text = catalog_to_json(r);
  CatalogFile back = catalog_from_json(text);
  CHECK(catalog_to_json(back) == text);
  REQUIRE(back.spaces.size() == r.spaces.size());
  for (std::size_t i = 0; i < r.spaces.size(); ++i) {
    CHECK(back.spaces[i].space.ball == r.spaces[i].space.ball);
    CHECK(back.spaces[i].space.approximate == r.spaces[i].space.approximate);
    CHECK(back.spaces[i].provenance.data == r.spaces[i].provenance.data);
  }
  CHECK(back.operators.at("id") == r.operators.at("id"));
  CHECK(back.incarnations.at("k") == r.incarnations.at("k"));
  const auto& t = back.towers.at("t");
  CHECK(t.log.size() == 2);
  CHECK(t.final_space->ball == r.towers.at("t").final_space->ball);
  CHECK(back.seed == std::optional<std::uint64_t>(42));

  // The saved log replays to the saved stage.
  TowerStage re = replay(ell1(1), t.net, t.log);
  CHECK(re.space.ball == t.final_space->ball);
  std::remove(path.c_str());
}

TEST_CASE("rationals are stored reduced as strings") {
  CatalogFile f;
  f.put("s", make_space(SymPolytope::segment(Rat(6) / Rat(4))));
  std::string text = catalog_to_json(f);
  CHECK(text.find("\"3/2\"") != std::string::npos);
  CHECK(text.find("\"-3/2\"") != std::string::npos);
  CHECK(text.find("6/4") == std::string::npos);
}

TEST_CASE("catalog load errors") {
  std::string good = catalog_to_json([] {
    CatalogFile f;
    f.put("seg", make_space(SymPolytope::segment(Rat(1))));
    return f;
  }());

  std::string zero = good;
  zero.replace(zero.find("\"1\""), 3, "\"1/0\"");
  CHECK(kind_of([&] { catalog_from_json(zero); }) == ErrorKind::MalformedRational);

  std::string version = good;
  version.replace(version.find("\"version\": 1"), 12, "\"version\": 99");
  CHECK(kind_of([&] { catalog_from_json(version); }) == ErrorKind::SchemaMismatch);

  CHECK(kind_of([&] { catalog_from_json("{\"format\": \"finban-catalog\"}"); }) == ErrorKind::SchemaMismatch);
  CHECK(kind_of([&] { catalog_from_json("not json"); }) == ErrorKind::SchemaMismatch);
  CHECK(kind_of([] { load_catalog("/nonexistent/dir/x.json"); }) == ErrorKind::IoError);
  CHECK(kind_of([] { save_catalog("/nonexistent/dir/x.json", CatalogFile{}); }) == ErrorKind::IoError);

  // A ball whose stored descriptions disagree is rejected.
  std::string bent = good;
  auto pos = bent.find("\"facets\"");
  auto one = bent.find("\"1\"", pos);
  bent.replace(one, 3, "\"2\"");
  auto neg = bent.find("\"-1\"", pos);
  bent.replace(neg, 4, "\"-2\"");
  CHECK(kind_of([&] { catalog_from_json(bent); }) == ErrorKind::SchemaMismatch);

  std::string path = tmp_path("zero.json");
  write(path, zero);
  CHECK(kind_of([&] { load_catalog(path); }) == ErrorKind::MalformedRational);
  std::remove(path.c_str());
}

TEST_CASE("catalog conversion keeps names and provenance") {
  SpaceCatalog c;
  c.add("l1^2", ell1(2));
  c.add("hex", make_space(hexagon()));
  CatalogFile f = from_catalog(c);
  SpaceCatalog d = to_catalog(catalog_from_json(catalog_to_json(f)));
  REQUIRE(d.size() == 2);
  CHECK(d.find("hex") != nullptr);
  CHECK(d.find("hex")->space.ball == hexagon());
}

TEST_CASE("csv reports") {
  TrendReport t{{{1, Rat(1)}, {2, Rat(6, 5)}}, 0.26, true};
  std::string csv = render_csv(trend_report(t));
  CHECK(csv == "rank,lambda_exact,lambda_float\n1,1,1\n2,6/5,1.2\n");

  CHECK(render_csv(trend_report(TrendReport{})) == "rank,lambda_exact,lambda_float\n");

  DefectStats s;
  s.probes.push_back(ProbeResult{0, RatMat::identity(1), Rat(1), "log", std::nullopt});
  s.probes.push_back(ProbeResult{1, RatMat::identity(1), Rat(3, 2), "search", std::nullopt});
  s.median = Rat(5, 4);
  s.max = Rat(3, 2);
  std::string d = render_csv(defect_report(s));
  CHECK(d ==
        "row,triple,source,bound_exact,bound_float\n"
        "probe0,0,log,1,1\n"
        "probe1,1,search,3/2,1.5\n"
        "median,,,5/4,1.25\n"
        "max,,,3/2,1.5\n");

  Report r{{{"x", true}}, {}};
  r.add_row({cell(Rat(1) / Rat(3))});
  CHECK(render_csv(r) == "x_exact,x_float\n1/3,0.333333333333\n");
  CHECK(kind_of([&] { r.add_row({cell(Rat(1)), cell(Rat(2))}); }) == ErrorKind::DimMismatch);

  std::string path = tmp_path("r.csv");
  emit_report(path, r);
  std::ifstream in(path);
  std::string head;
  std::getline(in, head);
  CHECK(head == "x_exact,x_float");
  std::remove(path.c_str());
  CHECK(kind_of([&] { emit_report("/nonexistent/dir/r.csv", r); }) == ErrorKind::IoError);
}
