#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "finban/cli.hpp"
#include "finban/io.hpp"

using namespace finban;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "finban");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& leaf) { return (std::filesystem::temp_directory_path() / ("finban_cli_" + leaf)).string(); }

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("space commands") {
  std::string cat = tmp("cat.json");
  auto make = run({"space", "make", "--spec", "l1:2", "--save-as", "l1_2", "--out", cat});
  CHECK(make.code == 0);
  auto d = run({"space", "dual", "--in", cat, "--name", "l1_2"});
  CHECK(d.code == 0);
  CHECK(has(d.out, "linf^2"));
  CHECK(has(d.out, "(1, 1)"));

  auto n = run({"space", "norm", "--name", "linf:3", "--vec", "1,-2,1/2"});
  CHECK(n.code == 0);
  CHECK(has(n.out, "norm: 2 "));

  auto s = run({"space", "sum1", "--left", "l1:1", "--right", "l1:2"});
  CHECK(has(s.out, "l1^3"));
  auto q = run({"space", "quotient", "--name", "l1:2", "--basis", "1;1"});
  CHECK(q.code == 0);
  CHECK(has(q.out, "dim 1"));
  auto sub = run({"space", "subspace", "--name", "l1:2", "--basis", "1;1"});
  CHECK(has(sub.out, "vertices: (-1/2) (1/2)"));
  auto s2 = run({"space", "sum2", "--left", "l1:1", "--right", "l1:1", "--eps", "1/10"});
  CHECK(s2.code == 0);
  CHECK(has(s2.out, "approximate"));
  // Builtin forms are closed under negation.
  auto f = run({"space", "show", "--name", "facets:1,0;0,1"});
  CHECK(f.code == 0);
  CHECK(has(f.out, "linf^2"));
  auto p = run({"space", "show", "--name", "points:1,0;0,1;1,1"});
  CHECK(has(p.out, "6 vertices"));
  std::remove(cat.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"space"}).code == 2);
  CHECK(run({"space", "show"}).code == 2);
  CHECK(run({"space", "show", "--name", "nosuch"}).code == 2);
  CHECK(run({"space", "show", "--name", "l1:2", "--bogus"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // Randomized commands refuse to run without a seed.
  auto r = run({"check", "duality", "--samples", "3"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "--seed"));
  CHECK(run({"tower", "build", "--steps", "1"}).code == 2);
  CHECK(run({"space", "show", "--in", "/nonexistent/x.json", "--name", "a"}).code == 2);
}

TEST_CASE("check commands") {
  auto d = run({"check", "duality", "--samples", "20", "--seed", "7"});
  CHECK(d.code == 0);
  CHECK(has(d.out, "duality: 20/20 passed"));
  auto i = run({"check", "identities"});
  CHECK(i.code == 0);
  CHECK_FALSE(has(i.out, "FAIL"));
}

TEST_CASE("amalgam commands") {
  auto p = run({"amalgam", "pushout", "--a", "l1:1", "--b1", "l1:2", "--b2", "l1:2", "--i1", "1;0", "--i2", "1;0"});
  CHECK(p.code == 0);
  CHECK(has(p.out, "l1^3"));
  CHECK(has(p.out, "defect1: 0"));

  // The polytopal l2 sum gives a nonzero defect; that is reported, not asserted.
  auto l2 = run({"amalgam", "pushout", "--kind", "sum2", "--eps", "1/100", "--a", "l1:1", "--b1", "l1:1", "--b2", "l1:1", "--i1", "1",
                 "--i2", "1"});
  CHECK(l2.code == 0);
  CHECK(has(l2.out, "finding"));
  CHECK_FALSE(has(l2.out, "defect1: 0\n"));

  auto l1 = run({"amalgam", "l1", "--a", "l1:1", "--b1", "l1:2", "--b2", "l1:2", "--i1", "1;0", "--i2", "1;0"});
  CHECK(l1.code == 0);
  CHECK(has(l1.out, "l1-embeddable: yes"));

  auto bad = run({"amalgam", "pushout", "--a", "l1:1", "--b1", "l1:2", "--b2", "l1:2", "--i1", "2;0", "--i2", "1;0"});
  CHECK(bad.code == 2);
  CHECK(has(bad.err, "NotIsometricInput"));

  auto v = run({"amalgam", "verify", "--l1", "--a", "l1:1", "--b1", "l1:2", "--b2", "linf:2", "--i1", "1;0", "--i2", "1;0"});
  CHECK(v.code == 0);

  auto s = run({"amalgam", "search-iso-counterexample", "--trials", "5", "--seed", "3"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "counterexamples:"));
}

TEST_CASE("zonotope, incarnation and analysis commands") {
  auto b = run({"zonotope", "build", "--gens", "1,0;0,1;1,1"});
  CHECK(has(b.out, "6 vertices"));
  auto r = run({"zonotope", "reconstruct", "--name", "zonotope:1,0;0,1;1,1"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "generators: (0, 1) (1, 0) (1, 1)"));
  CHECK(has(r.out, "rebuilds the ball: yes"));
  auto c = run({"zonotope", "check", "--name", "linf:2"});
  CHECK(has(c.out, "l1-embeddable: yes"));
  auto inc = run({"incarnate", "--basis", "1,0;0,1;1,1"});
  CHECK(inc.code == 0);
  CHECK(has(inc.out, "sub_dim: 2"));

  auto cot = run({"invariant", "cotype", "--name", "l1:2", "--vecs", "1,0;1,0", "--q", "2"});
  CHECK(has(cot.out, "bound squared (exact): 2"));
  auto avg = run({"invariant", "radavg", "--name", "linf:2", "--vecs", "1,0;0,1"});
  CHECK(has(avg.out, "average: 1 "));

  auto pc = run({"projconst", "solve", "--name", "l1:2", "--basis", "1;1"});
  CHECK(has(pc.out, "lambda: 1 "));
  auto beat = run({"projconst", "solve", "--name", "l1:2", "--basis", "1;1", "--proj", "1/2,1/2;1/2,1/2"});
  CHECK(beat.code == 0);
  std::string csv = tmp("trend.csv");
  auto tr = run({"projconst", "trend", "--csv", csv});
  CHECK(has(tr.out, "increasing: yes"));
  CHECK(slurp(csv).rfind("rank,lambda_exact,lambda_float\n1,1,1\n", 0) == 0);
  std::remove(csv.c_str());

  auto t = run({"tensor", "norms", "--left", "linf:2", "--right", "l1:2", "--coeffs", "1,0;0,1"});
  CHECK(has(t.out, "injective: 1 "));
  CHECK(has(t.out, "projective: 2 "));
  auto op = run({"op", "nuclear", "--domain", "l1:2", "--codomain", "l1:2", "--matrix", "1,0;0,1"});
  CHECK(has(op.out, "nuclear: 2 "));
  auto p1 = run({"op", "pi1", "--domain", "linf:2", "--codomain", "l1:1", "--matrix", "1,1"});
  CHECK(p1.code == 0);
  CHECK(has(p1.out, "pi1: 2 "));
  auto on = run({"op", "norm", "--domain", "l1:2", "--codomain", "l1:2", "--matrix", "1,0"});
  CHECK(on.code == 2);
}

TEST_CASE("catalog steps") {
  std::string cat = tmp("steps.json");
  CHECK(run({"catalog", "gen", "--seed", "1", "--max-dim", "2", "--out", cat}).code == 0);
  auto h = run({"catalog", "h-step", "--in", cat, "--out", cat});
  CHECK(h.code == 0);
  CHECK(run({"catalog", "dual-step", "--in", cat, "--out", cat}).code == 0);
  CHECK(run({"catalog", "q-step", "--in", cat, "--out", cat}).code == 0);
  auto sb = run({"catalog", "subbconvex-step", "--in", cat, "--out", cat, "--seed", "2", "--samples", "4"});
  CHECK(sb.code == 0);
  CHECK(has(sb.out, "catalog:"));
  std::string csv = tmp("cat.csv");
  auto rep = run({"report", "emit", "--kind", "catalog", "--in", cat, "--csv", csv});
  CHECK(rep.code == 0);
  CHECK(slurp(csv).rfind("name,dim,vertices,facets,op\n", 0) == 0);
  std::remove(csv.c_str());
  std::remove(cat.c_str());
}

TEST_CASE("tower commands and determinism") {
  std::string cat = tmp("tower.json");
  std::vector<std::string> build = {"tower", "build", "--steps", "3", "--seed", "5", "--save-as", "t", "--out", cat};
  auto b1 = run(build);
  CHECK(b1.code == 0);
  CHECK(has(b1.out, "isometric: yes"));
  std::string first = slurp(cat);
  auto b2 = run(build);
  CHECK(b1.out == b2.out);
  CHECK(slurp(cat) == first);

  auto r = run({"tower", "replay", "--in", cat, "--tower", "t"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "matches saved stage: yes"));

  std::string csv = tmp("defect.csv");
  auto d = run({"tower", "defect", "--in", cat, "--tower", "t", "--probes", "3", "--restarts", "2", "--seed", "1", "--csv", csv});
  CHECK(d.code == 0);
  CHECK(has(d.out, "median:"));
  std::string text = slurp(csv);
  CHECK(text.rfind("row,triple,source,bound_exact,bound_float\n", 0) == 0);
  CHECK(has(text, "\nmedian,"));

  // Tampering with the saved stage is caught by replay.
  CatalogFile f = load_catalog(cat);
  f.towers.at("t").final_space = ell1(1);
  save_catalog(cat, f);
  CHECK(run({"tower", "replay", "--in", cat, "--tower", "t"}).code == 1);

  std::string cat2 = tmp("net.json");
  CHECK(run({"catalog", "gen", "--seed", "1", "--max-dim", "2", "--out", cat2}).code == 0);
  auto net = run({"tower", "net", "--in", cat2, "--eps", "1/10", "--seed", "1", "--save-as", "n", "--out", cat2});
  CHECK(net.code == 0);
  CHECK(has(net.out, "net: "));
  auto single = run({"tower", "net", "--in", cat2, "--eps", "inf", "--seed", "1"});
  CHECK(has(single.out, "net: 1 triples"));
  auto withnet = run({"tower", "build", "--in", cat2, "--net", "n", "--steps", "2", "--seed", "1"});
  CHECK(withnet.code == 0);
  std::remove(csv.c_str());
  std::remove(cat.c_str());
  std::remove(cat2.c_str());
}
