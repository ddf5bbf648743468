#include <fstream>
#include <sstream>

#include <json.hpp>

#include "finban/errors.hpp"
#include "finban/io.hpp"

namespace finban {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& what) { fail(ErrorKind::SchemaMismatch, what); }

json rat_j(const Rat& r) { return to_string(r); }

Rat rat_of(const json& j) {
  if (!j.is_string()) schema("rational must be a string \"p/q\"");
  return parse_rat(j.get<std::string>());
}

json vec_j(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_j(x));
  return a;
}

RatVec vec_of(const json& j) {
  if (!j.is_array()) schema("vector must be an array");
  RatVec v;
  for (const auto& x : j) v.push_back(rat_of(x));
  return v;
}

json vecs_j(const std::vector<RatVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_j(v));
  return a;
}

std::vector<RatVec> vecs_of(const json& j, std::size_t dim) {
  if (!j.is_array()) schema("list of vectors must be an array");
  std::vector<RatVec> out;
  for (const auto& x : j) {
    out.push_back(vec_of(x));
    if (out.back().size() != dim) schema("vector of wrong length");
  }
  return out;
}

json mat_j(const RatMat& m) { return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", vecs_j(m.row_list())}}; }

RatMat mat_of(const json& j) {
  std::size_t r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
  auto rows = vecs_of(j.at("entries"), c);
  if (rows.size() != r) schema("matrix row count does not match");
  RatMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rows[i][k];
  return m;
}

json space_j(const FinSpace& x) {
  return json{{"label", x.label},
              {"dim", x.dim()},
              {"approximate", x.approximate},
              {"vertices", vecs_j(x.ball.vertices())},
              {"facets", vecs_j(x.ball.facets())}};
}

FinSpace space_of(const json& j) {
  std::size_t dim = j.at("dim").get<std::size_t>();
  auto verts = vecs_of(j.at("vertices"), dim);
  FinSpace x{SymPolytope::segment(Rat(1)), j.value("label", std::string()), j.value("approximate", false)};
  if (j.contains("facets")) {
    x.ball = SymPolytope::from_both_unchecked(dim, verts, vecs_of(j.at("facets"), dim));
    if (auto e = validate(x.ball); !e.empty()) schema("space '" + x.label + "': " + e);
  } else {
    x.ball = SymPolytope::from_points(verts);
  }
  return x;
}

json prov_j(const Provenance& p) {
  json d = json::array();
  for (const auto& m : p.data) d.push_back(mat_j(m));
  return json{{"op", p.op}, {"parents", p.parents}, {"data", d}};
}

Provenance prov_of(const json& j) {
  Provenance p{j.at("op").get<std::string>(), j.at("parents").get<std::vector<std::string>>(), {}};
  for (const auto& m : j.at("data")) p.data.push_back(mat_of(m));
  return p;
}

json budgets_j(const Budgets& b) {
  return json{{"dd_max_dim", b.dd_max_dim},
              {"max_vertices", b.max_vertices},
              {"rademacher_max", b.rademacher_max},
              {"tensor_max", b.tensor_max},
              {"tower_max_dim", b.tower_max_dim}};
}

Budgets budgets_of(const json& j) {
  Budgets b;
  b.dd_max_dim = j.at("dd_max_dim").get<std::size_t>();
  b.max_vertices = j.at("max_vertices").get<std::size_t>();
  b.rademacher_max = j.at("rademacher_max").get<std::size_t>();
  b.tensor_max = j.at("tensor_max").get<std::size_t>();
  b.tower_max_dim = j.at("tower_max_dim").get<std::size_t>();
  return b;
}

json tower_j(const TowerRecord& t) {
  json triples = json::array();
  for (const auto& tr : t.net.triples) triples.push_back(json{{"b", space_j(tr.b)}, {"i", mat_j(tr.i.matrix)}});
  json log = json::array();
  for (const auto& e : t.log)
    log.push_back(json{{"triple", e.triple}, {"source", e.source}, {"anchor", mat_j(e.anchor)}, {"j2", mat_j(e.j2)}});
  return json{{"seed_space", t.seed_space},
              {"seed", t.seed},
              {"net",
               {{"n", t.net.n}, {"m", t.net.m}, {"eps", t.net.eps ? json(rat_j(*t.net.eps)) : json(nullptr)}, {"triples", triples}}},
              {"log", log},
              {"final", t.final_space ? space_j(*t.final_space) : json(nullptr)},
              {"truncation", t.truncation}};
}

TowerRecord tower_of(const json& j) {
  TowerRecord t;
  t.seed_space = j.at("seed_space").get<std::string>();
  t.seed = j.at("seed").get<std::uint64_t>();
  const json& n = j.at("net");
  t.net.n = n.at("n").get<std::size_t>();
  t.net.m = n.at("m").get<std::size_t>();
  if (!n.at("eps").is_null()) t.net.eps = rat_of(n.at("eps"));
  for (const auto& tr : n.at("triples")) {
    FinSpace b = space_of(tr.at("b"));
    RatMat i = mat_of(tr.at("i"));
    if (i.rows() != b.dim()) schema("triple embedding has the wrong shape");
    t.net.triples.push_back(make_triple(b, i));
  }
  for (const auto& e : j.at("log"))
    t.log.push_back(TowerLogEntry{e.at("triple").get<std::size_t>(), mat_of(e.at("anchor")), e.at("source").get<std::string>(),
                                  mat_of(e.at("j2"))});
  if (!j.at("final").is_null()) t.final_space = space_of(j.at("final"));
  t.truncation = j.value("truncation", std::string());
  return t;
}

}  // namespace

const CatalogEntry* CatalogFile::find(const std::string& name) const {
  for (const auto& e : spaces)
    if (e.name == name) return &e;
  return nullptr;
}

void CatalogFile::put(const std::string& name, const FinSpace& space, Provenance provenance) {
  for (auto& e : spaces)
    if (e.name == name) {
      e.space = space;
      e.provenance = std::move(provenance);
      return;
    }
  spaces.push_back(CatalogEntry{name, space, std::move(provenance)});
}

CatalogFile from_catalog(const SpaceCatalog& c) {
  CatalogFile f;
  f.spaces = c.entries();
  return f;
}

SpaceCatalog to_catalog(const CatalogFile& f) {
  SpaceCatalog c;
  for (const auto& e : f.spaces) c.add(e.name, e.space, e.provenance);
  return c;
}

std::string catalog_to_json(const CatalogFile& f) {
  json spaces = json::array();
  for (const auto& e : f.spaces) {
    json s = space_j(e.space);
    s["name"] = e.name;
    s["provenance"] = prov_j(e.provenance);
    spaces.push_back(s);
  }
  json ops = json::object();
  for (const auto& [k, op] : f.operators) ops[k] = json{{"domain", op.domain}, {"codomain", op.codomain}, {"matrix", mat_j(op.matrix)}};
  json inc = json::object();
  for (const auto& [k, s] : f.incarnations) inc[k] = json{{"sub_dim", s.sub_dim}, {"generators", vecs_j(s.generators)}};
  json towers = json::object();
  for (const auto& [k, t] : f.towers) towers[k] = tower_j(t);
  json root{{"format", "finban-catalog"},
            {"version", kCatalogFormat},
            {"seed", f.seed ? json(*f.seed) : json(nullptr)},
            {"budgets", f.budgets ? budgets_j(*f.budgets) : json(nullptr)},
            {"spaces", spaces},
            {"operators", ops},
            {"incarnations", inc},
            {"towers", towers}};
  return root.dump(1) + "\n";
}

CatalogFile catalog_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    schema(std::string("not valid JSON: ") + e.what());
  }
  try {
    if (!root.is_object() || root.value("format", std::string()) != "finban-catalog") schema("missing format tag");
    if (!root.contains("version") || !root["version"].is_number_integer()) schema("missing version");
    if (root["version"].get<int>() != kCatalogFormat)
      schema("unsupported version " + root["version"].dump() + " (expected " + std::to_string(kCatalogFormat) + ")");
    CatalogFile f;
    if (root.contains("seed") && !root["seed"].is_null()) f.seed = root["seed"].get<std::uint64_t>();
    if (root.contains("budgets") && !root["budgets"].is_null()) f.budgets = budgets_of(root["budgets"]);
    for (const auto& s : root.at("spaces")) {
      std::string name = s.at("name").get<std::string>();
      if (f.find(name)) schema("duplicate space name '" + name + "'");
      Provenance p = s.contains("provenance") ? prov_of(s["provenance"]) : Provenance{"base", {}, {}};
      f.spaces.push_back(CatalogEntry{name, space_of(s), std::move(p)});
    }
    const json operators = root.value("operators", json::object());
    const json incarnations = root.value("incarnations", json::object());
    const json towers = root.value("towers", json::object());
    for (const auto& [k, op] : operators.items()) {
      NamedOp o{op.at("domain").get<std::string>(), op.at("codomain").get<std::string>(), mat_of(op.at("matrix"))};
      const auto* d = f.find(o.domain);
      const auto* c = f.find(o.codomain);
      if (!d || !c) schema("operator '" + k + "' refers to an unknown space");
      if (o.matrix.rows() != c->space.dim() || o.matrix.cols() != d->space.dim()) schema("operator '" + k + "' has the wrong shape");
      f.operators.emplace(k, std::move(o));
    }
    for (const auto& [k, s] : incarnations.items()) {
      std::size_t m = s.at("sub_dim").get<std::size_t>();
      f.incarnations.emplace(k, IncarnatingSet{m, vecs_of(s.at("generators"), m)});
    }
    for (const auto& [k, t] : towers.items()) f.towers.emplace(k, tower_of(t));
    return f;
  } catch (const json::exception& e) {
    schema(std::string("bad catalog field: ") + e.what());
  }
}

void save_catalog(const std::string& path, const CatalogFile& f) {
  std::string text = catalog_to_json(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

CatalogFile load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return catalog_from_json(ss.str());
}

}  // namespace finban
