#include <CLI11.hpp>

#include <functional>
#include <sstream>

#include "finban/cli.hpp"
#include "finban/errors.hpp"
#include "finban/io.hpp"
#include "finban/random.hpp"
#include "finban/samples.hpp"

namespace finban {

namespace {

// Thrown by commands whose checks fail; maps to exit code 1.
struct VerificationFailure {
  std::string what;
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  std::string in;
  std::string out_file;
  std::string save_as;
  std::optional<std::uint64_t> seed;

  CatalogFile file;
  bool loaded = false;

  CatalogFile& catalog() {
    if (!loaded) {
      if (!in.empty()) file = load_catalog(in);
      loaded = true;
    }
    return file;
  }
  std::uint64_t need_seed() const {
    if (!seed) fail(ErrorKind::InvalidArgument, "this command is randomized and needs --seed");
    return *seed;
  }
  void save() {
    if (out_file.empty()) return;
    if (seed) catalog().seed = seed;
    save_catalog(out_file, catalog());
    out << "wrote " << out_file << "\n";
  }
  void store(const FinSpace& x, Provenance p = {"base", {}, {}}) {
    if (save_as.empty()) return;
    catalog().put(save_as, x, std::move(p));
    if (out_file.empty()) err << "note: --save-as without --out does not write anything\n";
  }
};

std::size_t parse_size(const std::string& s) {
  Rat r = parse_rat(s);
  if (r < 0 || r.get_den() != 1) fail(ErrorKind::InvalidArgument, "expected a natural number, got '" + s + "'");
  return r.get_num().get_ui();
}

std::vector<RatVec> parse_rows(const std::string& s) { return parse_mat(s).row_list(); }

std::vector<RatVec> with_negatives(std::vector<RatVec> rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) rows.push_back(neg(rows[i]));
  sort_unique(rows);
  return rows;
}

// A catalog name, or one of l1:N, linf:N, points:ROWS, facets:ROWS, zonotope:ROWS.
FinSpace resolve_space(Ctx& c, const std::string& spec) {
  if (!c.in.empty())
    if (const auto* e = c.catalog().find(spec)) return e->space;
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon), rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "l1" && !rest.empty()) return ell1(parse_size(rest));
  if (head == "linf" && !rest.empty()) return ell_inf(parse_size(rest));
  if (head == "points" && !rest.empty()) return make_space(SymPolytope::from_points(with_negatives(parse_rows(rest))));
  if (head == "facets" && !rest.empty()) return make_space(SymPolytope::from_facets(with_negatives(parse_rows(rest))));
  if (head == "zonotope" && !rest.empty()) return make_space(zonotope_of(parse_rows(rest)));
  fail(ErrorKind::InvalidArgument, "unknown space '" + spec + "' (not in the catalog and not a builtin form)");
}

std::string recognise(const FinSpace& x) {
  const std::size_t n = x.dim();
  std::vector<std::string> names;
  if (x.ball.vertices().size() == 2 * n && is_isometric(x, ell1(n))) names.push_back("l1^" + std::to_string(n));
  if (x.ball.facets().size() == 2 * n && is_isometric(x, ell_inf(n))) names.push_back("linf^" + std::to_string(n));
  if (names.empty()) return {};
  std::string s = "isometric to " + names[0];
  for (std::size_t i = 1; i < names.size(); ++i) s += " and " + names[i];
  return s;
}

void summary(std::ostream& out, const std::string& name, const FinSpace& x) {
  out << name << ": dim " << x.dim() << ", " << x.ball.vertices().size() << " vertices, " << x.ball.facets().size() << " facets";
  if (auto r = recognise(x); !r.empty()) out << ", " << r;
  if (x.approximate) out << ", approximate";
  out << "\n  vertices:";
  for (const auto& v : x.ball.vertices()) out << " " << to_string(v);
  out << "\n  facets:";
  for (const auto& f : x.ball.facets()) out << " " << to_string(f);
  out << "\n";
}

void print_mat(std::ostream& out, const std::string& label, const RatMat& m) {
  out << label << ":";
  for (std::size_t i = 0; i < m.rows(); ++i) out << " " << to_string(m.row(i));
  out << "\n";
}

std::string opt_rat(const std::optional<Rat>& r) { return r ? to_string(*r) : "none"; }

Exponent parse_exponent(const std::string& s) {
  if (s == "inf") return std::nullopt;
  return parse_rat(s);
}

struct FormationArgs {
  std::string a, b1, b2, i1, i2, mode = "isometric";
};

void add_formation_options(CLI::App* s, FormationArgs& f) {
  s->add_option("--a", f.a, "space A")->required();
  s->add_option("--b1", f.b1, "space B1")->required();
  s->add_option("--b2", f.b2, "space B2")->required();
  s->add_option("--i1", f.i1, "matrix of i1 : A -> B1")->required();
  s->add_option("--i2", f.i2, "matrix of i2 : A -> B2")->required();
  s->add_option("--mode", f.mode, "isometric or isomorphic")->check(CLI::IsMember({"isometric", "isomorphic"}));
}

VFormation formation_of(Ctx& c, const FormationArgs& f) {
  return make_formation(resolve_space(c, f.a), resolve_space(c, f.b1), resolve_space(c, f.b2), parse_mat(f.i1), parse_mat(f.i2),
                        f.mode == "isometric" ? FormationMode::Isometric : FormationMode::Isomorphic);
}

void print_report(std::ostream& out, const AmalgamReport& r) {
  out << "commutes: " << (r.commutes ? "yes" : "no") << "\n";
  out << "defect1: " << opt_rat(r.defect1) << "\ndefect2: " << opt_rat(r.defect2) << "\n";
  out << "contractive: " << (r.contractive ? "yes" : "no") << "\n";
  if (r.l1_embeddable) out << "l1-embeddable: " << (*r.l1_embeddable ? "yes" : "no") << "\n";
  for (const auto& f : r.failures) out << "failure: " << f << "\n";
}

TripleNet default_net() {
  TripleNet net{1, 2, Rat(1, 10), {}};
  RatMat e1 = RatMat::from_cols({{Rat(1), Rat(0)}});
  net.triples.push_back(make_triple(ell1(2), e1));
  net.triples.push_back(make_triple(ell_inf(2), e1));
  net.triples.push_back(make_triple(make_space(zonotope_of({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}})), e1));
  return net;
}

const TowerRecord& tower_record(Ctx& c, const std::string& name) {
  auto it = c.catalog().towers.find(name);
  if (it == c.catalog().towers.end()) fail(ErrorKind::InvalidArgument, "no tower '" + name + "' in the catalog");
  return it->second;
}

TowerStage stage_of(Ctx& c, const TowerRecord& t) { return replay(resolve_space(c, t.seed_space), t.net, t.log); }

void check_chain(const TowerStage& s, std::ostream& out) {
  bool ok = true;
  for (std::size_t k = 0; k < s.chain.size(); ++k) {
    auto d = isometry_defect(s.chain[k]);
    bool iso = d && *d == 0;
    out << "  chain " << k << ": X" << k << " (dim " << s.chain[k].domain.dim() << ") -> X" << k + 1 << " (dim "
        << s.chain[k].codomain.dim() << "), isometric: " << (iso ? "yes" : "no") << "\n";
    ok = ok && iso;
  }
  if (!ok) throw VerificationFailure{"a chain map is not isometric"};
}

void print_defects(std::ostream& out, const DefectStats& st) {
  for (std::size_t i = 0; i < st.probes.size(); ++i) {
    const auto& p = st.probes[i];
    out << "probe " << i << ": triple " << p.triple << ", " << p.source << ", bound "
        << (p.bound > 0 ? to_string(p.bound) + " (" + std::to_string(to_double(p.bound)) + ")" : std::string("none")) << "\n";
  }
  out << "median: " << opt_rat(st.median) << "\nmax: " << opt_rat(st.max) << "\n";
}

SpaceCatalog l1_part_of(const SpaceCatalog& c) {
  SpaceCatalog out;
  for (const auto& e : c.entries())
    if (is_l1_embeddable(e.space)) out.add(e.name, e.space, e.provenance);
  return out;
}

void print_catalog_change(std::ostream& out, const SpaceCatalog& before, const SpaceCatalog& after) {
  out << "catalog: " << before.size() << " -> " << after.size() << " spaces\n";
  for (const auto& e : after.entries())
    if (!before.find(e.name)) out << "  + " << e.name << " (" << e.provenance.op << ", dim " << e.space.dim() << ")\n";
  for (const auto& w : after.warnings) out << "warning: " << w << "\n";
}

void replace_spaces(Ctx& c, const SpaceCatalog& updated) {
  CatalogFile& f = c.catalog();
  f.spaces = updated.entries();
}

// Option storage. Reset on every dispatch so repeated in-process calls
// do not leak values into each other.
struct Args {
  std::string name, left, right, basis, vec, eps_s, spec, gens;
  FormationArgs fa;
  std::string kind = "sum1";
  bool check_l1 = false;
  std::size_t trials = 20;
  std::size_t max_dim = 2, random_count = 0, per_space = 0, samples = 1;
  std::string vecs, q_s = "2", p_s = "2";
  std::string proj, csv, coeffs;
  std::string domain, codomain, matrix;
  std::size_t n_dim = 1, m_dim = 2, steps = 5, probes = 6, restarts = 16;
  std::string tower_name, seed_space = "l1:1", net_name, report_kind;
};
Args A;

void register_commands(CLI::App& app, Ctx& c, std::function<void()>& action) {
  auto leaf = [&](CLI::App* parent, const std::string& cmd, const std::string& help) { return parent->add_subcommand(cmd, help); };
  // Options shared by most commands live in per-command copies so CLI11's
  // help stays accurate.
  auto common = [&](CLI::App* s, bool writes) {
    s->add_option("--in", c.in, "catalog file to read");
    if (writes) {
      s->add_option("--out", c.out_file, "catalog file to write");
      s->add_option("--save-as", c.save_as, "store the result under this name");
    }
    s->add_option("--seed", c.seed, "seed for randomized steps");
  };
  auto on = [&](CLI::App* s, std::function<void()> f) { s->callback([&action, f] { action = f; }); };

  // space
  auto* space = app.add_subcommand("space", "normed spaces");
  space->require_subcommand(1);

  {
    auto* s = leaf(space, "make", "add a space to a catalog");
    common(s, true);
    s->add_option("--spec", A.spec, "l1:N, linf:N, points:ROWS, facets:ROWS or zonotope:ROWS")->required();
    on(s, [&] {
      if (c.save_as.empty() || c.out_file.empty()) fail(ErrorKind::InvalidArgument, "space make needs --save-as and --out");
      FinSpace x = resolve_space(c, A.spec);
      x.label = c.save_as;
      c.store(x);
      summary(c.out, c.save_as, x);
      c.save();
    });
  }
  auto unary = [&](const std::string& cmd, const std::string& help, std::function<FinSpace(const FinSpace&)> f,
                   std::function<Provenance()> prov) {
    auto* s = leaf(space, cmd, help);
    common(s, true);
    s->add_option("--name", A.name, "space (catalog name or builtin form)")->required();
    on(s, [&c, f, prov, cmd] {
      FinSpace x = f(resolve_space(c, A.name));
      summary(c.out, cmd + "(" + A.name + ")", x);
      c.store(x, prov());
      c.save();
    });
    return s;
  };
  unary("show", "print a space", [](const FinSpace& x) { return x; }, [] { return Provenance{"base", {A.name}, {}}; });
  unary("dual", "dual space", [](const FinSpace& x) { return dual(x); }, [] { return Provenance{"dual", {A.name}, {}}; });
  unary("subspace", "subspace spanned by the columns of --basis",
        [](const FinSpace& x) { return subspace(x, parse_mat(A.basis)); },
        [] { return Provenance{"H", {A.name}, {parse_mat(A.basis)}}; })
      ->add_option("--basis", A.basis, "matrix, rows separated by ';'")
      ->required();
  unary("quotient", "quotient by the span of the columns of --basis",
        [](const FinSpace& x) { return quotient(x, parse_mat(A.basis)).space; },
        [] { return Provenance{"Q", {A.name}, {parse_mat(A.basis)}}; })
      ->add_option("--basis", A.basis, "matrix, rows separated by ';'")
      ->required();
  {
    auto* s = leaf(space, "norm", "norm of a vector");
    common(s, false);
    s->add_option("--name", A.name)->required();
    s->add_option("--vec", A.vec, "vector, entries separated by ','")->required();
    on(s, [&] {
      Rat v = norm(resolve_space(c, A.name), parse_vec(A.vec));
      c.out << "norm: " << to_string(v) << " (" << to_double(v) << ")\n";
    });
  }
  auto binary = [&](const std::string& cmd, const std::string& help, bool needs_eps) {
    auto* s = leaf(space, cmd, help);
    common(s, true);
    s->add_option("--left", A.left)->required();
    s->add_option("--right", A.right)->required();
    if (needs_eps) s->add_option("--eps", A.eps_s, "outer approximation tolerance")->required();
    on(s, [&c, cmd] {
      FinSpace x = resolve_space(c, A.left), y = resolve_space(c, A.right);
      FinSpace z = cmd == "sum1" ? dsum1(x, y) : cmd == "suminf" ? dsum_inf(x, y) : dsum2_approx(x, y, parse_rat(A.eps_s));
      summary(c.out, cmd + "(" + A.left + ", " + A.right + ")", z);
      c.store(z);
      c.save();
    });
  };
  binary("sum1", "l1 direct sum", false);
  binary("suminf", "l-infinity direct sum", false);
  binary("sum2", "polytopal outer approximation of the l2 sum", true);

  // incarnate
  {
    auto* s = app.add_subcommand("incarnate", "incarnating set of span(basis) inside l1^N");
    common(s, true);
    s->add_option("--basis", A.basis, "N x m matrix")->required();
    on(s, [&] {
      L1Embedding e = incarnate(parse_mat(A.basis));
      c.out << "ambient: l1^" << e.ambient << "\nsub_dim: " << e.incarnation.sub_dim << "\ngenerators:";
      for (const auto& g : e.incarnation.generators) c.out << " " << to_string(g);
      c.out << "\n";
      summary(c.out, "incarnated space", incarnated_space(e.incarnation));
      if (!c.save_as.empty()) c.catalog().incarnations[c.save_as] = e.incarnation;
      c.save();
    });
  }

  // zonotope
  auto* zon = app.add_subcommand("zonotope", "zonotopes");
  zon->require_subcommand(1);
  {
    auto* s = leaf(zon, "build", "zonotope of generators (rows)");
    common(s, true);

    s->add_option("--gens", A.gens, "generators as rows")->required();
    on(s, [&] {
      FinSpace x = make_space(zonotope_of(parse_rows(A.gens)));
      summary(c.out, "zonotope", x);
      c.store(x);
      c.save();
    });
  }
  {
    auto* s = leaf(zon, "reconstruct", "generators of a zonotopal ball");
    common(s, false);
    s->add_option("--name", A.name)->required();
    on(s, [&] {
      FinSpace x = resolve_space(c, A.name);
      IncarnatingSet k = reconstruct(x.ball);
      c.out << "generators:";
      for (const auto& g : k.generators) c.out << " " << to_string(g);
      c.out << "\n";
      bool ok = zonotope_of(k.generators) == x.ball;
      c.out << "rebuilds the ball: " << (ok ? "yes" : "no") << "\n";
      if (!ok) throw VerificationFailure{"reconstructed generators do not rebuild the ball"};
    });
  }
  {
    auto* s = leaf(zon, "check", "is the ball a zonotope; is the space l1-embeddable");
    common(s, false);
    s->add_option("--name", A.name)->required();
    on(s, [&] {
      FinSpace x = resolve_space(c, A.name);
      c.out << "ball is a zonotope: " << (is_zonotope(x.ball) ? "yes" : "no") << "\n";
      auto w = is_l1_embeddable(x);
      c.out << "l1-embeddable: " << (w ? "yes" : "no") << "\n";
      if (w) {
        c.out << "incarnation:";
        for (const auto& g : w->generators) c.out << " " << to_string(g);
        c.out << "\n";
      }
    });
  }

  // amalgam
  auto* am = app.add_subcommand("amalgam", "amalgamation of V-formations");
  am->require_subcommand(1);




  {
    auto* s = leaf(am, "pushout", "pushout amalgam (B1 + B2) / {(i1 a, -i2 a)}");
    common(s, true);
    add_formation_options(s, A.fa);
    s->add_option("--kind", A.kind, "sum1 or sum2")->check(CLI::IsMember({"sum1", "sum2"}));
    s->add_option("--eps", A.eps_s, "tolerance of the polytopal l2 sum");
    on(s, [&] {
      VFormation v = formation_of(c, A.fa);
      SumChoice sc;
      if (A.kind == "sum2") {
        sc.kind = SumKind::L2Approx;
        if (!A.eps_s.empty()) sc.eps = parse_rat(A.eps_s);
      }
      Amalgam a = pushout(v, sc);
      summary(c.out, "F", a.f);
      print_mat(c.out, "j1", a.j1.matrix);
      print_mat(c.out, "j2", a.j2.matrix);
      AmalgamReport r = verify_amalgam(v, a);
      print_report(c.out, r);
      if (A.kind == "sum2" && a.defect1 && *a.defect1 != 0)
        c.out << "finding: the polytopal l2 pushout is not isometric (defect " << to_double(*a.defect1) << ")\n";
      c.store(a.f);
      c.save();
      // Only the exact l1 case is asserted; l2 defects are reported.
      if (!r.commutes || (A.kind == "sum1" && v.mode == FormationMode::Isometric && !r.ok()))
        throw VerificationFailure{"pushout failed verification"};
    });
  }
  {
    auto* s = leaf(am, "l1", "l1 amalgam of an isometric formation of l1-embeddable spaces");
    common(s, true);
    add_formation_options(s, A.fa);
    on(s, [&] {
      VFormation v = formation_of(c, A.fa);
      L1Amalgam r = l1_amalgamate(v);
      if (!r.ok()) {
        for (const auto& f : r.failures)
          c.out << "rib-group failure along " << to_string(f.direction) << ": " << to_string(f.left_total) << " vs "
                << to_string(f.right_total) << " (" << f.message << ")\n";
        Amalgam fb = pushout(v);
        AmalgamReport fr = verify_amalgam(v, fb);
        c.out << "fallback l1 pushout:\n";
        summary(c.out, "F", fb.f);
        print_report(c.out, fr);
        if (!fr.ok()) throw VerificationFailure{"fallback pushout failed verification"};
        return;
      }
      summary(c.out, "W", r.amalgam->f);
      print_mat(c.out, "j1", r.amalgam->j1.matrix);
      print_mat(c.out, "j2", r.amalgam->j2.matrix);
      c.out << "incarnation:";
      for (const auto& g : r.incarnation->generators) c.out << " " << to_string(g);
      c.out << "\n";
      AmalgamReport rep = verify_amalgam(v, *r.amalgam, true);
      print_report(c.out, rep);
      c.store(r.amalgam->f);
      c.save();
      if (!rep.ok()) throw VerificationFailure{"l1 amalgam failed verification"};
    });
  }
  {
    auto* s = leaf(am, "verify", "build the l1 pushout and verify it");
    common(s, false);
    add_formation_options(s, A.fa);
    s->add_flag("--l1", A.check_l1, "also require F to be l1-embeddable");
    on(s, [&] {
      VFormation v = formation_of(c, A.fa);
      AmalgamReport r = verify_amalgam(v, pushout(v), A.check_l1);
      print_report(c.out, r);
      if (!r.ok()) throw VerificationFailure{"verification failed"};
    });
  }
  {
    auto* s = leaf(am, "search-iso-counterexample", "isomorphic formations of l1 spaces with a non-l1 pushout");
    common(s, false);
    s->add_option("--trials", A.trials);
    on(s, [&] {
      std::vector<FinSpace> l1s;
      if (!c.in.empty()) {
        for (const auto& e : c.catalog().spaces)
          if (is_l1_embeddable(e.space)) l1s.push_back(e.space);
      } else {
        l1s = {ell1(1), ell1(2), ell1(3), make_space(zonotope_of({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}}))};
      }
      auto found = search_iso_counterexample(l1s, A.trials, c.need_seed());
      c.out << "counterexamples: " << found.size() << " in " << A.trials << " trials\n";
      for (std::size_t i = 0; i < found.size() && i < 3; ++i) {
        const auto& f = found[i].formation;
        c.out << "  A dim " << f.a.dim() << ", B1 dim " << f.b1.dim() << ", B2 dim " << f.b2.dim() << ", F dim "
              << found[i].amalgam.f.dim() << "\n";
      }
    });
  }

  // catalog
  auto* cat = app.add_subcommand("catalog", "space catalogs");
  cat->require_subcommand(1);

  {
    auto* s = leaf(cat, "gen", "base catalog: l1^n, linf^n and random bodies");
    common(s, true);
    s->add_option("--max-dim", A.max_dim);
    s->add_option("--random", A.random_count, "random bodies to add");
    on(s, [&] {
      Rng rng(c.need_seed());
      SpaceCatalog sc;
      for (std::size_t n = 1; n <= A.max_dim; ++n) {
        sc.add("l1^" + std::to_string(n), ell1(n));
        sc.add("linf^" + std::to_string(n), ell_inf(n));
      }
      for (std::size_t r = 0; r < A.random_count; ++r) {
        auto d = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(std::max<std::size_t>(A.max_dim, 2))));
        sc.add("rand" + std::to_string(r), make_space(random_body(rng, d, 2)));
      }
      print_catalog_change(c.out, SpaceCatalog{}, sc);
      replace_spaces(c, sc);
      c.save();
    });
  }
  auto step = [&](const std::string& cmd, const std::string& help, int which) {
    auto* s = leaf(cat, cmd, help);
    common(s, true);
    s->add_option("--random-per-space", A.per_space);
    s->add_option("--samples", A.samples, "samples per pair (subbconvex-step)");
    on(s, [&c, which] {
      SpaceCatalog before = to_catalog(c.catalog());
      CatalogPolicy p;
      p.random_per_space = A.per_space;
      SpaceCatalog after;
      if (which == 0) {
        p.seed = A.per_space ? c.need_seed() : c.seed.value_or(1);
        after = catalog_H(before, p);
      } else if (which == 1) {
        p.seed = A.per_space ? c.need_seed() : c.seed.value_or(1);
        after = catalog_Q(before, p);
      } else if (which == 2) {
        after = catalog_dual(before);
      } else {
        EnlargementPolicy e;
        e.samples_per_pair = A.samples;
        e.seed = c.need_seed();
        after = sub_bconvex_step(before, l1_part_of(before), e);
      }
      print_catalog_change(c.out, before, after);
      replace_spaces(c, after);
      c.save();
    });
  };
  step("h-step", "close under subspaces", 0);
  step("q-step", "close under quotients", 1);
  step("dual-step", "close under duals", 2);
  step("subbconvex-step", "one enlargement step F = (B + C)/N with B l1-embeddable", 3);

  // check
  auto* chk = app.add_subcommand("check", "property suites");
  chk->require_subcommand(1);
  {
    auto* s = leaf(chk, "duality", "dual(subspace) vs quotient(dual) on random cases");
    common(s, false);
    s->add_option("--samples", A.samples);
    on(s, [&] {
      Rng rng(c.need_seed());
      std::vector<FinSpace> pool;
      if (!c.in.empty())
        for (const auto& e : c.catalog().spaces)
          if (e.space.dim() >= 2) pool.push_back(e.space);
      std::size_t pass = 0;
      for (std::size_t k = 0; k < A.samples; ++k) {
        FinSpace x = pool.empty() ? make_space(random_body(rng, static_cast<std::size_t>(rng.uniform(2, 4)), 3))
                                  : pool[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
        std::size_t kdim = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(x.dim()) - 1));
        RatMat s = random_basis(rng, x.dim(), kdim, 2);
        DualityReport r = duality_identity_check(x, s);
        if (r.ok()) ++pass;
        else c.out << "fail: case " << k << " (dim " << x.dim() << ", sub " << kdim << ")\n";
      }
      c.out << "duality: " << pass << "/" << A.samples << " passed\n";
      if (pass != A.samples) throw VerificationFailure{"duality identities failed"};
    });
  }
  {
    auto* s = leaf(chk, "identities", "bidual, l1/linf duality and (H K)* = Q(K*) on a catalog");
    common(s, false);
    on(s, [&] {
      SpaceCatalog base;
      if (!c.in.empty()) base = to_catalog(c.catalog());
      else
        for (std::size_t n = 1; n <= 3; ++n) {
          base.add("l1^" + std::to_string(n), ell1(n));
          base.add("linf^" + std::to_string(n), ell_inf(n));
        }
      bool all = true;
      auto report = [&](const std::string& what, bool ok) {
        c.out << (ok ? "PASS " : "FAIL ") << what << "\n";
        all = all && ok;
      };
      bool bidual = true;
      for (const auto& e : base.entries()) bidual = bidual && dual(dual(e.space)).ball == e.space.ball;
      report("bidual X** = X on " + std::to_string(base.size()) + " spaces", bidual);
      bool l1 = true;
      for (std::size_t n = 1; n <= 3; ++n) l1 = l1 && is_isometric(dual(ell1(n)), ell_inf(n)).has_value();
      report("(l1^n)* = linf^n for n <= 3", l1);
      CatalogPolicy p;
      SpaceCatalog lhs = catalog_dual(catalog_H(base, p)), rhs = catalog_Q(catalog_dual(base), p);
      bool same = lhs.size() == rhs.size();
      for (const auto& e : lhs.entries()) same = same && rhs.find_isometric(e.space).has_value();
      report("(H K)* = Q(K*) up to isometry (" + std::to_string(lhs.size()) + " classes)", same);
      if (!all) throw VerificationFailure{"identity check failed"};
    });
  }

  // invariant
  auto* inv = app.add_subcommand("invariant", "type and cotype witnesses");
  inv->require_subcommand(1);

  {
    auto* s = leaf(inv, "cotype", "cotype-q lower bound from a family");
    common(s, false);
    s->add_option("--name", A.name)->required();
    s->add_option("--vecs", A.vecs, "vectors as rows")->required();
    s->add_option("--q", A.q_s, "exponent in [2, inf]");
    on(s, [&] {
      auto r = cotype_witness(resolve_space(c, A.name), parse_rows(A.vecs), parse_exponent(A.q_s));
      c.out << "average: " << to_string(r.average) << "\nlhs: " << r.lhs << "\nbound: " << r.bound << "\n";
      if (r.bound_exact) c.out << "bound (exact): " << to_string(*r.bound_exact) << "\n";
      if (r.bound_squared) c.out << "bound squared (exact): " << to_string(*r.bound_squared) << "\n";
    });
  }
  {
    auto* s = leaf(inv, "type", "type-p lower bound from a family");
    common(s, false);
    s->add_option("--name", A.name)->required();
    s->add_option("--vecs", A.vecs, "vectors as rows")->required();
    s->add_option("--p", A.p_s, "exponent in [1, 2]");
    on(s, [&] {
      auto r = type_witness(resolve_space(c, A.name), parse_rows(A.vecs), parse_rat(A.p_s));
      c.out << "average: " << to_string(r.average) << "\nlhs: " << r.lhs << "\nbound: " << r.bound << "\n";
      if (r.bound_exact) c.out << "bound (exact): " << to_string(*r.bound_exact) << "\n";
      if (r.bound_squared) c.out << "bound squared (exact): " << to_string(*r.bound_squared) << "\n";
    });
  }
  {
    auto* s = leaf(inv, "radavg", "Rademacher average of a family");
    common(s, false);
    s->add_option("--name", A.name)->required();
    s->add_option("--vecs", A.vecs, "vectors as rows")->required();
    on(s, [&] {
      Rat a = rademacher_average(resolve_space(c, A.name), parse_rows(A.vecs));
      c.out << "average: " << to_string(a) << " (" << to_double(a) << ")\n";
    });
  }

  // projconst
  auto* pc = app.add_subcommand("projconst", "projection constants");
  pc->require_subcommand(1);

  {
    auto* s = leaf(pc, "solve", "minimal projection onto span(basis)");
    common(s, false);
    s->add_option("--name", A.name)->required();
    s->add_option("--basis", A.basis)->required();
    s->add_option("--proj", A.proj, "a projection to compare against");
    on(s, [&] {
      FinSpace x = resolve_space(c, A.name);
      RatMat b = parse_mat(A.basis);
      ProjResult r = projection_constant(x, b);
      c.out << "lambda: " << to_string(r.lambda) << " (" << to_double(r.lambda) << ")\n";
      print_mat(c.out, "projection", r.optimal_projection.matrix);
      if (!A.proj.empty()) {
        RatMat pm = parse_mat(A.proj);
        if (!is_projection_onto(pm, b)) fail(ErrorKind::InvalidArgument, "--proj is not a projection onto span(basis)");
        Rat pn = operator_norm(LinOp{x, x, pm});
        c.out << "given projection norm: " << to_string(pn) << "\n";
        if (pn < r.lambda) throw VerificationFailure{"a projection beat the LP optimum"};
      }
    });
  }
  {
    auto* s = leaf(pc, "trend", "lambda of near-Euclidean subspaces of l1^N by rank");
    common(s, false);
    s->add_option("--csv", A.csv, "also write the table as CSV");
    on(s, [&] {
      TrendReport t = projection_trend(near_euclidean_l1_subspaces());
      for (const auto& r : t.rows) c.out << "rank " << r.rank << ": lambda " << to_string(r.lambda) << " (" << to_double(r.lambda) << ")\n";
      if (t.exponent) c.out << "fitted exponent: " << *t.exponent << "\n";
      c.out << "increasing: " << (t.increasing ? "yes" : "no") << "\n";
      if (!A.csv.empty()) emit_report(A.csv, trend_report(t));
    });
  }

  // tensor
  auto* ten = app.add_subcommand("tensor", "tensor norms");
  ten->require_subcommand(1);

  {
    auto* s = leaf(ten, "norms", "injective and projective norms of sum c_ij e_i (x) e_j");
    common(s, false);
    s->add_option("--left", A.left)->required();
    s->add_option("--right", A.right)->required();
    s->add_option("--coeffs", A.coeffs, "left.dim x right.dim matrix")->required();
    on(s, [&] {
      TensorElem t{resolve_space(c, A.left), resolve_space(c, A.right), parse_mat(A.coeffs)};
      Rat inj = injective_norm(t), pro = projective_norm(t);
      c.out << "injective: " << to_string(inj) << " (" << to_double(inj) << ")\n";
      c.out << "projective: " << to_string(pro) << " (" << to_double(pro) << ")\n";
      if (inj > pro) throw VerificationFailure{"injective norm exceeds projective norm"};
    });
  }

  // op
  auto* op = app.add_subcommand("op", "operator norms");
  op->require_subcommand(1);

  auto opcmd = [&](const std::string& cmd, const std::string& help) {
    auto* s = leaf(op, cmd, help);
    common(s, false);
    s->add_option("--domain", A.domain)->required();
    s->add_option("--codomain", A.codomain)->required();
    s->add_option("--matrix", A.matrix)->required();
    on(s, [&c, cmd] {
      LinOp u = make_op(resolve_space(c, A.domain), resolve_space(c, A.codomain), parse_mat(A.matrix));
      if (cmd == "norm") {
        Rat v = operator_norm(u);
        c.out << "norm: " << to_string(v) << " (" << to_double(v) << ")\n";
      } else if (cmd == "nuclear") {
        Rat v = nuclear_norm(u);
        c.out << "nuclear: " << to_string(v) << " (" << to_double(v) << ")\n";
      } else {
        Pi1Result r = pi1(u);
        c.out << "pi1: " << to_string(r.value) << " (" << to_double(r.value) << ")\ncuts: " << r.cuts << "\nweights:";
        for (std::size_t i = 0; i < r.functionals.size(); ++i)
          if (r.weights[i] != 0) c.out << " " << to_string(r.weights[i]) << "@" << to_string(r.functionals[i]);
        c.out << "\n";
      }
    });
  };
  opcmd("norm", "operator norm");
  opcmd("nuclear", "nuclear norm");
  opcmd("pi1", "1-summing norm with Pietsch weights");

  // tower
  auto* tw = app.add_subcommand("tower", "finite towers of pushouts");
  tw->require_subcommand(1);


  {
    auto* s = leaf(tw, "net", "greedy net of triples A -> B from the catalog");
    common(s, true);
    s->add_option("--n", A.n_dim);
    s->add_option("--m", A.m_dim);
    s->add_option("--eps", A.eps_s, "resolution, or inf")->required();
    s->add_option("--samples", A.samples, "random sections per space");
    on(s, [&] {
      std::vector<FinSpace> spaces;
      for (const auto& e : c.catalog().spaces) spaces.push_back(e.space);
      std::optional<Rat> eps;
      if (A.eps_s != "inf") eps = parse_rat(A.eps_s);
      TripleNet net = triple_net(spaces, A.n_dim, A.m_dim, eps, c.need_seed(), A.samples);
      c.out << "net: " << net.triples.size() << " triples\n";
      for (std::size_t i = 0; i < net.triples.size(); ++i) {
        c.out << "  " << i << ": B ";
        summary(c.out, "B", net.triples[i].b);
        print_mat(c.out, "     i", net.triples[i].i.matrix);
      }
      if (!c.save_as.empty()) c.catalog().towers[c.save_as] = TowerRecord{"", net, {}, *c.seed, std::nullopt, ""};
      c.save();
    });
  }
  {
    auto* s = leaf(tw, "build", "round-robin tower from a seed space");
    common(s, true);
    s->add_option("--seed-space", A.seed_space);
    s->add_option("--steps", A.steps);
    s->add_option("--net", A.net_name, "tower record whose net to use (default: l1^2, linf^2, hexagon over e1)");
    on(s, [&] {
      TripleNet net = A.net_name.empty() ? default_net() : tower_record(c, A.net_name).net;
      FinSpace x0 = resolve_space(c, A.seed_space);
      TowerStage st = build_tower(x0, net, A.steps, c.need_seed());
      c.out << "stage " << st.index << ": dim " << st.space.dim() << ", " << st.space.ball.vertices().size() << " vertices, "
            << st.space.ball.facets().size() << " facets\n";
      if (st.truncated) c.out << "truncated: " << st.truncation << "\n";
      for (std::size_t k = 0; k < st.log.size(); ++k)
        c.out << "  step " << k << ": triple " << st.log[k].triple << ", anchor from " << st.log[k].source << "\n";
      check_chain(st, c.out);
      if (!c.save_as.empty()) c.catalog().towers[c.save_as] = TowerRecord{A.seed_space, net, st.log, *c.seed, st.space, st.truncation};
      c.save();
    });
  }
  {
    auto* s = leaf(tw, "defect", "homogeneity defect probes on a saved tower");
    common(s, false);
    s->add_option("--tower", A.tower_name)->required();
    s->add_option("--probes", A.probes);
    s->add_option("--restarts", A.restarts);
    s->add_option("--csv", A.csv, "also write the probes as CSV");
    on(s, [&] {
      const TowerRecord& t = tower_record(c, A.tower_name);
      TowerStage st = stage_of(c, t);
      DefectStats d = homogeneity_defect(st, t.net, DefectOptions{A.probes, A.restarts, 5, c.need_seed()});
      print_defects(c.out, d);
      if (!A.csv.empty()) emit_report(A.csv, defect_report(d));
    });
  }
  {
    auto* s = leaf(tw, "replay", "rebuild a saved tower from its log and compare");
    common(s, false);
    s->add_option("--tower", A.tower_name)->required();
    on(s, [&] {
      const TowerRecord& t = tower_record(c, A.tower_name);
      TowerStage st = stage_of(c, t);
      c.out << "replayed " << st.index << " steps: dim " << st.space.dim() << "\n";
      check_chain(st, c.out);
      bool same = !t.final_space || t.final_space->ball == st.space.ball;
      c.out << "matches saved stage: " << (same ? "yes" : "no") << "\n";
      if (!same) throw VerificationFailure{"replay differs from the saved stage"};
    });
  }

  // report
  auto* rep = app.add_subcommand("report", "CSV reports");
  rep->require_subcommand(1);

  {
    auto* s = leaf(rep, "emit", "write a CSV table");
    common(s, false);
    s->add_option("--csv", A.csv, "output file")->required();
    s->add_option("--kind", A.report_kind, "trend, defect or catalog")->required()->check(CLI::IsMember({"trend", "defect", "catalog"}));
    s->add_option("--tower", A.tower_name, "tower record (defect)");
    s->add_option("--probes", A.probes);
    on(s, [&] {
      Report r;
      if (A.report_kind == "trend") {
        r = trend_report(projection_trend(near_euclidean_l1_subspaces()));
      } else if (A.report_kind == "defect") {
        const TowerRecord& t = tower_record(c, A.tower_name);
        r = defect_report(homogeneity_defect(stage_of(c, t), t.net, DefectOptions{A.probes, A.restarts, 5, c.need_seed()}));
      } else {
        r = Report{{{"name", false}, {"dim", false}, {"vertices", false}, {"facets", false}, {"op", false}}, {}};
        for (const auto& e : c.catalog().spaces)
          r.add_row({cell(e.name), cell(std::to_string(e.space.dim())), cell(std::to_string(e.space.ball.vertices().size())),
                     cell(std::to_string(e.space.ball.facets().size())), cell(e.provenance.op)});
      }
      emit_report(A.csv, r);
      c.out << "wrote " << A.csv << " (" << r.rows.size() << " rows)\n";
    });
  }
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"finban: exact computations with finite-dimensional polytopal normed spaces"};
  app.require_subcommand(1);
  A = Args{};
  Ctx c{out, err, {}, {}, {}, std::nullopt, {}, false};
  std::function<void()> action;
  register_commands(app, c, action);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for the command list\n";
    return 2;
  }
  try {
    if (action) action();
    return 0;
  } catch (const VerificationFailure& v) {
    err << "verification failed: " << v.what << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConstructionFailed ? 1 : 2;
  }
}

}  // namespace finban
