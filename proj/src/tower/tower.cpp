#include <algorithm>

#include "finban/budget.hpp"
#include "finban/errors.hpp"
#include "finban/formation.hpp"
#include "finban/random.hpp"
#include "finban/tower.hpp"

namespace finban {

namespace {

Budgets tower_budgets() {
  Budgets b = budgets();
  b.dd_max_dim = std::max(b.dd_max_dim, b.tower_max_dim);
  return b;
}

std::size_t stage_dim(const TowerStage& stage, std::size_t k) {
  return k == stage.index ? stage.space.dim() : stage.chain[k].domain.dim();
}

}  // namespace

TowerStage seed_stage(const FinSpace& x) {
  TowerStage s{0, x, {}, {}, {}, false, {}};
  if (s.space.label.empty()) s.space.label = "X0";
  return s;
}

RatMat chain_map(const TowerStage& stage, std::size_t from, std::size_t to) {
  if (from > to || to > stage.index) fail(ErrorKind::InvalidArgument, "chain_map needs from <= to <= stage index");
  RatMat m = RatMat::identity(stage_dim(stage, from));
  for (std::size_t k = from; k < to; ++k) m = stage.chain[k].matrix * m;
  return m;
}

TowerStage tower_step(const TowerStage& stage, const EmbeddingTriple& t, const RatMat& anchor, std::size_t triple_index,
                      const std::string& source) {
  BudgetScope scope(tower_budgets());
  const FinSpace& x = stage.space;
  if (anchor.rows() != x.dim() || anchor.cols() != t.a.dim()) fail(ErrorKind::DimMismatch, "anchor shape does not match A -> X_k");
  auto d = isometry_defect(LinOp{t.a, x, anchor});
  if (!d || *d != 0) fail(ErrorKind::NotIsometricInput, "anchor is not an isometric embedding");
  if (x.dim() + t.b.dim() - t.a.dim() > budgets().tower_max_dim)
    fail(ErrorKind::DimensionOverBudget, "next stage would exceed tower_max_dim");

  VFormation v = make_formation(t.a, x, t.b, anchor, t.i.matrix);
  Amalgam am = pushout(v);
  TowerStage next = stage;
  next.index = stage.index + 1;
  next.space = am.f;
  next.space.label = "X" + std::to_string(next.index);
  next.chain.push_back(LinOp{x, next.space, am.j1.matrix});
  next.log.push_back(TowerLogEntry{triple_index, anchor, source, am.j2.matrix});
  next.defects = {};
  next.truncated = false;
  next.truncation.clear();
  return next;
}

std::vector<std::pair<RatMat, std::string>> anchor_candidates(const TowerStage& stage, const TripleNet& net, std::size_t triple,
                                                              std::uint64_t seed, std::size_t random_tries) {
  if (triple >= net.triples.size()) fail(ErrorKind::InvalidArgument, "triple index out of range");
  const FinSpace& a = net.triples[triple].a;
  const FinSpace& x = stage.space;
  std::vector<std::pair<RatMat, std::string>> out;
  auto push = [&](RatMat m, const std::string& src) {
    for (const auto& c : out)
      if (c.first == m) return;
    out.emplace_back(std::move(m), src);
  };

  if (a.dim() <= x.dim()) {
    if (a.dim() == stage_dim(stage, 0))
      if (auto t = congruent(a.ball, stage.chain.empty() ? x.ball : stage.chain[0].domain.ball))
        push(chain_map(stage, 0, stage.index) * *t, "seed");
    for (std::size_t s = 0; s < stage.log.size(); ++s) {
      const auto& e = stage.log[s];
      const FinSpace& as = net.triples.at(e.triple).a;
      if (as.dim() != a.dim()) continue;
      auto t = congruent(a.ball, as.ball);
      if (!t) continue;
      push(chain_map(stage, s + 1, stage.index) * stage.chain[s].matrix * e.anchor * *t, "log");
    }
  }

  Rng rng(seed);
  std::vector<RatVec> half;
  for (const auto& v : x.ball.vertices())
    if (lex_positive(v)) half.push_back(v);
  for (std::size_t r = 0; r < random_tries && a.dim() <= x.dim() && !half.empty(); ++r) {
    std::vector<RatVec> cols;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      RatVec v = half[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(half.size()) - 1))];
      if (rng.uniform(0, 1)) v = neg(v);
      cols.push_back(v);
    }
    if (rank(cols, x.dim()) < a.dim()) continue;
    RatMat s = RatMat::from_cols(cols);
    if (a.dim() == 1) {
      Rat r0 = a.ball.vertices().back()[0];  // the positive endpoint
      push(s.scaled(1 / r0), "random");
      continue;
    }
    FinSpace sec = subspace(x, s);
    if (auto t = congruent(a.ball, sec.ball)) push(s * *t, "random");
  }
  return out;
}

TowerStage build_tower(const FinSpace& seed_space, const TripleNet& net, std::size_t steps, std::uint64_t seed) {
  TowerStage stage = seed_stage(seed_space);
  if (steps == 0) return stage;
  if (net.triples.empty()) fail(ErrorKind::InvalidArgument, "empty triple net");
  BudgetScope scope(tower_budgets());
  Rng rng(seed);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t ti = k % net.triples.size();
    try {
      auto cands = anchor_candidates(stage, net, ti, rng.next());
      if (cands.empty()) {
        stage.truncated = true;
        stage.truncation = "no isometric copy of A found at step " + std::to_string(k);
        return stage;
      }
      const auto& pick = cands[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(cands.size()) - 1))];
      stage = tower_step(stage, net.triples[ti], pick.first, ti, pick.second);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded && e.kind() != ErrorKind::DimensionOverBudget) throw;
      stage.truncated = true;
      stage.truncation = "step " + std::to_string(k) + ": " + e.what();
      return stage;
    }
  }
  return stage;
}

TowerStage replay(const FinSpace& seed_space, const TripleNet& net, const std::vector<TowerLogEntry>& log) {
  TowerStage stage = seed_stage(seed_space);
  for (const auto& e : log) {
    if (e.triple >= net.triples.size()) fail(ErrorKind::InvalidArgument, "log refers to a triple outside the net");
    stage = tower_step(stage, net.triples[e.triple], e.anchor, e.triple, e.source);
  }
  return stage;
}

}  // namespace finban
