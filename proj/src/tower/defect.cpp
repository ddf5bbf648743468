#include <algorithm>

#include "finban/errors.hpp"
#include "finban/lp.hpp"
#include "finban/random.hpp"
#include "finban/tower.hpp"

namespace finban {

namespace {

// Standard-basis columns completing `basis` to a basis of R^m.
RatMat completion(const RatMat& basis) {
  const std::size_t m = basis.rows();
  std::vector<RatVec> cols = basis.col_list(), extra;
  for (std::size_t i = 0; i < m && cols.size() < m; ++i) {
    cols.push_back(unit(m, i));
    if (rank(cols, m) < cols.size()) cols.pop_back();
    else extra.push_back(unit(m, i));
  }
  return RatMat::from_cols(extra, m);
}

std::optional<Rat> ext_distortion(const FinSpace& b, const FinSpace& x, const RatMat& e) {
  DistortionCert c = distortion(LinOp{b, x, e});
  return c.distortion;
}

// Holding the image norms of B's vertices at their current values, minimise
// ||e|| over the free block W of e = [anchor | W] M. Returns the LP optimum
// as a candidate; the caller keeps it only if the exact distortion improves.
std::optional<RatMat> lp_step(const FinSpace& b, const FinSpace& x, const RatMat& anchor, const RatMat& w, const RatMat& m_inv) {
  const std::size_t dx = x.dim(), n = anchor.cols(), free = w.cols();
  std::vector<RatVec> half;
  for (const auto& v : b.ball.vertices())
    if (lex_positive(v)) half.push_back(v);
  if (half.size() * x.ball.facets().size() > 6000) return std::nullopt;

  const std::size_t nv = dx * free + 1;
  LinearProgram lp(nv);
  RatVec obj = zeros(nv);
  obj[nv - 1] = 1;
  lp.minimize(obj);
  RatMat cur = anchor.hcat(w) * m_inv;
  for (const auto& v : half) {
    RatVec mv = m_inv.apply(v);
    RatVec fixed = zeros(dx);
    for (std::size_t r = 0; r < dx; ++r)
      for (std::size_t j = 0; j < n; ++j) fixed[r] += anchor(r, j) * mv[j];
    RatVec img = cur.apply(v);
    const RatVec* active = nullptr;
    Rat best = 0;
    for (const auto& f : x.ball.facets()) {
      // <f, fixed + W mv_bot> <= t
      RatVec row = zeros(nv);
      for (std::size_t r = 0; r < dx; ++r)
        for (std::size_t j = 0; j < free; ++j) row[r * free + j] = f[r] * mv[n + j];
      row[nv - 1] = -1;
      lp.add_le(row, -dot(f, fixed));
      Rat val = dot(f, img);
      if (!active || val > best) {
        best = val;
        active = &f;
      }
    }
    RatVec row = zeros(nv);
    for (std::size_t r = 0; r < dx; ++r)
      for (std::size_t j = 0; j < free; ++j) row[r * free + j] = (*active)[r] * mv[n + j];
    lp.add_ge(row, best - dot(*active, fixed));
  }
  LpResult res = lp.solve();
  if (res.status != LpStatus::Optimal) return std::nullopt;
  RatMat out(dx, free);
  for (std::size_t r = 0; r < dx; ++r)
    for (std::size_t j = 0; j < free; ++j) out(r, j) = res.x[r * free + j];
  return out;
}

Rat median_of(std::vector<Rat> v) {
  std::sort(v.begin(), v.end());
  std::size_t h = v.size() / 2;
  if (v.size() % 2) return v[h];
  return (v[h - 1] + v[h]) / 2;
}

}  // namespace

ProbeResult probe_extension(const TowerStage& stage, const TripleNet& net, std::size_t triple, const RatMat& anchor,
                            const DefectOptions& opt) {
  if (triple >= net.triples.size()) fail(ErrorKind::InvalidArgument, "triple index out of range");
  const EmbeddingTriple& t = net.triples[triple];
  const FinSpace& x = stage.space;
  ProbeResult out{triple, anchor, Rat(0), "", std::nullopt};

  if (t.a.dim() == t.b.dim()) {
    RatMat e = anchor * *inverse(t.i.matrix);
    out.bound = *ext_distortion(t.b, x, e);
    out.source = "identity";
    out.extension = e;
    return out;
  }
  for (std::size_t s = 0; s < stage.log.size(); ++s) {
    const auto& entry = stage.log[s];
    if (entry.triple != triple) continue;
    RatMat up = chain_map(stage, s + 1, stage.index);
    if (up * stage.chain[s].matrix * entry.anchor == anchor) {
      out.bound = 1;
      out.source = "log";
      out.extension = up * entry.j2;
      return out;
    }
  }

  // e = [anchor | W] [i | C]^-1 extends the anchor for every W.
  RatMat m_inv = *inverse(t.i.matrix.hcat(completion(t.i.matrix)));
  const std::size_t free = t.b.dim() - t.a.dim();
  Rng rng(opt.seed);
  std::vector<RatVec> targets;
  for (const auto& v : x.ball.vertices()) targets.push_back(v);

  std::optional<Rat> best;
  std::optional<RatMat> best_e;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    std::vector<RatVec> cols;
    for (std::size_t j = 0; j < free; ++j) {
      if (r % 2 == 0) cols.push_back(targets[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(targets.size()) - 1))]);
      else cols.push_back(random_int_vec(rng, x.dim(), 2));
    }
    RatMat w = RatMat::from_cols(cols, x.dim());
    auto val = ext_distortion(t.b, x, anchor.hcat(w) * m_inv);
    if (!val) continue;
    Rat step(1, 2);
    for (std::size_t round = 0; round < opt.refine_rounds; ++round, step /= 2) {
      if (auto w2 = lp_step(t.b, x, anchor, w, m_inv)) {
        auto v2 = ext_distortion(t.b, x, anchor.hcat(*w2) * m_inv);
        if (v2 && *v2 < *val) {
          val = v2;
          w = *w2;
        }
      }
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t i = 0; i < w.rows(); ++i)
          for (std::size_t j = 0; j < w.cols(); ++j)
            for (int sg : {1, -1}) {
              RatMat w2 = w;
              w2(i, j) += sg > 0 ? step : Rat(-step);
              auto v2 = ext_distortion(t.b, x, anchor.hcat(w2) * m_inv);
              if (v2 && *v2 < *val) {
                val = v2;
                w = w2;
                improved = true;
              }
            }
      }
    }
    if (!best || *val < *best) {
      best = val;
      best_e = anchor.hcat(w) * m_inv;
    }
    if (*best == 1) break;
  }
  out.source = "search";
  if (best) {
    out.bound = *best;
    out.extension = best_e;
  } else {
    out.bound = -1;  // no injective extension met; reported, never used as a bound
  }
  return out;
}

DefectStats homogeneity_defect(const TowerStage& stage, const TripleNet& net, const DefectOptions& opt) {
  DefectStats stats;
  if (net.triples.empty()) return stats;
  Rng rng(opt.seed);
  std::vector<Rat> bounds;
  for (std::size_t p = 0; p < opt.probes; ++p) {
    std::size_t ti = p % net.triples.size();
    auto cands = anchor_candidates(stage, net, ti, rng.next());
    if (cands.empty()) continue;
    const auto& pick = cands[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(cands.size()) - 1))];
    DefectOptions o = opt;
    o.seed = rng.next();
    ProbeResult r = probe_extension(stage, net, ti, pick.first, o);
    if (r.bound > 0) bounds.push_back(r.bound);
    stats.probes.push_back(std::move(r));
  }
  if (!bounds.empty()) {
    stats.median = median_of(bounds);
    stats.max = *std::max_element(bounds.begin(), bounds.end());
  }
  return stats;
}

}  // namespace finban
