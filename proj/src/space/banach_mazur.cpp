#include <algorithm>
#include <optional>

#include "finban/errors.hpp"
#include "finban/random.hpp"
#include "finban/space.hpp"

namespace finban {

std::optional<Rat> map_distortion(const FinSpace& x, const FinSpace& y, const RatMat& t) {
  auto inv = inverse(t);
  if (!inv) return std::nullopt;
  Rat a = 0, b = 0;
  for (const auto& v : x.ball.vertices()) a = std::max(a, gauge(y.ball, t.apply(v)));
  for (const auto& w : y.ball.vertices()) b = std::max(b, gauge(x.ball, inv->apply(w)));
  return a * b;
}

namespace {

struct Candidate {
  RatMat t;
  Rat value;
};

std::vector<RatVec> half_reps(const std::vector<RatVec>& vs) {
  std::vector<RatVec> out;
  for (const auto& v : vs)
    if (lex_positive(v)) out.push_back(v);
  return out;
}

// Image candidates: vertices and edge midpoints of the target ball.
std::vector<RatVec> targets(const SymPolytope& p) {
  std::vector<RatVec> out = p.vertices();
  if (p.dim() >= 2)
    for (const auto& e : edges(p)) out.push_back(scale(add(p.vertices()[e.a], p.vertices()[e.b]), Rat(1, 2)));
  sort_unique(out);
  return out;
}

// Basis-to-points maps B_Y B_X^-1, exhaustive when small, sampled otherwise.
std::vector<RatMat> starts(const FinSpace& x, const FinSpace& y, Rng& rng, std::size_t wanted) {
  const std::size_t n = x.dim();
  auto src = half_reps(x.ball.vertices());
  auto dst = targets(y.ball);
  std::vector<RatMat> out;

  auto emit = [&](const std::vector<std::size_t>& si, const std::vector<std::size_t>& di) {
    std::vector<RatVec> a, b;
    for (auto i : si) a.push_back(src[i]);
    for (auto i : di) b.push_back(dst[i]);
    auto ainv = inverse(RatMat::from_cols(a));
    if (!ainv) return;
    RatMat t = RatMat::from_cols(b) * *ainv;
    if (rank(t) == n) out.push_back(t);
  };

  std::vector<std::size_t> basis;
  // The first independent family of source vertices is fixed; all choices of
  // images are varied (any congruence is determined by such a family).
  basis = independent_subset(src, n);
  if (basis.size() < n) return out;
  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(dst.size());
  if (total <= static_cast<double>(wanted) * 4) {
    std::vector<std::size_t> di(n, 0);
    while (true) {
      emit(basis, di);
      std::size_t k = 0;
      while (k < n && ++di[k] == dst.size()) di[k++] = 0;
      if (k == n) break;
    }
  } else {
    for (std::size_t s = 0; s < wanted; ++s) {
      std::vector<std::size_t> di(n);
      for (auto& d : di) d = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(dst.size()) - 1));
      emit(basis, di);
    }
  }
  return out;
}

Candidate refine(const FinSpace& x, const FinSpace& y, Candidate c, std::size_t rounds) {
  Rat scale_ = 0;
  for (std::size_t i = 0; i < c.t.rows(); ++i)
    for (std::size_t j = 0; j < c.t.cols(); ++j) scale_ = std::max(scale_, rat_abs(c.t(i, j)));
  Rat step = scale_ / 4;
  for (std::size_t r = 0; r < rounds; ++r, step /= 2) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < c.t.rows(); ++i)
        for (std::size_t j = 0; j < c.t.cols(); ++j)
          for (int sgn : {1, -1}) {
            RatMat t = c.t;
            t(i, j) += sgn > 0 ? step : Rat(-step);
            auto v = map_distortion(x, y, t);
            if (v && *v < c.value) {
              c = Candidate{t, *v};
              improved = true;
            }
          }
    }
  }
  return c;
}

}  // namespace

DistortionCert bm_upper(const FinSpace& x, const FinSpace& y, const BmBudget& budget) {
  if (x.dim() != y.dim()) fail(ErrorKind::DimMismatch, "Banach-Mazur distance needs equal dimensions");
  if (auto iso = is_isometric(x, y)) return distortion(*iso);

  Rng rng(budget.seed);
  std::vector<Candidate> pool;
  for (const auto& t : starts(x, y, rng, budget.starts))
    if (auto v = map_distortion(x, y, t)) pool.push_back({t, *v});
  // Dual starts: S : X* -> Y* gives T = (S^T)^-1 : X -> Y with equal distortion.
  for (const auto& s : starts(dual(x), dual(y), rng, budget.starts)) {
    auto t = inverse(s.transpose());
    if (!t) continue;
    if (auto v = map_distortion(x, y, *t)) pool.push_back({*t, *v});
  }
  if (pool.empty()) pool.push_back({RatMat::identity(x.dim()), *map_distortion(x, y, RatMat::identity(x.dim()))});

  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  std::size_t keep = std::min<std::size_t>(pool.size(), 4);
  Candidate best = pool.front();
  for (std::size_t i = 0; i < keep; ++i) {
    Candidate c = refine(x, y, pool[i], budget.refine_rounds);
    if (c.value < best.value) best = c;
  }
  return distortion(LinOp{x, y, best.t});
}

}  // namespace finban
