#include <functional>

#include "finban/analysis.hpp"
#include "finban/errors.hpp"
#include "finban/lp.hpp"

namespace finban {

std::vector<RatVec> arrangement_rays(const std::vector<RatVec>& functionals, std::size_t dim) {
  if (dim == 1) return {{Rat(1)}};
  std::vector<RatVec> rays;
  const std::size_t k = dim - 1, n = functionals.size();
  if (n < k) return rays;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<RatVec> sel;
    for (auto i : idx) sel.push_back(functionals[i]);
    RatMat ns = nullspace(RatMat::from_rows(sel));
    if (ns.cols() == 1) {
      RatVec r = ns.col(0);
      rays.push_back(primitive(lex_positive(r) ? r : neg(r)));
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  sort_unique(rays);
  return rays;
}

Pi1Result pi1(const LinOp& u) {
  const std::size_t n = u.domain.dim();
  std::vector<RatVec> fs;
  for (const auto& f : u.domain.ball.facets())
    if (lex_positive(f)) fs.push_back(f);
  // Within one sign cell of the arrangement the weighted sum is linear and
  // ||u x|| convex, so the inequality holds everywhere iff it holds on rays.
  std::vector<RatVec> rays = arrangement_rays(fs, n);
  std::vector<Rat> target;
  std::vector<RatVec> absvals;
  for (const auto& r : rays) {
    target.push_back(norm(u.codomain, u.matrix.apply(r)));
    RatVec a;
    for (const auto& f : fs) a.push_back(rat_abs(dot(f, r)));
    absvals.push_back(std::move(a));
  }

  Pi1Result res{Rat(0), fs, std::vector<Rat>(fs.size(), Rat(0)), 0};
  std::vector<bool> active(rays.size(), false);
  while (true) {
    // Most violated ray, measured by the ratio ||u r|| / sum w_f |f(r)|.
    std::size_t worst = rays.size();
    Rat worst_gap = 0;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (target[i] == 0) continue;
      Rat lhs = 0;
      for (std::size_t f = 0; f < fs.size(); ++f) lhs += res.weights[f] * absvals[i][f];
      Rat gap = lhs == 0 ? Rat(-1) : lhs / target[i];  // smaller is worse; 0-sum ranks first
      if (lhs < target[i] && (worst == rays.size() || gap < worst_gap)) {
        worst = i;
        worst_gap = gap;
      }
    }
    if (worst == rays.size()) break;
    active[worst] = true;
    ++res.cuts;

    LinearProgram lp(fs.size());
    lp.minimize(RatVec(fs.size(), Rat(1)));
    for (std::size_t f = 0; f < fs.size(); ++f) lp.add_ge(unit(fs.size(), f), Rat(0));
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (active[i]) lp.add_ge(absvals[i], target[i]);
    LpResult r = solve_or_throw(lp);
    res.value = r.value;
    res.weights = r.x;
  }
  return res;
}

Rat pi1_norm(const LinOp& u) { return pi1(u).value; }

}  // namespace finban
