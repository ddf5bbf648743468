#include <algorithm>

#include "finban/errors.hpp"
#include "finban/l1.hpp"

namespace finban {

IncarnatingSet make_incarnating_set(std::size_t sub_dim, std::vector<RatVec> generators) {
  for (const auto& g : generators)
    if (g.size() != sub_dim) fail(ErrorKind::DimMismatch, "generator of the wrong dimension");
  IncarnatingSet k{sub_dim, canonical_generators(generators)};
  if (rank(k.generators, sub_dim) < sub_dim) fail(ErrorKind::NotSpanning, "incarnating set does not span R^" + std::to_string(sub_dim));
  return k;
}

L1Embedding incarnate(const RatMat& basis) {
  if (basis.cols() == 0 || rank(basis) < basis.cols()) fail(ErrorKind::DependentColumns, "embedding basis columns are dependent");
  std::vector<RatVec> rows;
  for (const auto& r : basis.row_list())
    if (!is_zero(r)) rows.push_back(r);
  return L1Embedding{basis.rows(), basis, make_incarnating_set(basis.cols(), std::move(rows))};
}

Rat incarnation_norm(const IncarnatingSet& k, const RatVec& c) {
  if (c.size() != k.sub_dim) fail(ErrorKind::DimMismatch, "coefficient vector of the wrong size");
  Rat s = 0;
  for (const auto& g : k.generators) s += rat_abs(dot(g, c));
  return s;
}

SymPolytope dual_zonotope(const IncarnatingSet& k) { return zonotope_of(k.generators); }

FinSpace incarnated_space(const IncarnatingSet& k) { return make_space(polar(dual_zonotope(k))); }

IncarnatingSet reconstruct(const SymPolytope& z) {
  const std::size_t m = z.dim();
  if (m == 1) return IncarnatingSet{1, {z.vertices().back()}};
  if (!is_zonotope(z)) fail(ErrorKind::NotAZonotope, "some 2-face is not centrally symmetric");
  std::vector<RatVec> gens;
  for (const auto& e : edges(z)) {
    RatVec g = scale(e.direction, Rat(1, 2));
    gens.push_back(lex_positive(g) ? g : neg(g));
  }
  sort_unique(gens);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (parallel_ratio(gens[i], gens[j])) fail(ErrorKind::NotAZonotope, "parallel edges of different lengths");
  IncarnatingSet k{m, std::move(gens)};
  if (!(zonotope_of(k.generators) == z)) fail(ErrorKind::NotAZonotope, "edge generators do not rebuild the body");
  return k;
}

std::optional<IncarnatingSet> is_l1_embeddable(const FinSpace& x) {
  try {
    return reconstruct(polar(x.ball));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotAZonotope) return std::nullopt;
    throw;
  }
}

}  // namespace finban
