// Linear congruence of symmetric polytopes.
//
// For vertex set V let M = sum v v^T and g(x, y) = x^T M^-1 y. Any linear T
// with T(V_P) = V_Q carries M_P to T M_P T^T = M_Q and so preserves g. The
// search assigns images to a vertex basis of P one at a time, keeping only
// candidates whose g-values agree with those of the basis; the leaf map is
// then checked on every vertex.

#include <algorithm>
#include <functional>

#include "finban/errors.hpp"
#include "finban/polytope.hpp"

namespace finban {

namespace {

RatMat inverse_moment(const std::vector<RatVec>& vs, std::size_t m) {
  RatMat M(m, m);
  for (const auto& v : vs)
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(v[i]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (sgn(v[j]) != 0) M(i, j) += v[i] * v[j];
    }
  auto inv = inverse(M);
  if (!inv) fail(ErrorKind::NotFullDimensional, "vertex moment matrix is singular");
  return *inv;
}

Rat form(const RatMat& g, const RatVec& x, const RatVec& y) { return dot(x, g.apply(y)); }

}  // namespace

CongruenceKey congruence_key(const SymPolytope& p) {
  CongruenceKey k;
  k.dim = p.dim();
  k.vertex_count = p.vertices().size();
  k.facet_count = p.facets().size();
  RatMat g = inverse_moment(p.vertices(), p.dim());
  for (const auto& v : p.vertices()) k.vertex_forms.push_back(form(g, v, v));
  std::sort(k.vertex_forms.begin(), k.vertex_forms.end());
  return k;
}

std::vector<RatMat> all_congruences(const SymPolytope& p, const SymPolytope& q, std::size_t limit) {
  std::vector<RatMat> found;
  const std::size_t m = p.dim();
  if (q.dim() != m || p.vertices().size() != q.vertices().size() || p.facets().size() != q.facets().size()) return found;

  const auto& vp = p.vertices();
  const auto& vq = q.vertices();
  RatMat gp = inverse_moment(vp, m);
  RatMat gq = inverse_moment(vq, m);

  std::vector<std::size_t> basis = independent_subset(vp, m);
  std::vector<RatVec> bvec;
  for (auto i : basis) bvec.push_back(vp[i]);
  RatMat binv = *inverse(RatMat::from_cols(bvec));

  // Gram data: basis of P against itself, all of Q against all of Q.
  RatMat gram_p(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) gram_p(a, b) = form(gp, bvec[a], bvec[b]);
  std::vector<RatVec> gq_rows(vq.size());
  for (std::size_t i = 0; i < vq.size(); ++i) {
    RatVec gi = gq.apply(vq[i]);
    gq_rows[i].resize(vq.size());
    for (std::size_t j = 0; j < vq.size(); ++j) gq_rows[i][j] = dot(gi, vq[j]);
  }

  std::vector<std::size_t> chosen;
  auto leaf = [&]() {
    std::vector<RatVec> wcols;
    for (auto i : chosen) wcols.push_back(vq[i]);
    RatMat t = RatMat::from_cols(wcols) * binv;
    for (const auto& v : vp)
      if (!std::binary_search(vq.begin(), vq.end(), t.apply(v), lex_less)) return;
    found.push_back(std::move(t));
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t level) -> bool {
    if (level == m) {
      leaf();
      return limit != 0 && found.size() >= limit;
    }
    for (std::size_t w = 0; w < vq.size(); ++w) {
      if (gq_rows[w][w] != gram_p(level, level)) continue;
      bool ok = true;
      for (std::size_t l = 0; l < level && ok; ++l)
        if (gq_rows[w][chosen[l]] != gram_p(level, l)) ok = false;
      if (!ok) continue;
      chosen.push_back(w);
      bool stop = rec(level + 1);
      chosen.pop_back();
      if (stop) return true;
    }
    return false;
  };
  rec(0);
  return found;
}

std::optional<RatMat> congruent(const SymPolytope& p, const SymPolytope& q) {
  auto all = all_congruences(p, q, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace finban
