#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "finban/errors.hpp"
#include "finban/polytope.hpp"

namespace finban {

namespace {

using Mask = std::vector<std::uint64_t>;

Mask tight_mask(const RatVec& v, const std::vector<RatVec>& fs) {
  Mask m((fs.size() + 63) / 64, 0);
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (dot(fs[k], v) == 1) m[k / 64] |= std::uint64_t{1} << (k % 64);
  return m;
}

Mask meet(const Mask& a, const Mask& b) {
  Mask r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] & b[k];
  return r;
}

bool contains(const Mask& big, const Mask& small) {
  for (std::size_t k = 0; k < big.size(); ++k)
    if ((small[k] & ~big[k]) != 0) return false;
  return true;
}

// Vertices of the smallest face whose facet set is `facets`.
std::vector<std::size_t> face_vertices(const std::vector<Mask>& tight, const Mask& facets) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < tight.size(); ++w)
    if (contains(tight[w], facets)) out.push_back(w);
  return out;
}

std::vector<Mask> all_tight(const SymPolytope& p) {
  std::vector<Mask> t;
  t.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) t.push_back(tight_mask(v, p.facets()));
  return t;
}

}  // namespace

std::vector<Edge> edges(const SymPolytope& p) {
  if (p.dim() < 2) fail(ErrorKind::DimensionTooSmall, "edges need dimension at least 2");
  const auto& vs = p.vertices();
  auto tight = all_tight(p);
  std::vector<Edge> out;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      Mask common = meet(tight[a], tight[b]);
      // The minimal face containing both is an edge iff it has no third vertex.
      bool edge = true;
      for (std::size_t w = 0; w < vs.size() && edge; ++w)
        if (w != a && w != b && contains(tight[w], common)) edge = false;
      if (!edge) continue;
      RatVec d = sub(vs[b], vs[a]);
      out.push_back({a, b, d, dot(d, d)});
    }
  return out;
}

std::vector<std::vector<std::size_t>> two_faces(const SymPolytope& p) {
  const std::size_t m = p.dim();
  const auto& vs = p.vertices();
  std::set<std::vector<std::size_t>> faces;
  if (m < 2) return {};
  if (m == 2) {
    std::vector<std::size_t> all(vs.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return {all};
  }
  auto tight = all_tight(p);
  auto es = edges(p);
  std::vector<std::vector<std::size_t>> nbr(vs.size());
  for (const auto& e : es) {
    nbr[e.a].push_back(e.b);
    nbr[e.b].push_back(e.a);
  }
  for (std::size_t u = 0; u < vs.size(); ++u)
    for (std::size_t i = 0; i < nbr[u].size(); ++i)
      for (std::size_t j = i + 1; j < nbr[u].size(); ++j) {
        Mask c = meet(tight[u], meet(tight[nbr[u][i]], tight[nbr[u][j]]));
        auto f = face_vertices(tight, c);
        if (faces.count(f)) continue;
        std::vector<RatVec> diffs;
        for (auto w : f) diffs.push_back(sub(vs[w], vs[f.front()]));
        if (rank(diffs, m) == 2) faces.insert(f);
      }
  return {faces.begin(), faces.end()};
}

bool is_zonotope(const SymPolytope& p) {
  if (p.dim() <= 2) return true;
  const auto& vs = p.vertices();
  for (const auto& f : two_faces(p)) {
    RatVec sum = zeros(p.dim());
    for (auto w : f) sum = add(sum, vs[w]);
    RatVec twice_center = scale(sum, Rat(2) / Rat(static_cast<unsigned long>(f.size())));
    std::vector<RatVec> pts;
    for (auto w : f) pts.push_back(vs[w]);
    sort_unique(pts);
    for (auto w : f)
      if (!std::binary_search(pts.begin(), pts.end(), sub(twice_center, vs[w]), lex_less)) return false;
  }
  return true;
}

}  // namespace finban
