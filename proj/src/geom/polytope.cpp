#include "finban/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "finban/budget.hpp"
#include "finban/errors.hpp"
#include "finban/lp.hpp"

namespace finban {

namespace {

std::size_t common_dim(const std::vector<RatVec>& pts) {
  if (pts.empty()) fail(ErrorKind::NotFullDimensional, "empty point set");
  std::size_t m = pts.front().size();
  if (m == 0) fail(ErrorKind::NotFullDimensional, "zero-dimensional points");
  for (const auto& p : pts)
    if (p.size() != m) fail(ErrorKind::DimMismatch, "points of different dimensions");
  return m;
}

// Sorted, deduplicated, zero removed; throws unless closed under negation.
std::vector<RatVec> symmetric_clean(std::vector<RatVec> pts) {
  pts.erase(std::remove_if(pts.begin(), pts.end(), [](const RatVec& p) { return is_zero(p); }), pts.end());
  sort_unique(pts);
  for (const auto& p : pts)
    if (!std::binary_search(pts.begin(), pts.end(), neg(p), lex_less))
      fail(ErrorKind::NotSymmetric, "point " + to_string(p) + " has no antipode");
  return pts;
}

Rat cross(const RatVec& o, const RatVec& a, const RatVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strictly convex hull in counter-clockwise order (Andrew's monotone chain).
std::vector<RatVec> polygon_hull(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<RatVec> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && sgn(cross(h[k - 2], h[k - 1], pts[i])) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && sgn(cross(h[k - 2], h[k - 1], pts[i - 1])) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

// Outer functionals of the edges of a CCW polygon around the origin.
std::vector<RatVec> polygon_edge_functionals(const std::vector<RatVec>& hull) {
  std::vector<RatVec> fs;
  fs.reserve(hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const RatVec& p = hull[i];
    const RatVec& q = hull[(i + 1) % hull.size()];
    Rat det = p[0] * q[1] - q[0] * p[1];
    fs.push_back({(q[1] - p[1]) / det, (p[0] - q[0]) / det});
  }
  return fs;
}

std::vector<std::size_t> tight_indices(const RatVec& v, const std::vector<RatVec>& fs) {
  std::vector<std::size_t> t;
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (dot(fs[k], v) == 1) t.push_back(k);
  return t;
}

void check_budget(std::size_t count, const char* what) {
  if (count > budgets().max_vertices)
    fail(ErrorKind::BudgetExceeded, std::string(what) + " count " + std::to_string(count) + " exceeds budget " + std::to_string(budgets().max_vertices));
}

}  // namespace

SymPolytope SymPolytope::from_points(std::vector<RatVec> points) {
  const std::size_t m = common_dim(points);
  std::vector<RatVec> pts = symmetric_clean(std::move(points));
  if (rank(pts, m) < m) fail(ErrorKind::NotFullDimensional, "points do not span R^" + std::to_string(m));

  std::vector<RatVec> vertices, facets;
  if (m == 1) {
    Rat r = 0;
    for (const auto& p : pts) r = std::max(r, rat_abs(p[0]));
    vertices = {{-r}, {r}};
    facets = {{Rat(-1) / r}, {Rat(1) / r}};
  } else if (m == 2) {
    vertices = polygon_hull(pts);
    facets = polygon_edge_functionals(vertices);
  } else {
    facets = detail::enumerate_vertices(pts, m);
    for (const auto& p : pts) {
      auto t = tight_indices(p, facets);
      if (t.size() < m) continue;
      std::vector<RatVec> normals;
      for (auto k : t) normals.push_back(facets[k]);
      if (rank(normals, m) == m) vertices.push_back(p);
    }
  }
  check_budget(vertices.size(), "vertex");
  check_budget(facets.size(), "facet");
  return from_both_unchecked(m, std::move(vertices), std::move(facets));
}

SymPolytope SymPolytope::from_facets(std::vector<RatVec> facets) {
  try {
    return polar(from_points(std::move(facets)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotFullDimensional) fail(ErrorKind::Unbounded, "facet functionals do not bound the body");
    throw;
  }
}

SymPolytope SymPolytope::from_both_unchecked(std::size_t dim, std::vector<RatVec> vertices, std::vector<RatVec> facets) {
  sort_unique(vertices);
  sort_unique(facets);
  return SymPolytope(std::make_shared<const Data>(Data{dim, std::make_shared<const std::vector<RatVec>>(std::move(vertices)),
                                                      std::make_shared<const std::vector<RatVec>>(std::move(facets))}));
}

SymPolytope SymPolytope::swapped() const {
  return SymPolytope(std::make_shared<const Data>(Data{d_->dim, d_->facets, d_->vertices}));
}

SymPolytope SymPolytope::cross_polytope(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  std::vector<RatVec> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(unit(n, i));
    v.push_back(neg(unit(n, i)));
  }
  std::size_t count = std::size_t{1} << n;
  check_budget(count, "facet");
  std::vector<RatVec> f;
  for (std::size_t mask = 0; mask < count; ++mask) {
    RatVec s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    f.push_back(std::move(s));
  }
  return from_both_unchecked(n, std::move(v), std::move(f));
}

SymPolytope SymPolytope::cube(std::size_t n) { return polar(cross_polytope(n)); }

SymPolytope SymPolytope::segment(const Rat& half_length) {
  if (sgn(half_length) <= 0) fail(ErrorKind::InvalidArgument, "segment half length must be positive");
  return from_both_unchecked(1, {{-half_length}, {half_length}}, {{Rat(-1) / half_length}, {Rat(1) / half_length}});
}

std::string validate(const SymPolytope& p) {
  const std::size_t m = p.dim();
  auto check_list = [&](const std::vector<RatVec>& xs, const char* name) -> std::string {
    if (xs.empty()) return std::string(name) + " list empty";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].size() != m) return std::string(name) + " of wrong dimension";
      if (i && !lex_less(xs[i - 1], xs[i])) return std::string(name) + " list not strictly sorted";
    }
    for (const auto& x : xs)
      if (!std::binary_search(xs.begin(), xs.end(), neg(x), lex_less)) return std::string(name) + " list not symmetric";
    if (rank(xs, m) < m) return std::string(name) + " list not spanning";
    return {};
  };
  if (auto e = check_list(p.vertices(), "vertex"); !e.empty()) return e;
  if (auto e = check_list(p.facets(), "facet"); !e.empty()) return e;
  auto mutual = [&](const std::vector<RatVec>& xs, const std::vector<RatVec>& ys, const char* name) -> std::string {
    for (const auto& x : xs) {
      Rat mx = dot(x, ys.front());
      std::vector<RatVec> tight;
      for (const auto& y : ys) {
        Rat v = dot(x, y);
        if (v > mx) mx = v;
      }
      if (mx != 1) return std::string(name) + " " + to_string(x) + " has max " + to_string(mx) + " instead of 1";
      for (const auto& y : ys)
        if (dot(x, y) == 1) tight.push_back(y);
      if (rank(tight, m) < m) return std::string(name) + " " + to_string(x) + " is not minimal";
    }
    return {};
  };
  if (auto e = mutual(p.vertices(), p.facets(), "vertex"); !e.empty()) return e;
  if (auto e = mutual(p.facets(), p.vertices(), "facet"); !e.empty()) return e;
  return {};
}

std::vector<RatVec> hull_reduce(const std::vector<RatVec>& points) {
  const std::size_t m = common_dim(points);
  std::vector<RatVec> pts = symmetric_clean(points);
  if (rank(pts, m) < m) fail(ErrorKind::NotFullDimensional, "points do not span R^" + std::to_string(m));
  std::vector<RatVec> kept;
  std::vector<bool> extreme(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto anti = std::lower_bound(pts.begin(), pts.end(), neg(pts[i]), lex_less) - pts.begin();
    if (static_cast<std::size_t>(anti) < i) {
      extreme[i] = extreme[static_cast<std::size_t>(anti)];
      continue;
    }
    std::vector<RatVec> others;
    others.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    extreme[i] = !in_convex_hull(pts[i], others);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (extreme[i]) kept.push_back(pts[i]);
  return kept;
}

SymPolytope polar(const SymPolytope& p) { return p.swapped(); }

SymPolytope vertex_enum(const std::vector<RatVec>& facets) { return SymPolytope::from_facets(facets); }

SymPolytope linear_image(const SymPolytope& p, const RatMat& t) {
  if (t.cols() != p.dim()) fail(ErrorKind::DimMismatch, "map has " + std::to_string(t.cols()) + " columns, body has dimension " + std::to_string(p.dim()));
  if (t.rows() == 0 || rank(t) < t.rows()) fail(ErrorKind::NotSurjective, "map of rank " + std::to_string(rank(t)) + " onto R^" + std::to_string(t.rows()));
  std::vector<RatVec> img;
  img.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) img.push_back(t.apply(v));
  return SymPolytope::from_points(std::move(img));
}

SymPolytope section(const SymPolytope& p, const RatMat& basis) {
  if (basis.rows() != p.dim()) fail(ErrorKind::DimMismatch, "basis rows vs body dimension");
  if (basis.cols() == 0 || rank(basis) < basis.cols()) fail(ErrorKind::DependentBasis, "section basis columns are dependent");
  return polar(linear_image(polar(p), basis.transpose()));
}

std::vector<RatVec> canonical_generators(const std::vector<RatVec>& gens) {
  std::vector<RatVec> out;
  for (const auto& g0 : gens) {
    if (is_zero(g0)) fail(ErrorKind::NotSpanning, "zero generator");
    RatVec g = lex_positive(g0) ? g0 : neg(g0);
    bool merged = false;
    for (auto& o : out) {
      if (auto s = parallel_ratio(g, o)) {
        o = scale(o, 1 + *s);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(g));
  }
  sort_unique(out);
  return out;
}

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SymPolytope zonotope_of(const std::vector<RatVec>& generators) {
  const std::size_t m = common_dim(generators);
  std::vector<RatVec> gens = canonical_generators(generators);
  if (rank(gens, m) < m) fail(ErrorKind::NotSpanning, "generators do not span R^" + std::to_string(m));
  // Facet normals are the normals of hyperplanes spanned by m-1 generators;
  // the support in direction n is sum |<g, n>|.
  std::vector<RatVec> facets;
  auto add_normal = [&](const RatVec& n) {
    Rat h = 0;
    for (const auto& g : gens) h += rat_abs(dot(g, n));
    facets.push_back(scale(n, 1 / h));
    facets.push_back(scale(n, -1 / h));
  };
  if (m == 1) {
    add_normal({Rat(1)});
  } else {
    for_each_subset(gens.size(), m - 1, [&](const std::vector<std::size_t>& idx) {
      std::vector<RatVec> sel;
      for (auto i : idx) sel.push_back(gens[i]);
      RatMat ns = nullspace(RatMat::from_rows(sel));
      if (ns.cols() != 1) return;
      add_normal(primitive(ns.col(0)));
    });
  }
  sort_unique(facets);
  return SymPolytope::from_facets(std::move(facets));
}

Rat support(const SymPolytope& p, const RatVec& x) {
  if (x.size() != p.dim()) fail(ErrorKind::DimMismatch, "support direction dimension");
  Rat best = dot(p.vertices().front(), x);
  for (const auto& v : p.vertices()) {
    Rat s = dot(v, x);
    if (s > best) best = s;
  }
  return best;
}

Rat gauge(const SymPolytope& p, const RatVec& x) {
  if (x.size() != p.dim()) fail(ErrorKind::DimMismatch, "gauge argument dimension");
  Rat best = dot(p.facets().front(), x);
  for (const auto& f : p.facets()) {
    Rat s = dot(f, x);
    if (s > best) best = s;
  }
  return best;
}

double Edge::length() const { return std::sqrt(to_double(length_squared)); }

}  // namespace finban
