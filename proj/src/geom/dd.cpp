// Double description for bounded bodies {x : <a_i,x> <= 1}.
//
// The body is homogenized to the pointed cone
//   C = {(t, x) : t >= 0, t - <a_i, x> >= 0}
// whose extreme rays with t > 0 are the vertices (x/t). Rays are kept as
// primitive integer vectors; adjacency uses the combinatorial test on zero sets.

#include <algorithm>
#include <bit>
#include <cstdint>

#include "finban/budget.hpp"
#include "finban/errors.hpp"
#include "finban/polytope.hpp"

namespace finban::detail {

namespace {

using IntVec = std::vector<mpz_class>;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w_.resize(w_.size());
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if ((w_[k] & ~o.w_[k]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Ray {
  IntVec v;
  Bits zeros;
};

mpz_class idot(const IntVec& a, const IntVec& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

void make_primitive(IntVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntVec to_int_row(const RatVec& r) {
  RatVec p = primitive(r);
  IntVec v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i].get_num();
  return v;
}

}  // namespace

std::vector<RatVec> enumerate_vertices(const std::vector<RatVec>& halfspaces, std::size_t dim) {
  if (dim > budgets().dd_max_dim)
    fail(ErrorKind::DimensionOverBudget, "vertex enumeration in dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(budgets().dd_max_dim));
  const std::size_t d = dim + 1;
  const std::size_t cap = budgets().max_vertices;

  // Constraint rows h.(t,x) >= 0, deduplicated.
  std::vector<RatVec> rows;
  rows.push_back(unit(d, 0));
  for (const auto& a : halfspaces) {
    if (a.size() != dim) fail(ErrorKind::DimMismatch, "halfspace dimension");
    RatVec h(d);
    h[0] = 1;
    for (std::size_t i = 0; i < dim; ++i) h[i + 1] = -a[i];
    rows.push_back(primitive(h));
  }
  std::sort(rows.begin() + 1, rows.end(), lex_less);
  rows.erase(std::unique(rows.begin() + 1, rows.end()), rows.end());
  const std::size_t nrows = rows.size();

  std::vector<std::size_t> init = independent_subset(rows, d);
  if (init.size() < d) fail(ErrorKind::Unbounded, "halfspaces do not bound the body");

  std::vector<IntVec> irows(nrows);
  for (std::size_t k = 0; k < nrows; ++k) irows[k] = to_int_row(rows[k]);

  std::vector<Ray> rays;
  {
    RatMat h0 = RatMat::from_rows([&] {
      std::vector<RatVec> sel;
      for (auto k : init) sel.push_back(rows[k]);
      return sel;
    }());
    auto inv = inverse(h0);
    if (!inv) fail(ErrorKind::ConstructionFailed, "initial cone singular");
    for (std::size_t k = 0; k < d; ++k) {
      Ray r{to_int_row(inv->col(k)), Bits(nrows)};
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) r.zeros.set(init[j]);
      rays.push_back(std::move(r));
    }
  }

  std::vector<bool> done(nrows, false);
  for (auto k : init) done[k] = true;

  for (std::size_t h = 0; h < nrows; ++h) {
    if (done[h]) continue;
    done[h] = true;
    std::vector<mpz_class> s(rays.size());
    std::vector<std::size_t> pos, neg_, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = idot(irows[h], rays[r].v);
      int sg = sgn(s[r]);
      if (sg > 0) pos.push_back(r);
      else if (sg < 0) neg_.push_back(r);
      else zero.push_back(r);
    }
    for (auto r : zero) rays[r].zeros.set(h);
    if (neg_.empty()) continue;

    std::vector<Ray> next;
    next.reserve(pos.size() + zero.size());
    for (auto r : pos) next.push_back(rays[r]);
    for (auto r : zero) next.push_back(rays[r]);
    for (auto p : pos) {
      for (auto n : neg_) {
        Bits common = rays[p].zeros & rays[n].zeros;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.subset_of(rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{IntVec(d), common};
        mpz_class sp = s[p], sn = -s[n];
        for (std::size_t i = 0; i < d; ++i) nr.v[i] = sp * rays[n].v[i] + sn * rays[p].v[i];
        make_primitive(nr.v);
        nr.zeros.set(h);
        next.push_back(std::move(nr));
        if (next.size() > cap) fail(ErrorKind::BudgetExceeded, "double description exceeded " + std::to_string(cap) + " rays");
      }
    }
    rays = std::move(next);
  }

  std::vector<RatVec> vertices;
  vertices.reserve(rays.size());
  for (const auto& r : rays) {
    if (sgn(r.v[0]) == 0) fail(ErrorKind::Unbounded, "halfspaces do not bound the body");
    RatVec x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = Rat(r.v[i + 1], r.v[0]);
      x[i].canonicalize();
    }
    vertices.push_back(std::move(x));
  }
  sort_unique(vertices);
  return vertices;
}

}  // namespace finban::detail
