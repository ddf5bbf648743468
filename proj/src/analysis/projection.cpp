#include <cmath>

#include "finban/analysis.hpp"
#include "finban/errors.hpp"
#include "finban/lp.hpp"

namespace finban {

ProjResult projection_constant(const FinSpace& x, const RatMat& sub_basis) {
  const std::size_t n = x.dim(), k = sub_basis.cols();
  if (sub_basis.rows() != n) fail(ErrorKind::DimMismatch, "subspace basis rows do not match the space");
  if (k == 0 || rank(sub_basis) < k) fail(ErrorKind::DependentBasis, "subspace basis columns are dependent");
  SymPolytope a = section(x.ball, sub_basis);

  // P = S R with R S = I; ||P|| = max over vertices v of ||R v||_A.
  // Variables: R row-major (k*n entries), then t.
  const std::size_t nv = k * n + 1;
  LinearProgram lp(nv);
  RatVec obj = zeros(nv);
  obj[k * n] = 1;
  lp.minimize(obj);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      RatVec row = zeros(nv);
      for (std::size_t j = 0; j < n; ++j) row[i * n + j] = sub_basis(j, l);
      lp.add_eq(row, Rat(i == l ? 1 : 0));
    }
  for (const auto& v : x.ball.vertices()) {
    if (!lex_positive(v)) continue;  // the facet list is symmetric
    for (const auto& phi : a.facets()) {
      RatVec row = zeros(nv);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) row[i * n + j] = phi[i] * v[j];
      row[k * n] = -1;
      lp.add_le(row, Rat(0));
    }
  }
  LpResult res = solve_or_throw(lp);
  RatMat r(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = res.x[i * n + j];
  return ProjResult{sub_basis, res.value, LinOp{x, x, sub_basis * r}};
}

bool is_projection_onto(const RatMat& p, const RatMat& sub_basis) {
  if (p.rows() != p.cols() || p.rows() != sub_basis.rows()) return false;
  if (!(p * sub_basis == sub_basis)) return false;
  return rank(p) == rank(sub_basis) && p * p == p;
}

TrendReport projection_trend(const std::vector<TrendCase>& cases) {
  TrendReport out;
  for (const auto& c : cases) out.rows.push_back({c.sub_basis.cols(), projection_constant(c.space, c.sub_basis).lambda});
  out.increasing = !out.rows.empty();
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (!(out.rows[i].rank > out.rows[i - 1].rank && out.rows[i].lambda > out.rows[i - 1].lambda)) out.increasing = false;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : out.rows) {
    double lx = std::log(double(r.rank)), ly = std::log(to_double(r.lambda));
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double m = double(out.rows.size());
  const double den = m * sxx - sx * sx;
  if (out.rows.size() >= 2 && std::abs(den) > 1e-15) out.exponent = (m * sxy - sx * sy) / den;
  return out;
}

std::vector<TrendCase> near_euclidean_l1_subspaces() {
  const std::vector<std::string> rows = {
      "1",
      "1,0;0,1;1,1;1,-1",
      "1,0,0;0,1,0;0,0,1;1,1,0;1,-1,0;1,0,1;1,0,-1;0,1,1;0,1,-1",
  };
  std::vector<TrendCase> out;
  for (const auto& r : rows) {
    RatMat b = parse_mat(r);
    out.push_back({ell1(b.rows()), b});
  }
  return out;
}

}  // namespace finban
