#include <cmath>

#include "finban/analysis.hpp"
#include "finban/budget.hpp"
#include "finban/errors.hpp"

namespace finban {

Rat rademacher_average(const FinSpace& x, const std::vector<RatVec>& vectors) {
  const std::size_t n = vectors.size();
  if (n == 0) return Rat(0);
  if (n > budgets().rademacher_max)
    fail(ErrorKind::BudgetExceeded, std::to_string(n) + " vectors exceed the sign-pattern budget " + std::to_string(budgets().rademacher_max));
  for (const auto& v : vectors)
    if (v.size() != x.dim()) fail(ErrorKind::DimMismatch, "vector dimension differs from the space");

  // ||-s|| = ||s||, so fix the first sign and walk the rest in Gray order.
  RatVec s = vectors[0];
  for (std::size_t i = 1; i < n; ++i) s = add(s, vectors[i]);
  std::vector<int> sign(n, 1);
  Rat total = norm(x, s);
  const std::size_t patterns = std::size_t{1} << (n - 1);
  for (std::size_t k = 1; k < patterns; ++k) {
    std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(k)) + 1;
    s = sign[bit] > 0 ? sub(s, scale(vectors[bit], 2)) : add(s, scale(vectors[bit], 2));
    sign[bit] = -sign[bit];
    total += norm(x, s);
  }
  return total / Rat(static_cast<unsigned long>(patterns));
}

namespace {

std::vector<Rat> norms_of(const FinSpace& x, const std::vector<RatVec>& vectors) {
  if (vectors.empty()) fail(ErrorKind::InvalidArgument, "empty witness family");
  std::vector<Rat> out;
  for (const auto& v : vectors) {
    if (v.size() != x.dim()) fail(ErrorKind::DimMismatch, "vector dimension differs from the space");
    if (is_zero(v)) fail(ErrorKind::InvalidArgument, "witness vectors must be nonzero");
    out.push_back(norm(x, v));
  }
  return out;
}

double power_mean(const std::vector<Rat>& ns, double q) {
  double m = 0;
  for (const auto& r : ns) m = std::max(m, to_double(r));
  double s = 0;
  for (const auto& r : ns) s += std::pow(to_double(r) / m, q);
  return m * std::pow(s, 1 / q);
}

}  // namespace

CotypeReport cotype_witness(const FinSpace& x, const std::vector<RatVec>& vectors, const Exponent& q) {
  if (q && *q < 2) fail(ErrorKind::InvalidArgument, "cotype exponent must lie in [2, inf]");
  auto ns = norms_of(x, vectors);
  CotypeReport r{q, vectors, 0, rademacher_average(x, vectors), 0, {}, {}};
  if (!q) {
    Rat m = 0;
    for (const auto& v : ns) m = std::max(m, v);
    r.lhs = to_double(m);
    r.bound_exact = m / r.average;
    r.bound = to_double(*r.bound_exact);
  } else if (*q == 2) {
    Rat s = 0;
    for (const auto& v : ns) s += v * v;
    r.lhs = std::sqrt(to_double(s));
    r.bound_squared = s / (r.average * r.average);
    r.bound = std::sqrt(to_double(*r.bound_squared));
  } else {
    r.lhs = power_mean(ns, to_double(*q));
    r.bound = r.lhs / to_double(r.average);
  }
  return r;
}

CotypeReport type_witness(const FinSpace& x, const std::vector<RatVec>& vectors, const Rat& p) {
  if (p < 1 || p > 2) fail(ErrorKind::InvalidArgument, "type exponent must lie in [1, 2]");
  auto ns = norms_of(x, vectors);
  CotypeReport r{p, vectors, 0, rademacher_average(x, vectors), 0, {}, {}};
  if (p == 1) {
    Rat s = 0;
    for (const auto& v : ns) s += v;
    r.lhs = to_double(s);
    r.bound_exact = r.average / s;
    r.bound = to_double(*r.bound_exact);
  } else if (p == 2) {
    Rat s = 0;
    for (const auto& v : ns) s += v * v;
    r.lhs = std::sqrt(to_double(s));
    r.bound_squared = r.average * r.average / s;
    r.bound = std::sqrt(to_double(*r.bound_squared));
  } else {
    r.lhs = power_mean(ns, to_double(p));
    r.bound = to_double(r.average) / r.lhs;
  }
  return r;
}

}  // namespace finban
