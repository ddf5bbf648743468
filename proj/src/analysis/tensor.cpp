#include <functional>

#include "finban/analysis.hpp"
#include "finban/budget.hpp"
#include "finban/errors.hpp"
#include "finban/lp.hpp"

namespace finban {

namespace {

void check_tensor(const TensorElem& t) {
  if (t.coeffs.rows() != t.left.dim() || t.coeffs.cols() != t.right.dim())
    fail(ErrorKind::DimMismatch, "tensor coefficients do not match the factor dimensions");
  if (t.left.dim() * t.right.dim() > budgets().tensor_max)
    fail(ErrorKind::BudgetExceeded, "tensor space of dimension " + std::to_string(t.left.dim() * t.right.dim()) + " exceeds budget " +
                                        std::to_string(budgets().tensor_max));
}

}  // namespace

Rat injective_norm(const TensorElem& t) {
  check_tensor(t);
  Rat best = 0;
  for (const auto& f : t.left.ball.facets()) {
    if (!lex_positive(f)) continue;
    RatVec ft = t.coeffs.transpose().apply(f);
    for (const auto& g : t.right.ball.facets()) best = std::max(best, rat_abs(dot(ft, g)));
  }
  return best;
}

Rat projective_norm(const TensorElem& t) {
  check_tensor(t);
  const std::size_t n1 = t.left.dim(), n2 = t.right.dim();
  // min sum lambda_k with sum lambda_k a_k (x) b_k = t over vertex pairs.
  std::vector<RatVec> cols;
  for (const auto& a : t.left.ball.vertices()) {
    if (!lex_positive(a)) continue;
    for (const auto& b : t.right.ball.vertices()) {
      RatVec c(n1 * n2);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) c[i * n2 + j] = a[i] * b[j];
      cols.push_back(std::move(c));
    }
  }
  RatVec target(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) target[i * n2 + j] = t.coeffs(i, j);
  RatVec ones(cols.size(), Rat(1));
  StandardResult r = solve_standard(RatMat::from_cols(cols), target, ones);
  if (r.status != LpStatus::Optimal) fail(ErrorKind::Infeasible, "vertex products do not span the tensor space");
  return r.value;
}

TensorElem operator_tensor(const LinOp& u) { return TensorElem{dual(u.domain), u.codomain, u.matrix.transpose()}; }

Rat nuclear_norm(const LinOp& u) { return projective_norm(operator_tensor(u)); }

}  // namespace finban
