#pragma once

#include <optional>
#include <vector>

#include "finban/space.hpp"

namespace finban {

// Average of ||sum s_i x_i|| over all sign patterns s, exact.
Rat rademacher_average(const FinSpace& x, const std::vector<RatVec>& vectors);

// Exponent in [1, inf]; empty means infinity.
using Exponent = std::optional<Rat>;

struct CotypeReport {
  Exponent exponent;
  std::vector<RatVec> witnesses;
  double lhs = 0;          // (sum ||x_i||^q)^(1/q), or max for q = inf
  Rat average;             // rademacher_average of the witnesses
  double bound = 0;        // lower bound for the constant from this family
  std::optional<Rat> bound_exact;    // q = inf (cotype), p = 1 (type)
  std::optional<Rat> bound_squared;  // q = 2 / p = 2
};

// Lower bound lhs / average for the cotype-q constant; q in [2, inf].
CotypeReport cotype_witness(const FinSpace& x, const std::vector<RatVec>& vectors, const Exponent& q);

// Lower bound average / (sum ||x_i||^p)^(1/p) for the type-p constant; p in [1, 2].
CotypeReport type_witness(const FinSpace& x, const std::vector<RatVec>& vectors, const Rat& p);

struct ProjResult {
  RatMat sub_basis;
  Rat lambda;
  LinOp optimal_projection;  // X -> X, fixes span(sub_basis), range inside it
};

// Smallest norm of a projection of X onto span(sub_basis), by exact LP.
ProjResult projection_constant(const FinSpace& x, const RatMat& sub_basis);

// True if p is idempotent with range span(sub_basis).
bool is_projection_onto(const RatMat& p, const RatMat& sub_basis);

struct TrendCase {
  FinSpace space;
  RatMat sub_basis;
};

struct TrendRow {
  std::size_t rank;
  Rat lambda;
};

struct TrendReport {
  std::vector<TrendRow> rows;
  std::optional<double> exponent;  // least-squares slope of log lambda on log rank
  bool increasing = false;         // lambda strictly increasing in rank
};

TrendReport projection_trend(const std::vector<TrendCase>& cases);

// Spans of well-spread integer directions inside l1^N, ranks 1..3: a
// polytopal stand-in for Euclidean subspaces of L1.
std::vector<TrendCase> near_euclidean_l1_subspaces();

struct TensorElem {
  FinSpace left;
  FinSpace right;
  RatMat coeffs;  // left.dim x right.dim, t = sum c_ij e_i (x) e_j
};

Rat injective_norm(const TensorElem& t);
Rat projective_norm(const TensorElem& t);

// u = sum f_k (x) y_k as a tensor in dual(domain) (x) codomain.
TensorElem operator_tensor(const LinOp& u);

Rat nuclear_norm(const LinOp& u);

struct Pi1Result {
  Rat value;
  std::vector<RatVec> functionals;  // vertices of the dual ball, one per sign pair
  std::vector<Rat> weights;         // Pietsch weights on them
  std::size_t cuts = 0;
};

// 1-summing norm: min sum w_f with ||u x|| <= sum w_f |f(x)| for all x,
// by cutting planes over the rays of the arrangement {f = 0}.
Pi1Result pi1(const LinOp& u);
Rat pi1_norm(const LinOp& u);

// The finite set of directions at which the Pietsch inequality has to be
// checked: one ray per sign pair of the hyperplane arrangement {f^perp}.
std::vector<RatVec> arrangement_rays(const std::vector<RatVec>& functionals, std::size_t dim);

}  // namespace finban
