#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "finban/matrix.hpp"
#include "finban/polytope.hpp"

namespace finban {

// A finite-dimensional normed space given by its unit ball.
struct FinSpace {
  SymPolytope ball;
  std::string label;
  bool approximate = false;  // ball is a polytopal stand-in for a non-polytopal norm

  std::size_t dim() const { return ball.dim(); }
};

FinSpace make_space(SymPolytope ball, std::string label = {});
FinSpace ell1(std::size_t n);
FinSpace ell_inf(std::size_t n);

struct LinOp {
  FinSpace domain;
  FinSpace codomain;
  RatMat matrix;  // codomain.dim() x domain.dim()
};

LinOp make_op(FinSpace domain, FinSpace codomain, RatMat matrix);
LinOp identity_op(const FinSpace& x);
LinOp compose(const LinOp& outer, const LinOp& inner);  // outer after inner
LinOp scaled(const LinOp& u, const Rat& s);

Rat norm(const FinSpace& x, const RatVec& v);
FinSpace dual(const FinSpace& x);

// {c : basis*c in ball(X)} with the basis columns as coordinates.
FinSpace subspace(const FinSpace& x, const RatMat& basis);

struct Quotient {
  FinSpace space;
  LinOp map;  // X -> X/S with kernel span(sub_basis)
};

// Quotient coordinates: the sub_basis is completed by standard basis vectors,
// chosen greedily in index order, and q reads off the complement coordinates.
Quotient quotient(const FinSpace& x, const RatMat& sub_basis);

// The coordinate map q of quotient(): rows n-k of [S | e_J]^-1, where e_J are
// the chosen complement vectors (returned in `chosen` when non-null).
RatMat complement_coordinates(const RatMat& sub_basis, std::vector<std::size_t>* chosen = nullptr);

// min over s in span(sub_basis) of ||v - s||, by LP. Independent of the
// coordinate choice in quotient(); used to cross-check it.
Rat quotient_norm_lp(const FinSpace& x, const RatMat& sub_basis, const RatVec& v);

struct Annihilator {
  FinSpace space;  // a subspace of dual(X)
  RatMat basis;    // columns span {f : f(S) = 0} in dual coordinates
};

Annihilator annihilator(const FinSpace& x, const RatMat& sub_basis);
RatMat annihilator_basis(const RatMat& sub_basis);

FinSpace dsum1(const FinSpace& x, const FinSpace& y);
FinSpace dsum_inf(const FinSpace& x, const FinSpace& y);

// Outer polytopal approximation of the l2-sum: gauge within a factor 1+eps
// below the true norm. Flagged approximate.
FinSpace dsum2_approx(const FinSpace& x, const FinSpace& y, const Rat& eps);

Rat operator_norm(const LinOp& u);

struct DistortionCert {
  LinOp op;
  Rat norm;
  std::optional<Rat> inverse_norm;  // empty when u is not injective
  std::optional<Rat> distortion;
};

// ||u^-1|| is taken on the image subspace u(X).
DistortionCert distortion(const LinOp& u);

// Defect of a would-be isometric embedding: max(| ||j|| - 1 |, 1 - 1/||j^-1||).
// Zero iff j is an isometric embedding. Infinite (empty) if j is not injective.
std::optional<Rat> isometry_defect(const LinOp& j);

// ||T|| ||T^-1|| for a square T : X -> Y; empty if T is singular.
std::optional<Rat> map_distortion(const FinSpace& x, const FinSpace& y, const RatMat& t);

std::optional<LinOp> is_isometric(const FinSpace& x, const FinSpace& y);

struct BmBudget {
  std::size_t starts = 48;
  std::size_t refine_rounds = 6;  // step 1/4, 1/8, ... halving each round
  std::uint64_t seed = 1;
};

// Upper bound on the Banach-Mazur distance with a certificate map X -> Y.
// Exact (and equal to 1) when the spaces are isometric.
DistortionCert bm_upper(const FinSpace& x, const FinSpace& y, const BmBudget& budget = {});

}  // namespace finban
