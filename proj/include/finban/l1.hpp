#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finban/formation.hpp"
#include "finban/space.hpp"

namespace finban {

// Functionals g_1..g_k on R^m with ||c|| = sum |<g_i, c>|. Canonical form:
// one lex-positive generator per direction, sorted.
struct IncarnatingSet {
  std::size_t sub_dim = 0;
  std::vector<RatVec> generators;

  bool operator==(const IncarnatingSet&) const = default;
};

IncarnatingSet make_incarnating_set(std::size_t sub_dim, std::vector<RatVec> generators);

// Y = basis(R^m) inside l1^N.
struct L1Embedding {
  std::size_t ambient = 0;
  RatMat basis;  // N x m
  IncarnatingSet incarnation;
};

L1Embedding incarnate(const RatMat& basis);

Rat incarnation_norm(const IncarnatingSet& k, const RatVec& c);

// The dual unit ball of the incarnated space.
SymPolytope dual_zonotope(const IncarnatingSet& k);

// Canonical generators of a zonotope: half of each edge vector, one per
// direction. Raises NotAZonotope.
IncarnatingSet reconstruct(const SymPolytope& z);

FinSpace incarnated_space(const IncarnatingSet& k);

// A witness incarnation of X when X embeds isometrically into some l1^N.
std::optional<IncarnatingSet> is_l1_embeddable(const FinSpace& x);

struct RibGroupFailure {
  RatVec direction;  // primitive rib direction in A*
  Rat left_total;    // summed lengths of the B1 generators along it
  Rat right_total;
  std::string message;
};

struct L1Amalgam {
  std::optional<Amalgam> amalgam;
  std::optional<IncarnatingSet> incarnation;  // of the amalgam space
  std::vector<RibGroupFailure> failures;      // nonempty iff no amalgam was built

  bool ok() const { return amalgam.has_value(); }
};

// Amalgam of an isometric formation of l1-embeddable spaces, built
// rib direction by rib direction of the dual ball of A and verified exactly.
L1Amalgam l1_amalgamate(const VFormation& v);

}  // namespace finban
