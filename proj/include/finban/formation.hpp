#pragma once

#include <optional>

#include "finban/space.hpp"

namespace finban {

enum class FormationMode { Isometric, Isomorphic };

// A space A with two embeddings i1 : A -> B1 and i2 : A -> B2.
struct VFormation {
  FinSpace a;
  FinSpace b1;
  FinSpace b2;
  LinOp i1;
  LinOp i2;
  FormationMode mode = FormationMode::Isometric;
};

// Checks shapes and the mode (distortion exactly 1, or injective).
// Raises NotIsometricInput / DimMismatch.
VFormation make_formation(const FinSpace& a, const FinSpace& b1, const FinSpace& b2, const RatMat& i1, const RatMat& i2,
                          FormationMode mode = FormationMode::Isometric);

// F with j1 : B1 -> F, j2 : B2 -> F and j1 i1 = j2 i2.
struct Amalgam {
  FinSpace f;
  LinOp j1;
  LinOp j2;
  std::optional<Rat> defect1;  // isometry defects; empty if j is not injective
  std::optional<Rat> defect2;
};

}  // namespace finban
