#include "finban/errors.hpp"
#include "finban/formation.hpp"

namespace finban {

VFormation make_formation(const FinSpace& a, const FinSpace& b1, const FinSpace& b2, const RatMat& i1, const RatMat& i2,
                          FormationMode mode) {
  VFormation v{a, b1, b2, make_op(a, b1, i1), make_op(a, b2, i2), mode};
  for (const LinOp* i : {&v.i1, &v.i2}) {
    auto d = isometry_defect(*i);
    if (!d) fail(ErrorKind::NotIsometricInput, "formation embedding is not injective");
    if (mode == FormationMode::Isometric && *d != 0)
      fail(ErrorKind::NotIsometricInput, "formation embedding has isometry defect " + to_string(*d));
  }
  return v;
}

}  // namespace finban
