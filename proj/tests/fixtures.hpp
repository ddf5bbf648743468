#pragma once

#include <functional>
#include <string>
#include <vector>

#include "finban/errors.hpp"
#include "finban/formation.hpp"

namespace fixtures {

using namespace finban;

inline RatVec v2(long a, long b) { return {Rat(a), Rat(b)}; }

inline RatMat col(std::vector<long> xs) {
  RatVec c;
  for (long x : xs) c.push_back(Rat(x));
  return RatMat::from_cols({c});
}

inline RatMat mat(const std::string& s) { return parse_mat(s); }

inline SymPolytope hexagon() { return zonotope_of({v2(1, 0), v2(0, 1), v2(1, 1)}); }

struct NamedFormation {
  std::string name;
  VFormation v;
};

// Coordinate-aligned formations of l1 spaces.
inline std::vector<NamedFormation> curated_l1_formations() {
  std::vector<NamedFormation> out;
  out.push_back({"l1^1 identities", make_formation(ell1(1), ell1(1), ell1(1), RatMat::identity(1), RatMat::identity(1))});
  out.push_back({"l1^1 in l1^2 twice", make_formation(ell1(1), ell1(2), ell1(2), col({1, 0}), col({1, 0}))});
  FinSpace diag = subspace(ell1(2), col({1, 1}));
  out.push_back({"diagonal glued to l1^1", make_formation(diag, ell1(2), ell1(1), col({1, 1}), col({2}))});
  out.push_back({"l1^1 into l1^3 and l1^2", make_formation(ell1(1), ell1(3), ell1(2), col({1, 0, 0}), col({0, 1}))});
  out.push_back({"l1^2 plane twice in l1^3", make_formation(ell1(2), ell1(3), ell1(3), mat("1,0;0,1;0,0"), mat("0,0;1,0;0,1"))});
  out.push_back({"l1^2 into l1^2 by a signed permutation", make_formation(ell1(2), ell1(2), ell1(3), mat("0,-1;1,0"), mat("1,0;0,0;0,1"))});
  return out;
}

inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace fixtures
