#pragma once

#include <cmath>
#include <vector>

#include "finban/space.hpp"
#include "fixtures.hpp"

namespace oracles {

using namespace finban;

// Lower bound for pi_1 from a finite family: sum ||u x_i|| / sup_phi sum |phi(x_i)|.
inline Rat family_lower_bound(const LinOp& u, const std::vector<RatVec>& xs) {
  Rat num = 0, den = 0;
  for (const auto& x : xs) num += norm(u.codomain, u.matrix.apply(x));
  for (const auto& phi : u.domain.ball.facets()) {
    Rat s = 0;
    for (const auto& x : xs) s += rat_abs(dot(phi, x));
    den = std::max(den, s);
  }
  return den == 0 ? Rat(0) : num / den;
}

// Integer points on the boundary of [-r, r]^2, one per sign pair.
inline std::vector<RatVec> square_boundary(long r) {
  std::vector<RatVec> out;
  for (long t = -r; t < r; ++t) {
    out.push_back(fixtures::v2(r, t));
    out.push_back(fixtures::v2(-t, r));
  }
  return out;
}

// Brute-force bounds on pi_1(u) for u : linf^2 -> Y at grid resolution 1/res.
// Lower: families of one or two boundary points. Upper: the best Pietsch
// weights (w1, w2) on e1*, e2* with both on the 1/res grid, checked at every
// boundary point; on each quadrant both sides of the Pietsch inequality are
// linear resp. convex in x and the quadrant's rays are grid points.
struct GridBounds {
  Rat lower;
  Rat upper;
};

inline GridBounds pi1_grid_bounds(const LinOp& u, long res, std::size_t pair_stride = 7) {
  auto boundary = square_boundary(res);
  Rat lower = 0;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    lower = std::max(lower, family_lower_bound(u, {boundary[i]}));
    for (std::size_t j = i + 1; j < boundary.size(); j += pair_stride)
      lower = std::max(lower, family_lower_bound(u, {boundary[i], boundary[j]}));
  }
  std::vector<Rat> need;
  for (const auto& x : boundary) need.push_back(norm(u.codomain, u.matrix.apply(x)));
  Rat upper = -1;
  // Raising w1 past ||u|| never lowers w1 + w2, and ||u|| = max need / res.
  Rat wmax = 0;
  for (const auto& n : need) wmax = std::max(wmax, n);
  const long steps = static_cast<long>(std::ceil(to_double(wmax))) + 1;
  for (long w1 = 0; w1 <= steps; ++w1) {
    Rat w1r = Rat(w1) / res, w2r = 0;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      Rat x1 = rat_abs(boundary[i][0]), x2 = rat_abs(boundary[i][1]);
      Rat lhs = w1r * x1;
      if (lhs >= need[i]) continue;
      if (x2 == 0) {
        w2r = -1;
        break;
      }
      w2r = std::max(w2r, Rat((need[i] - lhs) / x2));
    }
    if (w2r < 0) continue;
    Rat w2g = Rat(static_cast<long>(std::ceil(to_double(w2r) * res - 1e-12))) / res;
    if (w2g < w2r) w2g += Rat(1, res);
    if (upper < 0 || w1r + w2g < upper) upper = w1r + w2g;
  }
  return {lower, upper};
}

}  // namespace oracles
