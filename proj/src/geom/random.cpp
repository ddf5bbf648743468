#include "finban/random.hpp"

namespace finban {

RatVec random_int_vec(Rng& rng, std::size_t n, long range) {
  RatVec v(n);
  for (auto& x : v) x = rng.uniform(-range, range);
  return v;
}

RatVec random_nonzero_vec(Rng& rng, std::size_t n, long range) {
  while (true) {
    RatVec v = random_int_vec(rng, n, range);
    if (!is_zero(v)) return v;
  }
}

RatMat random_basis(Rng& rng, std::size_t n, std::size_t k, long range) {
  while (true) {
    std::vector<RatVec> cols;
    for (std::size_t j = 0; j < k; ++j) cols.push_back(random_nonzero_vec(rng, n, range));
    RatMat b = RatMat::from_cols(cols, n);
    if (rank(b) == k) return b;
  }
}

RatMat random_invertible(Rng& rng, std::size_t n, long range) { return random_basis(rng, n, n, range); }

SymPolytope random_body(Rng& rng, std::size_t dim, std::size_t extra_points, long range) {
  std::vector<RatVec> pts;
  RatMat t = random_invertible(rng, dim, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    pts.push_back(t.col(i));
    pts.push_back(neg(t.col(i)));
  }
  for (std::size_t k = 0; k < extra_points; ++k) {
    RatVec v = random_nonzero_vec(rng, dim, range);
    pts.push_back(v);
    pts.push_back(neg(v));
  }
  return SymPolytope::from_points(std::move(pts));
}

}  // namespace finban
