#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "finban/matrix.hpp"
#include "finban/polytope.hpp"

namespace finban {

// Seeded generator with platform-independent integer draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(gen_() % span);
  }
  std::uint64_t next() { return gen_(); }
  Rng split(std::uint64_t salt) { return Rng(gen_() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

 private:
  std::mt19937_64 gen_;
};

RatVec random_int_vec(Rng& rng, std::size_t n, long range);
RatVec random_nonzero_vec(Rng& rng, std::size_t n, long range);

// n x k matrix with independent columns, entries in [-range, range].
RatMat random_basis(Rng& rng, std::size_t n, std::size_t k, long range = 2);

// Invertible n x n integer matrix.
RatMat random_invertible(Rng& rng, std::size_t n, long range = 2);

// Hull of +-(count random integer points) together with +-(basis vectors),
// so the body is always full-dimensional.
SymPolytope random_body(Rng& rng, std::size_t dim, std::size_t extra_points, long range = 2);

}  // namespace finban
