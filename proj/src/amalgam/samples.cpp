#include "finban/samples.hpp"

namespace finban {

namespace {

long pick(Rng& rng, long lo, long hi) { return rng.uniform(lo, hi); }

FinSpace random_extension(Rng& rng, const FinSpace& a, std::size_t extra, RatMat& embedding) {
  const std::size_t k = a.dim(), n = k + extra;
  FinSpace c = make_space(random_body(rng, extra, static_cast<std::size_t>(pick(rng, 0, 2))));
  FinSpace sum = pick(rng, 0, 1) ? dsum1(a, c) : dsum_inf(a, c);
  RatMat m = random_invertible(rng, n, 1);
  RatMat inc(n, k);
  for (std::size_t i = 0; i < k; ++i) inc(i, i) = 1;
  embedding = m * inc;
  return make_space(linear_image(sum.ball, m));
}

FinSpace l1_extension(Rng& rng, const IncarnatingSet& ka, std::size_t extra, RatMat& embedding) {
  const std::size_t k = ka.sub_dim, n = k + extra;
  std::vector<RatVec> gens;
  for (const auto& g : ka.generators) {
    std::size_t pieces = static_cast<std::size_t>(pick(rng, 1, extra ? 2 : 1));
    std::vector<long> w(pieces);
    long total = 0;
    for (auto& x : w) total += (x = pick(rng, 1, 3));
    for (std::size_t p = 0; p < pieces; ++p) {
      RatVec piece = scale(g, Rat(w[p]) / Rat(total));
      for (std::size_t e = 0; e < extra; ++e) piece.push_back(Rat(pick(rng, -1, 1)));
      gens.push_back(piece);
    }
  }
  for (std::size_t e = 0; e < extra; ++e) {
    RatVec z = zeros(n);
    z[k + e] = pick(rng, 1, 2);
    gens.push_back(z);
  }
  FinSpace b = incarnated_space(make_incarnating_set(n, gens));
  RatMat m = random_invertible(rng, n, 1);
  RatMat inc(n, k);
  for (std::size_t i = 0; i < k; ++i) inc(i, i) = 1;
  embedding = m * inc;
  return make_space(linear_image(b.ball, m));
}

}  // namespace

VFormation random_isometric_formation(Rng& rng, std::size_t max_dim) {
  std::size_t k = static_cast<std::size_t>(pick(rng, 1, static_cast<long>(max_dim) - 1));
  FinSpace a = make_space(random_body(rng, k, static_cast<std::size_t>(pick(rng, 0, 2))));
  RatMat i1, i2;
  FinSpace b1 = random_extension(rng, a, static_cast<std::size_t>(pick(rng, 1, static_cast<long>(max_dim - k))), i1);
  FinSpace b2 = random_extension(rng, a, static_cast<std::size_t>(pick(rng, 1, static_cast<long>(max_dim - k))), i2);
  return make_formation(a, b1, b2, i1, i2);
}

IncarnatingSet random_incarnating_set(Rng& rng, std::size_t m, std::size_t max_gens, long range) {
  while (true) {
    std::size_t count = static_cast<std::size_t>(pick(rng, static_cast<long>(m), static_cast<long>(std::max(m, max_gens))));
    std::vector<RatVec> gens;
    for (std::size_t i = 0; i < count; ++i) gens.push_back(random_nonzero_vec(rng, m, range));
    auto canon = canonical_generators(gens);
    if (rank(canon, m) == m) return IncarnatingSet{m, canon};
  }
}

VFormation random_l1_formation(Rng& rng, std::size_t max_dim) {
  std::size_t k = static_cast<std::size_t>(pick(rng, 1, static_cast<long>(max_dim) - 1));
  IncarnatingSet ka = random_incarnating_set(rng, k, 4, 2);
  FinSpace a = incarnated_space(ka);
  RatMat i1, i2;
  FinSpace b1 = l1_extension(rng, ka, static_cast<std::size_t>(pick(rng, 0, static_cast<long>(max_dim - k))), i1);
  FinSpace b2 = l1_extension(rng, ka, static_cast<std::size_t>(pick(rng, 0, static_cast<long>(max_dim - k))), i2);
  return make_formation(a, b1, b2, i1, i2);
}

}  // namespace finban
