#include <algorithm>

#include "finban/errors.hpp"
#include "finban/random.hpp"
#include "finban/tower.hpp"

namespace finban {

EmbeddingTriple make_triple(const FinSpace& b, const RatMat& sub_basis) {
  FinSpace a = subspace(b, sub_basis);
  return EmbeddingTriple{a, b, LinOp{a, b, sub_basis}};
}

namespace {

// Columns completing `basis` to a basis of R^n, greedily from e_1, e_2, ...
RatMat completion(const RatMat& basis) {
  const std::size_t n = basis.rows();
  std::vector<RatVec> cols = basis.col_list(), extra;
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    cols.push_back(unit(n, i));
    if (rank(cols, n) < cols.size()) cols.pop_back();
    else extra.push_back(unit(n, i));
  }
  return RatMat::from_cols(extra, n);
}

}  // namespace

Rat triple_distance_upper(const EmbeddingTriple& s, const EmbeddingTriple& t, std::uint64_t seed) {
  const std::size_t n = s.a.dim(), m = s.b.dim();
  if (t.a.dim() != n || t.b.dim() != m) fail(ErrorKind::DimMismatch, "triples of different shapes");
  if (congruence_key(s.b.ball) == congruence_key(t.b.ball)) {
    for (const auto& u : all_congruences(s.b.ball, t.b.ball))
      if (rank((u * s.i.matrix).hcat(t.i.matrix)) == n) return Rat(1);
  }
  // u = [i1 T | W] [i | C]^-1: T from a Banach-Mazur certificate for the
  // A's, W perturbed from images of vertices.
  RatMat c = completion(s.i.matrix);
  RatMat base_inv = *inverse(s.i.matrix.hcat(c));
  RatMat tmat = bm_upper(s.a, t.a, BmBudget{16, 3, seed}).op.matrix;
  Rng rng(seed);
  const auto& verts = t.b.ball.vertices();

  Rat best = -1;
  auto consider = [&](const RatMat& tt, const RatMat& w) -> std::optional<Rat> {
    RatMat u = (t.i.matrix * tt).hcat(w) * base_inv;
    auto d = map_distortion(s.b, t.b, u);
    if (d && (best < 0 || *d < best)) best = *d;
    return d;
  };
  for (std::size_t r = 0; r < 8; ++r) {
    std::vector<RatVec> wc;
    for (std::size_t j = 0; j < m - n; ++j) wc.push_back(verts[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(verts.size()) - 1))]);
    RatMat w = RatMat::from_cols(wc, m);
    auto cur = consider(tmat, w);
    if (!cur) continue;
    Rat val = *cur, step(1, 2);
    for (int round = 0; round < 4; ++round, step /= 2) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t i = 0; i < w.rows(); ++i)
          for (std::size_t j = 0; j < w.cols(); ++j)
            for (int sg : {1, -1}) {
              RatMat w2 = w;
              w2(i, j) += sg > 0 ? step : Rat(-step);
              auto d = consider(tmat, w2);
              if (d && *d < val) {
                val = *d;
                w = w2;
                improved = true;
              }
            }
      }
    }
  }
  if (best < 0) fail(ErrorKind::ConstructionFailed, "no invertible map between the triples was found");
  return best;
}

TripleNet triple_net(const std::vector<FinSpace>& catalog, std::size_t n, std::size_t m, std::optional<Rat> eps,
                     std::uint64_t seed, std::size_t samples) {
  if (n == 0 || n >= m) fail(ErrorKind::InvalidArgument, "triple net needs 0 < n < m");
  TripleNet net{n, m, eps, {}};
  Rng rng(seed);
  std::vector<EmbeddingTriple> pool;
  for (const auto& b : catalog) {
    if (b.dim() != m) continue;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    while (true) {
      std::vector<RatVec> cols;
      for (auto i : idx) cols.push_back(unit(m, i));
      pool.push_back(make_triple(b, RatMat::from_cols(cols)));
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == m - n + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    for (std::size_t s = 0; s < samples; ++s) pool.push_back(make_triple(b, random_basis(rng, m, n, 2)));
  }
  for (std::size_t p = 0; p < pool.size(); ++p) {
    if (!net.triples.empty() && !eps) break;
    bool far = true;
    for (const auto& q : net.triples) {
      if (triple_distance_upper(pool[p], q, seed + p) <= 1 + *eps) {
        far = false;
        break;
      }
    }
    if (far) net.triples.push_back(pool[p]);
  }
  return net;
}

}  // namespace finban
