#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finban/amalgam.hpp"
#include "finban/l1.hpp"
#include "finban/samples.hpp"
#include "fixtures.hpp"

using namespace finban;
using namespace fixtures;

TEST_CASE("incarnate") {
  auto e = incarnate(RatMat::identity(2));
  CHECK(e.incarnation.generators == std::vector<RatVec>{v2(0, 1), v2(1, 0)});
  auto d = incarnate(col({1, 1}));
  CHECK(d.incarnation.generators == std::vector<RatVec>{{Rat(2)}});
  CHECK(incarnation_norm(d.incarnation, {Rat(3)}) == 6);
  auto h = incarnate(mat("1,0;0,1;1,1"));
  CHECK(h.incarnation.generators == std::vector<RatVec>{v2(0, 1), v2(1, 0), v2(1, 1)});
  CHECK(kind_of([] { incarnate(mat("1,2;2,4")); }) == ErrorKind::DependentColumns);
  // Zero rows are dropped, opposite rows merge.
  CHECK(incarnate(mat("1;0;-1")).incarnation.generators == std::vector<RatVec>{{Rat(2)}});
}

TEST_CASE("incarnation_norm") {
  IncarnatingSet k2{2, {v2(1, 0), v2(0, 1)}};
  CHECK(incarnation_norm(k2, v2(1, 1)) == 2);
  IncarnatingSet k3{2, {v2(1, 0), v2(0, 1), v2(1, 1)}};
  CHECK(incarnation_norm(k3, v2(1, 1)) == 4);
  CHECK(incarnation_norm(k3, v2(0, 0)) == 0);
  CHECK(kind_of([&] { incarnation_norm(k3, {Rat(1)}); }) == ErrorKind::DimMismatch);
}

TEST_CASE("dual_zonotope") {
  CHECK(dual_zonotope({2, {v2(1, 0), v2(0, 1)}}) == SymPolytope::cube(2));
  CHECK(dual_zonotope({2, {v2(1, 0), v2(0, 1), v2(1, 1)}}) == hexagon());
  CHECK(dual_zonotope({1, {{Rat(2)}}}) == SymPolytope::segment(2));
  CHECK(kind_of([] { dual_zonotope({2, {v2(1, 1)}}); }) == ErrorKind::NotSpanning);
}

TEST_CASE("reconstruct") {
  CHECK(reconstruct(SymPolytope::cube(2)).generators == std::vector<RatVec>{v2(0, 1), v2(1, 0)});
  CHECK(reconstruct(hexagon()).generators == std::vector<RatVec>{v2(0, 1), v2(1, 0), v2(1, 1)});
  CHECK(kind_of([] { reconstruct(SymPolytope::cross_polytope(3)); }) == ErrorKind::NotAZonotope);
  CHECK(reconstruct(SymPolytope::segment(3)).generators == std::vector<RatVec>{{Rat(3)}});
}

TEST_CASE("is_l1_embeddable") {
  CHECK(is_l1_embeddable(ell1(2)));
  CHECK_FALSE(is_l1_embeddable(ell_inf(3)));
  CHECK(is_l1_embeddable(ell1(3)));
  Rng rng(4);
  for (int t = 0; t < 10; ++t) CHECK(is_l1_embeddable(make_space(random_body(rng, 2, 3))));
  // The witness reproduces the norm.
  auto k = is_l1_embeddable(make_space(hexagon()));
  REQUIRE(k);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) CHECK(incarnation_norm(*k, v2(a, b)) == gauge(hexagon(), v2(a, b)));
}

TEST_CASE("norm agreement and round trip on random sets") {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    auto k = random_incarnating_set(rng, m, 6);
    auto z = dual_zonotope(k);
    for (int s = 0; s < 10; ++s) {
      RatVec c = random_int_vec(rng, m, 5);
      CHECK(incarnation_norm(k, c) == support(z, c));
    }
    CHECK(reconstruct(z) == k);
  }
}

TEST_CASE("embedding soundness") {
  Rng rng(8);
  for (int t = 0; t < 15; ++t) {
    std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    std::size_t n = m + static_cast<std::size_t>(rng.uniform(0, 2));
    RatMat b = random_basis(rng, n, m);
    auto e = incarnate(b);
    FinSpace y = subspace(ell1(n), b);
    for (int s = 0; s < 8; ++s) {
      RatVec c = random_int_vec(rng, m, 4);
      Rat direct = 0;
      for (const auto& x : b.apply(c)) direct += rat_abs(x);
      CHECK(norm(y, c) == incarnation_norm(e.incarnation, c));
      CHECK(direct == incarnation_norm(e.incarnation, c));
    }
  }
}

TEST_CASE("l1 amalgam on curated formations") {
  for (const auto& nf : curated_l1_formations()) {
    CAPTURE(nf.name);
    auto r = l1_amalgamate(nf.v);
    REQUIRE(r.ok());
    auto rep = verify_amalgam(nf.v, *r.amalgam, true);
    CHECK(rep.ok());
    CHECK(is_l1_embeddable(r.amalgam->f));
    // Cross-check against the l1 pushout: both contain B1, B2 agreeing on A.
    auto p = pushout(nf.v);
    CHECK(verify_amalgam(nf.v, p).ok());
  }
  auto trivial = l1_amalgamate(curated_l1_formations()[0].v);
  CHECK(trivial.amalgam->f.dim() == 1);
  CHECK(trivial.amalgam->j1.matrix == trivial.amalgam->j2.matrix);
  auto glued = l1_amalgamate(curated_l1_formations()[1].v);
  REQUIRE(glued.ok());
  CHECK(glued.amalgam->f.dim() == 3);
  CHECK(is_isometric(glued.amalgam->f, ell1(3)));
}

TEST_CASE("l1 amalgam on random formations") {
  Rng rng(99);
  std::size_t failed = 0;
  for (int t = 0; t < 25; ++t) {
    auto v = random_l1_formation(rng, 3);
    auto r = l1_amalgamate(v);
    if (!r.ok()) {
      ++failed;
      continue;
    }
    CHECK(verify_amalgam(v, *r.amalgam, true).ok());
  }
  CHECK(failed == 0);
}

TEST_CASE("l1 amalgam rejects non-isometric input") {
  auto v = make_formation(ell1(1), ell1(2), ell1(2), col({1, 1}), col({1, 0}), FormationMode::Isomorphic);
  CHECK(kind_of([&] { l1_amalgamate(v); }) == ErrorKind::NotIsometricInput);
  auto w = make_formation(ell1(1), ell_inf(3), ell1(1), col({1, 0, 0}), col({1}));
  CHECK(kind_of([&] { l1_amalgamate(w); }) == ErrorKind::NotAZonotope);
}
