#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finban/analysis.hpp"
#include "finban/budget.hpp"
#include "finban/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace finban;
using namespace fixtures;

namespace {

RatVec e(std::size_t n, std::size_t k) { return unit(n, k); }

}  // namespace

TEST_CASE("rademacher averages") {
  CHECK(rademacher_average(ell1(2), {e(2, 0), e(2, 1)}) == 2);
  CHECK(rademacher_average(ell1(2), {e(2, 0), e(2, 0)}) == 1);
  CHECK(rademacher_average(ell_inf(2), {e(2, 0), e(2, 1)}) == 1);
  Budgets b;
  b.rademacher_max = 3;
  BudgetScope scope(b);
  CHECK(kind_of([] { rademacher_average(ell1(1), std::vector<RatVec>(4, {Rat(1)})); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("rademacher average invariances") {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    auto x = make_space(random_body(rng, 3, 2));
    std::vector<RatVec> vs;
    for (int i = 0; i < 5; ++i) vs.push_back(random_nonzero_vec(rng, 3, 3));
    Rat base = rademacher_average(x, vs);
    // Brute force over all 2^5 patterns as an oracle.
    Rat brute = 0;
    for (int mask = 0; mask < 32; ++mask) {
      RatVec s = zeros(3);
      for (int i = 0; i < 5; ++i) s = (mask >> i) & 1 ? sub(s, vs[i]) : add(s, vs[i]);
      brute += norm(x, s);
    }
    CHECK(base == brute / 32);
    auto perm = vs;
    std::swap(perm[0], perm[3]);
    std::swap(perm[1], perm[4]);
    CHECK(rademacher_average(x, perm) == base);
    auto flip = vs;
    flip[2] = neg(flip[2]);
    CHECK(rademacher_average(x, flip) == base);
  }
}

TEST_CASE("cotype and type witnesses") {
  auto c = cotype_witness(ell1(2), {e(2, 0), e(2, 0)}, Rat(2));
  CHECK(c.average == 1);
  CHECK(c.bound_squared == Rat(2));
  CHECK(c.bound == doctest::Approx(std::sqrt(2.0)));

  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<RatVec> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(e(n, i));
    auto r2 = cotype_witness(ell_inf(n), basis, Rat(2));
    CHECK(r2.average == 1);
    CHECK(r2.bound_squared == Rat(static_cast<long>(n)));
    auto r3 = cotype_witness(ell_inf(n), basis, Rat(3));
    CHECK(std::abs(r3.bound - std::cbrt(double(n))) < 1e-12);
    auto ri = cotype_witness(ell_inf(n), basis, std::nullopt);
    CHECK(ri.bound_exact == Rat(1));
  }
  CHECK(cotype_witness(ell1(3), {e(3, 1)}, Rat(2)).bound_squared == Rat(1));
  CHECK(type_witness(ell1(3), {e(3, 1)}, Rat(1)).bound_exact == Rat(1));
  CHECK(kind_of([] { cotype_witness(ell1(2), {e(2, 0)}, Rat(1)); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { type_witness(ell1(2), {e(2, 0)}, Rat(3)); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { type_witness(ell1(2), {zeros(2)}, Rat(1)); }) == ErrorKind::InvalidArgument);

  // l1 has type 1 only: the basis gives avg = n = sum of norms.
  auto t1 = type_witness(ell1(4), {e(4, 0), e(4, 1), e(4, 2), e(4, 3)}, Rat(2));
  CHECK(t1.bound_squared == Rat(4));
}

TEST_CASE("witness bounds are monotone in the exponent") {
  Rng rng(10);
  for (int t = 0; t < 8; ++t) {
    auto x = make_space(random_body(rng, 2, 2));
    std::vector<RatVec> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(random_nonzero_vec(rng, 2, 3));
    double prev = 1e300;
    for (Rat q : {Rat(2), Rat(5, 2), Rat(3), Rat(6)}) {
      double b = cotype_witness(x, vs, q).bound;
      CHECK(b <= prev + 1e-9);
      prev = b;
    }
    CHECK(cotype_witness(x, vs, std::nullopt).bound <= prev + 1e-9);
    // The type bound divides by the l_p sum, which shrinks as p grows, so
    // it moves the other way.
    prev = 0;
    for (Rat p : {Rat(1), Rat(5, 4), Rat(3, 2), Rat(2)}) {
      double b = type_witness(x, vs, p).bound;
      CHECK(b >= prev - 1e-9);
      prev = b;
    }
  }
}

TEST_CASE("projection constants") {
  auto d = projection_constant(ell1(2), col({1, 1}));
  CHECK(d.lambda == 1);
  CHECK(d.optimal_projection.matrix == mat("1/2,1/2;1/2,1/2"));
  auto full = projection_constant(make_space(hexagon()), RatMat::identity(2));
  CHECK(full.lambda == 1);
  CHECK(full.optimal_projection.matrix == RatMat::identity(2));
  CHECK(projection_constant(ell_inf(2), col({1, 0})).lambda == 1);
  CHECK(kind_of([] { projection_constant(ell1(2), mat("1,2;2,4")); }) == ErrorKind::DependentBasis);

  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n) - 1));
    auto x = make_space(random_body(rng, n, 2));
    RatMat s = random_basis(rng, n, k);
    auto res = projection_constant(x, s);
    CHECK(is_projection_onto(res.optimal_projection.matrix, s));
    CHECK(operator_norm(res.optimal_projection) == res.lambda);
    CHECK(res.lambda >= 1);
    for (int j = 0; j < 5; ++j) {
      RatMat m = RatMat::from_rows([&] {
        std::vector<RatVec> rows;
        for (std::size_t i = 0; i < k; ++i) rows.push_back(random_int_vec(rng, n, 2));
        return rows;
      }());
      auto inv = inverse(m * s);
      if (!inv) continue;
      RatMat p = s * (*inv * m);
      REQUIRE(is_projection_onto(p, s));
      CHECK(res.lambda <= operator_norm(make_op(x, x, p)));
    }
  }
}

TEST_CASE("projection trend on near-Euclidean subspaces of l1") {
  auto rep = projection_trend(near_euclidean_l1_subspaces());
  REQUIRE(rep.rows.size() == 3);
  for (const auto& r : rep.rows) {
    CHECK(r.lambda >= 1);
    MESSAGE("rank " << r.rank << ": lambda = " << to_string(r.lambda) << " ~ " << to_double(r.lambda));
  }
  CHECK(rep.rows[0].lambda == 1);
  CHECK(rep.increasing);
  REQUIRE(rep.exponent);
  MESSAGE("fitted exponent " << *rep.exponent);
  auto single = projection_trend({near_euclidean_l1_subspaces()[1]});
  CHECK(single.rows.size() == 1);
  CHECK_FALSE(single.exponent);
}

TEST_CASE("tensor norms") {
  TensorElem r1{ell1(2), ell1(2), mat("1,0;0,0")};
  CHECK(injective_norm(r1) == 1);
  CHECK(projective_norm(r1) == 1);
  TensorElem id{ell_inf(2), ell1(2), RatMat::identity(2)};
  CHECK(injective_norm(id) == 1);
  CHECK(projective_norm(id) == 2);
  TensorElem sc{ell_inf(2), ell1(2), RatMat::identity(2).scaled(Rat(-3, 2))};
  CHECK(injective_norm(sc) == Rat(3, 2));

  for (std::size_t n = 1; n <= 4; ++n) {
    TensorElem t{ell_inf(n), ell1(n), RatMat::identity(n)};
    CHECK(injective_norm(t) == 1);
    CHECK(projective_norm(t) == static_cast<long>(n));
    // Trace duality: the bilinear form (x, y) -> <x, y> has norm 1 on
    // linf^n x l1^n and pairs with the identity to n.
    Rat form = 0;
    for (const auto& x : t.left.ball.vertices())
      for (const auto& y : t.right.ball.vertices()) form = std::max(form, rat_abs(dot(x, y)));
    CHECK(form == 1);
  }

  Rng rng(19);
  for (int t = 0; t < 25; ++t) {
    std::size_t n1 = static_cast<std::size_t>(rng.uniform(1, 3)), n2 = static_cast<std::size_t>(rng.uniform(1, 3));
    auto l = make_space(random_body(rng, n1, 1)), r = make_space(random_body(rng, n2, 1));
    RatMat c(n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) c(i, j) = rng.uniform(-3, 3);
    TensorElem te{l, r, c};
    Rat inj = injective_norm(te), proj = projective_norm(te);
    CHECK(inj <= proj);
    // Weak duality with a random bilinear form.
    RatMat s(n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) s(i, j) = rng.uniform(-2, 2);
    Rat pairing = 0, snorm = 0;
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) pairing += c(i, j) * s(i, j);
    for (const auto& x : l.ball.vertices())
      for (const auto& y : r.ball.vertices()) snorm = std::max(snorm, rat_abs(dot(x, s.apply(y))));
    if (snorm != 0) CHECK(rat_abs(pairing) / snorm <= proj);

    RatVec a = random_nonzero_vec(rng, n1, 3), b = random_nonzero_vec(rng, n2, 3);
    TensorElem rk{l, r, RatMat::from_cols({a}) * RatMat::from_rows({b})};
    CHECK(injective_norm(rk) == norm(l, a) * norm(r, b));
    CHECK(projective_norm(rk) == norm(l, a) * norm(r, b));
  }
  Budgets small;
  small.tensor_max = 3;
  BudgetScope scope(small);
  CHECK(kind_of([&] { projective_norm(id); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("nuclear and 1-summing norms") {
  auto x = make_space(hexagon()), y = ell_inf(2);
  RatVec f = v2(1, -1), yv = v2(2, 1);
  LinOp r1 = make_op(x, y, RatMat::from_cols({yv}) * RatMat::from_rows({f}));
  Rat expected = norm(dual(x), f) * norm(y, yv);
  CHECK(nuclear_norm(r1) == expected);
  CHECK(pi1_norm(r1) == expected);
  CHECK(nuclear_norm(identity_op(ell1(1))) == 1);
  CHECK(pi1_norm(identity_op(ell1(1))) == 1);
  CHECK(nuclear_norm(identity_op(ell1(2))) == 2);
  CHECK(pi1_norm(make_op(ell1(2), ell1(2), mat("0,0;0,0"))) == 0);

  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3)), m = static_cast<std::size_t>(rng.uniform(1, 3));
    auto dom = make_space(random_body(rng, n, 1)), cod = make_space(random_body(rng, m, 1));
    RatMat a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-2, 2);
    LinOp u = make_op(dom, cod, a);
    Rat op = operator_norm(u), p1 = pi1_norm(u), nu = nuclear_norm(u);
    CHECK(op <= p1);
    CHECK(p1 <= nu);
  }
}

TEST_CASE("pi1 against the 1/64 grid oracle") {
  Rng rng(64);
  const long res = 64;
  for (int t = 0; t < 4; ++t) {
    RatMat a(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.uniform(-2, 2);
    LinOp u = make_op(ell_inf(2), ell1(2), a);
    Rat p1 = pi1_norm(u);
    CHECK(p1 <= nuclear_norm(u));

    auto [lower, upper] = oracles::pi1_grid_bounds(u, res);
    REQUIRE(upper >= 0);
    CAPTURE(to_string(a));
    CHECK(lower <= p1);
    CHECK(p1 <= upper);
    MESSAGE("pi1 = " << to_string(p1) << " in [" << to_string(lower) << ", " << to_string(upper) << "]");
  }
}
