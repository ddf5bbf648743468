#include "finban/space.hpp"

#include <algorithm>
#include <cmath>

#include "finban/budget.hpp"
#include "finban/errors.hpp"
#include "finban/lp.hpp"

namespace finban {

namespace {

void check_dim(const FinSpace& x, const RatVec& v) {
  if (v.size() != x.dim())
    fail(ErrorKind::DimMismatch, "vector of size " + std::to_string(v.size()) + " in a space of dimension " + std::to_string(x.dim()));
}

void check_independent(const RatMat& basis, std::size_t n) {
  if (basis.rows() != n) fail(ErrorKind::DimMismatch, "basis rows do not match the space dimension");
  if (basis.cols() == 0 || rank(basis) < basis.cols()) fail(ErrorKind::DependentBasis, "basis columns are dependent");
}

RatVec concat(const RatVec& a, const RatVec& b) {
  RatVec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<RatVec> pad_right(const std::vector<RatVec>& vs, std::size_t extra) {
  std::vector<RatVec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(concat(v, zeros(extra)));
  return out;
}

std::vector<RatVec> pad_left(const std::vector<RatVec>& vs, std::size_t extra) {
  std::vector<RatVec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(concat(zeros(extra), v));
  return out;
}

std::vector<RatVec> products(const std::vector<RatVec>& a, const std::vector<RatVec>& b) {
  if (a.size() * b.size() > budgets().max_vertices)
    fail(ErrorKind::BudgetExceeded, "direct sum would have " + std::to_string(a.size() * b.size()) + " vertices");
  std::vector<RatVec> out;
  out.reserve(a.size() * b.size());
  for (const auto& u : a)
    for (const auto& w : b) out.push_back(concat(u, w));
  return out;
}

std::string join_label(const char* op, const FinSpace& x, const FinSpace& y) {
  if (x.label.empty() || y.label.empty()) return {};
  return x.label + " " + op + " " + y.label;
}

}  // namespace

FinSpace make_space(SymPolytope ball, std::string label) { return FinSpace{std::move(ball), std::move(label), false}; }

FinSpace ell1(std::size_t n) { return make_space(SymPolytope::cross_polytope(n), "l1^" + std::to_string(n)); }
FinSpace ell_inf(std::size_t n) { return make_space(SymPolytope::cube(n), "linf^" + std::to_string(n)); }

LinOp make_op(FinSpace domain, FinSpace codomain, RatMat matrix) {
  if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim())
    fail(ErrorKind::DimMismatch, "operator matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) + ", expected " +
                                     std::to_string(codomain.dim()) + "x" + std::to_string(domain.dim()));
  return LinOp{std::move(domain), std::move(codomain), std::move(matrix)};
}

LinOp identity_op(const FinSpace& x) { return LinOp{x, x, RatMat::identity(x.dim())}; }

LinOp compose(const LinOp& outer, const LinOp& inner) {
  if (outer.domain.dim() != inner.codomain.dim()) fail(ErrorKind::DimMismatch, "composition of incompatible operators");
  return LinOp{inner.domain, outer.codomain, outer.matrix * inner.matrix};
}

LinOp scaled(const LinOp& u, const Rat& s) { return LinOp{u.domain, u.codomain, u.matrix.scaled(s)}; }

Rat norm(const FinSpace& x, const RatVec& v) {
  check_dim(x, v);
  return gauge(x.ball, v);
}

FinSpace dual(const FinSpace& x) {
  FinSpace d{polar(x.ball), {}, x.approximate};
  if (!x.label.empty()) d.label = x.label.back() == '*' ? x.label.substr(0, x.label.size() - 1) : x.label + "*";
  return d;
}

FinSpace subspace(const FinSpace& x, const RatMat& basis) {
  check_independent(basis, x.dim());
  return FinSpace{section(x.ball, basis), {}, x.approximate};
}

Quotient quotient(const FinSpace& x, const RatMat& sub_basis) {
  const std::size_t n = x.dim();
  check_independent(sub_basis, n);
  const std::size_t k = sub_basis.cols();
  if (k >= n) fail(ErrorKind::NotProper, "quotient by the whole space");

  RatMat q = complement_coordinates(sub_basis);

  FinSpace qs{linear_image(x.ball, q), {}, x.approximate};
  return Quotient{qs, LinOp{x, qs, q}};
}

RatMat complement_coordinates(const RatMat& sub_basis, std::vector<std::size_t>* chosen) {
  const std::size_t n = sub_basis.rows(), k = sub_basis.cols();
  std::vector<RatVec> cols = sub_basis.col_list();
  if (chosen) chosen->clear();
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    cols.push_back(unit(n, i));
    if (rank(cols, n) < cols.size()) cols.pop_back();
    else if (chosen) chosen->push_back(i);
  }
  if (cols.size() < n) fail(ErrorKind::DependentBasis, "subspace basis columns are dependent");
  RatMat full_inv = *inverse(RatMat::from_cols(cols));
  std::vector<std::size_t> tail;
  for (std::size_t r = k; r < n; ++r) tail.push_back(r);
  return full_inv.select_rows(tail);
}

Rat quotient_norm_lp(const FinSpace& x, const RatMat& sub_basis, const RatVec& v) {
  check_dim(x, v);
  const std::size_t k = sub_basis.cols();
  // variables (a, t): minimize t with t >= <f, v - S a> for every facet f.
  LinearProgram lp(k + 1);
  RatVec obj = zeros(k + 1);
  obj[k] = 1;
  lp.minimize(obj);
  RatMat st = sub_basis.transpose();
  for (const auto& f : x.ball.facets()) {
    RatVec row = st.apply(f);
    row.push_back(Rat(1));
    lp.add_ge(row, dot(f, v));
  }
  return solve_or_throw(lp).value;
}

RatMat annihilator_basis(const RatMat& sub_basis) { return nullspace(sub_basis.transpose()); }

Annihilator annihilator(const FinSpace& x, const RatMat& sub_basis) {
  check_independent(sub_basis, x.dim());
  RatMat b = annihilator_basis(sub_basis);
  if (b.cols() == 0) fail(ErrorKind::NotProper, "annihilator of the whole space is zero-dimensional");
  return Annihilator{subspace(dual(x), b), b};
}

FinSpace dsum1(const FinSpace& x, const FinSpace& y) {
  const std::size_t n = x.dim(), m = y.dim();
  std::vector<RatVec> vs = pad_right(x.ball.vertices(), m);
  auto right = pad_left(y.ball.vertices(), n);
  vs.insert(vs.end(), right.begin(), right.end());
  auto fs = products(x.ball.facets(), y.ball.facets());
  return FinSpace{SymPolytope::from_both_unchecked(n + m, std::move(vs), std::move(fs)), join_label("+1", x, y),
                  x.approximate || y.approximate};
}

FinSpace dsum_inf(const FinSpace& x, const FinSpace& y) {
  FinSpace d = dual(dsum1(dual(x), dual(y)));
  d.label = join_label("+inf", x, y);
  return d;
}

FinSpace dsum2_approx(const FinSpace& x, const FinSpace& y, const Rat& eps) {
  if (eps <= 0) fail(ErrorKind::InvalidArgument, "dsum2_approx needs eps > 0");
  // The l2-sum norm is the max of c||x|| + s||y|| over unit (c, s) >= 0. Using
  // finitely many rational directions (c, s) = ((1-t^2), 2t)/(1+t^2), t = k/K,
  // underestimates it by at most cos of half the largest angular gap, which
  // is at most 1/K since the angle 2 atan t has slope <= 2.
  long double e = to_double(eps);
  long double gap = std::acos(1.0L / (1.0L + e));
  long K = static_cast<long>(std::ceil(1 / gap)) + 1;
  if (K < 2) K = 2;

  std::vector<RatVec> fs;
  auto gx = pad_right(x.ball.facets(), y.dim());
  auto gy = pad_left(y.ball.facets(), x.dim());
  fs.insert(fs.end(), gx.begin(), gx.end());
  fs.insert(fs.end(), gy.begin(), gy.end());
  for (long k = 1; k < K; ++k) {
    Rat t = Rat(k) / Rat(K);
    Rat c = (1 - t * t) / (1 + t * t), s = 2 * t / (1 + t * t);
    for (const auto& f : x.ball.facets())
      for (const auto& g : y.ball.facets()) {
        fs.push_back(concat(scale(f, c), scale(g, s)));
        fs.push_back(concat(scale(f, s), scale(g, c)));  // keeps the body symmetric under swapping summands
      }
  }
  FinSpace out{SymPolytope::from_facets(std::move(fs)), join_label("+2~", x, y), true};
  return out;
}

Rat operator_norm(const LinOp& u) {
  Rat best = 0;
  for (const auto& v : u.domain.ball.vertices()) best = std::max(best, gauge(u.codomain.ball, u.matrix.apply(v)));
  return best;
}

DistortionCert distortion(const LinOp& u) {
  DistortionCert cert{u, operator_norm(u), std::nullopt, std::nullopt};
  if (u.matrix.cols() == 0 || rank(u.matrix) < u.matrix.cols()) return cert;
  SymPolytope pulled = section(u.codomain.ball, u.matrix);
  Rat inv = 0;
  for (const auto& c : pulled.vertices()) inv = std::max(inv, gauge(u.domain.ball, c));
  cert.inverse_norm = inv;
  cert.distortion = cert.norm * inv;
  return cert;
}

std::optional<Rat> isometry_defect(const LinOp& j) {
  DistortionCert c = distortion(j);
  if (!c.inverse_norm) return std::nullopt;
  Rat a = rat_abs(c.norm - 1);
  Rat b = rat_abs(1 - 1 / *c.inverse_norm);
  return std::max(a, b);
}

std::optional<LinOp> is_isometric(const FinSpace& x, const FinSpace& y) {
  if (x.dim() != y.dim()) fail(ErrorKind::DimMismatch, "spaces of different dimension");
  auto t = congruent(x.ball, y.ball);
  if (!t) return std::nullopt;
  return LinOp{x, y, *t};
}

}  // namespace finban
