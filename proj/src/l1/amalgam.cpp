#include <map>

#include "finban/errors.hpp"
#include "finban/l1.hpp"

namespace finban {

namespace {

struct Member {
  RatVec g;   // generator, signed so that its restriction is alpha * direction
  Rat alpha;  // > 0
};

struct Split {
  std::map<RatVec, std::vector<Member>, decltype(&lex_less)> groups{&lex_less};
  std::vector<RatVec> kernel;
};

// Groups the generators of B by the direction of their restriction to A.
Split split_by_rib(const IncarnatingSet& k, const RatMat& i) {
  RatMat it = i.transpose();
  Split s;
  for (const auto& g0 : k.generators) {
    RatVec img = it.apply(g0);
    if (is_zero(img)) {
      s.kernel.push_back(g0);
      continue;
    }
    RatVec dir = primitive(lex_positive(img) ? img : neg(img));
    Rat alpha = *parallel_ratio(img, dir);
    s.groups[dir].push_back(alpha > 0 ? Member{g0, alpha} : Member{neg(g0), -alpha});
  }
  return s;
}

RatVec join(const RatVec& a, const RatVec& b) {
  RatVec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

L1Amalgam l1_amalgamate(const VFormation& v) {
  for (const LinOp* i : {&v.i1, &v.i2}) {
    auto d = isometry_defect(*i);
    if (!d || *d != 0) fail(ErrorKind::NotIsometricInput, "l1 amalgamation needs isometric embeddings");
  }
  auto k1 = is_l1_embeddable(v.b1);
  auto k2 = is_l1_embeddable(v.b2);
  if (!k1 || !k2) fail(ErrorKind::NotAZonotope, "formation spaces must embed into l1");
  const std::size_t n1 = v.b1.dim(), n2 = v.b2.dim();

  Split s1 = split_by_rib(*k1, v.i1.matrix);
  Split s2 = split_by_rib(*k2, v.i2.matrix);

  L1Amalgam out;
  std::vector<RatVec> w;
  for (const auto& [dir, left] : s1.groups) {
    auto it = s2.groups.find(dir);
    Rat r1 = 0, r2 = 0;
    for (const auto& m : left) r1 += m.alpha;
    if (it != s2.groups.end())
      for (const auto& m : it->second) r2 += m.alpha;
    if (r1 != r2) {
      out.failures.push_back({dir, r1, r2, "rib lengths seen from B1 and B2 differ"});
      continue;
    }
    // Each pair (y_i, z_j) contributes (beta_j y_i, alpha_i z_j) / R, so the
    // B1 side sums back to y_i and the B2 side to z_j.
    for (const auto& y : left)
      for (const auto& z : it->second) w.push_back(join(scale(y.g, z.alpha / r1), scale(z.g, y.alpha / r1)));
  }
  for (const auto& [dir, right] : s2.groups) {
    if (s1.groups.count(dir)) continue;
    Rat r2 = 0;
    for (const auto& m : right) r2 += m.alpha;
    out.failures.push_back({dir, Rat(0), r2, "rib direction seen only from B2"});
  }
  if (!out.failures.empty()) return out;
  for (const auto& y : s1.kernel) w.push_back(join(y, zeros(n2)));
  for (const auto& z : s2.kernel) w.push_back(join(zeros(n1), z));

  // Every w vanishes on {(i1 a, -i2 a)}; quotient by the common kernel.
  RatMat kernel = nullspace(RatMat::from_rows(w));
  std::vector<std::size_t> chosen;
  RatMat q = kernel.cols() ? complement_coordinates(kernel, &chosen) : RatMat::identity(n1 + n2);
  if (kernel.cols() == 0)
    for (std::size_t i = 0; i < n1 + n2; ++i) chosen.push_back(i);
  std::vector<RatVec> psi;
  for (const auto& g : w) {
    RatVec p;
    for (auto j : chosen) p.push_back(g[j]);
    psi.push_back(p);
  }
  IncarnatingSet kw = make_incarnating_set(chosen.size(), psi);
  FinSpace f = incarnated_space(kw);

  std::vector<std::size_t> left_cols, right_cols;
  for (std::size_t i = 0; i < n1; ++i) left_cols.push_back(i);
  for (std::size_t i = 0; i < n2; ++i) right_cols.push_back(n1 + i);
  Amalgam am{f, make_op(v.b1, f, q.select_cols(left_cols)), make_op(v.b2, f, q.select_cols(right_cols)), {}, {}};
  am.defect1 = isometry_defect(am.j1);
  am.defect2 = isometry_defect(am.j2);

  if (!(am.j1.matrix * v.i1.matrix == am.j2.matrix * v.i2.matrix))
    out.failures.push_back({{}, Rat(0), Rat(0), "square does not commute"});
  if (!am.defect1 || *am.defect1 != 0) out.failures.push_back({{}, Rat(0), Rat(0), "j1 is not isometric"});
  if (!am.defect2 || *am.defect2 != 0) out.failures.push_back({{}, Rat(0), Rat(0), "j2 is not isometric"});
  if (!out.failures.empty()) return out;
  out.amalgam = std::move(am);
  out.incarnation = std::move(kw);
  return out;
}

}  // namespace finban
