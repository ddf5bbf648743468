#include "finban/amalgam.hpp"
#include "finban/errors.hpp"
#include "finban/l1.hpp"
#include "finban/random.hpp"

namespace finban {

Amalgam pushout(const VFormation& v, SumChoice sum) {
  const std::size_t n1 = v.b1.dim(), n2 = v.b2.dim(), k = v.a.dim();
  FinSpace total = sum.kind == SumKind::L1 ? dsum1(v.b1, v.b2) : dsum2_approx(v.b1, v.b2, sum.eps);

  RatMat h(n1 + n2, k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < n1; ++r) h(r, c) = v.i1.matrix(r, c);
    for (std::size_t r = 0; r < n2; ++r) h(n1 + r, c) = -v.i2.matrix(r, c);
  }
  Quotient q = quotient(total, h);

  std::vector<std::size_t> left, right;
  for (std::size_t i = 0; i < n1; ++i) left.push_back(i);
  for (std::size_t i = 0; i < n2; ++i) right.push_back(n1 + i);
  Amalgam a{q.space, make_op(v.b1, q.space, q.map.matrix.select_cols(left)), make_op(v.b2, q.space, q.map.matrix.select_cols(right)), {}, {}};
  a.defect1 = isometry_defect(a.j1);
  a.defect2 = isometry_defect(a.j2);
  if (sum.kind == SumKind::L1 && v.mode == FormationMode::Isometric) {
    if (!a.defect1 || !a.defect2 || *a.defect1 != 0 || *a.defect2 != 0)
      fail(ErrorKind::ConstructionFailed, "l1 pushout of an isometric formation is not isometric");
  }
  return a;
}

AmalgamReport verify_amalgam(const VFormation& v, const Amalgam& a, bool check_l1) {
  AmalgamReport r;
  if (a.j1.matrix.cols() != v.b1.dim() || a.j2.matrix.cols() != v.b2.dim() || a.j1.matrix.rows() != a.j2.matrix.rows()) {
    r.failures.push_back("shape mismatch");
    return r;
  }
  r.commutes = a.j1.matrix * v.i1.matrix == a.j2.matrix * v.i2.matrix;
  if (!r.commutes) r.failures.push_back("j1 i1 != j2 i2");
  r.defect1 = isometry_defect(a.j1);
  r.defect2 = isometry_defect(a.j2);
  if (!r.defect1 || *r.defect1 != 0) r.failures.push_back("j1 is not an isometric embedding");
  if (!r.defect2 || *r.defect2 != 0) r.failures.push_back("j2 is not an isometric embedding");
  r.contractive = operator_norm(a.j1) <= 1 && operator_norm(a.j2) <= 1;
  if (check_l1) {
    r.l1_embeddable = is_l1_embeddable(a.f).has_value();
    if (!*r.l1_embeddable) r.failures.push_back("amalgam space is not l1-embeddable");
  }
  return r;
}

std::vector<IsoCounterexample> search_iso_counterexample(const std::vector<FinSpace>& l1_spaces, std::size_t trials, std::uint64_t seed) {
  std::vector<IsoCounterexample> found;
  std::vector<const FinSpace*> usable;
  for (const auto& s : l1_spaces)
    if (s.dim() >= 2 && is_l1_embeddable(s)) usable.push_back(&s);
  if (usable.empty()) return found;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const FinSpace& b1 = *usable[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(usable.size()) - 1))];
    const FinSpace& b2 = *usable[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(usable.size()) - 1))];
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min(b1.dim(), b2.dim())) - 1));
    RatMat i1 = random_basis(rng, b1.dim(), k), i2 = random_basis(rng, b2.dim(), k);
    FinSpace a = subspace(b1, i1);
    VFormation v = make_formation(a, b1, b2, i1, i2, FormationMode::Isomorphic);
    Amalgam am = pushout(v);
    if (!is_l1_embeddable(am.f)) found.push_back({v, am});
  }
  return found;
}

}  // namespace finban
