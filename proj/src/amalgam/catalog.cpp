#include <algorithm>

#include "finban/amalgam.hpp"
#include "finban/errors.hpp"
#include "finban/random.hpp"

namespace finban {

std::string SpaceCatalog::fresh_name(const std::string& base) const {
  if (!find(base)) return base;
  for (std::size_t k = 2;; ++k) {
    std::string n = base + "#" + std::to_string(k);
    if (!find(n)) return n;
  }
}

const CatalogEntry* SpaceCatalog::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

std::optional<std::string> SpaceCatalog::find_isometric(const FinSpace& space) const {
  CongruenceKey key = congruence_key(space.ball);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (keys_[i] == key && congruent(entries_[i].space.ball, space.ball)) return entries_[i].name;
  return std::nullopt;
}

std::string SpaceCatalog::add(const std::string& name, const FinSpace& space, Provenance provenance) {
  if (auto existing = find_isometric(space)) return *existing;
  std::string n = fresh_name(name.empty() ? "X" : name);
  FinSpace s = space;
  if (s.label.empty()) s.label = n;
  entries_.push_back({n, s, std::move(provenance)});
  keys_.push_back(congruence_key(space.ball));
  return n;
}

namespace {

std::vector<RatMat> coordinate_bases(std::size_t n) {
  std::vector<RatMat> out;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<RatVec> cols;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) cols.push_back(unit(n, i));
    out.push_back(RatMat::from_cols(cols));
  }
  return out;
}

std::vector<RatMat> sampled_bases(const FinSpace& x, const CatalogPolicy& policy, Rng& rng) {
  const std::size_t n = x.dim();
  std::vector<RatMat> out;
  if (n < 2) return out;
  if (policy.coordinate_subspaces) out = coordinate_bases(n);
  for (std::size_t s = 0; s < policy.random_per_space; ++s) {
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n) - 1));
    out.push_back(random_basis(rng, n, k, policy.range));
  }
  for (const auto& b : policy.explicit_bases)
    if (b.rows() == n && b.cols() < n) out.push_back(b);
  return out;
}

template <class Make>
SpaceCatalog enlarge(const SpaceCatalog& c, const CatalogPolicy& policy, const char* op, Make make) {
  SpaceCatalog out = c;
  Rng rng(policy.seed);
  for (const auto& e : c.entries()) {
    for (const auto& b : sampled_bases(e.space, policy, rng)) {
      FinSpace s = make(e.space, b);
      out.add(std::string(op) + "(" + e.name + ")", s, Provenance{op, {e.name}, {b}});
    }
  }
  return out;
}

}  // namespace

SpaceCatalog catalog_H(const SpaceCatalog& c, const CatalogPolicy& policy) {
  return enlarge(c, policy, "H", [](const FinSpace& x, const RatMat& b) { return subspace(x, b); });
}

SpaceCatalog catalog_Q(const SpaceCatalog& c, const CatalogPolicy& policy) {
  return enlarge(c, policy, "Q", [](const FinSpace& x, const RatMat& b) { return quotient(x, b).space; });
}

SpaceCatalog catalog_dual(const SpaceCatalog& c) {
  SpaceCatalog out;
  for (const auto& e : c.entries()) {
    FinSpace d = dual(e.space);
    std::string name = e.name.size() > 1 && e.name.back() == '*' ? e.name.substr(0, e.name.size() - 1) : e.name + "*";
    out.add(name, d, Provenance{"dual", {e.name}, {}});
  }
  return out;
}

FinSpace replay_entry(const SpaceCatalog& c, const std::string& name) {
  const CatalogEntry* e = c.find(name);
  if (!e) fail(ErrorKind::InvalidArgument, "no catalog entry named " + name);
  const Provenance& p = e->provenance;
  if (p.op == "base") return e->space;
  // Parents of dual entries live in the catalog the dual was taken from; the
  // stored space is the replay in that case.
  if (p.op == "dual") return c.find(p.parents.at(0)) ? dual(replay_entry(c, p.parents[0])) : e->space;
  if (p.op == "H") return subspace(replay_entry(c, p.parents.at(0)), p.data.at(0));
  if (p.op == "Q") return quotient(replay_entry(c, p.parents.at(0)), p.data.at(0)).space;
  if (p.op == "F") {
    FinSpace b = replay_entry(c, p.parents.at(0));
    FinSpace cc = replay_entry(c, p.parents.at(1));
    const RatMat& s = p.data.at(0);
    const RatMat& u = p.data.at(1);
    return quotient(dsum1(b, cc), s.vcat(u.scaled(-1))).space;
  }
  fail(ErrorKind::InvalidArgument, "unknown provenance op " + p.op);
}

DualityReport duality_identity_check(const FinSpace& a, const RatMat& sub_basis) {
  RatMat perp = annihilator_basis(sub_basis);
  DualityReport r;
  if (perp.cols() == 0) fail(ErrorKind::NotProper, "subspace must be proper");
  FinSpace lhs1 = dual(subspace(a, sub_basis));
  FinSpace rhs1 = quotient(dual(a), perp).space;
  r.subspace_witness = congruent(lhs1.ball, rhs1.ball);
  r.subspace_side = r.subspace_witness.has_value();
  FinSpace lhs2 = dual(quotient(a, sub_basis).space);
  FinSpace rhs2 = subspace(dual(a), perp);
  r.quotient_witness = congruent(lhs2.ball, rhs2.ball);
  r.quotient_side = r.quotient_witness.has_value();
  return r;
}

SpaceCatalog sub_bconvex_step(const SpaceCatalog& c, const SpaceCatalog& l1_part, const EnlargementPolicy& policy) {
  SpaceCatalog out = c;
  if (c.size() == 0 || l1_part.size() == 0) {
    out.warnings.push_back("enlargement skipped: need both an l1 part and a catalog to glue into");
    return out;
  }
  Rng rng(policy.seed);
  std::vector<std::string> added;
  for (const auto& b : l1_part.entries()) {
    for (const auto& ce : c.entries()) {
      for (std::size_t s = 0; s < policy.samples_per_pair; ++s) {
        std::size_t kmax = std::min({policy.max_sub_dim, b.space.dim(), ce.space.dim()});
        std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(kmax)));
        RatMat sa = random_basis(rng, b.space.dim(), k, policy.range);
        RatMat u = random_basis(rng, ce.space.dim(), k, policy.range);
        FinSpace f = quotient(dsum1(b.space, ce.space), sa.vcat(u.scaled(-1))).space;
        // B and C have to come from a catalog the replay can see.
        std::string bn = out.find(b.name) ? b.name : out.add(b.name, b.space);
        added.push_back(out.add("F(" + bn + "," + ce.name + ")", f, Provenance{"F", {bn, ce.name}, {sa, u}}));
      }
    }
  }
  SpaceCatalog fresh;
  for (const auto& n : added) {
    const CatalogEntry* e = out.find(n);
    fresh.add(n, e->space, e->provenance);
  }
  SpaceCatalog closed = catalog_H(fresh, policy.subspaces);
  for (const auto& e : closed.entries()) {
    if (out.find(e.name) && e.provenance.op == "F") continue;
    out.add(e.name, e.space, e.provenance);
  }
  return out;
}

}  // namespace finban
