#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finban/formation.hpp"
#include "finban/space.hpp"

namespace finban {

enum class SumKind { L1, L2Approx };

struct SumChoice {
  SumKind kind = SumKind::L1;
  Rat eps = Rat(1, 1000);  // only for L2Approx
};

// F = (B1 (+) B2) / {(i1 a, -i2 a)}, j1 b = [(b, 0)], j2 b = [(0, b)].
// With L1 and an isometric formation the defects must come out 0; anything
// else raises ConstructionFailed.
Amalgam pushout(const VFormation& v, SumChoice sum = {});

struct AmalgamReport {
  bool commutes = false;
  std::optional<Rat> defect1;
  std::optional<Rat> defect2;
  bool contractive = false;              // ||j1||, ||j2|| <= 1
  std::optional<bool> l1_embeddable;     // only when requested
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

AmalgamReport verify_amalgam(const VFormation& v, const Amalgam& a, bool check_l1 = false);

// How a catalog entry was made; enough to rebuild it.
struct Provenance {
  std::string op;                    // base, H, Q, dual, F
  std::vector<std::string> parents;  // catalog names
  std::vector<RatMat> data;          // H/Q: basis; F: [A basis in B, u]
};

struct CatalogEntry {
  std::string name;
  FinSpace space;
  Provenance provenance;
};

// Named spaces, unique up to isometry.
class SpaceCatalog {
 public:
  // Adds the space unless an isometric one is present; returns the name of
  // the entry that represents it.
  std::string add(const std::string& name, const FinSpace& space, Provenance provenance = {"base", {}, {}});

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(const std::string& name) const;
  std::optional<std::string> find_isometric(const FinSpace& space) const;
  std::size_t size() const { return entries_.size(); }

  std::vector<std::string> warnings;

 private:
  std::string fresh_name(const std::string& base) const;
  std::vector<CatalogEntry> entries_;
  std::vector<CongruenceKey> keys_;
};

struct CatalogPolicy {
  bool coordinate_subspaces = true;
  std::size_t random_per_space = 0;
  long range = 2;  // entries of random bases
  std::uint64_t seed = 1;
  std::vector<RatMat> explicit_bases;  // applied to every space of matching dimension
};

SpaceCatalog catalog_H(const SpaceCatalog& c, const CatalogPolicy& policy);
SpaceCatalog catalog_Q(const SpaceCatalog& c, const CatalogPolicy& policy);
SpaceCatalog catalog_dual(const SpaceCatalog& c);

// Rebuilds an entry from its provenance chain.
FinSpace replay_entry(const SpaceCatalog& c, const std::string& name);

struct DualityReport {
  bool subspace_side = false;  // dual(subspace(A,S)) ≅ quotient(dual A, S-perp)
  bool quotient_side = false;  // dual(quotient(A,S)) ≅ subspace(dual A, S-perp)
  std::optional<RatMat> subspace_witness;
  std::optional<RatMat> quotient_witness;

  bool ok() const { return subspace_side && quotient_side; }
};

DualityReport duality_identity_check(const FinSpace& a, const RatMat& sub_basis);

struct EnlargementPolicy {
  std::size_t samples_per_pair = 1;
  std::size_t max_sub_dim = 1;
  long range = 2;
  std::uint64_t seed = 1;
  CatalogPolicy subspaces;  // for the H-closure of the new spaces
};

// One step N_n -> N_{n+1}: F = (B (+)_1 C) / {(a, -u a)} for B from l1_part,
// C from c, sampled A in B and injective u : A -> C, then add subspaces of each F.
SpaceCatalog sub_bconvex_step(const SpaceCatalog& c, const SpaceCatalog& l1_part, const EnlargementPolicy& policy);

struct IsoCounterexample {
  VFormation formation;
  Amalgam amalgam;
};

// Isomorphic formations of l1-embeddable spaces whose l1-pushout is not
// l1-embeddable. Exploration only.
std::vector<IsoCounterexample> search_iso_counterexample(const std::vector<FinSpace>& l1_spaces, std::size_t trials, std::uint64_t seed);

}  // namespace finban
