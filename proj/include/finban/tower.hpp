#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finban/amalgam.hpp"
#include "finban/space.hpp"

namespace finban {

// An isometric embedding i : A -> B.
struct EmbeddingTriple {
  FinSpace a;
  FinSpace b;
  LinOp i;
};

EmbeddingTriple make_triple(const FinSpace& b, const RatMat& sub_basis);

struct TripleNet {
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<Rat> eps;  // empty means infinite resolution: one point
  std::vector<EmbeddingTriple> triples;
};

// Upper bound on inf ||u|| ||u^-1|| over isomorphisms u : B -> B1 carrying
// i(A) onto i1(A1). Exactly 1 when some congruence of the balls does.
Rat triple_distance_upper(const EmbeddingTriple& s, const EmbeddingTriple& t, std::uint64_t seed = 1);

// Greedy net over triples sampled as sections of the catalog's m-dimensional
// spaces: coordinate subspaces first, then `samples` random ones per space.
TripleNet triple_net(const std::vector<FinSpace>& catalog, std::size_t n, std::size_t m, std::optional<Rat> eps,
                     std::uint64_t seed, std::size_t samples = 4);

struct TowerLogEntry {
  std::size_t triple = 0;  // index into the net
  RatMat anchor;           // isometric A -> X_k
  std::string source;      // how the anchor was found: given, log, random
  RatMat j2;               // B -> X_{k+1}, kept for extension lookups
};

struct ProbeResult {
  std::size_t triple = 0;
  RatMat anchor;
  Rat bound;           // upper bound on the best extension distortion
  std::string source;  // identity, log, search
  std::optional<RatMat> extension;
};

struct DefectStats {
  std::vector<ProbeResult> probes;
  std::optional<Rat> median;
  std::optional<Rat> max;
};

struct TowerStage {
  std::size_t index = 0;
  FinSpace space;
  std::vector<LinOp> chain;  // chain[k] : X_k -> X_{k+1}
  std::vector<TowerLogEntry> log;
  DefectStats defects;
  bool truncated = false;
  std::string truncation;
};

TowerStage seed_stage(const FinSpace& x);

// X_{k+1} = l1-pushout of <A, X_k, B, anchor, i>; the chain grows by j1.
TowerStage tower_step(const TowerStage& stage, const EmbeddingTriple& t, const RatMat& anchor, std::size_t triple_index = 0,
                      const std::string& source = "given");

// Isometric copies of A inside the stage: all copies recorded through the
// log, then seeded random placements.
std::vector<std::pair<RatMat, std::string>> anchor_candidates(const TowerStage& stage, const TripleNet& net, std::size_t triple,
                                                              std::uint64_t seed, std::size_t random_tries = 8);

// Round-robin over the net. Stops early with a truncation marker when a
// budget is hit; the returned stage is always complete and valid.
TowerStage build_tower(const FinSpace& seed_space, const TripleNet& net, std::size_t steps, std::uint64_t seed);

// Rebuilds the stage from the seed space, the net and the log.
TowerStage replay(const FinSpace& seed_space, const TripleNet& net, const std::vector<TowerLogEntry>& log);

struct DefectOptions {
  std::size_t probes = 6;
  std::size_t restarts = 16;
  std::size_t refine_rounds = 5;
  std::uint64_t seed = 1;
};

// For the probe (t, i : A -> X_k), an upper bound on min distortion of an
// extension B -> X_k of i.
ProbeResult probe_extension(const TowerStage& stage, const TripleNet& net, std::size_t triple, const RatMat& anchor,
                            const DefectOptions& opt);

DefectStats homogeneity_defect(const TowerStage& stage, const TripleNet& net, const DefectOptions& opt);

// Chain composite X_from -> X_to (from <= to).
RatMat chain_map(const TowerStage& stage, std::size_t from, std::size_t to);

}  // namespace finban
