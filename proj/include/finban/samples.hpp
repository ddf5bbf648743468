#pragma once

#include "finban/formation.hpp"
#include "finban/l1.hpp"
#include "finban/random.hpp"

namespace finban {

// Isometric formation with dim B1, dim B2 <= max_dim: each B is a random
// linear image of A (+)_1 C or A (+)_inf C, so A sits in it isometrically.
VFormation random_isometric_formation(Rng& rng, std::size_t max_dim = 3);

// Random canonical incarnating set in R^m with at most max_gens generators.
IncarnatingSet random_incarnating_set(Rng& rng, std::size_t m, std::size_t max_gens, long range = 2);

// Isometric formation of l1-embeddable spaces: B is incarnated by splitting
// each generator of A into positive pieces and adding extra coordinates.
VFormation random_l1_formation(Rng& rng, std::size_t max_dim = 3);

}  // namespace finban
