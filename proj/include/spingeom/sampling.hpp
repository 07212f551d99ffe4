#pragma once

// Seeded random inputs for property checks. All draws go through
// std::mt19937_64 so a seed reproduces a run exactly.

#include <cstdint>
#include <random>

#include "spingeom/group.hpp"

namespace spingeom::sampling {

using Rng = std::mt19937_64;

/// Uniform in [lo, hi).
double uniform(Rng& rng, double lo, double hi);

/// Algebra coordinates with Euclidean norm uniform in [0, max_norm] and
/// isotropic direction.
AlgebraCoefficients random_algebra(Rng& rng, double max_norm);

/// exp_group of random_algebra(rng, max_norm).
group::GroupElement random_group(Rng& rng, double max_norm = 1.5);

/// Haar-random SU(2) element.
group::GroupElement random_su2(Rng& rng);

/// On-shell momentum with spatial components uniform in [−pmax, pmax].
FourVector random_on_shell(Rng& rng, double m, double pmax = 2.0);

group::DiracSpinor random_spinor(Rng& rng, double scale = 1.0);

SpinTensor random_spin(Rng& rng, double scale = 1.0);

}  // namespace spingeom::sampling
