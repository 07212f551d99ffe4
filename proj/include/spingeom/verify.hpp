#pragma once

// Seeded property suites behind `spingeom verify`. Each property reports the
// worst error over its samples against a fixed tolerance.

#include <cstdint>
#include <string>
#include <vector>

namespace spingeom::verify {

struct Property {
  std::string suite;
  std::string name;
  int samples = 0;
  double worst_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Options {
  std::uint64_t seed = 0;
  /// Multiplies every sample count; at least one sample is always drawn.
  double sample_scale = 1.0;
  /// Perturbs one Dirac generator before the operator suite runs.
  bool corrupt_generator = false;
};

/// group, operators, bmt, hamiltonian, harmonic.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all" (concurrently, results in
/// suite_names() order). Throws DomainError for an unknown suite.
std::vector<Property> run(const std::string& suite, const Options& options);

}  // namespace spingeom::verify
