#include "spingeom/sampling.hpp"

#include <cmath>
#include <numbers>

namespace spingeom::sampling {

double uniform(Rng& rng, double lo, double hi) {
  // Built from raw 53-bit draws so results do not depend on the standard
  // library's distribution implementation.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {

double standard_normal(Rng& rng) {
  double u1 = uniform(rng, 0.0, 1.0);
  while (u1 <= 0.0) u1 = uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

AlgebraCoefficients random_algebra(Rng& rng, double max_norm) {
  AlgebraCoefficients w;
  double n = 0.0;
  while (n < 1e-12) {
    for (std::size_t k = 0; k < kPairCount; ++k) w[k] = standard_normal(rng);
    n = w.norm();
  }
  return w * (uniform(rng, 0.0, max_norm) / n);
}

group::GroupElement random_group(Rng& rng, double max_norm) {
  return group::exp_group(random_algebra(rng, max_norm));
}

group::GroupElement random_su2(Rng& rng) {
  Eigen::Vector4d q;
  double n = 0.0;
  while (n < 1e-12) {
    for (int i = 0; i < 4; ++i) q[i] = standard_normal(rng);
    n = q.norm();
  }
  q /= n;
  group::Matrix2c u;
  u << group::Complex(q[0], q[1]), group::Complex(q[2], q[3]),
      group::Complex(-q[2], q[3]), group::Complex(q[0], -q[1]);
  return group::GroupElement::normalized(u);
}

FourVector random_on_shell(Rng& rng, double m, double pmax) {
  FourVector p;
  for (int i = 1; i <= 3; ++i) p[i] = uniform(rng, -pmax, pmax);
  p[0] = std::sqrt(m * m + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
  return p;
}

group::DiracSpinor random_spinor(Rng& rng, double scale) {
  group::DiracSpinor z;
  for (int i = 0; i < 4; ++i) {
    z[i] = group::Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
  }
  return z;
}

SpinTensor random_spin(Rng& rng, double scale) {
  SpinTensor s;
  for (std::size_t k = 0; k < kPairCount; ++k) s[k] = uniform(rng, -scale, scale);
  return s;
}

}  // namespace spingeom::sampling
