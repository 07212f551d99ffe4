#pragma once

// Harmonic analysis on SU(2) and the momentum/internal-coordinate charts of
// the massive orbit.
//
// Wigner matrices are symmetric tensor powers of the defining representation.
// SU(2) is parametrized by ZYZ Euler angles,
//   U = e^{−iασ₃/2} e^{−iβσ₂/2} e^{−iγσ₃/2},  α ∈ [0,2π), β ∈ [0,π], γ ∈ [0,4π),
// with normalized Haar measure dU = sin β dα dβ dγ / 16π².
//
// Expansion convention: f(U) = Σ_s Σ_{αβ} c^s_{αβ} D^s_{αβ}(U), where the row
// α is the spin projection and the column β labels the 2s+1 copies of the
// spin-s multiplet (columns transform under left multiplication).

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "spingeom/group.hpp"
#include "spingeom/ops.hpp"

namespace spingeom::harmonic {

using group::Complex;
using group::GroupElement;
using group::Matrix2c;
using group::MatrixXc;

struct WignerBlock {
  int two_spin = 0;
  MatrixXc matrix;
};

/// Throws NotUnitaryError unless ‖U†U − I‖ ≤ 1e−10 and |det U − 1| ≤ 1e−10.
WignerBlock wigner_d(int two_spin, const Matrix2c& u);
WignerBlock wigner_d(int two_spin, const GroupElement& u);

/// Product quadrature: n uniform points in α, n Gauss–Legendre points in
/// cos β, 2n uniform points in γ. Integrates band-limited products up to
/// spin n − 1 exactly.
class EulerGrid {
 public:
  explicit EulerGrid(int n);

  /// The default resolution 2s_max + 2 per angle.
  static EulerGrid for_spin(int two_s_max) { return EulerGrid(two_s_max + 2); }

  int resolution() const { return n_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<GroupElement>& nodes() const { return nodes_; }
  /// Normalized so the weights sum to 1.
  const std::vector<double>& weights() const { return weights_; }

 private:
  int n_;
  std::vector<GroupElement> nodes_;
  std::vector<double> weights_;
};

/// Gauss–Legendre nodes and weights on [−1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

using SU2Function = std::function<Complex(const GroupElement&)>;

struct PeterWeylCoefficients {
  int two_s_max = 0;
  std::vector<MatrixXc> blocks;  ///< blocks[2s] is (2s+1)×(2s+1)

  const MatrixXc& operator[](int two_spin) const { return blocks.at(two_spin); }
  /// Σ_s Σ_{αβ} c^s_{αβ} D^s_{αβ}(U).
  Complex synthesize(const GroupElement& u) const;
};

/// ∫ f(U) conj D^s(U) dU integrated on the grid, times 2s + 1.
/// Throws GridTooCoarseError if the grid resolution is below 2s_max + 1.
PeterWeylCoefficients peter_weyl_decompose(const SU2Function& f, int two_s_max,
                                           const EulerGrid& grid);
PeterWeylCoefficients peter_weyl_decompose(const SU2Function& f, int two_s_max);

/// ∫ D^s_{αβ} conj D^{s'}_{α'β'} dU on the grid.
Complex haar_inner_product(int two_s, int alpha, int beta, int two_s_prime, int alpha_prime,
                           int beta_prime, const EulerGrid& grid);

struct MultiplicityRow {
  int two_spin = 0;
  int dimension = 0;
  int multiplicity = 0;
};

std::vector<MultiplicityRow> multiplicity_report(int two_s_max);

struct InternalCoords {
  Complex zeta1;
  Complex zeta2;
};

/// ζ₁ = mζ′, ζ₂ = mλ′e^{iφ}. Throws DomainError if λ′ ≤ 0 or m ≤ 0.
InternalCoords internal_coords(double lambda_prime, Complex zeta_prime, double phi, double m);

/// The constant relating the measured Jacobian to m²λ under the σ-map.
inline constexpr double kVolumeConstant = 2.0;

struct VolumeJacobian {
  double numeric = 0.0;   ///< |det ∂(p¹,p²,p³)/∂(λ, Re ζ, Im ζ)| / p⁰
  double analytic = 0.0;  ///< m²λ
  double ratio = 0.0;
};

/// Throws DomainError if λ ≤ 0 or m ≤ 0.
VolumeJacobian volume_jacobian_check(double lambda, Complex zeta, double m,
                                     const ops::DerivativeStencil& st = {});

struct HyperchargeReport {
  int samples = 0;
  double generator_error = 0.0;     ///< (1 − τ₃)/2 against diag(0, 1)
  double analytic_error = 0.0;      ///< d/dφ (ζ₁, ζ₂) against i(1 − τ₃)/2 (ζ₁, ζ₂)
  double stencil_error = 0.0;       ///< same, with a difference quotient in φ
  double commutator_error = 0.0;    ///< [τ_i/2, τ_j/2] = iε_ijk τ_k/2
  bool pass = false;
};

HyperchargeReport hypercharge_check(std::uint64_t seed = 0, int samples = 100,
                                    const ops::DerivativeStencil& st = {});

}  // namespace spingeom::harmonic
