#pragma once

// SL(2,C), its Lie algebra, the covering map onto the Lorentz group, finite
// dimensional representations, the Clifford algebra and the boost / little
// group factorization of massive momenta.

#include <array>
#include <complex>
#include <string>
#include <tuple>

#include <Eigen/Dense>

#include "spingeom/tensor.hpp"

namespace spingeom::group {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kUnimodularTol = 1e-12;

/// 2×2 complex matrix with unit determinant.
class GroupElement {
 public:
  GroupElement() : m_(Matrix2c::Identity()) {}

  /// Accepts m if |det m − 1| ≤ tol, then divides by the principal square
  /// root of det so the stored matrix is unimodular to round-off.
  static GroupElement from_matrix(const Matrix2c& m, double tol = 1e-8);

  /// Divides by sqrt(det m) unconditionally; det m must be nonzero.
  static GroupElement normalized(const Matrix2c& m);

  static GroupElement identity() { return GroupElement(); }

  const Matrix2c& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  Complex det() const { return m_.determinant(); }

  GroupElement inverse() const;
  /// −A, the other preimage of the same Lorentz matrix. Exact.
  GroupElement operator-() const { return GroupElement(Matrix2c(-m_)); }

 private:
  explicit GroupElement(const Matrix2c& m) : m_(m) {}
  Matrix2c m_;
};

/// Product A·B, renormalized to unit determinant.
GroupElement compose(const GroupElement& a, const GroupElement& b);

/// Pauli matrices σ_1..σ_3, with σ_0 = I at index 0.
const std::array<Matrix2c, 4>& pauli();

/// σ-map: X(p) = p⁰ I + pⁱ σ_i.
Matrix2c sigma_map(const FourVector& p);
/// Inverse σ-map; the anti-Hermitian part of x is discarded.
FourVector sigma_unmap(const Matrix2c& x);

/// Lorentz matrix Λ^μ_ν with X(Λp) = A X(p) A†.
Matrix4 vector_rep(const GroupElement& a);

// --- representations -------------------------------------------------------

enum class RepLabel { fundamental, antifundamental, dirac, vector, su2spin };

struct Representation {
  RepLabel label;
  /// Twice the spin for su2spin (so half-integers stay exact); unused otherwise.
  int two_spin = 0;
  int dimension = 0;
  /// Σ_ab for the ordered pairs, in kPairs order.
  std::array<MatrixXc, kPairCount> generators;

  std::string name() const;
};

/// Generators for a named representation. Vector generators carry exactly the
/// entries (Σ_ab)_{cc'} = η_ac δ_bc' − η_bc δ_ac'; every other representation
/// is normalized so that vector_rep(exp_map(ω, fundamental)) =
/// exp_map(ω, vector).
Representation generators(RepLabel label, int two_spin = 0);

/// Parses "fundamental", "antifundamental", "dirac", "vector", "su2spin:<2s>".
/// Throws UnknownRepresentation.
Representation generators(const std::string& label);

/// Σ_{a<b} 2ω^{ab} Σ_ab.
MatrixXc algebra_element(const AlgebraCoefficients& w, const Representation& rep);

/// exp(Σ_{a<b} 2ω^{ab} Σ_ab) in the given representation.
MatrixXc exp_map(const AlgebraCoefficients& w, const Representation& rep);

/// Fundamental-representation exponential as a group element.
GroupElement exp_group(const AlgebraCoefficients& w);

/// exp(t Σ_ab) for a single fundamental generator; the curve along which Ŝ_ab
/// differentiates.
GroupElement one_parameter(std::size_t pair, double t);

/// Principal-branch logarithm. Throws BranchCutError at tr A ≈ −2.
AlgebraCoefficients log_map(const GroupElement& a);

/// Real coordinates of a traceless 2×2 matrix in the fundamental generator
/// basis (inverse of algebra_element for the fundamental).
AlgebraCoefficients algebra_coordinates(const Matrix2c& x);

/// Spin-s image of an arbitrary 2×2 matrix, built on the symmetric tensor
/// power with orthonormal basis x^{s+m} y^{s−m} / sqrt((s+m)!(s−m)!),
/// m = s, s−1, …, −s. Exactly multiplicative: D(AB) = D(A) D(B).
MatrixXc symmetric_power(const Matrix2c& a, int two_spin);

/// Derivative of symmetric_power at the identity in direction x.
MatrixXc symmetric_power_derivative(const Matrix2c& x, int two_spin);

// --- Clifford algebra and spinors ------------------------------------------

/// Gamma-matrix bases considered for the spinor ↔ SL(2,C) map.
///  dirac     : standard Dirac basis, γ⁵ = iγ⁰γ¹γ²γ³
///  weyl      : chiral basis, γ⁵ = iγ⁰γ¹γ²γ³
///  spinor_map: Dirac basis conjugated by diag(I, −σ₃); the basis in which
///              det G(z) = z̄z − z̄γ⁵z holds identically.
enum class GammaBasis { dirac, weyl, spinor_map };

struct GammaMatrices {
  /// Upper-index γ^a.
  std::array<Matrix4c, 4> upper;
  Matrix4c gamma5;

  /// γ_a = η_ab γ^b.
  Matrix4c lower(int a) const { return kMetric[a] * upper[a]; }
};

/// γ⁵ sign is +1 for iγ⁰γ¹γ²γ³ and −1 for its negative.
GammaMatrices dirac_gammas(GammaBasis basis = GammaBasis::spinor_map,
                           int gamma5_sign = 1);

/// ½(γ_aγ_b − γ_bγ_a) for each ordered pair.
std::array<Matrix4c, kPairCount> clifford_bivectors(const GammaMatrices& g);

/// Dirac generators equal this multiple of the bivectors above.
inline constexpr double kDiracGeneratorScale = 0.5;

using DiracSpinor = Eigen::Vector4cd;

/// G(z) = [[z₁+z₃, z₂−z₄], [−z₂*−z₄*, z₁*−z₃*]].
Matrix2c spinor_matrix(const DiracSpinor& z);

struct SpinorBilinears {
  Complex scalar;       ///< z̄z
  Complex pseudoscalar; ///< z̄γ⁵z
};

SpinorBilinears spinor_constraints(const DiracSpinor& z,
                                   const GammaMatrices& g = dirac_gammas());

/// True when z̄z = 1 and z̄γ⁵z = 0 within tol, i.e. G(z) ∈ SL(2,C).
bool spinor_is_unimodular(const DiracSpinor& z, double tol = 1e-10);

// --- Poincaré action -------------------------------------------------------

struct PoincareElement {
  FourVector translation = FourVector::Zero();
  GroupElement rotation;
};

/// (a, Λ₀)∘(x, Λ) = (Λ₀x + a, Λ₀Λ).
PoincareElement poincare_act(const PoincareElement& g, const PoincareElement& h);

// --- boosts and the little group -------------------------------------------

/// [[λ, 0], [ζ, 1/λ]] with λ > 0.
struct LowerBoost {
  double lambda = 1.0;
  Complex zeta{0.0, 0.0};

  GroupElement element() const;
};

/// Image of the apex (m,0,0,0) under the boost, read off m·B B† through the
/// σ-map.
FourVector momentum_from_boost(const LowerBoost& b, double m);

/// Unique boost with λ > 0 carrying the apex to p. Throws OffShellError.
LowerBoost boost_from_momentum(const FourVector& p, double m);

struct LittleGroupFactors {
  LowerBoost boost;        ///< B(p)
  GroupElement rotation;   ///< U ∈ SU(2)
  LowerBoost boost_prime;  ///< B(p′), p′ = Λ⁻¹p
  FourVector p_prime;
};

/// Λ = B(p)·U·B(p′)⁻¹. Throws OffShellError.
LittleGroupFactors little_group_decompose(const GroupElement& lambda,
                                          const FourVector& p, double m);

GroupElement reassemble(const LittleGroupFactors& f);

/// Projects a near-SU(2) matrix onto SU(2).
Matrix2c project_su2(const Matrix2c& u);

/// ZYZ Euler angles with U = e^{−iασ₃/2} e^{−iβσ₂/2} e^{−iγσ₃/2};
/// α ∈ [0,2π), β ∈ [0,π], γ ∈ [0,4π).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

GroupElement su2_from_euler(const EulerAngles& e);
EulerAngles euler_from_su2(const GroupElement& u);

}  // namespace spingeom::group
