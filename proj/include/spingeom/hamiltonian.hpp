#pragma once

// Hamiltonian dynamics on the cotangent bundle of R⁴ × SL(2,C) × U(1).
//
//   H² = H₀ + H₁ + H₂
//   H₀ = η^{ab} P_a P_b,   P_a = e_a^μ p_μ − A_a q − Ω_a^{bc} S_bc
//   H₁ = ½ S^{ab} [(D_b e_a^μ) p_μ − (D_b A_a) q − (D_b Ω_a^{cd}) S_cd]
//   H₂ = S_ab S^ab + q²
//
// Repeated Lorentz indices are full double sums; with ordered-pair storage
// every contraction over an antisymmetric pair carries a factor 2, applied in
// one place (pair_contract). D_b = e_b^ν ∂_ν.
//
// Canonical flow, generated by H (not H²):
//   ẋ = ∂H/∂p,  ṗ = −∂H/∂x,  φ̇ = ∂H/∂q,  q̇ = −∂H/∂φ,
//   Ṡ_ab = {S_ab, S_cd} ∂H/∂S_cd − Ŝ_ab H,   Λ̇ = (Σ_{a<b} ∂H/∂S_ab Σ_ab) Λ,
// where the bracket is the Lorentz Lie–Poisson bracket and Ŝ_ab H is the left
// derivative through any explicit Λ-dependence of the fields.

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "spingeom/group.hpp"
#include "spingeom/ops.hpp"
#include "spingeom/tensor.hpp"

namespace spingeom::ham {

using group::GroupElement;

struct ConnectionTag;
/// Ω_a^{bc} for one value of a, antisymmetric in (bc).
using ConnectionRow = PairArray<ConnectionTag>;
using Connection = std::array<ConnectionRow, 4>;

struct PhaseState {
  FourVector x = FourVector::Zero();
  FourVector p = FourVector::Zero();  ///< canonical momenta p_μ
  GroupElement lambda;
  SpinTensor spin;
  double phi = 0.0;  ///< in [0, 2π)
  double q = 0.0;
  double tau = 0.0;
};

/// Field values and first x-derivatives at one point.
struct FieldSample {
  Matrix4 tetrad = Matrix4::Identity();  ///< (a, μ) → e_a^μ
  std::array<Matrix4, 4> tetrad_grad{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(),
                                     Matrix4::Zero()};  ///< [ν](a, μ) → ∂_ν e_a^μ
  Eigen::Vector4d potential = Eigen::Vector4d::Zero();  ///< A_a
  Matrix4 potential_grad = Matrix4::Zero();              ///< (ν, a) → ∂_ν A_a
  Connection connection{};                               ///< Ω_a^{bc}
  std::array<Connection, 4> connection_grad{};           ///< [ν][a] → ∂_ν Ω_a^{bc}
};

/// Field values only; gradients are filled in by stencils.
struct FieldValues {
  Matrix4 tetrad = Matrix4::Identity();
  Eigen::Vector4d potential = Eigen::Vector4d::Zero();
  Connection connection{};
};

class ExternalFields {
 public:
  using Evaluator =
      std::function<FieldSample(const FourVector& x, const GroupElement& lambda, double phi)>;
  using ValueEvaluator =
      std::function<FieldValues(const FourVector& x, const GroupElement& lambda, double phi)>;

  /// Fields with analytic derivatives supplied by the caller.
  static ExternalFields analytic(Evaluator eval, std::string name, bool depends_on_group,
                                 bool depends_on_phase);
  /// Fields given by values only; x-derivatives come from central-difference
  /// stencils.
  static ExternalFields from_values(ValueEvaluator eval, std::string name,
                                    bool depends_on_group, bool depends_on_phase,
                                    const ops::DerivativeStencil& st = {});

  FieldSample operator()(const FourVector& x, const GroupElement& lambda, double phi) const {
    return eval_(x, lambda, phi);
  }

  /// g^{μν} = η^{ab} e_a^μ e_b^ν at x.
  Matrix4 inverse_metric(const FourVector& x, const GroupElement& lambda = {},
                         double phi = 0.0) const;

  const std::string& name() const { return name_; }
  bool depends_on_group() const { return depends_on_group_; }
  bool depends_on_phase() const { return depends_on_phase_; }

 private:
  ExternalFields(Evaluator eval, std::string name, bool group, bool phase)
      : eval_(std::move(eval)), name_(std::move(name)), depends_on_group_(group),
        depends_on_phase_(phase) {}
  Evaluator eval_;
  std::string name_;
  bool depends_on_group_;
  bool depends_on_phase_;
};

namespace fields {
struct Flat {};
struct ConstantPotential {
  Eigen::Vector4d a = Eigen::Vector4d::Zero();
};
/// A_a = −½ F_ab x^b.
struct LinearPotential {
  FieldStrength f;
};
struct DiagonalTetrad {
  Eigen::Vector4d scales = Eigen::Vector4d::Ones();
};
struct ConstantConnection {
  Connection omega{};
};
}  // namespace fields

using FieldSpec = std::variant<fields::Flat, fields::ConstantPotential,
                               fields::LinearPotential, fields::DiagonalTetrad,
                               fields::ConstantConnection>;

/// Throws SingularTetradError for a non-invertible tetrad.
ExternalFields make_fields(const FieldSpec& spec);

/// g^{μν} = η^{ab} e_a^μ e_b^ν.
Matrix4 inverse_metric(const Matrix4& tetrad);

/// One positive and three negative eigenvalues.
bool has_lorentzian_signature(const Matrix4& metric);

/// Σ over all (b,c) of X^{bc} Y_bc for antisymmetric X, Y in pair storage.
template <class TagX, class TagY>
double pair_contract(const PairArray<TagX>& x, const PairArray<TagY>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < kPairCount; ++k) s += x[k] * y[k];
  return 2.0 * s;
}

Eigen::Vector4d kinetic_momentum(const PhaseState& s, const FieldSample& f);
Eigen::Vector4d kinetic_momentum(const PhaseState& s, const ExternalFields& f);

struct HamiltonianParts {
  double h0 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h_squared = 0.0;
};

/// H₀, H₁, H₂ without the positivity requirement.
HamiltonianParts hamiltonian_parts(const PhaseState& s, const FieldSample& f);

/// Positive square root of H₀ + H₁ + H₂. Throws ImaginaryMassError when
/// H² ≤ 0.
double hamiltonian(const PhaseState& s, const ExternalFields& f);

/// {S_ab, S_cd} = η_ac S_bd − η_bc S_ad + η_bd S_ac − η_ad S_bc.
double spin_bracket(const SpinTensor& s, int a, int b, int c, int d);

/// {S_(k), F} for F with gradient ∂F/∂S_(pair) in pair coordinates.
SpinTensor bracket_with(const SpinTensor& s, const SpinTensor& gradient);

/// {S_ab, S_cd S^cd} for every pair; vanishes identically.
SpinTensor casimir_bracket(const SpinTensor& s);

struct PhaseDerivative {
  FourVector dx = FourVector::Zero();
  FourVector dp = FourVector::Zero();
  SpinTensor dspin;
  double dphi = 0.0;
  double dq = 0.0;
  /// Λ̇ = algebra_element(group_velocity, fundamental) · Λ.
  AlgebraCoefficients group_velocity;
  double h = 0.0;
};

/// Partial derivatives of H² in the momentum-type variables, exposed for
/// tests of the analytic gradients.
struct SquaredGradients {
  FourVector dp = FourVector::Zero();
  SpinTensor dspin;  ///< with respect to pair coordinates S_(ab)
  double dq = 0.0;
  FourVector dx = FourVector::Zero();
};

SquaredGradients squared_gradients(const PhaseState& s, const ExternalFields& f,
                                   const ops::DerivativeStencil& st = {});

PhaseDerivative canonical_rhs(const PhaseState& s, const ExternalFields& f,
                              const ops::DerivativeStencil& st = {});

enum class Method { rk4_group };

Method parse_method(const std::string& name);
std::string to_string(Method m);

struct HamiltonianMonitors {
  double h = 0.0;
  double total_spin = 0.0;
  double q = 0.0;
  double det_deviation = 0.0;  ///< |det Λ − 1|
};

struct HamiltonianTrajectory {
  std::vector<PhaseState> states;
  std::vector<HamiltonianMonitors> monitors;
};

/// One Runge–Kutta–Munthe-Kaas step: classical RK4 on the flat variables, with
/// each stage's Λ obtained as exp(Θ_i)Λ_n and the algebra increments
/// corrected by the truncated inverse derivative of exp.
PhaseState step(const PhaseState& s, const ExternalFields& f, double dt,
                const ops::DerivativeStencil& st = {});

/// Throws ImaginaryMassError or NonFiniteError.
HamiltonianTrajectory integrate_hamiltonian(const PhaseState& s0, const ExternalFields& f,
                                            double dt, int nsteps,
                                            Method method = Method::rk4_group,
                                            const ops::DerivativeStencil& st = {});

/// Trapezoidal discretization of ∫ (p_μ ẋ^μ + S_ab ω̇^{ab} + q φ̇ − H) dτ, with
/// the ω̇ increment taken as log_map(Λ_{k+1} Λ_k⁻¹). Requires ≥ 3 states.
double action_integral(const std::vector<PhaseState>& trajectory, const ExternalFields& f);

}  // namespace spingeom::ham
