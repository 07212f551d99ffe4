#pragma once

// Classical spin tensor dynamics in an external electromagnetic field:
//
//   ẋ = u,   u̇^μ = (e/m) F^μ_ν u^ν,
//   Ṡ_ab = (ge/2m)[F_a^c S_cb + S_ac F^cd u_d u_b / c²] − S_ac u̇^c u_b / c² − (a↔b)
//
// subject to u·u = c² and S_ab u^b = 0, which the flow preserves. All indices
// are flat and raised with η.

#include <functional>
#include <string>
#include <vector>

#include "spingeom/tensor.hpp"

namespace spingeom::bmt {

struct BMTParams {
  double e = 0.0;
  double m = 1.0;
  double g = 2.0;
  double c = 1.0;

  void validate() const;
};

struct BMTState {
  FourVector x = FourVector::Zero();
  FourVector u = FourVector::Zero();
  SpinTensor spin;
  double tau = 0.0;
};

/// Field strength F_ab (both indices down) as a function of position.
class EMField {
 public:
  enum class Kind { uniform, crossed, plane_wave, custom };

  /// F_0i = E_i, F_ij = −ε_ijk B_k, so that u̇ reproduces e(E u⁰ + u×B)/m.
  static EMField uniform(const Eigen::Vector3d& electric, const Eigen::Vector3d& magnetic);
  /// Uniform field with E ⊥ B. Throws DomainError otherwise.
  static EMField crossed(const Eigen::Vector3d& electric, const Eigen::Vector3d& magnetic);
  /// F_ab(x) = f_ab cos(k·x) with k null. Throws DomainError for non-null k.
  static EMField plane_wave(const FieldStrength& amplitude, const FourVector& wave_vector);
  static EMField custom(std::function<FieldStrength(const FourVector&)> f, std::string name);

  FieldStrength operator()(const FourVector& x) const { return eval_(x); }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Lorentz-transformed field for data boosted by the vector matrix L:
  /// F′(x′) = L_low F(L⁻¹x′) L_lowᵀ with L_low = η L η.
  EMField transformed(const Matrix4& lorentz) const;

 private:
  EMField(Kind kind, std::function<FieldStrength(const FourVector&)> f, std::string name)
      : kind_(kind), eval_(std::move(f)), name_(std::move(name)) {}
  Kind kind_;
  std::function<FieldStrength(const FourVector&)> eval_;
  std::string name_;
};

struct BMTDerivative {
  FourVector dx = FourVector::Zero();
  FourVector du = FourVector::Zero();
  SpinTensor dspin;
};

BMTDerivative bmt_rhs(const BMTState& s, const EMField& f, const BMTParams& p);

enum class Method { rk4, rk4_projected };

Method parse_method(const std::string& name);
std::string to_string(Method m);

struct ConstraintResiduals {
  double mass_shell = 0.0;     ///< u·u − c²
  double transversality = 0.0; ///< Euclidean norm of S_ab u^b
};

ConstraintResiduals constraint_residuals(const BMTState& s, const BMTParams& p);

/// S_ab S^ab summed over both indices = 2ΣS_ij² − 2ΣS_0i².
double total_spin(const SpinTensor& s);

struct BMTMonitors {
  double total_spin = 0.0;
  ConstraintResiduals residuals;
};

struct BMTTrajectory {
  std::vector<BMTState> states;
  std::vector<BMTMonitors> monitors;
};

BMTState step(const BMTState& s, const EMField& f, const BMTParams& p, double dt,
              Method method);

/// nsteps+1 states with monitors. Throws NonFiniteError.
BMTTrajectory integrate(const BMTState& s0, const EMField& f, const BMTParams& p,
                        double dt, int nsteps, Method method = Method::rk4);

/// Applies a vector-representation Lorentz matrix to position, velocity and
/// both spin indices.
BMTState transform(const BMTState& s, const Matrix4& lorentz);

}  // namespace spingeom::bmt
