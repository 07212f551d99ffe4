#include "spingeom/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spingeom/bmt.hpp"
#include "spingeom/errors.hpp"

namespace spingeom::ham {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Field values packed for stencil differentiation: 16 tetrad + 4 potential +
// 24 connection entries.
constexpr int kPackedSize = 44;

Eigen::VectorXd pack(const FieldValues& v) {
  Eigen::VectorXd out(kPackedSize);
  int i = 0;
  for (int a = 0; a < 4; ++a) {
    for (int mu = 0; mu < 4; ++mu) out[i++] = v.tetrad(a, mu);
  }
  for (int a = 0; a < 4; ++a) out[i++] = v.potential[a];
  for (int a = 0; a < 4; ++a) {
    for (std::size_t k = 0; k < kPairCount; ++k) out[i++] = v.connection[a][k];
  }
  return out;
}

void unpack_gradient(const Eigen::VectorXd& d, int nu, FieldSample& s) {
  int i = 0;
  for (int a = 0; a < 4; ++a) {
    for (int mu = 0; mu < 4; ++mu) s.tetrad_grad[nu](a, mu) = d[i++];
  }
  for (int a = 0; a < 4; ++a) s.potential_grad(nu, a) = d[i++];
  for (int a = 0; a < 4; ++a) {
    for (std::size_t k = 0; k < kPairCount; ++k) s.connection_grad[nu][a][k] = d[i++];
  }
}

// Tetrad-frame derivatives D_b of every field at one point.
struct FrameDerivatives {
  std::array<Matrix4, 4> tetrad;  // [μ](a, b) → D_b e_a^μ
  Matrix4 potential;              // (a, b) → D_b A_a
  std::array<std::array<ConnectionRow, 4>, 4> connection;  // [a][b] → D_b Ω_a
};

FrameDerivatives frame_derivatives(const FieldSample& f) {
  FrameDerivatives d;
  for (auto& m : d.tetrad) m.setZero();
  d.potential.setZero();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      ConnectionRow row;
      for (int nu = 0; nu < 4; ++nu) {
        const double e = f.tetrad(b, nu);
        if (e == 0.0) continue;
        for (int mu = 0; mu < 4; ++mu) d.tetrad[mu](a, b) += e * f.tetrad_grad[nu](a, mu);
        d.potential(a, b) += e * f.potential_grad(nu, a);
        row += f.connection_grad[nu][a] * e;
      }
      d.connection[a][b] = row;
    }
  }
  return d;
}

// W_ab = (D_b e_a^μ) p_μ − (D_b A_a) q − (D_b Ω_a^{cd}) S_cd.
Matrix4 coupling_matrix(const PhaseState& s, const FrameDerivatives& d) {
  Matrix4 w;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double v = 0.0;
      for (int mu = 0; mu < 4; ++mu) v += d.tetrad[mu](a, b) * s.p[mu];
      v -= d.potential(a, b) * s.q;
      v -= pair_contract(d.connection[a][b], s.spin);
      w(a, b) = v;
    }
  }
  return w;
}

double h1_from(const PhaseState& s, const FieldSample& f) {
  const Matrix4 w = coupling_matrix(s, frame_derivatives(f));
  double h1 = 0.0;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const auto [a, b] = kPairs[k];
    // S^{ab} W_ab + S^{ba} W_ba over the pair.
    h1 += pair_sign(k) * s.spin[k] * (w(a, b) - w(b, a));
  }
  return 0.5 * h1;
}

AlgebraCoefficients lie_bracket(const AlgebraCoefficients& u, const AlgebraCoefficients& v) {
  static const group::Representation fund = group::generators(group::RepLabel::fundamental);
  const group::Matrix2c xu = group::algebra_element(u, fund);
  const group::Matrix2c xv = group::algebra_element(v, fund);
  return group::algebra_coordinates(xu * xv - xv * xu);
}

// Truncated inverse derivative of exp: v − ½[u,v] + (1/12)[u,[u,v]].
AlgebraCoefficients dexp_inverse(const AlgebraCoefficients& u, const AlgebraCoefficients& v) {
  const AlgebraCoefficients c1 = lie_bracket(u, v);
  const AlgebraCoefficients c2 = lie_bracket(u, c1);
  return v - 0.5 * c1 + (1.0 / 12.0) * c2;
}

PhaseState advance_flat(const PhaseState& s, const PhaseDerivative& d, double h) {
  PhaseState out = s;
  out.x += h * d.dx;
  out.p += h * d.dp;
  out.spin += d.dspin * h;
  out.phi += h * d.dphi;
  out.q += h * d.dq;
  out.tau += h;
  return out;
}

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

bool finite(const PhaseState& s) {
  if (!s.x.allFinite() || !s.p.allFinite() || !s.lambda.matrix().allFinite()) return false;
  if (!std::isfinite(s.phi) || !std::isfinite(s.q)) return false;
  for (double v : s.spin.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void check_tetrad(const Matrix4& e) {
  Eigen::JacobiSVD<Matrix4> svd(e);
  const auto& sv = svd.singularValues();
  if (!(sv[3] > 1e-12 * std::max(sv[0], 1e-300))) {
    throw SingularTetradError("tetrad is not invertible (smallest singular value " +
                              std::to_string(sv[3]) + ")");
  }
}

}  // namespace

// --- fields ----------------------------------------------------------------

ExternalFields ExternalFields::analytic(Evaluator eval, std::string name,
                                        bool depends_on_group, bool depends_on_phase) {
  return ExternalFields(std::move(eval), std::move(name), depends_on_group, depends_on_phase);
}

ExternalFields ExternalFields::from_values(ValueEvaluator eval, std::string name,
                                           bool depends_on_group, bool depends_on_phase,
                                           const ops::DerivativeStencil& st) {
  st.validate();
  auto with_grads = [eval, st](const FourVector& x, const GroupElement& lambda, double phi) {
    const FieldValues v = eval(x, lambda, phi);
    FieldSample s;
    s.tetrad = v.tetrad;
    s.potential = v.potential;
    s.connection = v.connection;
    for (int nu = 0; nu < 4; ++nu) {
      const Eigen::VectorXd d = ops::detail::richardson_central(
          [&](double t) -> Eigen::VectorXd {
            FourVector xs = x;
            xs[nu] += t;
            return pack(eval(xs, lambda, phi));
          },
          st);
      unpack_gradient(d, nu, s);
    }
    return s;
  };
  return ExternalFields(std::move(with_grads), std::move(name), depends_on_group,
                        depends_on_phase);
}

Matrix4 ExternalFields::inverse_metric(const FourVector& x, const GroupElement& lambda,
                                       double phi) const {
  return ham::inverse_metric(eval_(x, lambda, phi).tetrad);
}

Matrix4 inverse_metric(const Matrix4& tetrad) {
  return tetrad.transpose() * metric_matrix() * tetrad;
}

bool has_lorentzian_signature(const Matrix4& metric) {
  if ((metric - metric.transpose()).cwiseAbs().maxCoeff() > 1e-12 * metric.cwiseAbs().maxCoeff()) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix4> es(metric);
  int positive = 0;
  int negative = 0;
  for (int i = 0; i < 4; ++i) {
    const double ev = es.eigenvalues()[i];
    if (ev > 0.0) ++positive;
    if (ev < 0.0) ++negative;
  }
  return positive == 1 && negative == 3;
}

ExternalFields make_fields(const FieldSpec& spec) {
  struct Visitor {
    ExternalFields operator()(const fields::Flat&) const {
      return ExternalFields::analytic(
          [](const FourVector&, const GroupElement&, double) { return FieldSample{}; }, "flat",
          false, false);
    }
    ExternalFields operator()(const fields::ConstantPotential& c) const {
      const Eigen::Vector4d a = c.a;
      return ExternalFields::analytic(
          [a](const FourVector&, const GroupElement&, double) {
            FieldSample s;
            s.potential = a;
            return s;
          },
          "constant-A", false, false);
    }
    ExternalFields operator()(const fields::LinearPotential& l) const {
      const Matrix4 f = l.f.full();
      return ExternalFields::analytic(
          [f](const FourVector& x, const GroupElement&, double) {
            FieldSample s;
            s.potential = -0.5 * f * x;
            // ∂_ν A_a = −½ F_aν
            s.potential_grad = -0.5 * f.transpose();
            return s;
          },
          "linear-A", false, false);
    }
    ExternalFields operator()(const fields::DiagonalTetrad& d) const {
      const Matrix4 e = d.scales.asDiagonal();
      check_tetrad(e);
      return ExternalFields::analytic(
          [e](const FourVector&, const GroupElement&, double) {
            FieldSample s;
            s.tetrad = e;
            return s;
          },
          "diagonal-tetrad", false, false);
    }
    ExternalFields operator()(const fields::ConstantConnection& c) const {
      const Connection omega = c.omega;
      return ExternalFields::analytic(
          [omega](const FourVector&, const GroupElement&, double) {
            FieldSample s;
            s.connection = omega;
            return s;
          },
          "constant-omega", false, false);
    }
  };
  return std::visit(Visitor{}, spec);
}

// --- Hamiltonian -----------------------------------------------------------

Eigen::Vector4d kinetic_momentum(const PhaseState& s, const FieldSample& f) {
  Eigen::Vector4d out = f.tetrad * s.p - f.potential * s.q;
  for (int a = 0; a < 4; ++a) out[a] -= pair_contract(f.connection[a], s.spin);
  return out;
}

Eigen::Vector4d kinetic_momentum(const PhaseState& s, const ExternalFields& f) {
  return kinetic_momentum(s, f(s.x, s.lambda, s.phi));
}

HamiltonianParts hamiltonian_parts(const PhaseState& s, const FieldSample& f) {
  HamiltonianParts parts;
  const Eigen::Vector4d pk = kinetic_momentum(s, f);
  for (int a = 0; a < 4; ++a) parts.h0 += kMetric[a] * pk[a] * pk[a];
  parts.h1 = h1_from(s, f);
  parts.h2 = bmt::total_spin(s.spin) + s.q * s.q;
  parts.h_squared = parts.h0 + parts.h1 + parts.h2;
  return parts;
}

double hamiltonian(const PhaseState& s, const ExternalFields& f) {
  const HamiltonianParts parts = hamiltonian_parts(s, f(s.x, s.lambda, s.phi));
  if (!(parts.h_squared > 0.0)) {
    std::ostringstream msg;
    msg << "H^2 = " << parts.h_squared << " is not positive (imaginary mass)";
    throw ImaginaryMassError(msg.str(), parts.h_squared);
  }
  return std::sqrt(parts.h_squared);
}

double spin_bracket(const SpinTensor& s, int a, int b, int c, int d) {
  return eta(a, c) * s(b, d) - eta(b, c) * s(a, d) + eta(b, d) * s(a, c) - eta(a, d) * s(b, c);
}

SpinTensor bracket_with(const SpinTensor& s, const SpinTensor& gradient) {
  SpinTensor out;
  for (std::size_t i = 0; i < kPairCount; ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < kPairCount; ++j) {
      v += spin_bracket(s, kPairs[i].a, kPairs[i].b, kPairs[j].a, kPairs[j].b) * gradient[j];
    }
    out[i] = v;
  }
  return out;
}

SpinTensor casimir_bracket(const SpinTensor& s) {
  SpinTensor grad;
  for (std::size_t k = 0; k < kPairCount; ++k) grad[k] = 4.0 * pair_sign(k) * s[k];
  return bracket_with(s, grad);
}

SquaredGradients squared_gradients(const PhaseState& s, const ExternalFields& f,
                                   const ops::DerivativeStencil& st) {
  const FieldSample fs = f(s.x, s.lambda, s.phi);
  const Eigen::Vector4d pk = kinetic_momentum(s, fs);
  const FrameDerivatives fd = frame_derivatives(fs);
  const Matrix4 w = coupling_matrix(s, fd);
  const SpinTensor raised = s.spin.raised();

  SquaredGradients g;
  // H₀ = Σ_a η^{aa} P_a²
  for (int a = 0; a < 4; ++a) {
    const double weight = 2.0 * kMetric[a] * pk[a];
    for (int mu = 0; mu < 4; ++mu) g.dp[mu] += weight * fs.tetrad(a, mu);
    g.dq -= weight * fs.potential[a];
    for (std::size_t k = 0; k < kPairCount; ++k) {
      g.dspin[k] -= 2.0 * weight * fs.connection[a][k];
    }
    for (int nu = 0; nu < 4; ++nu) {
      double dpk = 0.0;
      for (int mu = 0; mu < 4; ++mu) dpk += fs.tetrad_grad[nu](a, mu) * s.p[mu];
      dpk -= fs.potential_grad(nu, a) * s.q;
      dpk -= pair_contract(fs.connection_grad[nu][a], s.spin);
      g.dx[nu] += weight * dpk;
    }
  }
  // H₁ = ½ Σ_{a,b} S^{ab} W_ab
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double sab = raised(a, b);
      if (sab == 0.0) continue;
      for (int mu = 0; mu < 4; ++mu) g.dp[mu] += 0.5 * sab * fd.tetrad[mu](a, b);
      g.dq -= 0.5 * sab * fd.potential(a, b);
      for (std::size_t k = 0; k < kPairCount; ++k) {
        g.dspin[k] -= sab * fd.connection[a][b][k];
      }
    }
  }
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const auto [c, d] = kPairs[k];
    g.dspin[k] += 0.5 * pair_sign(k) * (w(c, d) - w(d, c));
  }
  // H₂ = S_ab S^ab + q²
  for (std::size_t k = 0; k < kPairCount; ++k) g.dspin[k] += 4.0 * pair_sign(k) * s.spin[k];
  g.dq += 2.0 * s.q;

  // x-dependence of H₁ enters through field derivatives; difference it.
  for (int nu = 0; nu < 4; ++nu) {
    g.dx[nu] += ops::detail::richardson_central(
        [&](double t) {
          FourVector xs = s.x;
          xs[nu] += t;
          return h1_from(s, f(xs, s.lambda, s.phi));
        },
        st);
  }
  return g;
}

PhaseDerivative canonical_rhs(const PhaseState& s, const ExternalFields& f,
                              const ops::DerivativeStencil& st) {
  st.validate();
  const double h = hamiltonian(s, f);
  const SquaredGradients g = squared_gradients(s, f, st);
  const double scale = 0.5 / h;

  PhaseDerivative d;
  d.h = h;
  d.dx = scale * g.dp;
  d.dp = -scale * g.dx;
  d.dphi = scale * g.dq;
  const SpinTensor dh_dspin = g.dspin * scale;
  d.dspin = bracket_with(s.spin, dh_dspin);
  d.group_velocity = AlgebraCoefficients(dh_dspin.values()) * 0.5;

  if (f.depends_on_group()) {
    const ops::GroupScalarFunction h_of_lambda{
        [&](const GroupElement& lam) {
          PhaseState moved = s;
          moved.lambda = lam;
          return group::Complex(hamiltonian(moved, f), 0.0);
        },
        "H"};
    for (std::size_t k = 0; k < kPairCount; ++k) {
      d.dspin[k] -= ops::left_derivative(h_of_lambda, s.lambda, k, st).real();
    }
  }
  if (f.depends_on_phase()) {
    d.dq = -ops::detail::richardson_central(
        [&](double t) {
          PhaseState moved = s;
          moved.phi += t;
          return hamiltonian(moved, f);
        },
        st);
  }
  return d;
}

Method parse_method(const std::string& name) {
  if (name == "rk4-group") return Method::rk4_group;
  throw DomainError("unknown hamiltonian method '" + name + "' (expected rk4-group)");
}

std::string to_string(Method) { return "rk4-group"; }

PhaseState step(const PhaseState& s, const ExternalFields& f, double dt,
                const ops::DerivativeStencil& st) {
  const PhaseDerivative d1 = canonical_rhs(s, f, st);
  const AlgebraCoefficients k1 = d1.group_velocity * dt;

  PhaseState s2 = advance_flat(s, d1, 0.5 * dt);
  const AlgebraCoefficients theta2 = 0.5 * k1;
  s2.lambda = group::compose(group::exp_group(theta2), s.lambda);
  const PhaseDerivative d2 = canonical_rhs(s2, f, st);
  const AlgebraCoefficients k2 = dexp_inverse(theta2, d2.group_velocity) * dt;

  PhaseState s3 = advance_flat(s, d2, 0.5 * dt);
  const AlgebraCoefficients theta3 = 0.5 * k2;
  s3.lambda = group::compose(group::exp_group(theta3), s.lambda);
  const PhaseDerivative d3 = canonical_rhs(s3, f, st);
  const AlgebraCoefficients k3 = dexp_inverse(theta3, d3.group_velocity) * dt;

  PhaseState s4 = advance_flat(s, d3, dt);
  const AlgebraCoefficients theta4 = k3;
  s4.lambda = group::compose(group::exp_group(theta4), s.lambda);
  const PhaseDerivative d4 = canonical_rhs(s4, f, st);
  const AlgebraCoefficients k4 = dexp_inverse(theta4, d4.group_velocity) * dt;

  PhaseState out = s;
  const double w = dt / 6.0;
  out.x += w * (d1.dx + 2.0 * d2.dx + 2.0 * d3.dx + d4.dx);
  out.p += w * (d1.dp + 2.0 * d2.dp + 2.0 * d3.dp + d4.dp);
  out.spin += (d1.dspin + 2.0 * d2.dspin + 2.0 * d3.dspin + d4.dspin) * w;
  out.phi = wrap_angle(s.phi + w * (d1.dphi + 2.0 * d2.dphi + 2.0 * d3.dphi + d4.dphi));
  out.q += w * (d1.dq + 2.0 * d2.dq + 2.0 * d3.dq + d4.dq);
  out.tau = s.tau + dt;
  const AlgebraCoefficients theta = (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (1.0 / 6.0);
  out.lambda = group::compose(group::exp_group(theta), s.lambda);
  return out;
}

HamiltonianTrajectory integrate_hamiltonian(const PhaseState& s0, const ExternalFields& f,
                                            double dt, int nsteps, Method,
                                            const ops::DerivativeStencil& st) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (nsteps < 0) throw DomainError("nsteps must be non-negative");
  HamiltonianTrajectory traj;
  traj.states.reserve(static_cast<std::size_t>(nsteps) + 1);
  traj.monitors.reserve(static_cast<std::size_t>(nsteps) + 1);
  PhaseState s = s0;
  s.phi = wrap_angle(s.phi);
  for (int n = 0; n <= nsteps; ++n) {
    if (n > 0) s = step(s, f, dt, st);
    if (!finite(s)) {
      throw NonFiniteError("hamiltonian state became non-finite at step " + std::to_string(n));
    }
    traj.states.push_back(s);
    traj.monitors.push_back({hamiltonian(s, f), bmt::total_spin(s.spin), s.q,
                             std::abs(s.lambda.det() - 1.0)});
  }
  return traj;
}

double action_integral(const std::vector<PhaseState>& trajectory, const ExternalFields& f) {
  if (trajectory.size() < 3) throw DomainError("action_integral needs at least 3 states");
  double total = 0.0;
  double h_prev = hamiltonian(trajectory.front(), f);
  for (std::size_t k = 0; k + 1 < trajectory.size(); ++k) {
    const PhaseState& a = trajectory[k];
    const PhaseState& b = trajectory[k + 1];
    const double h_next = hamiltonian(b, f);
    const double dt = b.tau - a.tau;
    const FourVector p_mid = 0.5 * (a.p + b.p);
    const SpinTensor s_mid = (a.spin + b.spin) * 0.5;
    const AlgebraCoefficients dw =
        group::log_map(group::compose(b.lambda, a.lambda.inverse()));
    const double dphi = std::remainder(b.phi - a.phi, kTwoPi);
    total += p_mid.dot(b.x - a.x) + pair_contract(s_mid, dw) + 0.5 * (a.q + b.q) * dphi -
             0.5 * dt * (h_prev + h_next);
    h_prev = h_next;
  }
  return total;
}

}  // namespace spingeom::ham
