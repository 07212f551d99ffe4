#include "spingeom/bmt.hpp"

#include <cmath>

#include "spingeom/errors.hpp"

namespace spingeom::bmt {

namespace {

bool finite(const BMTState& s) {
  if (!s.x.allFinite() || !s.u.allFinite() || !std::isfinite(s.tau)) return false;
  for (double v : s.spin.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

BMTState advance(const BMTState& s, const BMTDerivative& d, double h) {
  BMTState out = s;
  out.x += h * d.dx;
  out.u += h * d.du;
  out.spin += d.dspin * h;
  out.tau += h;
  return out;
}

}  // namespace

void BMTParams::validate() const {
  if (!(m > 0.0)) throw DomainError("params.m must be positive");
  if (!(c > 0.0)) throw DomainError("params.c must be positive");
  if (!std::isfinite(e) || !std::isfinite(g)) {
    throw DomainError("params.e and params.g must be finite");
  }
}

EMField EMField::uniform(const Eigen::Vector3d& electric, const Eigen::Vector3d& magnetic) {
  FieldStrength f;
  for (int i = 1; i <= 3; ++i) f[pair_index(0, i)] = electric[i - 1];
  f[pair_index(1, 2)] = -magnetic[2];
  f[pair_index(1, 3)] = magnetic[1];
  f[pair_index(2, 3)] = -magnetic[0];
  return EMField(Kind::uniform, [f](const FourVector&) { return f; }, "uniform");
}

EMField EMField::crossed(const Eigen::Vector3d& electric, const Eigen::Vector3d& magnetic) {
  const double scale = electric.norm() * magnetic.norm();
  if (std::abs(electric.dot(magnetic)) > 1e-12 * std::max(scale, 1.0)) {
    throw DomainError("crossed field requires E perpendicular to B");
  }
  EMField out = uniform(electric, magnetic);
  out.kind_ = Kind::crossed;
  out.name_ = "crossed";
  return out;
}

EMField EMField::plane_wave(const FieldStrength& amplitude, const FourVector& wave_vector) {
  const double kk = minkowski_dot(wave_vector, wave_vector);
  if (std::abs(kk) > 1e-12 * std::max(1.0, wave_vector.squaredNorm())) {
    throw DomainError("plane-wave vector k must be null (k.k = 0)");
  }
  return EMField(
      Kind::plane_wave,
      [amplitude, wave_vector](const FourVector& x) {
        return amplitude * std::cos(minkowski_dot(wave_vector, x));
      },
      "plane-wave");
}

EMField EMField::custom(std::function<FieldStrength(const FourVector&)> f, std::string name) {
  return EMField(Kind::custom, std::move(f), std::move(name));
}

EMField EMField::transformed(const Matrix4& lorentz) const {
  const Matrix4 eta = metric_matrix();
  const Matrix4 low = eta * lorentz * eta;
  const Matrix4 inv = lorentz.inverse();
  auto base = eval_;
  return EMField(
      kind_,
      [base, low, inv](const FourVector& x) {
        return FieldStrength::from_matrix(low * base(inv * x).full() * low.transpose());
      },
      name_);
}

BMTDerivative bmt_rhs(const BMTState& s, const EMField& f, const BMTParams& p) {
  const Matrix4 eta = metric_matrix();
  const Matrix4 field = f(s.x).full();
  const Matrix4 spin = s.spin.full();
  const FourVector u_low = eta * s.u;
  const double inv_c2 = 1.0 / (p.c * p.c);

  BMTDerivative d;
  d.dx = s.u;
  d.du = (p.e / p.m) * eta * field * s.u;

  const double k = 0.5 * p.g * p.e / p.m;
  const FourVector spin_fu = spin * eta * field * s.u;  // S_ac F^cd u_d
  const FourVector spin_udot = spin * d.du;             // S_ac u̇^c
  const Matrix4 t = k * (field * eta * spin + inv_c2 * spin_fu * u_low.transpose()) -
                    inv_c2 * spin_udot * u_low.transpose();
  d.dspin = SpinTensor::from_matrix(t - t.transpose());
  return d;
}

Method parse_method(const std::string& name) {
  if (name == "rk4") return Method::rk4;
  if (name == "rk4-projected") return Method::rk4_projected;
  throw DomainError("unknown BMT method '" + name + "' (expected rk4 or rk4-projected)");
}

std::string to_string(Method m) {
  return m == Method::rk4 ? "rk4" : "rk4-projected";
}

ConstraintResiduals constraint_residuals(const BMTState& s, const BMTParams& p) {
  const FourVector contraction = s.spin.full() * s.u;
  return {minkowski_dot(s.u, s.u) - p.c * p.c, contraction.norm()};
}

double total_spin(const SpinTensor& s) {
  double total = 0.0;
  for (std::size_t k = 0; k < kPairCount; ++k) total += 2.0 * pair_sign(k) * s[k] * s[k];
  return total;
}

BMTState step(const BMTState& s, const EMField& f, const BMTParams& p, double dt,
              Method method) {
  const BMTDerivative k1 = bmt_rhs(s, f, p);
  const BMTDerivative k2 = bmt_rhs(advance(s, k1, 0.5 * dt), f, p);
  const BMTDerivative k3 = bmt_rhs(advance(s, k2, 0.5 * dt), f, p);
  const BMTDerivative k4 = bmt_rhs(advance(s, k3, dt), f, p);
  BMTState out = s;
  out.x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  out.u += dt / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
  out.spin += (k1.dspin + 2.0 * k2.dspin + 2.0 * k3.dspin + k4.dspin) * (dt / 6.0);
  out.tau = s.tau + dt;
  if (method == Method::rk4_projected) {
    const double uu = minkowski_dot(out.u, out.u);
    if (uu > 0.0) out.u *= p.c / std::sqrt(uu);
  }
  return out;
}

BMTTrajectory integrate(const BMTState& s0, const EMField& f, const BMTParams& p,
                        double dt, int nsteps, Method method) {
  p.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (nsteps < 0) throw DomainError("nsteps must be non-negative");
  BMTTrajectory traj;
  traj.states.reserve(static_cast<std::size_t>(nsteps) + 1);
  traj.monitors.reserve(static_cast<std::size_t>(nsteps) + 1);
  BMTState s = s0;
  for (int n = 0; n <= nsteps; ++n) {
    if (n > 0) s = step(s, f, p, dt, method);
    if (!finite(s)) {
      throw NonFiniteError("BMT state became non-finite at step " + std::to_string(n));
    }
    traj.states.push_back(s);
    traj.monitors.push_back({total_spin(s.spin), constraint_residuals(s, p)});
  }
  return traj;
}

BMTState transform(const BMTState& s, const Matrix4& lorentz) {
  const Matrix4 eta = metric_matrix();
  const Matrix4 low = eta * lorentz * eta;
  BMTState out = s;
  out.x = lorentz * s.x;
  out.u = lorentz * s.u;
  out.spin = SpinTensor::from_matrix(low * s.spin.full() * low.transpose());
  return out;
}

}  // namespace spingeom::bmt
