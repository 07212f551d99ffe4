#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spingeom/bmt.hpp"
#include "spingeom/errors.hpp"
#include "spingeom/group.hpp"
#include "spingeom/sampling.hpp"

using namespace spingeom;
using namespace spingeom::bmt;

namespace {

constexpr double kPi = std::numbers::pi;

// Moving particle in the 1-2 plane with spin transverse to u.
BMTState moving_state(double c = 1.0) {
  BMTState s;
  const double v = 0.6 * c;
  const double gamma = 1.0 / std::sqrt(1.0 - v * v / (c * c));
  s.u << gamma * c, gamma * v, 0.0, 0.0;
  // Rest-frame spin along axis 1 (S₂₃) and axis 3 (S₁₂), boosted along axis 1.
  BMTState rest;
  rest.u << c, 0.0, 0.0, 0.0;
  rest.spin[pair_index(2, 3)] = 0.4;
  rest.spin[pair_index(1, 2)] = 0.3;
  Matrix4 boost = Matrix4::Identity();
  boost(0, 0) = boost(1, 1) = gamma;
  boost(0, 1) = boost(1, 0) = gamma * v / c;
  s.spin = transform(rest, boost).spin;
  return s;
}

Matrix4 rotation_about_3(double angle) {
  Matrix4 r = Matrix4::Identity();
  r(1, 1) = r(2, 2) = std::cos(angle);
  r(2, 1) = std::sin(angle);
  r(1, 2) = -std::sin(angle);
  return r;
}

}  // namespace

TEST_SUITE("bmt") {

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(BMTParams{1.0, 1.0, 2.0, 1.0}.validate());
  CHECK_THROWS_AS((BMTParams{1.0, 0.0, 2.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((BMTParams{1.0, 1.0, 2.0, -1.0}.validate()), DomainError);
  CHECK_THROWS_AS(EMField::crossed({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(EMField::plane_wave(FieldStrength::unit(0), FourVector(1.0, 0.5, 0.0, 0.0)),
                  DomainError);
  CHECK(parse_method("rk4") == Method::rk4);
  CHECK(parse_method("rk4-projected") == Method::rk4_projected);
  CHECK_THROWS_AS(parse_method("leapfrog"), DomainError);
}

TEST_CASE("field providers are antisymmetric with the stated conventions") {
  const EMField f = EMField::uniform({0.1, 0.2, 0.3}, {0.4, 0.5, 0.6});
  const Matrix4 m = f(FourVector::Zero()).full();
  CHECK(m + m.transpose() == Matrix4::Zero());
  CHECK(m(0, 1) == 0.1);
  CHECK(m(0, 3) == 0.3);
  CHECK(m(1, 2) == -0.6);
  CHECK(m(2, 3) == -0.4);
  CHECK(m(3, 1) == -0.5);
}

TEST_CASE("free drift") {
  const EMField zero = EMField::uniform(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
  const BMTParams p{1.0, 1.0, 2.0, 1.0};
  const BMTState s = moving_state();
  const BMTDerivative d = bmt_rhs(s, zero, p);
  CHECK(d.du == FourVector::Zero());
  CHECK(d.dspin.norm() == 0.0);

  const BMTTrajectory traj = integrate(s, zero, p, 0.1, 100);
  REQUIRE(traj.states.size() == 101u);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const double t = 0.1 * static_cast<double>(k);
    CHECK((traj.states[k].x - t * s.u).norm() <= 1e-13);
    CHECK((traj.states[k].spin - s.spin).norm() <= 1e-14);
  }
}

TEST_CASE("Lorentz force in a uniform magnetic field") {
  const double e = 0.7, m = 1.3, b = 0.9;
  const EMField f = EMField::uniform(Eigen::Vector3d::Zero(), {0.0, 0.0, b});
  BMTState s;
  s.u << 1.25, 0.6, -0.45, 0.0;
  const FourVector du = bmt_rhs(s, f, {e, m, 2.0, 1.0}).du;
  // (e/m) u × B, written out.
  CHECK(du[0] == 0.0);
  CHECK(du[1] == doctest::Approx(e / m * s.u[2] * b));
  CHECK(du[2] == doctest::Approx(-e / m * s.u[1] * b));
  CHECK(du[3] == 0.0);
}

TEST_CASE("Larmor precession at rest") {
  const double e = 1.0, m = 1.0, b = 2.0, g = 2.0;
  const EMField f = EMField::uniform(Eigen::Vector3d::Zero(), {0.0, 0.0, b});
  const BMTParams p{e, m, g, 1.0};
  BMTState s;
  s.u << 1.0, 0.0, 0.0, 0.0;
  const double spin = 0.5;
  s.spin[pair_index(2, 3)] = spin;
  const double omega = e * b / m;
  const BMTDerivative d = bmt_rhs(s, f, p);
  CHECK(d.dspin[pair_index(1, 3)] == doctest::Approx(omega * spin));

  const double t = 1.3;
  const int n = 2000;
  const BMTState end = integrate(s, f, p, t / n, n).states.back();
  CHECK(end.spin[pair_index(2, 3)] == doctest::Approx(spin * std::cos(omega * t)).epsilon(1e-10));
  CHECK(end.spin[pair_index(1, 3)] == doctest::Approx(spin * std::sin(omega * t)).epsilon(1e-10));
}

TEST_CASE("constraint residuals") {
  const BMTParams p{1.0, 1.0, 2.0, 1.0};
  BMTState rest;
  rest.u << 1.0, 0.0, 0.0, 0.0;
  rest.spin[pair_index(1, 2)] = 0.3;
  rest.spin[pair_index(1, 3)] = -0.2;
  ConstraintResiduals r = constraint_residuals(rest, p);
  CHECK(r.mass_shell == 0.0);
  CHECK(r.transversality == 0.0);

  sampling::Rng rng(1);
  for (int n = 0; n < 20; ++n) {
    const BMTState boosted = transform(rest, group::vector_rep(sampling::random_group(rng)));
    r = constraint_residuals(boosted, p);
    CHECK(std::abs(r.mass_shell) <= 1e-12 * boosted.u.squaredNorm());
    CHECK(r.transversality <= 1e-12 * boosted.u.squaredNorm());
  }

  const double c = 2.5;
  BMTState bad;
  bad.u << c, 0.0, 0.0, 0.0;
  bad.spin[pair_index(0, 1)] = 0.1;
  CHECK(constraint_residuals(bad, {1.0, 1.0, 2.0, c}).transversality == doctest::Approx(0.1 * c));
}

TEST_CASE("total spin") {
  CHECK(total_spin(SpinTensor()) == 0.0);
  SpinTensor s;
  s[pair_index(1, 2)] = 0.7;
  CHECK(total_spin(s) == doctest::Approx(2.0 * 0.49));
  s[pair_index(0, 3)] = 0.2;
  CHECK(total_spin(s) == doctest::Approx(2.0 * 0.49 - 2.0 * 0.04));
}

TEST_CASE("g = 2 spin and velocity precess together") {
  const double e = 1.0, m = 1.0, b = 1.0;
  const EMField f = EMField::uniform(Eigen::Vector3d::Zero(), {0.0, 0.0, b});
  const BMTParams p{e, m, 2.0, 1.0};
  const BMTState s = moving_state();
  const double period = 2.0 * kPi * m / (e * b);
  const int per_period = 1000;
  const BMTTrajectory traj = integrate(s, f, p, period / per_period, 10 * per_period);
  double lock = 0.0;
  double shell = 0.0;
  double transverse = 0.0;
  double spin_drift = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); k += 50) {
    const BMTState& t = traj.states[k];
    const double angle = std::atan2(t.u[2], t.u[1]) - std::atan2(s.u[2], s.u[1]);
    const Matrix4 r = rotation_about_3(angle);
    lock = std::max(lock, (t.spin.full() - r * s.spin.full() * r.transpose()).cwiseAbs().maxCoeff());
  }
  for (const auto& mon : traj.monitors) {
    shell = std::max(shell, std::abs(mon.residuals.mass_shell));
    transverse = std::max(transverse, mon.residuals.transversality);
    spin_drift = std::max(spin_drift, std::abs(mon.total_spin - traj.monitors.front().total_spin));
  }
  CHECK(lock <= 1e-8);
  CHECK(shell <= 1e-8);
  CHECK(transverse <= 1e-8);
  CHECK(spin_drift <= 1e-10);
  // Whole periods bring the spin back.
  CHECK((traj.states.back().spin - s.spin).norm() <= 1e-8);
}

TEST_CASE("spin conservation for every field provider") {
  const BMTParams p{1.0, 1.0, 2.3, 1.0};
  FieldStrength amp;
  amp[pair_index(0, 1)] = 0.5;
  amp[pair_index(1, 3)] = 0.5;
  const std::vector<EMField> providers{
      EMField::uniform({0.05, 0.0, 0.0}, {0.2, -0.1, 1.0}),
      EMField::crossed({0.0, 0.3, 0.0}, {0.0, 0.0, 1.0}),
      EMField::plane_wave(amp, FourVector(1.0, 0.0, 0.0, 1.0)),
  };
  const double dt = 2.0 * kPi / 1000;
  for (const EMField& f : providers) {
    const BMTTrajectory traj = integrate(moving_state(), f, p, dt, 10000);
    double drift = 0.0;
    for (const auto& mon : traj.monitors) {
      drift = std::max(drift, std::abs(mon.total_spin - traj.monitors.front().total_spin));
    }
    CAPTURE(f.name());
    CHECK(drift <= 1e-10);
  }
}

TEST_CASE("spin conservation under runaway acceleration is limited by round-off") {
  // E has a component along B, so γ grows without bound and the boost-like
  // components S_0i grow with it. The invariant is then a difference of large
  // numbers and only its relative drift is meaningful.
  const BMTParams p{1.0, 1.0, 2.3, 1.0};
  const EMField f = EMField::uniform({0.05, 0.0, 0.1}, {0.2, -0.1, 1.0});
  const BMTTrajectory traj = integrate(moving_state(), f, p, 2.0 * kPi / 1000, 10000);
  double drift = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    drift = std::max(drift, std::abs(traj.monitors[k].total_spin - traj.monitors.front().total_spin));
    scale = std::max(scale, traj.states[k].spin.norm() * traj.states[k].spin.norm());
  }
  CHECK(traj.states.back().u[0] > 100.0);
  CHECK(drift <= 1e-13 * scale);
}

TEST_CASE("constraints hold with c different from one") {
  const double c = 3.0;
  const BMTParams p{1.0, 1.0, 1.7, c};
  const EMField f = EMField::uniform({0.5, 0.0, 0.2}, {0.0, 0.3, 1.0});
  const BMTTrajectory traj = integrate(moving_state(c), f, p, 1e-3, 5000);
  for (const auto& mon : traj.monitors) {
    CHECK(std::abs(mon.residuals.mass_shell) <= 1e-8 * c * c);
    CHECK(mon.residuals.transversality <= 1e-8);
  }
}

TEST_CASE("projected method keeps the mass shell to round-off") {
  const BMTParams p{1.0, 1.0, 2.0, 1.0};
  const EMField f = EMField::uniform({0.5, 0.0, 0.0}, {0.0, 0.0, 1.0});
  const BMTTrajectory traj = integrate(moving_state(), f, p, 0.05, 400, Method::rk4_projected);
  for (const auto& mon : traj.monitors) CHECK(std::abs(mon.residuals.mass_shell) <= 1e-13);
}

TEST_CASE("RK4 is fourth order on the uniform field") {
  const BMTParams p{1.0, 1.0, 2.5, 1.0};
  const EMField f = EMField::uniform({0.1, 0.0, 0.0}, {0.0, 0.0, 1.0});
  const double t = 2.0;
  auto run = [&](int n) { return integrate(moving_state(), f, p, t / n, n).states.back(); };
  auto distance = [](const BMTState& a, const BMTState& b) {
    return std::max({(a.x - b.x).norm(), (a.u - b.u).norm(), (a.spin - b.spin).norm()});
  };
  const BMTState ref = run(20 * 64);
  const double order = std::log2(distance(run(20), ref) / distance(run(40), ref));
  CHECK(order == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("Lorentz covariance of the flow") {
  const BMTParams p{0.8, 1.2, 2.2, 1.0};
  FieldStrength amp;
  amp[pair_index(0, 2)] = 0.4;
  amp[pair_index(2, 3)] = 0.4;
  sampling::Rng rng(3);
  const Matrix4 l = group::vector_rep(sampling::random_group(rng, 0.6));
  for (const EMField& f : {EMField::uniform({0.1, 0.2, 0.0}, {0.3, 0.0, 0.8}),
                           EMField::plane_wave(amp, FourVector(1.0, 1.0, 0.0, 0.0))}) {
    const BMTState s = moving_state();
    const BMTState a = transform(integrate(s, f, p, 0.01, 300).states.back(), l);
    const BMTState b = integrate(transform(s, l), f.transformed(l), p, 0.01, 300).states.back();
    const double scale = std::max(1.0, a.u.norm());
    CHECK((a.x - b.x).norm() <= 1e-8 * scale);
    CHECK((a.u - b.u).norm() <= 1e-8 * scale);
    CHECK((a.spin - b.spin).norm() <= 1e-8 * scale * scale);
  }
}

TEST_CASE("non-finite states are reported") {
  const EMField huge = EMField::custom(
      [](const FourVector&) {
        FieldStrength f;
        f[pair_index(0, 1)] = 1e300;
        return f;
      },
      "huge");
  CHECK_THROWS_AS(integrate(moving_state(), huge, {1.0, 1.0, 2.0, 1.0}, 1.0, 10), NonFiniteError);
  CHECK_THROWS_AS(integrate(moving_state(), huge, {1.0, 1.0, 2.0, 1.0}, 0.0, 10), DomainError);
}

}  // TEST_SUITE
