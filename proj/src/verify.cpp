#include "spingeom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>

#include "spingeom/bmt.hpp"
#include "spingeom/errors.hpp"
#include "spingeom/group.hpp"
#include "spingeom/hamiltonian.hpp"
#include "spingeom/harmonic.hpp"
#include "spingeom/ops.hpp"
#include "spingeom/sampling.hpp"

namespace spingeom::verify {

namespace {

using group::Complex;
using group::GroupElement;
using group::Matrix2c;
using group::MatrixXc;
using group::Representation;

constexpr double kPi = std::numbers::pi;

sampling::Rng make_rng(std::uint64_t seed, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag};
  return sampling::Rng(seq);
}

int scaled(int n, const Options& o) {
  return std::max(1, static_cast<int>(std::lround(n * o.sample_scale)));
}

double max_abs(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

class Suite {
 public:
  Suite(std::string name, const Options& o) : name_(std::move(name)), opt_(o) {}

  void add(const std::string& property, int samples, double worst, double tol) {
    out_.push_back({name_, property, samples, worst, tol, std::isfinite(worst) && worst <= tol});
  }

  sampling::Rng rng() { return make_rng(opt_.seed, static_cast<std::uint32_t>(out_.size())); }
  const Options& options() const { return opt_; }
  std::vector<Property> take() { return std::move(out_); }

 private:
  std::string name_;
  Options opt_;
  std::vector<Property> out_;
};

// --- group -----------------------------------------------------------------

std::vector<Property> group_suite(const Options& o) {
  Suite s("group", o);
  {
    const group::GammaMatrices g = group::dirac_gammas();
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const group::Matrix4c ac = g.upper[a] * g.upper[b] + g.upper[b] * g.upper[a];
        const group::Matrix4c expect = 2.0 * eta(a, b) * group::Matrix4c::Identity();
        worst = std::max(worst, (ac - expect).cwiseAbs().maxCoeff());
      }
    }
    s.add("clifford_anticommutator", 16, worst, 0.0);
  }
  {
    double worst = 0.0;
    int count = 0;
    for (const char* label : {"fundamental", "antifundamental", "dirac", "vector", "su2spin:2",
                              "su2spin:3"}) {
      const Representation rep = group::generators(label);
      for (std::size_t ab = 0; ab < kPairCount; ++ab) {
        for (std::size_t cd = 0; cd < kPairCount; ++cd) {
          const MatrixXc& x = rep.generators[ab];
          const MatrixXc& y = rep.generators[cd];
          worst = std::max(worst, max_abs(x * y - y * x + ops::bracket_combination(rep, ab, cd)));
          ++count;
        }
      }
    }
    s.add("generator_commutators", count, worst, 1e-12);
  }
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(1000, o);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const GroupElement a = sampling::random_group(rng);
      const GroupElement b = sampling::random_group(rng);
      const Matrix4 la = group::vector_rep(a);
      const Matrix4 lb = group::vector_rep(b);
      const Matrix4 lab = group::vector_rep(group::compose(a, b));
      const double scale = std::max(1.0, la.cwiseAbs().maxCoeff() * lb.cwiseAbs().maxCoeff());
      worst = std::max(worst, (lab - la * lb).cwiseAbs().maxCoeff() / scale);
    }
    s.add("covering_homomorphism", n, worst, 1e-10);
  }
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(1000, o);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const AlgebraCoefficients w = sampling::random_algebra(rng, 1.5);
      const AlgebraCoefficients back = group::log_map(group::exp_group(w));
      worst = std::max(worst, (back - w).norm() / std::max(1.0, w.norm()));
    }
    s.add("exp_log_round_trip", n, worst, 1e-10);
  }
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(1000, o);
    const group::GammaMatrices g = group::dirac_gammas();
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const group::DiracSpinor z = sampling::random_spinor(rng);
      const group::SpinorBilinears bl = group::spinor_constraints(z, g);
      const Complex det = group::spinor_matrix(z).determinant();
      worst = std::max(worst, std::abs(det - (bl.scalar - bl.pseudoscalar)) /
                                  std::max(1.0, z.squaredNorm()));
    }
    s.add("spinor_determinant_identity", n, worst, 1e-12);
  }
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(500, o);
    const double m = 1.0;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const FourVector p = sampling::random_on_shell(rng, m);
      const FourVector back = group::momentum_from_boost(group::boost_from_momentum(p, m), m);
      worst = std::max(worst, (back - p).cwiseAbs().maxCoeff() / std::max(m, p[0]));
    }
    s.add("boost_momentum_round_trip", n, worst, 1e-10);
  }
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(500, o);
    const double m = 1.0;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const GroupElement lam = sampling::random_group(rng);
      const FourVector p = sampling::random_on_shell(rng, m);
      const group::LittleGroupFactors f = group::little_group_decompose(lam, p, m);
      worst = std::max(worst, max_abs(group::reassemble(f).matrix() - lam.matrix()) /
                                  max_abs(lam.matrix()));
    }
    s.add("little_group_reassembly", n, worst, 1e-12);
  }
  return s.take();
}

// --- operators -------------------------------------------------------------

std::vector<Property> operators_suite(const Options& o) {
  Suite s("operators", o);
  const int n = scaled(100, o);
  const std::uint64_t seed = o.seed;
  {
    const auto r = ops::verify_generator_action(group::generators("fundamental"), n, seed, {},
                                                1e-6, false);
    s.add("generator_action_fundamental", n, r.max_rel_error, 1e-6);
  }
  {
    Representation dirac = group::generators("dirac");
    if (o.corrupt_generator) dirac.generators[3](0, 0) += 0.01;
    const auto r = ops::verify_generator_action(dirac, n, seed, {}, 1e-6, false);
    s.add("generator_action_dirac", n, r.max_rel_error, 1e-6);
  }
  {
    sampling::Rng rng = s.rng();
    const Representation fund = group::generators("fundamental");
    const int points = scaled(3, o);
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
      const GroupElement lam = sampling::random_group(rng, 1.0);
      const ops::GroupScalarFunction f = ops::matrix_element(fund, k % 2, (k / 2) % 2);
      for (std::size_t ab = 0; ab < kPairCount; ++ab) {
        for (std::size_t cd = ab + 1; cd < kPairCount; ++cd) {
          const Complex rhs = ops::bracket_combination(f, lam, ab, cd);
          const Complex lhs = ops::numeric_commutator(f, lam, ab, cd);
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
      }
    }
    s.add("operator_commutators", points * 15, worst, 1e-4);
  }
  {
    sampling::Rng rng = s.rng();
    const int points = scaled(4, o);
    double worst = 0.0;
    int count = 0;
    for (const char* label : {"fundamental", "dirac"}) {
      const Representation rep = group::generators(label);
      const Complex value = ops::matrix_casimir(rep)(0, 0);
      for (int k = 0; k < points; ++k) {
        const GroupElement lam = sampling::random_group(rng, 1.0);
        for (int r = 0; r < rep.dimension; ++r) {
          const ops::GroupScalarFunction f = ops::matrix_element(rep, r, (r + k) % rep.dimension);
          const Complex psi = f.eval(lam);
          if (std::abs(psi) < 0.05) continue;
          worst = std::max(worst, std::abs(ops::casimir_apply(f, lam) / psi - value) /
                                      std::abs(value));
          ++count;
        }
      }
    }
    s.add("casimir_constancy", count, worst, 1e-4);
  }
  {
    Matrix4 lin;
    lin << 0.3, 0.1, -0.2, 0.0, 0.5, -0.4, 0.2, 0.1, 0.0, 0.3, 0.7, -0.6, 0.2, 0.2, 0.1, 0.4;
    const int m = scaled(50, o);
    const auto r = ops::covariant_field_check([&](const FourVector& x) { return FourVector(lin * x); },
                                              m, seed, {}, 1e-6);
    s.add("covariant_field_transformation", m, r.direct_error, 1e-6);
  }
  return s.take();
}

// --- bmt -------------------------------------------------------------------

bmt::BMTState moving_state() {
  const double v = 0.6;
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  bmt::BMTState rest;
  rest.u << 1.0, 0.0, 0.0, 0.0;
  rest.spin[pair_index(2, 3)] = 0.4;
  rest.spin[pair_index(1, 2)] = 0.3;
  Matrix4 boost = Matrix4::Identity();
  boost(0, 0) = boost(1, 1) = gamma;
  boost(0, 1) = boost(1, 0) = gamma * v;
  return bmt::transform(rest, boost);
}

std::vector<Property> bmt_suite(const Options& o) {
  Suite s("bmt", o);
  {
    const bmt::EMField f = bmt::EMField::uniform(Eigen::Vector3d::Zero(), {0.0, 0.0, 1.0});
    const bmt::BMTParams p{1.0, 1.0, 2.0, 1.0};
    const bmt::BMTState s0 = moving_state();
    const int per_period = 1000;
    const int periods = std::max(1, static_cast<int>(std::lround(10 * o.sample_scale)));
    const bmt::BMTTrajectory traj =
        bmt::integrate(s0, f, p, 2.0 * kPi / per_period, periods * per_period);
    double lock = 0.0;
    double constraint = 0.0;
    double spin = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const bmt::BMTState& t = traj.states[k];
      const double angle = std::atan2(t.u[2], t.u[1]) - std::atan2(s0.u[2], s0.u[1]);
      Matrix4 r = Matrix4::Identity();
      r(1, 1) = r(2, 2) = std::cos(angle);
      r(2, 1) = std::sin(angle);
      r(1, 2) = -std::sin(angle);
      lock = std::max(lock, (t.spin.full() - r * s0.spin.full() * r.transpose()).cwiseAbs().maxCoeff());
      const auto& mon = traj.monitors[k];
      constraint = std::max({constraint, std::abs(mon.residuals.mass_shell),
                             mon.residuals.transversality});
      spin = std::max(spin, std::abs(mon.total_spin - traj.monitors.front().total_spin));
    }
    const int n = static_cast<int>(traj.states.size());
    s.add("precession_lock", n, lock, 1e-8);
    s.add("constraint_drift", n, constraint, 1e-8);
    s.add("total_spin_drift", n, spin, 1e-10);
  }
  {
    const bmt::BMTParams p{1.0, 1.0, 2.5, 1.0};
    const bmt::EMField f = bmt::EMField::uniform({0.1, 0.0, 0.0}, {0.0, 0.0, 1.0});
    const bmt::BMTState s0 = moving_state();
    auto run = [&](int n) { return bmt::integrate(s0, f, p, 2.0 / n, n).states.back(); };
    const bmt::BMTState ref = run(20 * 16);
    std::vector<double> lx;
    std::vector<double> ly;
    for (int n : {20, 40, 80, 160}) {
      const bmt::BMTState e = run(n);
      const double err = std::max({(e.x - ref.x).norm(), (e.u - ref.u).norm(), (e.spin - ref.spin).norm()});
      lx.push_back(std::log(2.0 / n));
      ly.push_back(std::log(err));
    }
    const double mx = (lx[0] + lx[1] + lx[2] + lx[3]) / 4.0;
    const double my = (ly[0] + ly[1] + ly[2] + ly[3]) / 4.0;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      sxy += (lx[k] - mx) * (ly[k] - my);
      sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    s.add("rk4_order_deviation", 5, std::abs(sxy / sxx - 4.0), 0.1);
  }
  return s.take();
}

// --- hamiltonian -----------------------------------------------------------

std::vector<Property> hamiltonian_suite(const Options& o) {
  Suite s("hamiltonian", o);
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(1000, o);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      worst = std::max(worst, ham::casimir_bracket(sampling::random_spin(rng, 2.0)).norm());
    }
    s.add("casimir_bracket", n, worst, 1e-12);
  }
  {
    const ham::ExternalFields flat = ham::make_fields(ham::fields::Flat{});
    ham::PhaseState st;
    st.x << 0.1, -0.2, 0.3, 0.4;
    st.p << 2.0, 0.3, -0.4, 0.5;
    st.spin[pair_index(0, 1)] = 0.2;
    st.spin[pair_index(1, 2)] = 0.5;
    st.spin[pair_index(2, 3)] = -0.3;
    st.q = 0.7;
    st.lambda = group::exp_group(AlgebraCoefficients({0.1, 0.2, -0.1, 0.3, 0.0, 0.2}));
    const double h = ham::hamiltonian(st, flat);
    const int nsteps = scaled(1000, o);
    const double dt = 0.01;
    const ham::HamiltonianTrajectory traj = ham::integrate_hamiltonian(st, flat, dt, nsteps);
    const ham::PhaseState& end = traj.states.back();
    const double t = dt * nsteps;
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      worst = std::max(worst, std::abs(end.x[mu] - (st.x[mu] + t * eta(mu, mu) * st.p[mu] / h)));
    }
    AlgebraCoefficients w;
    for (std::size_t k = 0; k < kPairCount; ++k) w[k] = t * pair_sign(k) * st.spin[k] / h;
    const GroupElement lam = group::compose(group::exp_group(w), st.lambda);
    worst = std::max(worst, max_abs(end.lambda.matrix() - lam.matrix()));
    worst = std::max(worst, (end.spin - st.spin).norm());
    s.add("free_particle_closed_form", nsteps, worst, 1e-10);
  }
  {
    FieldStrength fs;
    fs[pair_index(0, 1)] = 0.3;
    fs[pair_index(0, 3)] = -0.2;
    fs[pair_index(1, 2)] = 0.8;
    fs[pair_index(2, 3)] = 0.25;
    const ham::ExternalFields f = ham::make_fields(ham::fields::LinearPotential{fs});
    sampling::Rng rng = s.rng();
    ham::PhaseState st;
    for (int i = 0; i < 4; ++i) st.x[i] = sampling::uniform(rng, -1.0, 1.0);
    st.p << 3.0, 0.2, -0.1, 0.3;
    st.spin = sampling::random_spin(rng, 0.3);
    st.lambda = sampling::random_group(rng, 0.5);
    st.q = 0.4;
    const int nsteps = scaled(2000, o);
    const ham::HamiltonianTrajectory traj = ham::integrate_hamiltonian(st, f, 1e-3, nsteps);
    double h = 0.0;
    double spin = 0.0;
    double q = 0.0;
    for (const auto& m : traj.monitors) {
      h = std::max(h, std::abs(m.h - traj.monitors.front().h));
      spin = std::max(spin, std::abs(m.total_spin - traj.monitors.front().total_spin));
      q = std::max(q, std::abs(m.q - traj.monitors.front().q));
    }
    s.add("hamiltonian_drift", nsteps, h, 1e-10);
    s.add("total_spin_drift", nsteps, spin, 1e-10);
    s.add("charge_drift", nsteps, q, 1e-10);
  }
  return s.take();
}

// --- harmonic --------------------------------------------------------------

std::vector<Property> harmonic_suite(const Options& o) {
  Suite s("harmonic", o);
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(50, o);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const GroupElement u = sampling::random_su2(rng);
      const GroupElement v = sampling::random_su2(rng);
      const GroupElement uv = group::compose(u, v);
      for (int two_s = 0; two_s <= 6; ++two_s) {
        const MatrixXc du = harmonic::wigner_d(two_s, u).matrix;
        const MatrixXc dv = harmonic::wigner_d(two_s, v).matrix;
        const MatrixXc id = MatrixXc::Identity(two_s + 1, two_s + 1);
        worst = std::max({worst, max_abs(du.adjoint() * du - id),
                          max_abs(harmonic::wigner_d(two_s, uv).matrix - du * dv)});
      }
    }
    s.add("wigner_unitary_homomorphism", n, worst, 1e-12);
  }
  {
    // Gram matrix of every D^s_{αβ}, s ≤ 2, accumulated over the grid.
    const int two_s_max = 4;
    const harmonic::EulerGrid grid = harmonic::EulerGrid::for_spin(two_s_max);
    int total = 0;
    for (int t = 0; t <= two_s_max; ++t) total += (t + 1) * (t + 1);
    MatrixXc gram = MatrixXc::Zero(total, total);
    Eigen::VectorXcd v(total);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      int offset = 0;
      for (int t = 0; t <= two_s_max; ++t) {
        const MatrixXc d = harmonic::wigner_d(t, grid.nodes()[k]).matrix;
        for (int a = 0; a <= t; ++a) {
          for (int b = 0; b <= t; ++b) v[offset++] = d(a, b);
        }
      }
      gram.noalias() += grid.weights()[k] * (v * v.adjoint());
    }
    MatrixXc expect = MatrixXc::Zero(total, total);
    int offset = 0;
    for (int t = 0; t <= two_s_max; ++t) {
      for (int k = 0; k < (t + 1) * (t + 1); ++k, ++offset) expect(offset, offset) = 1.0 / (t + 1);
    }
    s.add("haar_orthogonality", static_cast<int>(grid.size()), max_abs(gram - expect), 1e-10);
  }
  {
    sampling::Rng rng = s.rng();
    const int two_s_max = 4;
    harmonic::PeterWeylCoefficients truth;
    truth.two_s_max = two_s_max;
    for (int t = 0; t <= two_s_max; ++t) {
      MatrixXc b(t + 1, t + 1);
      for (int r = 0; r < t + 1; ++r) {
        for (int c = 0; c < t + 1; ++c) {
          b(r, c) = Complex(sampling::uniform(rng, -1.0, 1.0), sampling::uniform(rng, -1.0, 1.0));
        }
      }
      truth.blocks.push_back(b);
    }
    const harmonic::SU2Function f = [&](const GroupElement& u) { return truth.synthesize(u); };
    const harmonic::PeterWeylCoefficients c = harmonic::peter_weyl_decompose(f, two_s_max);
    const int n = scaled(200, o);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const GroupElement u = sampling::random_su2(rng);
      worst = std::max(worst, std::abs(c.synthesize(u) - f(u)));
    }
    s.add("peter_weyl_round_trip", n, worst, 1e-9);
  }
  {
    sampling::Rng rng = s.rng();
    const int n = scaled(200, o);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const double lambda = sampling::uniform(rng, 0.3, 3.0);
      const Complex zeta(sampling::uniform(rng, -2.0, 2.0), sampling::uniform(rng, -2.0, 2.0));
      const double ratio = harmonic::volume_jacobian_check(lambda, zeta, 1.4).ratio;
      worst = std::max(worst, std::abs(ratio / harmonic::kVolumeConstant - 1.0));
    }
    s.add("volume_jacobian_ratio", n, worst, 1e-8);
  }
  {
    const int n = scaled(100, o);
    const harmonic::HyperchargeReport r =
        harmonic::hypercharge_check(o.seed, n);
    s.add("hypercharge_exact", n,
          std::max({r.generator_error, r.analytic_error, r.commutator_error}), 0.0);
  }
  return s.take();
}

using SuiteFn = std::vector<Property> (*)(const Options&);

SuiteFn lookup(const std::string& name) {
  if (name == "group") return group_suite;
  if (name == "operators") return operators_suite;
  if (name == "bmt") return bmt_suite;
  if (name == "hamiltonian") return hamiltonian_suite;
  if (name == "harmonic") return harmonic_suite;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"group", "operators", "bmt", "hamiltonian",
                                              "harmonic"};
  return names;
}

std::vector<Property> run(const std::string& suite, const Options& options) {
  if (suite == "all") {
    std::vector<std::future<std::vector<Property>>> jobs;
    for (const std::string& name : suite_names()) {
      jobs.push_back(std::async(std::launch::async, lookup(name), options));
    }
    std::vector<Property> out;
    for (auto& j : jobs) {
      std::vector<Property> part = j.get();
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const SuiteFn fn = lookup(suite);
  if (fn == nullptr) {
    throw DomainError("unknown suite '" + suite +
                      "' (expected group, operators, bmt, hamiltonian, harmonic or all)");
  }
  return fn(options);
}

}  // namespace spingeom::verify
