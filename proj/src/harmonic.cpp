#include "spingeom/harmonic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spingeom/errors.hpp"
#include "spingeom/sampling.hpp"

namespace spingeom::harmonic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitarityTol = 1e-10;

void require_su2(const Matrix2c& u) {
  const double unitarity = (u.adjoint() * u - Matrix2c::Identity()).norm();
  const double det = std::abs(u.determinant() - 1.0);
  if (!(unitarity <= kUnitarityTol) || !(det <= kUnitarityTol)) {
    std::ostringstream msg;
    msg << "matrix is not in SU(2): |U^dag U - I| = " << unitarity
        << ", |det U - 1| = " << det;
    throw NotUnitaryError(msg.str());
  }
}

}  // namespace

WignerBlock wigner_d(int two_spin, const Matrix2c& u) {
  if (two_spin < 0) throw DomainError("spin label must be non-negative");
  require_su2(u);
  return {two_spin, group::symmetric_power(u, two_spin)};
}

WignerBlock wigner_d(int two_spin, const GroupElement& u) { return wigner_d(two_spin, u.matrix()); }

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * x * p2 - (k - 1.0) * p3) / k;
      }
      dp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

EulerGrid::EulerGrid(int n) : n_(n) {
  if (n < 1) throw DomainError("grid resolution must be positive");
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(n, x, w);
  const int ng = 2 * n;
  nodes_.reserve(static_cast<std::size_t>(n) * n * ng);
  weights_.reserve(nodes_.capacity());
  // ∫dα ∫d(cos β) ∫dγ = 2π · 2 · 4π
  const double norm = 1.0 / (16.0 * kPi * kPi);
  const double wa = 2.0 * kPi / n;
  const double wg = 4.0 * kPi / ng;
  for (int i = 0; i < n; ++i) {
    const double alpha = 2.0 * kPi * i / n;
    for (int j = 0; j < n; ++j) {
      const double beta = std::acos(x[static_cast<std::size_t>(j)]);
      for (int k = 0; k < ng; ++k) {
        const double gamma = 4.0 * kPi * k / ng;
        nodes_.push_back(group::su2_from_euler({alpha, beta, gamma}));
        weights_.push_back(norm * wa * w[static_cast<std::size_t>(j)] * wg);
      }
    }
  }
}

Complex PeterWeylCoefficients::synthesize(const GroupElement& u) const {
  Complex total = 0.0;
  for (int two_s = 0; two_s <= two_s_max; ++two_s) {
    const MatrixXc d = wigner_d(two_s, u).matrix;
    total += (blocks[static_cast<std::size_t>(two_s)].array() * d.array()).sum();
  }
  return total;
}

PeterWeylCoefficients peter_weyl_decompose(const SU2Function& f, int two_s_max,
                                           const EulerGrid& grid) {
  if (two_s_max < 0) throw DomainError("s_max must be non-negative");
  if (grid.resolution() < two_s_max + 1) {
    std::ostringstream msg;
    msg << "grid resolution " << grid.resolution() << " per angle is below 2 s_max + 1 = "
        << two_s_max + 1;
    throw GridTooCoarseError(msg.str());
  }
  PeterWeylCoefficients out;
  out.two_s_max = two_s_max;
  for (int two_s = 0; two_s <= two_s_max; ++two_s) {
    out.blocks.push_back(MatrixXc::Zero(two_s + 1, two_s + 1));
  }
  const auto& nodes = grid.nodes();
  const auto& weights = grid.weights();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Complex fw = f(nodes[k]) * weights[k];
    for (int two_s = 0; two_s <= two_s_max; ++two_s) {
      const MatrixXc d = group::symmetric_power(nodes[k].matrix(), two_s);
      out.blocks[static_cast<std::size_t>(two_s)] += fw * d.conjugate();
    }
  }
  for (int two_s = 0; two_s <= two_s_max; ++two_s) {
    out.blocks[static_cast<std::size_t>(two_s)] *= static_cast<double>(two_s + 1);
  }
  return out;
}

PeterWeylCoefficients peter_weyl_decompose(const SU2Function& f, int two_s_max) {
  return peter_weyl_decompose(f, two_s_max, EulerGrid::for_spin(two_s_max));
}

Complex haar_inner_product(int two_s, int alpha, int beta, int two_s_prime, int alpha_prime,
                           int beta_prime, const EulerGrid& grid) {
  Complex total = 0.0;
  const auto& nodes = grid.nodes();
  const auto& weights = grid.weights();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const MatrixXc d = group::symmetric_power(nodes[k].matrix(), two_s);
    const MatrixXc dp = group::symmetric_power(nodes[k].matrix(), two_s_prime);
    total += weights[k] * d(alpha, beta) * std::conj(dp(alpha_prime, beta_prime));
  }
  return total;
}

std::vector<MultiplicityRow> multiplicity_report(int two_s_max) {
  if (two_s_max < 0) throw DomainError("s_max must be non-negative");
  std::vector<MultiplicityRow> rows;
  for (int two_s = 0; two_s <= two_s_max; ++two_s) {
    // One copy of the multiplet per column of D_s.
    rows.push_back({two_s, two_s + 1, two_s + 1});
  }
  return rows;
}

InternalCoords internal_coords(double lambda_prime, Complex zeta_prime, double phi, double m) {
  if (!(lambda_prime > 0.0)) {
    throw DomainError("lambda' must be positive (lambda' = 0 is not a point of the manifold)");
  }
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  return {m * zeta_prime, std::polar(m * lambda_prime, phi)};
}

VolumeJacobian volume_jacobian_check(double lambda, Complex zeta, double m,
                                     const ops::DerivativeStencil& st) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  ops::DerivativeStencil local = st;
  local.h = std::min(st.h, 0.25 * lambda);
  local.validate();

  auto momentum = [&](double l, Complex z) {
    return group::momentum_from_boost({l, z}, m);
  };
  Eigen::Matrix3d jac;
  const FourVector d_lambda = ops::detail::richardson_central(
      [&](double t) -> FourVector { return momentum(lambda + t, zeta); }, local);
  const FourVector d_re = ops::detail::richardson_central(
      [&](double t) -> FourVector { return momentum(lambda, zeta + Complex(t, 0.0)); }, local);
  const FourVector d_im = ops::detail::richardson_central(
      [&](double t) -> FourVector { return momentum(lambda, zeta + Complex(0.0, t)); }, local);
  jac.col(0) = d_lambda.tail<3>();
  jac.col(1) = d_re.tail<3>();
  jac.col(2) = d_im.tail<3>();

  VolumeJacobian out;
  out.numeric = std::abs(jac.determinant()) / momentum(lambda, zeta)[0];
  out.analytic = m * m * lambda;
  out.ratio = out.numeric / out.analytic;
  return out;
}

HyperchargeReport hypercharge_check(std::uint64_t seed, int samples,
                                    const ops::DerivativeStencil& st) {
  st.validate();
  const auto& tau = group::pauli();
  const Complex i(0.0, 1.0);
  HyperchargeReport r;
  r.samples = samples;

  const Matrix2c hypercharge = 0.5 * (tau[0] - tau[3]);
  Matrix2c expected;
  expected << 0.0, 0.0, 0.0, 1.0;
  r.generator_error = (hypercharge - expected).cwiseAbs().maxCoeff();

  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const Matrix2c ta = 0.5 * tau[a];
      const Matrix2c tb = 0.5 * tau[b];
      Matrix2c rhs = Matrix2c::Zero();
      for (int c = 1; c <= 3; ++c) {
        // ε_abc for a, b, c ∈ {1, 2, 3}
        const double eps = 0.5 * (a - b) * (b - c) * (c - a);
        rhs += i * eps * 0.5 * tau[c];
      }
      r.commutator_error =
          std::max(r.commutator_error, (ta * tb - tb * ta - rhs).cwiseAbs().maxCoeff());
    }
  }

  sampling::Rng rng(seed);
  for (int n = 0; n < samples; ++n) {
    const double lambda_prime = sampling::uniform(rng, 0.2, 3.0);
    const Complex zeta_prime(sampling::uniform(rng, -2.0, 2.0), sampling::uniform(rng, -2.0, 2.0));
    const double phi = sampling::uniform(rng, 0.0, 2.0 * kPi);
    const double m = sampling::uniform(rng, 0.5, 2.0);
    const InternalCoords z = internal_coords(lambda_prime, zeta_prime, phi, m);
    const Eigen::Vector2cd doublet(z.zeta1, z.zeta2);

    // ζ₁ = mζ′ has no φ; ζ₂ = mλ′(cos φ + i sin φ).
    const double r2 = m * lambda_prime;
    const Eigen::Vector2cd analytic(0.0, Complex(-r2 * std::sin(phi), r2 * std::cos(phi)));
    const Eigen::Vector2cd generated = i * (hypercharge * doublet);
    r.analytic_error = std::max(r.analytic_error, (analytic - generated).cwiseAbs().maxCoeff());

    const Eigen::Vector2cd numeric = ops::detail::richardson_central(
        [&](double t) -> Eigen::Vector2cd {
          const InternalCoords zt = internal_coords(lambda_prime, zeta_prime, phi + t, m);
          return Eigen::Vector2cd(zt.zeta1, zt.zeta2);
        },
        st);
    r.stencil_error = std::max(
        r.stencil_error, (numeric - generated).cwiseAbs().maxCoeff() / std::max(1.0, r2));
  }
  r.pass = r.generator_error == 0.0 && r.analytic_error == 0.0 && r.commutator_error <= 1e-15 &&
           r.stencil_error <= 1e-8;
  return r;
}

}  // namespace spingeom::harmonic
