#include "spingeom/group.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "spingeom/errors.hpp"

namespace spingeom::group {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix2c inverse_unimodular(const Matrix2c& m) {
  Matrix2c inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv;
}

// exp of a traceless 2×2 matrix: X² = −det(X)·I.
Matrix2c exp_traceless(const Matrix2c& x) {
  const Complex d = std::sqrt(-x.determinant());
  Complex c;
  Complex s_over_d;
  if (std::abs(d) < 1e-3) {
    const Complex d2 = d * d;
    c = 1.0 + d2 / 2.0 + d2 * d2 / 24.0 + d2 * d2 * d2 / 720.0;
    s_over_d = 1.0 + d2 / 6.0 + d2 * d2 / 120.0 + d2 * d2 * d2 / 5040.0;
  } else {
    c = std::cosh(d);
    s_over_d = std::sinh(d) / d;
  }
  return c * Matrix2c::Identity() + s_over_d * x;
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

// 1/sqrt((n−k)! k!) for k = 0..n.
std::vector<double> power_norms(int n) {
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    out[k] = 1.0 / std::sqrt(factorial(n - k) * factorial(k));
  }
  return out;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // (1,2,3) cyclic → +1
  const int perm = (i - 1) * 9 + (j - 1) * 3 + (k - 1);
  switch (perm) {
    case 0 * 9 + 1 * 3 + 2:  // 123
    case 1 * 9 + 2 * 3 + 0:  // 231
    case 2 * 9 + 0 * 3 + 1:  // 312
      return 1;
    default:
      return -1;
  }
}

Representation fundamental_rep() {
  Representation rep{RepLabel::fundamental, 1, 2, {}};
  const auto& s = pauli();
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const auto [a, b] = kPairs[k];
    Matrix2c g = Matrix2c::Zero();
    if (a == 0) {
      g = 0.5 * s[b];
    } else {
      for (int c = 1; c <= 3; ++c) {
        g += -0.5 * kI * static_cast<double>(levi_civita(a, b, c)) * s[c];
      }
    }
    rep.generators[k] = g;
  }
  return rep;
}

Representation vector_generators() {
  Representation rep{RepLabel::vector, 0, 4, {}};
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const auto [a, b] = kPairs[k];
    MatrixXc g = MatrixXc::Zero(4, 4);
    for (int c = 0; c < 4; ++c) {
      for (int e = 0; e < 4; ++e) {
        g(c, e) = eta(a, c) * (b == e ? 1.0 : 0.0) - eta(b, c) * (a == e ? 1.0 : 0.0);
      }
    }
    rep.generators[k] = g;
  }
  return rep;
}

}  // namespace

// --- GroupElement ----------------------------------------------------------

GroupElement GroupElement::from_matrix(const Matrix2c& m, double tol) {
  const Complex d = m.determinant();
  if (!std::isfinite(d.real()) || !std::isfinite(d.imag()) ||
      std::abs(d - 1.0) > tol) {
    throw DomainError("matrix is not in SL(2,C): |det - 1| = " +
                      std::to_string(std::abs(d - 1.0)));
  }
  return normalized(m);
}

GroupElement GroupElement::normalized(const Matrix2c& m) {
  const Complex d = m.determinant();
  if (std::abs(d) == 0.0) throw DomainError("singular matrix cannot be normalized");
  return GroupElement(m / std::sqrt(d));
}

GroupElement GroupElement::inverse() const {
  return GroupElement(inverse_unimodular(m_));
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  return GroupElement::normalized(a.matrix() * b.matrix());
}

const std::array<Matrix2c, 4>& pauli() {
  static const std::array<Matrix2c, 4> s = [] {
    std::array<Matrix2c, 4> out;
    out[0] << 1, 0, 0, 1;
    out[1] << 0, 1, 1, 0;
    out[2] << 0, -kI, kI, 0;
    out[3] << 1, 0, 0, -1;
    return out;
  }();
  return s;
}

Matrix2c sigma_map(const FourVector& p) {
  const auto& s = pauli();
  return p[0] * s[0] + p[1] * s[1] + p[2] * s[2] + p[3] * s[3];
}

FourVector sigma_unmap(const Matrix2c& x) {
  const auto& s = pauli();
  FourVector p;
  for (int mu = 0; mu < 4; ++mu) p[mu] = 0.5 * (s[mu] * x).trace().real();
  return p;
}

Matrix4 vector_rep(const GroupElement& a) {
  const auto& s = pauli();
  const Matrix2c& m = a.matrix();
  const Matrix2c m_dag = m.adjoint();
  Matrix4 out;
  for (int nu = 0; nu < 4; ++nu) {
    const Matrix2c image = m * s[nu] * m_dag;
    for (int mu = 0; mu < 4; ++mu) {
      out(mu, nu) = 0.5 * (s[mu] * image).trace().real();
    }
  }
  return out;
}

// --- representations -------------------------------------------------------

std::string Representation::name() const {
  switch (label) {
    case RepLabel::fundamental: return "fundamental";
    case RepLabel::antifundamental: return "antifundamental";
    case RepLabel::dirac: return "dirac";
    case RepLabel::vector: return "vector";
    case RepLabel::su2spin: return "su2spin:" + std::to_string(two_spin);
  }
  return "unknown";
}

Representation generators(RepLabel label, int two_spin) {
  switch (label) {
    case RepLabel::fundamental:
      return fundamental_rep();
    case RepLabel::antifundamental: {
      Representation rep = fundamental_rep();
      rep.label = RepLabel::antifundamental;
      for (auto& g : rep.generators) g = MatrixXc(-g.adjoint());
      return rep;
    }
    case RepLabel::vector:
      return vector_generators();
    case RepLabel::dirac: {
      Representation rep{RepLabel::dirac, 0, 4, {}};
      const auto bivectors = clifford_bivectors(dirac_gammas());
      for (std::size_t k = 0; k < kPairCount; ++k) {
        rep.generators[k] = kDiracGeneratorScale * bivectors[k];
      }
      return rep;
    }
    case RepLabel::su2spin: {
      if (two_spin < 0) throw UnknownRepresentation("spin must be non-negative");
      Representation rep{RepLabel::su2spin, two_spin, two_spin + 1, {}};
      const Representation fund = fundamental_rep();
      for (std::size_t k = 0; k < kPairCount; ++k) {
        rep.generators[k] =
            symmetric_power_derivative(Matrix2c(fund.generators[k]), two_spin);
      }
      return rep;
    }
  }
  throw UnknownRepresentation("unknown representation label");
}

Representation generators(const std::string& label) {
  if (label == "fundamental") return generators(RepLabel::fundamental);
  if (label == "antifundamental") return generators(RepLabel::antifundamental);
  if (label == "dirac") return generators(RepLabel::dirac);
  if (label == "vector") return generators(RepLabel::vector);
  const std::string prefix = "su2spin:";
  if (label.rfind(prefix, 0) == 0) {
    const std::string rest = label.substr(prefix.size());
    std::size_t used = 0;
    int two_spin = -1;
    try {
      two_spin = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && two_spin >= 0) {
      return generators(RepLabel::su2spin, two_spin);
    }
  }
  throw UnknownRepresentation("unknown representation '" + label + "'");
}

MatrixXc algebra_element(const AlgebraCoefficients& w, const Representation& rep) {
  MatrixXc x = MatrixXc::Zero(rep.dimension, rep.dimension);
  for (std::size_t k = 0; k < kPairCount; ++k) {
    x += 2.0 * w[k] * rep.generators[k];
  }
  return x;
}

MatrixXc exp_map(const AlgebraCoefficients& w, const Representation& rep) {
  const MatrixXc x = algebra_element(w, rep);
  if (rep.dimension == 2) return exp_traceless(Matrix2c(x));
  return x.exp();
}

GroupElement exp_group(const AlgebraCoefficients& w) {
  static const Representation fund = fundamental_rep();
  return GroupElement::normalized(exp_traceless(Matrix2c(algebra_element(w, fund))));
}

GroupElement one_parameter(std::size_t pair, double t) {
  static const Representation fund = fundamental_rep();
  return GroupElement::normalized(exp_traceless(t * Matrix2c(fund.generators[pair])));
}

AlgebraCoefficients algebra_coordinates(const Matrix2c& x) {
  const auto& s = pauli();
  std::array<Complex, 4> z{};
  for (int k = 1; k <= 3; ++k) z[k] = 0.5 * (x * s[k]).trace();
  AlgebraCoefficients w;
  w[pair_index(0, 1)] = z[1].real();
  w[pair_index(0, 2)] = z[2].real();
  w[pair_index(0, 3)] = z[3].real();
  w[pair_index(2, 3)] = -z[1].imag();
  w[pair_index(1, 3)] = z[2].imag();
  w[pair_index(1, 2)] = -z[3].imag();
  return w;
}

AlgebraCoefficients log_map(const GroupElement& a) {
  const Matrix2c& m = a.matrix();
  const Complex tr = m.trace();
  if (std::abs(tr + 2.0) < 1e-8) {
    throw BranchCutError("log_map: tr A = -2 lies on the branch cut");
  }
  const Complex c = 0.5 * tr;
  const Matrix2c b = m - c * Matrix2c::Identity();
  // b = (sinh κ / κ)·X with cosh κ = c, so b² = sinh²κ·I.
  const Complex s = std::sqrt(-b.determinant());
  Complex kappa = std::asinh(s);
  if (std::abs(std::cosh(kappa) - c) > std::abs(std::cosh(kappa) + c)) {
    kappa = Complex(0.0, std::numbers::pi) - kappa;
  }
  Complex ratio;
  if (std::abs(s) < 1e-4 && std::real(c) > 0.0) {
    const Complex s2 = s * s;
    ratio = 1.0 - s2 / 6.0 + 3.0 * s2 * s2 / 40.0;
  } else {
    ratio = kappa / s;
  }
  return algebra_coordinates(ratio * b);
}

MatrixXc symmetric_power(const Matrix2c& a, int two_spin) {
  const int n = two_spin;
  const auto norms = power_norms(n);
  MatrixXc d = MatrixXc::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    // Coefficients in t = y/x of (a00 + a10 t)^(n−k) (a01 + a11 t)^k.
    std::vector<Complex> poly{1.0};
    auto multiply = [&poly](Complex c0, Complex c1) {
      std::vector<Complex> next(poly.size() + 1, 0.0);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j] += poly[j] * c0;
        next[j + 1] += poly[j] * c1;
      }
      poly = std::move(next);
    };
    for (int r = 0; r < n - k; ++r) multiply(a(0, 0), a(1, 0));
    for (int r = 0; r < k; ++r) multiply(a(0, 1), a(1, 1));
    for (int j = 0; j <= n; ++j) d(j, k) = poly[j] * norms[k] / norms[j];
  }
  return d;
}

MatrixXc symmetric_power_derivative(const Matrix2c& x, int two_spin) {
  const int n = two_spin;
  const auto norms = power_norms(n);
  MatrixXc d = MatrixXc::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    d(k, k) += static_cast<double>(n - k) * x(0, 0) + static_cast<double>(k) * x(1, 1);
    if (k + 1 <= n) {
      d(k + 1, k) += static_cast<double>(n - k) * x(1, 0) * norms[k] / norms[k + 1];
    }
    if (k >= 1) {
      d(k - 1, k) += static_cast<double>(k) * x(0, 1) * norms[k] / norms[k - 1];
    }
  }
  return d;
}

// --- Clifford algebra ------------------------------------------------------

GammaMatrices dirac_gammas(GammaBasis basis, int gamma5_sign) {
  const auto& s = pauli();
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c zero = Matrix2c::Zero();
  auto block = [](const Matrix2c& a, const Matrix2c& b, const Matrix2c& c,
                  const Matrix2c& d) {
    Matrix4c m;
    m << a, b, c, d;
    return m;
  };

  GammaMatrices g;
  if (basis == GammaBasis::weyl) {
    g.upper[0] = block(zero, id, id, zero);
  } else {
    g.upper[0] = block(id, zero, zero, -id);
  }
  for (int i = 1; i <= 3; ++i) g.upper[i] = block(zero, s[i], -s[i], zero);

  if (basis == GammaBasis::spinor_map) {
    Matrix4c v = Matrix4c::Zero();
    v.topLeftCorner<2, 2>() = id;
    v.bottomRightCorner<2, 2>() = -s[3];
    for (auto& gm : g.upper) gm = v * gm * v.adjoint();
  }
  g.gamma5 = static_cast<double>(gamma5_sign) * kI * g.upper[0] * g.upper[1] *
             g.upper[2] * g.upper[3];
  return g;
}

std::array<Matrix4c, kPairCount> clifford_bivectors(const GammaMatrices& g) {
  std::array<Matrix4c, kPairCount> out;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const auto [a, b] = kPairs[k];
    out[k] = 0.5 * (g.lower(a) * g.lower(b) - g.lower(b) * g.lower(a));
  }
  return out;
}

Matrix2c spinor_matrix(const DiracSpinor& z) {
  Matrix2c g;
  g << z[0] + z[2], z[1] - z[3], -std::conj(z[1]) - std::conj(z[3]),
      std::conj(z[0]) - std::conj(z[2]);
  return g;
}

SpinorBilinears spinor_constraints(const DiracSpinor& z, const GammaMatrices& g) {
  const Eigen::RowVector4cd zbar = z.adjoint() * g.upper[0];
  return {zbar * z, zbar * g.gamma5 * z};
}

bool spinor_is_unimodular(const DiracSpinor& z, double tol) {
  const auto b = spinor_constraints(z);
  return std::abs(b.scalar - 1.0) <= tol && std::abs(b.pseudoscalar) <= tol;
}

// --- Poincaré action -------------------------------------------------------

PoincareElement poincare_act(const PoincareElement& g, const PoincareElement& h) {
  return {vector_rep(g.rotation) * h.translation + g.translation,
          compose(g.rotation, h.rotation)};
}

// --- boosts and little group -----------------------------------------------

GroupElement LowerBoost::element() const {
  if (!(lambda > 0.0)) throw DomainError("boost requires lambda > 0");
  Matrix2c m;
  m << lambda, 0.0, zeta, 1.0 / lambda;
  return GroupElement::normalized(m);
}

FourVector momentum_from_boost(const LowerBoost& b, double m) {
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  const Matrix2c& a = b.element().matrix();
  return sigma_unmap(m * a * a.adjoint());
}

LowerBoost boost_from_momentum(const FourVector& p, double m) {
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  const double residual = minkowski_dot(p, p) - m * m;
  const double scale = std::max(m * m, p[0] * p[0]);
  if (!(p[0] > 0.0) || !(std::abs(residual) <= 1e-8 * scale)) {
    throw OffShellError("momentum is off the forward mass shell: p.p - m^2 = " +
                            std::to_string(residual) +
                            ", p0 = " + std::to_string(p[0]),
                        residual);
  }
  LowerBoost b;
  b.lambda = std::sqrt((p[0] + p[3]) / m);
  b.zeta = Complex(p[1], p[2]) / (m * b.lambda);
  return b;
}

Matrix2c project_su2(const Matrix2c& u) {
  Complex a = 0.5 * (u(0, 0) + std::conj(u(1, 1)));
  Complex b = 0.5 * (u(0, 1) - std::conj(u(1, 0)));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  Matrix2c out;
  out << a, b, -std::conj(b), std::conj(a);
  return out;
}

LittleGroupFactors little_group_decompose(const GroupElement& lambda,
                                          const FourVector& p, double m) {
  LittleGroupFactors f;
  f.boost = boost_from_momentum(p, m);
  f.p_prime = vector_rep(lambda.inverse()) * p;
  f.boost_prime = boost_from_momentum(f.p_prime, m);
  const Matrix2c u =
      f.boost.element().inverse().matrix() * lambda.matrix() * f.boost_prime.element().matrix();
  f.rotation = GroupElement::normalized(project_su2(u));
  return f;
}

GroupElement reassemble(const LittleGroupFactors& f) {
  return compose(compose(f.boost.element(), f.rotation), f.boost_prime.element().inverse());
}

GroupElement su2_from_euler(const EulerAngles& e) {
  const Complex ea = std::exp(-0.5 * kI * e.alpha);
  const Complex eg = std::exp(-0.5 * kI * e.gamma);
  Matrix2c rz_a;
  rz_a << ea, 0.0, 0.0, std::conj(ea);
  Matrix2c rz_g;
  rz_g << eg, 0.0, 0.0, std::conj(eg);
  const double c = std::cos(0.5 * e.beta);
  const double s = std::sin(0.5 * e.beta);
  Matrix2c ry;
  ry << c, -s, s, c;
  return GroupElement::normalized(rz_a * ry * rz_g);
}

EulerAngles euler_from_su2(const GroupElement& u) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const Matrix2c& m = u.matrix();
  const double c = std::abs(m(0, 0));
  const double s = std::abs(m(1, 0));
  EulerAngles e;
  e.beta = 2.0 * std::atan2(s, c);
  double sum = 0.0;   // α + γ
  double diff = 0.0;  // α − γ
  constexpr double tiny = 1e-14;
  if (c > tiny) sum = -2.0 * std::arg(m(0, 0));
  if (s > tiny) diff = 2.0 * std::arg(m(1, 0));
  if (s <= tiny) diff = sum;  // diagonal U: put everything in α
  if (c <= tiny) sum = diff;
  e.alpha = 0.5 * (sum + diff);
  e.gamma = 0.5 * (sum - diff);
  const double k = std::floor(e.alpha / two_pi);
  e.alpha -= two_pi * k;
  e.gamma += two_pi * k;
  e.gamma = std::fmod(e.gamma, 2.0 * two_pi);
  if (e.gamma < 0.0) e.gamma += 2.0 * two_pi;
  return e;
}

}  // namespace spingeom::group
