#include "spingeom/ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spingeom/errors.hpp"
#include "spingeom/sampling.hpp"

namespace spingeom::ops {

namespace {

// Signed generator index: Σ_ab for any a ≠ b as (pair, sign).
struct SignedPair {
  std::size_t pair;
  double sign;
};

SignedPair signed_pair(int a, int b) {
  return a < b ? SignedPair{pair_index(a, b), 1.0} : SignedPair{pair_index(b, a), -1.0};
}

double scaled_abs_max(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

void DerivativeStencil::validate() const {
  if (!(h >= 1e-6 && h <= 1e-1)) {
    throw DomainError("stencil step h must lie in [1e-6, 1e-1]");
  }
  if (levels < 1 || levels > 4) {
    throw DomainError("stencil levels must lie in [1, 4]");
  }
}

GroupElement act(Side side, std::size_t pair, double t, const GroupElement& lambda) {
  const GroupElement g = group::one_parameter(pair, t);
  return side == Side::left ? group::compose(g, lambda) : group::compose(lambda, g);
}

Complex left_derivative(const GroupScalarFunction& f, const GroupElement& lambda,
                        std::size_t pair, const DerivativeStencil& st) {
  st.validate();
  return detail::richardson_central(
      [&](double t) { return f.eval(act(Side::left, pair, t, lambda)); }, st);
}

Complex right_derivative(const GroupScalarFunction& f, const GroupElement& lambda,
                         std::size_t pair, const DerivativeStencil& st) {
  st.validate();
  return detail::richardson_central(
      [&](double t) { return f.eval(act(Side::right, pair, t, lambda)); }, st);
}

MatrixXc derivative_matrix(const GroupMatrixFunction& f, const GroupElement& lambda,
                           std::size_t pair, Side side, const DerivativeStencil& st) {
  st.validate();
  return detail::richardson_central(
      [&](double t) -> MatrixXc { return f(act(side, pair, t, lambda)); }, st);
}

MatrixXc representation_matrix(const Representation& rep, const GroupElement& lambda) {
  return group::exp_map(group::log_map(lambda), rep);
}

GroupScalarFunction matrix_element(const Representation& rep, int r, int s) {
  return {[rep, r, s](const GroupElement& g) { return representation_matrix(rep, g)(r, s); },
          "psi[" + rep.name() + "](" + std::to_string(r) + "," + std::to_string(s) + ")"};
}

GeneratorActionReport verify_generator_action(const Representation& rep, int samples,
                                              std::uint64_t seed,
                                              const DerivativeStencil& st,
                                              double tolerance, bool throw_on_failure) {
  sampling::Rng rng(seed);
  GeneratorActionReport report;
  report.representation = rep.name();
  report.samples = samples;
  report.tolerance = tolerance;
  const GroupMatrixFunction psi = [&rep](const GroupElement& g) {
    return representation_matrix(rep, g);
  };
  for (int n = 0; n < samples; ++n) {
    const GroupElement lambda = sampling::random_group(rng, 1.5);
    const MatrixXc value = psi(lambda);
    for (std::size_t k = 0; k < kPairCount; ++k) {
      const MatrixXc numeric = derivative_matrix(psi, lambda, k, Side::left, st);
      const MatrixXc exact = rep.generators[k] * value;
      const double scale = std::max(scaled_abs_max(exact), 1e-300);
      Eigen::Index r = 0;
      Eigen::Index c = 0;
      const double err = (numeric - exact).cwiseAbs().maxCoeff(&r, &c) / scale;
      if (err > report.max_rel_error || report.worst_sample < 0) {
        report.max_rel_error = err;
        report.worst_pair = k;
        report.worst_sample = n;
        report.worst_r = static_cast<int>(r);
        report.worst_s = static_cast<int>(c);
      }
    }
  }
  report.pass = report.max_rel_error <= tolerance;
  if (!report.pass && throw_on_failure) {
    std::ostringstream msg;
    msg << "generator action mismatch in " << report.representation
        << ": relative error " << report.max_rel_error << " > " << tolerance
        << " at generator (" << kPairs[report.worst_pair].a << kPairs[report.worst_pair].b
        << "), sample " << report.worst_sample << ", entry (" << report.worst_r << ","
        << report.worst_s << ")";
    throw ToleranceExceeded(msg.str());
  }
  return report;
}

Complex numeric_commutator(const GroupScalarFunction& f, const GroupElement& lambda,
                           std::size_t ab, std::size_t cd, const DerivativeStencil& st) {
  auto nested = [&](std::size_t outer, std::size_t inner) {
    const GroupScalarFunction g{
        [&](const GroupElement& x) { return left_derivative(f, x, inner, st); }, ""};
    return left_derivative(g, lambda, outer, st);
  };
  return nested(ab, cd) - nested(cd, ab);
}

Complex bracket_combination(const GroupScalarFunction& f, const GroupElement& lambda,
                            std::size_t ab, std::size_t cd, const DerivativeStencil& st) {
  const auto [a, b] = kPairs[ab];
  const auto [c, d] = kPairs[cd];
  Complex total = 0.0;
  auto term = [&](double coeff, int i, int j) {
    if (coeff == 0.0 || i == j) return;
    const SignedPair sp = signed_pair(i, j);
    total += coeff * sp.sign * left_derivative(f, lambda, sp.pair, st);
  };
  term(eta(a, c), b, d);
  term(-eta(b, c), a, d);
  term(eta(b, d), a, c);
  term(-eta(a, d), b, c);
  return total;
}

MatrixXc bracket_combination(const Representation& rep, std::size_t ab, std::size_t cd) {
  const auto [a, b] = kPairs[ab];
  const auto [c, d] = kPairs[cd];
  MatrixXc total = MatrixXc::Zero(rep.dimension, rep.dimension);
  auto term = [&](double coeff, int i, int j) {
    if (coeff == 0.0 || i == j) return;
    const SignedPair sp = signed_pair(i, j);
    total += coeff * sp.sign * rep.generators[sp.pair];
  };
  term(eta(a, c), b, d);
  term(-eta(b, c), a, d);
  term(eta(b, d), a, c);
  term(-eta(a, d), b, c);
  return total;
}

Complex casimir_apply(const GroupScalarFunction& f, const GroupElement& lambda,
                      const DerivativeStencil& st) {
  // η diagonal: only (c,d) = (a,b) and (b,a) survive, both giving Ŝ_ab².
  Complex total = 0.0;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const GroupScalarFunction inner{
        [&](const GroupElement& x) { return left_derivative(f, x, k, st); }, ""};
    total += 2.0 * pair_sign(k) * left_derivative(inner, lambda, k, st);
  }
  return total;
}

MatrixXc matrix_casimir(const Representation& rep) {
  MatrixXc c = MatrixXc::Zero(rep.dimension, rep.dimension);
  for (std::size_t k = 0; k < kPairCount; ++k) {
    c += 2.0 * pair_sign(k) * rep.generators[k] * rep.generators[k];
  }
  return c;
}

std::string to_string(FieldPlacement p) {
  return p == FieldPlacement::direct ? "direct" : "inverse_transpose";
}

FourVector transformed_field(const std::function<FourVector(const FourVector&)>& b,
                             const FourVector& x, const GroupElement& lambda,
                             FieldPlacement placement) {
  const Matrix4 rho = group::vector_rep(lambda);
  if (placement == FieldPlacement::direct) return rho * b(x);
  return rho.inverse().transpose() * b(x);
}

CovariantFieldReport covariant_field_check(
    const std::function<FourVector(const FourVector&)>& b, int samples,
    std::uint64_t seed, const DerivativeStencil& st, double tolerance) {
  sampling::Rng rng(seed);
  CovariantFieldReport report;
  report.samples = samples;
  report.tolerance = tolerance;
  for (int n = 0; n < samples; ++n) {
    FourVector x;
    for (int i = 0; i < 4; ++i) x[i] = sampling::uniform(rng, -2.0, 2.0);
    const GroupElement lambda = sampling::random_group(rng, 1.0);
    for (FieldPlacement placement :
         {FieldPlacement::direct, FieldPlacement::inverse_transpose}) {
      const GroupMatrixFunction field = [&](const GroupElement& g) -> MatrixXc {
        return transformed_field(b, x, g, placement).cast<Complex>();
      };
      const FourVector value = transformed_field(b, x, lambda, placement);
      const double scale = std::max(1.0, value.norm());
      double worst = 0.0;
      for (std::size_t k = 0; k < kPairCount; ++k) {
        const auto [a, bb] = kPairs[k];
        const Eigen::Vector4d numeric =
            derivative_matrix(field, lambda, k, Side::left, st).real().col(0);
        for (int c = 0; c < 4; ++c) {
          const double expected = eta(a, c) * value[bb] - eta(bb, c) * value[a];
          worst = std::max(worst, std::abs(numeric[c] - expected) / scale);
        }
      }
      double& slot = placement == FieldPlacement::direct ? report.direct_error
                                                         : report.inverse_transpose_error;
      slot = std::max(slot, worst);
    }
  }
  if (report.direct_error <= tolerance) {
    report.selected = FieldPlacement::direct;
    report.pass = true;
  } else if (report.inverse_transpose_error <= tolerance) {
    report.selected = FieldPlacement::inverse_transpose;
    report.pass = true;
  }
  if (!report.pass) {
    std::ostringstream msg;
    msg << "field transformation law fails for both placements: direct error "
        << report.direct_error << ", inverse-transpose error "
        << report.inverse_transpose_error << " (tolerance " << tolerance << ")";
    throw ToleranceExceeded(msg.str());
  }
  return report;
}

}  // namespace spingeom::ops
