#pragma once

// Spin operators Ŝ_ab realized as directional derivatives along one-parameter
// subgroups acting on SL(2,C) from the left or from the right.
//
//   (Ŝ_ab f)(Λ)  = d/dt f(exp(tΣ_ab) Λ) |_{t=0}     (left action)
//   (Ŝʳ_ab f)(Λ) = d/dt f(Λ exp(tΣ_ab)) |_{t=0}     (right action)
//
// Σ_ab is the fundamental generator, i.e. the curve is exp_map with
// coefficient t/2 on the pair under the factor-2 storage convention, which is
// what makes Ŝ_ab ψ^D = Σ^D_ab ψ^D hold without extra factors.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spingeom/group.hpp"

namespace spingeom::ops {

using group::Complex;
using group::GroupElement;
using group::MatrixXc;
using group::Representation;

struct GroupScalarFunction {
  std::function<Complex(const GroupElement&)> eval;
  std::string tag;
};

using GroupMatrixFunction = std::function<MatrixXc(const GroupElement&)>;

/// Central differences with Richardson extrapolation over `levels` step
/// halvings. h ∈ [1e−6, 1e−1], 1 ≤ levels ≤ 4.
struct DerivativeStencil {
  double h = 1e-3;
  int levels = 2;

  void validate() const;
};

enum class Side { left, right };

namespace detail {

/// Extrapolated derivative at t = 0 of a smooth curve g. Value must support
/// subtraction and scaling by double.
template <class Curve>
auto richardson_central(Curve&& g, const DerivativeStencil& st) {
  using Value = decltype(g(0.0));
  std::vector<Value> table;
  table.reserve(static_cast<std::size_t>(st.levels));
  double h = st.h;
  for (int k = 0; k < st.levels; ++k, h *= 0.5) {
    table.push_back(Value((g(h) - g(-h)) * (0.5 / h)));
  }
  // Tableau: error terms are even powers of h.
  double factor = 4.0;
  for (int col = 1; col < st.levels; ++col, factor *= 4.0) {
    for (int k = st.levels - 1; k >= col; --k) {
      table[k] = Value((table[k] * factor - table[k - 1]) * (1.0 / (factor - 1.0)));
    }
  }
  return table.back();
}

}  // namespace detail

GroupElement act(Side side, std::size_t pair, double t, const GroupElement& lambda);

Complex left_derivative(const GroupScalarFunction& f, const GroupElement& lambda,
                        std::size_t pair, const DerivativeStencil& st = {});

Complex right_derivative(const GroupScalarFunction& f, const GroupElement& lambda,
                         std::size_t pair, const DerivativeStencil& st = {});

/// Entrywise derivative of a matrix-valued function; shares function
/// evaluations across entries.
MatrixXc derivative_matrix(const GroupMatrixFunction& f, const GroupElement& lambda,
                           std::size_t pair, Side side, const DerivativeStencil& st = {});

/// D(Λ) = exp_map(log_map(Λ), rep): the functions ψ^D_rs(ω) on the group.
MatrixXc representation_matrix(const Representation& rep, const GroupElement& lambda);

/// ψ^D_rs as a scalar function on the group.
GroupScalarFunction matrix_element(const Representation& rep, int r, int s);

struct GeneratorActionReport {
  std::string representation;
  int samples = 0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  std::size_t worst_pair = 0;
  int worst_sample = -1;
  int worst_r = -1;
  int worst_s = -1;
  bool pass = false;
};

/// Compares Ŝ_ab ψ^D_rs against (Σ^D_ab ψ^D)_rs at random group points for
/// all six generators. The error for each (generator, sample) is the largest
/// entry mismatch divided by the largest entry of Σ^D_ab ψ^D.
/// Throws ToleranceExceeded (message names the worst offender) unless
/// `throw_on_failure` is false.
GeneratorActionReport verify_generator_action(const Representation& rep, int samples,
                                              std::uint64_t seed,
                                              const DerivativeStencil& st = {},
                                              double tolerance = 1e-6,
                                              bool throw_on_failure = true);

/// (Ŝ_ab Ŝ_cd − Ŝ_cd Ŝ_ab) f at Λ by nested stencils.
Complex numeric_commutator(const GroupScalarFunction& f, const GroupElement& lambda,
                           std::size_t ab, std::size_t cd,
                           const DerivativeStencil& st = {});

/// (η_ac Ŝ_bd − η_bc Ŝ_ad + η_bd Ŝ_ac − η_ad Ŝ_bc) f at Λ.
Complex bracket_combination(const GroupScalarFunction& f, const GroupElement& lambda,
                            std::size_t ab, std::size_t cd,
                            const DerivativeStencil& st = {});

/// Generator-algebra combination η_ac Σ_bd − η_bc Σ_ad + η_bd Σ_ac − η_ad Σ_bc.
MatrixXc bracket_combination(const Representation& rep, std::size_t ab, std::size_t cd);

/// η^{ac} η^{bd} Ŝ_ab Ŝ_cd f summed over all a, b, c, d.
Complex casimir_apply(const GroupScalarFunction& f, const GroupElement& lambda,
                      const DerivativeStencil& st = {});

/// The same contraction on the generator matrices.
MatrixXc matrix_casimir(const Representation& rep);

/// How the field array B_c(x, Λ) is built from b(x).
///  direct            : B = vector_rep(Λ) · b
///  inverse_transpose : B_c = [vector_rep(Λ)⁻¹]^d_c b_d
enum class FieldPlacement { direct, inverse_transpose };

std::string to_string(FieldPlacement p);

FourVector transformed_field(const std::function<FourVector(const FourVector&)>& b,
                             const FourVector& x, const GroupElement& lambda,
                             FieldPlacement placement);

struct CovariantFieldReport {
  int samples = 0;
  double tolerance = 0.0;
  double direct_error = 0.0;
  double inverse_transpose_error = 0.0;
  FieldPlacement selected = FieldPlacement::direct;
  bool pass = false;
};

/// Checks Ŝ_ab B_c = η_ac B_b − η_bc B_a at random (x, Λ) for both
/// placements and selects the one that satisfies it. Throws
/// ToleranceExceeded when neither does. Errors are absolute, scaled by
/// max(1, |b(x)|).
CovariantFieldReport covariant_field_check(
    const std::function<FourVector(const FourVector&)>& b, int samples,
    std::uint64_t seed, const DerivativeStencil& st = {}, double tolerance = 1e-6);

}  // namespace spingeom::ops
