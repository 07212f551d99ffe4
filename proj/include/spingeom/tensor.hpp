#pragma once

// Flat-space index conventions shared by every module.
//
// Metric signature is (+,-,-,-). Antisymmetric objects are stored as their six
// ordered pairs (a<b) in the order 01, 02, 03, 12, 13, 23; full double sums
// over (a,b) therefore pick up a factor 2 relative to sums over pairs.

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace spingeom {

using FourVector = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

inline constexpr std::array<double, 4> kMetric{1.0, -1.0, -1.0, -1.0};

constexpr double eta(int a, int b) { return a == b ? kMetric[a] : 0.0; }

inline constexpr std::size_t kPairCount = 6;

struct Pair {
  int a;
  int b;
  friend constexpr bool operator==(Pair, Pair) = default;
};

inline constexpr std::array<Pair, kPairCount> kPairs{
    Pair{0, 1}, Pair{0, 2}, Pair{0, 3}, Pair{1, 2}, Pair{1, 3}, Pair{2, 3}};

/// Position of (a,b), a<b, in kPairs.
constexpr std::size_t pair_index(int a, int b) {
  for (std::size_t k = 0; k < kPairCount; ++k) {
    if (kPairs[k].a == a && kPairs[k].b == b) return k;
  }
  return kPairCount;
}

/// η^{aa} η^{bb} for the pair: +1 for spatial pairs, -1 for (0,i).
constexpr double pair_sign(std::size_t k) {
  return kMetric[kPairs[k].a] * kMetric[kPairs[k].b];
}

inline double minkowski_dot(const FourVector& u, const FourVector& v) {
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

inline Matrix4 metric_matrix() {
  return Eigen::Vector4d(kMetric[0], kMetric[1], kMetric[2], kMetric[3])
      .asDiagonal();
}

/// Real antisymmetric 4×4 array in ordered-pair storage. The tag keeps spin
/// momenta, algebra coordinates and field strengths from being mixed up.
template <class Tag>
class PairArray {
 public:
  PairArray() { values_.fill(0.0); }
  explicit PairArray(const std::array<double, kPairCount>& v) : values_(v) {}

  static PairArray from_matrix(const Matrix4& m) {
    PairArray out;
    for (std::size_t k = 0; k < kPairCount; ++k) {
      out.values_[k] = 0.5 * (m(kPairs[k].a, kPairs[k].b) -
                              m(kPairs[k].b, kPairs[k].a));
    }
    return out;
  }

  static PairArray unit(std::size_t k) {
    PairArray out;
    out.values_[k] = 1.0;
    return out;
  }

  /// Antisymmetric access for any (a,b).
  double operator()(int a, int b) const {
    if (a == b) return 0.0;
    return a < b ? values_[pair_index(a, b)] : -values_[pair_index(b, a)];
  }

  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  const std::array<double, kPairCount>& values() const { return values_; }

  Matrix4 full() const {
    Matrix4 m = Matrix4::Zero();
    for (std::size_t k = 0; k < kPairCount; ++k) {
      m(kPairs[k].a, kPairs[k].b) = values_[k];
      m(kPairs[k].b, kPairs[k].a) = -values_[k];
    }
    return m;
  }

  /// Indices raised with η on both slots.
  PairArray raised() const {
    PairArray out;
    for (std::size_t k = 0; k < kPairCount; ++k) {
      out.values_[k] = pair_sign(k) * values_[k];
    }
    return out;
  }

  double norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
  }

  PairArray& operator+=(const PairArray& o) {
    for (std::size_t k = 0; k < kPairCount; ++k) values_[k] += o.values_[k];
    return *this;
  }
  PairArray& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }
  friend PairArray operator+(PairArray l, const PairArray& r) { return l += r; }
  friend PairArray operator-(PairArray l, const PairArray& r) {
    return l += (r * -1.0);
  }
  friend PairArray operator*(PairArray l, double s) { return l *= s; }
  friend PairArray operator*(double s, PairArray l) { return l *= s; }

 private:
  std::array<double, kPairCount> values_;
};

struct SpinTag;
struct AlgebraTag;
struct FieldStrengthTag;

using SpinTensor = PairArray<SpinTag>;
using AlgebraCoefficients = PairArray<AlgebraTag>;
using FieldStrength = PairArray<FieldStrengthTag>;

}  // namespace spingeom
