#pragma once

// Cesaro and logarithmic averages with compensated accumulation.

#include <cmath>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "omegalab/common.hpp"

namespace omegalab {

/// Neumaier-compensated running sum. Partial sums from disjoint ranges can be
/// merged with `merge`; merging in a fixed order gives bit-stable totals.
template <typename T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  void add(T x) {
    const T t = sum_ + x;
    if constexpr (std::is_same_v<T, Complex>) {
      comp_ += Complex(two_sum_err(sum_.real(), x.real(), t.real()),
                       two_sum_err(sum_.imag(), x.imag(), t.imag()));
    } else {
      comp_ += two_sum_err(sum_, x, t);
    }
    sum_ = t;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }

  [[nodiscard]] T value() const { return sum_ + comp_; }

 private:
  static double two_sum_err(double s, double x, double t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }

  T sum_{};
  T comp_{};
};

using RealSum = CompensatedSum<double>;
using ComplexSum = CompensatedSum<Complex>;

enum class Weighting { Cesaro, Logarithmic };

inline const char* to_string(Weighting w) {
  return w == Weighting::Cesaro ? "cesaro" : "log";
}

/// Result of an average: the value, the total weight, and the element count.
struct WeightedAverage {
  Weighting weight_kind = Weighting::Cesaro;
  Complex value{};
  double mass = 0.0;
  std::uint64_t count = 0;
};

/// Streaming accumulator for either weighting. Indices must be >= 1 for the
/// logarithmic weighting.
class AverageAccumulator {
 public:
  explicit AverageAccumulator(Weighting w) : kind_(w) {}

  void add(std::uint64_t n, Complex v) {
    const double w = kind_ == Weighting::Cesaro ? 1.0 : 1.0 / static_cast<double>(n);
    num_.add(v * w);
    mass_.add(w);
    ++count_;
  }

  void merge(const AverageAccumulator& other) {
    num_.merge(other.num_);
    mass_.merge(other.mass_);
    count_ += other.count_;
  }

  [[nodiscard]] WeightedAverage result() const {
    if (count_ == 0) throw EmptyDomainError("average over an empty index set");
    const double mass = kind_ == Weighting::Cesaro ? static_cast<double>(count_) : mass_.value();
    return {kind_, num_.value() / mass, mass, count_};
  }

 private:
  Weighting kind_;
  ComplexSum num_;
  RealSum mass_;
  std::uint64_t count_ = 0;
};

/// Cesaro average of `values`.
inline WeightedAverage cesaro_avg(std::span<const Complex> values) {
  AverageAccumulator acc(Weighting::Cesaro);
  for (std::size_t i = 0; i < values.size(); ++i) acc.add(i + 1, values[i]);
  return acc.result();
}

/// Logarithmic average of values[i] at indices[i].
inline WeightedAverage log_avg(std::span<const std::uint64_t> indices,
                               std::span<const Complex> values) {
  if (indices.size() != values.size()) throw ContractError("log_avg: index/value size mismatch");
  AverageAccumulator acc(Weighting::Logarithmic);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (indices[i] == 0) throw ContractError("log_avg: indices must be >= 1");
    acc.add(indices[i], values[i]);
  }
  return acc.result();
}

/// Logarithmic average over [N] where values[n-1] = f(n).
inline WeightedAverage log_avg(std::span<const Complex> values) {
  AverageAccumulator acc(Weighting::Logarithmic);
  for (std::size_t i = 0; i < values.size(); ++i) acc.add(i + 1, values[i]);
  return acc.result();
}

/// sum_{n<=N} 1/n, compensated.
inline double harmonic_number(std::uint64_t n) {
  RealSum s;
  for (std::uint64_t k = 1; k <= n; ++k) s.add(1.0 / static_cast<double>(k));
  return s.value();
}

struct CesaroLogDecomposition {
  Complex lhs{};
  Complex rhs{};
  double residual = 0.0;
  /// Integer range of M actually averaged: M in [m_lo, m_hi].
  std::uint64_t m_lo = 0;
  std::uint64_t m_hi = 0;
};

/// Compares the log average of f over [N] with the log average over
/// M in (N^eps, N) of the Cesaro averages of f over [M]. values[n-1] = f(n).
inline CesaroLogDecomposition cesaro_to_log_decompose(std::span<const Complex> values,
                                                      double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw ContractError("epsilon must lie in (0, 1/2)");
  const std::uint64_t n_max = values.size();
  if (n_max < 3) throw ContractError("cesaro_to_log_decompose needs N >= 3");

  CesaroLogDecomposition out;
  out.lhs = log_avg(values).value;

  // integers M with N^eps < M < N
  const double lower = std::pow(static_cast<double>(n_max), epsilon);
  std::uint64_t m_lo = static_cast<std::uint64_t>(std::floor(lower)) + 1;
  const std::uint64_t m_hi = n_max - 1;
  if (m_lo > m_hi) throw EmptyDomainError("no integer M in (N^eps, N)");
  out.m_lo = m_lo;
  out.m_hi = m_hi;

  ComplexSum prefix;
  AverageAccumulator outer(Weighting::Logarithmic);
  for (std::uint64_t m = 1; m <= m_hi; ++m) {
    prefix.add(values[m - 1]);
    if (m >= m_lo) outer.add(m, prefix.value() / static_cast<double>(m));
  }
  out.rhs = outer.result().value;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace omegalab
