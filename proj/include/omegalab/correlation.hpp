#pragma once

// Two-point correlations E a(Omega(n)) b(Omega(n+h)), the predictions they are
// compared against, and the l-resolved sums that are equivalent to them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "omegalab/almost_prime.hpp"
#include "omegalab/averaging.hpp"
#include "omegalab/census.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

/// A tabulated function l -> C on l = 0..64 with |values| <= bound. Arguments
/// outside the table (including negative ones) map to default_value.
class BoundedFunction {
 public:
  static constexpr std::size_t kTableSize = 65;

  BoundedFunction() : BoundedFunction(1.0, std::vector<Complex>(kTableSize, Complex{1.0, 0.0}), {}, "const") {}

  BoundedFunction(double bound, std::vector<Complex> values, Complex default_value = {}, std::string label = {})
      : bound_(bound), values_(std::move(values)), default_(default_value), label_(std::move(label)) {
    if (!(bound_ > 0.0)) throw ContractError("BoundedFunction: bound must be positive");
    if (values_.size() > kTableSize) throw ContractError("BoundedFunction: table covers at most l <= 64");
    values_.resize(kTableSize, default_);
    for (const auto& v : values_)
      if (std::abs(v) > bound_ + 1e-12) throw ContractError("BoundedFunction: value exceeds bound");
    if (std::abs(default_) > bound_ + 1e-12) throw ContractError("BoundedFunction: default exceeds bound");
  }

  Complex operator()(std::int64_t l) const {
    return (l >= 0 && static_cast<std::size_t>(l) < kTableSize) ? values_[static_cast<std::size_t>(l)] : default_;
  }

  [[nodiscard]] double bound() const { return bound_; }
  [[nodiscard]] Complex default_value() const { return default_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] std::span<const Complex> values() const { return values_; }

  [[nodiscard]] BoundedFunction conj() const {
    std::vector<Complex> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](Complex z) { return std::conj(z); });
    return {bound_, std::move(v), std::conj(default_), label_.empty() ? label_ : "conj(" + label_ + ")"};
  }

  static BoundedFunction from_function(const std::function<Complex(std::int64_t)>& f, double bound,
                                       Complex default_value = {}, std::string label = {}) {
    std::vector<Complex> v(kTableSize);
    for (std::size_t l = 0; l < kTableSize; ++l) v[l] = f(static_cast<std::int64_t>(l));
    return {bound, std::move(v), default_value, std::move(label)};
  }

  static BoundedFunction constant(Complex c = {1.0, 0.0}) {
    const double b = std::max(std::abs(c), 1.0);
    return {b, std::vector<Complex>(kTableSize, c), Complex{}, "const"};
  }

  /// (-1)^l: evaluated at Omega(n) this is the Liouville function.
  static BoundedFunction parity() {
    return from_function([](std::int64_t l) { return Complex{(l % 2 == 0) ? 1.0 : -1.0, 0.0}; }, 1.0, {},
                         "parity");
  }

  static BoundedFunction indicator(std::int64_t l0) {
    return from_function([l0](std::int64_t l) { return Complex{l == l0 ? 1.0 : 0.0, 0.0}; }, 1.0, {},
                         "indicator:" + std::to_string(l0));
  }

  /// e(xi * l / period).
  static BoundedFunction fourier_mode(double xi, double period) {
    if (!(period > 0.0)) throw ContractError("fourier_mode: period must be positive");
    return from_function([=](std::int64_t l) { return unit_phase(xi * static_cast<double>(l) / period); }, 1.0,
                         {}, "fourier-mode");
  }

  /// Values uniform on the closed unit disc, reproducible from the seed on
  /// every platform (mt19937_64 output is standardized; the conversion to
  /// doubles is done here rather than through a distribution object).
  static BoundedFunction random_disc(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    std::vector<Complex> v(kTableSize);
    for (auto& z : v) {
      const double r = std::sqrt(unit());
      const double theta = 2.0 * std::numbers::pi * unit();
      z = std::polar(std::min(r, 1.0), theta);
    }
    return {1.0, std::move(v), {}, "random:" + std::to_string(seed)};
  }

 private:
  double bound_;
  std::vector<Complex> values_;
  Complex default_;
  std::string label_;
};

struct CorrelationReport {
  std::uint64_t n = 0;
  Complex lhs{};
  Complex prediction{};
  double error = 0.0;
  Weighting weighting = Weighting::Logarithmic;
  std::map<std::string, std::string> metadata;
};

// ---------------------------------------------------------------------------
// Averages read off a census

/// E a(Omega(n)) over n <= N in the given weighting.
inline Complex omega_mean(const BoundedFunction& a, const OmegaCensus& c, Weighting w) {
  ComplexSum s;
  for (std::size_t l = 0; l < c.dim; ++l) {
    const double mass = w == Weighting::Cesaro ? static_cast<double>(c.counts[l]) : c.log_weights[l];
    if (mass != 0.0) s.add(a(static_cast<std::int64_t>(l)) * mass);
  }
  return s.value() / (w == Weighting::Cesaro ? static_cast<double>(c.n) : c.harmonic);
}

/// E a(Omega(n) + da) b(Omega(n+h) + db) over n <= N.
inline Complex joint_mean(const BoundedFunction& a, const BoundedFunction& b, const OmegaCensus& c,
                          std::uint64_t h, Weighting w, std::int64_t da = 0, std::int64_t db = 0) {
  const JointTable& j = c.joint_for(h);
  ComplexSum s;
  for (std::size_t l = 0; l < j.dim; ++l) {
    const Complex al = a(static_cast<std::int64_t>(l) + da);
    for (std::size_t k = 0; k < j.dim; ++k) {
      const double mass = w == Weighting::Cesaro ? static_cast<double>(j.count(l, k)) : j.log_weight(l, k);
      if (mass != 0.0) s.add(al * b(static_cast<std::int64_t>(k) + db) * mass);
    }
  }
  return s.value() / (w == Weighting::Cesaro ? static_cast<double>(c.n) : c.harmonic);
}

inline Complex two_point_lhs(const BoundedFunction& a, const BoundedFunction& b, const OmegaCensus& c,
                             std::uint64_t h = 1, Weighting w = Weighting::Logarithmic) {
  if (c.n < 3) throw ContractError("two_point_lhs: N must be >= 3");
  if (h < 1) throw ContractError("two_point_lhs: shift must be >= 1");
  if (!c.has_shift(h)) throw ContractError("two_point_lhs: factor counts do not cover [1, N+h]");
  return joint_mean(a, b, c, h, w);
}

/// Log-averaged correlation against the product of Cesaro means.
inline CorrelationReport theorem_a_report(const BoundedFunction& a, const BoundedFunction& b,
                                          const OmegaCensus& c) {
  if (c.n < 1000) throw ContractError("theorem_a_report: N must be >= 10^3");
  CorrelationReport r;
  r.n = c.n;
  r.weighting = Weighting::Logarithmic;
  r.lhs = two_point_lhs(a, b, c, 1, Weighting::Logarithmic);
  r.prediction = omega_mean(a, c, Weighting::Cesaro) * omega_mean(b, c, Weighting::Cesaro);
  r.error = std::abs(r.lhs - r.prediction);
  r.metadata = {{"a", a.label()}, {"b", b.label()}, {"shift", "1"}};
  return r;
}

/// The Gaussian double sum over k, l in [0, ceil(mu + 12 sigma)].
inline Complex theorem_b_prediction(const BoundedFunction& a, const BoundedFunction& b, std::uint64_t n) {
  if (n < 1000) throw ContractError("theorem_b_prediction: N must be >= 10^3");
  const auto m = GaussianModel::for_n(static_cast<double>(n));
  const auto top = static_cast<std::int64_t>(std::ceil(m.mu + 12.0 * m.sigma));
  ComplexSum sa, sb;
  for (std::int64_t k = 0; k <= top; ++k) {
    const double f = gaussian_density(static_cast<double>(k), m);
    sa.add(a(k) * f);
    sb.add(b(k) * f);
  }
  return sa.value() * sb.value();
}

/// E^log over n in P_l of a(Omega(n+1)); nullopt when P_l meets [N] nowhere.
inline std::optional<Complex> conditional_shift_mean(const BoundedFunction& a, const OmegaCensus& c,
                                                     std::size_t l) {
  if (l >= c.dim || c.counts[l] == 0) return std::nullopt;
  const JointTable& j = c.joint_for(1);
  ComplexSum s;
  for (std::size_t k = 0; k < j.dim; ++k) {
    const double w = j.log_weight(l, k);
    if (w != 0.0) s.add(a(static_cast<std::int64_t>(k)) * w);
  }
  return s.value() / c.log_weights[l];
}

/// sum_l pi_bar_l |E^log_{P_l} a(Omega(n+1)) - E a(Omega(n))|.
inline double theorem_c_sum(const BoundedFunction& a, const OmegaCensus& c) {
  if (c.n < 1000) throw ContractError("theorem_c_sum: N must be >= 10^3");
  const Complex mean = omega_mean(a, c, Weighting::Cesaro);
  RealSum s;
  for (std::size_t l = 0; l < c.dim; ++l)
    if (auto x = conditional_shift_mean(a, c, l)) s.add(c.pi_bar(l) * std::abs(*x - mean));
  return s.value();
}

struct TypicalExceptions {
  std::size_t exceptions = 0;
  std::size_t typical_size = 0;
  double allowance = 0.0;  ///< epsilon * |T_{A,N}|
  bool within_allowance = false;
};

/// Counts l in T_{A,N} whose conditional shift mean is farther than
/// `threshold` from E a(Omega(n)). Values of l with no l-almost prime in [N]
/// have no conditional mean and are not counted.
inline TypicalExceptions typical_ell_exceptions(const BoundedFunction& a, const OmegaCensus& c, double big_a,
                                                double epsilon, double threshold) {
  if (!(epsilon > 0.0)) throw ContractError("typical_ell_exceptions: epsilon must be positive");
  const auto range = typical_range(c.n, big_a);
  if (range.members.empty()) throw EmptyDomainError("typical_ell_exceptions: empty typical range");
  const Complex mean = omega_mean(a, c, Weighting::Cesaro);
  TypicalExceptions out;
  out.typical_size = range.members.size();
  for (auto l : range.members) {
    if (l < 0) continue;
    auto x = conditional_shift_mean(a, c, static_cast<std::size_t>(l));
    if (x && std::abs(*x - mean) > threshold) ++out.exceptions;
  }
  out.allowance = epsilon * static_cast<double>(out.typical_size);
  out.within_allowance = static_cast<double>(out.exceptions) <= out.allowance;
  return out;
}

struct PrimeShiftIdentity {
  Complex lhs{};
  Complex rhs{};
  double gap = 0.0;
};

/// Compares E^log a(Omega(n)) b(Omega(n+1)) with the log-average over window
/// primes p of E^log a(Omega(n)-1) b(Omega(n+p)-1). The census must carry a
/// joint table for shift 1 and for every window prime.
inline PrimeShiftIdentity prime_shift_identity(const BoundedFunction& a, const BoundedFunction& b,
                                               const OmegaCensus& c, std::span<const std::uint64_t> window) {
  if (window.empty()) throw ContractError("prime_shift_identity: empty prime window");
  const std::uint64_t pmax = *std::max_element(window.begin(), window.end());
  const auto table = enumerate_primes(std::max<std::uint64_t>(pmax, 2));
  for (auto p : window)
    if (!table.contains(p)) throw ContractError("prime_shift_identity: window contains a non-prime");
  if (c.n < 10 * pmax) throw ContractError("prime_shift_identity: N must be >= 10 * max window prime");

  PrimeShiftIdentity out;
  out.lhs = two_point_lhs(a, b, c, 1, Weighting::Logarithmic);
  ComplexSum num;
  RealSum mass;
  for (auto p : window) {
    if (!c.has_shift(p)) throw ContractError("prime_shift_identity: census lacks shift for a window prime");
    const double w = 1.0 / static_cast<double>(p);
    num.add(joint_mean(a, b, c, p, Weighting::Logarithmic, -1, -1) * w);
    mass.add(w);
  }
  out.rhs = num.value() / mass.value();
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

struct KPointResult {
  std::size_t k = 0;
  Complex value{};
  Complex product{};
  double gap = 0.0;
  Weighting weighting = Weighting::Cesaro;
  const char* label = "EXPLORATORY";
};

/// E a_1(Omega(n)) ... a_k(Omega(n+k-1)) against the product of the single
/// means, both in the same weighting (so k = 1 has gap 0 identically).
inline KPointResult k_point_explore(std::span<const BoundedFunction> fs, std::uint64_t n, Weighting w,
                                    const SieveConfig& cfg = {}) {
  const std::size_t k = fs.size();
  if (k == 0) throw ContractError("k_point_explore: need at least one function");
  if (k > 4) throw CapacityError("k_point_explore: k > 4 is not supported");
  if (n < 1000) throw ContractError("k_point_explore: N must be >= 10^3");

  struct Partial {
    ComplexSum joint;
    std::vector<ComplexSum> single;
    RealSum mass;
  };
  SieveRequest req;
  req.lookahead = k - 1;
  Partial total{{}, std::vector<ComplexSum>(k), {}};
  sieve_segments(
      1, n + 1, req, cfg,
      [&](const SegmentView& v) {
        Partial p{{}, std::vector<ComplexSum>(k), {}};
        for (std::uint64_t i = 0; i < v.owned(); ++i) {
          const double wt = w == Weighting::Cesaro ? 1.0 : 1.0 / static_cast<double>(v.lo + i);
          Complex prod{wt, 0.0};
          for (std::size_t j = 0; j < k; ++j) prod *= fs[j](v.big[i + j]);
          p.joint.add(prod);
          const Complex here_w{wt, 0.0};
          for (std::size_t j = 0; j < k; ++j) p.single[j].add(fs[j](v.big[i]) * here_w);
          p.mass.add(wt);
        }
        return p;
      },
      [&](Partial&& p) {
        total.joint.merge(p.joint);
        for (std::size_t j = 0; j < k; ++j) total.single[j].merge(p.single[j]);
        total.mass.merge(p.mass);
      });

  const double mass = w == Weighting::Cesaro ? static_cast<double>(n) : total.mass.value();
  KPointResult r;
  r.k = k;
  r.weighting = w;
  r.value = total.joint.value() / mass;
  r.product = {1.0, 0.0};
  for (std::size_t j = 0; j < k; ++j) r.product *= total.single[j].value() / mass;
  r.gap = std::abs(r.value - r.product);
  return r;
}

// ---------------------------------------------------------------------------

struct TheoremCBridge {
  BoundedFunction sign;  ///< b(l) = conj(D_l)/|D_l|
  double theorem_a_error = 0.0;
  double theorem_c = 0.0;
  double l1_gap = 0.0;
  double lower_bound = 0.0;  ///< theorem_c - ||a|| * l1_gap
  bool holds = false;
};

/// Builds the unimodular b that aligns every per-l discrepancy
///   D_l = E^log a(Omega(n+1)) 1_{P_l}(n) - (E a(Omega(n))) pi_bar_l
/// so that the Theorem-A error of (b, a) equals sum_l |D_l|, and checks it
/// against theorem_c_sum - ||a|| * density_l1_gap.
inline TheoremCBridge theorem_c_bridge(const BoundedFunction& a, const OmegaCensus& c) {
  const JointTable& j = c.joint_for(1);
  const Complex mean = omega_mean(a, c, Weighting::Cesaro);
  std::vector<Complex> sign(BoundedFunction::kTableSize, Complex{1.0, 0.0});
  for (std::size_t l = 0; l < c.dim && l < sign.size(); ++l) {
    ComplexSum s;
    for (std::size_t k = 0; k < j.dim; ++k) s.add(a(static_cast<std::int64_t>(k)) * j.log_weight(l, k));
    const Complex d = s.value() / c.harmonic - mean * c.pi_bar(l);
    if (std::abs(d) > 0.0) sign[l] = std::conj(d) / std::abs(d);
  }
  TheoremCBridge out{BoundedFunction(1.0, std::move(sign), {}, "bridge-sign")};
  out.theorem_a_error = theorem_a_report(out.sign, a, c).error;
  out.theorem_c = theorem_c_sum(a, c);
  out.l1_gap = density_l1_gap(density_table(c));
  out.lower_bound = out.theorem_c - a.bound() * out.l1_gap;
  out.holds = out.theorem_a_error >= out.lower_bound - 1e-12;
  return out;
}

}  // namespace omegalab
