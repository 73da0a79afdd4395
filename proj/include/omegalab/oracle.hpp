#pragma once

// Brute-force references. Nothing here calls into the fast paths: factor
// counts come from trial division and sums are accumulated in long double,
// so agreement with the sieve-based code is evidence rather than tautology.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "omegalab/common.hpp"
#include "omegalab/correlation.hpp"

namespace omegalab::oracle {

using LComplex = std::complex<long double>;

/// Omega(n) by trial division.
inline unsigned omega_oracle(std::uint64_t n) {
  if (n == 0) throw ContractError("omega_oracle: n must be >= 1");
  unsigned c = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      n /= d;
      ++c;
    }
  return c + (n > 1 ? 1 : 0);
}

/// Number of distinct primes p <= cutoff dividing n, by trial division.
/// cutoff = UINT64_MAX gives omega(n).
inline unsigned distinct_oracle(std::uint64_t n, std::uint64_t cutoff = UINT64_MAX) {
  if (n == 0) throw ContractError("distinct_oracle: n must be >= 1");
  unsigned c = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    if (d <= cutoff) ++c;
    while (n % d == 0) n /= d;
  }
  if (n > 1 && n <= cutoff) ++c;
  return c;
}

inline int liouville_oracle(std::uint64_t n) { return omega_oracle(n) % 2 == 0 ? 1 : -1; }

inline bool is_prime_oracle(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Average over n <= N of a(Omega(n)) b(Omega(n+h)) by full enumeration.
inline Complex brute_correlation(const BoundedFunction& a, const BoundedFunction& b, std::uint64_t n,
                                 std::uint64_t h, Weighting w) {
  if (n > 1000000) throw CapacityError("brute_correlation: N above 10^6");
  if (n < 1) throw ContractError("brute_correlation: N must be >= 1");
  LComplex num = 0;
  long double mass = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const long double wt = w == Weighting::Cesaro ? 1.0L : 1.0L / static_cast<long double>(k);
    const Complex v = a(omega_oracle(k)) * b(omega_oracle(k + h));
    num += LComplex(v.real(), v.imag()) * wt;
    mass += wt;
  }
  const LComplex r = num / mass;
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// ---------------------------------------------------------------------------

/// f(n) = sum_i v_i 1[n = b_i mod a_i].
struct PeriodicCombo {
  struct Term {
    Complex coefficient;
    std::uint64_t modulus;
    std::uint64_t residue;
  };
  std::vector<Term> terms;

  explicit PeriodicCombo(std::vector<Term> t) : terms(std::move(t)) {
    for (const auto& x : terms) {
      if (x.modulus == 0) throw ContractError("PeriodicCombo: modulus must be positive");
      if (std::abs(x.coefficient) > 1.0 + 1e-12) throw ContractError("PeriodicCombo: |coefficient| must be <= 1");
    }
  }

  [[nodiscard]] std::uint64_t period() const {
    std::uint64_t r = 1;
    for (const auto& x : terms) r = std::lcm(r, x.modulus);
    return r;
  }

  [[nodiscard]] Complex operator()(std::uint64_t n) const {
    Complex s{};
    for (const auto& x : terms)
      if (n % x.modulus == x.residue % x.modulus) s += x.coefficient;
    return s;
  }
};

struct PeriodicIndependence {
  Complex lhs{};
  Complex product{};
  double scaled_error = 0.0;
};

/// E f g against E f E g over [N] for periodic f, g with coprime periods;
/// the error is scaled by N / (k l) for k and l indicator terms.
inline PeriodicIndependence periodic_independence_check(const PeriodicCombo& f, const PeriodicCombo& g,
                                                        std::uint64_t n) {
  if (n < 1) throw ContractError("periodic_independence_check: N must be >= 1");
  if (std::gcd(f.period(), g.period()) != 1) throw ContractError("periodic_independence_check: periods not coprime");
  if (f.terms.empty() || g.terms.empty()) throw ContractError("periodic_independence_check: empty combination");
  LComplex sf = 0, sg = 0, sfg = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const Complex a = f(k), b = g(k);
    sf += LComplex(a.real(), a.imag());
    sg += LComplex(b.real(), b.imag());
    const Complex ab = a * b;
    sfg += LComplex(ab.real(), ab.imag());
  }
  const long double nn = static_cast<long double>(n);
  const LComplex lhs = sfg / nn, prod = (sf / nn) * (sg / nn);
  PeriodicIndependence r;
  r.lhs = {static_cast<double>(lhs.real()), static_cast<double>(lhs.imag())};
  r.product = {static_cast<double>(prod.real()), static_cast<double>(prod.imag())};
  r.scaled_error = static_cast<double>(std::abs(lhs - prod) * nn /
                                       static_cast<long double>(f.terms.size() * g.terms.size()));
  return r;
}

// ---------------------------------------------------------------------------

struct MomentIdentity {
  double value = 0.0;  ///< |T1 - 2 T2 + T3|
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double t1_prediction = 0.0;  ///< k = 2: E^log_{p != q} sum_r (2/r)(1 - 1[r | p - q])
  double t1_error_bound = 0.0; ///< k = 2: |T1 - prediction| <= (2 R + 4 R (R - 1)) / N
};

/// The three-average combination of the k-th moment of
///   c_{p,q}(n) = sum_{r <= cutoff} (1[r | n+p] - 1[r | n+q])
/// over ordered pairs p != q of window primes (T1), against the same moment
/// for c(m) - c(n) with m in [M], n in [N] (T2) and m, l in [M] (T3).
inline MomentIdentity moment_identity_check(unsigned k, std::uint64_t n, std::span<const std::uint64_t> window,
                                            std::uint64_t cutoff, std::uint64_t m = 0) {
  if (k != 1 && k != 2) throw ContractError("moment_identity_check: k must be 1 or 2");
  if (n > 100000) throw CapacityError("moment_identity_check: N above 10^5");
  if (n < 1 || window.empty()) throw ContractError("moment_identity_check: need N >= 1 and a nonempty window");
  if (m == 0) m = n;
  for (auto p : window)
    if (!is_prime_oracle(p)) throw ContractError("moment_identity_check: window contains a non-prime");

  std::vector<std::uint64_t> rs;
  for (std::uint64_t r = 2; r <= cutoff; ++r)
    if (is_prime_oracle(r)) rs.push_back(r);
  auto c = [&](std::uint64_t x) {
    long double s = 0;
    for (auto r : rs) s += (x % r == 0) ? 1 : 0;
    return s;
  };
  auto kpow = [k](long double x) { return k == 1 ? x : x * x; };

  MomentIdentity out;
  long double t1 = 0, pred = 0, pair_mass = 0;
  for (auto p : window)
    for (auto q : window) {
      if (p == q) continue;
      const long double w = 1.0L / static_cast<long double>(p * q);
      long double s = 0;
      for (std::uint64_t x = 1; x <= n; ++x) s += kpow(c(x + p) - c(x + q));
      t1 += w * s / static_cast<long double>(n);
      long double pr = 0;
      for (auto r : rs) {
        const std::uint64_t diff = p > q ? p - q : q - p;
        if (diff % r != 0) pr += 2.0L / static_cast<long double>(r);
      }
      pred += w * pr;
      pair_mass += w;
    }
  if (pair_mass > 0) {
    out.t1 = static_cast<double>(t1 / pair_mass);
    out.t1_prediction = static_cast<double>(pred / pair_mass);
  }

  // T2 and T3 through the histogram of c over [M] and [N]
  const std::size_t width = rs.size() + 1;
  std::vector<long double> hm(width, 0), hn(width, 0);
  for (std::uint64_t x = 1; x <= m; ++x) hm[static_cast<std::size_t>(c(x))] += 1;
  for (std::uint64_t x = 1; x <= n; ++x) hn[static_cast<std::size_t>(c(x))] += 1;
  long double t2 = 0, t3 = 0;
  for (std::size_t i = 0; i < width; ++i)
    for (std::size_t j = 0; j < width; ++j) {
      const long double d = kpow(static_cast<long double>(i) - static_cast<long double>(j));
      t2 += hm[i] * hn[j] * d;
      t3 += hm[i] * hm[j] * d;
    }
  out.t2 = static_cast<double>(t2 / (static_cast<long double>(m) * static_cast<long double>(n)));
  out.t3 = static_cast<double>(t3 / (static_cast<long double>(m) * static_cast<long double>(m)));
  out.value = std::abs(out.t1 - 2.0 * out.t2 + out.t3);
  const double rr = static_cast<double>(rs.size());
  out.t1_error_bound = (2.0 * rr + 4.0 * rr * (rr - 1.0)) / static_cast<double>(n);
  return out;
}

}  // namespace omegalab::oracle
