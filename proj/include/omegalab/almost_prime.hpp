#pragma once

// Distribution of Omega over [N]: densities of l-almost primes, the Gaussian
// model with mean and variance loglog N, Erdos-Kac distance, Turan-Kubilius.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "omegalab/averaging.hpp"
#include "omegalab/census.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

struct GaussianModel {
  double mu = 0.0;
  double sigma = 1.0;

  /// mu = sigma^2 = loglog N.
  static GaussianModel for_n(double n) {
    if (n <= std::exp(1.0)) throw ContractError("GaussianModel: N must exceed e");
    const double ll = loglog(n);
    return {ll, std::sqrt(ll)};
  }
};

inline double gaussian_density(double x, const GaussianModel& m) {
  if (!(m.sigma > 0.0)) throw ContractError("gaussian_density: sigma must be positive");
  const double z = (x - m.mu) / m.sigma;
  return std::exp(-0.5 * z * z) / (m.sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// Standard normal CDF through erfc, accurate in both tails.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// ---------------------------------------------------------------------------

struct DensityRow {
  std::size_t ell = 0;
  std::uint64_t count = 0;
  double pi_bar = 0.0;
  double pi_bar_log = 0.0;
  double gaussian = 0.0;

  [[nodiscard]] double ratio() const { return pi_bar / gaussian; }
};

struct DensityTable {
  std::uint64_t n = 0;
  GaussianModel model;
  std::vector<DensityRow> rows;  // one per l = 0 .. dim-1

  [[nodiscard]] const DensityRow& at(std::size_t ell) const {
    if (ell >= rows.size()) throw ContractError("DensityTable: l out of range");
    return rows[ell];
  }
  [[nodiscard]] std::uint64_t total_count() const {
    std::uint64_t s = 0;
    for (const auto& r : rows) s += r.count;
    return s;
  }
};

inline DensityTable density_table(const OmegaCensus& census) {
  if (census.n < 3) throw ContractError("density_table: N must be >= 3");
  DensityTable t;
  t.n = census.n;
  t.model = GaussianModel::for_n(static_cast<double>(census.n));
  t.rows.reserve(census.dim);
  for (std::size_t l = 0; l < census.dim; ++l) {
    t.rows.push_back({l, census.counts[l], census.pi_bar(l), census.pi_bar_log(l),
                      gaussian_density(static_cast<double>(l), t.model)});
  }
  return t;
}

inline DensityTable density_table(std::uint64_t n, const SieveConfig& cfg = {}) {
  return density_table(take_census(n, {}, cfg));
}

/// sum_l |pi_bar - pi_bar_log|.
inline double density_l1_gap(const DensityTable& t) {
  RealSum s;
  for (const auto& r : t.rows) s.add(std::abs(r.pi_bar - r.pi_bar_log));
  return s.value();
}

// ---------------------------------------------------------------------------

struct TypicalRange {
  double a = 0.0;
  std::uint64_t n = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::int64_t> members;
};

/// Integers within A standard deviations of loglog N.
inline TypicalRange typical_range(std::uint64_t n, double a) {
  if (!(a > 1.0)) throw ContractError("typical_range: A must exceed 1");
  const auto m = GaussianModel::for_n(static_cast<double>(n));
  TypicalRange r{a, n, m.mu - a * m.sigma, m.mu + a * m.sigma, {}};
  for (auto l = static_cast<std::int64_t>(std::ceil(r.lo)); static_cast<double>(l) <= r.hi; ++l)
    r.members.push_back(l);
  return r;
}

struct RatioRow {
  std::size_t ell = 0;
  double pi_bar = 0.0;
  double gaussian = 0.0;
  double ratio = 0.0;
};

struct RatioCheck {
  TypicalRange range;
  std::vector<RatioRow> rows;
  double max_deviation = 0.0;
};

/// pi_bar_l(N) / f(l; mu_N, sigma_N) over the positive l in T_{A,N}.
/// l = 0 (the single integer n = 1) is outside the almost-prime estimate and
/// is skipped even when the typical range reaches below 1.
inline RatioCheck sathe_selberg_ratio_check(const DensityTable& t, double a) {
  RatioCheck out{typical_range(t.n, a), {}, 0.0};
  for (auto l : out.range.members) {
    if (l < 1) continue;
    if (static_cast<std::size_t>(l) >= t.rows.size()) break;
    const auto& row = t.rows[static_cast<std::size_t>(l)];
    out.rows.push_back({row.ell, row.pi_bar, row.gaussian, row.ratio()});
    out.max_deviation = std::max(out.max_deviation, std::abs(row.ratio() - 1.0));
  }
  if (out.rows.empty()) throw EmptyDomainError("sathe_selberg_ratio_check: empty typical range");
  return out;
}

// ---------------------------------------------------------------------------

struct KsResult {
  double ks = 0.0;
  double normalized = 0.0;
};

/// Kolmogorov-Smirnov distance between the law of (Omega(n) - mu)/sigma over
/// n <= N and the standard normal. The empirical CDF is a step function, so
/// the supremum is attained at a jump, either at it or just before it.
inline KsResult erdos_kac_ks(const DensityTable& t) {
  if (t.n < 10000) throw ContractError("erdos_kac_ks: N must be >= 10^4");
  const auto& m = t.model;
  double ks = 0.0;
  std::uint64_t below = 0;
  const double n = static_cast<double>(t.n);
  for (const auto& r : t.rows) {
    const double phi = normal_cdf((static_cast<double>(r.ell) - m.mu) / m.sigma);
    const double left = static_cast<double>(below) / n;
    below += r.count;
    const double right = static_cast<double>(below) / n;
    ks = std::max({ks, std::abs(right - phi), std::abs(left - phi)});
  }
  return {ks, ks * m.sigma};
}

// ---------------------------------------------------------------------------

struct TuranKubilius {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// E_{n<=N} |sum_{p in P} 1_{p|n} - sum_{p in P} 1/p| against 2 (sum 1/p)^{1/2}.
inline TuranKubilius turan_kubilius_check(std::uint64_t n, std::span<const std::uint64_t> primes) {
  if (n < 1) throw ContractError("turan_kubilius_check: N must be >= 1");
  if (!primes.empty()) {
    const auto table = enumerate_primes(std::max<std::uint64_t>(n, 2));
    for (auto p : primes)
      if (p > n || !table.contains(p)) throw ContractError("turan_kubilius_check: P must hold primes <= N");
  }
  RealSum mean;
  for (auto p : primes) mean.add(1.0 / static_cast<double>(p));
  const double s = mean.value();

  std::vector<std::uint16_t> c(n + 1, 0);
  for (auto p : primes)
    for (std::uint64_t m = p; m <= n; m += p) ++c[m];
  std::vector<std::uint64_t> hist;
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (c[k] >= hist.size()) hist.resize(c[k] + 1, 0);
    ++hist[c[k]];
  }
  RealSum dev;
  for (std::size_t v = 0; v < hist.size(); ++v)
    dev.add(static_cast<double>(hist[v]) * std::abs(static_cast<double>(v) - s));
  TuranKubilius out;
  out.lhs = dev.value() / static_cast<double>(n);
  out.rhs = 2.0 * std::sqrt(s);
  out.holds = out.lhs <= out.rhs;
  return out;
}

struct TailDensities {
  double gamma = 0.0;
  double delta = 0.0;
};

/// Upper and lower tails of omega(n) = sum_{p<=N} 1_{p|n} at D standard
/// deviations. Needs a census taken with the omega histogram.
inline TailDensities tail_densities(const OmegaCensus& census, double d) {
  if (!(d >= 1.0)) throw ContractError("tail_densities: D must be >= 1");
  if (census.small_counts.empty()) throw ContractError("tail_densities: census lacks omega counts");
  const auto m = GaussianModel::for_n(static_cast<double>(census.n));
  const double upper = m.mu + d * m.sigma;
  const double lower = m.mu - d * m.sigma;
  std::uint64_t g = 0;
  std::uint64_t dl = 0;
  for (std::size_t v = 0; v < census.small_counts.size(); ++v) {
    if (static_cast<double>(v) >= upper) g += census.small_counts[v];
    if (static_cast<double>(v) <= lower) dl += census.small_counts[v];
  }
  const double n = static_cast<double>(census.n);
  return {static_cast<double>(g) / n, static_cast<double>(dl) / n};
}

}  // namespace omegalab
