#pragma once

// The Fourier reduction at desk scale: prime windows, Fourier expansion over
// an interval with Parseval, the reduced sum over frequencies, Taylor
// truncation of e(x), replacing Omega by the truncated omega, and exponential
// sums over primes with their major arcs.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "omegalab/averaging.hpp"
#include "omegalab/census.hpp"
#include "omegalab/correlation.hpp"
#include "omegalab/pretentious.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

// ---------------------------------------------------------------------------
// Prime windows

/// The prime window is empty; carries the bounds that produced it.
class DegenerateWindowError : public EmptyDomainError {
 public:
  DegenerateWindowError(double h0, double h)
      : EmptyDomainError("degenerate prime window [" + std::to_string(h0) + ", " + std::to_string(h) + "]"),
        h0_(h0), h_(h) {}
  [[nodiscard]] double h0() const { return h0_; }
  [[nodiscard]] double h() const { return h_; }

 private:
  double h0_, h_;
};

struct WindowBounds {
  double h0 = 0.0;
  double h = 0.0;
};

/// H = exp((log N)^{1/(loglog N)^{4/9}}), H0 = exp(exp(-(loglog N)^{1/3}) (log N)^{1/(loglog N)^{4/9}}).
inline WindowBounds default_window_bounds(std::uint64_t n) {
  if (n < 16) throw ContractError("default_window_bounds: N must be >= 16");
  const double ln = std::log(static_cast<double>(n));
  const double ll = std::log(ln);
  const double inner = std::pow(ln, 1.0 / std::pow(ll, 4.0 / 9.0));
  return {std::exp(std::exp(-std::cbrt(ll)) * inner), std::exp(inner)};
}

struct PrimeWindow {
  double h0 = 0.0;
  double h = 0.0;
  WindowBounds defaults;
  bool overridden = false;
  std::vector<std::uint64_t> primes;
  double l = 0.0;  ///< sum of 1/p over the window

  [[nodiscard]] std::uint64_t max_prime() const { return primes.back(); }
};

namespace detail {
inline double inverse_sum(std::span<const std::uint64_t> primes) {
  RealSum s;
  for (auto p : primes) s.add(1.0 / static_cast<double>(p));
  return s.value();
}
}  // namespace detail

/// Primes in [H0, H], from the default formulas or from explicit overrides.
inline PrimeWindow prime_window(std::uint64_t n, std::optional<WindowBounds> overrides = std::nullopt) {
  if (!overrides && n < 10000) throw ContractError("prime_window: N must be >= 10^4 without overrides");
  PrimeWindow w;
  if (n >= 16) w.defaults = default_window_bounds(n);
  const WindowBounds b = overrides ? *overrides : w.defaults;
  w.overridden = overrides.has_value();
  w.h0 = b.h0;
  w.h = b.h;
  if (!(b.h0 < b.h) || b.h < 2.0) throw DegenerateWindowError(b.h0, b.h);
  if (b.h >= 1e12) throw CapacityError("prime_window: H too large");
  const auto hi = static_cast<std::uint64_t>(std::floor(b.h));
  const auto lo = static_cast<std::uint64_t>(std::max(2.0, std::ceil(b.h0)));
  const auto table = enumerate_primes(hi);
  const auto slice = table.in_range(lo, hi);
  w.primes.assign(slice.begin(), slice.end());
  if (w.primes.empty()) throw DegenerateWindowError(b.h0, b.h);
  w.l = detail::inverse_sum(w.primes);
  return w;
}

/// A window given by an explicit list of primes.
inline PrimeWindow prime_window_from(std::vector<std::uint64_t> primes) {
  if (primes.empty()) throw DegenerateWindowError(0.0, 0.0);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  const auto table = enumerate_primes(std::max<std::uint64_t>(primes.back(), 2));
  for (auto p : primes)
    if (!table.contains(p)) throw ContractError("prime window contains a non-prime");
  PrimeWindow w;
  w.h0 = static_cast<double>(primes.front());
  w.h = static_cast<double>(primes.back());
  w.overridden = true;
  w.primes = std::move(primes);
  w.l = detail::inverse_sum(w.primes);
  return w;
}

// ---------------------------------------------------------------------------
// Fourier expansion over an interval

/// Coefficients bhat(xi), xi in I = [lo, hi], with b(n) = sum_xi bhat(xi) e(xi n / |I|).
struct FourierTable {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<Complex> coeffs;  // coeffs[xi - lo]

  [[nodiscard]] std::int64_t size() const { return hi - lo + 1; }
  [[nodiscard]] Complex coefficient(std::int64_t xi) const {
    if (xi < lo || xi > hi) throw ContractError("FourierTable: xi outside the interval");
    return coeffs[static_cast<std::size_t>(xi - lo)];
  }
  [[nodiscard]] Complex evaluate(std::int64_t n) const {
    ComplexSum s;
    const double m = static_cast<double>(size());
    for (std::int64_t xi = lo; xi <= hi; ++xi)
      s.add(coeffs[static_cast<std::size_t>(xi - lo)] * unit_phase(static_cast<double>(xi * n) / m));
    return s.value();
  }
  [[nodiscard]] double energy() const {
    RealSum s;
    for (const auto& c : coeffs) s.add(std::norm(c));
    return s.value();
  }
};

/// values[n - lo] = b(n) for n in [lo, lo + values.size()).
inline FourierTable fourier_expand(std::span<const Complex> values, std::int64_t lo) {
  if (values.empty()) throw ContractError("fourier_expand: |I| must be >= 1");
  FourierTable t;
  t.lo = lo;
  t.hi = lo + static_cast<std::int64_t>(values.size()) - 1;
  const std::int64_t m = t.size();
  t.coeffs.resize(values.size());
  for (std::int64_t xi = t.lo; xi <= t.hi; ++xi) {
    ComplexSum s;
    for (std::int64_t n = t.lo; n <= t.hi; ++n) {
      // reduce xi*n mod m exactly before converting to a phase
      const std::int64_t r = ((xi * n) % m + m) % m;
      s.add(values[static_cast<std::size_t>(n - t.lo)] * unit_phase(-static_cast<double>(r) / static_cast<double>(m)));
    }
    t.coeffs[static_cast<std::size_t>(xi - t.lo)] = s.value() / static_cast<double>(m);
  }
  return t;
}

/// b(n + offset) for n in [lo, hi].
inline FourierTable fourier_expand(const BoundedFunction& b, std::int64_t lo, std::int64_t hi, std::int64_t offset = 0) {
  if (hi < lo) throw ContractError("fourier_expand: |I| must be >= 1");
  std::vector<Complex> v;
  for (std::int64_t n = lo; n <= hi; ++n) v.push_back(b(n + offset));
  return fourier_expand(v, lo);
}

// ---------------------------------------------------------------------------
// Reduced sum

enum class ReducedSumMethod { Auto, Direct, Fft };

struct ReducedSum {
  std::vector<std::pair<std::int64_t, double>> terms;  // in the order of xi_set
  double total = 0.0;
  double small_part = 0.0;  ///< |xi| <= A^{5/2}
  double large_part = 0.0;
  double threshold = 0.0;   ///< A^{5/2}
};

namespace detail {

struct FftPlanMutex {
  static std::mutex& get() {
    static std::mutex m;
    return m;
  }
};

/// Overlap-save correlation y(n) = sum_d w[d] x(n + d) for a fixed real kernel.
class Correlator {
 public:
  Correlator(std::span<const double> kernel, std::size_t fft_size) : n_(fft_size), span_(kernel.size() - 1) {
    buf_ = fftw_alloc_complex(n_);
    kern_ = fftw_alloc_complex(n_);
    {
      std::lock_guard lock(FftPlanMutex::get());
      fwd_ = fftw_plan_dft_1d(static_cast<int>(n_), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
      inv_ = fftw_plan_dft_1d(static_cast<int>(n_), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      buf_[i][0] = i < kernel.size() ? kernel[i] : 0.0;
      buf_[i][1] = 0.0;
    }
    fftw_execute(fwd_);
    for (std::size_t i = 0; i < n_; ++i) {
      // conj(W) / n, folding in the inverse transform's scale
      kern_[i][0] = buf_[i][0] / static_cast<double>(n_);
      kern_[i][1] = -buf_[i][1] / static_cast<double>(n_);
    }
  }
  Correlator(const Correlator&) = delete;
  Correlator& operator=(const Correlator&) = delete;
  Correlator(Correlator&& o) noexcept
      : n_(o.n_), span_(o.span_), buf_(o.buf_), kern_(o.kern_), fwd_(o.fwd_), inv_(o.inv_) {
    o.buf_ = o.kern_ = nullptr;
    o.fwd_ = o.inv_ = nullptr;
  }
  ~Correlator() {
    std::lock_guard lock(FftPlanMutex::get());
    if (fwd_) fftw_destroy_plan(fwd_);
    if (inv_) fftw_destroy_plan(inv_);
    if (buf_) fftw_free(buf_);
    if (kern_) fftw_free(kern_);
  }

  /// x has out.size() + span entries.
  void run(std::span<const Complex> x, std::span<Complex> out) {
    const std::size_t block = n_ - span_;
    for (std::size_t start = 0; start < out.size(); start += block) {
      const std::size_t count = std::min(block, out.size() - start);
      const std::size_t avail = std::min(n_, x.size() - start);
      for (std::size_t i = 0; i < n_; ++i) {
        const Complex v = i < avail ? x[start + i] : Complex{};
        buf_[i][0] = v.real();
        buf_[i][1] = v.imag();
      }
      fftw_execute(fwd_);
      for (std::size_t i = 0; i < n_; ++i) {
        const double re = buf_[i][0] * kern_[i][0] - buf_[i][1] * kern_[i][1];
        const double im = buf_[i][0] * kern_[i][1] + buf_[i][1] * kern_[i][0];
        buf_[i][0] = re;
        buf_[i][1] = im;
      }
      fftw_execute(inv_);
      for (std::size_t j = 0; j < count; ++j) out[start + j] = {buf_[j][0], buf_[j][1]};
    }
  }

 private:
  std::size_t n_;
  std::size_t span_;
  fftw_complex* buf_ = nullptr;
  fftw_complex* kern_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan inv_ = nullptr;
};

}  // namespace detail

/// sum over xi of E^log_n |E^log_{p in window} f_xi(n+p) - E^log_m f_xi(m)|^2,
/// with f_xi(n) = e(xi Omega(n) / |I_N|). The inner sum S(n) = sum_p z^Omega(n+p)/p
/// is a correlation with a sparse kernel; long windows use FFT overlap-save.
inline ReducedSum reduced_sum(std::uint64_t n, const PrimeWindow& window, std::span<const std::int64_t> xi_set,
                              const SieveConfig& cfg = {}, ReducedSumMethod method = ReducedSumMethod::Auto) {
  if (window.primes.empty()) throw DegenerateWindowError(window.h0, window.h);
  cfg.validate();
  const auto fam = FrequencyFamily::for_n(n);
  for (auto xi : xi_set)
    if (!fam.contains(xi)) throw ContractError("reduced_sum: xi outside I_N");

  // f_{-xi} = conj(f_xi) gives the same term, so only |xi| > 0 is computed
  std::vector<std::int64_t> keys;
  for (auto xi : xi_set)
    if (xi != 0) keys.push_back(std::abs(xi));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  const std::size_t nk = keys.size();

  const std::uint64_t span = window.max_prime();
  std::vector<double> kernel(span + 1, 0.0);
  for (auto p : window.primes) kernel[p] = 1.0 / static_cast<double>(p);

  const std::size_t dim = omega_table_dim(n + span);
  std::vector<std::vector<Complex>> zpow(nk, std::vector<Complex>(dim));
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      zpow[k][l] = unit_phase(static_cast<double>(keys[k] * static_cast<std::int64_t>(l)) / static_cast<double>(fam.size()));

  const bool use_fft =
      method == ReducedSumMethod::Fft || (method == ReducedSumMethod::Auto && window.primes.size() > 48);
  std::size_t fft_size = 1024;
  while (fft_size < 4 * (span + 1)) fft_size *= 2;

  struct Partial {
    std::vector<RealSum> sq;      // sum_n |S(n)|^2 / n
    std::vector<ComplexSum> lin;  // sum_n S(n) / n
    std::vector<RealSum> logw;    // sum_{Omega(m)=l} 1/m
    RealSum harmonic;
  };
  struct State {
    std::optional<detail::Correlator> corr;
    std::vector<Complex> x, s;
  };

  SieveRequest req;
  req.lookahead = span;
  SieveConfig scfg = cfg;
  if (use_fft) scfg.segment_length = std::max<std::uint64_t>(cfg.segment_length, 8 * fft_size);
  scfg.validate();
  check_sieve_range(1, n + 1, span);
  const std::uint64_t root = isqrt(n + span);
  const auto base = enumerate_primes(std::max<std::uint64_t>(root, 2));
  const std::span<const std::uint64_t> base_primes(base.primes);

  Partial total{std::vector<RealSum>(nk), std::vector<ComplexSum>(nk), std::vector<RealSum>(dim), {}};
  ordered_segment_reduce(
      1, n + 1, scfg.segment_length, scfg.worker_count,
      [&] {
        State st;
        if (use_fft) st.corr.emplace(kernel, fft_size);
        return std::pair{SegmentWorkspace(base_primes), std::move(st)};
      },
      [&](auto& ws, std::uint64_t lo, std::uint64_t hi) {
        auto& [sieve, st] = ws;
        const SegmentView v = sieve.run(lo, hi, req);
        const std::size_t len = v.owned();
        Partial p{std::vector<RealSum>(nk), std::vector<ComplexSum>(nk), std::vector<RealSum>(dim), {}};
        for (std::size_t i = 0; i < len; ++i) {
          const double w = 1.0 / static_cast<double>(lo + i);
          p.logw[v.big[i]].add(w);
          p.harmonic.add(w);
        }
        st.x.resize(len + span);
        st.s.resize(len);
        for (std::size_t k = 0; k < nk; ++k) {
          for (std::size_t i = 0; i < len + span; ++i) st.x[i] = zpow[k][v.big[i]];
          if (use_fft) {
            st.corr->run(st.x, st.s);
          } else {
            for (std::size_t i = 0; i < len; ++i) {
              Complex acc{};
              for (auto q : window.primes) acc += kernel[q] * st.x[i + q];
              st.s[i] = acc;
            }
          }
          for (std::size_t i = 0; i < len; ++i) {
            const double w = 1.0 / static_cast<double>(lo + i);
            p.sq[k].add(std::norm(st.s[i]) * w);
            p.lin[k].add(st.s[i] * w);
          }
        }
        return p;
      },
      [&](Partial&& p) {
        for (std::size_t k = 0; k < nk; ++k) {
          total.sq[k].merge(p.sq[k]);
          total.lin[k].merge(p.lin[k]);
        }
        for (std::size_t l = 0; l < dim; ++l) total.logw[l].merge(p.logw[l]);
        total.harmonic.merge(p.harmonic);
      });

  const double h = total.harmonic.value();
  const double big_l = window.l;
  std::vector<double> key_term(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    ComplexSum cs;
    for (std::size_t l = 0; l < dim; ++l) cs.add(zpow[k][l] * total.logw[l].value());
    const Complex c = cs.value() / h;
    // E^log |S/L - c|^2 expanded so a single pass suffices
    const double t = total.sq[k].value() / (big_l * big_l * h) -
                     2.0 * std::real(std::conj(c) * total.lin[k].value()) / (big_l * h) + std::norm(c);
    key_term[k] = std::max(0.0, t);
  }

  ReducedSum out;
  out.threshold = std::pow(fam.a, 2.5);
  RealSum all, small, large;
  for (auto xi : xi_set) {
    double t = 0.0;
    if (xi != 0) t = key_term[static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), std::abs(xi)) - keys.begin())];
    out.terms.emplace_back(xi, t);
    all.add(t);
    (std::abs(static_cast<double>(xi)) <= out.threshold ? small : large).add(t);
  }
  out.total = all.value();
  out.small_part = small.value();
  out.large_part = large.value();
  return out;
}

/// Every frequency in I_N.
inline std::vector<std::int64_t> full_frequency_set(std::uint64_t n) {
  const auto fam = FrequencyFamily::for_n(n);
  std::vector<std::int64_t> v;
  for (std::int64_t xi = fam.lo; xi <= fam.hi; ++xi) v.push_back(xi);
  return v;
}

struct ReductionAudit {
  double lhs = 0.0;
  double sqrt_reduced = 0.0;
  double audit_term = 0.0;  ///< (loglog N)^{-1/6}
  double slack = 0.0;
};

/// |E^log a(Omega(n)) b(Omega(n+1)) - E^log a E^log b| against the square root of
/// the reduced sum over all of I_N. The census must be taken at N with shift 1.
inline ReductionAudit reduction_inequality_audit(const BoundedFunction& a, const BoundedFunction& b,
                                                 const OmegaCensus& c, const PrimeWindow& window,
                                                 const SieveConfig& cfg = {}) {
  ReductionAudit r;
  const Complex lhs = two_point_lhs(a, b, c, 1, Weighting::Logarithmic);
  const Complex prod = omega_mean(a, c, Weighting::Logarithmic) * omega_mean(b, c, Weighting::Logarithmic);
  r.lhs = std::abs(lhs - prod);
  const auto xis = full_frequency_set(c.n);
  r.sqrt_reduced = std::sqrt(reduced_sum(c.n, window, xis, cfg).total);
  r.audit_term = std::pow(loglog(static_cast<double>(c.n)), -1.0 / 6.0);
  r.slack = r.sqrt_reduced - r.lhs + r.audit_term;
  return r;
}

// ---------------------------------------------------------------------------
// Taylor truncation

template <typename Real>
struct TaylorTruncation {
  Real approx_re;
  Real approx_im;
  Real bound;  ///< (2 pi |x|)^{K+1} / (K+1)!
};

/// e_K(x) = sum_{k<=K} (2 pi i x)^k / k!. Generic in the scalar so the
/// truncation error can be measured in extended precision.
template <typename Real = double>
TaylorTruncation<Real> taylor_truncation(const Real& x, unsigned k_max, const Real& two_pi) {
  if (k_max > 10000) throw ContractError("taylor_truncation: K must be <= 10^4");
  const Real theta = two_pi * x;
  Real re = 1, im = 0;
  Real term_re = 1, term_im = 0;
  for (unsigned k = 1; k <= k_max; ++k) {
    // term *= i theta / k
    const Real next_re = -term_im * theta / k;
    const Real next_im = term_re * theta / k;
    term_re = next_re;
    term_im = next_im;
    re += term_re;
    im += term_im;
  }
  using std::abs;
  Real bound = 1;
  const Real a = abs(theta);
  for (unsigned k = 1; k <= k_max + 1; ++k) bound = bound * a / k;
  return {re, im, bound};
}

inline TaylorTruncation<double> taylor_truncation(double x, unsigned k_max) {
  return taylor_truncation<double>(x, k_max, 2.0 * std::numbers::pi);
}

// ---------------------------------------------------------------------------
// Omega versus truncated omega

struct TruncationGap {
  double cutoff = 0.0;
  bool cutoff_degenerate = false;  ///< cutoff < 2: no prime is counted
  double mean_abs_diff = 0.0;      ///< E |Omega(n) - omega_t(n)|
  double exp_gap = 0.0;
};

/// E|Omega - omega_t| over [N], and the gap between
/// E e(t (Omega(n+p) - Omega(n+q)) / sqrt(loglog N)) and the same with omega_t.
/// The cutoff defaults to t_N from the config.
inline TruncationGap omega_truncation_gap(std::uint64_t n, std::uint64_t p, std::uint64_t q, double t,
                                          std::optional<double> cutoff = std::nullopt, const SieveConfig& cfg = {}) {
  if (n < 16) throw ContractError("omega_truncation_gap: N must be >= 16");
  if (p < 1 || q < 1 || 10 * std::max(p, q) > n) throw ContractError("omega_truncation_gap: need 1 <= p, q <= N/10");
  TruncationGap out;
  out.cutoff = cutoff ? *cutoff : cfg.cutoff_for(static_cast<double>(n));
  out.cutoff_degenerate = out.cutoff < 2.0;
  const double scale = t / std::sqrt(loglog(static_cast<double>(n)));

  SieveRequest req;
  req.truncation_cutoff = out.cutoff;
  req.lookahead = std::max(p, q);
  struct Partial {
    std::uint64_t diff = 0;
    ComplexSum big, trunc;
  };
  Partial total;
  sieve_segments(
      1, n + 1, req, cfg,
      [&](const SegmentView& v) {
        Partial part;
        for (std::uint64_t i = 0; i < v.owned(); ++i) {
          part.diff += static_cast<std::uint64_t>(v.big[i] - v.truncated[i]);
          const int db = v.big[i + p] - v.big[i + q];
          const int dt = v.truncated[i + p] - v.truncated[i + q];
          part.big.add(unit_phase(scale * db));
          part.trunc.add(unit_phase(scale * dt));
        }
        return part;
      },
      [&](Partial&& part) {
        total.diff += part.diff;
        total.big.merge(part.big);
        total.trunc.merge(part.trunc);
      });
  const double nn = static_cast<double>(n);
  out.mean_abs_diff = static_cast<double>(total.diff) / nn;
  out.exp_gap = std::abs(total.big.value() / nn - total.trunc.value() / nn);
  return out;
}

// ---------------------------------------------------------------------------
// Exponential sums over primes

/// E^log_{p in window} e(p alpha).
inline Complex prime_exponential_sum(const PrimeWindow& window, double alpha) {
  if (window.primes.empty()) throw DegenerateWindowError(window.h0, window.h);
  ComplexSum s;
  for (auto p : window.primes) {
    // p * alpha mod 1 without losing the fractional part for large p
    const double frac = std::fmod(static_cast<double>(p) * alpha, 1.0);
    s.add(unit_phase(frac) / static_cast<double>(p));
  }
  return s.value() / window.l;
}

struct MajorArcMeasure {
  double measure = 0.0;
  double spacing = 0.0;
  std::size_t points = 0;
  std::vector<std::pair<double, double>> samples;  ///< (alpha, |sum|) on the uniform grid
};

/// Lebesgue measure of {alpha in [0,1) : |E^log_p e(p alpha)| > eps}, from a
/// uniform grid with crossings located by bisection.
inline MajorArcMeasure major_arc_measure(const PrimeWindow& window, double eps, std::size_t grid_resolution) {
  if (!(eps > 0.0)) throw ContractError("major_arc_measure: epsilon must be positive");
  if (window.primes.empty()) throw DegenerateWindowError(window.h0, window.h);
  if (grid_resolution < 10 * window.max_prime())
    throw ContractError("major_arc_measure: grid_resolution must be >= 10 * max window prime");
  MajorArcMeasure out;
  out.points = grid_resolution;
  out.spacing = 1.0 / static_cast<double>(grid_resolution);
  auto f = [&](double a) { return std::abs(prime_exponential_sum(window, a)); };
  out.samples.reserve(grid_resolution);
  for (std::size_t j = 0; j < grid_resolution; ++j) {
    const double a = static_cast<double>(j) * out.spacing;
    out.samples.emplace_back(a, f(a));
  }
  auto crossing = [&](double a, double b, bool a_inside) {
    for (int it = 0; it < 40; ++it) {
      const double m = 0.5 * (a + b);
      if ((f(m) > eps) == a_inside) a = m;
      else b = m;
    }
    return 0.5 * (a + b);
  };
  RealSum total;
  for (std::size_t j = 0; j < grid_resolution; ++j) {
    const double a = out.samples[j].first;
    const double b = a + out.spacing;
    const bool in_a = out.samples[j].second > eps;
    const bool in_b = (j + 1 < grid_resolution ? out.samples[j + 1].second : out.samples[0].second) > eps;
    if (in_a && in_b) total.add(out.spacing);
    else if (in_a != in_b) {
      const double x = crossing(a, b, in_a);
      total.add(in_a ? x - a : b - x);
    }
  }
  out.measure = total.value();
  return out;
}

}  // namespace omegalab
