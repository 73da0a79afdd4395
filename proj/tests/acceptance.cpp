// Acceptance suite: one PASS/FAIL line per criterion, a JSON regression
// record, nonzero exit if any criterion fails.
//
//   omegalab_acceptance [--regression path] [--workers k]

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <string>
#include <thread>

#include "json.hpp"

#include "omegalab/omegalab.hpp"
#include "omegalab/oracle.hpp"

using namespace omegalab;
using nlohmann::ordered_json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

ordered_json g_record = ordered_json::object();
unsigned g_workers = 1;
int g_failures = 0;

template <typename F>
void criterion(int id, const char* name, F body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %2d %-28s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  g_record[std::to_string(id)]["name"] = name;
  g_record[std::to_string(id)]["pass"] = o.pass;
  g_record[std::to_string(id)]["seconds"] = secs;
  if (!o.pass) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SieveConfig workers_cfg() {
  SieveConfig c;
  c.worker_count = g_workers;
  return c;
}

std::uint64_t fnv1a(std::span<const std::uint8_t> v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : v) h = (h ^ b) * 1099511628211ULL;
  return h;
}

const std::vector<std::uint64_t> kCheckpoints{10000, 1000000, 10000000, 100000000};

}  // namespace

int main(int argc, char** argv) {
  std::string regression_path;
  g_workers = std::max(1U, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--regression") && i + 1 < argc) regression_path = argv[++i];
    else if (!std::strcmp(argv[i], "--workers") && i + 1 < argc) g_workers = std::stoul(argv[++i]);
  }

  // --------------------------------------------------------------------------
  criterion(1, "oracle-equivalence", [] {
    const std::uint64_t n = 1000000;
    const double t_n = truncation_cutoff(static_cast<double>(n));
    // t_N is below 2 at desk-scale N, so omega_N counts no prime at all; the
    // kernel is also checked at cutoffs where it does count something
    std::vector<double> cutoffs{2.0, 97.0, truncation_cutoff(static_cast<double>(n), 1.0)};
    if (t_n >= 2.0) cutoffs.push_back(t_n);
    SieveConfig single;
    const auto t0 = std::chrono::steady_clock::now();
    const auto big = factor_counts(1, n + 1, CountMode::big_omega(), single);
    const auto small = factor_counts(1, n + 1, CountMode::small_omega(), single);
    std::vector<FactorCountBlock> trunc;
    for (double c : cutoffs) trunc.push_back(factor_counts(1, n + 1, CountMode::truncated(c), single));
    std::uint64_t default_nonzero = 0;
    SieveRequest req;
    req.truncation_cutoff = t_n;
    sieve_segments(
        1, n + 1, req, single,
        [](const SegmentView& v) {
          std::uint64_t nz = 0;
          for (std::uint64_t i = 0; i < v.owned(); ++i) nz += v.truncated[i] != 0;
          return nz;
        },
        [&](std::uint64_t nz) { default_nonzero += nz; });
    const auto lam = liouville(big);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::uint64_t mismatches = t_n < 2.0 ? default_nonzero : 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      const auto i = k - 1;
      mismatches += big.counts[i] != oracle::omega_oracle(k);
      mismatches += small.counts[i] != oracle::distinct_oracle(k);
      for (std::size_t j = 0; j < trunc.size(); ++j)
        mismatches += trunc[j].counts[i] != oracle::distinct_oracle(k, static_cast<std::uint64_t>(cutoffs[j]));
      mismatches += lam[i] != oracle::liouville_oracle(k);
    }
    g_record["1"]["mismatches"] = mismatches;
    g_record["1"]["sieve_seconds"] = secs;
    g_record["1"]["t_N"] = t_n;
    return Outcome{mismatches == 0 && secs < 60.0,
                   fmt("mismatches=%llu sieve=%.2fs (t_N=%.3f)", static_cast<unsigned long long>(mismatches), secs, t_n)};
  });

  // --------------------------------------------------------------------------
  criterion(2, "turan-kubilius", [] {
    const auto table = enumerate_primes(1000000);
    bool all = true;
    double worst = 0.0;
    for (std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL}) {
      for (auto lim : {isqrt(n), n}) {
        const auto r = turan_kubilius_check(n, table.up_to(lim));
        all = all && r.holds;
        worst = std::max(worst, r.lhs / r.rhs);
        g_record["2"]["grid"].push_back({{"N", n}, {"P_max", lim}, {"lhs", r.lhs}, {"rhs", r.rhs}});
      }
    }
    return Outcome{all, fmt("max lhs/rhs=%.4f over 6 cells", worst)};
  });

  // --------------------------------------------------------------------------
  criterion(3, "taylor-truncation", [] {
    using Big = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<400>>;
    const Big two_pi = 2 * boost::math::constants::pi<Big>();
    std::size_t violations = 0, points = 0;
    double min_margin = 1e300;
    auto check = [&](const Big& x, unsigned k) {
      const auto t = taylor_truncation<Big>(x, k, two_pi);
      const Big err = hypot(t.approx_re - cos(two_pi * x), t.approx_im - sin(two_pi * x));
      ++points;
      if (err > t.bound) ++violations;
      else if (t.bound > 0) min_margin = std::min(min_margin, static_cast<double>(err / t.bound));
    };
    // 40 x-values in [-1, 1] (including 0) by 25 degrees = 10^3 points
    for (int i = 0; i < 40; ++i) {
      const Big x = i == 0 ? Big(0) : Big(-1) + Big(2 * i) / 39;
      for (unsigned k = 0; k < 25; ++k) check(x, k);
    }
    check(Big(1), 50);
    check(Big("0.5"), 0);
    g_record["3"]["points"] = points;
    g_record["3"]["violations"] = violations;
    return Outcome{violations == 0, fmt("points=%zu violations=%zu", points, violations)};
  });

  // --------------------------------------------------------------------------
  criterion(4, "parseval", [] {
    std::mt19937_64 gen(20240601);
    auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    double worst = 0.0;
    int trials = 0;
    for (std::size_t m : {8UL, 32UL, 129UL})
      for (int rep = 0; rep < 100; ++rep) {
        std::vector<Complex> b(m);
        for (auto& z : b) z = std::polar(std::sqrt(unit()), 2.0 * std::numbers::pi * unit());
        const auto lo = -static_cast<std::int64_t>(m / 2);
        const auto t = fourier_expand(b, lo);
        double mean_sq = 0.0;
        for (const auto& z : b) mean_sq += std::norm(z);
        mean_sq /= static_cast<double>(m);
        worst = std::max(worst, std::abs(t.energy() - mean_sq) / mean_sq);
        ++trials;
      }
    g_record["4"]["max_relative_error"] = worst;
    return Outcome{worst <= 1e-10, fmt("trials=%d max rel err=%.2e", trials, worst)};
  });

  // --------------------------------------------------------------------------
  // One streaming census serves criteria 5 through 9 and 12.
  CensusRequest req;
  req.checkpoints = kCheckpoints;
  req.shifts = {1};
  const auto t_census = std::chrono::steady_clock::now();
  const auto censuses = take_census(req, workers_cfg());
  const double census_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_census).count();
  std::printf("       census up to 1e8 with %u worker(s): %.1fs\n", g_workers, census_secs);
  auto at = [&](std::uint64_t n) -> const OmegaCensus& {
    for (const auto& c : censuses)
      if (c.n == n) return c;
    throw std::logic_error("missing checkpoint");
  };

  criterion(5, "partition-identity", [&] {
    bool ok = true;
    double worst = 0.0;
    for (std::uint64_t n : {10000ULL, 1000000ULL, 100000000ULL}) {
      const auto t = density_table(at(n));
      RealSum s;
      for (const auto& r : t.rows) s.add(r.pi_bar);
      ok = ok && t.total_count() == n;
      worst = std::max(worst, std::abs(s.value() - 1.0));
    }
    g_record["5"]["max_abs_deviation"] = worst;
    return Outcome{ok && worst <= 1e-15, fmt("integer counts sum to N; |sum pi_bar - 1| <= %.1e", worst)};
  });

  criterion(6, "two-point-trend", [&] {
    const auto par = BoundedFunction::parity();
    const double e4 = theorem_a_report(par, par, at(10000)).error;
    const double e8 = theorem_a_report(par, par, at(100000000)).error;
    double m6 = 0.0, m8 = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto a = BoundedFunction::random_disc(1000 + 2 * s);
      const auto b = BoundedFunction::random_disc(1001 + 2 * s);
      m6 += theorem_a_report(a, b, at(1000000)).error / 20.0;
      m8 += theorem_a_report(a, b, at(100000000)).error / 20.0;
    }
    g_record["6"] = {{"parity_1e4", e4}, {"parity_1e8", e8}, {"random_mean_1e6", m6}, {"random_mean_1e8", m8}};
    return Outcome{e8 <= 0.05 && e8 <= e4 && m8 <= m6,
                   fmt("parity %.4f (1e4) -> %.4f (1e8); random mean %.5f (1e6) -> %.5f (1e8)", e4, e8, m6, m8)};
  });

  criterion(7, "erdos-kac", [&] {
    const auto k6 = erdos_kac_ks(density_table(at(1000000)));
    const auto k8 = erdos_kac_ks(density_table(at(100000000)));
    g_record["7"] = {{"ks_1e6", k6.ks}, {"ks_1e8", k8.ks}, {"normalized_1e8", k8.normalized}};
    return Outcome{k8.ks < k6.ks && k8.normalized <= 3.0,
                   fmt("KS %.4f (1e6) -> %.4f (1e8); normalized %.4f", k6.ks, k8.ks, k8.normalized)};
  });

  criterion(8, "gaussian-ratio", [&] {
    double prev = 1e300;
    bool monotone = true;
    double last = 0.0;
    std::string trail;
    for (std::uint64_t n : {1000000ULL, 10000000ULL, 100000000ULL}) {
      const auto rc = sathe_selberg_ratio_check(density_table(at(n)), 2.0);
      monotone = monotone && rc.max_deviation <= prev;
      prev = last = rc.max_deviation;
      trail += fmt("%.3f ", rc.max_deviation);
      ordered_json rows = ordered_json::array();
      for (const auto& r : rc.rows) rows.push_back({{"l", r.ell}, {"ratio", r.ratio}});
      g_record["8"][std::to_string(n)] = {{"max_deviation", rc.max_deviation}, {"rows", rows}};
    }
    return Outcome{last <= 0.5 && monotone, "max dev (1e6,1e7,1e8) = " + trail};
  });

  criterion(9, "l-resolved-sum-trend", [&] {
    const auto par = BoundedFunction::parity();
    const double c6 = theorem_c_sum(par, at(1000000));
    const double c7 = theorem_c_sum(par, at(10000000));
    const double c8 = theorem_c_sum(par, at(100000000));
    g_record["9"] = {{"1e6", c6}, {"1e7", c7}, {"1e8", c8}};
    return Outcome{c7 <= c6 && c8 <= c7, fmt("%.5f -> %.5f -> %.5f", c6, c7, c8)};
  });

  // --------------------------------------------------------------------------
  criterion(10, "periodic-independence", [] {
    using oracle::PeriodicCombo;
    double worst = 0.0, worst_full = 0.0;
    const PeriodicCombo ev({{1.0, 2, 0}}), three({{1.0, 3, 0}}), three1({{1.0, 3, 1}});
    worst_full = std::max(worst_full, std::abs(oracle::periodic_independence_check(ev, three, 6 * 1000).scaled_error));
    worst = std::max(worst, oracle::periodic_independence_check(ev, three1, 10000).scaled_error);

    std::mt19937_64 gen(77);
    auto divisors = [](std::uint64_t r) {
      std::vector<std::uint64_t> d;
      for (std::uint64_t k = 1; k <= r; ++k)
        if (r % k == 0) d.push_back(k);
      return d;
    };
    auto combo = [&](std::uint64_t r) {
      const auto ds = divisors(r);
      std::vector<PeriodicCombo::Term> t;
      for (int i = 0; i < 3; ++i) {
        const auto m = ds[gen() % ds.size()];
        const double ph = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        t.push_back({unit_phase(ph), m, gen() % m});
      }
      return PeriodicCombo(t);
    };
    int pairs = 0;
    while (pairs < 20) {
      const std::uint64_t r = 2 + gen() % 29, s = 2 + gen() % 29;
      if (std::gcd(r, s) != 1) continue;
      const auto f = combo(r), g = combo(s);
      if (std::gcd(f.period(), g.period()) != 1) continue;
      ++pairs;
      for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL})
        worst = std::max(worst, oracle::periodic_independence_check(f, g, n).scaled_error);
      const std::uint64_t full = f.period() * g.period() * 7;
      const auto x = oracle::periodic_independence_check(f, g, full);
      worst_full = std::max(worst_full, std::abs(x.lhs - x.product));
    }
    g_record["10"] = {{"max_scaled_error", worst}, {"max_full_period_gap", worst_full}};
    return Outcome{worst <= 10.0 && worst_full <= 1e-12,
                   fmt("max scaled error %.3f; full-period gap %.1e", worst, worst_full)};
  });

  // --------------------------------------------------------------------------
  criterion(11, "distance-formula-residual", [] {
    const auto table = enumerate_primes(10000000);
    double worst = 0.0;
    for (std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL, 10000000ULL}) {
      const auto fam = FrequencyFamily::for_n(n);
      const std::int64_t xs[] = {0, fam.reduce(std::llround(fam.a)), fam.reduce(std::llround(std::pow(fam.a, 2.5)))};
      for (auto xi : xs)
        for (double t : {0.0, 0.5, 1.0}) {
          const auto r = dist_formula_residual(xi, n, t, table);
          worst = std::max(worst, r.residual);
          g_record["11"]["grid"].push_back({{"N", n}, {"xi", xi}, {"t", t}, {"residual", r.residual}});
        }
    }
    g_record["11"]["max_residual"] = worst;
    return Outcome{worst <= 5.0, fmt("max residual %.4f over 36 cells", worst)};
  });

  criterion(12, "halasz-audit", [&] {
    const auto table = enumerate_primes(10000000);
    double worst = 0.0;
    for (std::uint64_t n : {1000000ULL, 10000000ULL}) {
      const auto fam = FrequencyFamily::for_n(n);
      std::vector<std::pair<std::string, MultFunSpec>> fs{{"liouville", MultFunSpec::liouville()}};
      for (std::int64_t xi : {std::int64_t{1}, fam.reduce(std::llround(fam.a)), fam.reduce(std::llround(std::pow(fam.a, 2.5)))})
        fs.emplace_back("f_xi=" + std::to_string(xi), fam.mode(xi));
      const auto grid = make_t_grid(std::log(static_cast<double>(n)));
      for (const auto& [name, f] : fs) {
        const auto h = halasz_audit(f, n, grid, table, multfun_mean(f, at(n)));
        worst = std::max(worst, h.ratio);
        g_record["12"]["rows"].push_back({{"N", n}, {"f", name}, {"mean_abs", std::abs(h.mean)}, {"m0", h.m0},
                                          {"ratio", h.ratio}});
      }
    }
    return Outcome{worst <= 10.0, fmt("max |E f| / exp(-M0/16) = %.4f", worst)};
  });

  // --------------------------------------------------------------------------
  criterion(13, "determinism-performance", [] {
    const std::uint64_t n = 100000000;
    SieveConfig one;
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t h1 = fnv1a(factor_counts(1, n + 1, CountMode::big_omega(), one).counts);
    const double single = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const unsigned cores = std::max(1U, std::thread::hardware_concurrency());
    bool identical = true;
    double multi = 0.0;
    for (unsigned w : {2U, 8U}) {
      SieveConfig c;
      c.worker_count = w;
      t0 = std::chrono::steady_clock::now();
      identical = identical && fnv1a(factor_counts(1, n + 1, CountMode::big_omega(), c).counts) == h1;
      if (w == 8) multi = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    g_record["13"] = {{"single_seconds", single}, {"eight_worker_seconds", multi}, {"cores", cores},
                      {"identical", identical}};
    // the 8-core limit is only meaningful with 8 physical cores to run on
    const bool multi_ok = cores < 8 || multi <= 10.0;
    std::string note = cores < 8 ? fmt(" (8-core limit not measurable: %u core(s))", cores) : "";
    return Outcome{identical && single <= 60.0 && multi_ok,
                   fmt("1 worker %.2fs, 8 workers %.2fs, bit-identical=%s", single, multi,
                       identical ? "yes" : "no") + note};
  });

  std::printf("%d criterion(s) failed\n", g_failures);
  if (!regression_path.empty()) {
    std::ofstream(regression_path) << g_record.dump(2) << '\n';
    std::printf("regression record: %s\n", regression_path.c_str());
  }
  return g_failures == 0 ? 0 : 1;
}
