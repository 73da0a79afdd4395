#pragma once

// Pretentious distance between completely multiplicative functions, the
// infimum over Archimedean twists n^{it}, Dirichlet characters, and the
// Halasz-type mean-value audit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "omegalab/averaging.hpp"
#include "omegalab/census.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

// ---------------------------------------------------------------------------
// Dirichlet characters

/// (Z/qZ)^* as a product of cyclic components with discrete-log tables.
/// Odd prime powers are cyclic with a primitive root; 2^e for e >= 3 splits as
/// <-1> x <5>.
class DirichletGroup {
 public:
  struct Component {
    std::uint64_t prime_power = 1;
    std::uint64_t order = 1;
    std::vector<std::int32_t> dlog;  // index = residue mod prime_power; -1 off units
  };

  explicit DirichletGroup(std::uint64_t q) : q_(q) {
    if (q == 0) throw ContractError("DirichletGroup: modulus must be positive");
    if (q > 10000) throw CapacityError("DirichletGroup: modulus above 10^4");
    std::uint64_t m = q;
    for (std::uint64_t p = 2; p * p <= m || m > 1; ++p) {
      if (p * p > m) p = m;
      if (m % p != 0) continue;
      unsigned e = 0;
      std::uint64_t pe = 1;
      while (m % p == 0) {
        m /= p;
        pe *= p;
        ++e;
      }
      if (p == 2) add_two_power(e, pe);
      else add_odd_prime_power(p, pe);
    }
    phi_ = 1;
    for (const auto& c : comps_) phi_ *= c.order;
  }

  [[nodiscard]] std::uint64_t modulus() const { return q_; }
  [[nodiscard]] std::uint64_t phi() const { return phi_; }
  [[nodiscard]] const std::vector<Component>& components() const { return comps_; }

 private:
  static std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
      if (e & 1U) r = r * b % m;
      b = b * b % m;
      e >>= 1U;
    }
    return r;
  }

  void add_odd_prime_power(std::uint64_t p, std::uint64_t pe) {
    // smallest primitive root mod p, lifted to p^e
    std::vector<std::uint64_t> factors;
    for (std::uint64_t r = p - 1, d = 2; r > 1; ++d) {
      if (d * d > r) d = r;
      if (r % d == 0) {
        factors.push_back(d);
        while (r % d == 0) r /= d;
      }
    }
    std::uint64_t g = 2;
    while (true) {
      bool ok = true;
      for (auto f : factors)
        if (powmod(g, (p - 1) / f, p) == 1) ok = false;
      if (ok) break;
      ++g;
    }
    if (pe > p && powmod(g, p - 1, p * p) == 1) g += p;
    Component c;
    c.prime_power = pe;
    c.order = pe / p * (p - 1);
    c.dlog.assign(pe, -1);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < c.order; ++k) {
      c.dlog[x] = static_cast<std::int32_t>(k);
      x = x * g % pe;
    }
    comps_.push_back(std::move(c));
  }

  void add_two_power(unsigned e, std::uint64_t pe) {
    if (e == 1) {
      comps_.push_back({2, 1, {-1, 0}});
      return;
    }
    if (e == 2) {
      comps_.push_back({4, 2, {-1, 0, -1, 1}});
      return;
    }
    Component sign{pe, 2, std::vector<std::int32_t>(pe, -1)};
    Component five{pe, pe / 4, std::vector<std::int32_t>(pe, -1)};
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < pe / 4; ++k) {
      sign.dlog[x] = 0;
      five.dlog[x] = static_cast<std::int32_t>(k);
      sign.dlog[pe - x] = 1;
      five.dlog[pe - x] = static_cast<std::int32_t>(k);
      x = x * 5 % pe;
    }
    comps_.push_back(std::move(sign));
    comps_.push_back(std::move(five));
  }

  std::uint64_t q_;
  std::uint64_t phi_ = 1;
  std::vector<Component> comps_;
};

class DirichletCharacter {
 public:
  /// The character with the given exponent on each group component.
  DirichletCharacter(std::shared_ptr<const DirichletGroup> group, std::vector<std::uint64_t> exponents)
      : q_(group->modulus()), group_(std::move(group)), exps_(std::move(exponents)) {
    if (exps_.size() != group_->components().size())
      throw ContractError("DirichletCharacter: one exponent per component required");
    principal_ = std::all_of(exps_.begin(), exps_.end(), [](std::uint64_t e) { return e == 0; });
  }

  /// A character given by its values on 0..q-1. Validated for the defining
  /// properties: chi(1) = 1, zero exactly off the units, roots of unity of
  /// order dividing phi(q) on the units, and complete multiplicativity.
  static DirichletCharacter from_table(std::vector<Complex> table) {
    const std::uint64_t q = table.size();
    if (q == 0) throw ContractError("character table: modulus must be positive");
    DirichletCharacter chi;
    chi.q_ = q;
    std::vector<std::uint64_t> units;
    for (std::uint64_t a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) {
        if (std::abs(table[a]) > 1e-12) throw ContractError("character table: nonzero value off the units");
        table[a] = 0.0;
      } else {
        units.push_back(a);
      }
    }
    const std::uint64_t phi = units.size();
    if (std::abs(table[1 % q] - 1.0) > 1e-9) throw ContractError("character table: chi(1) != 1");
    for (auto a : units) {
      if (std::abs(std::abs(table[a]) - 1.0) > 1e-9) throw ContractError("character table: value not unimodular");
      if (std::abs(std::pow(table[a], static_cast<double>(phi)) - 1.0) > 1e-6)
        throw ContractError("character table: value not a phi(q)-th root of unity");
    }
    const std::size_t probe = std::min<std::size_t>(units.size(), 64);
    for (std::size_t i = 0; i < probe; ++i)
      for (auto b : units) {
        const auto a = units[i];
        if (std::abs(table[a * b % q] - table[a] * table[b]) > 1e-9)
          throw ContractError("character table: not multiplicative");
      }
    chi.principal_ = std::all_of(units.begin(), units.end(), [&](std::uint64_t a) {
      return std::abs(table[a] - 1.0) <= 1e-9;
    });
    chi.table_ = std::move(table);
    return chi;
  }

  Complex operator()(std::uint64_t n) const {
    if (!table_.empty()) return table_[n % q_];
    if (std::gcd(n, q_) != 1) return 0.0;
    double phase = 0.0;
    const auto& comps = group_->components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (exps_[c] == 0) continue;
      const auto& comp = comps[c];
      const auto d = static_cast<std::uint64_t>(comp.dlog[n % comp.prime_power]);
      phase += static_cast<double>(exps_[c] * d % comp.order) / static_cast<double>(comp.order);
    }
    return unit_phase(phase);
  }

  [[nodiscard]] std::uint64_t modulus() const { return q_; }
  [[nodiscard]] bool principal() const { return principal_; }

  [[nodiscard]] std::vector<Complex> table() const {
    std::vector<Complex> t(q_);
    for (std::uint64_t a = 0; a < q_; ++a) t[a] = (*this)(a);
    return t;
  }

 private:
  DirichletCharacter() = default;

  std::uint64_t q_ = 1;
  std::shared_ptr<const DirichletGroup> group_;
  std::vector<std::uint64_t> exps_;
  std::vector<Complex> table_;
  bool principal_ = true;
};

/// All phi(q) characters mod q; the principal character comes first.
inline std::vector<DirichletCharacter> dirichlet_characters(std::uint64_t q) {
  if (q == 0) throw ContractError("dirichlet_characters: q must be positive");
  auto group = std::make_shared<const DirichletGroup>(q);
  const auto& comps = group->components();
  std::vector<DirichletCharacter> out;
  out.reserve(group->phi());
  std::vector<std::uint64_t> e(comps.size(), 0);
  while (true) {
    out.emplace_back(group, e);
    std::size_t c = 0;
    while (c < e.size() && ++e[c] == comps[c].order) e[c++] = 0;
    if (c == e.size()) break;
  }
  return out;
}

struct TwistSpec {
  DirichletCharacter chi;
  double t = 0.0;
};

// ---------------------------------------------------------------------------
// Completely multiplicative functions

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

inline Factorization factorize(std::uint64_t n) {
  if (n == 0) throw ContractError("factorize: n must be >= 1");
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

/// f(p) = base (or an override), times p^{it} for a twist t, times chi(p).
class MultFunSpec {
 public:
  MultFunSpec() = default;
  explicit MultFunSpec(Complex base) : base_(base) { check(base_); }

  static MultFunSpec constant(Complex z = {1.0, 0.0}) { return MultFunSpec(z); }
  static MultFunSpec liouville() { return MultFunSpec({-1.0, 0.0}); }
  /// p -> p^{it}.
  static MultFunSpec archimedean(double t) {
    MultFunSpec s;
    s.twist_t_ = t;
    return s;
  }

  MultFunSpec& set_prime(std::uint64_t p, Complex z) {
    check(z);
    overrides_[p] = z;
    return *this;
  }
  MultFunSpec& set_twist(double t) {
    twist_t_ = t;
    return *this;
  }
  MultFunSpec& set_character(DirichletCharacter chi) {
    chi_ = std::move(chi);
    return *this;
  }

  [[nodiscard]] Complex at_prime(std::uint64_t p) const {
    auto it = overrides_.find(p);
    Complex z = it == overrides_.end() ? base_ : it->second;
    if (twist_t_ != 0.0) z *= std::polar(1.0, twist_t_ * std::log(static_cast<double>(p)));
    if (chi_) z *= (*chi_)(p);
    return z;
  }

  /// f(n) = base^Omega(n) for every n.
  [[nodiscard]] bool uniform() const { return overrides_.empty() && twist_t_ == 0.0 && !chi_; }
  [[nodiscard]] Complex base() const { return base_; }

 private:
  static void check(Complex z) {
    if (std::abs(z) > 1.0 + 1e-12) throw ContractError("MultFunSpec: prime values must have modulus <= 1");
  }

  Complex base_{1.0, 0.0};
  std::map<std::uint64_t, Complex> overrides_;
  double twist_t_ = 0.0;
  std::optional<DirichletCharacter> chi_;
};

inline Complex eval_multfun(const MultFunSpec& f, const Factorization& fac) {
  Complex v{1.0, 0.0};
  for (auto [p, e] : fac) {
    const Complex fp = f.at_prime(p);
    for (unsigned k = 0; k < e; ++k) v *= fp;
  }
  return v;
}

inline Complex eval_multfun(const MultFunSpec& f, std::uint64_t n) { return eval_multfun(f, factorize(n)); }

/// The frequencies I_N = (-A sqrt(loglog N), A sqrt(loglog N)] with
/// A = 4 (loglog N)^{1/9}, and the modes f_xi(n) = e(xi Omega(n) / |I_N|).
struct FrequencyFamily {
  std::uint64_t n = 0;
  double loglog_n = 0.0;
  double a = 0.0;
  double half_width = 0.0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  static FrequencyFamily for_n(std::uint64_t n) {
    if (n < 16) throw ContractError("FrequencyFamily: N must be >= 16");
    FrequencyFamily f;
    f.n = n;
    f.loglog_n = loglog(static_cast<double>(n));
    f.a = 4.0 * std::pow(f.loglog_n, 1.0 / 9.0);
    f.half_width = f.a * std::sqrt(f.loglog_n);
    f.lo = static_cast<std::int64_t>(std::floor(-f.half_width)) + 1;
    f.hi = static_cast<std::int64_t>(std::floor(f.half_width));
    return f;
  }

  [[nodiscard]] std::int64_t size() const { return hi - lo + 1; }
  [[nodiscard]] bool contains(std::int64_t xi) const { return xi >= lo && xi <= hi; }

  /// The member of I_N congruent to xi mod |I_N| (f_xi depends on xi mod |I_N| only).
  [[nodiscard]] std::int64_t reduce(std::int64_t xi) const {
    const std::int64_t m = size();
    return lo + (((xi - lo) % m) + m) % m;
  }

  [[nodiscard]] MultFunSpec mode(std::int64_t xi) const {
    if (!contains(xi)) throw ContractError("FrequencyFamily: xi outside I_N");
    return MultFunSpec(unit_phase(static_cast<double>(xi) / static_cast<double>(size())));
  }
};

// ---------------------------------------------------------------------------
// Prime sums

/// 1/p weighted distance: D(f, g; N)^2 = sum_{p<=N} (1 - Re f(p) conj g(p)) / p.
inline double distance_sq(const MultFunSpec& f, const MultFunSpec& g, std::span<const std::uint64_t> primes) {
  RealSum s;
  for (auto p : primes) s.add((1.0 - std::real(f.at_prime(p) * std::conj(g.at_prime(p)))) / static_cast<double>(p));
  return std::max(0.0, s.value());
}

inline double distance(const MultFunSpec& f, const MultFunSpec& g, std::uint64_t n, const PrimeTable& primes) {
  if (n < 2) throw ContractError("distance: N must be >= 2");
  if (primes.limit < n) throw ContractError("distance: prime table does not reach N");
  return std::sqrt(distance_sq(f, g, primes.up_to(n)));
}

inline double distance(const MultFunSpec& f, const MultFunSpec& g, std::uint64_t n) {
  return distance(f, g, n, enumerate_primes(std::max<std::uint64_t>(n, 2)));
}

/// Evaluates S(t) = sum_p w_p p^{-it} for many t. Primes are grouped into
/// blocks of width h in log p; inside a block e^{-it(x-c)} is replaced by its
/// Taylor polynomial, exact to double precision while |t| h / 2 <= 1/2.
class PrimeDirichletSum {
 public:
  PrimeDirichletSum(std::span<const std::uint64_t> primes, std::span<const Complex> weights, double t_max)
      : t_max_(std::max(t_max, 1.0)) {
    if (primes.size() != weights.size()) throw ContractError("PrimeDirichletSum: size mismatch");
    primes_.assign(primes.begin(), primes.end());
    weights_.assign(weights.begin(), weights.end());
    if (primes_.empty()) return;
    const double h = 1.0 / t_max_;
    const double x0 = std::log(static_cast<double>(primes_.front()));
    std::size_t i = 0;
    while (i < primes_.size()) {
      const double start = x0 + h * std::floor((std::log(static_cast<double>(primes_[i])) - x0) / h);
      Block b;
      b.center = start + h / 2.0;
      std::vector<ComplexSum> mom(kDegree + 1);
      for (; i < primes_.size(); ++i) {
        const double x = std::log(static_cast<double>(primes_[i]));
        if (x >= start + h) break;
        const double d = x - b.center;
        Complex term = weights_[i];
        for (int k = 0; k <= kDegree; ++k) {
          mom[k].add(term);
          term *= d;
        }
      }
      for (int k = 0; k <= kDegree; ++k) b.moments[k] = mom[k].value();
      blocks_.push_back(b);
    }
  }

  [[nodiscard]] Complex operator()(double t) const {
    if (std::abs(t) > t_max_) return direct(t);
    ComplexSum s;
    const Complex z{0.0, -t};
    for (const auto& b : blocks_) {
      Complex acc = b.moments[kDegree];
      for (int k = kDegree; k >= 1; --k) acc = b.moments[k - 1] + acc * z / static_cast<double>(k);
      s.add(acc * std::polar(1.0, -t * b.center));
    }
    return s.value();
  }

  [[nodiscard]] Complex direct(double t) const {
    ComplexSum s;
    for (std::size_t i = 0; i < primes_.size(); ++i)
      s.add(weights_[i] * std::polar(1.0, -t * std::log(static_cast<double>(primes_[i]))));
    return s.value();
  }

 private:
  static constexpr int kDegree = 24;
  struct Block {
    double center = 0.0;
    Complex moments[kDegree + 1];
  };

  double t_max_;
  std::vector<std::uint64_t> primes_;
  std::vector<Complex> weights_;
  std::vector<Block> blocks_;
};

/// Symmetric grid on [-T, T] containing 0: half the points logarithmically
/// spaced in |t| from T*1e-6 to T, half uniformly spaced.
inline std::vector<double> make_t_grid(double t_max, std::size_t points = 10000) {
  if (!(t_max > 0.0) || points < 4) throw ContractError("make_t_grid: need T > 0 and >= 4 points");
  std::vector<double> g{0.0};
  const std::size_t per_side = points / 4;
  const double span = std::log(1e6);
  for (std::size_t j = 0; j < per_side; ++j) {
    const double u = per_side == 1 ? 1.0 : static_cast<double>(j) / static_cast<double>(per_side - 1);
    const double lg = t_max * std::exp(-span * (1.0 - u));
    const double un = t_max * static_cast<double>(j + 1) / static_cast<double>(per_side);
    for (double v : {lg, un}) {
      g.push_back(v);
      g.push_back(-v);
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

struct M0Result {
  double value = 0.0;
  double argmin_t = 0.0;
};

namespace detail {

/// min of D^2(t) = base - Re S(t) over the grid, refined by golden section
/// between the neighbours of the grid argmin.
template <typename Eval>
M0Result grid_min(std::span<const double> grid, Eval dist_sq) {
  if (grid.empty()) throw ContractError("m0: empty t grid");
  std::vector<double> g(grid.begin(), grid.end());
  std::sort(g.begin(), g.end());
  std::size_t best = 0;
  double best_v = dist_sq(g[0]);
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double v = dist_sq(g[i]);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  M0Result out{best_v, g[best]};
  if (g.size() >= 2) {
    double lo = g[best == 0 ? 0 : best - 1];
    double hi = g[best + 1 == g.size() ? best : best + 1];
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = dist_sq(x1), f2 = dist_sq(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = dist_sq(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = dist_sq(x2);
      }
    }
    for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}})
      if (v < out.value) out = {v, x};
  }
  out.value = std::max(0.0, out.value);
  return out;
}

}  // namespace detail

/// inf over the grid of D(f, n^{it}; N)^2.
inline M0Result m0(const MultFunSpec& f, std::uint64_t n, std::span<const double> t_grid, const PrimeTable& table) {
  if (t_grid.empty()) throw ContractError("m0: empty t grid");
  const auto primes = table.up_to(n);
  std::vector<Complex> w(primes.size());
  RealSum base;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const double inv = 1.0 / static_cast<double>(primes[i]);
    w[i] = f.at_prime(primes[i]) * inv;
    base.add(inv);
  }
  double t_max = 0.0;
  for (double t : t_grid) t_max = std::max(t_max, std::abs(t));
  const PrimeDirichletSum sum(primes, w, t_max);
  const double b = base.value();
  return detail::grid_min(t_grid, [&](double t) { return b - std::real(sum(t)); });
}

struct DistanceResidual {
  std::int64_t xi = 0;
  double t = 0.0;
  double dist_sq = 0.0;
  double formula = 0.0;
  double residual = 0.0;
};

/// D(f_xi, n^{it}; N)^2 against (1 - cos(2 pi xi/|I_N|)) loglog N + cos(2 pi xi/|I_N|) log(1 + |t| log N).
inline DistanceResidual dist_formula_residual(std::int64_t xi, std::uint64_t n, double t, const PrimeTable& table) {
  const auto fam = FrequencyFamily::for_n(n);
  if (!fam.contains(xi)) throw ContractError("dist_formula_residual: xi outside I_N");
  if (std::abs(t) > 10.0) throw ContractError("dist_formula_residual: |t| must be <= 10");
  if (table.limit < n) throw ContractError("dist_formula_residual: prime table does not reach N");
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(xi) / static_cast<double>(fam.size());
  RealSum s;
  for (auto p : table.up_to(n)) {
    const double lp = std::log(static_cast<double>(p));
    s.add((1.0 - std::cos(theta - t * lp)) / static_cast<double>(p));
  }
  DistanceResidual r;
  r.xi = xi;
  r.t = t;
  r.dist_sq = s.value();
  r.formula = (1.0 - std::cos(theta)) * fam.loglog_n +
              std::cos(theta) * std::log(1.0 + std::abs(t) * std::log(static_cast<double>(n)));
  r.residual = std::abs(r.dist_sq - r.formula);
  return r;
}

/// D(f, chi(n) n^{it}; N); primes dividing q contribute 1/p.
inline double twisted_distance(const MultFunSpec& f, const TwistSpec& twist, std::uint64_t n, const PrimeTable& table) {
  if (table.limit < n) throw ContractError("twisted_distance: prime table does not reach N");
  MultFunSpec g = MultFunSpec::archimedean(twist.t);
  g.set_character(twist.chi);
  return std::sqrt(distance_sq(f, g, table.up_to(n)));
}

// ---------------------------------------------------------------------------
// Mean values

/// E_{n<=N} f(n) from a census when f(n) = base^Omega(n).
inline Complex multfun_mean(const MultFunSpec& f, const OmegaCensus& c) {
  if (!f.uniform()) throw ContractError("multfun_mean: census route needs f(p) constant on primes");
  ComplexSum s;
  Complex z{1.0, 0.0};
  for (std::size_t l = 0; l < c.dim; ++l) {
    s.add(z * static_cast<double>(c.counts[l]));
    z *= f.base();
  }
  return s.value() / static_cast<double>(c.n);
}

/// E_{n<=N} f(n) for any spec, by a segmented multiplicative sieve.
inline Complex multfun_mean(const MultFunSpec& f, std::uint64_t n, const SieveConfig& cfg = {}) {
  cfg.validate();
  check_sieve_range(1, n + 1, 0);
  const std::uint64_t root = isqrt(n);
  PrimeTable base;
  if (root >= 2) base = enumerate_primes(root);
  std::vector<Complex> fp(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) fp[i] = f.at_prime(base.primes[i]);

  struct Work {
    std::vector<Complex> val;
    std::vector<std::uint64_t> prod;
  };
  ComplexSum total;
  ordered_segment_reduce(
      1, n + 1, cfg.segment_length, cfg.worker_count, [] { return Work{}; },
      [&](Work& w, std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t len = hi - lo;
        w.val.assign(len, Complex{1.0, 0.0});
        w.prod.assign(len, 1);
        for (std::size_t j = 0; j < base.size(); ++j) {
          const std::uint64_t p = base.primes[j];
          for (std::uint64_t pk = p;; pk *= p) {
            for (std::uint64_t i = (lo + pk - 1) / pk * pk - lo; i < len; i += pk) {
              w.val[i] *= fp[j];
              w.prod[i] *= p;
            }
            if (pk > (hi - 1) / p) break;
          }
        }
        ComplexSum s;
        for (std::uint64_t i = 0; i < len; ++i) {
          const std::uint64_t m = lo + i;
          if (w.prod[i] != m) w.val[i] *= f.at_prime(m / w.prod[i]);
          s.add(w.val[i]);
        }
        return s;
      },
      [&](ComplexSum&& s) { total.merge(s); });
  return total.value() / static_cast<double>(n);
}

struct HalaszAudit {
  Complex mean{};
  double m0 = 0.0;
  double argmin_t = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

/// |E f| against exp(-M0/16), M0 taken over grid points with |t| <= log N.
inline HalaszAudit halasz_audit(const MultFunSpec& f, std::uint64_t n, std::span<const double> t_grid,
                                const PrimeTable& table, std::optional<Complex> known_mean = std::nullopt,
                                const SieveConfig& cfg = {}) {
  if (n < 10000) throw ContractError("halasz_audit: N must be >= 10^4");
  const double cap = std::log(static_cast<double>(n));
  std::vector<double> grid;
  for (double t : t_grid)
    if (std::abs(t) <= cap) grid.push_back(t);
  HalaszAudit out;
  out.mean = known_mean ? *known_mean : multfun_mean(f, n, cfg);
  const auto m = m0(f, n, grid, table);
  out.m0 = m.value;
  out.argmin_t = m.argmin_t;
  out.bound = std::exp(-m.value / 16.0);
  out.ratio = std::abs(out.mean) / out.bound;
  return out;
}

/// sum over xi in I_N with |xi| > threshold of |E f_xi|.
inline double large_frequency_mass(const FrequencyFamily& fam, const OmegaCensus& c, double threshold) {
  RealSum s;
  for (std::int64_t xi = fam.lo; xi <= fam.hi; ++xi)
    if (std::abs(static_cast<double>(xi)) > threshold) s.add(std::abs(multfun_mean(fam.mode(xi), c)));
  return s.value();
}

}  // namespace omegalab
