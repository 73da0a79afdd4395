#pragma once

// Segmented sieving of prime-factor counts.
//
// Every integer n in a requested range gets Omega(n) (prime factors with
// multiplicity), omega(n) (distinct prime factors) and/or omega_t(n) (distinct
// prime factors p <= t). A segment [lo, hi) is sieved by all primes up to
// sqrt(hi - 1); what is left of n after dividing out those primes is either 1
// or a single prime above the square root. The kernel never divides: it keeps
// the product of the prime powers found so far and compares it with n.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <exception>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "omegalab/common.hpp"

namespace omegalab {

/// Largest exclusive upper bound accepted by the sieve.
inline constexpr std::uint64_t kMaxSieveBound = std::uint64_t{1} << 62;

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Primes

struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;

  [[nodiscard]] std::size_t size() const { return primes.size(); }

  /// Primes p <= x.
  [[nodiscard]] std::span<const std::uint64_t> up_to(std::uint64_t x) const {
    auto end = std::upper_bound(primes.begin(), primes.end(), x);
    return {primes.data(), static_cast<std::size_t>(end - primes.begin())};
  }

  /// Primes p with lo <= p <= hi.
  [[nodiscard]] std::span<const std::uint64_t> in_range(std::uint64_t lo, std::uint64_t hi) const {
    auto first = std::lower_bound(primes.begin(), primes.end(), lo);
    auto last = std::upper_bound(first, primes.end(), hi);
    return {primes.data() + (first - primes.begin()), static_cast<std::size_t>(last - first)};
  }

  [[nodiscard]] bool contains(std::uint64_t p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
  }
};

/// All primes <= limit, ascending. Odd-only segmented sieve of Eratosthenes.
inline PrimeTable enumerate_primes(std::uint64_t limit) {
  if (limit < 2) throw EmptyDomainError("enumerate_primes: limit must be >= 2");
  if (limit >= kMaxSieveBound) throw CapacityError("enumerate_primes: limit exceeds sieve capacity");

  PrimeTable table;
  table.limit = limit;
  if (limit > 100) {
    const double l = static_cast<double>(limit);
    table.primes.reserve(static_cast<std::size_t>(1.26 * l / std::log(l)) + 16);
  }
  table.primes.push_back(2);
  if (limit < 3) return table;

  const std::uint64_t root = isqrt(limit);
  std::vector<std::uint64_t> base;
  {
    std::vector<char> composite(root + 1, 0);
    for (std::uint64_t i = 3; i <= root; i += 2) {
      if (composite[i]) continue;
      base.push_back(i);
      for (std::uint64_t j = i * i; j <= root; j += 2 * i) composite[j] = 1;
    }
  }

  // segment slot i stands for the odd number lo + 2i
  constexpr std::uint64_t kSlots = std::uint64_t{1} << 18;
  std::vector<std::uint8_t> alive(kSlots);
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSlots) {
    const std::uint64_t hi = std::min(limit, lo + 2 * kSlots - 1);
    const std::uint64_t slots = (hi - lo) / 2 + 1;
    std::fill_n(alive.begin(), slots, std::uint8_t{1});
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t m = (lo + p - 1) / p * p;
      if (m % 2 == 0) m += p;
      m = std::max(m, p * p);
      for (std::uint64_t j = (m - lo) / 2; j < slots; j += p) alive[j] = 0;
    }
    for (std::uint64_t j = 0; j < slots; ++j)
      if (alive[j]) table.primes.push_back(lo + 2 * j);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Counting modes and configuration

enum class FactorMode : std::uint8_t { BigOmega = 0, SmallOmega = 1, TruncatedOmega = 2 };

inline const char* to_string(FactorMode m) {
  switch (m) {
    case FactorMode::BigOmega: return "big_omega";
    case FactorMode::SmallOmega: return "small_omega";
    case FactorMode::TruncatedOmega: return "truncated_omega";
  }
  return "?";
}

struct CountMode {
  FactorMode kind = FactorMode::BigOmega;
  double cutoff = 0.0;  // only meaningful for TruncatedOmega

  static CountMode big_omega() { return {FactorMode::BigOmega, 0.0}; }
  static CountMode small_omega() { return {FactorMode::SmallOmega, 0.0}; }
  static CountMode truncated(double t) { return {FactorMode::TruncatedOmega, t}; }
};

/// t_N = N^(1/(loglog N)^exponent); the exponent is 8 in the standard
/// definition of the truncated prime-factor count.
inline double truncation_cutoff(double n, double exponent = 8.0) {
  if (n <= std::exp(1.0)) throw ContractError("truncation_cutoff: N must exceed e");
  const double ll = loglog(n);
  return std::floor(std::pow(n, 1.0 / std::pow(ll, exponent)));
}

struct SieveConfig {
  std::uint64_t segment_length = std::uint64_t{1} << 16;
  unsigned worker_count = 1;
  double truncation_exponent = 8.0;
  std::optional<double> truncation_override;

  void validate() const {
    if (segment_length < 2) throw ContractError("SieveConfig: segment_length must be >= 2");
    if (worker_count < 1) throw ContractError("SieveConfig: worker_count must be >= 1");
    if (!(truncation_exponent > 0.0)) throw ContractError("SieveConfig: truncation_exponent must be > 0");
    if (truncation_override && *truncation_override < 2.0)
      throw ContractError("SieveConfig: truncation cutoff must be >= 2");
  }

  /// The cutoff used for omega_N at scale N: the override when present.
  [[nodiscard]] double cutoff_for(double n) const {
    return truncation_override ? *truncation_override : truncation_cutoff(n, truncation_exponent);
  }
};

// ---------------------------------------------------------------------------
// Segment kernel

/// What to compute for each segment. Counts are produced for
/// [lo, hi + lookahead) so consumers can read Omega(n + h) for h <= lookahead.
struct SieveRequest {
  bool big_omega = true;
  bool small_omega = false;
  std::optional<double> truncation_cutoff;
  std::uint64_t lookahead = 0;
};

struct SegmentView {
  std::uint64_t lo = 0;  ///< first owned n
  std::uint64_t hi = 0;  ///< one past the last owned n
  std::uint64_t lookahead = 0;
  std::span<const std::uint8_t> big;        ///< Omega over [lo, hi + lookahead)
  std::span<const std::uint8_t> small;      ///< omega over the same range
  std::span<const std::uint8_t> truncated;  ///< omega_t over the same range

  [[nodiscard]] std::uint64_t owned() const { return hi - lo; }
};

class SegmentWorkspace {
 public:
  explicit SegmentWorkspace(std::span<const std::uint64_t> base_primes) : base_(base_primes) {}

  SegmentView run(std::uint64_t lo, std::uint64_t hi, const SieveRequest& req) {
    const std::uint64_t end = hi + req.lookahead;
    const std::size_t len = end - lo;
    const bool want_trunc = req.truncation_cutoff.has_value();
    std::uint64_t trunc_limit = 0;
    if (want_trunc) {
      const double c = std::floor(*req.truncation_cutoff);
      trunc_limit = c <= 0.0 ? 0 : (c >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(c));
    }
    if (req.big_omega) big_.resize(len);
    if (req.small_omega) small_.resize(len);
    if (want_trunc) trunc_.resize(len);

    if (end - 1 <= UINT32_MAX)
      dispatch<std::uint32_t>(lo, end, req.big_omega, req.small_omega, want_trunc, trunc_limit, prod32_);
    else
      dispatch<std::uint64_t>(lo, end, req.big_omega, req.small_omega, want_trunc, trunc_limit, prod64_);

    SegmentView v;
    v.lo = lo;
    v.hi = hi;
    v.lookahead = req.lookahead;
    if (req.big_omega) v.big = {big_.data(), len};
    if (req.small_omega) v.small = {small_.data(), len};
    if (want_trunc) v.truncated = {trunc_.data(), len};
    return v;
  }

 private:
  template <typename Word>
  void dispatch(std::uint64_t lo, std::uint64_t end, bool b, bool s, bool t, std::uint64_t tl,
                std::vector<Word>& prod) {
    const int key = (b ? 4 : 0) | (s ? 2 : 0) | (t ? 1 : 0);
    switch (key) {
      case 0: kernel<Word, false, false, false>(lo, end, tl, prod); break;
      case 1: kernel<Word, false, false, true>(lo, end, tl, prod); break;
      case 2: kernel<Word, false, true, false>(lo, end, tl, prod); break;
      case 3: kernel<Word, false, true, true>(lo, end, tl, prod); break;
      case 4: kernel<Word, true, false, false>(lo, end, tl, prod); break;
      case 5: kernel<Word, true, false, true>(lo, end, tl, prod); break;
      case 6: kernel<Word, true, true, false>(lo, end, tl, prod); break;
      default: kernel<Word, true, true, true>(lo, end, tl, prod); break;
    }
  }

  template <typename Word, bool kBig, bool kSmall, bool kTrunc>
  void kernel(std::uint64_t lo, std::uint64_t end, std::uint64_t trunc_limit, std::vector<Word>& prod_buf) {
    const std::uint64_t len = end - lo;
    prod_buf.assign(len, Word{1});
    Word* prod = prod_buf.data();
    std::uint8_t* big = kBig ? big_.data() : nullptr;
    std::uint8_t* small = kSmall ? small_.data() : nullptr;
    std::uint8_t* trunc = kTrunc ? trunc_.data() : nullptr;
    if constexpr (kBig) std::memset(big, 0, len);
    if constexpr (kSmall) std::memset(small, 0, len);
    if constexpr (kTrunc) std::memset(trunc, 0, len);

    const std::uint64_t root = isqrt(end - 1);
    for (std::uint64_t p : base_) {
      if (p > root) break;
      const Word wp = static_cast<Word>(p);
      const std::uint8_t tinc = (kTrunc && p <= trunc_limit) ? 1 : 0;
      for (std::uint64_t i = (lo + p - 1) / p * p - lo; i < len; i += p) {
        prod[i] *= wp;
        if constexpr (kBig) ++big[i];
        if constexpr (kSmall) ++small[i];
        if constexpr (kTrunc) trunc[i] += tinc;
      }
      // p^2, p^3, ... add to Omega and to the found product only
      std::uint64_t pk = p;
      while (pk <= (end - 1) / p) {
        pk *= p;
        for (std::uint64_t i = (lo + pk - 1) / pk * pk - lo; i < len; i += pk) {
          prod[i] *= wp;
          if constexpr (kBig) ++big[i];
        }
      }
    }

    const bool leftover_can_truncate = kTrunc && trunc_limit > root;
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t n = lo + i;
      if (static_cast<std::uint64_t>(prod[i]) == n) continue;
      // one prime factor above sqrt(end - 1) remains
      if constexpr (kBig) ++big[i];
      if constexpr (kSmall) ++small[i];
      if constexpr (kTrunc) {
        if (leftover_can_truncate && n / static_cast<std::uint64_t>(prod[i]) <= trunc_limit) ++trunc[i];
      }
    }
  }

  std::span<const std::uint64_t> base_;
  std::vector<std::uint32_t> prod32_;
  std::vector<std::uint64_t> prod64_;
  std::vector<std::uint8_t> big_, small_, trunc_;
};

// ---------------------------------------------------------------------------
// Ordered parallel reduction over segments

/// Splits [lo, hi) into consecutive segments of `segment_length`, maps each
/// segment to a partial result (possibly on several threads) and feeds the
/// partials to `reduce` strictly in segment order. The output therefore does
/// not depend on the worker count.
template <typename MakeState, typename MapFn, typename ReduceFn>
void ordered_segment_reduce(std::uint64_t lo, std::uint64_t hi, std::uint64_t segment_length,
                            unsigned workers, MakeState make_state, MapFn map, ReduceFn reduce) {
  using State = std::invoke_result_t<MakeState>;
  using Partial = std::invoke_result_t<MapFn, State&, std::uint64_t, std::uint64_t>;
  if (hi <= lo) return;
  const std::uint64_t nseg = (hi - lo + segment_length - 1) / segment_length;
  auto seg_lo = [&](std::uint64_t s) { return lo + s * segment_length; };
  auto seg_hi = [&](std::uint64_t s) { return std::min(hi, lo + (s + 1) * segment_length); };

  if (workers <= 1 || nseg == 1) {
    State state = make_state();
    for (std::uint64_t s = 0; s < nseg; ++s) reduce(map(state, seg_lo(s), seg_hi(s)));
    return;
  }

  const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(workers, nseg));
  std::vector<State> states;
  states.reserve(nthreads);
  for (unsigned w = 0; w < nthreads; ++w) states.push_back(make_state());

  const std::uint64_t window = std::uint64_t{4} * nthreads;
  std::vector<std::optional<Partial>> results(window);
  for (std::uint64_t first = 0; first < nseg; first += window) {
    const std::uint64_t count = std::min(window, nseg - first);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(nthreads);
      for (unsigned w = 0; w < nthreads; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::uint64_t j = next++; j < count; j = next++) {
              const std::uint64_t s = first + j;
              results[j].emplace(map(states[w], seg_lo(s), seg_hi(s)));
            }
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::uint64_t j = 0; j < count; ++j) {
      reduce(std::move(*results[j]));
      results[j].reset();
    }
  }
}

inline void check_sieve_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t lookahead) {
  if (lo < 1 || lo >= hi) throw ContractError("sieve range must satisfy 1 <= lo < hi");
  if (hi >= kMaxSieveBound || lookahead >= kMaxSieveBound - hi)
    throw CapacityError("sieve range exceeds the supported integer width");
}

/// Sieves [lo, hi) (plus the requested lookahead) segment by segment and
/// reduces `map(view)` results in order.
template <typename MapFn, typename ReduceFn>
void sieve_segments(std::uint64_t lo, std::uint64_t hi, const SieveRequest& req, const SieveConfig& cfg,
                    MapFn map, ReduceFn reduce) {
  cfg.validate();
  check_sieve_range(lo, hi, req.lookahead);
  const std::uint64_t end = hi + req.lookahead;
  const std::uint64_t root = isqrt(end - 1);
  PrimeTable base;
  if (root >= 2) base = enumerate_primes(root);
  const std::span<const std::uint64_t> primes(base.primes);
  ordered_segment_reduce(
      lo, hi, cfg.segment_length, cfg.worker_count, [&] { return SegmentWorkspace(primes); },
      [&](SegmentWorkspace& ws, std::uint64_t a, std::uint64_t b) { return map(ws.run(a, b, req)); },
      reduce);
}

// ---------------------------------------------------------------------------
// Materialized blocks

struct FactorCountBlock {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;  // exclusive
  CountMode mode;
  std::vector<std::uint8_t> counts;

  [[nodiscard]] std::uint8_t at(std::uint64_t n) const {
    if (n < lo || n >= hi) throw ContractError("FactorCountBlock: n outside block");
    return counts[n - lo];
  }
  [[nodiscard]] std::size_t size() const { return counts.size(); }
};

/// Exact per-n counts on [lo, hi) in the requested mode.
inline FactorCountBlock factor_counts(std::uint64_t lo, std::uint64_t hi, CountMode mode,
                                      const SieveConfig& cfg = {}) {
  if (mode.kind == FactorMode::TruncatedOmega && !(mode.cutoff >= 2.0))
    throw ContractError("factor_counts: truncation cutoff must be >= 2");
  check_sieve_range(lo, hi, 0);
  FactorCountBlock block{lo, hi, mode, {}};
  block.counts.resize(hi - lo);

  SieveRequest req;
  req.big_omega = mode.kind == FactorMode::BigOmega;
  req.small_omega = mode.kind == FactorMode::SmallOmega;
  if (mode.kind == FactorMode::TruncatedOmega) req.truncation_cutoff = mode.cutoff;

  struct Done {};
  std::uint8_t* out = block.counts.data();
  sieve_segments(
      lo, hi, req, cfg,
      [&](const SegmentView& v) {
        const auto& src = req.big_omega ? v.big : (req.small_omega ? v.small : v.truncated);
        std::memcpy(out + (v.lo - lo), src.data(), v.owned());
        return Done{};
      },
      [](Done) {});
  return block;
}

/// lambda(n) = (-1)^Omega(n) for every n in the block.
inline std::vector<std::int8_t> liouville(const FactorCountBlock& block) {
  if (block.mode.kind != FactorMode::BigOmega)
    throw ContractError("liouville: block must hold big-Omega counts");
  std::vector<std::int8_t> out(block.counts.size());
  std::transform(block.counts.begin(), block.counts.end(), out.begin(),
                 [](std::uint8_t c) { return static_cast<std::int8_t>((c & 1U) ? -1 : 1); });
  return out;
}

// ---------------------------------------------------------------------------
// Interchange formats
//
// Binary dump, little-endian: lo:u64, hi:u64, mode:u8, cutoff:f64, then one
// byte per n in [lo, hi).

namespace detail {
inline void put_le(std::ostream& os, std::uint64_t v, int bytes) {
  char buf[8];
  for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  os.write(buf, bytes);
}
inline std::uint64_t get_le(std::istream& is, int bytes) {
  unsigned char buf[8] = {};
  is.read(reinterpret_cast<char*>(buf), bytes);
  if (!is) throw ContractError("block dump: truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}
}  // namespace detail

inline void write_block_binary(const FactorCountBlock& block, std::ostream& os) {
  detail::put_le(os, block.lo, 8);
  detail::put_le(os, block.hi, 8);
  detail::put_le(os, static_cast<std::uint8_t>(block.mode.kind), 1);
  const double cutoff = block.mode.kind == FactorMode::TruncatedOmega ? block.mode.cutoff : 0.0;
  detail::put_le(os, std::bit_cast<std::uint64_t>(cutoff), 8);
  os.write(reinterpret_cast<const char*>(block.counts.data()),
           static_cast<std::streamsize>(block.counts.size()));
}

inline FactorCountBlock read_block_binary(std::istream& is) {
  FactorCountBlock block;
  block.lo = detail::get_le(is, 8);
  block.hi = detail::get_le(is, 8);
  const auto mode = detail::get_le(is, 1);
  const double cutoff = std::bit_cast<double>(detail::get_le(is, 8));
  if (mode > 2) throw ContractError("block dump: unknown mode byte");
  if (block.lo < 1 || block.hi <= block.lo) throw ContractError("block dump: invalid range");
  block.mode = {static_cast<FactorMode>(mode), cutoff};
  block.counts.resize(block.hi - block.lo);
  is.read(reinterpret_cast<char*>(block.counts.data()), static_cast<std::streamsize>(block.counts.size()));
  if (static_cast<std::uint64_t>(is.gcount()) != block.counts.size())
    throw ContractError("block dump: truncated payload");
  return block;
}

inline void write_block_csv(const FactorCountBlock& block, std::ostream& os) {
  os << "n,count\n";
  for (std::uint64_t n = block.lo; n < block.hi; ++n)
    os << n << ',' << static_cast<unsigned>(block.counts[n - block.lo]) << '\n';
}

}  // namespace omegalab
