#pragma once

// One streaming pass over [1, N_max] that records, at each checkpoint N,
// everything the distribution and correlation experiments need: per-l counts
// and harmonic weights of Omega, joint (Omega(n), Omega(n+h)) histograms for a
// set of shifts, and optional histograms of omega and of truncated omega.
// Any statistic of the form E a(Omega(n)) b(Omega(n+h)) is then a finite
// contraction of these tables.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "omegalab/averaging.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

struct CensusRequest {
  std::vector<std::uint64_t> checkpoints;  ///< ascending values of N
  std::vector<std::uint64_t> shifts;       ///< h values for joint tables
  bool small_omega = false;                ///< record the omega histogram
  std::optional<double> truncation_cutoff; ///< record the omega_t histogram
};

/// Histogram of (Omega(n), Omega(n+h)) over n <= N, with counts and 1/n weights.
struct JointTable {
  std::uint64_t shift = 0;
  std::size_t dim = 0;
  std::vector<std::uint64_t> counts;  // row-major [l * dim + k]
  std::vector<double> log_weights;

  [[nodiscard]] std::uint64_t count(std::size_t l, std::size_t k) const { return counts[l * dim + k]; }
  [[nodiscard]] double log_weight(std::size_t l, std::size_t k) const { return log_weights[l * dim + k]; }
};

struct OmegaCensus {
  std::uint64_t n = 0;
  std::size_t dim = 0;  ///< table width; every Omega value seen is < dim
  std::vector<std::uint64_t> counts;
  std::vector<double> log_weights;
  double harmonic = 0.0;  ///< sum_{n<=N} 1/n
  std::vector<JointTable> joint;
  std::vector<std::uint64_t> small_counts;      ///< omega histogram, empty if not requested
  std::vector<std::uint64_t> truncated_counts;  ///< omega_t histogram, empty if not requested
  double truncation_cutoff = 0.0;

  [[nodiscard]] const JointTable& joint_for(std::uint64_t h) const {
    for (const auto& j : joint)
      if (j.shift == h) return j;
    throw ContractError("census has no joint table for the requested shift");
  }
  [[nodiscard]] bool has_shift(std::uint64_t h) const {
    return std::any_of(joint.begin(), joint.end(), [h](const JointTable& j) { return j.shift == h; });
  }
  [[nodiscard]] double pi_bar(std::size_t l) const {
    return l < dim ? static_cast<double>(counts[l]) / static_cast<double>(n) : 0.0;
  }
  [[nodiscard]] double pi_bar_log(std::size_t l) const { return l < dim ? log_weights[l] / harmonic : 0.0; }
};

namespace detail {

struct CensusPartial {
  std::vector<std::uint64_t> counts;
  std::vector<RealSum> log_weights;
  RealSum harmonic;
  std::vector<std::vector<std::uint64_t>> joint_counts;
  std::vector<std::vector<RealSum>> joint_log;
  std::vector<std::uint64_t> small_counts;
  std::vector<std::uint64_t> truncated_counts;

  CensusPartial(std::size_t dim, std::size_t nshift, bool small, bool trunc)
      : counts(dim, 0), log_weights(dim), joint_counts(nshift, std::vector<std::uint64_t>(dim * dim, 0)),
        joint_log(nshift, std::vector<RealSum>(dim * dim)) {
    if (small) small_counts.assign(dim, 0);
    if (trunc) truncated_counts.assign(dim, 0);
  }

  void merge(const CensusPartial& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counts[i] += o.counts[i];
      log_weights[i].merge(o.log_weights[i]);
    }
    harmonic.merge(o.harmonic);
    for (std::size_t s = 0; s < joint_counts.size(); ++s)
      for (std::size_t i = 0; i < joint_counts[s].size(); ++i) {
        joint_counts[s][i] += o.joint_counts[s][i];
        joint_log[s][i].merge(o.joint_log[s][i]);
      }
    for (std::size_t i = 0; i < small_counts.size(); ++i) small_counts[i] += o.small_counts[i];
    for (std::size_t i = 0; i < truncated_counts.size(); ++i) truncated_counts[i] += o.truncated_counts[i];
  }
};

}  // namespace detail

/// Width of Omega tables covering integers below `bound`.
inline std::size_t omega_table_dim(std::uint64_t bound) {
  return static_cast<std::size_t>(std::bit_width(bound));
}

inline std::vector<OmegaCensus> take_census(const CensusRequest& req, const SieveConfig& cfg = {}) {
  if (req.checkpoints.empty()) throw ContractError("take_census: no checkpoints");
  if (!std::is_sorted(req.checkpoints.begin(), req.checkpoints.end()) || req.checkpoints.front() < 1 ||
      std::adjacent_find(req.checkpoints.begin(), req.checkpoints.end()) != req.checkpoints.end())
    throw ContractError("take_census: checkpoints must be strictly increasing and >= 1");
  for (auto h : req.shifts)
    if (h < 1) throw ContractError("take_census: shifts must be >= 1");

  const std::uint64_t n_max = req.checkpoints.back();
  const std::uint64_t lookahead =
      req.shifts.empty() ? 0 : *std::max_element(req.shifts.begin(), req.shifts.end());
  check_sieve_range(1, n_max + 1, lookahead);
  const std::size_t dim = omega_table_dim(n_max + lookahead);
  const std::size_t nshift = req.shifts.size();
  const bool want_small = req.small_omega;
  const bool want_trunc = req.truncation_cutoff.has_value();

  SieveRequest sreq;
  sreq.big_omega = true;
  sreq.small_omega = want_small;
  sreq.truncation_cutoff = req.truncation_cutoff;
  sreq.lookahead = lookahead;

  detail::CensusPartial running(dim, nshift, want_small, want_trunc);
  std::vector<OmegaCensus> out;
  std::uint64_t done = 0;  // integers 1..done already accumulated

  for (std::uint64_t checkpoint : req.checkpoints) {
    sieve_segments(
        done + 1, checkpoint + 1, sreq, cfg,
        [&](const SegmentView& v) {
          detail::CensusPartial p(dim, nshift, want_small, want_trunc);
          const std::uint8_t* big = v.big.data();
          for (std::uint64_t i = 0; i < v.owned(); ++i) {
            const std::uint64_t n = v.lo + i;
            const double w = 1.0 / static_cast<double>(n);
            const std::size_t l = big[i];
            ++p.counts[l];
            p.log_weights[l].add(w);
            p.harmonic.add(w);
            for (std::size_t s = 0; s < nshift; ++s) {
              const std::size_t cell = l * dim + big[i + req.shifts[s]];
              ++p.joint_counts[s][cell];
              p.joint_log[s][cell].add(w);
            }
            if (want_small) ++p.small_counts[v.small[i]];
            if (want_trunc) ++p.truncated_counts[v.truncated[i]];
          }
          return p;
        },
        [&](detail::CensusPartial&& p) { running.merge(p); });
    done = checkpoint;

    OmegaCensus snap;
    snap.n = checkpoint;
    snap.dim = dim;
    snap.counts = running.counts;
    snap.log_weights.resize(dim);
    for (std::size_t l = 0; l < dim; ++l) snap.log_weights[l] = running.log_weights[l].value();
    snap.harmonic = running.harmonic.value();
    for (std::size_t s = 0; s < nshift; ++s) {
      JointTable t;
      t.shift = req.shifts[s];
      t.dim = dim;
      t.counts = running.joint_counts[s];
      t.log_weights.resize(dim * dim);
      for (std::size_t c = 0; c < dim * dim; ++c) t.log_weights[c] = running.joint_log[s][c].value();
      snap.joint.push_back(std::move(t));
    }
    snap.small_counts = running.small_counts;
    snap.truncated_counts = running.truncated_counts;
    snap.truncation_cutoff = want_trunc ? *req.truncation_cutoff : 0.0;
    out.push_back(std::move(snap));
  }
  return out;
}

/// Census at a single N.
inline OmegaCensus take_census(std::uint64_t n, std::vector<std::uint64_t> shifts = {1},
                               const SieveConfig& cfg = {}) {
  CensusRequest req;
  req.checkpoints = {n};
  req.shifts = std::move(shifts);
  return std::move(take_census(req, cfg).front());
}

}  // namespace omegalab
