#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "omegalab/oracle.hpp"
#include "omegalab/sieve.hpp"

using namespace omegalab;

TEST(Primes, SmallTables) {
  EXPECT_EQ(enumerate_primes(10).primes, (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(enumerate_primes(2).primes, (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(enumerate_primes(100).size(), 25u);
  EXPECT_THROW(enumerate_primes(1), EmptyDomainError);
}

TEST(Primes, MatchTrialDivision) {
  const auto t = enumerate_primes(100000);
  std::size_t j = 0;
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    if (oracle::is_prime_oracle(n)) {
      ASSERT_LT(j, t.size());
      ASSERT_EQ(t.primes[j++], n);
    }
  }
  EXPECT_EQ(j, t.size());
}

TEST(Primes, SliceHelpers) {
  const auto t = enumerate_primes(100);
  EXPECT_EQ(t.up_to(10).size(), 4u);
  EXPECT_EQ(t.in_range(10, 100).size(), 21u);
  EXPECT_TRUE(t.contains(97));
  EXPECT_FALSE(t.contains(91));
}

TEST(FactorCounts, BigOmegaSmallRange) {
  // Omega(12) = 3 since 12 = 2^2 * 3
  const auto b = factor_counts(1, 13, CountMode::big_omega());
  EXPECT_EQ(b.counts, (std::vector<std::uint8_t>{0, 1, 1, 2, 1, 2, 1, 3, 2, 2, 1, 3}));
  EXPECT_EQ(factor_counts(360, 361, CountMode::big_omega()).at(360), 6);
  EXPECT_EQ(factor_counts(9699690, 9699691, CountMode::big_omega()).at(9699690), 8);
}

TEST(FactorCounts, TruncatedCountsDistinctPrimesUpToCutoff) {
  EXPECT_EQ(factor_counts(10, 11, CountMode::truncated(3)).at(10), 1);
  EXPECT_EQ(factor_counts(8, 9, CountMode::truncated(3)).at(8), 1);
  EXPECT_EQ(factor_counts(30, 31, CountMode::truncated(5)).at(30), 3);
  EXPECT_THROW(factor_counts(1, 10, CountMode::truncated(1.5)), ContractError);
}

TEST(FactorCounts, RangeContracts) {
  EXPECT_THROW(factor_counts(0, 10, CountMode::big_omega()), ContractError);
  EXPECT_THROW(factor_counts(5, 5, CountMode::big_omega()), ContractError);
  EXPECT_THROW(factor_counts(kMaxSieveBound - 10, kMaxSieveBound + 10, CountMode::big_omega()), CapacityError);
  SieveConfig bad;
  bad.segment_length = 1;
  EXPECT_THROW(factor_counts(1, 10, CountMode::big_omega(), bad), ContractError);
}

TEST(FactorCounts, OracleAgreementAllModes) {
  const std::uint64_t hi = 200001;
  const auto big = factor_counts(1, hi, CountMode::big_omega());
  const auto small = factor_counts(1, hi, CountMode::small_omega());
  const auto trunc = factor_counts(1, hi, CountMode::truncated(37));
  for (std::uint64_t n = 1; n < hi; ++n) {
    ASSERT_EQ(big.at(n), oracle::omega_oracle(n)) << n;
    ASSERT_EQ(small.at(n), oracle::distinct_oracle(n)) << n;
    ASSERT_EQ(trunc.at(n), oracle::distinct_oracle(n, 37)) << n;
  }
}

TEST(FactorCounts, HighRangeAgreesWithOracle) {
  const std::uint64_t lo = (std::uint64_t{1} << 40) - 5000;
  const auto big = factor_counts(lo, lo + 10000, CountMode::big_omega());
  const auto small = factor_counts(lo, lo + 10000, CountMode::small_omega());
  for (std::uint64_t n = lo; n < lo + 10000; n += 7) {
    ASSERT_EQ(big.at(n), oracle::omega_oracle(n));
    ASSERT_EQ(small.at(n), oracle::distinct_oracle(n));
  }
}

TEST(FactorCounts, CompleteAdditivity) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::uint64_t> d(1, 10000);
  const auto b = factor_counts(1, 10001, CountMode::big_omega());
  for (int i = 0; i < 2000; ++i) {
    const auto m = d(gen), n = d(gen);
    ASSERT_EQ(factor_counts(m * n, m * n + 1, CountMode::big_omega()).at(m * n), b.at(m) + b.at(n));
  }
}

TEST(FactorCounts, SegmentationAndWorkerIndependence) {
  const std::uint64_t hi = 3000001;
  const auto ref = factor_counts(1, hi, CountMode::big_omega());
  for (std::uint64_t seg : {1000ULL, 100000ULL, 10000000ULL})
    for (unsigned w : {1U, 8U}) {
      SieveConfig cfg;
      cfg.segment_length = seg;
      cfg.worker_count = w;
      EXPECT_EQ(factor_counts(1, hi, CountMode::big_omega(), cfg).counts, ref.counts) << seg << " " << w;
    }
}

TEST(FactorCounts, ModeOrderingAndMonotoneTruncation) {
  const std::uint64_t hi = 50001;
  const auto big = factor_counts(1, hi, CountMode::big_omega());
  const auto small = factor_counts(1, hi, CountMode::small_omega());
  const auto t5 = factor_counts(1, hi, CountMode::truncated(5));
  const auto t50 = factor_counts(1, hi, CountMode::truncated(50));
  for (std::size_t i = 0; i < big.size(); ++i) {
    ASSERT_LE(t5.counts[i], t50.counts[i]);
    ASSERT_LE(t50.counts[i], small.counts[i]);
    ASSERT_LE(small.counts[i], big.counts[i]);
    ASSERT_LE(big.counts[i], std::bit_width(hi) - 1);
  }
}

TEST(FactorCounts, TruncationCutoffFormula) {
  // t_N = N^(1/(loglog N)^8) is below 2 at every desk-scale N
  EXPECT_LT(truncation_cutoff(1e8), 2.0);
  EXPECT_DOUBLE_EQ(truncation_cutoff(1e8, 1.0), std::floor(std::pow(1e8, 1.0 / std::log(std::log(1e8)))));
}

TEST(Liouville, Values) {
  const auto b = factor_counts(1, 12, CountMode::big_omega());
  EXPECT_EQ(liouville(b), (std::vector<std::int8_t>{1, -1, -1, 1, -1, 1, -1, -1, 1, 1, -1}));
  EXPECT_THROW(liouville(factor_counts(1, 12, CountMode::small_omega())), ContractError);
  for (std::uint64_t n = 1; n < 12; ++n) EXPECT_EQ(liouville(b)[n - 1], oracle::liouville_oracle(n));
}

TEST(BlockIo, BinaryRoundTripAndLayout) {
  const auto b = factor_counts(5, 25, CountMode::truncated(7));
  std::stringstream ss;
  write_block_binary(b, ss);
  const std::string raw = ss.str();
  ASSERT_EQ(raw.size(), 8u + 8u + 1u + 8u + 20u);
  EXPECT_EQ(static_cast<unsigned char>(raw[0]), 5);
  EXPECT_EQ(static_cast<unsigned char>(raw[8]), 25);
  EXPECT_EQ(static_cast<unsigned char>(raw[16]), 2);
  const auto back = read_block_binary(ss);
  EXPECT_EQ(back.lo, 5u);
  EXPECT_EQ(back.hi, 25u);
  EXPECT_EQ(back.mode.kind, FactorMode::TruncatedOmega);
  EXPECT_EQ(back.mode.cutoff, 7.0);
  EXPECT_EQ(back.counts, b.counts);

  std::stringstream truncated(raw.substr(0, 30));
  EXPECT_THROW(read_block_binary(truncated), ContractError);
}

TEST(BlockIo, Csv) {
  std::ostringstream os;
  write_block_csv(factor_counts(1, 5, CountMode::big_omega()), os);
  EXPECT_EQ(os.str(), "n,count\n1,0\n2,1\n3,1\n4,2\n");
}

TEST(OrderedReduce, OrderIsSegmentOrder) {
  for (unsigned w : {1U, 3U}) {
    std::vector<std::uint64_t> seen;
    ordered_segment_reduce(
        1, 1001, 10, w, [] { return 0; }, [](int&, std::uint64_t lo, std::uint64_t) { return lo; },
        [&](std::uint64_t lo) { seen.push_back(lo); });
    ASSERT_EQ(seen.size(), 100u);
    for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], 1 + 10 * i);
  }
}

TEST(OrderedReduce, WorkerExceptionPropagates) {
  EXPECT_THROW(ordered_segment_reduce(
                   1, 1001, 10, 4, [] { return 0; },
                   [](int&, std::uint64_t lo, std::uint64_t) -> int {
                     if (lo > 500) throw CapacityError("boom");
                     return 0;
                   },
                   [](int) {}),
               CapacityError);
}
