// Two-point correlations of a few bounded functions of Omega, log-averaged,
// next to the product of their means; then the l-resolved sum.

#include <cstdio>

#include "omegalab/omegalab.hpp"

int main() {
  using namespace omegalab;
  const std::uint64_t n = 1000000;
  const auto c = take_census(n, {1});
  const BoundedFunction fs[] = {BoundedFunction::parity(), BoundedFunction::indicator(3),
                                BoundedFunction::random_disc(2024)};
  for (const auto& a : fs) {
    const auto r = theorem_a_report(a, a, c);
    std::printf("%-14s lhs=(%+.5f,%+.5f) prediction=(%+.5f,%+.5f) error=%.5f\n", a.label().c_str(), r.lhs.real(),
                r.lhs.imag(), r.prediction.real(), r.prediction.imag(), r.error);
  }
  std::printf("sum over l for parity: %.5f\n", theorem_c_sum(BoundedFunction::parity(), c));
}
