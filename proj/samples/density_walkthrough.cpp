// Densities of l-almost primes against the Gaussian model, and the
// Erdos-Kac distance, at a few N.
//
//   density_walkthrough [N ...]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "omegalab/omegalab.hpp"

int main(int argc, char** argv) {
  using namespace omegalab;
  std::vector<std::uint64_t> ns;
  for (int i = 1; i < argc; ++i) ns.push_back(std::strtoull(argv[i], nullptr, 10));
  if (ns.empty()) ns = {10000, 1000000, 10000000};

  CensusRequest req;
  req.checkpoints = ns;
  for (const auto& c : take_census(req)) {
    const auto t = density_table(c);
    std::printf("N = %llu  (loglog N = %.4f)\n", static_cast<unsigned long long>(c.n), t.model.mu);
    std::printf("  l   pi_bar      gaussian    ratio\n");
    for (const auto& r : t.rows)
      if (r.count) std::printf("  %-2zu  %.6f    %.6f    %.3f\n", r.ell, r.pi_bar, r.gaussian, r.ratio());
    std::printf("  KS distance %.4f\n\n", erdos_kac_ks(t).ks);
  }
}
