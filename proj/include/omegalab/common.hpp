#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace omegalab {

using Complex = std::complex<double>;

// Error taxonomy. Every operation that rejects its input throws one of these;
// the CLI maps each kind to a distinct exit code.

/// A precondition on the arguments was violated.
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// The domain of an average or table is empty.
class EmptyDomainError : public std::domain_error {
 public:
  explicit EmptyDomainError(const std::string& what) : std::domain_error(what) {}
};

/// A range or size exceeds what the implementation can represent.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// e(x) = exp(2 pi i x).
inline Complex unit_phase(double x) {
  // reduce first so large arguments keep full precision
  const double r = x - std::round(x);
  const double angle = 2.0 * std::numbers::pi * r;
  return {std::cos(angle), std::sin(angle)};
}

inline double loglog(double n) { return std::log(std::log(n)); }

}  // namespace omegalab
