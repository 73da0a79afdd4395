#pragma once

// CSV helpers: 17 significant digits, '.' separator, independent of locale.

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>

#include "omegalab/almost_prime.hpp"
#include "omegalab/common.hpp"
#include "omegalab/pretentious.hpp"

namespace omegalab::io {

inline std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (res.ec != std::errc{}) return "nan";
  return {buf, res.ptr};
}

inline void write_density_csv(const DensityTable& t, std::ostream& os) {
  os << "ell,pi_bar,pi_bar_log,gaussian,ratio\n";
  for (const auto& r : t.rows)
    os << r.ell << ',' << fmt(r.pi_bar) << ',' << fmt(r.pi_bar_log) << ',' << fmt(r.gaussian) << ','
       << fmt(r.ratio()) << '\n';
}

inline void write_character_csv(const DirichletCharacter& chi, std::ostream& os) {
  os << "a,re,im\n";
  for (std::uint64_t a = 0; a < chi.modulus(); ++a) {
    const Complex v = chi(a);
    os << a << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
  }
}

}  // namespace omegalab::io
