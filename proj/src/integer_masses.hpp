#pragma once

// Internal: rescaling rational masses to a common integer grid so the enumeration
// cores can run on machine integers.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "levelset/rational.hpp"

namespace levelset::detail {

struct IntegerMasses {
  std::vector<mpz_class> masses;  // scale * a_i
  mpz_class tolerance;            // scale * kappa (0 for exact relations)
  mpz_class scale;                // lcm of all denominators
  bool fits_int64 = false;        // sum |masses| + tolerance < 2^62

  std::vector<std::int64_t> small_masses() const {
    std::vector<std::int64_t> out;
    out.reserve(masses.size());
    for (const auto& m : masses) out.push_back(m.get_si());
    return out;
  }
  std::int64_t small_tolerance() const { return tolerance.get_si(); }
};

inline IntegerMasses scale_to_integers(std::span<const Rational> values,
                                       const Rational& tolerance = Rational{}) {
  IntegerMasses out;
  out.scale = tolerance.denominator();
  for (const auto& v : values) {
    mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), v.value().get_den_mpz_t());
  }
  mpz_class bound = 0;
  out.masses.reserve(values.size());
  for (const auto& v : values) {
    mpz_class m = v.value().get_num() * (out.scale / v.value().get_den());
    bound += abs(m);
    out.masses.push_back(std::move(m));
  }
  out.tolerance = tolerance.value().get_num() * (out.scale / tolerance.value().get_den());
  bound += abs(out.tolerance);
  mpz_class limit = 1;
  limit <<= 62;
  out.fits_int64 = bound < limit;
  return out;
}

inline Rational unscale(const mpz_class& value, const mpz_class& scale) {
  return Rational(value, scale);
}

inline Rational unscale(std::int64_t value, const mpz_class& scale) {
  return Rational(mpz_class(static_cast<long>(value)), scale);
}

}  // namespace levelset::detail
