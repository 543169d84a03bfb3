#include "levelset/rational.hpp"

#include <ostream>

#include "levelset/errors.hpp"

namespace levelset {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw InvalidInput("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw InvalidInput("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                               : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw InvalidInput("malformed rational '" + std::string(text) +
                       "' (expected an integer or p/q)");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InvalidInput("malformed rational '" + std::string(text) + "' (zero denominator)");
  if (negative) n = -n;
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw InvalidInput("division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational power_of_two(long exponent) {
  mpz_class p = 1;
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational pow(const Rational& base, unsigned long exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.value().get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.value().get_den_mpz_t(), exponent);
  return Rational(n, d);
}

}  // namespace levelset
