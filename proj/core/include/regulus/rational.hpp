#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace regulus {

/// Exact rational scalar. GMP keeps values reduced with positive denominator,
/// which is exactly the invariant we need; entries of word evaluations grow
/// without bound, so fixed-width types are not an option.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", or "p/q". Used by all JSON file formats, where rationals
/// travel as strings to avoid precision loss.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("cannot parse rational: '" + s + "'");
  q.canonicalize();
  if (q.get_den() < 0) throw std::invalid_argument("negative denominator: '" + s + "'");
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// log of a positive rational, robust against values outside double range.
inline double log_rational(const Rational& q) {
  if (sgn(q) <= 0) throw std::domain_error("log of non-positive rational");
  signed long en, ed;
  double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

/// sign of r - sqrt(t), exact (t >= 0).
inline int cmp_rational_sqrt(const Rational& r, const Rational& t) {
  if (sgn(t) < 0) throw std::domain_error("sqrt of negative rational");
  if (sgn(r) < 0) return sgn(t) == 0 && sgn(r) == 0 ? 0 : -1;
  Rational r2 = r * r;
  return cmp(r2, t);
}

/// floor(r + s*sqrt(t)) computed exactly; the double estimate is verified and
/// corrected by rational comparisons, so irrationality of sqrt(t) never leaks
/// into the result.
inline mpz_class exact_floor_r_plus_s_sqrt_t(const Rational& r, const Rational& s,
                                             const Rational& t) {
  if (sgn(t) < 0) throw std::domain_error("sqrt of negative rational");
  double est = r.get_d() + s.get_d() * std::sqrt(t.get_d());
  mpz_class n(std::floor(est));
  // n <= r + s*sqrt(t)  <=>  (n - r) <= s*sqrt(t)
  auto leq = [&](const mpz_class& k) {
    Rational d = Rational(k) - r;
    if (sgn(s) >= 0) {
      if (sgn(d) <= 0) return true;
      return cmp(d * d, s * s * t) <= 0;
    }
    if (sgn(d) > 0) return false;
    return cmp(d * d, s * s * t) >= 0;
  };
  while (!leq(n)) --n;
  while (leq(n + 1)) ++n;
  return n;
}

}  // namespace regulus
