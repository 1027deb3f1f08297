#pragma once

// Shared fixtures and sampling helpers for the test binaries.

#include <random>
#include <vector>

#include "regulus/matrix.hpp"
#include "regulus/word.hpp"

namespace testsupport {

using regulus::Rational;
using regulus::RationalMatrix;

/// Random determinant-1 rational 3x3 matrix, built as a product of elementary
/// shears and a unit-determinant diagonal so the determinant is exactly 1 by
/// construction (rescaling a generic rational matrix to det 1 would require an
/// irrational cube root).
inline RationalMatrix random_sl3(std::mt19937& rng, int factors = 6,
                                 long num_bound = 20, long den_bound = 7) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  std::uniform_int_distribution<int> idx(0, 2);
  std::uniform_int_distribution<int> kind(0, 3);
  RationalMatrix g = RationalMatrix::identity(3);
  for (int f = 0; f < factors; ++f) {
    if (kind(rng) == 0) {
      long p = num(rng), q = den(rng);
      if (p == 0) p = 1;
      Rational r = regulus::rat(p, q), s = regulus::rat(q, p < 0 ? -p : p);
      RationalMatrix d(3);
      d.at(0, 0) = r;
      d.at(1, 1) = s;
      d.at(2, 2) = Rational(1) / (r * s);
      g = g * d;
    } else {
      int i = idx(rng), j = idx(rng);
      if (i == j) j = (i + 1) % 3;
      RationalMatrix sh = RationalMatrix::identity(3);
      sh.at(i, j) = regulus::rat(num(rng), den(rng));
      g = g * sh;
    }
  }
  return g;
}

/// Random unit vector in R^d.
inline std::vector<double> random_unit(std::mt19937& rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(d);
  double norm = 0;
  do {
    norm = 0;
    for (double& x : v) {
      x = n(rng);
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace testsupport
