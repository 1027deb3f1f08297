#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "regulus/rational.hpp"

namespace regulus {

/// Exact square matrix over the rationals, dim in {2,3,4}. Group elements are
/// expected to have determinant 1 (checked where the contract requires it);
/// all arithmetic is exact.
class RationalMatrix {
 public:
  explicit RationalMatrix(int dim);
  RationalMatrix(int dim, std::vector<Rational> entries);

  static RationalMatrix identity(int dim);
  /// Upper unitriangular 3x3 with (1,2)=x, (1,3)=y, (2,3)=z.
  static RationalMatrix unitriangular(const Rational& x, const Rational& y,
                                      const Rational& z);

  int dim() const { return dim_; }
  const Rational& at(int i, int j) const { return e_[i * dim_ + j]; }
  Rational& at(int i, int j) { return e_[i * dim_ + j]; }

  RationalMatrix operator*(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const;
  bool operator!=(const RationalMatrix& o) const { return !(*this == o); }
  /// Total order used for dedup containers.
  bool operator<(const RationalMatrix& o) const;

  Rational det() const;
  RationalMatrix inverse() const;
  RationalMatrix transpose() const;
  RationalMatrix pow(long n) const;

  bool is_identity() const;
  Rational frobenius_norm_sq() const;

  /// Entries as doubles after scaling by 2^-exponent so the largest magnitude
  /// lands in [0.5, 1). Projective computations only care about ratios.
  struct Scaled {
    std::vector<double> entries;  // row-major
    long exponent;                // true value = entries * 2^exponent
  };
  Scaled to_scaled_double() const;

  std::string str() const;

 private:
  int dim_;
  std::vector<Rational> e_;
};

/// lower <= sigma1/sigma2 <= upper for d=3, from exact Frobenius norms of g
/// and its inverse: sigma1/sigma2 = sigma1(g)^2/sigma1(g^-1) and
/// ||g||/sqrt(3) <= sigma1 <= ||g||.
std::pair<double, double> sigma_gap_bounds(const RationalMatrix& g);

}  // namespace regulus
