#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regulus/matrix.hpp"
#include "regulus/word.hpp"

namespace regulus {

/// Entries (1,2), (1,3), (2,3) of an upper unitriangular 3x3 matrix.
struct UnipotentTriple {
  Rational x, y, z;

  RationalMatrix matrix() const { return RationalMatrix::unitriangular(x, y, z); }
};

/// Exact ratio (x^2+y^2+z^2)/(|x|+|z|+|xz-y|). Divergence of this quantity
/// along a sequence of unitriangular matrices is equivalent to divergence of
/// sigma1/sigma2, up to uniform constants. Throws at the identity, where the
/// denominator vanishes.
Rational unipotent_gap_ratio(const UnipotentTriple& t);

/// A pair of commuting upper unitriangular generators in the normal form
/// rho(x) = [[1,a_x,b_x],[0,1,c_x],[0,0,1]], rho(y) likewise. Construction
/// enforces the commutation identity a_x c_y = a_y c_x.
struct Z2UnipotentRep {
  Rational a_x, b_x, c_x;
  Rational a_y, b_y, c_y;

  static Z2UnipotentRep create(Rational a_x, Rational b_x, Rational c_x,
                               Rational a_y, Rational b_y, Rational c_y);

  RationalMatrix gen_x() const;
  RationalMatrix gen_y() const;
  GeneratorMap generators() const;

  /// Quadratic-growth constants of the closed form for rho(x^n y^m): the
  /// (1,3) entry equals a(m,n)^2/2 + (Bx/a_x) a(m,n) + m Z/2 where
  /// a(m,n) = n a_x + m a_y. Valid once the rep is slope-normalized
  /// (a_x = c_x, a_y = c_y).
  Rational Bx() const;
  Rational By() const;
  /// Defined when a_x != 0.
  Rational Z() const;

  /// When a_x c_x != 0: conjugates by diag(1,1,c_x/a_x) so that a_x = c_x and
  /// a_y = c_y. Singular-value divergence is unaffected by the conjugation.
  Z2UnipotentRep slope_normalized() const;
  bool is_slope_normalized() const;

  /// Exact entries of rho(x^n y^m).
  UnipotentTriple power(const mpz_class& n, const mpz_class& m) const;
};

enum class VerdictKind {
  REGULAR_LATTICE_LINE_TYPE,
  REGULAR_LATTICE_PLANE_TYPE,
  NOT_REGULAR,
  NOT_FAITHFUL_OR_NOT_DISCRETE,
};
std::string to_string(VerdictKind k);

enum class WitnessKind { CLAIM2, DIAGONAL, JORDAN, MIXED_REDUCED, Z_ZERO_DISCRETENESS };
std::string to_string(WitnessKind k);

/// A closed-form family m -> (n_m, m) of exponent pairs certifying the
/// verdict: for NOT_REGULAR kinds the family has bounded sigma1/sigma2 and
/// unbounded norm; for Z_ZERO_DISCRETENESS the family is norm-bounded (here,
/// with rational data, it lands in the kernel).
struct WitnessSequence {
  WitnessKind kind;
  std::string description;
  double bound;
  /// t = 1, 2, ... -> exponent pair (n, m) for the (possibly re-based)
  /// generators recorded in Verdict::normalization.
  std::function<std::pair<mpz_class, mpz_class>(long)> member;
};

struct Verdict {
  VerdictKind kind;
  std::optional<WitnessSequence> witness;
  std::vector<std::string> normalization;  // conjugations / basis changes applied
};

/// Decision procedure: a faithful Z^2 of unipotent upper-triangular matrices
/// is regular iff it is a lattice in a minimal horospherical subgroup.
Verdict classify_z2(const Z2UnipotentRep& rep);

/// The bounded-gap family for the doubly-sheared case: requires the rep
/// slope-normalized, a_x != 0, Z != 0 and m*Z < 0. Returns the exact floor
/// n_m = floor(-m a_y/a_x + sqrt(|m Z|)/a_x) and the entries of
/// rho(x^{n_m} y^m). Guarantees |a(m,n_m) - sqrt(|mZ|)| <= |a_x| exactly.
std::pair<mpz_class, UnipotentTriple> witness_claim2(const Z2UnipotentRep& rep,
                                                     const mpz_class& m);

/// Z = 0 degeneracy: integer pairs (k, r) with |k a_x + r a_y| <= 1 (here
/// exactly 0), an unbounded family of exponents mapping into a norm-bounded
/// set. Requires Z == 0 and a_x != 0.
std::function<std::pair<mpz_class, mpz_class>(long)> witness_z_zero(
    const Z2UnipotentRep& rep);

/// Diagonalizable non-unipotent case: eigenvalue triples given in a common
/// eigenbasis order. Produces pairs with |n log|l1x/l2x| + m log|l1y/l2y||
/// bounded by 1 and norm diverging.
std::function<std::pair<mpz_class, mpz_class>(long)> witness_diagonal(
    const std::vector<Rational>& eigen_x, const std::vector<Rational>& eigen_y);

/// Shared-Jordan-block case: rho(x) = [[lx,1,0],[0,lx,0],[0,0,lx^-2]],
/// rho(y) = [[ly,ay,0],[0,ly,0],[0,0,ly^-2]]. Pairs along which the nilpotent
/// part dies while the scalar part diverges.
std::function<std::pair<mpz_class, mpz_class>(long)> witness_jordan(
    const Rational& lambda_x, const Rational& lambda_y, const Rational& alpha_y);

/// Rebases (x, y) -> (x y, y) when one generator has a = c = 0 and the other
/// has a c != 0, making both new generators doubly sheared.
Z2UnipotentRep reduce_mixed(const Z2UnipotentRep& rep);

/// Inverse-transpose of every generator. Regularity verdicts are invariant.
GeneratorMap dual_rep(const GeneratorMap& generators);

/// Dual rep brought back to upper-triangular normal form (conjugation by the
/// coordinate reversal): (a, b, c) -> (-c, ac - b, -a).
Z2UnipotentRep dual_of_z2(const Z2UnipotentRep& rep);

}  // namespace regulus
