#include <doctest.h>

#include <cmath>

#include "regulus/svd.hpp"
#include "regulus/z2.hpp"

using namespace regulus;

namespace {
Rational rabs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

Z2UnipotentRep claim2_fixture() {
  return Z2UnipotentRep::create(rat(1), rat(0), rat(1), rat(1), rat(1), rat(1));
}
}  // namespace

TEST_CASE("unipotent_gap_ratio exact values") {
  CHECK(unipotent_gap_ratio({rat(1), rat(1), rat(1)}) == rat(3, 2));
  CHECK(unipotent_gap_ratio({rat(0), rat(7), rat(0)}) == rat(7));
  CHECK(unipotent_gap_ratio({rat(0), rat(-7), rat(0)}) == rat(7));
  CHECK(unipotent_gap_ratio({rat(4), rat(-2), rat(4)}) == rat(18, 13));
  CHECK_THROWS_AS(unipotent_gap_ratio({rat(0), rat(0), rat(0)}), std::domain_error);
}

TEST_CASE("rep construction enforces commutation") {
  CHECK_THROWS_AS(
      Z2UnipotentRep::create(rat(1), rat(0), rat(1), rat(2), rat(0), rat(1)),
      std::invalid_argument);
  Z2UnipotentRep rep = claim2_fixture();
  CHECK((rep.gen_x() * rep.gen_y()) == (rep.gen_y() * rep.gen_x()));
}

TEST_CASE("derived constants match their defining formulas") {
  Z2UnipotentRep rep = claim2_fixture();
  // re-derived independently from the raw entries
  CHECK(rep.Bx() == rep.b_x - rep.a_x * rep.a_x / 2);
  CHECK(rep.By() == rep.b_y - rep.a_y * rep.a_y / 2);
  CHECK(rep.Bx() == rat(-1, 2));
  CHECK(rep.By() == rat(1, 2));
  CHECK(rep.Z() == 2 * (rep.By() - (rep.a_y / rep.a_x) * rep.Bx()));
  CHECK(rep.Z() == rat(2));

  Z2UnipotentRep other =
      Z2UnipotentRep::create(rat(2), rat(3), rat(1), rat(4), rat(-1), rat(2));
  CHECK(other.Z() == 2 * (other.By() - (other.a_y / other.a_x) * other.Bx()));
  CHECK_THROWS_AS(
      Z2UnipotentRep::create(rat(0), rat(1), rat(0), rat(0), rat(0), rat(1)).Z(),
      std::domain_error);
}

TEST_CASE("slope normalization equalizes a and c without changing divergence") {
  Z2UnipotentRep rep =
      Z2UnipotentRep::create(rat(1), rat(1), rat(4), rat(2), rat(0), rat(8));
  CHECK(!rep.is_slope_normalized());
  Z2UnipotentRep n = rep.slope_normalized();
  CHECK(n.is_slope_normalized());
  CHECK(n.a_x == n.c_x);
  CHECK(n.a_y == n.c_y);
  // the normalized rep is a diagonal conjugate of the original: entries
  // (a,b,c) map to (a, lambda b, lambda c), with lambda read off from b_x
  REQUIRE(rep.b_x != rat(0));
  Rational lambda = n.b_x / rep.b_x;
  RationalMatrix d(3);
  d.at(0, 0) = rat(1);
  d.at(1, 1) = rat(1);
  d.at(2, 2) = lambda;
  CHECK(d.inverse() * rep.gen_x() * d == n.gen_x());
  CHECK(d.inverse() * rep.gen_y() * d == n.gen_y());
}

TEST_CASE("power closed form agrees with exact word evaluation") {
  Z2UnipotentRep rep =
      Z2UnipotentRep::create(rat(2), rat(3), rat(1), rat(4), rat(-1), rat(2));
  GeneratorMap gens = rep.generators();
  for (long n = -6; n <= 6; n += 3)
    for (long m = -6; m <= 6; m += 2) {
      RationalMatrix direct =
          rep.gen_x().pow(n) * rep.gen_y().pow(m);
      CHECK(rep.power(n, m).matrix() == direct);
    }
}

TEST_CASE("classify_z2: regular lattices") {
  Verdict plane = classify_z2(
      Z2UnipotentRep::create(rat(0), rat(1), rat(0), rat(0), rat(0), rat(1)));
  CHECK(plane.kind == VerdictKind::REGULAR_LATTICE_PLANE_TYPE);
  CHECK(!plane.witness.has_value());

  Verdict line = classify_z2(
      Z2UnipotentRep::create(rat(1), rat(0), rat(0), rat(0), rat(1), rat(0)));
  CHECK(line.kind == VerdictKind::REGULAR_LATTICE_LINE_TYPE);
  CHECK(!line.witness.has_value());
}

TEST_CASE("classify_z2: doubly sheared rep is not regular (quadratic family)") {
  Verdict v = classify_z2(claim2_fixture());
  CHECK(v.kind == VerdictKind::NOT_REGULAR);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->kind == WitnessKind::CLAIM2);
  CHECK(v.witness->bound >= 50.0);
  // family members keep the gap under the bound while norms grow
  Z2UnipotentRep norm = claim2_fixture().slope_normalized();
  for (long t = 1; t <= 50; ++t) {
    auto [n, m] = v.witness->member(t);
    RationalMatrix g = norm.power(n, m).matrix();
    CHECK(sigma_gap(g) <= v.witness->bound * (1 + 1e-9));
  }
  auto [n1, m1] = v.witness->member(1);
  auto [n50, m50] = v.witness->member(50);
  CHECK(norm.power(n50, m50).matrix().frobenius_norm_sq() >
        norm.power(n1, m1).matrix().frobenius_norm_sq());
}

TEST_CASE("classify_z2: rank-deficient image is not faithful") {
  Verdict v = classify_z2(
      Z2UnipotentRep::create(rat(0), rat(1), rat(0), rat(0), rat(2), rat(0)));
  CHECK(v.kind == VerdictKind::NOT_FAITHFUL_OR_NOT_DISCRETE);
  REQUIRE(v.witness.has_value());
  // the witness exhibits kernel elements: x^n y^m = 1
  GeneratorMap gens{{"x", RationalMatrix::unitriangular(rat(0), rat(1), rat(0))},
                    {"y", RationalMatrix::unitriangular(rat(0), rat(2), rat(0))}};
  auto [n, m] = v.witness->member(3);
  CHECK((RationalMatrix::unitriangular(rat(0), rat(1), rat(0)).pow(n.get_si()) *
         RationalMatrix::unitriangular(rat(0), rat(2), rat(0)).pow(m.get_si()))
            .is_identity());
}

TEST_CASE("classify_z2: mixed case reduces and stays non-regular") {
  Verdict v = classify_z2(
      Z2UnipotentRep::create(rat(0), rat(1), rat(0), rat(1), rat(1), rat(1)));
  CHECK(v.kind == VerdictKind::NOT_REGULAR);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->kind == WitnessKind::MIXED_REDUCED);
  CHECK(!v.normalization.empty());
}

TEST_CASE("witness_claim2 pinned values and exact bracketing") {
  Z2UnipotentRep rep = claim2_fixture();
  auto [n8, t8] = witness_claim2(rep, -8);
  CHECK(n8 == 12);
  CHECK(t8.x == rat(4));
  CHECK(t8.y == rat(-2));
  CHECK(t8.z == rat(4));

  auto [n2, t2] = witness_claim2(rep, -2);
  CHECK(n2 == 4);  // floor(2 + sqrt(4)) = 4
  CHECK(t2.x == rat(2));
  CHECK(t2.z == rat(2));

  CHECK_THROWS_AS(witness_claim2(rep, 8), std::invalid_argument);  // m Z > 0

  // |a(m, n_m) - sqrt(|m Z|)| <= |a_x| exactly, for a long prefix of m
  Rational z = rep.Z();
  for (long m = -1; m >= -500; --m) {
    auto [n, t] = witness_claim2(rep, m);
    Rational a = Rational(n) * rep.a_x + Rational(m) * rep.a_y;
    Rational target = rabs(Rational(m) * z);
    CHECK(cmp_rational_sqrt(a + rabs(rep.a_x), target) >= 0);
    CHECK(cmp_rational_sqrt(a - rabs(rep.a_x), target) <= 0);
    CHECK(t.x == a);  // slope-normalized: (1,2) and (2,3) entries agree
    CHECK(t.z == a);
  }
}

TEST_CASE("witness_z_zero produces exact kernel pairs") {
  // a_x = 1, a_y = -1 with Z = 0 forces b_y = 1 - b_x; kernel line (t, t).
  Z2UnipotentRep rep =
      Z2UnipotentRep::create(rat(1), rat(3), rat(1), rat(-1), rat(-2), rat(-1));
  REQUIRE(rep.Z() == rat(0));
  auto fam = witness_z_zero(rep);
  for (long t = 1; t <= 10; ++t) {
    auto [n, m] = fam(t);
    CHECK(Rational(n) * rep.a_x + Rational(m) * rep.a_y == rat(0));
    CHECK(rep.power(n, m).matrix().is_identity());
    CHECK((n != 0 || m != 0));
  }

  // a_x = 2, a_y = 4: kernel direction proportional to (2, -1).
  Z2UnipotentRep rep2 =
      Z2UnipotentRep::create(rat(2), rat(0), rat(2), rat(4), rat(4), rat(4));
  REQUIRE(rep2.Z() == rat(0));
  auto fam2 = witness_z_zero(rep2);
  auto [n2, m2] = fam2(3);
  CHECK(n2 * 1 == -2 * m2);
  CHECK(rep2.power(n2, m2).matrix().is_identity());

  CHECK_THROWS_AS(witness_z_zero(claim2_fixture()), std::invalid_argument);
}

TEST_CASE("witness_diagonal: commensurable and incommensurable log-ratios") {
  auto fam = witness_diagonal({rat(2), rat(1), rat(1, 2)},
                              {rat(1), rat(2), rat(1, 2)});
  for (long t = 1; t <= 100; ++t) {
    auto [n, m] = fam(t);
    // x^n y^m = diag(2^n, 2^m, 2^{-n-m}) must keep sigma1 = sigma2
    CHECK(n == m);
    CHECK(n > 0);
  }

  // incommensurable: log 2 vs log 3
  auto fam2 = witness_diagonal({rat(2), rat(1), rat(1, 2)},
                               {rat(3), rat(1), rat(1, 3)});
  double l2 = std::log(2.0), l3 = std::log(3.0);
  mpz_class last_n = 0, last_m = 0;
  for (long t = 1; t <= 12; ++t) {
    auto [n, m] = fam2(t);
    CHECK(std::fabs(n.get_d() * l2 + m.get_d() * l3) <= 1.0 + 1e-9);
    CHECK((n != last_n || m != last_m));  // family does not stall
    last_n = n;
    last_m = m;
  }

  CHECK_THROWS_AS(witness_diagonal({rat(1), rat(1), rat(1)},
                                   {rat(1), rat(1), rat(1)}),
                  std::invalid_argument);
}

TEST_CASE("witness_jordan") {
  // lambda_x = 2, lambda_y = 1/2, alpha_y = 0: pairs (0, -k), gap exactly 1.
  auto fam = witness_jordan(rat(2), rat(1, 2), rat(0));
  for (long t = 1; t <= 10; ++t) {
    auto [n, m] = fam(t);
    CHECK(n == 0);
    CHECK(m == -t);
  }

  // lambda_x = lambda_y = 2, alpha_y = -1: the nilpotent form vanishes on the
  // diagonal, pairs (k, k) with product 4^k diverging.
  auto fam2 = witness_jordan(rat(2), rat(2), rat(-1));
  for (long t = 1; t <= 10; ++t) {
    auto [n, m] = fam2(t);
    CHECK(n == m);
    CHECK(n == t);
  }

  CHECK_THROWS_AS(witness_jordan(rat(1), rat(-1), rat(0)), std::invalid_argument);
}

TEST_CASE("reduce_mixed") {
  Z2UnipotentRep r1 = reduce_mixed(
      Z2UnipotentRep::create(rat(0), rat(1), rat(0), rat(1), rat(1), rat(1)));
  CHECK(r1.a_x == rat(1));
  CHECK(r1.b_x == rat(2));
  CHECK(r1.c_x == rat(1));

  Z2UnipotentRep r2 = reduce_mixed(
      Z2UnipotentRep::create(rat(0), rat(5), rat(0), rat(1), rat(0), rat(1)));
  CHECK(r2.a_x == rat(1));
  CHECK(r2.b_x == rat(5));
  CHECK(r2.c_x == rat(1));

  CHECK_THROWS_AS(
      reduce_mixed(
          Z2UnipotentRep::create(rat(1), rat(1), rat(1), rat(1), rat(2), rat(1))),
      std::invalid_argument);
}

TEST_CASE("dual_rep and dual_of_z2") {
  GeneratorMap gens{{"g", RationalMatrix::identity(3)}};
  CHECK(dual_rep(gens).at("g").is_identity());

  RationalMatrix d(3);
  d.at(0, 0) = rat(4);
  d.at(1, 1) = rat(1);
  d.at(2, 2) = rat(1, 4);
  GeneratorMap dg{{"g", d}};
  RationalMatrix dd = dual_rep(dg).at("g");
  CHECK(dd.at(0, 0) == rat(1, 4));
  CHECK(dd.at(2, 2) == rat(4));

  // line-type lattice dualizes to plane-type and vice versa
  Z2UnipotentRep line =
      Z2UnipotentRep::create(rat(1), rat(0), rat(0), rat(0), rat(1), rat(0));
  CHECK(classify_z2(line).kind == VerdictKind::REGULAR_LATTICE_LINE_TYPE);
  Z2UnipotentRep dual = dual_of_z2(line);
  CHECK(classify_z2(dual).kind == VerdictKind::REGULAR_LATTICE_PLANE_TYPE);
  CHECK(classify_z2(dual_of_z2(dual)).kind ==
        VerdictKind::REGULAR_LATTICE_LINE_TYPE);

  // the normal-form dual matches inverse-transpose up to the coordinate flip
  Z2UnipotentRep rep = claim2_fixture();
  Z2UnipotentRep dr = dual_of_z2(rep);
  CHECK(dr.a_x == -rep.c_x);
  CHECK(dr.b_x == rep.a_x * rep.c_x - rep.b_x);
  CHECK(dr.c_x == -rep.a_x);
  CHECK(classify_z2(dr).kind == VerdictKind::NOT_REGULAR);
}
