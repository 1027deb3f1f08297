#include <doctest.h>

#include <cmath>
#include <random>

#include "regulus/matrix.hpp"
#include "regulus/rational.hpp"
#include "regulus/svd.hpp"
#include "test_support.hpp"

using namespace regulus;

TEST_CASE("rational parsing and normalization") {
  CHECK(parse_rational("3/4") == rat(3, 4));
  CHECK(parse_rational("-2") == rat(-2));
  CHECK(parse_rational("6/8") == rat(3, 4));  // canonicalized
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
  CHECK(to_string(rat(-3, 6)) == "-1/2");
}

TEST_CASE("log_rational handles values far outside double range") {
  Rational big(mpz_class(1) << 4000);
  CHECK(log_rational(big) == doctest::Approx(4000 * std::log(2.0)).epsilon(1e-12));
  CHECK(log_rational(Rational(1) / big) ==
        doctest::Approx(-4000 * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log_rational(rat(0)), std::domain_error);
  CHECK_THROWS_AS(log_rational(rat(-1)), std::domain_error);
}

TEST_CASE("cmp_rational_sqrt is an exact sign of r - sqrt(t)") {
  CHECK(cmp_rational_sqrt(rat(2), rat(4)) == 0);
  CHECK(cmp_rational_sqrt(rat(2), rat(5)) < 0);
  CHECK(cmp_rational_sqrt(rat(3), rat(8)) > 0);
  CHECK(cmp_rational_sqrt(rat(-1), rat(2)) < 0);
  // 665857/470832 is a convergent of sqrt(2), above it by ~1e-12: doubles
  // cannot see the difference, exact arithmetic must.
  CHECK(cmp_rational_sqrt(rat(665857, 470832), rat(2)) > 0);
  CHECK_THROWS_AS(cmp_rational_sqrt(rat(1), rat(-1)), std::domain_error);
}

TEST_CASE("exact_floor_r_plus_s_sqrt_t against an exact rational oracle") {
  // Oracle: n = floor(r + s*sqrt(t)) iff n <= r + s sqrt(t) < n+1, decided by
  // exact comparisons of (k - r) against s*sqrt(t) after squaring.
  auto leq_oracle = [](const Rational& k, const Rational& r, const Rational& s,
                       const Rational& t) {
    Rational d = k - r;
    if (sgn(s) >= 0) {
      if (sgn(d) <= 0) return true;
      return cmp(d * d, s * s * t) <= 0;
    }
    if (sgn(d) > 0) return false;
    return cmp(d * d, s * s * t) >= 0;
  };
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 9);
  std::uniform_int_distribution<long> tv(0, 400);
  for (int i = 0; i < 500; ++i) {
    Rational r = rat(num(rng), den(rng));
    Rational s = rat(num(rng), den(rng));
    Rational t = rat(tv(rng), den(rng));
    mpz_class n = exact_floor_r_plus_s_sqrt_t(r, s, t);
    CHECK(leq_oracle(Rational(n), r, s, t));
    CHECK(!leq_oracle(Rational(n + 1), r, s, t));
  }
  // Borderline exact-integer case: floor(1 + 1*sqrt(4)) = 3.
  CHECK(exact_floor_r_plus_s_sqrt_t(rat(1), rat(1), rat(4)) == 3);
  CHECK_THROWS_AS(exact_floor_r_plus_s_sqrt_t(rat(1), rat(1), rat(-1)),
                  std::domain_error);
}

TEST_CASE("matrix construction and arithmetic") {
  RationalMatrix id = RationalMatrix::identity(3);
  CHECK(id.is_identity());
  CHECK(id.det() == rat(1));
  CHECK_THROWS_AS(RationalMatrix(5), std::invalid_argument);

  RationalMatrix u = RationalMatrix::unitriangular(rat(1), rat(2), rat(3));
  CHECK(u.at(0, 1) == rat(1));
  CHECK(u.at(0, 2) == rat(2));
  CHECK(u.at(1, 2) == rat(3));
  CHECK(u.det() == rat(1));
  CHECK((u * id) == u);
  CHECK(u.transpose().at(1, 0) == rat(1));
}

TEST_CASE("unitriangular inverse formula (-x, xz-y, -z)") {
  auto inv_entries = [](long x, long y, long z) {
    RationalMatrix g = RationalMatrix::unitriangular(rat(x), rat(y), rat(z));
    RationalMatrix gi = g.inverse();
    CHECK((g * gi).is_identity());
    return gi;
  };
  CHECK(RationalMatrix::identity(3).inverse().is_identity());

  RationalMatrix a = inv_entries(1, 1, 1);
  CHECK(a == RationalMatrix::unitriangular(rat(-1), rat(0), rat(-1)));

  RationalMatrix b = inv_entries(4, -2, 4);
  CHECK(b == RationalMatrix::unitriangular(rat(-4), rat(18), rat(-4)));
}

TEST_CASE("inverse rejects singular matrices") {
  RationalMatrix z(3);  // all zeros
  CHECK_THROWS_AS(z.inverse(), std::domain_error);
}

TEST_CASE("integer powers, including negative exponents") {
  RationalMatrix u = RationalMatrix::unitriangular(rat(0), rat(1), rat(0));
  CHECK(u.pow(0).is_identity());
  CHECK(u.pow(5).at(0, 2) == rat(5));
  CHECK(u.pow(-7).at(0, 2) == rat(-7));
  std::mt19937 rng(11);
  RationalMatrix g = testsupport::random_sl3(rng);
  CHECK(g.pow(3) == g * g * g);
  CHECK(g.pow(-2) == (g * g).inverse());
}

TEST_CASE("frobenius_norm_sq exact values") {
  CHECK(RationalMatrix::identity(3).frobenius_norm_sq() == rat(3));
  CHECK(RationalMatrix::unitriangular(rat(1), rat(1), rat(1)).frobenius_norm_sq() ==
        rat(6));
  CHECK(RationalMatrix::unitriangular(rat(4), rat(-2), rat(4)).frobenius_norm_sq() ==
        rat(39));
}

TEST_CASE("to_scaled_double keeps the largest entry near unit scale") {
  RationalMatrix g = RationalMatrix::unitriangular(rat(3), Rational(mpz_class(1) << 90),
                                                   rat(-5));
  auto s = g.to_scaled_double();
  double maxabs = 0;
  for (double e : s.entries) maxabs = std::max(maxabs, std::fabs(e));
  // scale = 2^(e_num - e_den) of the largest entry, so the scaled maximum
  // lies in (1/2, 2): both mantissas are in [1/2, 1)
  CHECK(maxabs > 0.5);
  CHECK(maxabs < 2.0);
  // exponent consistency on an entry that fits in double range
  CHECK(s.entries[8] * std::ldexp(1.0, static_cast<int>(s.exponent)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sigma_gap_bounds brackets sigma1/sigma2") {
  auto [lo_i, hi_i] = sigma_gap_bounds(RationalMatrix::identity(3));
  CHECK(lo_i == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  // upper = sqrt(3)*Q/sqrt(Q') with Q = Q' = 3 at the identity
  CHECK(hi_i == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(lo_i <= 1.0);
  CHECK(hi_i >= 1.0);

  RationalMatrix d(3);
  d.at(0, 0) = rat(4);
  d.at(1, 1) = rat(1);
  d.at(2, 2) = rat(1, 4);
  auto [lo_d, hi_d] = sigma_gap_bounds(d);
  double gap_d = sigma_gap(d);
  CHECK(gap_d == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(lo_d <= gap_d * (1 + 1e-12));
  CHECK(hi_d >= gap_d * (1 - 1e-12));

  RationalMatrix u = RationalMatrix::unitriangular(rat(0), rat(1000), rat(0));
  auto [lo_u, hi_u] = sigma_gap_bounds(u);
  double gap_u = sigma_gap(u);
  CHECK(lo_u <= gap_u * (1 + 1e-12));
  CHECK(hi_u >= gap_u * (1 - 1e-12));
  CHECK(lo_u > 100.0);  // diverges with the (1,3) entry
}

TEST_CASE("random det-1 sample: product of sigmas, inverse symmetry, brackets") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 200; ++i) {
    RationalMatrix g = testsupport::random_sl3(rng);
    REQUIRE(g.det() == rat(1));
    CartanVector mu = cartan_projection(g);
    double sum = mu.mu[0] + mu.mu[1] + mu.mu[2];
    CHECK(std::fabs(sum) <= 1e-9);

    CartanVector mui = cartan_projection(g.inverse());
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(mui.mu[k] + mu.mu[2 - k]) <= 1e-9);

    double logQ = log_rational(g.frobenius_norm_sq());
    CHECK(2 * mu.mu[0] <= logQ + 1e-9);
    CHECK(2 * mu.mu[0] >= logQ - std::log(3.0) - 1e-9);

    auto [lo, hi] = sigma_gap_bounds(g);
    double gap = std::exp(mu.mu[0] - mu.mu[1]);
    CHECK(lo <= gap * (1 + 1e-9));
    CHECK(hi >= gap * (1 - 1e-9));
  }
}
