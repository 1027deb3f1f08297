#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "regulus/matrix.hpp"
#include "regulus/svd.hpp"
#include "test_support.hpp"

using namespace regulus;

namespace {

/// Standalone oracle: real roots of a monic cubic t^3 + p2 t^2 + p1 t + p0
/// via the trigonometric method. Independent of the Jacobi solver.
std::vector<double> cubic_roots(double p2, double p1, double p0) {
  double a = p1 - p2 * p2 / 3.0;
  double b = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
  double shift = -p2 / 3.0;
  double r = 2.0 * std::sqrt(-a / 3.0);
  double arg = std::clamp(3.0 * b / (a * r), -1.0, 1.0);
  double phi = std::acos(arg) / 3.0;
  std::vector<double> roots;
  for (int k = 0; k < 3; ++k)
    roots.push_back(shift + r * std::cos(phi - 2.0 * M_PI * k / 3.0));
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

/// Exact characteristic-polynomial coefficients of g^T g for d = 3:
/// t^3 - tr t^2 + m2 t - det, with m2 the sum of principal 2x2 minors.
std::vector<double> singular_value_oracle(const RationalMatrix& g) {
  RationalMatrix s = g.transpose() * g;
  Rational tr = s.at(0, 0) + s.at(1, 1) + s.at(2, 2);
  Rational m2(0);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      m2 += s.at(i, i) * s.at(j, j) - s.at(i, j) * s.at(j, i);
  Rational det = s.det();
  auto roots = cubic_roots(-tr.get_d(), m2.get_d(), -det.get_d());
  for (double& r : roots) r = std::sqrt(r);
  return roots;
}

}  // namespace

TEST_CASE("singular values of simple matrices") {
  SingularTriple id = singular_values(RationalMatrix::identity(3));
  for (double s : id.sigma) CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(id.certified_error <= 1e-14);

  RationalMatrix d(3);
  d.at(0, 0) = rat(4);
  d.at(1, 1) = rat(1, 2);
  d.at(2, 2) = rat(1, 2);
  SingularTriple sd = singular_values(d);
  CHECK(sd.sigma[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sd.sigma[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sd.sigma[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("singular values of unitriangular(3,4,0) match the cubic oracle") {
  RationalMatrix g = RationalMatrix::unitriangular(rat(3), rat(4), rat(0));
  SingularTriple t = singular_values(g);
  auto oracle = singular_value_oracle(g);
  for (int i = 0; i < 3; ++i)
    CHECK(t.sigma[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
  CHECK(t.sigma[0] * t.sigma[1] * t.sigma[2] == doctest::Approx(1.0).epsilon(1e-9));
  // ||g||_F^2 = 28, and sigma1 is bracketed by sqrt(28)/sqrt(3) and sqrt(28).
  CHECK(t.sigma[0] >= std::sqrt(28.0 / 3.0) - 1e-12);
  CHECK(t.sigma[0] <= std::sqrt(28.0) + 1e-12);
  CHECK(t.certified_error <= 1e-12 * t.sigma[0]);
}

TEST_CASE("cartan projection") {
  CartanVector id = cartan_projection(RationalMatrix::identity(3));
  for (double m : id.mu) CHECK(std::fabs(m) <= 1e-14);

  RationalMatrix d(3);
  d.at(0, 0) = rat(4);
  d.at(1, 1) = rat(1);
  d.at(2, 2) = rat(1, 4);
  CartanVector mu = cartan_projection(d);
  CHECK(mu.mu[0] == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(std::fabs(mu.mu[1]) <= 1e-12);
  CHECK(mu.mu[2] == doctest::Approx(-std::log(4.0)).epsilon(1e-12));

  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    RationalMatrix g = testsupport::random_sl3(rng);
    CartanVector a = cartan_projection(g), b = cartan_projection(g.inverse());
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(b.mu[k] + a.mu[2 - k]) <= 1e-9);
  }
}

TEST_CASE("sigma_gap survives entries far beyond double range") {
  RationalMatrix u = RationalMatrix::unitriangular(
      rat(0), Rational(mpz_class(10) << 1200), rat(0));
  SingularTriple t = singular_values(u);
  CHECK(std::isfinite(t.log_sigma[0]));
  CHECK(std::isfinite(t.log_sigma[2]));
  // For unitriangular(0,y,0), sigma = (|y|, 1, 1/|y|), so log gap = log|y|.
  double logy = std::log(10.0) + 1200 * std::log(2.0);
  CHECK(t.log_sigma[0] == doctest::Approx(logy).epsilon(1e-9));
  CHECK(t.log_sigma[0] - t.log_sigma[1] == doctest::Approx(logy).epsilon(1e-9));
}

TEST_CASE("unitriangular(0,b,c): closed-form singular values at large (b,c)") {
  // g = I + u e3^T with u = (b, c, 0): sigma2 = 1 exactly, and
  // sigma1^2 = (B + sqrt(B^2 - 4))/2 with B = 2 + b^2 + c^2.
  double b = 1e6, c = 3e6;
  RationalMatrix u = RationalMatrix::unitriangular(rat(0), rat(1000000),
                                                   rat(3000000));
  double B = 2.0 + b * b + c * c;
  double s1 = std::sqrt((B + std::sqrt(B * B - 4.0)) / 2.0);
  double gap = sigma_gap(u);
  CHECK(gap == doctest::Approx(s1).epsilon(1e-9));
  CHECK(gap > 1e6);
}

TEST_CASE("jacobi_symmetric solves a known symmetric matrix") {
  // [[2,1,0],[1,2,0],[0,0,5]] has eigenvalues 5, 3, 1.
  std::vector<double> a{2, 1, 0, 1, 2, 0, 0, 0, 5};
  JacobiResult r = jacobi_symmetric(a, 3);
  CHECK(r.eigenvalues[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.offdiag <= 1e-12);
  // eigenvectors: orthonormal rows satisfying A v = lambda v
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0;
      for (int k = 0; k < 3; ++k) dot += r.vectors[i][k] * r.vectors[j][k];
      CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    }
    for (int row = 0; row < 3; ++row) {
      double av = 0;
      for (int k = 0; k < 3; ++k) av += a[row * 3 + k] * r.vectors[i][k];
      CHECK(av == doctest::Approx(r.eigenvalues[i] * r.vectors[i][row])
                      .epsilon(1e-9));
    }
  }
}

TEST_CASE("svd: singular bases are orthonormal and consistent") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    RationalMatrix g = testsupport::random_sl3(rng);
    SvdResult s = svd(g);
    auto scaled = g.to_scaled_double();
    double scale = std::ldexp(1.0, static_cast<int>(scaled.exponent));
    for (int i = 0; i < 3; ++i) {
      // g v_i should have norm sigma_i and direction +/- u_i
      std::vector<double> gv(3, 0.0);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          gv[r] += scaled.entries[r * 3 + c] * scale * s.right[i][c];
      double norm = std::sqrt(gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2]);
      CHECK(norm == doctest::Approx(s.values.sigma[i]).epsilon(1e-7));
      double dot = 0;
      for (int r = 0; r < 3; ++r) dot += gv[r] * s.left[i][r];
      CHECK(std::fabs(dot) == doctest::Approx(norm).epsilon(1e-7));
    }
  }
}

TEST_CASE("random sample: sigma_k^2 are roots of the exact characteristic polynomial") {
  // Independent check that avoids solving the cubic in floating point: the
  // squared singular values must be roots of p(l) = l^3 - tr l^2 + s2 l - 1,
  // whose coefficients come from g^T g in exact arithmetic. Accept sigma_k
  // when |p(x)| is explained by the certified root error (first- and
  // second-order terms) plus the Horner evaluation noise.
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    RationalMatrix g = testsupport::random_sl3(rng, 4);
    SingularTriple t = singular_values(g);
    RationalMatrix a = g.transpose() * g;
    Rational tr_q = a.at(0, 0) + a.at(1, 1) + a.at(2, 2);
    Rational s2_q = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0) +
                    a.at(0, 0) * a.at(2, 2) - a.at(0, 2) * a.at(2, 0) +
                    a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1);
    double c2 = tr_q.get_d(), c1 = s2_q.get_d();
    double prod = 1.0;
    for (int k = 0; k < 3; ++k) {
      double x = t.sigma[k] * t.sigma[k];
      prod *= t.sigma[k];
      double p = ((x - c2) * x + c1) * x - 1.0;
      double pd = (3.0 * x - 2.0 * c2) * x + c1;
      double pdd = 6.0 * x - 2.0 * c2;
      double scale = ((x + c2) * x + c1) * x + 1.0;
      double ex = 2.0 * t.sigma[k] * (10 * t.certified_error + 1e-9 * t.sigma[k]);
      CHECK(std::fabs(p) <=
            4.0 * (std::fabs(pd) * ex + 0.5 * std::fabs(pdd) * ex * ex) +
                1e-12 * scale);
    }
    CHECK(prod == doctest::Approx(1.0).epsilon(1e-9));
  }
}
