#include "regulus/z2.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "regulus/svd.hpp"

namespace regulus {

namespace {

Rational rat_abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

mpz_class binom2(const mpz_class& n) { return n * (n - 1) / 2; }

// Primitive integer direction (n, m) with n*w + m*u = 0, for parallel w, u.
std::pair<mpz_class, mpz_class> kernel_direction(const Rational& w0, const Rational& w1,
                                                 const Rational& u0, const Rational& u1) {
  bool wz = sgn(w0) == 0 && sgn(w1) == 0;
  bool uz = sgn(u0) == 0 && sgn(u1) == 0;
  if (wz) return {1, 0};
  if (uz) return {0, 1};
  const Rational& wc = sgn(w0) != 0 ? w0 : w1;
  const Rational& uc = sgn(w0) != 0 ? u0 : u1;
  Rational t = uc / wc;  // u = t*w componentwise (vectors are parallel)
  return {-t.get_num(), t.get_den()};
}

WitnessSequence kernel_witness(const mpz_class& n0, const mpz_class& m0) {
  WitnessSequence w;
  w.kind = WitnessKind::Z_ZERO_DISCRETENESS;
  std::ostringstream os;
  os << "kernel family: x^(" << n0 << "t) y^(" << m0 << "t) maps to the identity";
  w.description = os.str();
  w.bound = 0.0;
  mpz_class n = n0, m = m0;
  w.member = [n, m](long t) { return std::make_pair(mpz_class(n * t), mpz_class(m * t)); };
  return w;
}

// Continued-fraction convergents p/q of a double ratio.
std::vector<std::pair<mpz_class, mpz_class>> convergents(double r, int max_terms) {
  std::vector<std::pair<mpz_class, mpz_class>> out;  // (p, q)
  mpz_class p0 = 1, q0 = 0, p1(std::floor(r)), q1 = 1;
  out.emplace_back(p1, q1);
  double x = r;
  for (int i = 1; i < max_terms; ++i) {
    double frac = x - std::floor(x);
    if (frac < 1e-14) break;
    x = 1.0 / frac;
    mpz_class a(std::floor(x));
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    out.emplace_back(p2, q2);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

}  // namespace

Rational unipotent_gap_ratio(const UnipotentTriple& t) {
  Rational denom = rat_abs(t.x) + rat_abs(t.z) + rat_abs(t.x * t.z - t.y);
  if (sgn(denom) == 0) {
    if (sgn(t.y) == 0) throw std::domain_error("ratio undefined at identity");
    throw std::logic_error("unreachable: denominator vanishes only at identity");
  }
  return (t.x * t.x + t.y * t.y + t.z * t.z) / denom;
}

Z2UnipotentRep Z2UnipotentRep::create(Rational a_x, Rational b_x, Rational c_x,
                                      Rational a_y, Rational b_y, Rational c_y) {
  if (cmp(a_x * c_y, a_y * c_x) != 0)
    throw std::invalid_argument("not a Z^2 representation: generators do not commute");
  return {std::move(a_x), std::move(b_x), std::move(c_x),
          std::move(a_y), std::move(b_y), std::move(c_y)};
}

RationalMatrix Z2UnipotentRep::gen_x() const {
  return RationalMatrix::unitriangular(a_x, b_x, c_x);
}
RationalMatrix Z2UnipotentRep::gen_y() const {
  return RationalMatrix::unitriangular(a_y, b_y, c_y);
}
GeneratorMap Z2UnipotentRep::generators() const {
  return {{"x", gen_x()}, {"y", gen_y()}};
}

Rational Z2UnipotentRep::Bx() const { return b_x - a_x * a_x / 2; }
Rational Z2UnipotentRep::By() const { return b_y - a_y * a_y / 2; }

Rational Z2UnipotentRep::Z() const {
  if (sgn(a_x) == 0) throw std::domain_error("Z undefined when a_x = 0");
  return 2 * (By() - (a_y / a_x) * Bx());
}

bool Z2UnipotentRep::is_slope_normalized() const {
  return cmp(a_x, c_x) == 0 && cmp(a_y, c_y) == 0;
}

Z2UnipotentRep Z2UnipotentRep::slope_normalized() const {
  if (is_slope_normalized()) return *this;
  if (sgn(a_x) == 0 || sgn(c_x) == 0)
    throw std::domain_error("slope normalization requires a_x c_x != 0");
  Rational lambda = c_x / a_x;
  // conjugation by diag(1,1,lambda): (a,b,c) -> (a, b/lambda, c/lambda)
  return {a_x, b_x / lambda, c_x / lambda, a_y, b_y / lambda, c_y / lambda};
}

UnipotentTriple Z2UnipotentRep::power(const mpz_class& n, const mpz_class& m) const {
  UnipotentTriple t;
  t.x = Rational(n) * a_x + Rational(m) * a_y;
  t.z = Rational(n) * c_x + Rational(m) * c_y;
  t.y = Rational(n) * b_x + Rational(binom2(n)) * a_x * c_x + Rational(m) * b_y +
        Rational(binom2(m)) * a_y * c_y + Rational(n * m) * a_x * c_y;
  return t;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::REGULAR_LATTICE_LINE_TYPE: return "REGULAR_LATTICE_LINE_TYPE";
    case VerdictKind::REGULAR_LATTICE_PLANE_TYPE: return "REGULAR_LATTICE_PLANE_TYPE";
    case VerdictKind::NOT_REGULAR: return "NOT_REGULAR";
    case VerdictKind::NOT_FAITHFUL_OR_NOT_DISCRETE:
      return "NOT_FAITHFUL_OR_NOT_DISCRETE";
  }
  return "?";
}

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::CLAIM2: return "CLAIM2";
    case WitnessKind::DIAGONAL: return "DIAGONAL";
    case WitnessKind::JORDAN: return "JORDAN";
    case WitnessKind::MIXED_REDUCED: return "MIXED_REDUCED";
    case WitnessKind::Z_ZERO_DISCRETENESS: return "Z_ZERO_DISCRETENESS";
  }
  return "?";
}

std::pair<mpz_class, UnipotentTriple> witness_claim2(const Z2UnipotentRep& rep,
                                                     const mpz_class& m) {
  if (sgn(rep.a_x) == 0) throw std::invalid_argument("witness_claim2: a_x = 0");
  if (!rep.is_slope_normalized())
    throw std::invalid_argument("witness_claim2: rep must be slope-normalized");
  Rational z = rep.Z();
  if (sgn(z) == 0) throw std::invalid_argument("witness_claim2: Z = 0");
  if (sgn(Rational(m) * z) >= 0)
    throw std::invalid_argument("witness_claim2: require m*Z < 0");

  Rational mz_abs = rat_abs(Rational(m) * z);
  Rational r = -Rational(m) * rep.a_y / rep.a_x;
  Rational s = Rational(1) / rep.a_x;
  mpz_class n = exact_floor_r_plus_s_sqrt_t(r, s, mz_abs);

  UnipotentTriple t = rep.power(n, m);
  // |a(m, n_m) - sqrt(|mZ|)| <= |a_x|, exactly.
  Rational ax_abs = rat_abs(rep.a_x);
  if (cmp_rational_sqrt(t.x - ax_abs, mz_abs) > 0 ||
      cmp_rational_sqrt(t.x + ax_abs, mz_abs) < 0)
    throw std::logic_error("witness_claim2: bracketing identity failed");
  return {n, t};
}

std::function<std::pair<mpz_class, mpz_class>(long)> witness_z_zero(
    const Z2UnipotentRep& rep) {
  if (sgn(rep.a_x) == 0) throw std::invalid_argument("witness_z_zero: a_x = 0");
  if (sgn(rep.Z()) != 0) throw std::invalid_argument("witness_z_zero: Z != 0");
  Rational q = rep.a_y / rep.a_x;
  mpz_class u = q.get_num(), v = q.get_den();
  // k a_x + r a_y = 0 along (k, r) = t (u, -v).
  return [u, v](long t) { return std::make_pair(mpz_class(u * t), mpz_class(-(v * t))); };
}

std::function<std::pair<mpz_class, mpz_class>(long)> witness_diagonal(
    const std::vector<Rational>& eigen_x, const std::vector<Rational>& eigen_y) {
  if (eigen_x.size() != eigen_y.size() || eigen_x.size() < 2)
    throw std::invalid_argument("witness_diagonal: bad eigenvalue triples");
  const size_t d = eigen_x.size();
  std::vector<double> u(d), v(d);
  for (size_t i = 0; i < d; ++i) {
    if (sgn(eigen_x[i]) == 0 || sgn(eigen_y[i]) == 0)
      throw std::invalid_argument("witness_diagonal: zero eigenvalue");
    u[i] = log_rational(rat_abs(eigen_x[i]));
    v[i] = log_rational(rat_abs(eigen_y[i]));
  }
  bool lx_zero = cmp(rat_abs(eigen_x[0]), rat_abs(eigen_x[1])) == 0;
  bool ly_zero = cmp(rat_abs(eigen_y[0]), rat_abs(eigen_y[1])) == 0;

  auto growth = [&](const mpz_class& n, const mpz_class& m) {
    double g = 0;
    for (size_t i = 0; i < d; ++i)
      g = std::max(g, n.get_d() * u[i] + m.get_d() * v[i]);
    return g;
  };
  auto scaled_family = [&](mpz_class n0, mpz_class m0)
      -> std::function<std::pair<mpz_class, mpz_class>(long)> {
    if (growth(n0, m0) <= 1e-12 && growth(-n0, -m0) > 1e-12) {
      n0 = -n0;
      m0 = -m0;
    }
    if (growth(n0, m0) <= 1e-12)
      throw std::invalid_argument(
          "witness_diagonal: degenerate input, no diverging wall direction");
    return [n0, m0](long t) { return std::make_pair(mpz_class(n0 * t), mpz_class(m0 * t)); };
  };

  if (lx_zero && ly_zero) {
    // Either generator already travels along the wall; prefer x.
    bool x_grows = false, y_grows = false;
    for (size_t i = 0; i < d; ++i) {
      x_grows = x_grows || std::abs(u[i]) > 1e-12;
      y_grows = y_grows || std::abs(v[i]) > 1e-12;
    }
    if (x_grows) return scaled_family(1, 0);
    if (y_grows) return scaled_family(0, 1);
    throw std::invalid_argument(
        "witness_diagonal: degenerate input, both log-ratio forms vanish");
  }
  if (lx_zero) return scaled_family(1, 0);
  if (ly_zero) return scaled_family(0, 1);

  double Lx = u[0] - u[1], Ly = v[0] - v[1];
  double ratio = -Lx / Ly;
  auto conv = convergents(ratio, 30);
  // keep convergents whose linear form stays within the bound C0 = 1
  std::vector<std::pair<mpz_class, mpz_class>> pairs;
  for (auto& [p, q] : conv) {
    if (q == 0) continue;
    double form = q.get_d() * Lx + p.get_d() * Ly;
    if (std::abs(form) <= 1.0) pairs.emplace_back(q, p);
  }
  if (pairs.empty()) throw std::invalid_argument("witness_diagonal: no admissible pairs");
  // If the linear form vanishes (to machine precision) on the final
  // convergent, its multiples already satisfy the bound; scale that single
  // direction, provided it actually moves the spectrum. Otherwise walk the
  // convergents so the exponents still go to infinity.
  const mpz_class& ln = pairs.back().first;
  const mpz_class& lm = pairs.back().second;
  bool exact_wall = pairs.size() == 1 ||
                    std::abs(lm.get_d() * Ly + ln.get_d() * Lx) < 1e-12;
  if (exact_wall && (growth(ln, lm) > 1e-12 || growth(-ln, -lm) > 1e-12))
    return scaled_family(ln, lm);
  std::vector<std::pair<mpz_class, mpz_class>> fixed;
  for (auto& [n, m] : pairs) {
    if (growth(n, m) >= growth(-n, -m))
      fixed.emplace_back(n, m);
    else
      fixed.emplace_back(-n, -m);
  }
  return [fixed](long t) {
    size_t i = std::min<size_t>(t < 1 ? 0 : t - 1, fixed.size() - 1);
    long scale = t > static_cast<long>(fixed.size())
                     ? t - static_cast<long>(fixed.size()) + 1
                     : 1;
    return std::make_pair(mpz_class(fixed[i].first * scale),
                           mpz_class(fixed[i].second * scale));
  };
}

std::function<std::pair<mpz_class, mpz_class>(long)> witness_jordan(
    const Rational& lambda_x, const Rational& lambda_y, const Rational& alpha_y) {
  if (sgn(lambda_x) == 0 || sgn(lambda_y) == 0)
    throw std::invalid_argument("witness_jordan: zero eigenvalue");
  Rational one(1);
  bool lx_unit = cmp(rat_abs(lambda_x), one) == 0;
  bool ly_unit = cmp(rat_abs(lambda_y), one) == 0;
  if (lx_unit && ly_unit)
    throw std::invalid_argument("witness_jordan: impossible divergence, |lambda| = 1");

  Rational r2 = alpha_y / lambda_y;
  if (sgn(r2) == 0) {
    if (ly_unit)
      throw std::invalid_argument(
          "witness_jordan: impossible divergence along the admissible direction");
    long s = cmp(rat_abs(lambda_y), one) > 0 ? 1 : -1;
    return [s](long t) { return std::make_pair(mpz_class(0), mpz_class(s * t)); };
  }
  Rational r1 = Rational(1) / lambda_x;
  Rational q = r2 / r1;  // kernel: n = q * (-m)
  mpz_class un = q.get_num(), vd = q.get_den();
  // direction (n, m) = (u, -v) kills the nilpotent form exactly; the growth
  // per step is |lambda_x^u lambda_y^-v|
  auto rat_pow = [](const Rational& b, const mpz_class& e) {
    Rational r(1);
    mpz_class k = abs(e);
    Rational base = sgn(e) >= 0 ? b : Rational(1) / b;
    for (mpz_class i = 0; i < k; ++i) r *= base;
    return r;
  };
  if (abs(un) > 64 || abs(vd) > 64)
    throw std::invalid_argument("witness_jordan: direction exponents too large");
  Rational growth = rat_pow(rat_abs(lambda_x), un) * rat_pow(rat_abs(lambda_y), -vd);
  if (cmp(growth, one) == 0)
    throw std::invalid_argument("witness_jordan: impossible divergence");
  long s = cmp(growth, one) > 0 ? 1 : -1;
  return [un, vd, s](long t) { return std::make_pair(mpz_class(un * s * t), mpz_class(-(vd * s * t))); };
}

Z2UnipotentRep reduce_mixed(const Z2UnipotentRep& rep) {
  bool x_central = sgn(rep.a_x) == 0 && sgn(rep.c_x) == 0;
  bool y_central = sgn(rep.a_y) == 0 && sgn(rep.c_y) == 0;
  bool x_full = sgn(rep.a_x) != 0 && sgn(rep.c_x) != 0;
  bool y_full = sgn(rep.a_y) != 0 && sgn(rep.c_y) != 0;
  if (x_central && y_full) {
    // basis (x y, y)
    return Z2UnipotentRep::create(rep.a_y, rep.b_x + rep.b_y, rep.c_y, rep.a_y, rep.b_y,
                                  rep.c_y);
  }
  if (y_central && x_full) {
    // basis (x y, x)
    return Z2UnipotentRep::create(rep.a_x, rep.b_x + rep.b_y, rep.c_x, rep.a_x, rep.b_x,
                                  rep.c_x);
  }
  throw std::invalid_argument(
      "reduce_mixed: need one generator with a = c = 0 and one with a c != 0");
}

GeneratorMap dual_rep(const GeneratorMap& generators) {
  GeneratorMap out;
  for (const auto& [name, g] : generators) out.emplace(name, g.inverse().transpose());
  return out;
}

Z2UnipotentRep dual_of_z2(const Z2UnipotentRep& rep) {
  // inverse-transpose conjugated by coordinate reversal: (a,b,c) -> (-c, ac-b, -a)
  return Z2UnipotentRep::create(-rep.c_x, rep.a_x * rep.c_x - rep.b_x, -rep.a_x,
                                -rep.c_y, rep.a_y * rep.c_y - rep.b_y, -rep.a_y);
}

namespace {

WitnessSequence claim2_witness(const Z2UnipotentRep& normalized) {
  Rational z = normalized.Z();
  int zs = sgn(z);
  WitnessSequence w;
  w.kind = WitnessKind::CLAIM2;
  {
    std::ostringstream os;
    os << "family w_t = x^(n_t) y^(m_t), m_t = " << (zs > 0 ? "-t" : "t")
       << ", n_t = floor(-m_t a_y/a_x + sqrt(|m_t Z|)/a_x), Z = " << to_string(z);
    w.description = os.str();
  }
  Z2UnipotentRep rep = normalized;
  w.member = [rep, zs](long t) {
    mpz_class m = zs > 0 ? mpz_class(-t) : mpz_class(t);
    auto [n, triple] = witness_claim2(rep, m);
    return std::make_pair(n, m);
  };
  // Conservative reported bound: 4x the observed sup over a log-spaced
  // sample, floored at 50 (the comparability constants are implicit).
  double max_ratio = 1.0;
  for (long t = 1; t <= 1024; t *= 2) {
    mpz_class m = zs > 0 ? mpz_class(-t) : mpz_class(t);
    auto [n, triple] = witness_claim2(rep, m);
    max_ratio = std::max(max_ratio, sigma_gap(triple.matrix()));
  }
  w.bound = std::max(50.0, 4.0 * max_ratio);
  return w;
}

}  // namespace

Verdict classify_z2(const Z2UnipotentRep& rep) {
  Verdict v;
  bool ax0 = sgn(rep.a_x) == 0, cx0 = sgn(rep.c_x) == 0;
  bool ay0 = sgn(rep.a_y) == 0, cy0 = sgn(rep.c_y) == 0;

  if (ax0 && ay0) {
    Rational det = rep.b_x * rep.c_y - rep.c_x * rep.b_y;
    if (sgn(det) != 0) {
      v.kind = VerdictKind::REGULAR_LATTICE_PLANE_TYPE;
      return v;
    }
    v.kind = VerdictKind::NOT_FAITHFUL_OR_NOT_DISCRETE;
    auto [n0, m0] = kernel_direction(rep.b_x, rep.c_x, rep.b_y, rep.c_y);
    v.witness = kernel_witness(n0, m0);
    return v;
  }
  if (cx0 && cy0) {
    Rational det = rep.a_x * rep.b_y - rep.b_x * rep.a_y;
    if (sgn(det) != 0) {
      v.kind = VerdictKind::REGULAR_LATTICE_LINE_TYPE;
      return v;
    }
    v.kind = VerdictKind::NOT_FAITHFUL_OR_NOT_DISCRETE;
    auto [n0, m0] = kernel_direction(rep.a_x, rep.b_x, rep.a_y, rep.b_y);
    v.witness = kernel_witness(n0, m0);
    return v;
  }

  bool x_full = !ax0 && !cx0, y_full = !ay0 && !cy0;
  bool x_central = ax0 && cx0, y_central = ay0 && cy0;

  if (x_full && y_full) {
    Z2UnipotentRep norm = rep.slope_normalized();
    if (!rep.is_slope_normalized()) {
      std::ostringstream os;
      os << "conjugated by diag(1,1," << to_string(rep.c_x / rep.a_x)
         << ") to equalize shears";
      v.normalization.push_back(os.str());
    }
    if (sgn(norm.Z()) == 0) {
      v.kind = VerdictKind::NOT_FAITHFUL_OR_NOT_DISCRETE;
      Rational q = norm.a_y / norm.a_x;
      v.witness = kernel_witness(q.get_num(), -q.get_den());
      return v;
    }
    v.kind = VerdictKind::NOT_REGULAR;
    v.witness = claim2_witness(norm);
    return v;
  }

  if ((x_central && y_full) || (y_central && x_full)) {
    const Rational& central_b = x_central ? rep.b_x : rep.b_y;
    if (sgn(central_b) == 0) {
      v.kind = VerdictKind::NOT_FAITHFUL_OR_NOT_DISCRETE;
      v.witness = kernel_witness(x_central ? 1 : 0, x_central ? 0 : 1);
      return v;
    }
    Z2UnipotentRep reduced = reduce_mixed(rep);
    v.normalization.push_back(x_central ? "rebased to (x y, y)" : "rebased to (x y, x)");
    Verdict inner = classify_z2(reduced);
    for (auto& s : inner.normalization) v.normalization.push_back(std::move(s));
    v.kind = inner.kind;
    v.witness = std::move(inner.witness);
    if (v.witness && v.witness->kind == WitnessKind::CLAIM2) {
      v.witness->kind = WitnessKind::MIXED_REDUCED;
      v.witness->description += " (exponents refer to the rebased generators)";
    }
    return v;
  }

  throw std::logic_error("classify_z2: unreachable generator configuration");
}

}  // namespace regulus
