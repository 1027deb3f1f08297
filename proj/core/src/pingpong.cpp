#include "regulus/pingpong.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "regulus/svd.hpp"

namespace regulus {

namespace {

constexpr double kGeomSlop = 1e-7;  // numeric safety added to certified radii

// ---------------------------------------------------------------- polynomials

using Poly = std::vector<Rational>;  // coefficient of t^i at index i

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (sgn(p[i]) != 0) return i;
  return -1;
}

Poly trim(Poly p) {
  p.resize(degree(p) + 1);
  return p;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rational(long(i)) * p[i]);
  return trim(d);
}

Poly monic(Poly p) {
  p = trim(p);
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly poly_rem(Poly a, const Poly& b) {
  a = trim(a);
  int db = degree(b);
  while (degree(a) >= db) {
    Rational f = a.back() / b[db];
    int shift = degree(a) - db;
    for (int i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
    a = trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  a = monic(std::move(a));
  b = monic(std::move(b));
  while (!b.empty()) {
    Poly r = monic(poly_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  Poly rem = trim(a), q(std::max<std::size_t>(1, rem.size()), Rational(0));
  int db = degree(b);
  while (degree(rem) >= db) {
    Rational f = rem.back() / b[db];
    int shift = degree(rem) - db;
    q[shift] = f;
    for (int i = 0; i <= db; ++i) rem[i + shift] -= f * b[i];
    rem = trim(rem);
    if (rem.empty()) break;
  }
  return trim(q);
}

// det(tI - g) via the Faddeev-LeVerrier recurrence, exact.
Poly char_poly(const RationalMatrix& g) {
  int d = g.dim();
  Poly c(d + 1, Rational(0));
  c[d] = 1;
  RationalMatrix m = g;
  for (int k = 1; k <= d; ++k) {
    Rational tr(0);
    for (int i = 0; i < d; ++i) tr += m.at(i, i);
    c[d - k] = -tr / k;
    if (k == d) break;
    RationalMatrix shifted = m;
    for (int i = 0; i < d; ++i) shifted.at(i, i) += c[d - k];
    m = g * shifted;
  }
  return c;
}

// Durand-Kerner on a squarefree monic polynomial.
std::vector<std::complex<double>> dk_roots(const Poly& p) {
  int d = degree(p);
  std::vector<std::complex<double>> coeff(d + 1);
  double lead = p[d].get_d();
  for (int i = 0; i <= d; ++i) coeff[i] = p[i].get_d() / lead;
  auto eval = [&](std::complex<double> t) {
    std::complex<double> v = 0;
    for (int i = d; i >= 0; --i) v = v * t + coeff[i];
    return v;
  };
  std::vector<std::complex<double>> z(d);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc = 1.0;
  for (int i = 0; i < d; ++i) {
    acc *= seed;
    z[i] = acc;
  }
  for (int it = 0; it < 500; ++it) {
    double move = 0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> denom = 1.0;
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= z[i] - z[j];
      std::complex<double> step = eval(z[i]) / denom;
      z[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-14) break;
  }
  return z;
}

// Eigenvalue moduli with multiplicity, descending (squarefree peeling).
std::vector<double> eigen_moduli(const RationalMatrix& g) {
  std::vector<double> mods;
  Poly q = char_poly(g);
  while (degree(q) >= 1) {
    Poly der = derivative(q);
    Poly common = poly_gcd(q, der);
    Poly sf = degree(common) >= 1 ? poly_div_exact(q, common) : monic(q);
    for (auto& root : dk_roots(sf)) mods.push_back(std::abs(root));
    q = std::move(common);
  }
  std::sort(mods.rbegin(), mods.rend());
  return mods;
}

// -------------------------------------------------------------- ball geometry

void validate_set(const BallUnionSet& s, const char* what) {
  if (s.centers.empty() || s.centers.size() != s.radii.size())
    throw std::invalid_argument(std::string(what) + ": malformed ball union");
  for (double r : s.radii)
    if (!(r > 0.0) || r > std::numbers::pi / 2 + 1e-12)
      throw std::invalid_argument(std::string(what) + ": radius out of (0, pi/2]");
}

struct Enclosure {
  ProjPoint center;
  double radius;
};

// Image of B(c, r) under g from the crude operator-norm estimate: valid for
// any g, tight only when g barely moves the ball.
std::optional<Enclosure> enclose_generic(const RationalMatrix& g, const ProjPoint& c,
                                         double r) {
  auto sd = g.to_scaled_double();
  int d = g.dim();
  std::vector<double> w(d, 0.0), gram(d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) w[i] += sd.entries[i * d + j] * c.v[j];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0;
      for (int k = 0; k < d; ++k) s += sd.entries[k * d + i] * sd.entries[k * d + j];
      gram[i * d + j] = s;
    }
  double s1 = std::sqrt(std::max(0.0, jacobi_symmetric(gram, d).eigenvalues[0]));
  double nm = 0;
  for (double x : w) nm += x * x;
  nm = std::sqrt(nm);
  if (nm <= 0) return std::nullopt;
  double k = s1 / nm * (1 + 1e-12);
  double denom = std::cos(r) - k * std::sin(r);
  if (denom <= 1e-12) return std::nullopt;
  double s = k * std::sin(r) / denom;
  if (s >= 1.0) return std::nullopt;
  return Enclosure{ProjPoint(w), std::asin(s) * (1 + 1e-9) + kGeomSlop};
}

// Image of B(c, r) under g centered at the top left-singular direction: the
// angle to u1 is at most asin((sigma2/sigma1) tan(angle to v1)).
std::optional<Enclosure> enclose_contracting(const SvdResult& sv, const ProjPoint& c,
                                             double r) {
  double ratio = std::exp(sv.values.log_sigma[1] - sv.values.log_sigma[0]);
  ProjPoint v1(sv.right[0]);
  double alpha = fs_distance(c, v1) + r + kGeomSlop;
  if (alpha >= std::numbers::pi / 2 - 1e-9) return std::nullopt;
  double s = ratio * std::tan(alpha);
  if (s >= 1.0) return std::nullopt;
  return Enclosure{ProjPoint(sv.left[0]), std::asin(s) * (1 + 1e-9) + kGeomSlop};
}

double slack_in_set(const Enclosure& e, const BallUnionSet& b) {
  double best = -std::numbers::pi;
  for (std::size_t j = 0; j < b.size(); ++j)
    best = std::max(best, b.radii[j] - fs_distance(e.center, b.centers[j]) - e.radius);
  return best;
}

std::vector<ProjPoint> boundary_samples(const ProjPoint& c, double r) {
  int d = c.dim();
  std::vector<std::vector<double>> basis;
  for (int axis = 0; axis < d && static_cast<int>(basis.size()) < d - 1; ++axis) {
    std::vector<double> e(d, 0.0);
    e[axis] = 1.0;
    double dp = 0;
    for (int i = 0; i < d; ++i) dp += e[i] * c.v[i];
    for (int i = 0; i < d; ++i) e[i] -= dp * c.v[i];
    for (const auto& b : basis) {
      double q = 0;
      for (int i = 0; i < d; ++i) q += e[i] * b[i];
      for (int i = 0; i < d; ++i) e[i] -= q * b[i];
    }
    double nm = 0;
    for (double x : e) nm += x * x;
    if (nm < 1e-12) continue;
    nm = std::sqrt(nm);
    for (auto& x : e) x /= nm;
    basis.push_back(std::move(e));
  }
  std::vector<std::vector<double>> dirs;
  for (const auto& b : basis) {
    dirs.push_back(b);
    std::vector<double> neg(b);
    for (auto& x : neg) x = -x;
    dirs.push_back(std::move(neg));
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2) {
          std::vector<double> v(d);
          for (int k = 0; k < d; ++k)
            v[k] = (si * basis[i][k] + sj * basis[j][k]) / std::sqrt(2.0);
          dirs.push_back(std::move(v));
        }
  std::vector<ProjPoint> pts;
  pts.push_back(c);
  for (double t : {r, 0.7 * r, 0.4 * r})
    for (const auto& u : dirs) {
      std::vector<double> v(d);
      for (int k = 0; k < d; ++k) v[k] = std::cos(t) * c.v[k] + std::sin(t) * u[k];
      pts.emplace_back(std::move(v));
    }
  return pts;
}

}  // namespace

// ----------------------------------------------------------------- proximality

ProximalityReport is_proximal(const RationalMatrix& g) {
  ProximalityReport rep;
  std::vector<double> mods = eigen_moduli(g);
  rep.top_eigenvalue_modulus = mods[0];
  rep.second_modulus = mods[1];
  rep.is_proximal = mods[0] > mods[1] * (1 + 1e-9);
  if (!rep.is_proximal) return rep;
  // Power up until the singular gap pins the attracting flag accurately.
  RationalMatrix h = g;
  for (int squarings = 0; squarings < 12 && sigma_gap(h) < 1e8; ++squarings) h = h * h;
  if (sigma_gap(h) > 1 + 1e-9) rep.attracting = attracting_flag(h).attracting;
  return rep;
}

std::optional<std::pair<GroupWord, ProximalityReport>> find_proximal(
    const BallSpec& spec) {
  for (int r = 1; r <= spec.radius; ++r) {
    for (auto& [word, m] : enumerate_sphere(spec, r)) {
      ProximalityReport rep = is_proximal(m);
      if (rep.is_proximal) return std::make_pair(word, std::move(rep));
    }
  }
  return std::nullopt;
}

// --------------------------------------------------------------- opposite point

namespace {

double covering_radius(const LimitSetSample& sample) {
  // Nearest-neighbor distance estimates how densely the sample scans a
  // continuum of limit flags. The sample is deduplicated at 1e-6, so a flag
  // with no neighbor nearby is an attracting fixed point that many elements
  // collapsed onto (e.g. a finite limit set), pinned to that tolerance --
  // not evidence of sparse coverage.
  constexpr double kIsolated = 0.15;
  if (sample.flags.size() < 2) return 0.0;
  double cover = 0.0;
  for (std::size_t i = 0; i < sample.flags.size(); ++i) {
    double nn = std::numbers::pi;
    for (std::size_t j = 0; j < sample.flags.size(); ++j) {
      if (i == j) continue;
      nn = std::min(nn, fs_distance(sample.flags[i].point, sample.flags[j].point));
    }
    if (nn > kIsolated) nn = 1e-6;
    cover = std::max(cover, nn);
  }
  return cover;
}

double flag_margin(const std::vector<double>& p, const std::vector<double>& c,
                   const LimitSetSample& sample) {
  double m = 1.0;
  for (const ProjFlag& s : sample.flags) {
    double a = 0, b = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      a += c[i] * s.point.v[i];
      b += s.hyperplane.conormal[i] * p[i];
    }
    m = std::min(m, std::min(std::abs(a), std::abs(b)));
  }
  return m;
}

void normalize(std::vector<double>& v) {
  double nm = 0;
  for (double x : v) nm += x * x;
  nm = std::sqrt(nm);
  for (auto& x : v) x /= nm;
}

void project_out(std::vector<double>& v, const std::vector<double>& unit) {
  double dp = 0;
  for (std::size_t i = 0; i < v.size(); ++i) dp += v[i] * unit[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dp * unit[i];
}

std::vector<std::vector<double>> integer_grid_dirs(int dim, int span) {
  std::vector<std::vector<double>> out;
  std::vector<int> k(dim, -span);
  while (true) {
    bool nonzero = false, canonical = false;
    for (int i = 0; i < dim; ++i)
      if (k[i] != 0) {
        nonzero = true;
        canonical = k[i] > 0;  // first nonzero positive: one per projective class
        break;
      }
    if (nonzero && canonical) {
      std::vector<double> v(k.begin(), k.end());
      normalize(v);
      out.push_back(std::move(v));
    }
    int i = 0;
    for (; i < dim; ++i) {
      if (k[i] < span) {
        ++k[i];
        break;
      }
      k[i] = -span;
    }
    if (i == dim) break;
  }
  return out;
}

}  // namespace

std::optional<ProjFlag> find_opposite_point(const LimitSetSample& sample) {
  if (sample.flags.empty()) throw std::invalid_argument("empty limit-set sample");
  int d = sample.flags.front().point.dim();
  double cover = covering_radius(sample);

  auto grid = integer_grid_dirs(d, 2);
  double best = -1.0;
  std::vector<double> best_p, best_c;
  for (const auto& p : grid) {
    for (auto c : grid) {
      project_out(c, p);
      double nm = 0;
      for (double x : c) nm += x * x;
      if (nm < 1e-4) continue;
      for (auto& x : c) x /= std::sqrt(nm);
      double m = flag_margin(p, c, sample);
      if (m > best) {
        best = m;
        best_p = p;
        best_c = c;
      }
    }
  }
  if (best < 0) return std::nullopt;

  // local refinement: coordinate hill-climb on the point, re-aligning the
  // hyperplane inside p-perp at each step
  double step = 0.1;
  for (int it = 0; it < 60; ++it) {
    bool improved = false;
    for (int axis = 0; axis < d; ++axis) {
      for (int sgn_ : {1, -1}) {
        std::vector<double> p = best_p;
        p[axis] += sgn_ * step;
        normalize(p);
        std::vector<double> c = best_c;
        project_out(c, p);
        double nm = 0;
        for (double x : c) nm += x * x;
        if (nm < 1e-8) continue;
        for (auto& x : c) x /= std::sqrt(nm);
        double m = flag_margin(p, c, sample);
        if (m > best) {
          best = m;
          best_p = std::move(p);
          best_c = std::move(c);
          improved = true;
        }
      }
      for (int sgn_ : {1, -1}) {
        std::vector<double> c = best_c;
        c[axis] += sgn_ * step;
        project_out(c, best_p);
        double nm = 0;
        for (double x : c) nm += x * x;
        if (nm < 1e-8) continue;
        for (auto& x : c) x /= std::sqrt(nm);
        double m = flag_margin(best_p, c, sample);
        if (m > best) {
          best = m;
          best_c = std::move(c);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-5) break;
  }

  if (best - cover <= 1e-3) return std::nullopt;
  project_out(best_c, best_p);
  normalize(best_c);
  return ProjFlag(ProjPoint(best_p), ProjHyperplane(best_c));
}

// ------------------------------------------------------------- set inclusion

std::pair<bool, double> map_set_inclusion(const RationalMatrix& g,
                                          const BallUnionSet& a,
                                          const BallUnionSet& b, double resolution) {
  validate_set(a, "A");
  validate_set(b, "B");
  if (!(resolution > 0)) throw std::invalid_argument("resolution must be positive");

  bool identity = g.is_identity();
  std::optional<SvdResult> sv;
  bool all_in = true;
  double min_slack = std::numbers::pi;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double slack = -std::numbers::pi;
    bool enclosed = false;
    if (identity) {
      slack = slack_in_set({a.centers[i], a.radii[i]}, b);
      enclosed = true;
    } else {
      if (auto e = enclose_generic(g, a.centers[i], a.radii[i])) {
        slack = std::max(slack, slack_in_set(*e, b));
        enclosed = true;
      }
      if (!sv) sv = svd(g);
      if (auto e = enclose_contracting(*sv, a.centers[i], a.radii[i])) {
        slack = std::max(slack, slack_in_set(*e, b));
        enclosed = true;
      }
    }
    if (!enclosed || slack <= 0) {
      all_in = false;
      break;
    }
    min_slack = std::min(min_slack, slack);
  }
  if (all_in) return {true, min_slack};

  // refutation pass: a sampled point provably landing outside B
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const ProjPoint& p : boundary_samples(a.centers[i], a.radii[i])) {
      ProjPoint q = identity ? p : apply(g, p);
      double dist = std::numbers::pi;
      for (std::size_t j = 0; j < b.size(); ++j)
        dist = std::min(dist, fs_distance(q, b.centers[j]) - b.radii[j]);
      worst = std::max(worst, dist);
    }
  }
  if (worst > kGeomSlop) return {false, -worst};
  throw std::runtime_error("resolution insufficient to certify inclusion");
}

std::vector<GroupWord> exceptional_elements(
    const std::vector<std::pair<GroupWord, RationalMatrix>>& delta_ball,
    const BallUnionSet& u, const BallUnionSet& w0, double resolution) {
  std::vector<GroupWord> out;
  for (const auto& [word, m] : delta_ball) {
    if (m.is_identity()) continue;
    bool ok;
    try {
      ok = map_set_inclusion(m, u, w0, resolution).first;
    } catch (const std::runtime_error&) {
      ok = false;
    }
    if (!ok) out.push_back(word);
  }
  return out;
}

std::optional<int> choose_power(const RationalMatrix& g, const BallUnionSet& w,
                                const BallUnionSet& v, int max_n, double resolution) {
  ProximalityReport rep = is_proximal(g);
  if (!rep.is_proximal) throw std::invalid_argument("choose_power: g is not proximal");
  ProximalityReport repi = is_proximal(g.inverse());
  for (const ProximalityReport* r : {&rep, &repi}) {
    if (!r->attracting) throw std::invalid_argument("choose_power: no attracting flag");
    bool inside = false;
    for (std::size_t j = 0; j < v.size(); ++j)
      inside = inside ||
               fs_distance(r->attracting->point, v.centers[j]) <= v.radii[j] + kGeomSlop;
    if (!inside)
      throw std::invalid_argument("choose_power: V misses an attracting point of g");
  }
  if (max_n < 1) return std::nullopt;

  std::vector<RationalMatrix> pos{g}, neg{g.inverse()};
  std::map<int, bool> memo;
  auto ok = [&](int n) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    while (static_cast<int>(pos.size()) < n) {
      pos.push_back(pos.back() * pos.front());
      neg.push_back(neg.back() * neg.front());
    }
    bool res;
    try {
      res = map_set_inclusion(pos[n - 1], w, v, resolution).first &&
            map_set_inclusion(neg[n - 1], w, v, resolution).first;
    } catch (const std::runtime_error&) {
      res = false;
    }
    memo.emplace(n, res);
    return res;
  };
  for (int n_base = 1; n_base <= max_n; ++n_base) {
    bool all = true;
    for (int n = n_base; n <= n_base + 5; ++n) all = all && ok(n);
    if (all) return n_base;
  }
  return std::nullopt;
}

// ----------------------------------------------------------------- word check

bool freeproduct_word_check(const GeneratorMap& group,
                            const std::vector<GroupWord>& delta_generators,
                            const GroupWord& gamma_n, int max_len, long budget,
                            long* enumerated) {
  if (max_len < 1 || max_len > 12)
    throw std::invalid_argument("syllable length cap must be in [1, 12]");
  int dim = group.begin()->second.dim();
  RationalMatrix id = RationalMatrix::identity(dim);

  auto push_unique = [](std::vector<RationalMatrix>& v, RationalMatrix m) {
    if (m.is_identity()) return;
    for (const auto& x : v)
      if (x == m) return;
    v.push_back(std::move(m));
  };

  std::vector<RationalMatrix> dsyl;
  for (const GroupWord& w : delta_generators) {
    RationalMatrix m = word_eval(group, w);
    push_unique(dsyl, m);
    push_unique(dsyl, m.inverse());
  }
  RationalMatrix gm = word_eval(group, gamma_n);
  if (gm.is_identity()) {  // an identity syllable is itself a relation
    if (enumerated) *enumerated = 0;
    return false;
  }
  std::vector<RationalMatrix> gsyl;
  push_unique(gsyl, gm);
  push_unique(gsyl, gm.inverse());
  push_unique(gsyl, gm * gm);
  push_unique(gsyl, (gm * gm).inverse());

  long count = 0;
  // depth-first over alternating syllable sequences
  auto dfs = [&](auto&& self, const RationalMatrix& acc, bool next_is_delta,
                 int remaining) -> bool {
    const auto& syls = next_is_delta ? dsyl : gsyl;
    for (const RationalMatrix& s : syls) {
      RationalMatrix m = acc * s;
      if (++count > budget)
        throw std::runtime_error("word check budget exceeded after " +
                                 std::to_string(count - 1) + " words");
      if (m.is_identity()) return false;
      if (remaining > 1 && !self(self, m, !next_is_delta, remaining - 1)) return false;
    }
    return true;
  };
  bool ok = (dsyl.empty() || dfs(dfs, id, true, max_len)) && dfs(dfs, id, false, max_len);
  if (enumerated) *enumerated = count;
  return ok;
}

// ----------------------------------------------------------------- certificate

bool verify_certificate(const PingPongCertificate& cert) {
  validate_set(cert.c1, "C1");
  validate_set(cert.c2, "C2");
  for (std::size_t i = 0; i < cert.c1.size(); ++i)
    for (std::size_t j = 0; j < cert.c2.size(); ++j)
      if (fs_distance(cert.c1.centers[i], cert.c2.centers[j]) <=
          cert.c1.radii[i] + cert.c2.radii[j] + kGeomSlop)
        throw std::runtime_error("C1 and C2 are not certifiably disjoint");

  GeneratorMap dgens;
  for (std::size_t i = 0; i < cert.delta_generators.size(); ++i)
    dgens.emplace("d" + std::to_string(i), word_eval(cert.group, cert.delta_generators[i]));
  BallSpec dspec{dgens, cert.delta_radius, true, 1,
                 std::max(kDefaultRadiusCap, cert.delta_radius)};

  for (int r = 1; r <= cert.delta_radius; ++r) {
    for (const auto& [word, m] : enumerate_sphere(dspec, r)) {
      if (m.is_identity()) continue;
      try {
        if (!map_set_inclusion(m, cert.c2, cert.c1, cert.grid_resolution).first)
          return false;
      } catch (const std::runtime_error&) {
        return false;
      }
    }
  }

  RationalMatrix gm = word_eval(cert.group, cert.gamma);
  RationalMatrix gmi = gm.inverse();
  for (int n = cert.power; n <= cert.power + 5; ++n) {
    try {
      if (!map_set_inclusion(gm.pow(n), cert.c1, cert.c2, cert.grid_resolution).first ||
          !map_set_inclusion(gmi.pow(n), cert.c1, cert.c2, cert.grid_resolution).first)
        return false;
    } catch (const std::runtime_error&) {
      return false;
    }
  }

  return freeproduct_word_check(cert.group, cert.delta_generators,
                                cert.gamma.pow(cert.power), 8);
}

// ---------------------------------------------------------------------- search

SearchResult pingpong_search(const GeneratorMap& group,
                             const std::vector<GroupWord>& delta_generators,
                             const SearchParams& params) {
  GeneratorMap dgens;
  for (std::size_t i = 0; i < delta_generators.size(); ++i)
    dgens.emplace("d" + std::to_string(i), word_eval(group, delta_generators[i]));

  BallSpec dspec{dgens, params.sample_radius, true, 1,
                 std::max(kDefaultRadiusCap, params.sample_radius)};
  LimitSetSample sample = limit_set_sample(dspec, params.gap_threshold);
  if (sample.flags.empty())
    return SearchFailure{"no-opposite-point", "limit-set sample is empty"};

  std::optional<ProjFlag> z = find_opposite_point(sample);
  if (!z)
    return SearchFailure{"no-opposite-point",
                         "no flag with eroded opposition margin above 1e-3"};

  double cover = covering_radius(sample);
  BallUnionSet w0;
  for (const ProjFlag& f : sample.flags) {
    w0.centers.push_back(f.point);
    w0.radii.push_back(cover + 0.05);
  }
  auto w0_margin = [&](const ProjPoint& p) {
    double m = std::numbers::pi;
    for (std::size_t j = 0; j < w0.size(); ++j)
      m = std::min(m, fs_distance(p, w0.centers[j]) - w0.radii[j]);
    return m;
  };
  // angular clearance of a hyperplane from the W0 balls; powers of gamma
  // contract W0 toward the axis only if W0 avoids both repelling hyperplanes
  auto w0_hyperplane_margin = [&](const ProjHyperplane& h) {
    double m = std::numbers::pi;
    for (std::size_t j = 0; j < w0.size(); ++j) {
      double s = std::min(1.0, std::abs(pairing(h, w0.centers[j])));
      m = std::min(m, std::asin(s) - w0.radii[j]);
    }
    return m;
  };

  // proximal elements whose axes stay clear of W0; keep several candidates
  // ranked by spectral gap, since a weakly proximal element may need more
  // than max_power iterations to contract W0 into C2
  struct GammaCandidate {
    GroupWord word;
    RationalMatrix matrix;
    ProjPoint p_plus, p_minus;
    double axis_margin;
    double gap;
  };
  BallSpec gspec{group, params.proximal_search_radius, true, 1,
                 std::max(kDefaultRadiusCap, params.proximal_search_radius)};
  std::vector<GammaCandidate> candidates;
  constexpr std::size_t kMaxCandidates = 12;
  for (int r = 1; r <= gspec.radius && candidates.size() < kMaxCandidates; ++r) {
    for (auto& [word, m] : enumerate_sphere(gspec, r)) {
      ProximalityReport rep = is_proximal(m);
      if (!rep.is_proximal || !rep.attracting) continue;
      ProximalityReport repi = is_proximal(m.inverse());
      if (!repi.attracting) continue;
      double mp = w0_margin(rep.attracting->point);
      double mm = w0_margin(repi.attracting->point);
      // hyperplane of the attracting flag of g^-1 = repelling hyperplane of
      // the forward dynamics, and vice versa
      double hp = w0_hyperplane_margin(repi.attracting->hyperplane);
      double hm = w0_hyperplane_margin(rep.attracting->hyperplane);
      double sep = fs_distance(rep.attracting->point, repi.attracting->point);
      if (mp > 0.1 && mm > 0.1 && hp > 0.1 && hm > 0.1 && sep > 0.25) {
        double gap = rep.second_modulus > 0
                         ? rep.top_eigenvalue_modulus / rep.second_modulus
                         : std::numeric_limits<double>::infinity();
        candidates.push_back({word, m, rep.attracting->point,
                              repi.attracting->point, std::min(mp, mm), gap});
        if (candidates.size() >= kMaxCandidates) break;
      }
    }
  }
  if (candidates.empty())
    return SearchFailure{"no-proximal",
                         "no proximal element with axis clear of the limit set"};
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const GammaCandidate& a, const GammaCandidate& b) {
                     return a.gap > b.gap;
                   });

  std::vector<std::pair<GroupWord, RationalMatrix>> dball;
  for (int r = 1; r <= params.delta_radius; ++r) {
    BallSpec b = dspec;
    b.radius = params.delta_radius;
    for (auto& e : enumerate_sphere(b, r)) dball.push_back(std::move(e));
  }

  double pad = std::max(params.resolution, 0.01);
  std::string fail_reason = "margin-too-small";
  std::string fail_detail = "could not separate the swap sets at any tested radius";
  for (const GammaCandidate& cand : candidates) {
  const RationalMatrix& gm = cand.matrix;
  double sep = fs_distance(cand.p_plus, cand.p_minus);
  double rv = std::min({cand.axis_margin / 2, sep / 2 - 0.01, 0.3});
  for (int attempt = 0; attempt < 8 && rv > 1e-4; ++attempt, rv /= 2) {
    BallUnionSet c2;
    c2.centers = {cand.p_plus, cand.p_minus};
    c2.radii = {rv, rv};

    std::vector<GroupWord> exceptional =
        exceptional_elements(dball, c2, w0, params.resolution);

    BallUnionSet c1 = w0;
    bool enclosable = true;
    for (const GroupWord& w : exceptional) {
      RationalMatrix m = word_eval(dgens, w);
      SvdResult sv = svd(m);
      for (std::size_t i = 0; i < c2.size() && enclosable; ++i) {
        std::optional<Enclosure> e = enclose_generic(m, c2.centers[i], c2.radii[i]);
        std::optional<Enclosure> ec = enclose_contracting(sv, c2.centers[i], c2.radii[i]);
        if (ec && (!e || ec->radius < e->radius)) e = ec;
        if (!e) {
          enclosable = false;
          break;
        }
        c1.centers.push_back(e->center);
        c1.radii.push_back(e->radius + pad);
      }
    }
    if (!enclosable) continue;

    double disjoint_slack = std::numbers::pi;
    for (std::size_t i = 0; i < c1.size(); ++i)
      for (std::size_t j = 0; j < c2.size(); ++j)
        disjoint_slack =
            std::min(disjoint_slack, fs_distance(c1.centers[i], c2.centers[j]) -
                                         c1.radii[i] - c2.radii[j]);
    if (disjoint_slack <= 1e-4) continue;

    std::optional<int> n;
    try {
      n = choose_power(gm, c1, c2, params.max_power, params.resolution);
    } catch (const std::invalid_argument&) {
      n = std::nullopt;
    }
    if (!n) {
      if (attempt == 7 || rv / 2 <= 1e-4) {
        fail_reason = "no-power";
        fail_detail = "no admissible power up to the cap";
        break;  // next candidate
      }
      continue;
    }

    PingPongCertificate cert;
    cert.group = group;
    cert.delta_generators = delta_generators;
    cert.gamma = cand.word;
    cert.power = *n;
    cert.delta_radius = params.delta_radius;
    cert.c1 = std::move(c1);
    cert.c2 = std::move(c2);
    cert.margin = std::min(disjoint_slack, cand.axis_margin);
    cert.exceptional = std::move(exceptional);
    cert.grid_resolution = params.resolution;
    return cert;
  }
  }
  return SearchFailure{fail_reason, fail_detail};
}

}  // namespace regulus
