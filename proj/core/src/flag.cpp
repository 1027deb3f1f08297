#include "regulus/flag.hpp"

#include <cmath>
#include <stdexcept>

namespace regulus {

namespace {

void canonicalize_unit(std::vector<double>& v) {
  double n = 0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n < 1e-300) throw std::invalid_argument("zero vector has no projective class");
  for (double& x : v) x /= n;
  for (double x : v) {
    if (x > 0) break;
    if (x < 0) {
      for (double& y : v) y = -y;
      break;
    }
  }
}

std::vector<double> apply_scaled(const RationalMatrix::Scaled& m, int d,
                                 const std::vector<double>& v) {
  std::vector<double> out(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[i] += m.entries[i * d + j] * v[j];
  return out;
}

}  // namespace

ProjPoint::ProjPoint(std::vector<double> coords) : v(std::move(coords)) {
  canonicalize_unit(v);
}

ProjHyperplane::ProjHyperplane(std::vector<double> coords) : conormal(std::move(coords)) {
  canonicalize_unit(conormal);
}

ProjFlag::ProjFlag(ProjPoint p, ProjHyperplane h)
    : point(std::move(p)), hyperplane(std::move(h)) {
  if (point.dim() != hyperplane.dim())
    throw std::invalid_argument("flag dimension mismatch");
  if (std::abs(pairing(hyperplane, point)) > kIncidenceTol)
    throw std::invalid_argument("flag violates incidence");
}

double pairing(const ProjHyperplane& h, const ProjPoint& p) {
  if (h.dim() != p.dim()) throw std::invalid_argument("dimension mismatch");
  double s = 0;
  for (int i = 0; i < p.dim(); ++i) s += h.conormal[i] * p.v[i];
  return s;
}

static double fs_of(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  s = std::min(1.0, std::abs(s));
  return std::acos(s);
}

double fs_distance(const ProjPoint& p, const ProjPoint& q) { return fs_of(p.v, q.v); }
double fs_distance(const ProjHyperplane& p, const ProjHyperplane& q) {
  return fs_of(p.conormal, q.conormal);
}

bool flag_opposite(const ProjFlag& f, const ProjFlag& g) {
  return std::abs(pairing(g.hyperplane, f.point)) > kIncidenceTol &&
         std::abs(pairing(f.hyperplane, g.point)) > kIncidenceTol;
}

double opposition_margin(const ProjFlag& f, const ProjFlag& g) {
  return std::min(std::abs(pairing(g.hyperplane, f.point)),
                  std::abs(pairing(f.hyperplane, g.point)));
}

std::pair<bool, double> antipodal_sets(const std::vector<ProjFlag>& a,
                                       const std::vector<ProjFlag>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("antipodal_sets: empty input");
  bool all = true;
  double min_margin = 1.0;
  for (const auto& f : a)
    for (const auto& g : b) {
      double m = opposition_margin(f, g);
      min_margin = std::min(min_margin, m);
      all = all && m > kIncidenceTol;
    }
  return {all, min_margin};
}

ContractionLimit attracting_flag(const RationalMatrix& g) {
  SvdResult s = svd(g);
  double gap = std::exp(s.values.log_sigma[0] - s.values.log_sigma[1]);
  if (!(gap > 1.0 + 1e-9))
    throw std::domain_error("no contraction axis: sigma1/sigma2 gap is degenerate");
  // Attracting hyperplane = span of the top d-1 left-singular directions,
  // i.e. conormal u_d; repelling hyperplane = span of the bottom d-1
  // right-singular directions, conormal v_1 (the attracting data of g^-1).
  // Reading u_d and v_d from svd(g) directly is numerically fragile: when
  // sigma_1 dominates, all the small eigenvalues of g g^T drown in the
  // sigma_1^2 * eps noise floor and Jacobi may swap the small vectors. The
  // same directions are the *top* singular vectors of g^-1 (g = U S V^T
  // gives g^-1 = V S^-1 U^T, whose leading left/right vectors are v_d and
  // u_d), where Jacobi resolves them accurately.
  SvdResult si = svd(g.inverse());
  ProjFlag att(ProjPoint(s.left[0]), ProjHyperplane(si.right[0]));
  ProjFlag rep(ProjPoint(si.left[0]), ProjHyperplane(s.right[0]));
  return {att, rep};
}

ProjPoint apply(const RationalMatrix& g, const ProjPoint& p) {
  auto m = g.to_scaled_double();
  return ProjPoint(apply_scaled(m, g.dim(), p.v));
}

ProjHyperplane apply(const RationalMatrix& g, const ProjHyperplane& h) {
  auto m = g.inverse().transpose().to_scaled_double();
  return ProjHyperplane(apply_scaled(m, g.dim(), h.conormal));
}

std::vector<double> affine_chart(const ProjHyperplane& excluded, const ProjPoint& p) {
  const int d = p.dim();
  double denom = pairing(excluded, p);
  if (std::abs(denom) <= kIncidenceTol)
    throw std::domain_error("point at infinity for this chart");
  // Deterministic orthonormal basis of the conormal's complement.
  std::vector<std::vector<double>> basis;
  for (int i = 0; i < d && static_cast<int>(basis.size()) < d - 1; ++i) {
    std::vector<double> w(d, 0.0);
    w[i] = 1.0;
    double c = excluded.conormal[i];
    for (int j = 0; j < d; ++j) w[j] -= c * excluded.conormal[j];
    for (const auto& b : basis) {
      double dot = 0;
      for (int j = 0; j < d; ++j) dot += w[j] * b[j];
      for (int j = 0; j < d; ++j) w[j] -= dot * b[j];
    }
    double n = 0;
    for (double x : w) n += x * x;
    n = std::sqrt(n);
    if (n > 1e-9) {
      for (double& x : w) x /= n;
      basis.push_back(w);
    }
  }
  std::vector<double> out;
  for (const auto& b : basis) {
    double dot = 0;
    for (int j = 0; j < d; ++j) dot += p.v[j] * b[j];
    out.push_back(dot / denom);
  }
  return out;
}

}  // namespace regulus
