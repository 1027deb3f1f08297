#include "regulus/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace regulus {

namespace {

constexpr double kOffDiagThreshold = 1e-15;

struct ScaledSym {
  std::vector<double> entries;  // row-major symmetric
  double log_scale;             // true matrix = entries * exp(log_scale)
};

// S scaled so the largest |entry| is ~1; the log of the scale is tracked
// exactly enough for Cartan projections of enormous matrices.
ScaledSym scale_symmetric(const RationalMatrix& s) {
  int d = s.dim();
  long maxexp = 0;
  bool any = false;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Rational& x = s.at(i, j);
      if (sgn(x) == 0) continue;
      signed long en, ed;
      mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
      mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
      long ex = en - ed;
      if (!any || ex > maxexp) maxexp = ex;
      any = true;
    }
  ScaledSym out;
  out.log_scale = static_cast<double>(maxexp) * std::log(2.0);
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(maxexp)));
  out.entries.resize(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      mpq_class v = s.at(i, j);
      if (maxexp > 0)
        v /= mpq_class(pw);
      else if (maxexp < 0)
        v *= mpq_class(pw);
      out.entries[i * d + j] = v.get_d();
    }
  return out;
}

double offdiag_mass(const std::vector<double>& a, int d) {
  double s = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) s += a[i * d + j] * a[i * d + j];
  return std::sqrt(s);
}

struct EigenData {
  std::vector<double> lambda;            // descending, of the scaled matrix
  std::vector<std::vector<double>> vecs; // matching eigenvectors
  double off;                            // residual off-diagonal mass
  double log_scale;
};

EigenData sym_eigen(const RationalMatrix& sym) {
  ScaledSym sc = scale_symmetric(sym);
  JacobiResult jr = jacobi_symmetric(sc.entries, sym.dim());
  return {jr.eigenvalues, jr.vectors, jr.offdiag, sc.log_scale};
}

}  // namespace

JacobiResult jacobi_symmetric(std::vector<double> a, int dim) {
  const int d = dim;
  std::vector<double> v(d * d, 0.0);
  for (int i = 0; i < d; ++i) v[i * d + i] = 1.0;

  double norm = 0;
  for (double x : a) norm += x * x;
  norm = std::sqrt(norm);
  double off = offdiag_mass(a, d);
  for (int sweep = 0; sweep < 60 && off > 0; ++sweep) {
    if (off <= kOffDiagThreshold * norm && sweep > 2) break;
    for (int p = 0; p < d - 1; ++p)
      for (int q = p + 1; q < d; ++q) {
        double apq = a[p * d + q];
        if (apq == 0.0) continue;
        double app = a[p * d + p], aqq = a[q * d + q];
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < d; ++k) {
          double akp = a[k * d + p], akq = a[k * d + q];
          a[k * d + p] = c * akp - s * akq;
          a[k * d + q] = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          double apk = a[p * d + k], aqk = a[q * d + k];
          a[p * d + k] = c * apk - s * aqk;
          a[q * d + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {
          double vpk = v[p * d + k], vqk = v[q * d + k];
          v[p * d + k] = c * vpk - s * vqk;
          v[q * d + k] = s * vpk + c * vqk;
        }
      }
    double newoff = offdiag_mass(a, d);
    if (newoff >= off && newoff <= kOffDiagThreshold * norm) {
      off = newoff;
      break;
    }
    off = newoff;
  }

  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return a[i * d + i] > a[j * d + j]; });
  JacobiResult out;
  out.offdiag = off;
  for (int r = 0; r < d; ++r) {
    out.eigenvalues.push_back(a[idx[r] * d + idx[r]]);
    out.vectors.emplace_back(v.begin() + idx[r] * d, v.begin() + (idx[r] + 1) * d);
  }
  return out;
}

SingularTriple singular_values(const RationalMatrix& g) {
  const int d = g.dim();
  RationalMatrix gi = g.inverse();  // throws on singular input
  EigenData A = sym_eigen(g.transpose() * g);
  EigenData B = sym_eigen(gi.transpose() * gi);

  SingularTriple out;
  out.sigma.resize(d);
  out.log_sigma.resize(d);
  double max_abs_err = 0.0;
  for (int i = 0; i < d; ++i) {
    // route A: sigma_i = sqrt(lambda_i(g^T g)); route B through the inverse:
    // sigma_i(g) = 1/sigma_{d+1-i}(g^-1). Relative error of an eigenvalue is
    // bounded by the off-diagonal residual over the eigenvalue itself.
    double relA = A.lambda[i] > 0 ? A.off / A.lambda[i]
                                  : std::numeric_limits<double>::infinity();
    double lamB = B.lambda[d - 1 - i];
    double relB = lamB > 0 ? B.off / lamB : std::numeric_limits<double>::infinity();
    double ls;
    double rel;
    if (relA <= relB) {
      ls = 0.5 * (std::log(A.lambda[i]) + A.log_scale);
      rel = relA;
    } else {
      ls = -0.5 * (std::log(lamB) + B.log_scale);
      rel = relB;
    }
    out.log_sigma[i] = ls;
    out.sigma[i] = std::exp(ls);
    max_abs_err = std::max(max_abs_err, 0.5 * rel * out.sigma[i]);
  }
  // At extreme scale a middle singular value can underflow both routes
  // (lambda below the denormal floor in gT g and in the inverse's Gram
  // matrix). A single lost value is recoverable from the exact determinant:
  // sum of log sigma_i = log |det g|.
  int lost = -1, nlost = 0;
  for (int i = 0; i < d; ++i)
    if (!std::isfinite(out.log_sigma[i])) {
      lost = i;
      ++nlost;
    }
  if (nlost == 1) {
    Rational dd = g.det();
    if (sgn(dd) < 0) dd = -dd;
    double rest = 0.0;
    for (int i = 0; i < d; ++i)
      if (i != lost) rest += out.log_sigma[i];
    out.log_sigma[lost] = log_rational(dd) - rest;
    out.sigma[lost] = std::exp(out.log_sigma[lost]);
  }
  out.certified_error = max_abs_err;
  return out;
}

CartanVector cartan_projection(const RationalMatrix& g) {
  return {singular_values(g).log_sigma};
}

double sigma_gap(const RationalMatrix& g) {
  SingularTriple t = singular_values(g);
  return std::exp(t.log_sigma[0] - t.log_sigma[1]);
}

SvdResult svd(const RationalMatrix& g) {
  const int d = g.dim();
  SvdResult out;
  out.values = singular_values(g);
  EigenData right = sym_eigen(g.transpose() * g);
  EigenData left = sym_eigen(g * g.transpose());
  out.right = right.vecs;
  out.left = left.vecs;
  (void)d;
  return out;
}

}  // namespace regulus
