#include "regulus/matrix.hpp"

#include <cmath>
#include <sstream>

namespace regulus {

RationalMatrix::RationalMatrix(int dim) : dim_(dim), e_(dim * dim, Rational(0)) {
  if (dim < 2 || dim > 4) throw std::invalid_argument("dim must be 2, 3 or 4");
}

RationalMatrix::RationalMatrix(int dim, std::vector<Rational> entries)
    : dim_(dim), e_(std::move(entries)) {
  if (dim < 2 || dim > 4) throw std::invalid_argument("dim must be 2, 3 or 4");
  if (e_.size() != static_cast<size_t>(dim * dim))
    throw std::invalid_argument("entry count does not match dim");
}

RationalMatrix RationalMatrix::identity(int dim) {
  RationalMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::unitriangular(const Rational& x, const Rational& y,
                                             const Rational& z) {
  RationalMatrix m = identity(3);
  m.at(0, 1) = x;
  m.at(0, 2) = y;
  m.at(1, 2) = z;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  RationalMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const Rational& a = at(i, k);
      if (sgn(a) == 0) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return dim_ == o.dim_ && e_ == o.e_;
}

bool RationalMatrix::operator<(const RationalMatrix& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  for (size_t i = 0; i < e_.size(); ++i) {
    int c = cmp(e_[i], o.e_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

Rational RationalMatrix::det() const {
  if (dim_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  if (dim_ == 3)
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  // dim 4: Laplace along the first row.
  Rational d(0);
  for (int j = 0; j < 4; ++j) {
    if (sgn(at(0, j)) == 0) continue;
    std::vector<Rational> minor;
    minor.reserve(9);
    for (int r = 1; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (c != j) minor.push_back(at(r, c));
    Rational md = RationalMatrix(3, std::move(minor)).det();
    d += ((j % 2 == 0) ? at(0, j) : -at(0, j)) * md;
  }
  return d;
}

RationalMatrix RationalMatrix::inverse() const {
  // Gauss-Jordan with exact pivoting.
  RationalMatrix a(*this), inv = identity(dim_);
  for (int col = 0; col < dim_; ++col) {
    int piv = -1;
    for (int r = col; r < dim_; ++r)
      if (sgn(a.at(r, col)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("singular matrix has no inverse");
    if (piv != col)
      for (int j = 0; j < dim_; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Rational p = a.at(col, col);
    for (int j = 0; j < dim_; ++j) {
      a.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (int r = 0; r < dim_; ++r) {
      if (r == col) continue;
      Rational f = a.at(r, col);
      if (sgn(f) == 0) continue;
      for (int j = 0; j < dim_; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix RationalMatrix::pow(long n) const {
  RationalMatrix base = n < 0 ? inverse() : *this;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1ul
                          : static_cast<unsigned long>(n);
  RationalMatrix r = identity(dim_);
  while (k > 0) {
    if (k & 1ul) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

bool RationalMatrix::is_identity() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (cmp(at(i, j), Rational(i == j ? 1 : 0)) != 0) return false;
  return true;
}

Rational RationalMatrix::frobenius_norm_sq() const {
  Rational s(0);
  for (const auto& x : e_) s += x * x;
  return s;
}

RationalMatrix::Scaled RationalMatrix::to_scaled_double() const {
  // exponent of the largest |entry|, via mpz magnitudes to dodge overflow.
  long maxexp = 0;
  bool any = false;
  for (const auto& x : e_) {
    if (sgn(x) == 0) continue;
    signed long en, ed;
    mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    long ex = en - ed;
    if (!any || ex > maxexp) maxexp = ex;
    any = true;
  }
  Scaled s;
  s.exponent = any ? maxexp : 0;
  s.entries.reserve(e_.size());
  mpq_class scale;
  mpq_class two_pow;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(s.exponent)));
  for (const auto& x : e_) {
    mpq_class v = x;
    if (s.exponent > 0)
      v /= mpq_class(pw);
    else if (s.exponent < 0)
      v *= mpq_class(pw);
    s.entries.push_back(v.get_d());
  }
  return s;
}

std::string RationalMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < dim_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < dim_; ++j) os << at(i, j).get_str() << (j + 1 < dim_ ? " " : "");
    os << (i + 1 < dim_ ? ";\n" : "]");
  }
  return os.str();
}

std::pair<double, double> sigma_gap_bounds(const RationalMatrix& g) {
  if (g.dim() != 3) throw std::invalid_argument("sigma_gap_bounds requires dim 3");
  double q = g.frobenius_norm_sq().get_d();
  double qp = g.inverse().frobenius_norm_sq().get_d();
  double lower = q / (3.0 * std::sqrt(qp));
  double upper = std::sqrt(3.0) * q / std::sqrt(qp);
  return {lower, upper};
}

}  // namespace regulus
