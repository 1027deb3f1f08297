#pragma once

#include <vector>

#include "regulus/matrix.hpp"

namespace regulus {

/// Descending singular values with an a-posteriori absolute error bound per
/// entry (from the off-diagonal residual of the Jacobi sweeps, taken over the
/// better of the two routes g^T g and (g^-1)^T g^-1).
struct SingularTriple {
  std::vector<double> sigma;      // descending, positive
  std::vector<double> log_sigma;  // descending; robust even when sigma over/underflows
  double certified_error = 0.0;   // absolute, per entry
};

/// mu(g) = (log sigma_1, ..., log sigma_d), descending, summing to ~0 for
/// determinant-1 input.
struct CartanVector {
  std::vector<double> mu;
};

/// Full decomposition data: sigma plus orthonormal left/right singular bases
/// (columns ordered by descending sigma). Left vectors come from an
/// independent Jacobi run on g g^T so small singular values do not poison
/// them.
struct SvdResult {
  SingularTriple values;
  std::vector<std::vector<double>> left;   // left[i] = u_i
  std::vector<std::vector<double>> right;  // right[i] = v_i
};

SingularTriple singular_values(const RationalMatrix& g);
CartanVector cartan_projection(const RationalMatrix& g);
SvdResult svd(const RationalMatrix& g);

/// sigma1/sigma2 as exp(log-gap); immune to overflow of the sigmas themselves.
double sigma_gap(const RationalMatrix& g);

/// Cyclic Jacobi eigensolver for a symmetric d x d matrix (d <= 4).
/// Returns eigenvalues descending, eigenvectors as rows of `vectors`, and the
/// final off-diagonal Frobenius mass in `offdiag`.
struct JacobiResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> vectors;
  double offdiag;
};
JacobiResult jacobi_symmetric(std::vector<double> a, int dim);

}  // namespace regulus
