#pragma once

#include <optional>
#include <vector>

#include "regulus/matrix.hpp"
#include "regulus/svd.hpp"

namespace regulus {

constexpr double kIncidenceTol = 1e-9;

/// Point of P(R^d): unit vector canonicalized so its first nonzero coordinate
/// is positive. Projective equality is then plain comparison.
struct ProjPoint {
  std::vector<double> v;

  explicit ProjPoint(std::vector<double> coords);
  int dim() const { return static_cast<int>(v.size()); }
};

/// Hyperplane of P(R^d) as a unit conormal, same canonicalization.
struct ProjHyperplane {
  std::vector<double> conormal;

  explicit ProjHyperplane(std::vector<double> coords);
  int dim() const { return static_cast<int>(conormal.size()); }
};

/// Incident (point, hyperplane) pair: |<conormal, point>| <= 1e-9.
struct ProjFlag {
  ProjPoint point;
  ProjHyperplane hyperplane;

  ProjFlag(ProjPoint p, ProjHyperplane h);
};

struct ContractionLimit {
  ProjFlag attracting;
  ProjFlag repelling;
};

/// Fubini-Study distance arccos|<p,q>|, in [0, pi/2].
double fs_distance(const ProjPoint& p, const ProjPoint& q);
double fs_distance(const ProjHyperplane& p, const ProjHyperplane& q);

double pairing(const ProjHyperplane& h, const ProjPoint& p);

bool flag_opposite(const ProjFlag& f, const ProjFlag& g);
/// min(|<c', p>|, |<c, p'>|); positive iff opposite.
double opposition_margin(const ProjFlag& f, const ProjFlag& g);

/// All-pairs opposition with minimum margin. Throws on empty input.
std::pair<bool, double> antipodal_sets(const std::vector<ProjFlag>& a,
                                       const std::vector<ProjFlag>& b);

/// Attracting/repelling flags read off the SVD. Requires sigma1/sigma2 >
/// 1 + 1e-9; otherwise there is no contraction axis and this throws.
ContractionLimit attracting_flag(const RationalMatrix& g);

/// Apply g projectively (scaled double arithmetic).
ProjPoint apply(const RationalMatrix& g, const ProjPoint& p);
ProjHyperplane apply(const RationalMatrix& g, const ProjHyperplane& h);

/// Affine chart P(R^d) minus the hyperplane: dehomogenized coordinates of p
/// with respect to the excluded hyperplane's conormal direction.
std::vector<double> affine_chart(const ProjHyperplane& excluded, const ProjPoint& p);

}  // namespace regulus
