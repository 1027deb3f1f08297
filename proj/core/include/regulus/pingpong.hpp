#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "regulus/flag.hpp"
#include "regulus/matrix.hpp"
#include "regulus/scan.hpp"
#include "regulus/word.hpp"

namespace regulus {

/// Compact subset of P(R^d) as a finite union of Fubini-Study balls.
struct BallUnionSet {
  std::vector<ProjPoint> centers;
  std::vector<double> radii;  // each in (0, pi/2]

  std::size_t size() const { return centers.size(); }
};

struct ProximalityReport {
  bool is_proximal = false;
  double top_eigenvalue_modulus = 0.0;
  double second_modulus = 0.0;
  std::optional<ProjFlag> attracting;
};

struct PingPongCertificate {
  GeneratorMap group;
  std::vector<GroupWord> delta_generators;
  GroupWord gamma;
  int power = 1;        // N
  int delta_radius = 2; // ball radius over which the swap condition is checked
  BallUnionSet c1, c2;
  double margin = 0.0;
  std::vector<GroupWord> exceptional;
  double grid_resolution = 1e-3;
};

struct SearchFailure {
  std::string reason;  // no-opposite-point | no-proximal | no-power | margin-too-small
  std::string detail;
};

using SearchResult = std::variant<PingPongCertificate, SearchFailure>;

struct SearchParams {
  int sample_radius = 20;        // ball radius for sampling the limit set
  double gap_threshold = 5.0;    // sigma1/sigma2 cutoff for limit-set sampling
  int delta_radius = 2;          // swap-condition ball radius
  int proximal_search_radius = 6;
  int max_power = 40;
  double resolution = 1e-3;
  int word_check_length = 8;
};

ProximalityReport is_proximal(const RationalMatrix& g);

std::optional<std::pair<GroupWord, ProximalityReport>> find_proximal(
    const BallSpec& spec);

/// Flag maximizing the minimal opposition margin against the sample, eroded
/// by the sample's covering radius (so the margin is meaningful for a whole
/// neighborhood of the sampled set, not just the finite sample). Returned
/// only when the eroded margin exceeds 1e-3.
std::optional<ProjFlag> find_opposite_point(const LimitSetSample& sample);

std::vector<GroupWord> exceptional_elements(
    const std::vector<std::pair<GroupWord, RationalMatrix>>& delta_ball,
    const BallUnionSet& u, const BallUnionSet& w0, double resolution);

/// Certified decision of g(A) subset-of B. True answers come with a positive
/// worst-case slack; false answers exhibit a sample point mapping outside.
/// Throws "resolution insufficient" when neither side can be established.
std::pair<bool, double> map_set_inclusion(const RationalMatrix& g,
                                          const BallUnionSet& a,
                                          const BallUnionSet& b, double resolution);

std::optional<int> choose_power(const RationalMatrix& g, const BallUnionSet& w,
                                const BallUnionSet& v, int max_n, double resolution);

bool verify_certificate(const PingPongCertificate& cert);

/// Exact check that no nonempty alternating word (nontrivial syllables from
/// the radius-1 ball of the delta subgroup, nonzero powers of gamma_n) of
/// syllable length <= max_len evaluates to the identity.
bool freeproduct_word_check(const GeneratorMap& group,
                            const std::vector<GroupWord>& delta_generators,
                            const GroupWord& gamma_n, int max_len,
                            long budget = 5'000'000, long* enumerated = nullptr);

SearchResult pingpong_search(const GeneratorMap& group,
                             const std::vector<GroupWord>& delta_generators,
                             const SearchParams& params = {});

}  // namespace regulus
