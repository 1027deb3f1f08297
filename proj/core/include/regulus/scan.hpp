#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regulus/flag.hpp"
#include "regulus/matrix.hpp"
#include "regulus/word.hpp"

namespace regulus {

// Hard cap on ball radii; CLI can override but not silently.
inline constexpr int kDefaultRadiusCap = 30;

struct BallSpec {
  GeneratorMap generators;
  int radius = 0;
  bool dedupe = true;  // collapse words that evaluate to equal matrices
  int jobs = 1;
  int radius_cap = kDefaultRadiusCap;
};

enum class ScanVerdict { DIVERGENT_TREND, BOUNDED_WITNESS, INCONCLUSIVE };
std::string to_string(ScanVerdict v);

struct SphereRecord {
  int radius = 0;
  std::size_t sphere_size = 0;
  double min_gap = 0.0;
  double median_gap = 0.0;
  GroupWord argmin_word;
};

struct BallScanReport {
  std::vector<SphereRecord> records;
  ScanVerdict verdict = ScanVerdict::INCONCLUSIVE;
  std::vector<GroupWord> witness;  // nonempty iff verdict == BOUNDED_WITNESS
  double witness_bound = 0.0;
};

struct LimitSetSample {
  std::vector<ProjFlag> flags;
  std::vector<GroupWord> sources;  // parallel to flags
  int radius = 0;
  bool empty_warning = false;
};

// All freely reduced words of length exactly r; with dedupe, one shortest
// representative per group element (elements of word-length exactly r).
std::vector<std::pair<GroupWord, RationalMatrix>> enumerate_sphere(const BallSpec& spec,
                                                                   int r);

BallScanReport sphere_stats(const BallSpec& spec);

std::optional<std::pair<std::vector<std::size_t>, ContractionLimit>>
contracting_subsequence(const std::vector<RationalMatrix>& ms);

LimitSetSample limit_set_sample(const BallSpec& spec, double gap_threshold);

// True iff the point components cluster into at most three groups at
// resolution 1e-3 (vacuously true on an empty sample).
bool three_point_check(const LimitSetSample& sample);

}  // namespace regulus
