#include "regulus/scan.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

#include "regulus/svd.hpp"

namespace regulus {

namespace {

struct Entry {
  GroupWord word;
  RationalMatrix matrix;
};

struct Alphabet {
  std::vector<std::string> names;
  std::vector<RationalMatrix> mats;     // 2k entries: g, g^-1 per generator
  std::vector<GroupWord::Letter> lets;  // matching single letters
};

Alphabet make_alphabet(const GeneratorMap& gens) {
  if (gens.empty()) throw std::invalid_argument("empty generator set");
  Alphabet a;
  for (const auto& [name, g] : gens) {
    a.names.push_back(name);
    a.mats.push_back(g);
    a.lets.push_back({name, 1});
    a.names.push_back(name);
    a.mats.push_back(g.inverse());
    a.lets.push_back({name, -1});
  }
  return a;
}

bool cancels(const GroupWord& w, const GroupWord::Letter& l) {
  if (w.letters().empty()) return false;
  const auto& last = w.letters().back();
  return last.name == l.name && ((last.exponent > 0) != (l.exponent > 0));
}

void check_cap(const BallSpec& spec, int r) {
  if (r > spec.radius_cap || spec.radius > spec.radius_cap)
    throw std::domain_error("radius exceeds cap");
}

// Spheres 1..up_to. With dedupe, sphere r holds the group elements of
// word-length exactly r (shortest representative words, first-found in a
// fixed deterministic order); without, all freely reduced words of length r.
std::vector<std::vector<Entry>> build_spheres(const BallSpec& spec, int up_to) {
  check_cap(spec, up_to);
  Alphabet a = make_alphabet(spec.generators);
  int dim = a.mats.front().dim();
  std::vector<std::vector<Entry>> spheres(up_to + 1);
  spheres[0].push_back({GroupWord(), RationalMatrix::identity(dim)});
  std::map<RationalMatrix, bool> seen;
  if (spec.dedupe) seen.emplace(RationalMatrix::identity(dim), true);

  for (int r = 1; r <= up_to; ++r) {
    for (const Entry& e : spheres[r - 1]) {
      for (std::size_t i = 0; i < a.mats.size(); ++i) {
        if (cancels(e.word, a.lets[i])) continue;
        RationalMatrix m = e.matrix * a.mats[i];
        if (spec.dedupe) {
          auto [it, inserted] = seen.emplace(m, true);
          if (!inserted) continue;
        }
        spheres[r].push_back({e.word.concat(GroupWord({a.lets[i]})), std::move(m)});
      }
    }
  }
  spheres.erase(spheres.begin());
  return spheres;
}

std::vector<double> gaps_parallel(const std::vector<Entry>& sphere, int jobs) {
  std::vector<double> gaps(sphere.size());
  jobs = std::max(1, jobs);
  if (jobs == 1 || sphere.size() < 32) {
    for (std::size_t i = 0; i < sphere.size(); ++i)
      gaps[i] = sigma_gap(sphere[i].matrix);
    return gaps;
  }
  std::vector<std::thread> workers;
  std::size_t chunk = (sphere.size() + jobs - 1) / jobs;
  for (int w = 0; w < jobs; ++w) {
    std::size_t lo = w * chunk, hi = std::min(sphere.size(), lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) gaps[i] = sigma_gap(sphere[i].matrix);
    });
  }
  for (auto& t : workers) t.join();
  return gaps;
}

}  // namespace

std::string to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::DIVERGENT_TREND: return "DIVERGENT-TREND";
    case ScanVerdict::BOUNDED_WITNESS: return "BOUNDED-WITNESS";
    case ScanVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

std::vector<std::pair<GroupWord, RationalMatrix>> enumerate_sphere(const BallSpec& spec,
                                                                   int r) {
  if (r < 1) throw std::invalid_argument("sphere radius must be positive");
  if (r > spec.radius) throw std::invalid_argument("sphere radius beyond spec radius");
  auto spheres = build_spheres(spec, r);
  std::vector<std::pair<GroupWord, RationalMatrix>> out;
  out.reserve(spheres[r - 1].size());
  for (auto& e : spheres[r - 1]) out.emplace_back(std::move(e.word), std::move(e.matrix));
  return out;
}

BallScanReport sphere_stats(const BallSpec& spec) {
  if (spec.radius < 1) throw std::invalid_argument("radius must be positive");
  auto spheres = build_spheres(spec, spec.radius);
  BallScanReport report;

  for (int r = 1; r <= spec.radius; ++r) {
    const auto& sphere = spheres[r - 1];
    SphereRecord rec;
    rec.radius = r;
    rec.sphere_size = sphere.size();
    if (sphere.empty()) {  // finite group exhausted
      report.records.push_back(rec);
      continue;
    }
    std::vector<double> gaps = gaps_parallel(sphere, spec.jobs);
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < gaps.size(); ++i)
      if (gaps[i] < gaps[argmin]) argmin = i;
    rec.min_gap = gaps[argmin];
    rec.argmin_word = sphere[argmin].word;
    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    std::size_t n = sorted.size();
    rec.median_gap = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    report.records.push_back(rec);
  }

  // Trend out of the finite window: monotone growth of the per-sphere min
  // that clears 10 at the horizon counts as divergent; a min that never
  // leaves [1, 10] yields an explicit bounded witness family.
  const double kGapCeiling = 10.0, kTol = 1e-9;
  int r0 = std::min(3, spec.radius);
  bool monotone = true;
  double max_min = 0.0, last_min = 0.0;
  for (const auto& rec : report.records) {
    if (rec.sphere_size == 0) continue;
    if (rec.radius > r0 && rec.min_gap < last_min - kTol) monotone = false;
    if (rec.radius >= r0) last_min = std::max(last_min, rec.min_gap);
    max_min = std::max(max_min, rec.min_gap);
  }
  double final_min = 0.0;
  for (auto it = report.records.rbegin(); it != report.records.rend(); ++it)
    if (it->sphere_size > 0) {
      final_min = it->min_gap;
      break;
    }

  // "still growing" at the horizon: strict min-gap increase over the last
  // three steps; such a scan is never reported as bounded, only the radius
  // was too small to clear the ceiling.
  bool trailing_growth = false;
  {
    std::vector<double> mins;
    for (const auto& rec : report.records)
      if (rec.sphere_size > 0) mins.push_back(rec.min_gap);
    std::size_t steps = std::min<std::size_t>(mins.empty() ? 0 : mins.size() - 1, 3);
    if (steps > 0) {
      trailing_growth = true;
      for (std::size_t j = mins.size() - steps; j < mins.size(); ++j)
        trailing_growth = trailing_growth && mins[j] > mins[j - 1] + kTol;
    }
  }

  if (monotone && final_min > kGapCeiling) {
    report.verdict = ScanVerdict::DIVERGENT_TREND;
  } else if (max_min <= kGapCeiling && !trailing_growth) {
    report.verdict = ScanVerdict::BOUNDED_WITNESS;
    report.witness_bound = max_min;
    for (const auto& rec : report.records)
      if (rec.sphere_size > 0) report.witness.push_back(rec.argmin_word);
  } else {
    report.verdict = ScanVerdict::INCONCLUSIVE;
  }
  return report;
}

std::optional<std::pair<std::vector<std::size_t>, ContractionLimit>>
contracting_subsequence(const std::vector<RationalMatrix>& ms) {
  if (ms.size() < 3) throw std::invalid_argument("need at least 3 matrices");
  std::vector<double> gaps(ms.size());
  double max_gap = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    gaps[i] = sigma_gap(ms[i]);
    max_gap = std::max(max_gap, gaps[i]);
  }
  if (max_gap < 10.0) return std::nullopt;

  // greedy strictly-increasing-gap subsequence
  std::vector<std::size_t> idx;
  double last = 1.0 + 1e-9;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (gaps[i] > last) {
      idx.push_back(i);
      last = gaps[i];
    }
  }
  if (idx.size() < 2) return std::nullopt;

  std::vector<ProjPoint> pts;
  pts.reserve(idx.size());
  for (std::size_t i : idx) pts.push_back(attracting_flag(ms[i]).attracting.point);

  auto tail_converges = [&](const std::vector<std::size_t>& sel,
                            const std::vector<ProjPoint>& p) {
    std::size_t n = sel.size();
    std::size_t tail = std::min<std::size_t>(n - 1, 4);
    for (std::size_t j = n - tail; j < n; ++j)
      if (fs_distance(p[j - 1], p[j]) >= 1e-3) return false;
    return true;
  };

  if (!tail_converges(idx, pts)) {
    // keep only the elements sharing the terminal attracting direction
    const ProjPoint& target = pts.back();
    std::vector<std::size_t> filtered;
    std::vector<ProjPoint> fpts;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (fs_distance(pts[j], target) < 0.05) {
        filtered.push_back(idx[j]);
        fpts.push_back(pts[j]);
      }
    }
    idx = std::move(filtered);
    pts = std::move(fpts);
    if (idx.size() < 2) return std::nullopt;
  }

  ContractionLimit limit = attracting_flag(ms[idx.back()]);
  return std::make_pair(std::move(idx), std::move(limit));
}

LimitSetSample limit_set_sample(const BallSpec& spec, double gap_threshold) {
  if (!(gap_threshold > 1.0))
    throw std::invalid_argument("gap threshold must exceed 1");
  auto spheres = build_spheres(spec, spec.radius);
  LimitSetSample sample;
  sample.radius = spec.radius;
  // The limit flag attached to g is the limit of the contracting sequence
  // g^k, so square g until the gap pins the flag to ~1e-9 before reading it
  // off. Elements whose powers stay bounded keep their own flag.
  auto limit_flag = [](const RationalMatrix& g) {
    RationalMatrix h = g;
    for (int i = 0; i < 34 && sigma_gap(h) < 1e9; ++i) h = h * h;
    return attracting_flag(sigma_gap(h) > 1 + 1e-9 ? h : g).attracting;
  };
  for (const auto& sphere : spheres) {
    for (const auto& e : sphere) {
      if (sigma_gap(e.matrix) < gap_threshold) continue;
      ProjFlag f = limit_flag(e.matrix);
      bool dup = false;
      for (const ProjFlag& g : sample.flags) {
        if (fs_distance(f.point, g.point) < 1e-6 &&
            fs_distance(f.hyperplane, g.hyperplane) < 1e-6) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        sample.flags.push_back(std::move(f));
        sample.sources.push_back(e.word);
      }
    }
  }
  sample.empty_warning = sample.flags.empty();
  return sample;
}

bool three_point_check(const LimitSetSample& sample) {
  std::vector<ProjPoint> centers;
  for (const ProjFlag& f : sample.flags) {
    bool matched = false;
    for (const ProjPoint& c : centers) {
      if (fs_distance(f.point, c) < 1e-3) {
        matched = true;
        break;
      }
    }
    if (!matched) centers.push_back(f.point);
    if (centers.size() > 3) return false;
  }
  return true;
}

}  // namespace regulus
