#pragma once

// The reflection group generated by the pearls of a necklace, its orbit of
// the increased necklace by reduced words, and limit-set approximations.

#include "pearl/geom.hpp"
#include "pearl/necklace.hpp"
#include "pearl/rational.hpp"
#include "pearl/report.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pearl {

struct GroupPresentation {
  int generators = 0;
  std::vector<std::pair<int, int>> commuting;  // i < j, n_ij = 2
  std::vector<std::vector<std::uint8_t>> angle;  // n_ij: 2 or 0 (no relation)

  bool commute(int i, int j) const { return angle[i][j] == 2; }
  std::string to_string() const;
};

/// Generators are the given mirrors. Pairs must be disjoint, tangent or
/// orthogonal; anything else throws Error(audit_failed).
GroupPresentation presentation_of(const std::vector<Ball<Rational>>& mirrors);
GroupPresentation presentation(const Necklace& t);

using Word = std::vector<int>;  // letters j1 j2 ... jg, meaning I_j1(I_j2(...(B)))

inline bool is_reduced(const Word& w) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (w[k] == w[k - 1]) return false;
  return true;
}

enum class OrbitMode { dedup, normal_form };

struct OrbitOptions {
  int depth = 0;
  double min_radius = 0.0;  // balls below this radius are leaves
  int exact_depth = 4;      // generations computed in exact arithmetic
  int threads = 1;
  std::size_t cap = 10'000'000;
  bool even_only = false;
  OrbitMode mode = OrbitMode::dedup;
  Tolerance tol;
};

struct LedgerEntry {
  Ball<double> ball;
  std::optional<Ball<Rational>> exact;
  int generation = 0;
  int origin = 0;  // index into the increased necklace's balls
  Word word;
  bool leaf = false;
};

struct StageRecord {
  int generation = 0;
  std::size_t count = 0;       // new balls
  std::size_t level = 0;       // distinct balls reached by words of exactly this length
  std::size_t leaves = 0;
  std::size_t fixed = 0;       // images equal to their preimage
  std::size_t duplicates = 0;  // images already in the ledger
  std::size_t skipped = 0;     // mirror center inside or on the ball
  double max_radius = 0.0;
  bool exact = true;
};

struct GenerationLedger {
  int dim = 0;
  int generators = 0;
  OrbitOptions options;
  std::string group = "Gamma";
  std::vector<LedgerEntry> entries;     // grouped by generation, canonical within each
  std::vector<std::size_t> gen_begin;   // size depth + 2
  std::vector<std::vector<int>> levels; // entry indices reached at word length exactly g
  std::vector<StageRecord> stages;
  bool capped = false;
  std::pair<BigInt, BigInt> knot_sum{0, 0};
  std::vector<std::string> notes;

  int depth() const { return static_cast<int>(gen_begin.size()) - 2; }
  std::size_t generation_size(int g) const { return gen_begin[g + 1] - gen_begin[g]; }
};

GenerationLedger orbit_stage(const IncreasedNecklace& t, const OrbitOptions& opts);
GenerationLedger orbit_stage(const std::vector<Ball<Rational>>& balls,
                             const std::vector<Ball<Rational>>& mirrors, const OrbitOptions& opts);
/// Same enumeration without any OpenMP region; the reference for tests.
GenerationLedger orbit_stage_serial(const std::vector<Ball<Rational>>& balls,
                                    const std::vector<Ball<Rational>>& mirrors,
                                    const OrbitOptions& opts);
GenerationLedger even_subgroup_ledger(const IncreasedNecklace& t, OrbitOptions opts);

/// Geodesic shortlex normal forms of the right-angled Coxeter group, by length.
std::vector<std::vector<Word>> normal_form_words(const GroupPresentation& p, int depth);

struct NestingOptions {
  Tolerance tol;
  int samples = 0;  // 0 means 4^d boundary directions
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Every generation-g ball against the union of balls reached at word length
/// g - 1, under strict interior containment. Also records the closed
/// (boundary-touching) verdict and the max-radius sequence.
AuditReport nesting_audit(const GenerationLedger& ledger, const NestingOptions& opts = {});

struct CloudPoint {
  Point<double> center;
  double radius = 0;
  int generation = 0;
  int word_length = 0;
  std::optional<Ball<Rational>> exact;
};

struct LimitCloud {
  int dim = 0;
  double epsilon = 0;
  std::vector<CloudPoint> points;  // canonical order
  std::vector<std::string> notes;
};

LimitCloud limit_cloud(const GenerationLedger& ledger, double epsilon);

/// (copies of K, copies of -K) after k stages over r generators.
std::pair<BigInt, BigInt> knot_sum_ledger(int r, int k);

struct DimensionEstimate {
  double slope = 0;
  double residual = 0;  // RMS of the log-log fit
  std::vector<std::pair<double, std::size_t>> counts;  // (delta, boxes)
  std::string label = "estimate, not a paper claim";
};

DimensionEstimate box_dimension(const LimitCloud& cloud);
DimensionEstimate box_dimension(const std::vector<Point<double>>& points);

}  // namespace pearl
