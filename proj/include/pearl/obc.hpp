#pragma once

// Orthogonal ball coverings of R^d, d = 2..7, as implicit periodic lattices.
//
// Internally coordinates are integers in quarter units (x * 4), so every
// center, radius and grid sample used by the audits is an exact int64.

#include "pearl/geom.hpp"
#include "pearl/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pearl {

inline constexpr std::int64_t kQuarter = 4;

using QPoint = Point<std::int64_t>;

/// A covering ball in quarter units: radius 4 (unit ball) or 2 (half ball).
struct LatticeBall {
  QPoint center;
  std::int64_t radius = 0;

  friend bool operator==(const LatticeBall&, const LatticeBall&) = default;
};

Ball<Rational> to_ball(const LatticeBall& b);
QPoint to_quarter(const Point<Rational>& p);  // throws unless p in (1/4)Z^d

Box<Rational> cube_box(int d, const Rational& lo, const Rational& hi);
Box<Rational> point_box(const Point<Rational>& p);

struct CoveringSpec {
  int dim = 0;
  std::vector<Ball<Rational>> generators;
  Rational eps1{1, 2};
  Rational eps2{2};
  std::string propagation;
};

void require_obc_dim(int d);

CoveringSpec obc_generators(int d);

/// Radius of the covering ball centered at c (quarter units), 0 if none.
std::int64_t center_radius(const QPoint& c, int d);

/// Number of integer coordinates a half-ball center has in dimension d, or
/// -1 when d has no half balls.
int half_ball_integer_axes(int d);

/// Every covering ball whose closed ball meets the closed quarter-unit box.
std::vector<LatticeBall> lattice_balls_meeting(const Box<std::int64_t>& box, int d);

/// Every covering ball whose closed ball meets the region, canonically sorted.
std::vector<Ball<Rational>> balls_meeting(const Box<Rational>& region, int d);

struct PatchOptions {
  std::optional<Rational> step;  // default 1/4 (d <= 5), 1/2 (d >= 6)
  int threads = 1;
};

AuditReport verify_obc_patch(int d, const Box<Rational>& patch, const PatchOptions& opts = {});

/// Pair classification part of verify_obc_patch; serial reference kernel.
struct PairCensus {
  std::int64_t balls = 0;
  std::int64_t near_pairs = 0;  // pairs within reach r1 + r2
  std::int64_t disjoint = 0, tangent = 0, orthogonal = 0, other = 0;
  std::vector<std::string> violations;

  bool operator==(const PairCensus&) const = default;
};

PairCensus pair_census(int d, const Box<std::int64_t>& patch, int threads);
PairCensus pair_census_serial(int d, const Box<std::int64_t>& patch);

struct FlowerRecord {
  Point<Rational> center;
  std::vector<Ball<Rational>> petals;
  int dim = 0;
};

std::optional<FlowerRecord> flower_at(const Point<Rational>& p, int d);

struct DisjointnessOptions {
  int threads = 1;
};

AuditReport disjointness_audit(int d, const Box<Rational>& window,
                               const DisjointnessOptions& opts = {});

}  // namespace pearl
