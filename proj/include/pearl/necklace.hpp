#pragma once

// Pearl necklaces: the covering balls meeting a cubical knot, and the
// increased necklace with small balls at straight flower centers.

#include "pearl/cubeknot.hpp"
#include "pearl/geom.hpp"
#include "pearl/report.hpp"

#include <string>
#include <vector>

namespace pearl {

enum class Provenance { obc_pearl, flower_center };

const char* to_string(Provenance p);

struct Necklace {
  CubicalKnot knot;
  int dim = 0;
  std::vector<Ball<Rational>> pearls;      // canonical order
  std::vector<std::vector<int>> pearl_cubes;  // knot cubes whose interior meets each pearl
};

struct IncreasedNecklace {
  Necklace base;
  std::vector<Ball<Rational>> added;  // radius 1/(n+2), canonical order
  std::vector<std::string> notes;

  /// Pearls first, then added balls.
  std::vector<Ball<Rational>> balls() const;
  std::vector<Provenance> provenance() const;
};

/// Flower centers on the knot lying in a closed turn face are excluded; other
/// flower centers on the knot receive a ball.
Necklace build_necklace(const CubicalKnot& k);
IncreasedNecklace increase_necklace(const Necklace& t);

/// Every flower center on the knot (canonical order) and whether it lies in a
/// closed turn face.
struct FlowerSite {
  Point<Rational> center;
  bool on_turn = false;
};
std::vector<FlowerSite> flower_sites(const CubicalKnot& k);

AuditReport optimality_audit(const Necklace& t);
AuditReport tangle_audit(const IncreasedNecklace& t);
AuditReport angle_audit(const Necklace& t);

/// Pairs (i < j) of balls within reach of each other, via a uniform grid.
std::vector<std::pair<int, int>> near_pairs(const std::vector<Ball<Rational>>& balls);

}  // namespace pearl
