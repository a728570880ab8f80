#pragma once

// Cubical n-knots in the scaffolding of the side-2 cubulation C2.
//
// Convention: cube vertices v have v[0] odd and v[j] even for j >= 1, so no
// vertex is a covering-ball center and every edge midpoint is one.

#include "pearl/geom.hpp"
#include "pearl/homology.hpp"
#include "pearl/nerve.hpp"
#include "pearl/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pearl {

using IPoint = Point<std::int64_t>;

inline constexpr std::int64_t kCubeSide = 2;

struct Cube {
  IPoint base;
  std::vector<int> axes;  // sorted, 0-based

  int dim() const { return static_cast<int>(axes.size()); }
  friend bool operator==(const Cube&, const Cube&) = default;
  friend bool operator<(const Cube& a, const Cube& b);
};

struct CubicalKnot {
  int ambient_dim = 0;
  int knot_dim = 0;
  std::vector<Cube> cubes;
  std::string name;
};

struct TurnRecord {
  Cube face;
  Cube first;
  Cube second;
};

bool vertex_convention_ok(const IPoint& v);
std::vector<IPoint> vertices_of(const Cube& c);
std::vector<Cube> facets_of(const Cube& c);  // codimension-one faces
Box<Rational> box_of(const Cube& c);

AuditReport validate_knot(const CubicalKnot& k);

/// Homology of the cubical complex generated by `cubes` (all of dimension
/// top_dim); throws GeometryError(inconsistent_dimension) otherwise.
HomologyProfile cubical_homology(const std::vector<Cube>& cubes, int top_dim);

std::vector<TurnRecord> turns_of(const CubicalKnot& k);
std::vector<Cube> straight_faces(const CubicalKnot& k);

/// trivial (n = 1..5) or trefoil (n = 1); throws InputError(unknown_name).
CubicalKnot sample_knot(const std::string& name, int n);

/// Each cube split into n! simplices along monotone lattice paths.
SimplicialComplex kuhn_subdivision(const std::vector<Cube>& cubes);

}  // namespace pearl
