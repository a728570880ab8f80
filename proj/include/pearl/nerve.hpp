#pragma once

// Čech nerves of ball families (open-ball semantics) and simplicial homology.

#include "pearl/geom.hpp"
#include "pearl/homology.hpp"
#include "pearl/report.hpp"

#include <cstdint>
#include <vector>

namespace pearl {

using Simplex = std::vector<int>;  // sorted vertex indices

struct SimplicialComplex {
  int vertex_count = 0;
  std::vector<Point<Rational>> positions;      // optional, one per vertex
  std::vector<std::vector<Simplex>> simplices;  // [k] = sorted list of k-simplices
  std::vector<Simplex> flagged;                 // subsets not decided (see nerve_complex)

  int top_dim() const { return static_cast<int>(simplices.size()) - 1; }
  std::int64_t count(int k) const {
    return k >= 0 && k <= top_dim() ? static_cast<std::int64_t>(simplices[k].size()) : 0;
  }
  bool contains(const Simplex& s) const;
  std::vector<std::int64_t> f_vector() const;
};

/// Closure of a set of facets; vertices are 0 .. vertex_count-1.
SimplicialComplex complex_from_facets(int vertex_count, const std::vector<Simplex>& facets);

bool is_face_closed(const SimplicialComplex& c);

struct NerveOptions {
  int threads = 1;
};

/// One simplex per subset of balls whose open common intersection is
/// nonempty. Vertices follow the canonical ball order, so the result does not
/// depend on the input order; `order` (if given) receives the input index of
/// each vertex.
SimplicialComplex nerve_complex(const std::vector<Ball<Rational>>& balls, const NerveOptions& opts = {},
                                std::vector<int>* order = nullptr);

/// Throws InputError(not_face_closed) on a complex missing faces.
HomologyProfile simplicial_homology(const SimplicialComplex& c);

AuditReport sphere_check(const SimplicialComplex& c, int n);

}  // namespace pearl
