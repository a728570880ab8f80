#pragma once

// Integer homology via Smith normal form of sparse boundary matrices.

#include <cstdint>
#include <string>
#include <vector>

namespace pearl {

struct Entry {
  int row;
  int col;
  std::int64_t value;
};

/// Sparse integer matrix in coordinate form; duplicate entries are summed.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Entry> entries;
};

struct SmithForm {
  int rank = 0;
  std::vector<std::int64_t> factors;  // invariant factors > 1, nondecreasing
};

/// Unit pivots are eliminated sparsely; the residue goes through a dense
/// Smith reduction with overflow checks (throws ErrorKind::overflow).
SmithForm smith_form(const IntMatrix& m);

struct HomologyGroup {
  int rank = 0;
  std::vector<std::int64_t> torsion;

  bool operator==(const HomologyGroup&) const = default;
};

struct HomologyProfile {
  std::vector<HomologyGroup> groups;  // degree 0 .. top

  bool operator==(const HomologyProfile&) const = default;
  bool is_sphere(int n) const;
  std::string to_string() const;
};

/// chain_sizes[k] = rank of C_k; boundaries[k] is the matrix of
/// d_k : C_k -> C_{k-1} (rows index C_{k-1}); boundaries[0] is ignored.
HomologyProfile homology_from_chain_complex(const std::vector<int>& chain_sizes,
                                            const std::vector<IntMatrix>& boundaries);

std::string to_string(const HomologyGroup& g);

}  // namespace pearl
