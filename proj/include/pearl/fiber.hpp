#pragma once

// Presentation-level bookkeeping for fibered knots, their spins, and the
// fundamental groups of the limit-knot complements.

#include "pearl/homology.hpp"
#include "pearl/rational.hpp"
#include "pearl/report.hpp"

#include <string>
#include <vector>

namespace pearl {

/// Letters are +-i for generator i (1-based); -i is the inverse.
using FreeWord = std::vector<int>;

std::string word_to_string(const FreeWord& w, const std::vector<std::string>& names);
FreeWord invert(const FreeWord& w);
/// Free reduction (cancels adjacent x x^-1).
FreeWord reduce(const FreeWord& w);

struct FiberedDescriptor {
  std::string name;
  int knot_dim = 1;
  int rank = 0;                     // fiber rank m
  std::vector<FreeWord> monodromy;  // image of a_1 ... a_m
};

/// Exponent-sum matrix: row i is the abelianized image of a_i.
std::vector<std::vector<long>> abelianized_monodromy(const FiberedDescriptor& d);
/// Throws InputError(invalid_monodromy) unless words are nonempty, over the
/// alphabet, and the abelianized matrix has determinant +-1.
void validate_descriptor(const FiberedDescriptor& d);

FiberedDescriptor spin(const FiberedDescriptor& d);

/// Rank of the free fundamental group of `copies` fibers glued along disks.
BigInt fiber_sum_rank(const FiberedDescriptor& d, const BigInt& copies);

enum class CopyReading {
  copy_index,  // c a_i^j c^-1 = psi(a_i) written in copy-j letters
  iterate,     // c a_i^j c^-1 = psi^j(a_i) written in copy-j letters
};

struct Relation {
  FreeWord lhs, rhs;
};

struct LimitPresentation {
  int depth = 0;
  int rank = 0;
  CopyReading reading = CopyReading::copy_index;
  std::vector<std::string> generators;  // a_i^j in copy-major order, then c
  std::vector<Relation> relations;

  int stable_letter() const { return static_cast<int>(generators.size()); }
  std::string to_string() const;
};

LimitPresentation limit_presentation(const FiberedDescriptor& d, int depth,
                                     CopyReading reading = CopyReading::copy_index);

/// H_1 of the presented group via Smith normal form of the relation matrix.
HomologyGroup abelianization(const LimitPresentation& p);

struct WildnessRow {
  int depth = 0;
  BigInt fiber_generators;  // m J
};

struct WildnessCertificate {
  std::string name;
  std::vector<WildnessRow> rows;
  bool pass = false;
  AuditReport report() const;
};

/// Throws Error(trivial_descriptor) when m = 0.
WildnessCertificate wildness_certificate(const FiberedDescriptor& d, const std::vector<int>& depths);

}  // namespace pearl
