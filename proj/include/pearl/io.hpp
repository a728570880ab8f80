#pragma once

// File formats: knots and fiber descriptors (JSON), necklaces (JSON with
// exact "p/q" strings), ledgers and clouds (CSV), meshes (OBJ).

#include "pearl/cubeknot.hpp"
#include "pearl/fiber.hpp"
#include "pearl/kleinian.hpp"
#include "pearl/necklace.hpp"
#include "pearl/nerve.hpp"

#include <iosfwd>
#include <string>

namespace pearl {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Throws InputError with "source:line: message" diagnostics. Convention
/// violations are reported at the line of the offending cube.
CubicalKnot parse_knot(const std::string& text, const std::string& source = "<knot>");
CubicalKnot load_knot(const std::string& path);
std::string knot_to_json(const CubicalKnot& k);

std::string necklace_to_json(const IncreasedNecklace& t);
IncreasedNecklace parse_necklace(const std::string& text, const std::string& source = "<necklace>");

/// Words are written "a1 a2^-1 ..." (empty string for the identity).
FreeWord parse_free_word(const std::string& text, int rank);
FiberedDescriptor parse_descriptor(const std::string& text, const std::string& source = "<descriptor>");
std::string descriptor_to_json(const FiberedDescriptor& d);

void write_ledger_csv(std::ostream& os, const GenerationLedger& ledger);
void write_cloud_csv(std::ostream& os, const LimitCloud& cloud);
/// Reads the decimal columns of a cloud CSV.
LimitCloud read_cloud_csv(std::istream& is);

/// One icosphere (subdivided `level` times) per cloud ball; dimension 3 only.
void write_obj(std::ostream& os, const LimitCloud& cloud, int level);

std::string complex_to_text(const SimplicialComplex& c);

}  // namespace pearl
