#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace pearl {

struct AuditEntry {
  std::string check;
  bool pass = true;
  std::string detail;
  bool sampled = false;  // verdict relies on sampling or a tolerance
};

/// Human-readable lines plus a machine-readable `data` section. The body is
/// deterministic; timestamps belong in the file header written by the CLI.
struct AuditReport {
  std::string title;
  std::vector<AuditEntry> entries;
  std::vector<std::string> notes;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  bool pass() const;
  void add(std::string check, bool pass, std::string detail = "", bool sampled = false);
  void merge(const AuditReport& other);
  void write_body(std::ostream& os) const;
  /// Body followed by the machine-readable JSON.
  void write_full(std::ostream& os) const;
  nlohmann::ordered_json machine() const;
};

}  // namespace pearl
