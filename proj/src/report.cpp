#include "pearl/report.hpp"

namespace pearl {

bool AuditReport::pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

void AuditReport::add(std::string check, bool ok, std::string detail, bool sampled) {
  entries.push_back({std::move(check), ok, std::move(detail), sampled});
}

void AuditReport::merge(const AuditReport& other) {
  for (const auto& e : other.entries) entries.push_back(e);
  for (const auto& n : other.notes) notes.push_back(n);
  if (!other.data.empty()) data[other.title.empty() ? "merged" : other.title] = other.data;
}

nlohmann::ordered_json AuditReport::machine() const {
  nlohmann::ordered_json j;
  j["title"] = title;
  j["pass"] = pass();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& e : entries)
    arr.push_back({{"check", e.check}, {"pass", e.pass}, {"sampled", e.sampled}, {"detail", e.detail}});
  j["notes"] = notes;
  j["data"] = data;
  return j;
}

void AuditReport::write_body(std::ostream& os) const {
  os << "== " << title << " : " << (pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& e : entries) {
    os << "  [" << (e.pass ? "ok" : "FAIL") << "] " << e.check;
    if (e.sampled) os << " (sampled/toleranced)";
    if (!e.detail.empty()) os << " : " << e.detail;
    os << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
}

void AuditReport::write_full(std::ostream& os) const {
  write_body(os);
  os << "--- machine-readable ---\n" << machine().dump(2) << "\n";
}

}  // namespace pearl
