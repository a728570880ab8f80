// pearl: command-line driver for covering audits, necklaces, orbit stages
// and fiber reports.
//
// Exit codes: 0 pass, 1 audit failure, 2 usage or input error, 3 resource cap.

#include "pearl/fiber.hpp"
#include "pearl/io.hpp"
#include "pearl/kleinian.hpp"
#include "pearl/necklace.hpp"
#include "pearl/nerve.hpp"
#include "pearl/obc.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace pearl;

namespace {

enum Exit { kPass = 0, kAudit = 1, kUsage = 2, kCap = 3 };

struct RunConfig {
  int dim = 3;
  std::string patch;
  int depth = -1;
  double min_radius = 0;
  double epsilon = 0.05;
  double tol = 1e-9;
  int exact_depth = 4;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string in, out;
  std::string format = "report";
  int level = 1;
  std::size_t cap = 10'000'000;
  std::string depths = "1,2,3";
  std::string reading = "copy-index";
  bool nerve = false;
};

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Header line (the only non-deterministic content), body, machine section.
std::string render(const std::string& command, const std::vector<AuditReport>& reports,
                   const nlohmann::ordered_json& extra = {}) {
  std::ostringstream os;
  os << "# pearl " << command << " generated " << timestamp() << "\n";
  for (const auto& r : reports) r.write_body(os);
  nlohmann::ordered_json m;
  m["command"] = command;
  m["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) m["reports"].push_back(r.machine());
  if (!extra.is_null()) m["extra"] = extra;
  os << "--- machine-readable ---\n" << m.dump(2) << "\n";
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& path_suffix, const std::string& text, bool to_stdout) {
  if (!cfg.out.empty()) write_file(cfg.out + path_suffix, text);
  if (to_stdout) std::cout << text;
}

Box<Rational> parse_patch(const std::string& s, int d) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("--patch expects lo:hi");
  Rational lo = parse_rational(s.substr(0, colon)), hi = parse_rational(s.substr(colon + 1));
  if (!(lo < hi)) throw InputError("--patch needs lo < hi");
  return cube_box(d, lo, hi);
}

std::vector<int> parse_depths(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InputError("--depths expects a comma-separated list of integers");
    }
  }
  if (out.empty()) throw InputError("--depths is empty");
  return out;
}

int cmd_obc_verify(const RunConfig& cfg) {
  require_obc_dim(cfg.dim);
  std::string patch = cfg.patch.empty() ? (cfg.dim == 7 ? "0:2" : "-1:3") : cfg.patch;
  Box<Rational> box = parse_patch(patch, cfg.dim);
  PatchOptions po;
  po.threads = cfg.threads;
  AuditReport covering = verify_obc_patch(cfg.dim, box, po);
  std::vector<AuditReport> reps{covering};
  if (cfg.dim >= 3) {
    DisjointnessOptions dopt;
    dopt.threads = cfg.threads;
    // d = 7: the plane-pair search is run on the unit cube only
    Box<Rational> dbox = box;
    if (cfg.dim == 7) dbox = cube_box(7, Rational(0), Rational(1));
    reps.push_back(disjointness_audit(cfg.dim, dbox, dopt));
    if (cfg.dim == 7) reps.back().notes.push_back("window restricted to [0,1]^7");
  } else {
    reps[0].notes.push_back("coordinate-plane disjointness needs three axes; skipped for d=2");
  }
  emit(cfg, ".report.txt", render("obc verify --dim " + std::to_string(cfg.dim) + " --patch " + patch, reps),
       true);
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.pass();
  return ok ? kPass : kAudit;
}

int cmd_necklace_build(const RunConfig& cfg) {
  if (cfg.in.empty()) throw InputError("necklace build needs --in <knot file>");
  CubicalKnot k = load_knot(cfg.in);
  std::vector<AuditReport> reps;
  reps.push_back(validate_knot(k));
  if (!reps.back().pass()) {
    emit(cfg, ".report.txt", render("necklace build", reps), true);
    return kAudit;
  }
  Necklace t = build_necklace(k);
  IncreasedNecklace inc = increase_necklace(t);
  reps.push_back(optimality_audit(t));
  reps.push_back(tangle_audit(inc));
  reps.push_back(angle_audit(t));
  if (cfg.nerve) {
    SimplicialComplex nv = nerve_complex(inc.balls(), NerveOptions{cfg.threads});
    reps.push_back(sphere_check(nv, k.knot_dim));
  }
  nlohmann::ordered_json extra{{"knot", k.name},
                               {"pearls", t.pearls.size()},
                               {"added", inc.added.size()},
                               {"turns", turns_of(k).size()}};
  emit(cfg, ".necklace.json", necklace_to_json(inc), false);
  emit(cfg, ".report.txt", render("necklace build", reps, extra), cfg.format == "report");
  if (cfg.format == "json") std::cout << necklace_to_json(inc);
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.pass();
  return ok ? kPass : kAudit;
}

int max_depth_for(int d) {
  if (d <= 3) return 6;
  if (d <= 5) return 3;
  return 1;
}

double default_min_radius(int d) { return d <= 3 ? 0.05 : 0.1; }

int cmd_limit_run(const RunConfig& cfg) {
  if (cfg.in.empty()) throw InputError("limit run needs --in <necklace file>");
  const std::string text = read_file(cfg.in);
  IncreasedNecklace inc = parse_necklace(text, cfg.in);
  const int d = inc.base.dim;
  OrbitOptions o;
  o.depth = cfg.depth < 0 ? std::min(4, max_depth_for(d)) : cfg.depth;
  if (o.depth > max_depth_for(d))
    throw InputError("depth " + std::to_string(o.depth) + " exceeds the limit " +
                     std::to_string(max_depth_for(d)) + " for dimension " + std::to_string(d));
  o.min_radius = cfg.min_radius > 0 ? cfg.min_radius : default_min_radius(d);
  o.exact_depth = cfg.exact_depth;
  o.threads = cfg.threads;
  o.cap = cfg.cap;
  o.tol.abs = cfg.tol;
  GenerationLedger ledger = orbit_stage(inc, o);
  LimitCloud cloud = limit_cloud(ledger, cfg.epsilon);

  std::vector<AuditReport> reps;
  AuditReport summary;
  summary.title = "orbit stage";
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const auto& s : ledger.stages) {
    std::ostringstream os;
    os << s.count << " new, level " << s.level << ", leaves " << s.leaves << ", fixed " << s.fixed
       << ", duplicates " << s.duplicates << ", skipped " << s.skipped << ", max radius " << s.max_radius
       << (s.exact ? " (exact)" : " (float)");
    summary.add("generation " + std::to_string(s.generation), true, os.str(), !s.exact);
    stages.push_back({{"generation", s.generation},
                      {"count", s.count},
                      {"level", s.level},
                      {"leaves", s.leaves},
                      {"fixed", s.fixed},
                      {"duplicates", s.duplicates},
                      {"skipped", s.skipped},
                      {"max_radius", s.max_radius},
                      {"exact", s.exact}});
  }
  summary.add("explosion guard", !ledger.capped,
              ledger.capped ? "cap " + std::to_string(o.cap) + " reached" : "under cap");
  summary.notes = ledger.notes;
  summary.data["stages"] = stages;
  summary.data["balls"] = ledger.entries.size();
  summary.data["cloud"] = cloud.points.size();
  if (ledger.depth() >= 1)
    summary.data["knot_sum"] = {ledger.knot_sum.first.get_str(), ledger.knot_sum.second.get_str()};
  for (const auto& n : cloud.notes) summary.notes.push_back(n);
  reps.push_back(summary);
  if (ledger.depth() >= 1) {
    NestingOptions no;
    no.tol.abs = cfg.tol;
    no.threads = cfg.threads;
    no.seed = cfg.seed;
    reps.push_back(nesting_audit(ledger, no));
  }

  std::ostringstream ledger_csv, cloud_csv, mesh;
  write_ledger_csv(ledger_csv, ledger);
  write_cloud_csv(cloud_csv, cloud);
  emit(cfg, ".ledger.csv", ledger_csv.str(), false);
  emit(cfg, ".cloud.csv", cloud_csv.str(), cfg.format == "csv");
  if (d == 3) {
    write_obj(mesh, cloud, cfg.level);
    emit(cfg, ".obj", mesh.str(), cfg.format == "mesh");
  } else if (cfg.format == "mesh") {
    throw InputError("mesh export is available for dimension 3 only");
  }
  emit(cfg, ".report.txt", render("limit run", reps), cfg.format == "report");
  if (const char* dir = std::getenv("PEARL_NECKLACE_CACHE")) {
    std::size_t h = std::hash<std::string>{}(text + "|" + std::to_string(o.depth) + "|" +
                                             std::to_string(o.min_radius) + "|" + std::to_string(o.exact_depth));
    std::filesystem::create_directories(dir);
    write_file((std::filesystem::path(dir) / ("ledger-" + std::to_string(h) + ".csv")).string(), ledger_csv.str());
  }
  if (ledger.capped) return kCap;
  for (const auto& r : reps)
    if (!r.pass()) return kAudit;
  return kPass;
}

int cmd_fiber_report(const RunConfig& cfg) {
  if (cfg.in.empty()) throw InputError("fiber report needs --in <descriptor file>");
  FiberedDescriptor desc = parse_descriptor(read_file(cfg.in), cfg.in);
  validate_descriptor(desc);
  CopyReading reading;
  if (cfg.reading == "copy-index")
    reading = CopyReading::copy_index;
  else if (cfg.reading == "iterate")
    reading = CopyReading::iterate;
  else
    throw InputError("--reading must be copy-index or iterate");
  std::vector<int> depths = parse_depths(cfg.depths);
  WildnessCertificate cert = wildness_certificate(desc, depths);

  AuditReport pres;
  pres.title = "limit presentations (" + desc.name + ", knot dim " + std::to_string(desc.knot_dim) + ")";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream listing;
  for (int j : depths) {
    LimitPresentation p = limit_presentation(desc, j, reading);
    HomologyGroup h = abelianization(p);
    const std::size_t gens = p.generators.size(), rels = p.relations.size();
    const bool counts = gens == static_cast<std::size_t>(desc.rank * j + 1) &&
                        rels == static_cast<std::size_t>(desc.rank * j);
    pres.add("J=" + std::to_string(j) + " counts", counts,
             std::to_string(gens) + " generators, " + std::to_string(rels) + " relations");
    pres.add("J=" + std::to_string(j) + " abelianization", true, to_string(h));
    rows.push_back({{"depth", j}, {"generators", gens}, {"relations", rels}, {"abelianization", to_string(h)}});
    listing << "J=" << j << " " << p.to_string() << "\n";
  }
  pres.data["presentations"] = rows;
  AuditReport sums;
  sums.title = "sum ledgers";
  nlohmann::ordered_json srows = nlohmann::ordered_json::array();
  for (int j : depths) {
    auto [pos, neg] = knot_sum_ledger(1, j);
    BigInt copies = pos + neg;
    BigInt rank = fiber_sum_rank(desc, copies);
    sums.add("k=" + std::to_string(j), true,
             pos.get_str() + " copies of K, " + neg.get_str() + " of -K, fiber rank " + rank.get_str());
    srows.push_back({{"k", j}, {"K", pos.get_str()}, {"minus_K", neg.get_str()}, {"fiber_rank", rank.get_str()}});
  }
  sums.data["sums"] = srows;
  std::vector<AuditReport> reps{pres, sums, cert.report()};
  emit(cfg, ".presentation.txt", listing.str(), false);
  emit(cfg, ".report.txt", render("fiber report", reps), true);
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.pass();
  return ok ? kPass : kAudit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pearl: wild knots as limit sets of reflection groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* c) {
    c->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--seed", cfg.seed, "sampling seed");
    c->add_option("--tol", cfg.tol, "float tolerance")->check(CLI::PositiveNumber);
    c->add_option("--out", cfg.out, "output path prefix");
    c->add_option("--format", cfg.format, "stdout format")->check(CLI::IsMember({"report", "csv", "mesh", "json"}));
  };

  auto* obc = app.add_subcommand("obc", "orthogonal ball coverings");
  obc->require_subcommand(1);
  auto* verify = obc->add_subcommand("verify", "audit a covering patch");
  verify->add_option("--dim", cfg.dim, "ambient dimension")->required();
  verify->add_option("--patch", cfg.patch, "cube patch lo:hi");
  common(verify);

  auto* neck = app.add_subcommand("necklace", "pearl necklaces");
  neck->require_subcommand(1);
  auto* build = neck->add_subcommand("build", "build and audit the necklace of a knot file");
  build->add_option("--in", cfg.in, "knot file")->required();
  build->add_flag("--nerve", cfg.nerve, "also check the nerve is an n-sphere");
  common(build);

  auto* limit = app.add_subcommand("limit", "limit sets");
  limit->require_subcommand(1);
  auto* run = limit->add_subcommand("run", "enumerate orbit stages of a necklace file");
  run->add_option("--in", cfg.in, "necklace file")->required();
  run->add_option("--depth", cfg.depth, "word length")->check(CLI::NonNegativeNumber);
  run->add_option("--min-radius", cfg.min_radius, "leaf radius")->check(CLI::PositiveNumber);
  run->add_option("--epsilon", cfg.epsilon, "cloud radius bound")->check(CLI::PositiveNumber);
  run->add_option("--exact-depth", cfg.exact_depth, "generations in exact arithmetic")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--cap", cfg.cap, "explosion guard")->check(CLI::PositiveNumber);
  run->add_option("--level", cfg.level, "mesh tessellation level")->check(CLI::Range(0, 5));
  common(run);

  auto* fiber = app.add_subcommand("fiber", "fibered knots");
  fiber->require_subcommand(1);
  auto* report = fiber->add_subcommand("report", "limit presentations and wildness certificate");
  report->add_option("--in", cfg.in, "descriptor file")->required();
  report->add_option("--depths", cfg.depths, "comma-separated depths");
  report->add_option("--reading", cfg.reading, "copy-index or iterate");
  common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }
  try {
    if (*verify) return cmd_obc_verify(cfg);
    if (*build) return cmd_necklace_build(cfg);
    if (*run) return cmd_limit_run(cfg);
    if (*report) return cmd_fiber_report(cfg);
  } catch (const InputError& e) {
    std::cerr << "pearl: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "pearl: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::explosion_guard ? kCap : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "pearl: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
