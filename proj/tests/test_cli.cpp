#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(PEARL_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(PEARL_DATA_DIR) + "/" + rel; }

// everything after the timestamped header line
std::string body(const std::string& s) { return s.substr(s.find('\n') + 1); }

nlohmann::json machine(const std::string& s) {
  auto at = s.find("--- machine-readable ---\n");
  REQUIRE(at != std::string::npos);
  return nlohmann::json::parse(s.substr(at + 25));
}

std::string scratch() {
  auto dir = std::filesystem::temp_directory_path() / "pearl_cli_test";
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("obc verify --dim 3 --patch -1:3").code == 0);
  CHECK(run("obc verify --dim 2").code == 0);
  CHECK(run("obc verify --dim 9").code == 2);
  CHECK(run("obc verify --dim 3 --patch 2:1").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("necklace build --in " + data("knots/bad_convention.json")).code == 2);
  CHECK(run("necklace build --in /nonexistent.json").code == 2);
  CHECK(run("fiber report --in " + data("fibers/trivial.json") + " --depths 1,2").code == 2);
  CHECK(run("fiber report --in " + data("fibers/bad_determinant.json") + " --depths 1,2").code == 2);
  CHECK(run("fiber report --in " + data("fibers/trefoil.json") + " --depths 2,1").code == 2);
  CHECK(run("fiber report --in " + data("fibers/trefoil.json") + " --reading power").code == 2);
}

TEST_CASE("obc verify reports the d=5 orthogonality") {
  auto r = run("obc verify --dim 5");
  CHECK(r.out.find("5/4 = 1 + 1/4") != std::string::npos);
  auto m = machine(r.out);
  CHECK(m["reports"][0]["pass"] == true);
  CHECK(m["reports"][0]["title"] == "obc patch audit d=5");
}

TEST_CASE("necklace build and limit run") {
  const std::string out = scratch() + "/trefoil";
  auto nb = run("necklace build --in " + data("knots/trefoil.json") + " --out " + out);
  CHECK(nb.code == 0);
  auto m = machine(nb.out);
  CHECK(m["extra"]["pearls"] == 58);
  CHECK(m["extra"]["added"] == 38);
  REQUIRE(std::filesystem::exists(out + ".necklace.json"));

  auto sq = run("necklace build --nerve --in " + data("knots/trivial_square.json"));
  CHECK(sq.code == 0);
  CHECK(machine(sq.out)["extra"]["pearls"] == 4);
  CHECK(machine(sq.out)["extra"]["added"] == 0);

  // a knot file is not a necklace file
  CHECK(run("limit run --in " + data("knots/trefoil.json") + " --depth 1").code == 2);
  CHECK(run("limit run --in " + out + ".necklace.json --depth 3 --cap 1000").code == 3);

  auto lr = run("limit run --in " + out + ".necklace.json --depth 1 --out " + out);
  auto lm = machine(lr.out);
  CHECK(lm["reports"][0]["title"] == "orbit stage");
  CHECK(std::filesystem::exists(out + ".cloud.csv"));
  CHECK(std::filesystem::exists(out + ".ledger.csv"));
  CHECK(std::filesystem::exists(out + ".obj"));
  auto zero = run("limit run --in " + out + ".necklace.json --depth 0");
  CHECK(zero.code != 3);
}

TEST_CASE("reruns give identical bodies") {
  for (const std::string& args :
       {"fiber report --in " + data("fibers/trefoil.json") + " --depths 1,2,3",
        "necklace build --in " + data("knots/trivial_2.json"), std::string("obc verify --dim 3"),
        "limit run --in " + scratch() + "/trefoil.necklace.json --depth 2"}) {
    CAPTURE(args);
    auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(body(a.out) == body(b.out));
  }
  const std::string nk = scratch() + "/trefoil.necklace.json";
  auto t1 = run("limit run --in " + nk + " --depth 2 --threads 1");
  auto t4 = run("limit run --in " + nk + " --depth 2 --threads 4");
  CHECK(machine(t1.out)["reports"] == machine(t4.out)["reports"]);
}

TEST_CASE("spun descriptors give the same certificate") {
  auto a = machine(run("fiber report --in " + data("fibers/trefoil.json") + " --depths 1,2,3").out);
  auto b = machine(run("fiber report --in " + data("fibers/spun_trefoil_5.json") + " --depths 1,2,3").out);
  REQUIRE(a["reports"].size() == b["reports"].size());
  const auto& ca = a["reports"].back();
  const auto& cb = b["reports"].back();
  CHECK(ca["pass"] == true);
  CHECK(ca["checks"] == cb["checks"]);
  CHECK(ca["data"] == cb["data"]);
}
