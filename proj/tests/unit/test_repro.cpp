// Drives the lwqm-repro manifest runner: the committed manifest must pass,
// a corrupted copy must fail naming the bad row, an empty manifest passes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_repro(const std::string& manifest) {
  const std::string tmp = "repro_test_out.txt";
  const std::string cmd = std::string(REPRO_BIN) + " " + manifest + " " +
                          LWQM_BIN + " > " + tmp + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(tmp.c_str());
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("committed manifest replays clean") {
  auto r = run_repro(std::string(REPRO_DIR) + "/manifest.txt");
  INFO(r.out);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("0 failures") != std::string::npos);
}

TEST_CASE("corrupted expectation is caught and located") {
  // copy the expected spectrum file, damage one value, point a one-entry
  // manifest at it
  const std::string dir = "repro_corrupt";
  REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
  std::string spectrum = slurp(std::string(REPRO_DIR) + "/expected/spectrum.csv");
  REQUIRE(!spectrum.empty());
  auto pos = spectrum.find("-3.84");
  REQUIRE(pos != std::string::npos);
  spectrum.replace(pos, 5, "-9.99");
  {
    std::ofstream f(dir + "/bad_spectrum.csv");
    f << spectrum;
  }
  {
    std::ofstream m(dir + "/manifest.txt");
    m << "run: spectrum --paper-reference\n"
      << "expect: bad_spectrum.csv\n"
      << "tol: 1e-4\n"
      << "tag: trivial\n"
      << "anchor: deliberately corrupted spectrum row\n";
  }
  auto r = run_repro(dir + "/manifest.txt");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("row 1") != std::string::npos);   // header is row 0
  REQUIRE(std::system(("rm -rf " + dir).c_str()) == 0);
}

TEST_CASE("empty manifest passes trivially") {
  const std::string path = "repro_empty_manifest.txt";
  {
    std::ofstream m(path);
    m << "# nothing to check\n";
  }
  auto r = run_repro(path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0 entries") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("replays are deterministic") {
  auto a = run_repro(std::string(REPRO_DIR) + "/manifest.txt");
  auto b = run_repro(std::string(REPRO_DIR) + "/manifest.txt");
  CHECK(a.out == b.out);
}
