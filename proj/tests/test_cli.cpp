#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("HAMF_CLI_BIN");
  REQUIRE_MESSAGE(p != nullptr, "HAMF_CLI_BIN must point at the CLI binary");
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("hamf_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("symbol prints the value and validates the domain") {
  CHECK(run("symbol 2 15").out == "1\n");
  CHECK(run("symbol 2 15").exit_code == 0);
  CHECK(run("symbol 0 1").out == "1\n");
  CHECK(run("symbol -3 -1").out == "-1\n");
  CHECK(run("symbol 33 9999").out == "0\n");
  CHECK(run("symbol 4 6").exit_code == 2);
  CHECK(run("symbol 4 0").exit_code == 2);
}

TEST_CASE("help and usage errors") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("theta --help").exit_code == 0);
  CHECK(run("").exit_code == 2);             // missing subcommand
  CHECK(run("no-such-sub").exit_code == 2);  // unknown subcommand
  CHECK(run("theta eval").exit_code == 2);   // missing --z
}

TEST_CASE("numeric domain errors map to exit 2") {
  CHECK(run("dist sample --y -1 --n 10").exit_code == 2);
  CHECK(run("dist sample --y 0.5 --n 10").exit_code == 2);
  CHECK(run("hamf eval --preset nope --z 0,1").exit_code == 2);
  CHECK(run("group j-factor --gamma 1,0,2,1 --z 0,1").exit_code == 2);
  CHECK(run("theta eval --z 0,-1").exit_code == 2);
}

TEST_CASE("term caps map to exit 1") {
  // tolerance far out of reach at tiny y: the truncation index would pass
  // the term cap
  const std::string cmd = "HAMF_TOL=1e-300 " + cli_path() +
                          " theta eval --z 0,1e-13 2>/dev/null; echo $?";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[64] = {0};
  REQUIRE(fgets(buf, sizeof buf, pipe) != nullptr);
  pclose(pipe);
  CHECK(std::string(buf) == "1\n");
}

TEST_CASE("--tol steers the series truncation") {
  // a loose tolerance changes theta(i) by less than that tolerance
  const RunResult coarse = run("theta eval --z 0,1 --tol 1e-3");
  const RunResult fine = run("theta eval --z 0,1 --tol 1e-14");
  CHECK(coarse.exit_code == 0);
  CHECK(fine.exit_code == 0);
  double rc = 0, ic = 0, rf = 0, iff = 0;
  REQUIRE(std::sscanf(coarse.out.c_str(), "{\"re\":%lf,\"im\":%lf", &rc, &ic) == 2);
  REQUIRE(std::sscanf(fine.out.c_str(), "{\"re\":%lf,\"im\":%lf", &rf, &iff) == 2);
  CHECK(std::abs(rc - rf) < 1e-3);
  CHECK(std::abs(rf - 1.0037348854877393) < 1e-12);
}

TEST_CASE("json records carry the version string") {
  const RunResult r = run("theta eval --z 0.3,0.7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"version\":\"0.1.0\"") != std::string::npos);
  CHECK(r.out.find("\"re\":") != std::string::npos);
}

TEST_CASE("check-transform reports a residual sweep") {
  const RunResult r = run("theta check-transform --level 4 --trials 5 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"max_residual\":") != std::string::npos);
  CHECK(r.out.find("\"trials\":5") != std::string::npos);
  CHECK(run("theta check-transform --level 6 --trials 5").exit_code == 2);
}

TEST_CASE("j-factor prints a unit complex number") {
  const RunResult r = run("group j-factor --gamma 1,0,4,1 --z 0,1");
  CHECK(r.exit_code == 0);
  double re = 0, im = 0;
  REQUIRE(std::sscanf(r.out.c_str(), "{\"re\":%lf,\"im\":%lf", &re, &im) == 2);
  CHECK(std::abs(re * re + im * im - 1.0) < 1e-12);
}

TEST_CASE("random-element output lies in the group") {
  const RunResult r = run("group random-element 4 --seed 9 --height 30");
  CHECK(r.exit_code == 0);
  long long a, b, c, d;
  REQUIRE(std::sscanf(r.out.c_str(), "{\"a\":%lld,\"b\":%lld,\"c\":%lld,\"d\":%lld",
                      &a, &b, &c, &d) == 4);
  CHECK(a * d - b * c == 1);
  CHECK(((a - 1) % 4 + 4) % 4 == 0);
  CHECK((c % 4 + 4) % 4 == 0);
}

TEST_CASE("coefficient CSV is stable across repeated runs") {
  TempDir tmp;
  const std::string f1 = (tmp.path / "c1.csv").string();
  const std::string f2 = (tmp.path / "c2.csv").string();
  CHECK(run("hamf coeffs --preset log-squares --mmax 500 --out " + f1).exit_code == 0);
  CHECK(run("hamf coeffs --preset log-squares --mmax 500 --out " + f2).exit_code == 0);
  const std::string a = slurp(f1);
  CHECK(a == slurp(f2));
  CHECK(a.rfind("m,re,im\n", 0) == 0);
  CHECK(a.find("\n1,-1,0\n") != std::string::npos);
}

TEST_CASE("rule files drive the coefficient sequence") {
  TempDir tmp;
  const std::string rule = (tmp.path / "rule.csv").string();
  std::ofstream(rule) << "1,1,0\n";  // theta-only as a table
  const RunResult a = run("hamf approx-error --K 2 --M 1000 --rule-file " + rule);
  const RunResult b = run("hamf approx-error --K 2 --M 1000 --preset theta-only");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  // a certificate violation in the file is a usage error
  std::ofstream(rule) << "1,5,0\n";
  CHECK(run("hamf approx-error --K 2 --M 1000 --rule-file " + rule).exit_code == 2);
}

TEST_CASE("r-term single point matches the closed form") {
  TempDir tmp;
  const std::string psi = (tmp.path / "psi.csv").string();
  std::ofstream(psi) << "1,1,0\n";
  const RunResult r = run("dist r-term --psi " + psi + " --M 400 --x 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"re\":20,") != std::string::npos);  // sqrt(400)
  // n = 0 rows are rejected
  std::ofstream(psi) << "0,1,0\n";
  CHECK(run("dist r-term --psi " + psi + " --M 10 --x 0").exit_code == 2);
}
