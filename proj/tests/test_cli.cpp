// Exit-code and file-flow checks for the command-line tool. The binary path
// arrives via the VPMATCH_CLI environment variable (set by ctest).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
  const char* path = std::getenv("VPMATCH_CLI");
  REQUIRE_MESSAGE(path != nullptr, "VPMATCH_CLI must point at the CLI binary");
  return path;
}

int run(const std::string& args) {
  const std::string command = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::string kDir = "cli_tmp";

struct Workspace {
  Workspace() {
    const int rc = std::system(("rm -rf " + kDir + " && mkdir -p " + kDir).c_str());
    REQUIRE(rc == 0);
  }
};

}  // namespace

TEST_CASE("pipeline happy path exits 0 at every stage") {
  Workspace ws;
  CHECK(run("gen-lb --n 2 -o " + kDir + "/inst.json --order-out " + kDir +
            "/order.json") == 0);
  CHECK(run("moments " + kDir + "/inst.json --exact -o " + kDir + "/mom.json") == 0);
  CHECK(run("solve " + kDir + "/mom.json -o " + kDir + "/prices.json") == 0);
  CHECK(run("simulate " + kDir + "/inst.json " + kDir + "/prices.json "
            "--orders batch-lb --trials 500 --seed 1 -o " + kDir + "/report.json") == 0);
  CHECK(run("report " + kDir + "/report.json --format csv -o " + kDir +
            "/report.csv") == 0);
  CHECK(slurp(kDir + "/report.csv").rfind("order,", 0) == 0);
  CHECK(run("lowerbound --n 1 --trials 50 -o " + kDir + "/lb.json") == 0);
  CHECK(slurp(kDir + "/lb.json").find("\"dp_value\"") != std::string::npos);
}

TEST_CASE("validation failures exit 2") {
  Workspace ws;
  {
    std::ofstream bad(kDir + "/bad.json");
    bad << "{\"n_left\": 1}";
  }
  CHECK(run("moments " + kDir + "/bad.json --exact") == 2);
  CHECK(run("moments " + kDir + "/missing.json --exact") == 2);
  {
    std::ofstream garbled(kDir + "/garbled.json");
    garbled << "{]";
  }
  CHECK(run("solve " + kDir + "/garbled.json") == 2);

  // Probabilities that do not sum to one.
  {
    std::ofstream off(kDir + "/off.json");
    off << R"({"n_left":1,"n_right":1,"edges":[{"id":0,"left":0,"right":0,)"
        << R"("dist":{"values":[0.0,1.0],"probs":[0.5,0.6]}}]})";
  }
  CHECK(run("moments " + kDir + "/off.json --exact") == 2);

  // Choosing neither or both moment modes is a usage error.
  CHECK(run("moments " + kDir + "/off.json") == 2);
}

TEST_CASE("dimension mismatch between prices and instance exits 2") {
  Workspace ws;
  REQUIRE(run("gen-lb --n 1 -o " + kDir + "/small.json") == 0);
  REQUIRE(run("gen-lb --n 2 -o " + kDir + "/large.json") == 0);
  REQUIRE(run("moments " + kDir + "/small.json --exact -o " + kDir + "/small.mom") == 0);
  REQUIRE(run("solve " + kDir + "/small.mom -o " + kDir + "/small.prices") == 0);
  CHECK(run("simulate " + kDir + "/large.json " + kDir + "/small.prices "
            "--orders batch-lb --trials 10") == 2);
}

TEST_CASE("enumeration limit exits 3") {
  Workspace ws;
  REQUIRE(run("gen-lb --n 5 -o " + kDir + "/big.json") == 0);
  // 2^35 profiles: far past the default enumeration limit.
  CHECK(run("moments " + kDir + "/big.json --exact") == 3);
}

TEST_CASE("unknown flags and subcommands are rejected") {
  CHECK(run("frobnicate") != 0);
  CHECK(run("gen-lb --n 2 --sideways") != 0);
  CHECK(run("gen-lb") != 0);  // --n is required
}
