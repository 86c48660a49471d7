#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "rfl/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rfl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmpdir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("rfl-cli-test-" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("build") {
    const auto r = run({"--schedule", "128,128", "--depth", "2", "--out", tmpdir("build"), "build"});
    CHECK(r.code == 0);
    CHECK(r.out.find("level 1: 128 nodes") != std::string::npos);
    CHECK(r.out.find("level 2: 16384 nodes") != std::string::npos);
    
  }

  TEST_CASE("invalid schedule") {
    const auto r = run({"--schedule", "100", "--depth", "1", "build"});
    CHECK(r.code == 2);
    CHECK(r.err.find("r_1 < r_0/100") != std::string::npos);
    CHECK(run({"--schedule", "128", "--depth", "4", "build"}).code == 2);
    CHECK(run({"experiment", "nonsense"}).code == 2);
  }

  TEST_CASE("eval") {
    const auto ok = run({"--schedule", "128", "--depth", "0", "eval", "--z", "2,0"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("0.375") != std::string::npos);
    CHECK(run({"--schedule", "128", "--depth", "0", "eval", "--z", "0.5,0"}).code == 3);
  }

  TEST_CASE("failing experiment exits with 1") {
    const auto r = run({"--schedule", "128,128", "--depth", "2", "--out", tmpdir("pv"), "--trials", "5",
                        "experiment", "pv-failure", "--placement", "interior"});
    CHECK(r.code == 1);
  }

  TEST_CASE("passing experiment writes reports") {
    const std::string dir = tmpdir("refl");
    const auto r = run({"--out", dir, "--trials", "20", "experiment", "reflectionless"});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir + "/reflectionless.csv"));
    CHECK(std::filesystem::exists(dir + "/reflectionless.json"));
  }
}
