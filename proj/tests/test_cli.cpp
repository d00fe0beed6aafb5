#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "msmoments/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = msm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kZeros = MSM_TEST_DATA "/zeros_100k.txt";

}  // namespace

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  const auto typo = call({"sieve", "--limt", "100"});
  CHECK(typo.code == 2);
  CHECK(typo.err.find("--limit") != std::string::npos);
  const auto unknown = call({"sievee"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("sieve") != std::string::npos);
  CHECK(call({"ef", "verify", "--zeros", kZeros, "--x", "1e4", "--delta", "1.5"}).code == 2);
}

TEST_CASE("reports echo their configuration") {
  const auto r = call({"sieve", "--limit", "1000", "--psi", "100"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# limit = 1000") != std::string::npos);
  CHECK(r.out.find("94.0453112294") != std::string::npos);
  const auto c = call({"constants"});
  CHECK(c.code == 0);
  CHECK(c.out.find("digamma") != std::string::npos);
}

TEST_CASE("json output round-trips") {
  const auto r = call({"--format", "json", "--zeros", kZeros, "ef", "verify", "--x", "1e4", "--delta", "0.2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["command"] == "ef verify");
  CHECK(j.dump(2) + "\n" == r.out);
  CHECK(j["report"]["passed"] == true);
}

TEST_CASE("config files") {
  const auto path = std::filesystem::temp_directory_path() / "msm_cli.toml";
  std::ofstream(path) << "[sieve]\nlimit = 1000\npsi = 10\n";
  const auto r = call({"--config", path.string(), "sieve"});
  CHECK(r.code == 0);
  CHECK(r.out.find("7.83201418051") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("thread count does not change output") {
  const std::vector<std::string> args{"--zeros", kZeros, "moment", "compute", "--n", "0,1,2", "--X", "1e4",
                                      "--delta", "0.2"};
  auto one = args;
  one.insert(one.begin(), {"--threads", "1"});
  auto four = args;
  four.insert(four.begin(), {"--threads", "4"});
  const auto a = call(one);
  const auto b = call(four);
  REQUIRE(a.code == 0);
  CHECK(a.out.find("threads") == std::string::npos);
  CHECK(a.out == b.out);
}
