#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#include "support/canada.hpp"
#include "support/files.hpp"

using eyeball::testing::ScratchDir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run run(const ScratchDir& dir, const std::string& args) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = quote(EYEBALL_CLI_PATH) + " " + args + " >" + quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), eyeball::testing::read_file(out), eyeball::testing::read_file(err)};
}

std::string config_arg(const ScratchDir& dir) {
  eyeball::testing::copy_dir(eyeball::testing::canada_dir(), dir / "in");
  return "--config " + quote((dir / "in" / "eyeball.conf").string()) + " --out " + quote((dir / "out").string());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits cleanly") {
  ScratchDir dir("cli-help");
  const auto r = run(dir, "--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("analyze") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  ScratchDir dir("cli-usage");
  CHECK(run(dir, "").code == 2);
  CHECK(run(dir, "analyze --bogus").code == 2);
  CHECK(run(dir, "frobnicate").code == 2);
  CHECK(run(dir, "coverage --country CA --all").code == 2);
  CHECK(run(dir, "plan --config " + quote((dir / "none.conf").string())).code == 2);
}

TEST_CASE("analyze on the snapshot") {
  ScratchDir dir("cli-analyze");
  const auto r = run(dir, "analyze " + config_arg(dir));
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "out" / "matrix_CA.json"));
  CHECK(fs::exists(dir / "out" / "matrix_CA.svg"));
  CHECK(fs::exists(dir / "out" / "metrics_CA.csv"));

  fs::remove(dir / "out" / "matrix_CA.svg");
  CHECK(run(dir, "render --country CA --out " + quote((dir / "out").string())).code == 0);
  CHECK(fs::exists(dir / "out" / "matrix_CA.svg"));
  CHECK(run(dir, "render --all --out " + quote((dir / "out").string())).code == 0);
}

TEST_CASE("command-line flags override the config") {
  ScratchDir dir("cli-override");
  const auto args = config_arg(dir);
  const auto r = run(dir, "plan " + args + " --country XX");
  CHECK(r.code == 2);
  CHECK(r.err.find("XX") != std::string::npos);
  CHECK(run(dir, "coverage " + args + " --cap 2").code == 2);
  CHECK(run(dir, "coverage " + args + " --cap 0.5").code == 0);
}

TEST_CASE("no matching traceroutes exits with 3") {
  ScratchDir dir("cli-empty");
  const auto args = config_arg(dir);
  eyeball::testing::write_file(dir / "in" / "traceroutes.ndjson", "");
  const auto r = run(dir, "analyze " + args);
  CHECK(r.code == 3);
  CHECK(r.err.find("CA") != std::string::npos);
}

TEST_CASE("missing input exits with 2") {
  ScratchDir dir("cli-missing");
  const auto args = config_arg(dir);
  fs::remove(dir / "in" / "geo.csv");
  const auto r = run(dir, "analyze " + args);
  CHECK(r.code == 2);
  CHECK(r.err.find("geo.csv") != std::string::npos);
}

}  // TEST_SUITE
