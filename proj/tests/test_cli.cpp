// Exit-code and output checks against the built CLI binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(POLYFAM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/polyfam_test_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("example-cs exit codes match the verdict") {
  CHECK(run("example-cs --r 2").exit_code == 1);
  CHECK(run("example-cs --r 0.5").exit_code == 1);
  int sqrt3 = run("example-cs --r 1.7320508075688772").exit_code;
  CHECK((sqrt3 == 0 || sqrt3 == 2));
  CHECK(run("example-cs --r2 3 --exact").exit_code == 0);
}

TEST_CASE("example-cs names the failing triple") {
  auto res = run("example-cs --r 2");
  CHECK(res.output.find("Incompatible") != std::string::npos);
  CHECK(res.output.find("triple") != std::string::npos);
}

TEST_CASE("example-cs sweep emits one CSV row per r") {
  auto res = run("example-cs --r-from 0.5 --r-to 3.5 --steps 7");
  CHECK(res.exit_code == 0);
  CHECK(res.output.rfind("r,pair_fg,pair_fh,pair_gh,triple\n", 0) == 0);
  int lines = 0;
  for (char c : res.output)
    if (c == '\n') ++lines;
  CHECK(lines == 8);
}

TEST_CASE("check on a valid family") {
  std::string path = write_temp("gh.json", R"({
    "ambient_degree": 2,
    "polys": [[-3, 2, 1], [-3, -2, 1]]
  })");
  auto res = run("check " + path);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("Compatible") != std::string::npos);
}

TEST_CASE("malformed inputs exit 3") {
  std::string bad_lengths = write_temp("bad.json", R"({
    "ambient_degree": 2,
    "polys": [[-3, 2, 1], [-3, -2]]
  })");
  CHECK(run("check " + bad_lengths).exit_code == 3);
  std::string not_json = write_temp("notjson.json", "hello");
  CHECK(run("check " + not_json).exit_code == 3);
  CHECK(run("check /nonexistent/file.json").exit_code == 3);
  CHECK(run("bogus-subcommand").exit_code == 3);
  CHECK(run("example-cs").exit_code == 3);
}

TEST_CASE("oracle subcommand reports violations through the exit code") {
  std::string clamp = write_temp("clamp.json", R"({
    "ambient_degree": 2,
    "polys": [[4, 0, -1], [-3, 2, 1], [-3, -2, 1]]
  })");
  auto res = run("oracle " + clamp + " -n 5000 --seed 7");
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("violations") != std::string::npos);

  std::string gh = write_temp("gh2.json", R"({
    "ambient_degree": 2,
    "polys": [[-3, 2, 1], [-3, -2, 1]]
  })");
  CHECK(run("oracle " + gh + " -n 1000 --seed 7").exit_code == 0);
}

TEST_CASE("scan emits the trajectory CSV") {
  std::string gh = write_temp("gh3.json", R"({
    "ambient_degree": 2,
    "polys": [[-3, 2, 1], [-3, -2, 1]]
  })");
  auto res = run("scan " + gh + " --edge 0 1 -k 5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.rfind("s,root_1,root_2,complex_margin\n", 0) == 0);
}

TEST_CASE("interleaver and perturb subcommands") {
  std::string gh = write_temp("gh4.json", R"({
    "ambient_degree": 2,
    "polys": [[-3, 2, 1], [-3, -2, 1]]
  })");
  auto il = run("interleaver " + gh);
  CHECK(il.exit_code == 0);
  CHECK(il.output.find("witness") != std::string::npos);

  auto pm = run("perturb " + gh + " --epsilon 0.1");
  CHECK(pm.exit_code == 0);
  CHECK(pm.output.find("polys") != std::string::npos);

  std::string improper = write_temp("improper.json", R"({
    "ambient_degree": 2,
    "polys": [[3, 0, -1], [-3, 2, 1], [-3, -2, 1]]
  })");
  CHECK(run("interleaver " + improper).exit_code == 1);
  CHECK(run("perturb " + improper + " --mode interior").exit_code == 1);
}
