#include <doctest.h>

#include "support/support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using jnum::testing::data_file;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("jnum-cli-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

Run run_cli(const std::string& args) {
  fs::path out = scratch() / "out.txt";
  std::string cmd = std::string("\"") + JNUM_CLI + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string quoted(const std::string& p) { return "\"" + p + "\""; }

}  // namespace

TEST_CASE("validate") {
  for (const char* name : {"cusp.json", "aad14-ideal.json", "example1.json", "example2-d3.json"}) {
    auto r = run_cli("validate " + quoted(data_file(name)));
    CHECK(r.code == 0);
    CHECK(r.out.find("ok:") != std::string::npos);
  }
  fs::path bad = scratch() / "bad.json";
  {
    std::ifstream in(data_file("example1.json"));
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto pos = text.find("\"k\": 0");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 6, "\"k\": 3");
    std::ofstream(bad) << text;
  }
  auto r = run_cli("validate " + quoted(bad.string()));
  CHECK(r.code == 2);
  CHECK(r.out.find("D_aff") != std::string::npos);
  CHECK(run_cli("validate " + quoted((scratch() / "missing.json").string())).code == 2);
}

TEST_CASE("closure") {
  auto r = run_cli("closure " + quoted(data_file("example1.json")) + " -d \"E2:1,E4:1\"");
  CHECK(r.code == 0);
  CHECK(r.out == "E1:1 E2:1 E3:2 E4:3 E5:1 E6:1\n");
  auto c = run_cli("closure " + quoted(data_file("cusp.json")) + " -d E3:1");
  CHECK(c.out == "E1:1 E2:1 E3:2\n");
  auto same = run_cli("closure " + quoted(data_file("cusp.json")) + " -d \"E1:1,E2:1,E3:2\" --trace");
  CHECK(same.out.find("E1:1 E2:1 E3:2") != std::string::npos);
  CHECK(same.out.find("sweep") == std::string::npos);
  CHECK(run_cli("closure " + quoted(data_file("cusp.json")) + " -d E9:1").code == 2);
}

TEST_CASE("jumping") {
  auto r = run_cli("jumping " + quoted(data_file("example1.json")) + " --up-to 1 --certify");
  CHECK(r.code == 0);
  CHECK(r.out.find("Undetermined") == std::string::npos);
  auto c = run_cli("jumping " + quoted(data_file("cusp.json")) + " --up-to 3 --certify");
  CHECK(c.code == 0);
  CHECK(c.out.find("jumping numbers up to 3: 5/6 1 11/6 2 17/6 3") != std::string::npos);
  auto e = run_cli("jumping " + quoted(data_file("example2-d3.json")) + " --up-to 1 --certify");
  CHECK(e.code == 0);
  CHECK(e.out.find("1/2 9/14 11/14 13/14 1") != std::string::npos);
}

TEST_CASE("json output is byte-stable") {
  std::string cmd = "jumping " + quoted(data_file("example1.json")) + " --up-to 1 --certify --format json";
  auto a = run_cli(cmd);
  auto b = run_cli(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"lambda\": \"20/27\"") != std::string::npos);
}

TEST_CASE("scan") {
  auto c = run_cli("scan " + quoted(data_file("cusp.json")) + " --up-to 2");
  CHECK(c.code == 0);
  CHECK(c.out.find("AGREE") != std::string::npos);
  CHECK(run_cli("scan " + quoted(data_file("example1.json")) + " --up-to 1").code == 0);
  auto low = run_cli("scan " + quoted(data_file("cusp.json")) + " --up-to 1/2");
  CHECK(low.code == 0);
  CHECK(low.out.find("AGREE") != std::string::npos);
}

TEST_CASE("exit 3: an undetermined supercandidate") {
  fs::path out = scratch() / "example2-d4.json";
  REQUIRE(run_cli("gen-example2 --d 4 --out " + quoted(out.string())).code == 0);
  auto r = run_cli("jumping " + quoted(out.string()) + " --up-to 1 --certify");
  CHECK(r.code == 3);
  CHECK(r.out.find("Undetermined") != std::string::npos);
}

TEST_CASE("exit 4: scan disagreement on data that fails validation") {
  std::string path = quoted(std::string(JNUM_TEST_DATA_DIR) + "/negative-meet.json");
  CHECK(run_cli("scan " + path + " --up-to 2").code == 2);
  auto r = run_cli("scan " + path + " --up-to 2 --skip-validation");
  CHECK(r.code == 4);
  CHECK(r.out.find("DISAGREE") != std::string::npos);
}

TEST_CASE("gen-example2") {
  fs::path out = scratch() / "example2-d3.json";
  auto r = run_cli("gen-example2 --d 3 --out " + quoted(out.string()));
  CHECK(r.code == 0);
  CHECK(r.out.find("Ep count 21") != std::string::npos);
  CHECK(run_cli("validate " + quoted(out.string())).code == 0);
  CHECK(run_cli("gen-example2 --d 2 --out " + quoted((scratch() / "x.json").string())).code == 2);
  fs::remove_all(scratch());
}
