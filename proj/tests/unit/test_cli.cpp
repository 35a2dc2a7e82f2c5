#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "degloc/cli.hpp"
#include "json.hpp"

using namespace degloc;

namespace {

struct Run {
  int code;
  std::string out, err;
};

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("degloc_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "degloc");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kWorked =
    "task = degeneracy;\n"
    "vars X1 X2 X3;\n"
    "eq X1^2 + X2^2 + X3^2;\n"
    "ineq X1*X2*X3;\n"
    "F[1][1] = X1; F[1][2] = X1*X2 + X2^2; F[1][3] = X1*X3;\n"
    "a = [[1, 2, 3], [2, 1, 3]];\n";

}  // namespace

TEST_CASE("cli: worked example in text and json") {
  auto in = write_temp("worked.txt", kWorked);
  auto t = run_cli({"--input", in});
  CHECK(t.code == kExitOk);
  CHECK(t.out.find("degree: 4") != std::string::npos);
  CHECK(t.out.find("P = T^4 - 12*T^3 + 67*T^2 - 150*T + 126") != std::string::npos);

  auto j = run_cli({"--input", in, "--format", "json"});
  REQUIRE(j.code == kExitOk);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["P"].size() == 5);
  CHECK(doc["report"]["verified"] == true);
}

TEST_CASE("cli: output is a function of the seed") {
  auto in = write_temp("worked.txt", kWorked);
  auto a = run_cli({"--input", in, "--seed", "5"});
  auto b = run_cli({"--input", in, "--seed", "5"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: modular mode prints residues") {
  auto in = write_temp("worked.txt", kWorked);
  auto r = run_cli({"--input", in, "--prime", "1000000007", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["report"]["modulus"] == 1000000007);
  CHECK(doc["P"].size() == 5);
  CHECK(run_cli({"--input", in, "--prime", "15"}).code == kExitParse);
}

TEST_CASE("cli: parse errors carry line and column") {
  auto in = write_temp("bad.txt", "vars X1 X2;\neq X1^2 +* X2;\n");
  auto r = run_cli({"--input", in});
  CHECK(r.code == kExitParse);
  CHECK(r.err.find("2:") != std::string::npos);

  auto m = write_temp("badmat.txt", "vars X1;\nF[1][1] = X1;\na = [[1, 2], [3]];\n");
  CHECK(run_cli({"--input", m}).code == kExitParse);
  CHECK(run_cli({"--input", in, "--verify", "maybe"}).code == kExitParse);
  CHECK(run_cli({}).code == kExitParse);
}

TEST_CASE("cli: a non-dominant map has an empty fiber") {
  auto in = write_temp("nd.txt", "task = fiber;\nvars X1 X2;\nmap X1;\nmap X1;\n");
  auto r = run_cli({"--input", in});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("EMPTY") != std::string::npos);
}
