#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
  json envelope() const { return json::parse(out); }
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + RIKUNA_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("poly") {
  Run r = run("poly --n 1 --t 0");
  REQUIRE(r.status == 0);
  json j = r.envelope();
  CHECK(j["command"] == "poly");
  CHECK(j["results"]["coefficients"] == json::array({"-1", "-3", "0", "1"}));
  CHECK(run("poly --n 1 --t 1").envelope()["results"]["polynomial"] == "x^3 - 3*x^2 - 6*x - 1");
  json m = run("poly --n 1 --t 0 --mod 7").envelope();
  CHECK(m["results"]["coefficients"] == json::array({"6", "4", "0", "1"}));
  CHECK(run("poly --n 1 --t 0 --l 5").status == 2);
}

TEST_CASE("index and disc") {
  json j = run("index --n 1 --t 1 --p 3").envelope();
  const json& e = j["results"]["primes"][0];
  CHECK(e["index"] == "1");
  CHECK(e["V"] == 0);
  CHECK(e["E"] == "4");
  CHECK(run("index --n 2 --t 18 --p 7").envelope()["results"]["primes"][0]["index"] == "9");

  Run d = run("disc --n 1 --t 0");
  REQUIRE(d.status == 0);
  json dj = d.envelope();
  CHECK(dj["results"]["poly_discriminant"]["value"] == "81");
  CHECK(dj["results"]["field_discriminant"] == "81");
  CHECK(dj["results"]["printed_field_discriminant"] == "27");
  CHECK(dj["warnings"].size() == 1);
}

TEST_CASE("graph") {
  json c = run("graph --q 127 --l 3 --census").envelope();
  CHECK(c["results"]["census"]["rows"].size() == 12);
  CHECK(c["results"]["census"]["columns"] == json::array({"divisor", "count", "period", "preperiod"}));
  json f = run("graph --q 31 --l 5 --census").envelope();
  CHECK(f["results"]["census"]["rows"][4] == json::array({3, 2, 2, 0}));

  Run bad = run("graph --q 11 --l 3 --census");
  CHECK(bad.status == 2);
  CHECK(bad.envelope()["exit_status"] == 2);

  const auto path = std::filesystem::temp_directory_path() / "rikuna_cli_test.dot";
  CHECK(run("graph --q 7 --l 3 --dot " + path.string()).status == 0);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

TEST_CASE("decompose") {
  json a = run("decompose --l 5 --p 31 --zplus 12 --t 10 --n 2").envelope();
  CHECK(a["results"]["observed"]["text"] == "[1 x deg 25]");
  json b = run("decompose --l 3 --p 7 --t 1 --n 2").envelope();
  CHECK(b["results"]["observed"]["text"] == "[1 x deg 9]");
  Run c = run("decompose --l 3 --p 7 --t 3 --n 2");
  CHECK(c.status == 0);
  json cj = c.envelope();
  CHECK(cj["results"]["observed"]["total_degree"] == 9);
  CHECK(cj["results"]["match"] == true);
  CHECK(cj["warnings"].size() == 2);
  CHECK(run("decompose --l 5 --p 31 --zplus 24 --t 10 --n 1").status == 3);
}

TEST_CASE("sweeps keep parameter order") {
  json j = run("index --n 1 --t-range -3..3").envelope();
  REQUIRE(j["results"].is_array());
  REQUIRE(j["results"].size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(j["results"][i]["t"] == std::to_string(i - 3));
}

TEST_CASE("usage errors") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("poly --t 0").status == 2);
  CHECK(run("poly --n 1 --t abc").status == 2);
}

TEST_CASE("output is byte-identical across runs") {
  for (const char* args : {"disc --n 2 --t 18", "graph --q 31 --l 5 --census",
                           "decompose --l 3 --p 13 --t 5 --n 2", "index --n 2 --t-range 0..6"}) {
    Run a = run(args), b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run("--seed 99 decompose --l 3 --p 13 --t 5 --n 2").out ==
        run("decompose --l 3 --p 13 --t 5 --n 2").out);
  CHECK(run("decompose --l 3 --p 13 --t 5 --n 2", "RIKUNA_SEED=5").out ==
        run("decompose --l 3 --p 13 --t 5 --n 2").out);
  CHECK(run("decompose --l 3 --p 13 --t 5 --n 2", "RIKUNA_SEED=oops").status == 2);
}

}
