#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "metaplectic/cli.hpp"
#include "metaplectic/json_io.hpp"

using namespace metaplectic;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("metaplectic_cli_" + name)).string();
}

// Verdict lines of the text rendering, e.g. "verdicts.axioms: true".
std::map<std::string, std::string> text_verdicts(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("verdicts.", 0) != 0) continue;
    auto colon = line.find(": ");
    out[line.substr(9, colon - 9)] = line.substr(colon + 2);
  }
  return out;
}

}  // namespace

TEST_CASE("theta orbit") {
  auto r = call({"theta-orbit", "--n", "3", "--r", "7"});
  CHECK(r.code == 0);
  CHECK(r.json()["orbit"] == Json::array({3, 3, 1}));
  CHECK(r.json()["schema"] == 1);
  CHECK(call({"theta-orbit", "--n", "0", "--r", "7"}).code == 2);
  CHECK(call({"theta-orbit", "--n", "3"}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({}).code == 2);
}

TEST_CASE("jacquet dimension") {
  auto r = call({"jacquet-dim", "--n", "2", "--q", "3", "--c", "0", "--lambda", "2,2"});
  CHECK(r.code == 0);
  CHECK(r.json()["kind"] == "exact");
  CHECK(r.json()["value"] == 1);
  auto f = call({"jacquet-dim", "--n", "2", "--c", "1", "--lambda", "2,2", "--first-formula"});
  CHECK(f.code == 0);
  CHECK(f.json()["verdicts"]["formulas_agree"] == true);
  CHECK(call({"jacquet-dim", "--n", "2", "--lambda", "3"}).json()["kind"] == "zero");
  CHECK(call({"jacquet-dim", "--n", "2", "--q", "4", "--lambda", "2"}).code == 2);
  CHECK(call({"jacquet-dim", "--n", "2", "--c", "2", "--lambda", "2"}).code == 2);
  CHECK(call({"jacquet-dim", "--n", "2", "--r", "5", "--lambda", "2,2"}).code == 2);
  CHECK(call({"jacquet-dim", "--n", "2", "--lambda", "2,x"}).code == 2);
}

TEST_CASE("hilbert") {
  auto v = call({"hilbert", "--n", "2", "--q", "3", "--x", "1,0", "--y", "1,0"});
  CHECK(v.code == 0);
  CHECK(v.json()["value"] == 1);
  auto ax = call({"hilbert", "--n", "3", "--q", "7"});
  CHECK(ax.code == 0);
  CHECK(ax.json()["verdicts"]["axioms"] == true);
  CHECK(call({"hilbert", "--n", "2", "--x", "1,0"}).code == 2);
  CHECK(call({"hilbert", "--n", "2", "--x", "1;0", "--y", "0,0"}).code == 2);
}

TEST_CASE("cocycle and block checks") {
  auto c = call({"cocycle-check", "--n", "2", "--c", "1", "--r", "2"});
  CHECK(c.code == 0);
  CHECK(c.json()["violations"].empty());
  CHECK(c.json()["checked"] == 4096);
  auto s = call({"cocycle-check", "--n", "3", "--r", "3", "--mode", "sample=100", "--seed", "9"});
  CHECK(s.code == 0);
  CHECK(s.json()["checked"] == 100);
  CHECK(call({"cocycle-check", "--n", "3", "--r", "3", "--mode", "sample=0"}).code == 2);
  auto huge = call({"cocycle-check", "--n", "5", "--r", "4"});
  CHECK(huge.code == 1);
  CHECK(huge.json()["error"]["code"] == "BudgetExceeded");
  auto text = call({"cocycle-check", "--n", "2", "--r", "2", "--mode", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("verdicts.cocycle_identity: true") != std::string::npos);
  auto b = call({"block-compat", "--n", "3", "--c", "0", "--lambda", "2,1"});
  CHECK(b.code == 0);
  CHECK(b.json()["violation_count"] == 0);
}

TEST_CASE("cover subgroups") {
  auto z = call({"torus-center", "--n", "3", "--c", "0", "--r", "2"});
  CHECK(z.code == 0);
  CHECK(z.json()["center_order"] == 3);
  CHECK(z.json()["verdicts"]["center_matches_prediction"] == true);
  auto m = call({"max-abelian", "--n", "2", "--c", "0", "--r", "2", "--name", "std"});
  CHECK(m.code == 0);
  auto mu = call({"max-abelian", "--n", "2", "--c", "0", "--r", "2", "--name", "mu"});
  CHECK(mu.code == 1);
  CHECK(mu.json()["verdicts"]["maximal_abelian"] == false);
  auto i = call({"index", "--n", "2", "--c", "0", "--r", "2", "--num", "full", "--den", "std"});
  CHECK(i.code == 0);
  CHECK(i.json()["index"] == 4);
  auto bad = call({"index", "--n", "2", "--c", "0", "--r", "2", "--num", "mu", "--den", "full"});
  CHECK(bad.code == 1);
  CHECK(bad.json()["error"]["code"] == "NotContained");
  auto unknown = call({"index", "--n", "2", "--r", "2", "--num", "nope", "--den", "full"});
  CHECK(unknown.json()["error"]["code"] == "UnknownName");
  auto levi = call({"index", "--n", "2", "--r", "3", "--levi", "2,1", "--num", "full", "--den", "sq_M"});
  CHECK(levi.code == 0);
}

TEST_CASE("orbit data") {
  auto r = call({"orbit-data", "--orbit", "3,3,1", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.json()["weights"]["standard"] == Json::array({2, 2, 0, 0, 0, -2, -2}));
  CHECK(r.json()["weights"]["prime"] == Json::array({2, 0, -2, 2, 0, 0, -2}));
  CHECK(r.json()["versus_theta"] == "equal");
  CHECK(call({"orbit-data", "--orbit", "1,3"}).code == 2);
}

TEST_CASE("trace emission and checking") {
  const std::string path = temp_path("trace31.json");
  auto e = call({"exchange-trace", "--n", "2", "--orbit", "3,1", "--emit", path});
  CHECK(e.code == 0);
  CHECK(e.json()["status"] == "vanishing");
  auto c = call({"check-trace", path});
  CHECK(c.code == 0);
  CHECK(c.json()["check"]["ok"] == true);

  Json t;
  std::ifstream(path) >> t;
  t["terminal"]["status"] = "nonvanishing";
  std::ofstream(path) << t.dump();
  auto bad = call({"check-trace", path});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.json()["check"]["diagnostics"].empty());

  std::ofstream(path) << "{not json";
  auto broken = call({"check-trace", path});
  CHECK(broken.code == 1);
  CHECK(broken.json()["error"]["code"] == "ParseError");
  std::filesystem::remove(path);
  CHECK(call({"check-trace", path}).code == 2);

  auto unsupported = call({"exchange-trace", "--n", "3", "--orbit", "2,2"});
  CHECK(unsupported.code == 1);
  CHECK(unsupported.json()["error"]["code"] == "UnsupportedOrbit");
}

TEST_CASE("classify") {
  auto r = call({"classify", "--n", "2", "--r", "4"});
  CHECK(r.code == 0);
  for (const auto& row : r.json()["orbits"]) {
    if (row["orbit"] == Json::array({2, 2})) CHECK(row["status"] == "nonvanishing");
    if (row["orbit"] == Json::array({3, 1})) CHECK(row["status"] == "vanishing");
  }
}

TEST_CASE("text and json agree on verdicts") {
  const std::vector<std::vector<std::string>> cases = {
      {"hilbert", "--n", "4", "--q", "5"},
      {"block-compat", "--n", "2", "--c", "1", "--lambda", "1,2"},
      {"max-abelian", "--n", "2", "--r", "2", "--name", "mu"},
      {"classify", "--n", "3", "--r", "5"},
  };
  for (const auto& args : cases) {
    auto j = call(args);
    auto with_text = args;
    with_text.insert(with_text.begin(), {"--mode", "text"});
    auto t = call(with_text);
    CHECK(j.code == t.code);
    auto tv = text_verdicts(t.out);
    REQUIRE(j.json().contains("verdicts"));
    for (const auto& [k, v] : j.json()["verdicts"].items()) CHECK(tv[k] == v.dump());
    auto trailing = args;
    trailing.insert(trailing.end(), {"--mode", "text"});
    if (args[0] != "cocycle-check") CHECK(call(trailing).out == t.out);
  }
}

TEST_CASE("installed binary") {
  std::array<char, 256> buf{};
  std::string out;
  FILE* p = popen((std::string(METAPLECTIC_BINARY) + " theta-orbit --n 3 --r 7").c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  CHECK(pclose(p) == 0);
  CHECK(Json::parse(out)["orbit"] == Json::array({3, 3, 1}));
  FILE* q = popen((std::string(METAPLECTIC_BINARY) + " theta-orbit --n 0 --r 7 2>/dev/null").c_str(), "r");
  REQUIRE(q != nullptr);
  while (fgets(buf.data(), buf.size(), q)) {
  }
  const int status = pclose(q);
  CHECK(WEXITSTATUS(status) == 2);
}
