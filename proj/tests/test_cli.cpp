#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "matchcert/certify.hpp"
#include "matchcert/json_io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MATCHCERT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

// Scratch directory holding the market files the tests feed to the binary.
const std::string& scratch_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/matchcert-cli-XXXXXX";
    const char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = scratch_dir() + "/" + name;
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
  return path;
}

// Certificates F T T T T at the identity; woman 2 is indifferent between
// man 1 and man 3, so strict ordinal readings need a tie break.
const std::string& transfers_market() {
  static const std::string path = write_file("transfers.json", R"({
    "type": "cardinal",
    "n": 3,
    "U": [[0, 2, 1], [1, 2, 0], [1, 0, 2]],
    "V": [[2, 1, 0], [1, 2, 0], [0, 1, 2]]
  })");
  return path;
}

const std::string& strict_market() {
  static const std::string path = write_file("strict.json", R"({
    "type": "cardinal",
    "n": 2,
    "U": [[2, 1], [1, 2]],
    "V": [[2, 1], [1, 2]]
  })");
  return path;
}

const std::string& ordinal_market() {
  static const std::string path = write_file("ordinal.json", R"({
    "type": "ordinal",
    "n": 2,
    "men_prefs": [[1, 2], [2, 1]],
    "women_prefs": [[2, 1], [1, 2]]
  })");
  return path;
}

// Two independent blocks, four stable matchings, none isolated.
const std::string& blocks_market() {
  static const std::string path = write_file("blocks.json", R"({
    "type": "ordinal",
    "n": 4,
    "men_prefs": [[1, 2, 3, 4], [2, 1, 3, 4], [3, 4, 1, 2], [4, 3, 1, 2]],
    "women_prefs": [[2, 1, 3, 4], [1, 2, 3, 4], [4, 3, 1, 2], [3, 4, 1, 2]]
  })");
  return path;
}

}  // namespace

TEST_CASE("certify emits a verified JSON report") {
  RunResult res =
      run_cli("certify --market " + transfers_market() + " --matching 1,2,3 --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  CHECK(j["command"] == "certify");
  CHECK(j["pattern"] == "FTTTT");
  CHECK(j["n"] == 3);
  REQUIRE(j["verdicts"].size() == 5);
  for (const auto& v : j["verdicts"]) CHECK(v["verified"] == true);
  CHECK(j["verdicts"][0]["concept"] == "no-trade-stable");
  CHECK(j["verdicts"][0]["holds"] == false);
  CHECK(j["verdicts"][0]["certificate"]["type"] == "pair-violation");
  CHECK(j["verdicts"][0]["certificate"]["man"] == 1);
  CHECK(j["verdicts"][0]["certificate"]["woman"] == 2);
  CHECK(j["verdicts"][2]["certificate"]["type"] == "transfers");
  CHECK(j["input_digest"].get<std::string>().size() == 16);

  // The pattern must match an in-process run of the library.
  matchcert::CardinalMarket m = std::get<matchcert::CardinalMarket>(
      matchcert::load_market(transfers_market()));
  matchcert::CertifyAllResult all =
      matchcert::certify_all(m, matchcert::Matching::identity(3));
  CHECK(j["pattern"].get<std::string>() == all.pattern);
}

TEST_CASE("certify prints a human table by default") {
  RunResult res = run_cli("certify --market " + transfers_market() + " --matching 1,2,3");
  CHECK(res.status == 0);
  CHECK(res.out.find("no-trade-stable") != std::string::npos);
  CHECK(res.out.find("ex-post-pareto") != std::string::npos);
  CHECK(res.out.find("FTTTT") != std::string::npos);
}

TEST_CASE("certify agrees with the library on another matching") {
  RunResult res =
      run_cli("certify --market " + transfers_market() + " --matching 2,1,3 --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  matchcert::CardinalMarket m = std::get<matchcert::CardinalMarket>(
      matchcert::load_market(transfers_market()));
  matchcert::CertifyAllResult all =
      matchcert::certify_all(m, matchcert::Matching(std::vector<int>{1, 0, 2}));
  CHECK(j["pattern"].get<std::string>() == all.pattern);
  for (const auto& v : j["verdicts"]) CHECK(v["verified"] == true);
}

TEST_CASE("exit code 2 covers unreadable, malformed, and mistyped input") {
  CHECK(run_cli("certify --market /nonexistent.json --matching 1").status == 2);

  const std::string bad = write_file("bad.json", "{ not json");
  CHECK(run_cli("certify --market " + bad + " --matching 1").status == 2);

  const std::string floaty = write_file("floaty.json", R"({
    "type": "cardinal", "n": 1, "U": [[0.125]], "V": [[1]]
  })");
  CHECK(run_cli("certify --market " + floaty + " --matching 1").status == 2);

  // Lists cannot be certified; that needs utilities.
  CHECK(run_cli("certify --market " + ordinal_market() + " --matching 1,2").status == 2);

  // CLI misuse maps to 2 as well.
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("certify --no-such-flag").status == 2);
  CHECK(run_cli("frobnicate").status == 2);
}

TEST_CASE("exit code 3 flags matchings that do not fit") {
  CHECK(run_cli("certify --market " + transfers_market() + " --matching 1,2").status == 3);
  CHECK(run_cli("certify --market " + transfers_market() + " --matching 1,1,2").status == 3);
  CHECK(run_cli("certify --market " + transfers_market() + " --matching 1,2,9").status == 3);
}

TEST_CASE("ties require an explicit policy for ordinal work") {
  CHECK(run_cli("enumerate-stable --market " + transfers_market()).status == 4);

  RunResult res = run_cli("enumerate-stable --market " + transfers_market() +
                          " --tie-break lower-index --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  CHECK(j["command"] == "enumerate-stable");
  CHECK(j["count"] == 1);
  CHECK(j["matchings"][0]["sigma"] == json::array({1, 2, 3}));
  CHECK(j["matchings"][0]["isolated"] == true);
}

TEST_CASE("enumerate-stable lists both outcomes of the crossed market") {
  RunResult res = run_cli("enumerate-stable --market " + ordinal_market() + " --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  CHECK(j["count"] == 2);
  CHECK(j["man_optimal_index"] == 1);
  CHECK(j["woman_optimal_index"] == 2);
  for (const auto& entry : j["matchings"]) CHECK(entry["isolated"] == true);
}

TEST_CASE("represent builds checked utilities") {
  RunResult res = run_cli("represent --market " + ordinal_market() +
                          " --construction no-trade --target man-optimal --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  CHECK(j["command"] == "represent");
  CHECK(j["construction"] == "no-trade");
  CHECK(j["checks"]["represents"] == true);
  CHECK(j["checks"]["no_trade_stable"] == true);
  CHECK(j["target"] == json::array({1, 2}));
  CHECK(j["market"]["type"] == "cardinal");

  RunResult iso = run_cli("represent --market " + ordinal_market() +
                          " --construction isolated --target woman-optimal --json");
  REQUIRE(iso.status == 0);
  json ji = json::parse(iso.out);
  CHECK(ji["checks"]["no_trade_stable"] == true);
}

TEST_CASE("exit code 5 flags construction preconditions") {
  // No stable matching of the two-block market is isolated.
  CHECK(run_cli("represent --market " + blocks_market() +
                " --construction isolated --target man-optimal")
            .status == 5);
  // An unstable target is rejected by the trade-free construction.  In the
  // two-block market, (4,3,2,1) is blocked by (man 1, woman 1).
  CHECK(run_cli("represent --market " + blocks_market() +
                " --construction no-trade --target 4,3,2,1")
            .status == 5);
}

TEST_CASE("represented markets round-trip through certify") {
  RunResult res = run_cli("represent --market " + ordinal_market() +
                          " --construction no-trade --target man-optimal --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  const std::string market_path = write_file("roundtrip.json", j["market"].dump());
  RunResult cert = run_cli("certify --market " + market_path + " --matching 1,2 --json");
  REQUIRE(cert.status == 0);
  json cj = json::parse(cert.out);
  CHECK(cj["pattern"].get<std::string>()[0] == 'T');  // stable without trade
}

TEST_CASE("poa emits exact tables in json and csv") {
  RunResult res = run_cli("poa --n-list 4 --g 2 --K 10 --eps 1/100 --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  CHECK(j["command"] == "poa");
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["n"] == 4);
  CHECK(j["rows"][0]["denominator"] == "99/800");

  RunResult csv = run_cli("poa --n-list 4 --csv");
  REQUIRE(csv.status == 0);
  CHECK(csv.out.rfind("n,numerator,denominator,ratio,ratio_approx", 0) == 0);
  CHECK(csv.out.find("\n4,") != std::string::npos);
  CHECK(csv.out.find("99/800") != std::string::npos);
}

TEST_CASE("audit subcommand self-checks every certificate") {
  RunResult res =
      run_cli("audit-implications --sizes 2,3 --trials 4 --seed 99 --json");
  REQUIRE(res.status == 0);
  json j = json::parse(res.out);
  CHECK(j["command"] == "audit-implications");
  CHECK(j["ok"] == true);
  CHECK(j["certificates_checked"] == 2 * 4 * 5);
  CHECK(j["failures"] == 0);
  CHECK(j["failure_notes"].empty());

  CHECK(run_cli("audit-implications --sizes 99 --trials 1").status == 2);
}

TEST_CASE("reports can be written to a file") {
  const std::string out_path = scratch_dir() + "/report.json";
  RunResult res = run_cli("certify --market " + strict_market() +
                          " --matching 1,2 --json --out " + out_path);
  REQUIRE(res.status == 0);
  std::ifstream in(out_path);
  REQUIRE(in.good());
  json j = json::parse(in);
  CHECK(j["command"] == "certify");
  CHECK(j["pattern"].get<std::string>().size() == 5);
}
