// Black-box tests for the command-line binary named by $DIVRATIO_CLI.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const char* cli = std::getenv("DIVRATIO_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "DIVRATIO_CLI must point at the binary");
  std::string cmd = std::string("'") + cli + "' " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Independent divisor count for cross-checking census output.
uint64_t brute_divisor_count(uint64_t n) {
  uint64_t count = 0;
  for (uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) count += d * d == n ? 1 : 2;
  }
  return count;
}

}  // namespace

TEST_CASE("version and help") {
  RunResult v = run_cli("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);

  RunResult h = run_cli("--help");
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("decompose") != std::string::npos);
  CHECK(h.out.find("witness-scan") != std::string::npos);
  CHECK(h.out.find("ratio-scan") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("").exit_code == 1);                      // missing subcommand
  CHECK(run_cli("frobnicate").exit_code == 1);            // unknown subcommand
  CHECK(run_cli("decompose").exit_code == 1);             // missing target
  CHECK(run_cli("decompose 16/9 --bogus").exit_code == 1);
  CHECK(run_cli("witness-scan 4/3").exit_code == 1);      // missing --x-max
  CHECK(run_cli("decompose 16/9 --format yaml").exit_code == 1);
}

TEST_CASE("domain errors exit 1 with a message on stderr") {
  RunResult r = run_cli("decompose not-a-ratio", true);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error:") != std::string::npos);
  CHECK(run_cli("decompose 0", true).exit_code == 1);
  CHECK(run_cli("build 0/7", true).exit_code == 1);
}

TEST_CASE("decompose output") {
  RunResult j = run_cli("decompose 16/9 --format json");
  REQUIRE(j.exit_code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["target"] == "16/9");
  CHECK(doc["word"] == "f(1,1)^2");
  CHECK(doc["value"] == "16/9");
  CHECK(doc["round_trip"] == "PASS");

  RunResult t = run_cli("decompose 3");
  REQUIRE(t.exit_code == 0);
  CHECK(t.out.find("word: f(1,1)^-1 * f(2,3)^2") != std::string::npos);
  CHECK(t.out.find("round_trip: PASS") != std::string::npos);
}

TEST_CASE("build output") {
  RunResult j = run_cli("build 16/9 --format json");
  REQUIRE(j.exit_code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["a"] == "12");
  CHECK(doc["C"] == 13);
  CHECK(doc["group_value"] == "16/9");
  CHECK(doc["balance_exponents"] == json({"32", "4", "9"}));
  CHECK(doc["augmented"]["ratios"]["1-2"] == "16/9");
  CHECK(doc["augmented"]["ratios"]["2-3"] == "16/9");
  CHECK(doc["augmented"]["ratios"]["1-3"] == "16/9");

  RunResult two = run_cli("build 2 --format json");
  REQUIRE(two.exit_code == 0);
  json doc2 = json::parse(two.out);
  CHECK(doc2["a"] == "180");
  CHECK(doc2["C"] == 181);

  RunResult t = run_cli("build 16/9");
  REQUIRE(t.exit_code == 0);
  CHECK(t.out.find("a: 12") != std::string::npos);
  CHECK(t.out.find("C: 13") != std::string::npos);
  CHECK(t.out.find("group_value: 16/9") != std::string::npos);
}

TEST_CASE("huge targets build without ratio sections") {
  RunResult j = run_cli("build 37 --format json");
  REQUIRE(j.exit_code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["C"].is_null());
  CHECK(doc["group_value"] == "37/1");
  CHECK(doc["predicted_ratios"].is_null());
}

TEST_CASE("witness-scan json stream") {
  RunResult r = run_cli("witness-scan 4/3 --x-max 3000 --format json");
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 462);  // 461 hits + summary

  json first = json::parse(lines.front());
  CHECK(first["type"] == "hit");
  CHECK(first["x"] == "75");
  CHECK(first["pair"] == "1-3");
  CHECK(first["n"] == "902");
  CHECK(first["matched"] == true);

  json summary = json::parse(lines.back());
  CHECK(summary["type"] == "summary");
  CHECK(summary["target"] == "4/3");
  CHECK(summary["hits"]["1-2"] == 74);
  CHECK(summary["hits"]["2-3"] == 160);
  CHECK(summary["hits"]["1-3"] == 227);
  CHECK(summary["total_hits"] == 461);
  CHECK(summary["conclusive"] == true);
  for (const std::string& line : lines) {
    json parsed = json::parse(line);
    if (parsed["type"] == "hit") CHECK(parsed["matched"] == true);
  }
}

TEST_CASE("witness-scan csv and text formats") {
  RunResult c = run_cli("witness-scan 4/3 --x-max 500 --format csv");
  REQUIRE(c.exit_code == 0);
  std::vector<std::string> lines = lines_of(c.out);
  REQUIRE(!lines.empty());
  CHECK(lines.front() == "x,pair,n,d_n,d_n1,ratio,predicted,matched");
  size_t comments = 0;
  for (const std::string& line : lines) {
    if (!line.empty() && line[0] == '#') ++comments;
  }
  CHECK(comments == 4);  // three per-pair lines and one total line
  CHECK(c.out.find("75,1-3,902,8,8,1/1,1/1,true") != std::string::npos);

  RunResult t = run_cli("witness-scan 4/3 --x-max 500");
  REQUIRE(t.exit_code == 0);
  CHECK(t.out.find("x=75 pair=1-3 n=902") != std::string::npos);
  CHECK(t.out.find("(conclusive)") != std::string::npos);
}

TEST_CASE("witness-scan with no hits is inconclusive, not an error") {
  RunResult r = run_cli("witness-scan 4/3 --x-max 10 --format json");
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 1);
  json summary = json::parse(lines.front());
  CHECK(summary["total_hits"] == 0);
  CHECK(summary["conclusive"] == false);
}

TEST_CASE("witness-scan output is byte-deterministic") {
  const std::string cmd = "witness-scan 16/9 --x-max 2000 --format json";
  RunResult a = run_cli(cmd + " --threads 1");
  RunResult b = run_cli(cmd + " --threads 1");
  RunResult c = run_cli(cmd + " --threads 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("ratio-scan output matches a brute-force census") {
  RunResult r = run_cli("ratio-scan 4/3 --n-max 10000 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["target"] == "4/3");
  CHECK(doc["first_n"] == "9");

  uint64_t count = 0;
  std::vector<std::string> sample;
  for (uint64_t n = 1; n <= 10000; ++n) {
    // d(n+1) * 3 == d(n) * 4 <=> d(n+1)/d(n) == 4/3
    if (3 * brute_divisor_count(n + 1) == 4 * brute_divisor_count(n)) {
      ++count;
      if (sample.size() < 100) sample.push_back(std::to_string(n));
    }
  }
  CHECK(doc["count"] == count);
  CHECK(doc["sample"] == json(sample));

  RunResult c = run_cli("ratio-scan 2 --n-max 100 --format csv");
  REQUIRE(c.exit_code == 0);
  std::vector<std::string> lines = lines_of(c.out);
  REQUIRE(lines.size() >= 3);
  CHECK(lines.front() == "n");
  CHECK(lines[1] == "1");
  CHECK(lines.back().find("# target=2/1 n_max=100 count=14 first_n=1") !=
        std::string::npos);

  RunResult t = run_cli("ratio-scan 2 --n-max 10");
  REQUIRE(t.exit_code == 0);
  CHECK(t.out.find("count: 3") != std::string::npos);
  CHECK(t.out.find("first_n: 1") != std::string::npos);
  CHECK(t.out.find("sample: 1 5 7") != std::string::npos);
}

TEST_CASE("ratio-scan is deterministic across thread counts") {
  const std::string cmd = "ratio-scan 4/3 --n-max 1000000 --format json";
  RunResult a = run_cli(cmd + " --threads 1");
  RunResult b = run_cli(cmd + " --threads 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("selftest passes and detects injected faults") {
  RunResult ok = run_cli("selftest");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("PASS spf-table-consistency") != std::string::npos);
  CHECK(ok.out.find("all checks passed") != std::string::npos);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  RunResult bad = run_cli("selftest --inject-fault");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("FAIL spf-table-consistency") != std::string::npos);
  CHECK(bad.out.find("SELF TEST FAILED") != std::string::npos);
}
