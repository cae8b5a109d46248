// Command-line front end for the divratio shared library.  All number theory
// happens behind the C API; this file only parses arguments and renders
// documents (json, csv, or text).

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "divratio.h"

namespace {

using ojson = nlohmann::ordered_json;

constexpr uint64_t kDefaultSpfLimit = 10'000'000;
constexpr uint64_t kDefaultSampleCap = 100;

int exit_code_for(dr_status st) {
  switch (st) {
    case DR_OK:
      return 0;
    case DR_ECOUNTEREXAMPLE:
    case DR_EINTERNAL:
      return 2;
    default:
      return 1;
  }
}

int report_failure(dr_status st) {
  std::fprintf(stderr, "error: %s\n", dr_last_error());
  return exit_code_for(st);
}

struct StringOut {
  char* ptr = nullptr;
  ~StringOut() { dr_string_free(ptr); }
};

struct SieveHandle {
  dr_sieve* ptr = nullptr;
  ~SieveHandle() { dr_sieve_free(ptr); }
};

struct ParamsHandle {
  dr_params* ptr = nullptr;
  ~ParamsHandle() { dr_params_free(ptr); }
};

struct CensusHandle {
  dr_census* ptr = nullptr;
  ~CensusHandle() { dr_census_free(ptr); }
};

// Shared options: every subcommand takes a sieve limit and an output format.
struct CommonOpts {
  uint64_t spf_limit = kDefaultSpfLimit;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--spf-limit", opts.spf_limit,
                  "Smallest-prime-factor table size (0 = no table)")
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
}

int make_sieve(const CommonOpts& opts, SieveHandle& sieve) {
  dr_status st = dr_sieve_create(opts.spf_limit, &sieve.ptr);
  if (st != DR_OK) return report_failure(st);
  return 0;
}

/* ---- decompose ----------------------------------------------------------- */

int run_decompose(const std::string& target, const CommonOpts& opts) {
  SieveHandle sieve;
  if (int rc = make_sieve(opts, sieve)) return rc;
  StringOut doc;
  dr_status st = dr_decompose_document(sieve.ptr, target.c_str(), &doc.ptr);
  if (st != DR_OK) return report_failure(st);
  if (opts.format == "json") {
    std::printf("%s\n", doc.ptr);
    return 0;
  }
  ojson parsed = ojson::parse(doc.ptr);
  std::printf("target: %s\n", parsed["target"].get<std::string>().c_str());
  std::printf("word: %s\n", parsed["word"].get<std::string>().c_str());
  std::printf("value: %s\n", parsed["value"].get<std::string>().c_str());
  std::printf("round_trip: %s\n",
              parsed["round_trip"].get<std::string>().c_str());
  return parsed["round_trip"] == "PASS" ? 0 : 2;
}

/* ---- build ---------------------------------------------------------------- */

void print_factor_block(const ojson& factors) {
  for (const auto& [key, value] : factors.items()) {
    if (value.is_null()) {
      std::printf("  %s: (not factored)\n", key.c_str());
    } else {
      std::printf("  %s: %s\n", key.c_str(),
                  value.get<std::string>().c_str());
    }
  }
}

void print_instance_text(const ojson& doc) {
  std::printf("a: %s\n", doc["a"].get<std::string>().c_str());
  std::printf("r: (%s, %s, %s)\n", doc["r"][0].get<std::string>().c_str(),
              doc["r"][1].get<std::string>().c_str(),
              doc["r"][2].get<std::string>().c_str());
  if (doc["C"].is_null()) {
    std::printf("C: (needs a+2 < 2^64)\n");
  } else {
    std::printf("C: %" PRIu64 "\n", doc["C"].get<uint64_t>());
  }
  std::printf("factors:\n");
  print_factor_block(doc["factors"]);
}

int run_build(const std::string& target, const CommonOpts& opts) {
  SieveHandle sieve;
  if (int rc = make_sieve(opts, sieve)) return rc;
  StringOut doc;
  dr_status st = dr_build_document(sieve.ptr, target.c_str(), &doc.ptr);
  if (st != DR_OK) return report_failure(st);
  if (opts.format == "json") {
    std::printf("%s\n", doc.ptr);
    return 0;
  }
  ojson parsed = ojson::parse(doc.ptr);
  std::printf("target: %s\n", parsed["target"].get<std::string>().c_str());
  std::printf("word: %s\n", parsed["word"].get<std::string>().c_str());
  print_instance_text(parsed);
  std::printf("closed_form: %s\n",
              parsed["closed_form"].get<std::string>().c_str());
  std::printf("group_value: %s\n",
              parsed["group_value"].get<std::string>().c_str());
  if (parsed["predicted_ratios"].is_null()) {
    std::printf("predicted_ratios: (needs a+2 < 2^64)\n");
    return 0;
  }
  std::printf("predicted_ratios: 1-2: %s  2-3: %s  1-3: %s\n",
              parsed["predicted_ratios"]["1-2"].get<std::string>().c_str(),
              parsed["predicted_ratios"]["2-3"].get<std::string>().c_str(),
              parsed["predicted_ratios"]["1-3"].get<std::string>().c_str());
  std::printf("balance_exponents: (%s, %s, %s)\n",
              parsed["balance_exponents"][0].get<std::string>().c_str(),
              parsed["balance_exponents"][1].get<std::string>().c_str(),
              parsed["balance_exponents"][2].get<std::string>().c_str());
  const ojson& aug = parsed["augmented"];
  std::printf("augmented:\n");
  std::printf("  r: (%s, %s, %s)\n", aug["r"][0].get<std::string>().c_str(),
              aug["r"][1].get<std::string>().c_str(),
              aug["r"][2].get<std::string>().c_str());
  if (!aug["C"].is_null()) {
    std::printf("  C: %" PRIu64 "\n", aug["C"].get<uint64_t>());
  }
  std::printf("  ratios: 1-2: %s  2-3: %s  1-3: %s\n",
              aug["ratios"]["1-2"].get<std::string>().c_str(),
              aug["ratios"]["2-3"].get<std::string>().c_str(),
              aug["ratios"]["1-3"].get<std::string>().c_str());
  return 0;
}

/* ---- witness-scan ---------------------------------------------------------- */

struct HitPrinter {
  std::string format;
  uint64_t printed = 0;
};

int print_hit(const dr_hit* hit, void* user) {
  HitPrinter* ctx = static_cast<HitPrinter*>(user);
  if (ctx->format == "json") {
    ojson line;
    line["type"] = "hit";
    line["x"] = std::to_string(hit->x);
    line["pair"] = hit->pair;
    line["n"] = std::to_string(hit->n);
    line["d_n"] = std::to_string(hit->d_n);
    line["d_n1"] = std::to_string(hit->d_n1);
    line["ratio"] = hit->ratio;
    line["predicted"] = hit->predicted;
    line["matched"] = hit->matched != 0;
    std::printf("%s\n", line.dump().c_str());
  } else if (ctx->format == "csv") {
    std::printf("%" PRIu64 ",%s,%" PRIu64 ",%" PRIu64 ",%" PRIu64
                ",%s,%s,%s\n",
                hit->x, hit->pair, hit->n, hit->d_n, hit->d_n1, hit->ratio,
                hit->predicted, hit->matched ? "true" : "false");
  } else {
    std::printf("x=%" PRIu64 " pair=%s n=%" PRIu64 " d(n)=%" PRIu64
                " d(n+1)=%" PRIu64 " ratio=%s predicted=%s matched=%s\n",
                hit->x, hit->pair, hit->n, hit->d_n, hit->d_n1, hit->ratio,
                hit->predicted, hit->matched ? "yes" : "NO");
  }
  ctx->printed += 1;
  return 0;
}

int run_witness_scan(const std::string& target, uint64_t x_min, uint64_t x_max,
                     uint32_t threads, const CommonOpts& opts) {
  SieveHandle sieve;
  if (int rc = make_sieve(opts, sieve)) return rc;
  ParamsHandle params;
  dr_status st = dr_build(sieve.ptr, target.c_str(), &params.ptr);
  if (st != DR_OK) return report_failure(st);

  HitPrinter ctx{opts.format};
  if (opts.format == "csv") {
    std::printf("x,pair,n,d_n,d_n1,ratio,predicted,matched\n");
  }
  dr_scan_summary summary{};
  st = dr_witness_scan(sieve.ptr, params.ptr, x_min, x_max, threads,
                       print_hit, &ctx, &summary);
  if (st != DR_OK) return report_failure(st);

  static const char* kPairs[3] = {"1-2", "2-3", "1-3"};
  if (opts.format == "json") {
    ojson line;
    line["type"] = "summary";
    line["target"] = target;
    line["x_lo"] = std::to_string(summary.x_lo);
    line["x_hi"] = std::to_string(summary.x_hi);
    ojson hits, x_top, capped;
    for (int k = 0; k < 3; ++k) {
      hits[kPairs[k]] = summary.hits[k];
      x_top[kPairs[k]] = std::to_string(summary.x_top[k]);
      capped[kPairs[k]] = summary.capped[k] != 0;
    }
    line["hits"] = hits;
    line["x_top"] = x_top;
    line["capped"] = capped;
    line["total_hits"] = summary.total_hits;
    line["conclusive"] = summary.conclusive != 0;
    std::printf("%s\n", line.dump().c_str());
  } else if (opts.format == "csv") {
    for (int k = 0; k < 3; ++k) {
      std::printf("# pair %s: hits=%" PRIu64 " x_top=%" PRIu64 "%s\n",
                  kPairs[k], summary.hits[k], summary.x_top[k],
                  summary.capped[k] ? " (capped)" : "");
    }
    std::printf("# total_hits=%" PRIu64 " conclusive=%s\n",
                summary.total_hits, summary.conclusive ? "true" : "false");
  } else {
    for (int k = 0; k < 3; ++k) {
      std::printf("pair %s: hits=%" PRIu64 " x_top=%" PRIu64 "%s\n",
                  kPairs[k], summary.hits[k], summary.x_top[k],
                  summary.capped[k] ? " (capped: 2^63 domain)" : "");
    }
    std::printf("total hits: %" PRIu64 " (%s)\n", summary.total_hits,
                summary.conclusive ? "conclusive" : "inconclusive");
  }
  return 0;
}

/* ---- ratio-scan ------------------------------------------------------------ */

int run_ratio_scan(const std::string& target, uint64_t n_max,
                   uint64_t sample_cap, uint32_t threads,
                   const CommonOpts& opts) {
  SieveHandle sieve;
  if (int rc = make_sieve(opts, sieve)) return rc;
  CensusHandle census;
  dr_status st = dr_ratio_scan(sieve.ptr, target.c_str(), n_max, sample_cap,
                               threads, &census.ptr);
  if (st != DR_OK) return report_failure(st);

  StringOut doc;
  st = dr_census_to_json(census.ptr, &doc.ptr);
  if (st != DR_OK) return report_failure(st);
  ojson parsed = ojson::parse(doc.ptr);

  if (opts.format == "json") {
    std::printf("%s\n", doc.ptr);
  } else if (opts.format == "csv") {
    std::printf("n\n");
    for (const auto& n : parsed["sample"]) {
      std::printf("%s\n", n.get<std::string>().c_str());
    }
    std::printf("# target=%s n_max=%s count=%" PRIu64 " first_n=%s\n",
                parsed["target"].get<std::string>().c_str(),
                parsed["n_max"].get<std::string>().c_str(),
                parsed["count"].get<uint64_t>(),
                parsed["first_n"].is_null()
                    ? "none"
                    : parsed["first_n"].get<std::string>().c_str());
  } else {
    std::printf("target: %s\n", parsed["target"].get<std::string>().c_str());
    std::printf("n_max: %s\n", parsed["n_max"].get<std::string>().c_str());
    std::printf("count: %" PRIu64 "\n", parsed["count"].get<uint64_t>());
    std::printf("first_n: %s\n", parsed["first_n"].is_null()
                                     ? "none"
                                     : parsed["first_n"]
                                           .get<std::string>()
                                           .c_str());
    std::string sample;
    for (const auto& n : parsed["sample"]) {
      if (!sample.empty()) sample += " ";
      sample += n.get<std::string>();
    }
    std::printf("sample: %s\n", sample.c_str());
  }
  return 0;
}

/* ---- selftest --------------------------------------------------------------- */

int run_selftest_cmd(bool inject_fault, const CommonOpts& opts) {
  StringOut report;
  int all_passed = 0;
  dr_status st =
      dr_selftest(inject_fault ? 1 : 0, &report.ptr, &all_passed);
  if (st != DR_OK) return report_failure(st);
  if (opts.format == "json") {
    std::printf("%s\n", report.ptr);
  } else {
    ojson parsed = ojson::parse(report.ptr);
    for (const auto& check : parsed["checks"]) {
      bool pass = check["passed"].get<bool>();
      std::printf("%s %s\n", pass ? "PASS" : "FAIL",
                  check["name"].get<std::string>().c_str());
      if (!pass) {
        std::printf("     %s\n", check["detail"].get<std::string>().c_str());
      }
    }
    std::printf("%s\n", all_passed ? "all checks passed"
                                   : "SELF TEST FAILED");
  }
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for n with a prescribed divisor-count ratio "
               "d(n+1)/d(n)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dr_version());

  std::string target;
  uint64_t x_min = 1, x_max = 0, n_max = 0;
  uint64_t sample_cap = kDefaultSampleCap;
  uint32_t threads = 0;
  bool inject_fault = false;

  CommonOpts dec_opts;
  CLI::App* dec = app.add_subcommand(
      "decompose", "Rewrite a rational as a product of generators f(x,y)");
  dec->add_option("target", target, "Positive rational, e.g. 16/9")
      ->required();
  add_common(dec, dec_opts);

  CommonOpts build_opts;
  CLI::App* build = app.add_subcommand(
      "build", "Construct a sieve instance hitting the target ratio");
  build->add_option("target", target, "Positive rational, e.g. 16/9")
      ->required();
  add_common(build, build_opts);

  CommonOpts scan_opts;
  CLI::App* scan = app.add_subcommand(
      "witness-scan", "Scan witnesses x and verify measured ratios");
  scan->add_option("target", target, "Positive rational, e.g. 16/9")
      ->required();
  scan->add_option("--x-max", x_max, "Largest x to scan")->required();
  scan->add_option("--x-min", x_min, "Smallest x to scan")
      ->capture_default_str();
  scan->add_option("--threads", threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  add_common(scan, scan_opts);

  CommonOpts census_opts;
  CLI::App* census = app.add_subcommand(
      "ratio-scan", "Exhaustively count n <= n-max with d(n+1)/d(n) = target");
  census->add_option("target", target, "Positive rational, e.g. 4/3")
      ->required();
  census->add_option("--n-max", n_max, "Largest n to examine")->required();
  census->add_option("--sample-cap", sample_cap,
                     "How many hits to keep in the sample")
      ->capture_default_str();
  census->add_option("--threads", threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  add_common(census, census_opts);

  CommonOpts selftest_opts;
  CLI::App* selftest = app.add_subcommand(
      "selftest", "Cross-validate the pipeline against brute-force oracles");
  selftest->add_flag("--inject-fault", inject_fault,
                     "Corrupt a copied prime table to prove detection works");
  add_common(selftest, selftest_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (dec->parsed()) return run_decompose(target, dec_opts);
  if (build->parsed()) return run_build(target, build_opts);
  if (scan->parsed()) {
    return run_witness_scan(target, x_min, x_max, threads, scan_opts);
  }
  if (census->parsed()) {
    return run_ratio_scan(target, n_max, sample_cap, threads, census_opts);
  }
  if (selftest->parsed()) return run_selftest_cmd(inject_fault, selftest_opts);
  return 1;
}
