#include <doctest.h>

#include "core/jsonio.hpp"
#include "test_util.hpp"

using divr::Bigint;
using divr::BuildResult;
using divr::build_params;
using divr::Decomposer;
using divr::ErrorKind;
using divr::ordered_json;
using divr::Rational;
using divr::SieveParams;
using divr::Sieve;
using testutil::error_kind_of;

namespace {

const Sieve& sieve() {
  static const Sieve s(10000000);
  return s;
}

BuildResult build(const char* target) {
  static Decomposer dec(sieve());
  return build_params(Rational::parse(target), dec, sieve());
}

}  // namespace

TEST_CASE("decompose document") {
  static Decomposer dec(sieve());
  Rational q(16, 9);
  ordered_json doc = divr::decompose_document(q, dec.decompose(q));
  CHECK(doc["command"] == "decompose");
  CHECK(doc["target"] == "16/9");
  CHECK(doc["word"] == "f(1,1)^2");
  REQUIRE(doc["terms"].size() == 1);
  CHECK(doc["terms"][0]["x"] == "1");
  CHECK(doc["terms"][0]["y"] == "1");
  CHECK(doc["terms"][0]["exponent"] == "2");
  CHECK(doc["value"] == "16/9");
  CHECK(doc["round_trip"] == "PASS");
}

TEST_CASE("instance serialization round-trips") {
  BuildResult b = build("16/9");
  ordered_json doc = divr::params_to_json(b.params);
  CHECK(doc["a"] == "12");
  CHECK(doc["r"] == ordered_json({"1", "3", "1"}));
  CHECK(doc["C"] == 13);
  CHECK(doc["factors"]["a1"] == "2^2 * 3");
  CHECK(doc["factors"]["half_a1"] == "2 * 3");
  CHECK(doc["factors"]["a2"] == "13");
  CHECK(doc["factors"]["a3"] == "2 * 7");
  CHECK(doc["factors"]["half_a3"] == "7");
  CHECK(doc["factors"]["r2"] == "3");

  SieveParams back = divr::params_from_json(doc);
  CHECK(divr::params_to_json(back) == doc);
  CHECK_FALSE(divr::validate_params(back).has_value());
}

TEST_CASE("unfactored instances serialize with nulls") {
  BuildResult b = build("37");
  ordered_json doc = divr::params_to_json(b.params);
  CHECK(doc["C"].is_null());
  CHECK(doc["factors"]["a2"].is_null());
  CHECK(doc["factors"]["a3"].is_null());
  SieveParams back = divr::params_from_json(doc);
  CHECK_FALSE(back.fully_factored());
  CHECK(back.a.value() == b.params.a.value());
  CHECK(divr::params_to_json(back) == doc);
}

TEST_CASE("instance deserialization rejects malformed documents") {
  CHECK(error_kind_of([] {
          divr::params_from_json(ordered_json::parse("{}"));
        }) == ErrorKind::domain);
  CHECK(error_kind_of([] {
          divr::params_from_json(ordered_json::parse(
              R"({"factors": {"a1": "2^2 * 3"}})"));
        }) == ErrorKind::domain);

  BuildResult b = build("16/9");
  ordered_json doc = divr::params_to_json(b.params);
  doc["a"] = "13";  // disagrees with factors.a1
  CHECK(error_kind_of([&] { divr::params_from_json(doc); }) ==
        ErrorKind::domain);
  doc["a"] = "12";
  doc["C"] = "13";  // must be a JSON integer, not a string
  CHECK(error_kind_of([&] { divr::params_from_json(doc); }) ==
        ErrorKind::domain);
}

TEST_CASE("build document carries the full report") {
  BuildResult b = build("16/9");
  ordered_json doc = divr::build_document(b, sieve());
  CHECK(doc["command"] == "build");
  CHECK(doc["target"] == "16/9");
  CHECK(doc["word"] == "f(1,1)^2");
  REQUIRE(doc["assignments"]["positive"].size() == 1);
  CHECK(doc["assignments"]["positive"][0]["prime"] == "3");
  CHECK(doc["assignments"]["positive"][0]["a_exp"] == "1");
  CHECK(doc["assignments"]["positive"][0]["r_exp"] == "1");
  CHECK(doc["assignments"]["negative"].empty());
  CHECK(doc["a"] == "12");
  CHECK(doc["closed_form"] == "16/9");
  CHECK(doc["group_value"] == "16/9");
  CHECK(doc["predicted_ratios"]["1-2"] == "2/9");
  CHECK(doc["predicted_ratios"]["2-3"] == "4/1");
  CHECK(doc["predicted_ratios"]["1-3"] == "1/2");
  CHECK(doc["balance_exponents"] == ordered_json({"32", "4", "9"}));
  CHECK(doc["augmented"]["r"][0] ==
        Bigint(boost::multiprecision::pow(Bigint(5), 31)).str());
  CHECK(doc["augmented"]["C"] == 17);
  CHECK(doc["augmented"]["ratios"]["1-2"] == "16/9");
  CHECK(doc["augmented"]["ratios"]["2-3"] == "16/9");
  CHECK(doc["augmented"]["ratios"]["1-3"] == "16/9");
}

TEST_CASE("build document for an unfactored instance nulls the ratio parts") {
  BuildResult b = build("37");
  ordered_json doc = divr::build_document(b, sieve());
  CHECK(doc["group_value"] == "37/1");
  CHECK(doc["predicted_ratios"].is_null());
  CHECK(doc["balance_exponents"].is_null());
  CHECK(doc["augmented"].is_null());
}

TEST_CASE("hit serialization") {
  divr::WitnessHit h{75,
                     divr::Pair::p13,
                     902,
                     8,
                     8,
                     Rational(1, 1),
                     Rational(1, 1),
                     true};
  ordered_json doc = divr::hit_to_json(h);
  CHECK(doc["type"] == "hit");
  CHECK(doc["x"] == "75");
  CHECK(doc["pair"] == "1-3");
  CHECK(doc["n"] == "902");
  CHECK(doc["ratio"] == "1/1");
  CHECK(doc["matched"] == true);

  CHECK(std::string(divr::kHitCsvHeader) ==
        "x,pair,n,d_n,d_n1,ratio,predicted,matched");
  CHECK(divr::hit_to_csv(h) == "75,1-3,902,8,8,1/1,1/1,true");
}

TEST_CASE("scan summary serialization") {
  divr::ScanSummary s;
  s.x_lo = 1;
  s.x_hi = 3000;
  s.pairs[0] = {41, 3000, false};
  s.pairs[1] = {101, 3000, false};
  s.pairs[2] = {146, 2999, true};
  s.total_hits = 288;
  ordered_json doc = divr::scan_summary_to_json(Rational(4, 3), s);
  CHECK(doc["type"] == "summary");
  CHECK(doc["target"] == "4/3");
  CHECK(doc["hits"]["1-2"] == 41);
  CHECK(doc["hits"]["2-3"] == 101);
  CHECK(doc["hits"]["1-3"] == 146);
  CHECK(doc["x_top"]["1-3"] == "2999");
  CHECK(doc["capped"]["1-3"] == true);
  CHECK(doc["capped"]["1-2"] == false);
  CHECK(doc["total_hits"] == 288);
  CHECK(doc["conclusive"] == true);

  s.total_hits = 0;
  CHECK(divr::scan_summary_to_json(Rational(4, 3), s)["conclusive"] == false);
}

TEST_CASE("census serialization") {
  divr::RatioCensus c;
  c.target = Rational(2, 1);
  c.n_max = 10;
  c.count = 3;
  c.first_n = 1;
  c.sample = {1, 5, 7};
  ordered_json doc = divr::census_to_json(c);
  CHECK(doc["command"] == "ratio-scan");
  CHECK(doc["target"] == "2/1");
  CHECK(doc["n_max"] == "10");
  CHECK(doc["count"] == 3);
  CHECK(doc["first_n"] == "1");
  CHECK(doc["sample"] == ordered_json({"1", "5", "7"}));

  c.count = 0;
  c.first_n.reset();
  c.sample.clear();
  ordered_json none = divr::census_to_json(c);
  CHECK(none["first_n"].is_null());
  CHECK(none["sample"].empty());
}
