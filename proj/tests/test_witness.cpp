#include <doctest.h>

#include <algorithm>

#include "core/witness.hpp"
#include "test_util.hpp"

using divr::Bigint;
using divr::BuildResult;
using divr::build_params;
using divr::check_pair;
using divr::Decomposer;
using divr::ErrorKind;
using divr::FactoredInt;
using divr::Factorization;
using divr::Pair;
using divr::pair_n;
using divr::predicted_ratios;
using divr::Rational;
using divr::RatioCensus;
using divr::RatioTriple;
using divr::scan_ratio_hits;
using divr::scan_witnesses;
using divr::ScanResult;
using divr::SieveParams;
using divr::Sieve;
using divr::u64;
using divr::WitnessHit;
using testutil::error_kind_of;
namespace oracle = testutil::oracle;

namespace {

const Sieve& sieve() {
  static const Sieve s(10000000);
  return s;
}

BuildResult build(const char* target) {
  static Decomposer dec(sieve());
  return build_params(Rational::parse(target), dec, sieve());
}

const WitnessHit* find_hit(const ScanResult& r, u64 x, Pair pair) {
  for (const WitnessHit& h : r.hits) {
    if (h.x == x && h.pair == pair) return &h;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("ratio_at matches brute-force divisor counts") {
  CHECK(divr::ratio_at(1, sieve()) == Rational(2, 1));
  CHECK(divr::ratio_at(9, sieve()) == Rational(4, 3));
  for (u64 n = 1; n <= 2000; ++n) {
    CHECK(divr::ratio_at(n, sieve()) ==
          Rational(oracle::divisor_count(n + 1), oracle::divisor_count(n)));
  }
  CHECK(error_kind_of([] { divr::ratio_at(0, sieve()); }) == ErrorKind::domain);
}

TEST_CASE("pair_n assembles the witness and its factorization") {
  BuildResult b = build("16/9");
  // a = 12, r2 = 3: L2(2) = 13*2 + 1 = 27 is divisible by 3, n = 12 * 27.
  divr::PairWitness w = pair_n(b.params, Pair::p12, 2, sieve());
  CHECK(w.n == 324);
  CHECK(w.factored.factors().str() == "2^2 * 3^4");
  CHECK(w.factored.value() == 324);

  // L2(1) = 14 is not divisible by r2 = 3.
  CHECK(error_kind_of([&] { pair_n(b.params, Pair::p12, 1, sieve()); }) ==
        ErrorKind::precondition);
}

TEST_CASE("check_pair reproduces the first hits for 4/3") {
  BuildResult b = build("4/3");

  auto h13 = check_pair(b.params, Pair::p13, 75, sieve());
  REQUIRE(h13.has_value());
  CHECK(h13->n == 902);
  CHECK(h13->d_n == 8);
  CHECK(h13->d_n1 == 8);
  CHECK(h13->ratio == Rational(1, 1));
  CHECK(h13->matched);

  auto h23 = check_pair(b.params, Pair::p23, 78, sieve());
  REQUIRE(h23.has_value());
  CHECK(h23->n == 2345);
  CHECK(h23->d_n == 8);
  CHECK(h23->d_n1 == 16);
  CHECK(h23->matched);

  auto h12 = check_pair(b.params, Pair::p12, 174, sieve());
  REQUIRE(h12.has_value());
  CHECK(h12->n == 3484);
  CHECK(h12->d_n == 12);
  CHECK(h12->d_n1 == 8);
  CHECK(h12->matched);

  // x = 1 satisfies divisibility trivially (r = 1) but L1(1) = 5 is prime,
  // not a semiprime, so it is not a witness.
  CHECK_FALSE(check_pair(b.params, Pair::p12, 1, sieve()).has_value());
}

TEST_CASE("scan collects every hit in deterministic order") {
  BuildResult b = build("4/3");
  ScanResult r = scan_witnesses(b.params, 1, 3000, sieve());

  CHECK(r.summary.pairs[0].hits == 74);   // pair 1-2
  CHECK(r.summary.pairs[1].hits == 160);  // pair 2-3
  CHECK(r.summary.pairs[2].hits == 227);  // pair 1-3
  CHECK(r.summary.total_hits == 461);
  CHECK(r.hits.size() == 461);
  for (const auto& p : r.summary.pairs) {
    CHECK(p.x_top == 3000);
    CHECK_FALSE(p.capped);
  }

  // Ascending in x, every hit matched, d-values honest.
  CHECK(std::is_sorted(r.hits.begin(), r.hits.end(),
                       [](const WitnessHit& a, const WitnessHit& b) {
                         return a.x < b.x;
                       }));
  for (const WitnessHit& h : r.hits) CHECK(h.matched);
  CHECK(r.hits.front().x == 75);
  CHECK(r.hits.front().pair == Pair::p13);
  const WitnessHit* h23 = find_hit(r, 78, Pair::p23);
  REQUIRE(h23 != nullptr);
  CHECK(h23->n == 2345);

  // Spot-check a few hits against brute-force divisor counts.
  for (size_t i = 0; i < r.hits.size(); i += 40) {
    const WitnessHit& h = r.hits[i];
    CHECK(h.d_n == oracle::divisor_count(h.n));
    CHECK(h.d_n1 == oracle::divisor_count(h.n + 1));
  }
}

TEST_CASE("scan output is independent of the thread count") {
  BuildResult b = build("4/3");
  ScanResult one = scan_witnesses(b.params, 1, 3000, sieve(), 1);
  ScanResult four = scan_witnesses(b.params, 1, 3000, sieve(), 4);
  REQUIRE(one.hits.size() == four.hits.size());
  for (size_t i = 0; i < one.hits.size(); ++i) {
    CHECK(one.hits[i].x == four.hits[i].x);
    CHECK(one.hits[i].pair == four.hits[i].pair);
    CHECK(one.hits[i].n == four.hits[i].n);
  }
  CHECK(one.summary.total_hits == four.summary.total_hits);
}

TEST_CASE("scan finds the first 16/9 witnesses") {
  BuildResult b = build("16/9");
  ScanResult r = scan_witnesses(b.params, 1, 500, sieve());
  REQUIRE(!r.hits.empty());
  CHECK(r.hits.front().x == 99);
  CHECK(r.hits.front().pair == Pair::p13);
  CHECK(r.hits.front().n == 8322);
  CHECK(r.hits.front().d_n == 16);
  CHECK(r.hits.front().d_n1 == 8);
  CHECK(r.hits.front().predicted == Rational(1, 2));
  const WitnessHit* h12 = find_hit(r, 320, Pair::p12);
  REQUIRE(h12 != nullptr);
  CHECK(h12->n == 49932);
  const WitnessHit* h23 = find_hit(r, 422, Pair::p23);
  REQUIRE(h23 != nullptr);
  CHECK(h23->n == 76817);
}

TEST_CASE("identity target: every pair predicts a known ratio") {
  BuildResult b = build("1");
  ScanResult r = scan_witnesses(b.params, 1, 300, sieve());
  const WitnessHit* h12 = find_hit(r, 136, Pair::p12);
  REQUIRE(h12 != nullptr);
  CHECK(h12->n == 21228);
  CHECK(h12->d_n == 24);
  CHECK(h12->d_n1 == 8);
  CHECK(h12->ratio == Rational(1, 3));
  const WitnessHit* h23 = find_hit(r, 202, Pair::p23);
  REQUIRE(h23 != nullptr);
  CHECK(h23->n == 36777);
  CHECK(h23->ratio == Rational(1, 1));
  const WitnessHit* h13 = find_hit(r, 244, Pair::p13);
  REQUIRE(h13 != nullptr);
  CHECK(h13->n == 20502);
}

TEST_CASE("empty and degenerate ranges") {
  BuildResult b = build("4/3");
  ScanResult r = scan_witnesses(b.params, 10, 9, sieve());
  CHECK(r.hits.empty());
  CHECK(r.summary.total_hits == 0);

  ScanResult tiny = scan_witnesses(b.params, 75, 75, sieve());
  CHECK(tiny.summary.total_hits == 1);
  CHECK(tiny.hits.front().x == 75);
}

TEST_CASE("a wrong prediction is reported as a counterexample") {
  BuildResult b = build("4/3");
  RatioTriple lie = predicted_ratios(b.params);
  lie.pair13 = Rational(5, 1);  // true prediction is 1/1
  try {
    divr::detail::scan_witnesses_against(b.params, lie, 1, 100, sieve(), 1);
    FAIL("expected a counterexample error");
  } catch (const divr::Error& e) {
    CHECK(e.kind() == ErrorKind::counterexample);
    CHECK(std::string(e.what()).find("75") != std::string::npos);
  }
}

TEST_CASE("huge instances cap the x range instead of overflowing") {
  // a = 2^62 with r = (1,1,1) is a valid fully factored instance, but any
  // witness n would exceed 2^63; every pair must report capped with no hits.
  SieveParams P;
  P.a = FactoredInt::from_factors(Factorization::parse("2^62"));
  P.half_a1 = FactoredInt::from_factors(Factorization::parse("2^61"));
  P.r = {FactoredInt(), FactoredInt(), FactoredInt()};
  P.a2 = FactoredInt::from_factors(
      Factorization::parse("5 * 5581 * 8681 * 49477 * 384773"));
  P.a3 = FactoredInt::from_factors(
      Factorization::parse("2 * 3 * 768614336404564651"));
  P.half_a3 = FactoredInt::from_factors(
      Factorization::parse("3 * 768614336404564651"));
  P.C = 768614336404564651ull;
  REQUIRE_FALSE(divr::validate_params(P).has_value());

  ScanResult r = scan_witnesses(P, 1, 1000, sieve());
  CHECK(r.hits.empty());
  for (const auto& p : r.summary.pairs) {
    CHECK(p.capped);
    CHECK(p.x_top < 1000);
  }
}

TEST_CASE("scan validates the instance first") {
  BuildResult b = build("4/3");
  SieveParams bad = b.params;
  bad.r[1] = FactoredInt::from_factors(Factorization::parse("2"));
  CHECK(error_kind_of([&] { scan_witnesses(bad, 1, 10, sieve()); }) ==
        ErrorKind::precondition);

  SieveParams stripped = b.params;
  stripped.a2.reset();
  stripped.C.reset();
  CHECK(error_kind_of([&] { scan_witnesses(stripped, 1, 10, sieve()); }) ==
        ErrorKind::bound);
}

TEST_CASE("census counts ratio hits exhaustively") {
  RatioCensus c = scan_ratio_hits(Rational(2, 1), 10, sieve());
  CHECK(c.count == 3);
  CHECK(c.first_n == 1);
  CHECK(c.sample == std::vector<u64>{1, 5, 7});

  c = scan_ratio_hits(Rational(2, 1), 100, sieve());
  CHECK(c.count == 14);
  REQUIRE(c.sample.size() == 14);
  std::vector<u64> head(c.sample.begin(), c.sample.begin() + 12);
  CHECK(head == std::vector<u64>{1, 5, 7, 13, 37, 39, 49, 55, 61, 65, 69, 73});

  c = scan_ratio_hits(Rational(1, 3), 100, sieve());
  CHECK(c.count == 6);
  CHECK(c.sample == std::vector<u64>{12, 18, 28, 52, 84, 90});
}

TEST_CASE("census first occurrences for the reference targets") {
  const std::pair<const char*, u64> expected[] = {
      {"1", 2},  {"2", 1},   {"1/2", 6},  {"3/2", 3},     {"2/3", 4},
      {"3", 11}, {"1/3", 12}, {"4/3", 9}, {"16/9", 3249},
  };
  for (auto [target, first] : expected) {
    CAPTURE(target);
    RatioCensus c = scan_ratio_hits(Rational::parse(target), 4000, sieve());
    CHECK(c.first_n == first);
  }
}

TEST_CASE("census against a brute-force sweep") {
  for (const char* target : {"2", "4/3", "1/3"}) {
    CAPTURE(target);
    Rational q = Rational::parse(target);
    RatioCensus c = scan_ratio_hits(q, 3000, sieve(), 10);
    u64 count = 0;
    std::optional<u64> first;
    std::vector<u64> sample;
    for (u64 n = 1; n <= 3000; ++n) {
      if (Rational(oracle::divisor_count(n + 1), oracle::divisor_count(n)) == q) {
        ++count;
        if (!first) first = n;
        if (sample.size() < 10) sample.push_back(n);
      }
    }
    CHECK(c.count == count);
    CHECK(c.first_n == first);
    CHECK(c.sample == sample);  // sample_cap = 10
  }
}

TEST_CASE("census respects the sample cap but counts everything") {
  RatioCensus all = scan_ratio_hits(Rational(2, 1), 100, sieve());
  RatioCensus capped = scan_ratio_hits(Rational(2, 1), 100, sieve(), 5);
  CHECK(capped.count == all.count);
  CHECK(capped.sample.size() == 5);
  CHECK(std::equal(capped.sample.begin(), capped.sample.end(),
                   all.sample.begin()));
}

TEST_CASE("census is independent of the thread count") {
  Rational q(4, 3);
  RatioCensus one = scan_ratio_hits(q, 2000000, sieve(), 100, 1);
  RatioCensus four = scan_ratio_hits(q, 2000000, sieve(), 100, 4);
  CHECK(one.count == four.count);
  CHECK(one.first_n == four.first_n);
  CHECK(one.sample == four.sample);
}

TEST_CASE("census rejects out-of-range sweeps") {
  CHECK(error_kind_of([] {
          scan_ratio_hits(Rational(2, 1), u64(1) << 63, sieve());
        }) == ErrorKind::domain);
  RatioCensus none = scan_ratio_hits(Rational(Bigint(999999999999999989ull), 1),
                                     1000, sieve());
  CHECK(none.count == 0);
  CHECK_FALSE(none.first_n.has_value());
}
