#include "core/selftest.hpp"

#include <algorithm>

#include "core/construct.hpp"
#include "core/errors.hpp"
#include "core/primality.hpp"
#include "core/witness.hpp"

namespace divr {

namespace {

// Deterministic 64-bit generator for the randomized spot checks.
struct SplitMix64 {
  u64 state;
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

u64 brute_smallest_factor(u64 n) {
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

u64 brute_divisor_count(u64 n) {
  u64 count = 0;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) count += d * d == n ? 1 : 2;
  }
  return count;
}

bool brute_is_prime(u64 n) { return n >= 2 && brute_smallest_factor(n) == n; }

bool brute_distinct_semiprime_above(u64 n, u64 bound) {
  for (u64 p = 2; p * p < n; ++p) {
    if (n % p != 0) continue;
    u64 q = n / p;
    return p != q && p > bound && q > bound && brute_is_prime(p) &&
           brute_is_prime(q);
  }
  return false;  // 1, primes, and perfect prime squares all fail
}

using Check = SelfTestCheck;

Check check_spf_table(const Sieve& sieve, bool corrupt) {
  std::vector<u32> table(sieve.table().begin(), sieve.table().end());
  if (corrupt) table[9973] = 3;  // 9973 is prime; its slot must hold itself
  for (u64 n = 2; n < table.size(); ++n) {
    if (table[n] != brute_smallest_factor(n)) {
      return {"spf-table-consistency", false,
              "entry " + std::to_string(n) + " holds " +
                  std::to_string(table[n]) + ", smallest factor is " +
                  std::to_string(brute_smallest_factor(n))};
    }
  }
  return {"spf-table-consistency", true, ""};
}

Check check_factorization(const Sieve& sieve) {
  Sieve bare = Sieve::without_table();
  SplitMix64 rng{0x5eed5eed5eed5eedull};
  std::vector<u64> inputs;
  for (u64 n = 1; n <= 4000; ++n) inputs.push_back(n);
  for (int i = 0; i < 48; ++i) inputs.push_back(rng.next() % 1000000000000ull + 2);
  for (u64 n : inputs) {
    Factorization f = sieve.factorize(n);
    if (f.value() != n) {
      return {"factorization-roundtrip", false,
              "product of factors of " + std::to_string(n) + " is " +
                  dec(f.value())};
    }
    u64 prev = 1;
    for (const PrimePower& pp : f.entries()) {
      if (pp.prime <= prev || pp.exponent == 0 || !is_prime64(pp.prime)) {
        return {"factorization-roundtrip", false,
                "bad entry " + std::to_string(pp.prime) + "^" +
                    std::to_string(pp.exponent) + " for " + std::to_string(n)};
      }
      prev = pp.prime;
    }
    if (!(bare.factorize(n) == f)) {
      return {"factorization-roundtrip", false,
              "table and table-less factorizations differ for " +
                  std::to_string(n)};
    }
  }
  return {"factorization-roundtrip", true, ""};
}

Check check_primality(const Sieve& sieve) {
  (void)sieve;
  for (u64 n = 0; n <= 20000; ++n) {
    if (is_prime64(n) != brute_is_prime(n)) {
      return {"primality-agreement", false,
              "disagreement at n = " + std::to_string(n)};
    }
  }
  return {"primality-agreement", true, ""};
}

Check check_divisor_count(const Sieve& sieve) {
  for (u64 n = 1; n <= 4000; ++n) {
    if (sieve.divisor_count(n) != brute_divisor_count(n)) {
      return {"divisor-count-agreement", false,
              "disagreement at n = " + std::to_string(n)};
    }
  }
  return {"divisor-count-agreement", true, ""};
}

Check check_semiprime(const Sieve& sieve) {
  for (u64 bound : {u64(1), u64(7), u64(50)}) {
    for (u64 n = 1; n <= 20000; ++n) {
      if (sieve.is_distinct_semiprime_above(n, bound) !=
          brute_distinct_semiprime_above(n, bound)) {
        return {"semiprime-membership", false,
                "disagreement at n = " + std::to_string(n) + ", bound " +
                    std::to_string(bound)};
      }
    }
  }
  return {"semiprime-membership", true, ""};
}

Check check_word_roundtrip(const Sieve& sieve) {
  Decomposer dec(sieve);
  for (u64 m = 1; m <= 12; ++m) {
    for (u64 n = 1; n <= 12; ++n) {
      Rational q{Bigint(m), Bigint(n)};
      Rational back = dec.decompose(q).value();
      if (back != q) {
        return {"word-roundtrip", false,
                "decompose(" + q.str() + ") evaluates to " + back.str()};
      }
    }
  }
  return {"word-roundtrip", true, ""};
}

Check check_construction(const Sieve& sieve) {
  Decomposer dec(sieve);
  for (const char* text : {"4/3", "2", "1", "3/2", "16/9", "5/7"}) {
    Rational q = Rational::parse(text);
    BuildResult build = build_params(q, dec, sieve);
    if (auto v = validate_params(build.params)) {
      return {"construction-invariants", false,
              q.str() + ": hypothesis '" + v->condition + "' fails: " +
                  v->detail};
    }
    Rational closed = closed_form_value(build);
    Rational group = predicted_group_value(build.params);
    if (closed != q || group != q) {
      return {"construction-invariants", false,
              q.str() + ": closed form " + closed.str() + ", group value " +
                  group.str()};
    }
    if (build.params.fully_factored()) {
      RatioTriple t = predicted_ratios(build.params);
      if (t.pair12 * t.pair23 / t.pair13 != q) {
        return {"construction-invariants", false,
                q.str() + ": ratio product disagrees with target"};
      }
      SieveParams aug =
          augment_params(build.params, balance_exponents(t), sieve);
      RatioTriple ta = predicted_ratios(aug);
      if (ta.pair12 != ta.pair23 || ta.pair23 != ta.pair13 ||
          ta.pair12 != q) {
        return {"construction-invariants", false,
                q.str() + ": augmented ratios not all equal to target"};
      }
    }
  }
  return {"construction-invariants", true, ""};
}

Check check_witness_scan(const Sieve& sieve) {
  Decomposer dec(sieve);
  BuildResult build = build_params(Rational::parse("4/3"), dec, sieve);
  ScanResult scan = scan_witnesses(build.params, 1, 2000, sieve);
  if (scan.summary.total_hits == 0) {
    return {"witness-identity-spot", false, "no witnesses up to x = 2000"};
  }
  const WitnessHit& h = scan.hits.front();
  u64 dn = brute_divisor_count(h.n);
  u64 dn1 = brute_divisor_count(h.n + 1);
  if (dn != h.d_n || dn1 != h.d_n1) {
    return {"witness-identity-spot", false,
            "divisor counts at n = " + std::to_string(h.n) +
                " disagree with brute force"};
  }
  return {"witness-identity-spot", true, ""};
}

Check check_census(const Sieve& sieve) {
  for (const char* text : {"2", "4/3", "1/3"}) {
    Rational target = Rational::parse(text);
    RatioCensus census = scan_ratio_hits(target, 5000, sieve, 100);
    u64 count = 0;
    std::optional<u64> first;
    std::vector<u64> sample;
    for (u64 n = 1; n <= 5000; ++n) {
      if (Rational(Bigint(brute_divisor_count(n + 1)),
                   Bigint(brute_divisor_count(n))) == target) {
        ++count;
        if (!first) first = n;
        if (sample.size() < 100) sample.push_back(n);
      }
    }
    if (census.count != count || census.first_n != first ||
        census.sample != sample) {
      return {"census-agreement", false,
              std::string("census disagrees with brute force for ") + text};
    }
  }
  return {"census-agreement", true, ""};
}

}  // namespace

SelfTestReport run_selftest(bool corrupt_spf_entry) {
  Sieve sieve(100000);
  SelfTestReport report;
  report.checks.push_back(check_spf_table(sieve, corrupt_spf_entry));
  report.checks.push_back(check_factorization(sieve));
  report.checks.push_back(check_primality(sieve));
  report.checks.push_back(check_divisor_count(sieve));
  report.checks.push_back(check_semiprime(sieve));
  report.checks.push_back(check_word_roundtrip(sieve));
  report.checks.push_back(check_construction(sieve));
  report.checks.push_back(check_witness_scan(sieve));
  report.checks.push_back(check_census(sieve));
  return report;
}

}  // namespace divr
