#pragma once

#include <optional>
#include <vector>

#include "core/construct.hpp"

namespace divr {

// d(n+1)/d(n).  Domain error for n = 0 or n = 2^64 - 1.
Rational ratio_at(u64 n, const Sieve& sieve);

// The witness number attached to x for a given pair:
//   pair 1-2:  n = a   * L2(x)      pair 2-3:  n = (a+1) * L3(x)
//   pair 1-3:  n = a/2 * L3(x)
// where L_i(x) = a_i x + 1.  Precondition error unless r_i | L_i(x) and
// r_j | L_j(x); bound error if n or an intermediate exceeds 2^63.
struct PairWitness {
  u64 n;
  FactoredInt factored;  // full factorization of n
};
PairWitness pair_n(const SieveParams& P, Pair pair, u64 x, const Sieve& sieve);

struct WitnessHit {
  u64 x;
  Pair pair;
  u64 n;
  u64 d_n;
  u64 d_n1;
  Rational ratio;      // measured d(n+1)/d(n)
  Rational predicted;  // from predicted_ratios
  bool matched;        // ratio == predicted
};

// Tests one x against one pair.  Returns nothing unless the divisibility
// conditions hold and both L_i(x)/r_i are semiprimes with distinct prime
// factors above C; on a hit, d(n) and d(n+1) are recomputed from scratch and
// compared with the prediction.  Bound error if the instance is not fully
// factored or x is outside the pair's 64-bit range.
std::optional<WitnessHit> check_pair(const SieveParams& P, Pair pair, u64 x,
                                     const Sieve& sieve);

struct PairSummary {
  u64 hits = 0;
  u64 x_top = 0;        // largest x this pair was examined up to
  bool capped = false;  // x_top < x_hi because of the 2^63 domain
};

struct ScanSummary {
  u64 x_lo = 0;
  u64 x_hi = 0;
  std::array<PairSummary, 3> pairs;  // indexed by kAllPairs order
  u64 total_hits = 0;
};

struct ScanResult {
  std::vector<WitnessHit> hits;  // ascending (x, pair)
  ScanSummary summary;
};

// Scans x in [x_lo, x_hi] over all three pairs.  The hit list and summary
// are byte-for-byte reproducible and independent of the thread count
// (fixed-size blocks merged in order).  A hit whose measured ratio deviates
// from the prediction raises a counterexample error naming the earliest such
// x in merge order.  Precondition error if validate_params reports a
// violation; bound error if the instance is not fully factored.
ScanResult scan_witnesses(const SieveParams& P, u64 x_lo, u64 x_hi,
                          const Sieve& sieve, unsigned threads = 0);

namespace detail {
// Test seam: scan against an explicitly supplied prediction triple.
ScanResult scan_witnesses_against(const SieveParams& P, const RatioTriple& t,
                                  u64 x_lo, u64 x_hi, const Sieve& sieve,
                                  unsigned threads);
}  // namespace detail

struct RatioCensus {
  Rational target;
  u64 n_max = 0;
  u64 count = 0;                // #{ n <= n_max : d(n+1)/d(n) == target }
  std::optional<u64> first_n;   // smallest such n
  std::vector<u64> sample;      // first hits, ascending, up to sample_cap
};

// Exhaustive census over 1 <= n <= n_max via a segmented divisor-count
// sweep; deterministic and thread-count independent.  Domain error when the
// sweep would need primes at or beyond 2^32 (n_max around 2^64).
RatioCensus scan_ratio_hits(const Rational& target, u64 n_max,
                            const Sieve& sieve, u64 sample_cap = 100,
                            unsigned threads = 0);

}  // namespace divr
